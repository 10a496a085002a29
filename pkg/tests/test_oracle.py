from fractions import Fraction

from addcomp.oracle import naive_greedy, naive_jfold, naive_sumset


def test_naive_sumset():
    assert naive_sumset([0, 2], [0, 1], 10) == [0, 1, 2, 3]
    assert naive_sumset([], [1, 2], 10) == []
    assert naive_sumset([5], [7], 20) == [12]
    assert naive_sumset([5], [7], 11) == []


def test_naive_jfold():
    assert naive_jfold([0, 1], 3, 10) == [0, 1, 2, 3]
    assert naive_jfold([0], 5, 10) == [0]
    assert naive_jfold([1], 4, 10) == [4]


def test_naive_greedy():
    assert naive_greedy([0], Fraction(1, 2), 10) == [0, 2, 4, 6, 8, 10]
    assert naive_greedy([0, 1], Fraction(1, 2), 12) == [3, 7, 11]
    assert naive_greedy([0, 3], Fraction(1, 3), 30) == list(range(0, 31, 3))
