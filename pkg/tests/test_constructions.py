from decimal import Decimal, localcontext
from fractions import Fraction
from itertools import product

import numpy as np
import pytest

from addcomp.constructions import (
    RationalCaseParams,
    _band_edges,
    beatty_construction,
    jfold_residues,
    rational_case_params,
    rational_construction,
    t_j_set,
    verify_case_b,
)
from addcomp.density import exact_density
from addcomp.numeric import DensityTarget, IrrationalNumber
from addcomp.sets import PeriodicSet, counting, iterated_sumset, materialize

from conftest import GOLDEN, SQRT2, decimal_value


def beatty_oracle(theta, threshold, N):
    """Beatty band by 50-digit decimal arithmetic."""
    out = []
    with localcontext() as ctx:
        ctx.prec = 50
        t = decimal_value(theta)
        n = 1
        while int(n * t) <= N:
            x = n * t
            if x - int(x) < threshold:
                out.append(int(x))
            n += 1
    return out


@pytest.mark.parametrize(
    "alpha, k, modulus, H",
    [
        (DensityTarget(1, 2), 2, 12, (0, 1, 3)),
        (DensityTarget(3, 7), 3, 21, (0, 1, 3)),
        (DensityTarget(2, 5), 2, 20, (0, 1, 2, 4)),
    ],
)
def test_rational_construction(alpha, k, modulus, H):
    assert rational_construction(alpha, k) == PeriodicSet(modulus, H)
    params = rational_case_params(alpha, k)
    for j in range(1, k + 1):
        brute = {sum(c) % modulus for c in product(H, repeat=j)}
        jA = PeriodicSet(modulus, tuple(brute))
        assert exact_density(jA).fraction == j * alpha.fraction / k == params.density(j)


def test_unreduced_pair_is_used_as_given():
    params = rational_case_params((6, 12), 2)
    assert (params.m, params.n, params.modulus) == (6, 12, 24)
    assert params.density(2) == Fraction(1, 2)


@pytest.mark.parametrize(
    "j, expected",
    [(1, (0, 1, 3)), (2, (0, 1, 2, 3, 4, 6)), (3, (0, 1, 2, 3, 4, 5, 6, 7, 9))],
)
def test_jfold_residues(j, expected):
    params = RationalCaseParams(3, 6, 3)
    brute = tuple(sorted({sum(c) for c in product((0, 1, 3), repeat=j)}))
    assert brute == expected
    assert jfold_residues(params, j) == expected


def test_params_validation():
    with pytest.raises(ValueError):
        RationalCaseParams(2, 5, 2)
    with pytest.raises(ValueError):
        rational_construction(DensityTarget(1, 1), 2)
    with pytest.raises(ValueError):
        jfold_residues(RationalCaseParams(3, 6, 2), 3)


def test_scaling_rule_stability():
    for alpha in (Fraction(1, 2), Fraction(2, 5), Fraction(1, 7)):
        for k in (2, 3, 4):
            a = rational_case_params(alpha, k)
            b = rational_case_params((a.m, a.n), k)
            for j in range(1, k + 1):
                assert a.density(j) == b.density(j)


def test_case_a_counts_over_whole_periods():
    params = rational_case_params(Fraction(5, 6), 4)
    A = materialize(params.periodic_set(), 20 * params.modulus)
    for j in range(1, 5):
        # each residue of jH occurs exactly once per period inside [1, 20*modulus]
        assert counting(iterated_sumset(A, j), 20 * params.modulus) == 20 * j * params.m


@pytest.mark.parametrize("k, expected", [(2, [1, 4, 7, 8]), (3, [4, 7])])
def test_beatty_examples(k, expected):
    assert beatty_oracle(SQRT2, Decimal(1) / k, 10) == expected
    assert list(beatty_construction(SQRT2, k, 10)) == expected


def test_beatty_matches_oracle_long():
    for theta in (SQRT2, GOLDEN):
        for k in (2, 3, 5):
            got = list(beatty_construction(theta, k, 20000))
            assert got == beatty_oracle(theta, Decimal(1) / k, 20000)


def test_beatty_edge_cases():
    assert len(beatty_construction(SQRT2, 2, 0)) == 0
    with pytest.raises(ValueError):
        beatty_construction(SQRT2.reciprocal(), 2, 10)


def test_t_j_set():
    N = 2000
    assert t_j_set(SQRT2, 1, 3, N) == beatty_construction(SQRT2, 3, N)
    full = {int(n * 2**0.5) for n in range(1, N)} & set(range(N + 1))
    assert set(t_j_set(SQRT2, 3, 3, N)) == full
    A = beatty_construction(SQRT2, 3, 10)
    assert iterated_sumset(A, 2).issubset(t_j_set(SQRT2, 2, 3, 10))


@pytest.mark.parametrize("theta", [SQRT2, GOLDEN, IrrationalNumber.sqrt(7)])
@pytest.mark.parametrize("k", [2, 3, 4])
def test_containment(theta, k):
    N = 20000
    A = beatty_construction(theta, k, N)
    for j in range(1, k + 1):
        assert iterated_sumset(A, j).issubset(t_j_set(theta, j, k, N))


def test_band_widths():
    ell, edges = _band_edges(2, 2, Fraction(1, 10))
    assert ell == Fraction(9, 10)
    assert [hi - lo for lo, hi in edges] == [Fraction(9, 20)] * 2
    assert edges[0][0] == Fraction(1, 20) and edges[-1][1] == 1 - Fraction(1, 20)


def test_verify_case_b_sqrt2():
    rep = verify_case_b(SQRT2, 2, 2, Fraction(1, 10), 10**4)
    assert rep.ok
    assert all(w is not None and w.in_A for w in rep.witnesses)
    assert rep.checked > 6000


@pytest.mark.parametrize("theta", [GOLDEN, IrrationalNumber.sqrt(3)])
@pytest.mark.parametrize("j, k", [(2, 3), (3, 3), (2, 4), (4, 4)])
def test_verify_case_b_more(theta, j, k):
    rep = verify_case_b(theta, j, k, horizon=20000)
    assert rep.ok, rep.violations[:5]
    assert len(rep.witnesses) == j


def test_verify_witness_inequality_holds_exactly():
    rep = verify_case_b(GOLDEN, 3, 4, Fraction(1, 20), 5000)
    ell, edges = _band_edges(3, 4, Fraction(1, 20))
    with localcontext() as ctx:
        ctx.prec = 50
        t = decimal_value(GOLDEN)
        for w, (lo, hi) in zip(rep.witnesses, edges):
            x = w.m_i * t
            frac = x - int(x)
            lo_w = hi - Fraction(1, 4)
            assert Decimal(lo_w.numerator) / lo_w.denominator < 2 * frac
            assert 2 * frac < Decimal(lo.numerator) / lo.denominator


def test_verify_case_b_preconditions():
    with pytest.raises(ValueError):
        verify_case_b(SQRT2, 1, 2)
    with pytest.raises(ValueError):
        verify_case_b(SQRT2, 2, 2, Fraction(1, 8))


def test_verify_case_b_inconclusive_when_cap_too_small():
    rep = verify_case_b(SQRT2, 2, 2, Fraction(1, 10), 1000, cap=3)
    assert rep.inconclusive and not rep.ok
