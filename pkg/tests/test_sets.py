import random
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from addcomp.oracle import naive_jfold, naive_sumset
from addcomp.sets import (
    FiniteSet,
    GroundSet,
    PeriodicSet,
    add_sets,
    counting,
    dumps_binary,
    dumps_text,
    floor_scale,
    iterated_sumset,
    loads_binary,
    loads_text,
    materialize,
    read_binary,
    read_text,
    sumset,
    write_binary,
    write_text,
)

from conftest import SQRT2

elements_and_horizon = st.integers(0, 700).flatmap(
    lambda N: st.tuples(st.just(N), st.sets(st.integers(0, N), max_size=80))
)


def G(elements, N):
    return GroundSet.from_elements(elements, N)


@pytest.mark.parametrize(
    "elements, N, x, expected",
    [({0}, 5, 5, 0), ({1, 3}, 5, 2, 1), ({2, 4, 6, 8, 10}, 10, 7, 3), ({1, 2}, 5, 0, 0), ({1}, 5, -3, 0)],
)
def test_counting(elements, N, x, expected):
    assert counting(G(elements, N), x) == expected


def test_counting_beyond_horizon():
    with pytest.raises(ValueError):
        counting(G({1}, 5), 6)


@given(elements_and_horizon)
def test_counting_steps_match_membership(data):
    N, els = data
    X = G(els, N)
    assert counting(X, 0) == 0
    for x in range(1, N + 1):
        assert counting(X, x) - counting(X, x - 1) == (x in els)


@given(elements_and_horizon)
def test_roundtrip_and_membership(data):
    N, els = data
    X = G(els, N)
    assert set(X) == els
    assert len(X) == len(els)
    assert all((x in X) == (x in els) for x in range(-2, N + 3))
    assert loads_text(dumps_text(X)) == X
    assert loads_binary(dumps_binary(X)) == X


def test_file_formats(tmp_path):
    X = G({0, 3, 64, 65, 130}, 130)
    write_text(X, tmp_path / "x.txt")
    assert (tmp_path / "x.txt").read_text() == "horizon=130\n0\n3\n64\n65\n130\n"
    assert read_text(tmp_path / "x.txt") == X
    write_binary(X, tmp_path / "x.bin")
    raw = (tmp_path / "x.bin").read_bytes()
    assert raw[:8] == (130).to_bytes(8, "little")
    assert len(raw) == 8 + 8 * 3
    assert int.from_bytes(raw[8:16], "little") == (1 << 0) | (1 << 3)
    assert int.from_bytes(raw[16:24], "little") == 0b11
    assert read_binary(tmp_path / "x.bin") == X


def test_text_format_rejects_missing_header():
    with pytest.raises(ValueError):
        loads_text("1\n2\n")


def test_sumset_examples():
    assert list(sumset(G({0, 2, 4}, 5), FiniteSet((0, 1)))) == [0, 1, 2, 3, 4, 5]
    A = G({1, 5, 9, 63, 64, 200}, 300)
    assert sumset(A, FiniteSet((0,))) == A


@pytest.mark.parametrize(
    "elements, j, N, expected",
    [({0, 1}, 2, 5, [0, 1, 2]), ({0, 1}, 1, 5, [0, 1]), ({0, 1}, 3, 5, [0, 1, 2, 3]), ({1}, 4, 10, [4])],
)
def test_iterated_sumset_examples(elements, j, N, expected):
    assert list(iterated_sumset(G(elements, N), j)) == expected


def test_iterated_sumset_periodic_residues():
    A = materialize(PeriodicSet(12, (0, 1, 3)), 120)
    residues = {x % 12 for x in iterated_sumset(A, 2)}
    brute = {(a + b) % 12 for a, b in product((0, 1, 3), repeat=2)}
    assert residues == brute == {0, 1, 2, 3, 4, 6}


def test_oracle_equivalence_randomized():
    rng = random.Random(20190409)
    for _ in range(200):
        N = rng.randint(1, 2000)
        A = rng.sample(range(N + 1), rng.randint(0, min(N + 1, 60)))
        B = rng.sample(range(N + 1), rng.randint(1, min(6, N + 1)))
        GA = G(A, N)
        assert list(sumset(GA, FiniteSet(tuple(B)))) == naive_sumset(A, B, N)
        j = rng.randint(1, 4)
        small = A[:12]
        assert list(iterated_sumset(G(small, N), j)) == naive_jfold(small, j, N)


def test_fft_path_matches_shift_or():
    rng = np.random.default_rng(7)
    N = 40000
    X = GroundSet.from_mask(rng.random(N + 1) < 0.2)
    Y = GroundSet.from_mask(rng.random(N + 1) < 0.1)
    assert len(X) > 2048 and len(Y) > 2048
    via_fft = add_sets(X, Y)
    acc = np.zeros(N + 1, dtype=bool)
    for y in Y.elements():
        acc[y:] |= X.mask[: N + 1 - y]
    assert np.array_equal(via_fft.mask, acc)


@settings(max_examples=60, deadline=None)
@given(elements_and_horizon, st.integers(0, 400), st.sets(st.integers(0, 40), min_size=1, max_size=6))
def test_prefix_closure(data, extra, B):
    N1, els = data
    N2 = N1 + extra
    B = FiniteSet(tuple(B))
    small = sumset(G(els, N1), B)
    big = sumset(G(els, N2), B)
    assert big.restrict(N1) == small
    for j in (2, 3):
        assert iterated_sumset(G(els, N2), j).restrict(N1) == iterated_sumset(G(els, N1), j)


@pytest.mark.parametrize(
    "P, N, expected",
    [
        (PeriodicSet(2, (0,)), 6, [0, 2, 4, 6]),
        (PeriodicSet(12, (0, 1, 3)), 13, [0, 1, 3, 12, 13]),
        (PeriodicSet(1, (0,)), 4, [0, 1, 2, 3, 4]),
    ],
)
def test_materialize(P, N, expected):
    assert list(materialize(P, N)) == expected


@settings(max_examples=100)
@given(
    st.integers(1, 30).flatmap(
        lambda M: st.tuples(st.just(M), st.sets(st.integers(0, M - 1), min_size=1), st.integers(0, 20), st.integers(0, M - 1))
    )
)
def test_periodic_counting_identity(data):
    M, residues, t, partial = data
    N = t * M + partial
    X = materialize(PeriodicSet(M, tuple(residues)), N)
    full = t * len(residues)
    partial_count = sum(1 for r in residues if 1 <= r <= partial)
    assert counting(X, t * M) == full
    assert counting(X, N) == full + partial_count


def test_periodic_set_validation():
    with pytest.raises(ValueError):
        PeriodicSet(5, (5,))
    with pytest.raises(ValueError):
        PeriodicSet(0, ())


def test_floor_scale_examples():
    assert list(floor_scale(G({0, 1, 2}, 10), SQRT2, 10)) == [0, 1, 2]
    assert list(floor_scale(G({5}, 10), SQRT2, 10)) == [7]
    assert len(floor_scale(G(set(), 10), SQRT2, 10)) == 0
    with pytest.raises(ValueError):
        floor_scale(G({1}, 10), SQRT2.reciprocal(), 10)


def test_finite_set():
    B = FiniteSet.parse("5, 0,1")
    assert B.elements == (0, 1, 5) and B.k == 3 and B.b == 5
    with pytest.raises(ValueError):
        FiniteSet.parse(" , ")
    with pytest.raises(ValueError):
        FiniteSet((1, 1))
