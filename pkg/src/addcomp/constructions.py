"""Explicit sets whose j-fold sumsets have density ``j*alpha/k``.

Rational ``alpha = m/n``
    ``A = ∪_{h in H} (nk*N + h)`` with ``H = {0, ..., m-2, m}``.  Then
    ``jA = nk*N + jH`` and ``jH = {0, ..., jm-2, jm}``, so ``d(jA) = jm/(nk)``.
    Fractions with ``m < 3`` are rescaled first (``m=1``: x3, ``m=2``: x2).

Irrational ``alpha = 1/theta``
    ``A = {floor(n*theta) : n >= 1, {n*theta} < 1/k}``.  Sums of ``j``
    elements land in ``T_j`` (fractional part below ``j/k``), and
    :func:`verify_case_b` checks the converse decomposition band by band.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Optional, Union

import numpy as np

from .numeric import DensityTarget, FixedPointReal, IrrationalNumber, floor_mul_many, sign_vs_rational
from .sets import GroundSet, PeriodicSet, iterated_sumset

__all__ = [
    "CaseBReport",
    "RationalCaseParams",
    "ShiftWitness",
    "beatty_construction",
    "fractional_band",
    "jfold_residues",
    "rational_case_params",
    "rational_construction",
    "t_j_set",
    "verify_case_b",
]

Theta = Union[IrrationalNumber, FixedPointReal]

WITNESS_CAP = 10**7
_CHUNK = 1 << 14


@dataclass(frozen=True)
class RationalCaseParams:
    m: int
    n: int
    k: int

    def __post_init__(self):
        if self.k < 2:
            raise ValueError("k must be at least 2")
        if not 3 <= self.m <= self.n - 1:
            raise ValueError(f"need 3 <= m <= n-1, got m={self.m}, n={self.n}")

    @property
    def H(self) -> tuple:
        return tuple(range(self.m - 1)) + (self.m,)

    @property
    def modulus(self) -> int:
        return self.n * self.k

    def periodic_set(self) -> PeriodicSet:
        return PeriodicSet(self.modulus, self.H)

    def density(self, j: int) -> Fraction:
        return Fraction(j * self.m, self.modulus)


def rational_case_params(alpha, k: int) -> RationalCaseParams:
    """Scale ``alpha = m/n`` so that ``m >= 3``.

    ``alpha`` may be a :class:`DensityTarget`, a ``Fraction`` or an
    ``(m, n)`` pair; a pair is used as given, without reduction.
    """
    if isinstance(alpha, tuple):
        m, n = alpha
    else:
        if not isinstance(alpha, DensityTarget):
            alpha = DensityTarget.from_fraction(alpha)
        m, n = alpha.p, alpha.q
    if not 0 < m < n:
        raise ValueError("alpha must lie strictly between 0 and 1")
    if m == 1:
        m, n = 3 * m, 3 * n
    elif m == 2:
        m, n = 2 * m, 2 * n
    return RationalCaseParams(m, n, k)


def rational_construction(alpha, k: int) -> PeriodicSet:
    return rational_case_params(alpha, k).periodic_set()


def jfold_residues(params: RationalCaseParams, j: int) -> tuple:
    """``jH`` by brute force; checked against ``{0, ..., jm-2} ∪ {jm}``."""
    if not 1 <= j <= params.k:
        raise ValueError(f"j must lie in [1, {params.k}]")
    sums = {sum(c) for c in product(params.H, repeat=j)}
    expected = set(range(j * params.m - 1)) | {j * params.m}
    if sums != expected:
        raise AssertionError(f"jH identity broken for j={j}: {sorted(sums)}")
    return tuple(sorted(sums))


def _require_above_one(theta: Theta) -> None:
    if sign_vs_rational(theta, 1, 1) <= 0:
        raise ValueError("theta must exceed 1")


def _multipliers(theta: Theta, horizon: int) -> np.ndarray:
    """All ``n >= 1`` with ``floor(n*theta) <= horizon`` (theta > 1)."""
    # floor(n θ) <= N  iff  n θ < N + 1
    hi = int((horizon + 1) / float(theta)) + 2
    while sign_vs_rational(theta, hi, horizon + 1) < 0:
        hi *= 2
    lo = 0
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if sign_vs_rational(theta, mid, horizon + 1) < 0:
            lo = mid
        else:
            hi = mid
    return np.arange(1, lo + 1, dtype=np.int64)


def fractional_band(theta: Theta, lo, hi, horizon: int) -> GroundSet:
    """``{floor(n*theta) : n >= 1, lo <= {n*theta} < hi}`` up to ``horizon``.

    Endpoints are never hit by an irrational ``theta``, so open/closed
    conventions do not change the result.
    """
    _require_above_one(theta)
    lo, hi = Fraction(lo), Fraction(hi)
    ns = _multipliers(theta, horizon)
    floors = floor_mul_many(theta, ns)
    keep = np.ones(len(ns), dtype=bool)
    if lo > 0:
        keep &= ~theta.frac_less_many(ns, lo)
    if hi < 1:
        keep &= theta.frac_less_many(ns, hi)
    return GroundSet.from_elements(floors[keep], horizon)


def beatty_construction(theta: Theta, k: int, horizon: int) -> GroundSet:
    """``A ∩ [0, horizon]`` with ``A = {floor(n*theta) : {n*theta} < 1/k}``."""
    if k < 2:
        raise ValueError("k must be at least 2")
    return fractional_band(theta, 0, Fraction(1, k), horizon)


def t_j_set(theta: Theta, j: int, k: int, horizon: int) -> GroundSet:
    """``T_j ∩ [0, horizon]``: Beatty values with fractional part below ``j/k``."""
    if not 1 <= j <= k:
        raise ValueError("need 1 <= j <= k")
    return fractional_band(theta, 0, Fraction(j, k), horizon)


@dataclass(frozen=True)
class ShiftWitness:
    i: int
    m_i: int
    eps: Fraction
    floor_value: int  # floor(m_i * theta)
    in_A: bool


@dataclass
class CaseBReport:
    theta: str
    j: int
    k: int
    eps: Fraction
    horizon: int
    ell: Fraction
    witnesses: list = field(default_factory=list)  # ShiftWitness or None per band
    band_sizes: list = field(default_factory=list)
    checked: int = 0
    below_bound: int = 0
    violations: list = field(default_factory=list)  # (band, N, reason)
    inconclusive: bool = False

    @property
    def ok(self) -> bool:
        return not self.inconclusive and not self.violations


def _band_edges(j: int, k: int, eps: Fraction) -> tuple[Fraction, list]:
    ell = Fraction(j, k) - eps
    edges = [(eps / 2 + i * ell / j, eps / 2 + (i + 1) * ell / j) for i in range(j)]
    return ell, edges


def _find_witness(theta: Theta, lo: Fraction, hi: Fraction, cap: int) -> Optional[int]:
    """Least ``m >= 1`` with ``lo < {m*theta} < hi``, searched up to ``cap``."""
    for start in range(1, cap + 1, _CHUNK):
        ms = np.arange(start, min(start + _CHUNK, cap + 1), dtype=np.int64)
        ok = theta.frac_less_many(ms, hi)
        if lo > 0:
            ok &= ~theta.frac_less_many(ms, lo)
        hits = np.flatnonzero(ok)
        if hits.size:
            return int(ms[hits[0]])
    return None


def verify_case_b(
    theta: Theta,
    j: int,
    k: int,
    eps=None,
    horizon: int = 10**4,
    cap: int = WITNESS_CAP,
) -> CaseBReport:
    """Check that almost every element of the band set lies in ``jA``.

    The band set is ``{floor(N*theta) : eps/2 <= {N*theta} < j/k - eps/2}``,
    cut into ``j`` equal bands ``I_i``.  For each band a shift ``m_i`` with
    ``lo_i < (j-1){m_i*theta} < hi_i`` is searched, and every element with
    ``N > (j-1) m_i`` is decomposed as
    ``floor(N θ) = floor((N - (j-1) m_i) θ) + (j-1) floor(m_i θ)``
    with both summands in ``A``.
    """
    if not 2 <= j <= k:
        raise ValueError("verification covers 2 <= j <= k")
    eps = Fraction(1, 8 * k) if eps is None else Fraction(eps)
    if not 0 < eps < Fraction(1, 4 * k):
        raise ValueError("eps must lie in (0, 1/(4k))")
    _require_above_one(theta)
    ell, edges = _band_edges(j, k, eps)
    inv_k = Fraction(1, k)
    report = CaseBReport(str(theta), j, k, eps, horizon, ell)

    A = beatty_construction(theta, k, horizon)
    jA = iterated_sumset(A, j)
    ns = _multipliers(theta, horizon)
    floors = floor_mul_many(theta, ns)

    for i, (band_lo, band_hi) in enumerate(edges):
        in_band = ~theta.frac_less_many(ns, band_lo) & theta.frac_less_many(ns, band_hi)
        band_ns, band_floors = ns[in_band], floors[in_band]
        report.band_sizes.append(int(in_band.sum()))

        # (j-1){mθ} strictly between band_hi - 1/k and band_lo
        w_lo = (band_hi - inv_k) / (j - 1)
        w_hi = band_lo / (j - 1)
        m_i = _find_witness(theta, w_lo, w_hi, cap)
        if m_i is None:
            report.witnesses.append(None)
            report.inconclusive = True
            continue
        f_m = int(floor_mul_many(theta, np.array([m_i]))[0])
        in_A = theta.frac_compare(m_i, inv_k) < 0
        report.witnesses.append(ShiftWitness(i, m_i, eps, f_m, in_A))
        if not in_A:
            report.violations.append((i, m_i, "witness not in A"))

        shift = (j - 1) * m_i
        beyond = band_ns > shift
        report.below_bound += int((~beyond).sum())
        big_n, big_f = band_ns[beyond], band_floors[beyond]
        r = big_n - shift
        c = big_f - (j - 1) * f_m
        # 0 < rθ - c < 1/k, i.e. {Nθ} - (j-1){m_i θ} lies in (0, 1/k)
        lower_ok = ~theta.less_than_many(r, c, 1)
        upper_ok = theta.less_than_many(r, c * k + 1, k)
        f_r = floor_mul_many(theta, r)
        ident_ok = f_r == c
        part_ok = A.mask[f_r]
        sum_ok = jA.mask[big_f]
        report.checked += len(big_n)
        for name, ok in (
            ("shifted fractional part outside (0, 1/k)", lower_ok & upper_ok),
            ("floor identity fails", ident_ok),
            ("shifted part not in A", part_ok),
            ("element not in jA", sum_ok),
        ):
            for N in big_n[~ok]:
                report.violations.append((i, int(N), name))
    return report
