"""Density estimates for finite prefixes.

Limits are not observable at a finite horizon, so a report brackets the
ratio ``X(x)/x`` over a tail window ``[w*N, N]`` instead.  All brackets are
exact fractions; float values appear only in serialized output.
"""

from __future__ import annotations

import io
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from .numeric import DensityTarget
from .sets import GroundSet, PeriodicSet

__all__ = [
    "DensityReport",
    "density_report",
    "exact_density",
    "index_density",
    "ratio_curve_csv",
    "report_to_dict",
    "report_to_json",
]

SCHEMA_VERSION = 1


@dataclass
class DensityReport:
    horizon: int
    window_fraction: float
    ratio_curve: list = field(default_factory=list)  # (x, X(x)) pairs
    tail_lower: Fraction = Fraction(0)
    tail_upper: Fraction = Fraction(0)
    index_lower: Optional[Fraction] = None
    index_upper: Optional[Fraction] = None
    exact_density: Optional[Fraction] = None
    inconclusive: bool = False

    @property
    def bracket(self) -> tuple[float, float]:
        return float(self.tail_lower), float(self.tail_upper)


def _window_start(horizon: int, window_fraction: float) -> int:
    if not 0 < window_fraction < 1:
        raise ValueError("window_fraction must lie in (0, 1)")
    start = max(1, math.ceil(horizon * window_fraction))
    if start > horizon:
        raise ValueError(f"empty tail window for horizon {horizon}")
    return start


def _exact_extreme(counts: np.ndarray, xs: np.ndarray, pick) -> Fraction:
    """Exact min/max of ``counts/xs``; floats only shortlist the candidates."""
    ratios = counts / xs
    target = pick(ratios)
    near = np.flatnonzero(np.abs(ratios - target) <= 1e-12 * max(target, 1e-300))
    return pick(Fraction(int(counts[i]), int(xs[i])) for i in near)


def index_density(X: GroundSet, window_fraction: float = 0.5) -> tuple[Fraction, Fraction]:
    """Min and max of ``k/a_k`` over elements ``a_k`` in the tail window.

    ``k`` is the 1-based rank of ``a_k`` among the elements ``>= 1``.
    """
    start = _window_start(X.horizon, window_fraction)
    els = X.elements()
    els = els[els >= 1]
    ranks = np.arange(1, len(els) + 1, dtype=np.int64)
    sel = els >= start
    if sel.sum() < 2:
        raise ValueError("fewer than two elements in the tail window")
    a, k = els[sel], ranks[sel]
    return _exact_extreme(k, a, min), _exact_extreme(k, a, max)


def exact_density(P: PeriodicSet) -> DensityTarget:
    return DensityTarget(len(P.residues), P.modulus)


def _grid(horizon: int, points: int) -> np.ndarray:
    return np.unique(np.linspace(1, horizon, num=min(points, horizon)).round().astype(np.int64))


def density_report(
    X,
    window_fraction: float = 0.5,
    grid: int = 1024,
    *,
    horizon: Optional[int] = None,
) -> DensityReport:
    """Summarize ``X(x)/x`` for a :class:`GroundSet`.

    A :class:`PeriodicSet` is accepted too (pass ``horizon``); it is
    materialized and its exact density is attached.  If the exact value falls
    outside the tail bracket the report is marked inconclusive.
    """
    exact = None
    if isinstance(X, PeriodicSet):
        if horizon is None:
            raise ValueError("a horizon is required for periodic input")
        exact = exact_density(X).fraction
        X = X.materialize(horizon)
    N = X.horizon
    if N < 1:
        raise ValueError("horizon must be at least 1")
    if grid < 1:
        raise ValueError("grid must be positive")
    start = _window_start(N, window_fraction)
    prefix = X.count_prefix
    xs = _grid(N, grid)
    curve = [(int(x), int(prefix[x])) for x in xs]

    tail_x = np.arange(start, N + 1, dtype=np.int64)
    tail_c = prefix[start:]
    report = DensityReport(
        horizon=N,
        window_fraction=window_fraction,
        ratio_curve=curve,
        tail_lower=_exact_extreme(tail_c, tail_x, min),
        tail_upper=_exact_extreme(tail_c, tail_x, max),
        exact_density=exact,
    )
    try:
        report.index_lower, report.index_upper = index_density(X, window_fraction)
    except ValueError:
        pass
    if exact is not None and not report.tail_lower <= exact <= report.tail_upper:
        report.inconclusive = True
    return report


def _frac(x: Optional[Fraction]):
    if x is None:
        return None
    return {"num": x.numerator, "den": x.denominator, "approx": float(x)}


def report_to_dict(report: DensityReport) -> dict:
    return {
        "schema": SCHEMA_VERSION,
        "horizon": report.horizon,
        "window_fraction": report.window_fraction,
        "ratio_curve": [{"x": x, "count": c} for x, c in report.ratio_curve],
        "tail_lower": _frac(report.tail_lower),
        "tail_upper": _frac(report.tail_upper),
        "index_lower": _frac(report.index_lower),
        "index_upper": _frac(report.index_upper),
        "exact_density": _frac(report.exact_density),
        "inconclusive": report.inconclusive,
    }


def report_to_json(report: DensityReport) -> str:
    return json.dumps(report_to_dict(report), indent=2) + "\n"


def ratio_curve_csv(report: DensityReport) -> str:
    buf = io.StringIO()
    buf.write("x,count,ratio_num,ratio_den\n")
    for x, c in report.ratio_curve:
        buf.write(f"{x},{c},{c},{x}\n")
    return buf.getvalue()
