"""Greedy additive complement with a prescribed sumset density.

Given a finite ``B`` and a rational ``alpha = p/q`` in ``(0, 1)``, elements
``a_1 < a_2 < ...`` are chosen one at a time: each is the least candidate
that keeps ``(A + B)(n) <= alpha * n`` for every ``n``.  Once a candidate
``a`` is added, ``A + B`` gains nothing past ``a + b``, so the ratio only
decreases there and the check reduces to the window ``[max(a, 1), a + b]``.
All comparisons are the integer test ``count * q <= p * n``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .numeric import DensityTarget
from .sets import FiniteSet, GroundSet, sumset

__all__ = [
    "GreedyState",
    "GreedyStep",
    "build_greedy",
    "check_ratio_monotone",
    "first_element",
    "next_element",
    "normalize",
    "run_greedy",
    "upper_bound_violations",
]


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def normalize(B: FiniteSet) -> tuple[FiniteSet, int]:
    """Translate ``B`` so that its minimum is 0; returns ``(B - min B, min B)``."""
    if not B.elements:
        raise ValueError("B must be nonempty")
    b1 = B.elements[0]
    return FiniteSet(tuple(x - b1 for x in B.elements)), b1


@dataclass
class GreedyStep:
    index: int  # m, 1-based
    element: int  # a_m
    candidates_tried: int
    argmax_n: Optional[int]  # window position of the largest ratio for a_m
    bound: int  # ceil(k*m/alpha)


@dataclass
class GreedyState:
    """Incremental state of the construction against a normalized ``B``.

    ``member`` flags ``A_m + B`` and ``prefix[n]`` is its counting function,
    valid for ``n <= top``; past ``top = a_m + b`` the count is constant.
    """

    B_normalized: FiniteSet
    b1: int
    alpha: DensityTarget
    limit: int
    elements_so_far: list = field(default_factory=list)
    steps: list = field(default_factory=list)

    def __post_init__(self):
        if self.B_normalized.elements[0] != 0:
            raise ValueError("B must be normalized to min 0")
        size = self.limit + self.B_normalized.b + 2
        self.member = bytearray(size)
        self.prefix = [0] * size
        self.top = 0

    @property
    def sum_counts(self) -> list:
        return self.prefix[: self.top + 1]

    def _count_before(self, n: int) -> int:
        return self.prefix[min(n, self.top)]

    def window_check(self, a: int) -> tuple[bool, Optional[int]]:
        """Test candidate ``a``; return (accepted, argmax n of the ratio)."""
        p, q = self.alpha.p, self.alpha.q
        b = self.B_normalized.b
        shifts = set(self.B_normalized.elements)
        member = self.member
        added = 0
        best_n, best_c = None, -1
        lo = max(a, 1)
        # positions below lo that are new only matter for a == 0, where they are 0 itself
        for n in range(lo, a + b + 1):
            if (n - a) in shifts and not member[n]:
                added += 1
            c = self._count_before(n) + added
            if c * q > p * n:
                return False, n
            if best_n is None or c * best_n > best_c * n:
                best_n, best_c = n, c
        return True, best_n

    def accept(self, a: int) -> None:
        b = self.B_normalized.b
        member, prefix = self.member, self.prefix
        for x in self.B_normalized.elements:
            member[a + x] = 1
        last = prefix[self.top]
        for n in range(self.top + 1, a):
            prefix[n] = last
        run = prefix[a - 1] if a >= 1 else 0
        for n in range(max(a, 1), a + b + 1):
            run += member[n]
            prefix[n] = run
        self.top = max(self.top, a + b)
        self.elements_so_far.append(a)

    def search(self, start: int) -> Optional[int]:
        """Least accepted candidate ``>= start`` not above ``limit``, else None."""
        m = len(self.elements_so_far) + 1
        k = self.B_normalized.k
        for a in range(start, self.limit + 1):
            ok, argmax = self.window_check(a)
            if ok:
                self.steps.append(
                    GreedyStep(m, a, a - start + 1, argmax, _ceil_div(k * m * self.alpha.q, self.alpha.p))
                )
                self.accept(a)
                return a
        return None


def first_element(B_normalized: FiniteSet, alpha: DensityTarget, limit: Optional[int] = None) -> int:
    """Least ``a >= 0`` with ``(a + B)(n) <= alpha*n`` for all ``n >= 1``."""
    k = B_normalized.k
    if limit is None:
        limit = _ceil_div(k * alpha.q, alpha.p)
    state = GreedyState(B_normalized, 0, alpha, limit)
    a = state.search(0)
    if a is None:
        raise RuntimeError("first element exceeded its proven bound")
    return a


def next_element(state: GreedyState) -> Optional[int]:
    """Extend ``state`` by the next greedy element; None once past ``state.limit``."""
    start = state.elements_so_far[-1] + 1 if state.elements_so_far else 0
    return state.search(start)


def _alpha(alpha) -> DensityTarget:
    return alpha if isinstance(alpha, DensityTarget) else DensityTarget.from_fraction(alpha)


def run_greedy(B: FiniteSet, alpha, horizon: int) -> tuple[GroundSet, GreedyState]:
    """Run the construction and keep the state for diagnostics.

    Built against ``B - min B`` up to ``horizon + min B`` and translated back,
    so the returned set is exact on ``[0, horizon]``.
    """
    alpha = _alpha(alpha)
    if not 0 < alpha.p < alpha.q:
        raise ValueError("run_greedy needs 0 < alpha < 1")
    Bn, b1 = normalize(B)
    state = GreedyState(Bn, b1, alpha, horizon + b1)
    while next_element(state) is not None:
        pass
    els = np.asarray(state.elements_so_far, dtype=np.int64) - b1
    return GroundSet.from_elements(els[els >= 0], horizon), state


def build_greedy(B: FiniteSet, alpha, horizon: int) -> GroundSet:
    """``A ∩ [0, horizon]`` with ``d(A + B) = alpha``.

    ``alpha = 0`` gives the powers of two and ``alpha = 1`` the whole prefix.
    """
    alpha = _alpha(alpha)
    if alpha.p == 0:
        powers = [1 << e for e in range(max(horizon, 1).bit_length())]
        return GroundSet.from_elements(powers, horizon)
    if alpha.p == alpha.q:
        return GroundSet.interval(horizon)
    return run_greedy(B, alpha, horizon)[0]


def upper_bound_violations(A: GroundSet, B: FiniteSet, alpha) -> np.ndarray:
    """All ``n`` in ``[1, N]`` with ``(A + B)(n) > alpha*n``."""
    alpha = _alpha(alpha)
    counts = sumset(A, B).count_prefix[1:]
    n = np.arange(1, A.horizon + 1, dtype=np.int64)
    return n[counts * alpha.q > alpha.p * n]


def check_ratio_monotone(A: GroundSet, B: FiniteSet) -> list:
    """Elements ``a > 1`` of ``A`` where ``(A+B)(a)/a < (A+B)(a-1)/(a-1)``.

    Empty for any ``A`` as long as ``0 in B``.
    """
    if not B.elements or B.elements[0] != 0:
        raise ValueError("check_ratio_monotone needs min B = 0")
    c = sumset(A, B).count_prefix
    a = A.elements()
    a = a[a > 1]
    bad = c[a] * (a - 1) < c[a - 1] * a
    return [int(x) for x in a[bad]]
