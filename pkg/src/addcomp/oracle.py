"""Slow reference implementations for cross-checking the fast paths.

Nothing here imports from the optimized modules: sets are plain Python
sets, densities are ``Fraction`` objects, and every ratio is recomputed from
scratch.
"""

from fractions import Fraction
from itertools import product


def naive_sumset(A, B, N):
    """All ``a + b <= N`` by a double loop."""
    return sorted({a + b for a in A for b in B if a + b <= N})


def naive_jfold(A, j, N):
    """All sums of ``j`` elements of ``A`` that are at most ``N``."""
    A = [a for a in A if a <= N]
    return sorted({sum(t) for t in product(A, repeat=j) if sum(t) <= N})


def _count(S, n):
    return len([s for s in S if 1 <= s <= n])


def naive_greedy(B, alpha, N):
    """The greedy complement, recomputing every ratio from scratch.

    ``alpha`` is anything ``Fraction`` accepts, strictly between 0 and 1.
    """
    alpha = Fraction(alpha)
    B = sorted(set(B))
    shift = B[0]
    B = [x - shift for x in B]
    b = B[-1]
    guard = b + 1
    limit = N + shift
    chosen = []
    a = 0
    while a <= limit:
        S = {x + y for x in chosen + [a] for y in B}
        if chosen:
            ns = range(a, a + b + 2 + guard)
        else:
            ns = range(1, a + b + 2 + guard)
        if all(Fraction(_count(S, n), n) <= alpha for n in ns if n >= 1):
            chosen.append(a)
        a += 1
    return sorted(x - shift for x in chosen if shift <= x <= N + shift)
