"""
A greedy complement for a finite set
====================================

Pick a finite set B and a target density alpha.  The greedy builder adds
the smallest possible element at each step so that the counting function
of A + B never rises above alpha * n.  We look at the first elements, the
per-step diagnostics and how (A + B)(n)/n settles toward alpha.
"""

from fractions import Fraction

from addcomp import FiniteSet, density_report, parse_density, run_greedy, sumset

B = FiniteSet((0, 1, 5))
alpha = parse_density("11/20")
N = 20000

A, state = run_greedy(B, alpha, N)
print("first elements of A:", list(A)[:15])

###############################################################################
# Each step records how many candidates were rejected before one fitted, and
# the proven ceiling ceil(k*m/alpha) that the element must stay under.

for step in state.steps[:8]:
    print(f"m={step.index:<3} a_m={step.element:<4} tried={step.candidates_tried:<3} bound={step.bound}")

###############################################################################
# The sumset never exceeds the target, and the tail bracket closes in on it.

S = sumset(A, B)
for n in (100, 1000, 10000, N):
    print(f"(A+B)({n})/{n} = {S.counting(n) / n:.5f}")

report = density_report(S, window_fraction=0.5)
print("tail bracket:", report.tail_lower, "..", report.tail_upper, "target", Fraction(alpha.p, alpha.q))
