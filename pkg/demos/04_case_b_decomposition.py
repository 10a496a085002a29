"""
Why almost every band element is a j-fold sum
=============================================

Cut the fractional range [eps/2, j/k - eps/2) into j equal bands.  For each
band a shift m_i is found, and every floor(N*theta) in that band (past the
shift) splits as floor((N - (j-1) m_i) theta) + (j-1) floor(m_i theta) with
both parts in A.  The verifier checks this element by element.
"""

from fractions import Fraction

from addcomp import parse_theta, verify_case_b

theta = parse_theta("sqrt:2")
report = verify_case_b(theta, j=2, k=2, eps=Fraction(1, 10), horizon=10**4)

print(f"band width ell/j = {report.ell / report.j}")
for w, size in zip(report.witnesses, report.band_sizes):
    print(f"band {w.i}: m_i={w.m_i}  floor(m_i theta)={w.floor_value}  in A: {w.in_A}  elements: {size}")
print(f"checked {report.checked}, below the shift bound {report.below_bound}, violations {len(report.violations)}")

###############################################################################
# Larger j works the same way, with one witness per band.

report = verify_case_b(parse_theta("quad:1,1,2,5"), j=4, k=4, horizon=50000)
print([w.m_i for w in report.witnesses], "ok" if report.ok else "FAILED")
