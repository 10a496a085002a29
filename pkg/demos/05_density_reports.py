"""
Reading a density report
========================

A report samples X(x)/x on a grid, brackets it over the tail window
[w*N, N], and adds the index form k/a_k.  Periodic inputs also carry their
exact density.  The CSV output feeds straight into any plotting tool.
"""

from addcomp import PeriodicSet, density_report, floor_scale, materialize, parse_theta
from addcomp.density import ratio_curve_csv

report = density_report(PeriodicSet(12, (0, 1, 3)), horizon=6000)
print("exact:", report.exact_density, "bracket:", report.tail_lower, report.tail_upper)
print("index form:", report.index_lower, report.index_upper)

###############################################################################
# Scaling the even numbers by sqrt(2) divides the density by sqrt(2).

evens = materialize(PeriodicSet(2, (0,)), 10**6)
scaled = floor_scale(evens, parse_theta("sqrt:2"), 10**6)
rep = density_report(scaled)
print("scaled evens:", [round(v, 5) for v in rep.bracket], "expected", round(0.5 / 2**0.5, 5))

print(ratio_curve_csv(density_report(scaled, grid=6)))
