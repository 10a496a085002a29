"""
Beatty sets for an irrational density
=====================================

With alpha = 1/theta irrational, keep floor(n*theta) whenever the fractional
part of n*theta lies below 1/k.  The j-fold sums then have density close to
j*alpha/k at any large horizon, and they sit inside the band set T_j.
All floors and fractional comparisons below are exact integer decisions.
"""

from addcomp import beatty_construction, iterated_sumset, parse_theta, t_j_set

theta = parse_theta("quad:1,1,2,5")  # golden ratio
alpha = float(theta.reciprocal())
k, N = 3, 300000

A = beatty_construction(theta, k, N)
print("first elements:", list(A)[:12])

for j in range(1, k + 1):
    jA = iterated_sumset(A, j)
    T = t_j_set(theta, j, k, N)
    print(
        f"j={j}: (jA)(N)/N = {jA.counting(N) / N:.5f}  target {j * alpha / k:.5f}"
        f"  inside T_j: {jA.issubset(T)}"
    )

###############################################################################
# A multiplier outside the quadratic field goes through fixed point.  Any
# decision closer to a threshold than the error band raises instead.

approx_pi = parse_theta("fixed:3.14159265358979323846264338327950288,110")
print("floor(n*pi) for n<=5:", [approx_pi.floor_mul(n) for n in range(1, 6)])
