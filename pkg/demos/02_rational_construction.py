"""
Periodic sets whose j-fold sums step up evenly
==============================================

For a rational alpha = m/n and a number of summands k, the set
A = {x : x mod nk in H} with H = {0, 1, ..., m-2, m} has d(jA) = j*alpha/k
for every j up to k.  The residue sets jH can be listed exactly.
"""

from addcomp import iterated_sumset, jfold_residues, materialize, rational_case_params

params = rational_case_params((3, 7), 3)
print(f"modulus {params.modulus}, H = {params.H}")

for j in range(1, params.k + 1):
    jH = jfold_residues(params, j)
    print(f"j={j}: |jH|={len(jH)}  d(jA)={params.density(j)}  jH={jH}")

###############################################################################
# The same residues show up when the set is expanded and summed for real.

A = materialize(params.periodic_set(), 10 * params.modulus)
for j in range(1, params.k + 1):
    seen = sorted({x % params.modulus for x in iterated_sumset(A, j)})
    print(f"j={j}: residues of jA mod {params.modulus} -> {seen}")

###############################################################################
# Fractions with a small numerator are rescaled first: 1/2 becomes 3/6.

half = rational_case_params((1, 2), 2)
print("alpha=1/2, k=2 ->", half.periodic_set())
