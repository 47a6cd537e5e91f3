"""
How the optimal ratio grows with the fluctuation ratios
=======================================================

For two objectives the best achievable competitive ratio z depends only on
phi_i = M_i / m_i. We tabulate the closed forms for the four built-in
scalarizations, cross-check one row against the numeric sup over the
balance surface, and compare the arithmetic-mean value with the fourth root
of phi_1 phi_2, which it always exceeds.
"""

import numpy as np

from motss import validate_bounds
from motss.analysis import z_closed_form, z_numeric
from motss.scalarize import BUILTINS

phis = [1.5, 4.0, 9.0, 25.0, 100.0]
print(f"{'phi1':>6} {'phi2':>6} " + " ".join(f"{f.label:>8}" for f in BUILTINS) + "  (phi1 phi2)^1/4")
for i, p1 in enumerate(phis):
    for p2 in phis[: i + 1]:
        b = validate_bounds((1.0, 1.0), (p1, p2))
        zs = [z_closed_form(f, b).value for f in BUILTINS]
        print(f"{p1:6.1f} {p2:6.1f} " + " ".join(f"{z:8.4f}" for z in zs) + f"  {(p1 * p2) ** 0.25:8.4f}")

# The numeric oracle never looks at the formulas.
b = validate_bounds((1, 1), (9, 4))
for f in BUILTINS:
    zc = z_closed_form(f, b)
    zn = z_numeric(f, b, 2048)
    print(f"{f.label:>6}: closed {zc.value:.12f} ({zc.theorem}), numeric {zn.value:.12f}, "
          f"witness {np.round(zn.witness, 6)}")
