"""
Running the balanced price policy
=================================

Two objectives, prices revealed one at a time. The player accepts the first
price whose upside f(p/m) has caught up with the remaining downside f(M/p).
"""

import numpy as np

from motss import validate_bounds
from motss.algorithms import run_bpp
from motss.analysis import competitive_ratio, z_closed_form
from motss.offline import pareto_maximal
from motss.scalarize import BUILTINS, evaluate

b = validate_bounds((1, 1), (9, 4))
worst, amean, gmean, best = BUILTINS

# A short sequence that climbs, then drops back.
seq = b.sequence([(1.5, 1.2), (2.0, 1.8), (3.5, 2.5), (8.0, 3.9), (1.0, 1.0)])

for t, p in enumerate(seq, 1):
    down = evaluate(gmean, np.array(b.M) / np.array(p))
    up = evaluate(gmean, np.array(p) / np.array(b.m))
    print(f"t={t}  p={tuple(p)}  f(M/p)={down:.3f}  f(p/m)={up:.3f}  accept={down <= up}")

out = run_bpp(gmean, seq)
front = pareto_maximal(seq)
report = competitive_ratio(gmean, out, front)
print("decision:", out.decision, "returned:", tuple(out.returned))
print("offline maximal prices:", [tuple(p) for p in front])
print(f"ratio on this run {report.value:.4f}, guarantee {z_closed_form(gmean, b).value:.4f}")

# Different scalarizations stop at different times on the same input.
for f in BUILTINS:
    o = run_bpp(f, seq)
    print(f"{f.label:>6}: {o.decision}")
