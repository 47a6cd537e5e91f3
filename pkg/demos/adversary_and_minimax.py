"""
Why no player can beat z
========================

The adversary reveals one point on the balance surface. Accepting it is
punished by revealing p_max next; rejecting it ends the sequence, so the
player is left with p_min. Both branches cost exactly z.

On a small price grid we can also solve the whole game by backward
induction and check that the balanced price policy is already optimal.
"""

from motss import validate_bounds
from motss.adversary import build_adversary, bpp_worst_case_cr, minimax_optimal_cr, play_adversary
from motss.algorithms import accept_first, bpp_policy, reject_all
from motss.analysis import z_closed_form
from motss.core import geometric_grid
from motss.scalarize import BUILTINS

b = validate_bounds((1, 1), (9, 4))
for f in BUILTINS:
    z = z_closed_form(f, b)
    game = build_adversary(f, b, z)
    scores = {name: play_adversary(game, pol, f).value
              for name, pol in [("accept", accept_first), ("reject", reject_all), ("bpp", bpp_policy(f, b))]}
    print(f"{f.label:>6}: z={z.value:.6f} probe={tuple(round(x, 4) for x in game.probe)} "
          + " ".join(f"{k}={v:.6f}" for k, v in scores.items()))

# Exhaustive game on the grid {m, sqrt(mM), M} per coordinate.
worst, _, gmean, _ = BUILTINS
g = geometric_grid(b, 3)
for f in (worst, gmean):
    for T in (1, 2, 3):
        res = minimax_optimal_cr(f, g, T)
        print(f"{f.label:>6} T={T}: {res.instance_space_size:4d} histories, "
              f"minimax {res.value:.6f}, bpp {bpp_worst_case_cr(f, g, T):.6f}")
