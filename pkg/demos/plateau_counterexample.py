"""
When the balanced price policy is not the reservation price policy
==================================================================

With a single objective and f the identity, f(M/p) <= f(p/m) is the same
test as p >= sqrt(Mm). A scalarization that is flat on part of its range
breaks this: g(x) = max(x, c sqrt(M/m)) makes the test pass as soon as
p >= sqrt(Mm) / c.
"""

import numpy as np

from motss import validate_bounds
from motss.algorithms import bpp_decide, reservation_price, rpp_decide
from motss.scalarize import identity, plateau_max

b = validate_bounds((1,), (100,))
print("reservation price:", reservation_price(b))

prices = np.geomspace(1, 100, 10_000)
ident = identity()
same = all(bpp_decide(ident, b, (p,)) == rpp_decide(b, p) for p in prices)
print("identity agrees with the reservation price everywhere:", same)

g = plateau_max(2, b)
differ = np.array([bpp_decide(g, b, (p,)) != rpp_decide(b, p) for p in prices])
print(f"plateau c=2 disagrees on [{prices[differ].min():.4f}, {prices[differ].max():.4f}]")
for p in (4.9, 5.0, 6.0, 9.99, 10.0):
    print(f"  p={p:5}: bpp {bpp_decide(g, b, (p,))!s:5}  rpp {rpp_decide(b, p)}")
