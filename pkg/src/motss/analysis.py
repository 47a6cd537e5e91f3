"""Competitive ratios: per-instance values, closed-form optima and a numeric oracle.

The optimum for a continuous monotone ``f`` over real intervals is the
supremum of ``f(M/x)`` over the balance surface ``{x : f(M/x) = f(x/m)}``.
:func:`z_closed_form` gives the known formulas; :func:`z_numeric` finds the
supremum by scanning fibers of the surface, which makes it usable for any
continuous ``f`` (for example the arithmetic mean with three or more objectives).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

import numpy as np

from .algorithms import RunOutcome
from .core import Bounds, PriceVector
from .errors import (
    ArityMismatch,
    DiscontinuousScalarization,
    EmptyFront,
    NoSurfacePointFound,
    NotCanonical,
    ToleranceNotPositive,
    UnsupportedArity,
    UnsupportedScalarization,
)
from .offline import ParetoFront
from .scalarize import Kind, Scalarization, evaluate

DEFAULT_TOL = 1e-9
_CHUNK = 1 << 16


@dataclass(frozen=True)
class RatioReport:
    value: float
    witness: PriceVector
    algorithm_return: PriceVector

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "witness": list(self.witness),
            "algorithm_return": list(self.algorithm_return),
        }


@dataclass(frozen=True)
class ZValue:
    """An optimal competitive ratio with a balance-surface witness.

    ``method`` is ``"closed"`` (``theorem`` names the formula used),
    ``"numeric"`` (grid ``resolution`` and ``tolerance`` recorded) or
    ``"discrete"`` for finite price grids.
    """

    value: float
    witness: PriceVector
    method: str
    theorem: str | None = None
    resolution: int | None = None
    tolerance: float | None = None
    auxiliary: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        d = {"value": self.value, "witness": list(self.witness), "method": self.method}
        if self.theorem is not None:
            d["theorem"] = self.theorem
        if self.resolution is not None:
            d["resolution"] = self.resolution
        if self.tolerance is not None:
            d["tolerance"] = self.tolerance
        d["auxiliary"] = dict(self.auxiliary)
        return d


# -- per-instance ratio -----------------------------------------------------

def competitive_ratio(f: Scalarization, outcome: RunOutcome, front: ParetoFront) -> RatioReport:
    """Max over front members ``x`` of ``f(x / returned)``; first member wins ties."""
    if len(front.members) == 0:
        raise EmptyFront("the Pareto front is empty")
    alg = outcome.returned
    f.check_arity(len(alg))
    best, witness = -math.inf, None
    for x in front.members:
        if len(x) != len(alg):
            raise ArityMismatch("front member and return differ in length")
        v = evaluate(f, tuple(xi / ai for xi, ai in zip(x, alg)))
        if v > best:
            best, witness = v, x
    return RatioReport(best, witness, alg)


def bpp_ratio_batch(f: Scalarization, b: Bounds, prices: np.ndarray, lengths: np.ndarray):
    """Vectorized balanced-price-policy runs over many instances.

    ``prices`` has shape ``(n, T, k)``; instance ``i`` uses its first
    ``lengths[i]`` rows. Returns ``(ratios, accepted_at)`` where ``accepted_at``
    is 1-based and 0 for rejection. The ratio is taken over all revealed
    prices, which equals the front maximum because ``f`` is monotone.
    """
    prices = np.asarray(prices, dtype=float)
    n, T, k = prices.shape
    f.check_arity(k)
    m, M = np.asarray(b.m), np.asarray(b.M)
    valid = np.arange(T)[None, :] < np.asarray(lengths)[:, None]
    accept = (evaluate(f, M / prices) <= evaluate(f, prices / m)) & valid
    hit = accept.any(axis=1)
    t_acc = accept.argmax(axis=1)
    returned = np.where(hit[:, None], prices[np.arange(n), t_acc], m)
    vals = evaluate(f, prices / returned[:, None, :])
    ratios = np.where(valid, vals, -np.inf).max(axis=1)
    return ratios, np.where(hit, t_acc + 1, 0)


# -- balance surface --------------------------------------------------------

def balance_residual(f: Scalarization, b: Bounds, x: Sequence[float]) -> float:
    """``f(M/x) - f(x/m)``; zero exactly on the balance surface."""
    f.check_arity(b.k)
    if len(x) != b.k:
        raise ArityMismatch(f"point has {len(x)} components, bounds have {b.k}")
    down = evaluate(f, tuple(hi / xi for xi, hi in zip(x, b.M)))
    up = evaluate(f, tuple(xi / lo for xi, lo in zip(x, b.m)))
    return down - up


def on_surface(f: Scalarization, b: Bounds, x: Sequence[float], tol: float = DEFAULT_TOL) -> bool:
    up = evaluate(f, tuple(xi / lo for xi, lo in zip(x, b.m)))
    return abs(balance_residual(f, b, x)) <= tol * max(1.0, abs(up))


def _residuals(f, m, M, x):
    down = evaluate(f, M / x)
    up = evaluate(f, x / m)
    return down - up, up


def _solve_fibers(f: Scalarization, b: Bounds, tails: np.ndarray, tol: float) -> np.ndarray:
    """Bisect ``x_1`` on each row of ``tails``; NaN where the fiber misses the surface.

    The residual is nonincreasing in ``x_1`` for monotone ``f``, so a root exists
    iff it is >= 0 at ``m_1`` and <= 0 at ``M_1``.
    """
    m, M = np.asarray(b.m), np.asarray(b.M)
    n = tails.shape[0]

    def h(x1, rows):
        x = np.column_stack([x1, tails[rows]])
        r, up = _residuals(f, m, M, x)
        return r, np.abs(r) <= tol * np.maximum(1.0, np.abs(up))

    all_rows = np.arange(n)
    lo = np.full(n, m[0])
    hi = np.full(n, M[0])
    h_lo, ok_lo = h(lo, all_rows)
    h_hi, ok_hi = h(hi, all_rows)
    x1 = np.full(n, np.nan)
    x1[ok_hi] = M[0]
    x1[ok_lo] = m[0]
    rows = np.flatnonzero(~ok_lo & ~ok_hi & (h_lo > 0) & (h_hi < 0))
    if rows.size == 0:
        return x1
    lo, hi = lo[rows], hi[rows]
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        r, _ok = h(mid, rows)
        lo = np.where(r >= 0, mid, lo)
        hi = np.where(r <= 0, mid, hi)
        if np.all(np.nextafter(lo, np.inf) >= hi):
            break
    mid = 0.5 * (lo + hi)
    _r, ok = h(mid, rows)
    x1[rows[ok]] = mid[ok]
    return x1


def solve_fiber(f: Scalarization, b: Bounds, tail: Sequence[float], tol: float = DEFAULT_TOL) -> float | None:
    """Find ``x_1`` with ``(x_1, *tail)`` on the balance surface, or None.

    ``tol`` is relative to ``max(1, f(x/m))``.
    """
    if not tol > 0:
        raise ToleranceNotPositive(f"tolerance must be positive, got {tol}")
    f.check_arity(b.k)
    if len(tail) != b.k - 1:
        raise ArityMismatch(f"tail needs {b.k - 1} components, got {len(tail)}")
    x1 = _solve_fibers(f, b, np.asarray(tail, dtype=float).reshape(1, b.k - 1), tol)[0]
    return None if np.isnan(x1) else float(x1)


# -- closed forms -----------------------------------------------------------

def _clip(b: Bounds, x: Sequence[float]) -> PriceVector:
    return PriceVector(min(max(v, lo), hi) for v, lo, hi in zip(x, b.m, b.M))


def arithmetic_mean_endpoints(b: Bounds) -> tuple[float, float]:
    """The two surface coordinates ``L_1`` (paired with ``M_2``) and ``R_1`` (paired with ``m_2``)."""
    m1, M1 = b.m[0], b.M[0]
    a = 0.5 * m1 * (b.phi[1] - 1.0)
    root = math.sqrt(a * a + m1 * M1)
    return root - a, root + a


def z_closed_form(f: Scalarization, b: Bounds) -> ZValue:
    """Optimal competitive ratio from the known formulas.

    ``b`` must already be canonical (fluctuation ratios in decreasing order).
    The arithmetic mean has a formula only for one or two objectives.
    """
    if b.grid is not None:
        raise UnsupportedScalarization("closed forms hold for real intervals only; use z_numeric")
    if not b.is_canonical:
        raise NotCanonical("closed forms need fluctuation ratios in decreasing order; call canonicalize first")
    f.check_arity(b.k)
    k, phi = b.k, b.phi
    gm = b.geometric_mean_point
    if f.kind is Kind.IDENTITY or (k == 1 and f.kind in (Kind.WORST, Kind.AMEAN)):
        return ZValue(math.sqrt(phi[0]), gm, "closed", "single-objective")
    if f.kind is Kind.WORST:
        if math.sqrt(phi[0]) >= phi[1]:
            return ZValue(math.sqrt(phi[0]), gm, "closed", "worst-component/case-1")
        w = list(gm)
        w[0] = b.M[0] * b.m[1] / b.M[1]
        w[1] = b.M[1]
        return ZValue(phi[1], _clip(b, w), "closed", "worst-component/case-2")
    if f.kind is Kind.AMEAN:
        if k != 2:
            raise UnsupportedArity("no closed form for the arithmetic mean with k >= 3; use z_numeric")
        half = 0.5 * (phi[1] - 1.0)
        value = 0.5 * (math.sqrt(half * half + phi[0]) + 0.5 * (phi[1] + 1.0))
        left, right = arithmetic_mean_endpoints(b)
        return ZValue(value, _clip(b, (left, b.M[1])), "closed", "arithmetic-mean/k=2",
                      auxiliary={"L1": left, "R1": right})
    if f.kind is Kind.GMEAN:
        value = math.exp(sum(math.log(p) for p in phi) / (2 * k))
        return ZValue(value, gm, "closed", "geometric-mean")
    if f.kind is Kind.BEST:
        return ZValue(math.sqrt(phi[-1]), gm, "closed", "best-component")
    raise UnsupportedScalarization(f"no closed form for {f.label}; use z_numeric")


# -- numeric oracle ---------------------------------------------------------

def _pick_best(values: np.ndarray, points: np.ndarray):
    """Index of the largest value; ties go to the lexicographically smallest point."""
    if not np.any(np.isfinite(values)):
        return None
    top = np.nanmax(values)
    idx = np.flatnonzero(values == top)
    if idx.size > 1:
        cand = points[idx]
        idx = idx[np.lexsort(cand.T[::-1])]
    return int(idx[0])


def _tails_from_lattice(b: Bounds, u: np.ndarray, n: int) -> np.ndarray:
    """Map lattice coordinates in ``[0, n-1]`` to log-spaced tail prices."""
    lo, hi = np.asarray(b.m[1:]), np.asarray(b.M[1:])
    t = np.exp(np.log(lo) + (np.log(hi) - np.log(lo)) * u / (n - 1))
    t = np.clip(t, lo, hi)
    t = np.where(u <= 0, lo, t)
    return np.where(u >= n - 1, hi, t)


def _scan(f, b, tails, tol):
    """Solve every fiber and return ``(values, points)`` with NaN rows for misses."""
    M = np.asarray(b.M)
    vals, pts = [], []
    for start in range(0, tails.shape[0], _CHUNK):
        chunk = tails[start:start + _CHUNK]
        x1 = _solve_fibers(f, b, chunk, tol)
        x = np.column_stack([x1, chunk])
        v = np.full(x1.shape, np.nan)
        hit = ~np.isnan(x1)
        if hit.any():
            v[hit] = evaluate(f, M / x[hit])
        vals.append(v)
        pts.append(x)
    return np.concatenate(vals), np.concatenate(pts)


def z_numeric(f: Scalarization, b: Bounds, grid_resolution: int = 512, tol: float = DEFAULT_TOL) -> ZValue:
    """Approximate the supremum of ``f(M/x)`` over the balance surface.

    Scans a log-spaced lattice over ``(x_2, ..., x_k)`` (plus the geometric-mean
    point, which always balances), solves each fiber for ``x_1`` by bisection,
    then refines once around the best lattice cell at half the spacing. Finite
    grid bounds are handed to :func:`z_discrete`.
    """
    if not f.continuous:
        raise DiscontinuousScalarization(f"{f.label} is not declared continuous")
    if b.grid is not None:
        return z_discrete(f, b)
    if grid_resolution < 2:
        raise ValueError("grid_resolution must be >= 2")
    if not tol > 0:
        raise ToleranceNotPositive(f"tolerance must be positive, got {tol}")
    f.check_arity(b.k)
    n, d = grid_resolution, b.k - 1
    if d == 0:
        u = np.zeros((1, 0))
    else:
        u = np.indices((n,) * d).reshape(d, -1).T.astype(float)
    u_mid = np.full((1, d), 0.5 * (n - 1))
    tails = np.vstack([_tails_from_lattice(b, u, n), np.asarray(b.geometric_mean_point[1:]).reshape(1, d)])
    lattice = np.vstack([u, u_mid])

    values, points = _scan(f, b, tails, tol)
    i = _pick_best(values, points)
    if i is None:
        raise NoSurfacePointFound("no fiber reached the balance surface; tolerance may be too small")

    offsets = np.array(list(product((-1.0, -0.5, 0.0, 0.5, 1.0), repeat=d)), dtype=float)
    offsets = offsets.reshape(len(offsets), d)
    u_ref = np.unique(np.clip(lattice[i] + offsets, 0, n - 1), axis=0)
    r_vals, r_pts = _scan(f, b, _tails_from_lattice(b, u_ref, n), tol)
    values = np.concatenate([values[i:i + 1], r_vals])
    points = np.concatenate([points[i:i + 1], r_pts])
    j = _pick_best(values, points)

    witness = PriceVector(points[j])
    return ZValue(float(values[j]), witness, "numeric", resolution=n, tolerance=tol)


def z_discrete(f: Scalarization, b: Bounds, tol: float = 0.0) -> ZValue:
    """Max of ``f(M/x)`` over grid points whose residual is zero (``|h| <= tol``)."""
    if b.grid is None:
        raise UnsupportedScalarization("z_discrete needs finite grid bounds")
    f.check_arity(b.k)
    pts = np.array(list(product(*b.grid)), dtype=float)
    m, M = np.asarray(b.m), np.asarray(b.M)
    r, up = _residuals(f, m, M, pts)
    r, up = np.atleast_1d(r), np.atleast_1d(up)
    hit = np.abs(r) <= tol * np.maximum(1.0, np.abs(up))
    if not hit.any():
        raise NoSurfacePointFound("no grid point lies on the balance surface")
    vals = np.where(hit, np.atleast_1d(evaluate(f, M / pts)), np.nan)
    i = _pick_best(vals, pts)
    return ZValue(float(vals[i]), PriceVector(pts[i]), "discrete", tolerance=tol)
