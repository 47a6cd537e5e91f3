"""Price bounds, price vectors, input sequences and the instance file format.

All objects here are immutable. Prices are plain floats and validation uses
exact comparisons: constructors check inputs, not computed quantities.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .errors import (
    InstanceFormatError,
    InvertedInterval,
    LengthMismatch,
    NonPositivePrice,
    PriceOutOfBounds,
)


def _floats(values: Iterable[float]) -> tuple[float, ...]:
    out = tuple(float(v) for v in values)
    for v in out:
        if not math.isfinite(v):
            raise NonPositivePrice(f"price {v!r} is not finite")
    return out


@dataclass(frozen=True)
class Bounds:
    """Per-objective price intervals ``[m_i, M_i]``.

    ``grid`` is ``None`` for real intervals. For a finite price set it holds,
    per objective, the sorted admissible prices (both endpoints included).
    """

    m: tuple[float, ...]
    M: tuple[float, ...]
    grid: tuple[tuple[float, ...], ...] | None = None

    def __post_init__(self):
        if len(self.m) != len(self.M):
            raise LengthMismatch(f"m has {len(self.m)} entries, M has {len(self.M)}")
        if len(self.m) == 0:
            raise LengthMismatch("bounds need at least one objective")
        for i, (lo, hi) in enumerate(zip(self.m, self.M)):
            if not (lo > 0 and hi > 0):
                raise NonPositivePrice(f"objective {i + 1}: bounds must be positive, got [{lo}, {hi}]")
            if lo > hi:
                raise InvertedInterval(f"objective {i + 1}: m={lo} > M={hi}")
        if self.grid is not None:
            if len(self.grid) != len(self.m):
                raise LengthMismatch("grid must list points for every objective")
            for i, pts in enumerate(self.grid):
                if any(not (self.m[i] <= p <= self.M[i]) for p in pts):
                    raise PriceOutOfBounds(f"objective {i + 1}: grid point outside [m, M]")
                if self.m[i] not in pts or self.M[i] not in pts:
                    raise PriceOutOfBounds(f"objective {i + 1}: grid must contain both endpoints")

    @property
    def k(self) -> int:
        return len(self.m)

    @property
    def phi(self) -> tuple[float, ...]:
        """Fluctuation ratios ``M_i / m_i``."""
        return tuple(hi / lo for lo, hi in zip(self.m, self.M))

    @property
    def interval_kind(self) -> str:
        return "real" if self.grid is None else "grid"

    @property
    def is_canonical(self) -> bool:
        phi = self.phi
        return all(phi[i] >= phi[i + 1] for i in range(len(phi) - 1))

    @property
    def p_min(self) -> PriceVector:
        return PriceVector(self.m, self)

    @property
    def p_max(self) -> PriceVector:
        return PriceVector(self.M, self)

    @property
    def geometric_mean_point(self) -> PriceVector:
        """The point ``(sqrt(m_1 M_1), ..., sqrt(m_k M_k))``, which always balances.

        Only meaningful for real intervals; on a finite grid it may not be a member.
        """
        return PriceVector(tuple(_geo_mid(lo, hi) for lo, hi in zip(self.m, self.M)))

    def contains(self, values: Sequence[float]) -> bool:
        if len(values) != self.k:
            return False
        if self.grid is None:
            return all(lo <= v <= hi for v, lo, hi in zip(values, self.m, self.M))
        return all(v in pts for v, pts in zip(values, self.grid))

    def price(self, values: Iterable[float]) -> PriceVector:
        return PriceVector(values, self)

    def sequence(self, rows: Iterable[Iterable[float]]) -> InputSequence:
        return InputSequence(tuple(self.price(r) for r in rows), self)

    def permuted(self, permutation: Sequence[int]) -> Bounds:
        grid = None if self.grid is None else tuple(self.grid[j] for j in permutation)
        return Bounds(
            tuple(self.m[j] for j in permutation),
            tuple(self.M[j] for j in permutation),
            grid,
        )


def _geo_mid(lo: float, hi: float) -> float:
    x = math.sqrt(lo * hi)
    return min(max(x, lo), hi)


class PriceVector(tuple):
    """A revealed k-dimensional price; a tuple of floats.

    When ``bounds`` is given the vector is checked to lie inside them.
    """

    def __new__(cls, values: Iterable[float], bounds: Bounds | None = None):
        vals = _floats(values)
        if any(v <= 0 for v in vals):
            raise NonPositivePrice(f"prices must be positive, got {vals}")
        if bounds is not None:
            if len(vals) != bounds.k:
                raise LengthMismatch(f"expected {bounds.k} prices, got {len(vals)}")
            if not bounds.contains(vals):
                raise PriceOutOfBounds(f"{vals} lies outside the bounds")
        return super().__new__(cls, vals)

    def __repr__(self):
        return f"PriceVector({tuple(self)!r})"

    def dominated_by(self, other: Sequence[float]) -> bool:
        """Componentwise ``self <= other``."""
        return all(a <= b for a, b in zip(self, other))


def validate_bounds(m: Sequence[float], M: Sequence[float], grid=None) -> Bounds:
    """Build a :class:`Bounds`, raising on non-positive, inverted or mismatched input.

    ``grid`` optionally gives an explicit finite price set per objective.
    """
    if len(m) != len(M):
        raise LengthMismatch(f"m has {len(m)} entries, M has {len(M)}")
    mm, MM = _floats(m), _floats(M)
    if grid is not None:
        grid = tuple(tuple(sorted(set(_floats(pts)))) for pts in grid)
    return Bounds(mm, MM, grid)


def geometric_grid(b: Bounds, points: Sequence[int] | int) -> Bounds:
    """Finite-grid version of ``b`` with ``points[i]`` log-spaced prices per objective.

    A single int applies to every objective. Three points give ``{m, sqrt(mM), M}``.
    """
    if isinstance(points, int):
        points = (points,) * b.k
    if len(points) != b.k:
        raise LengthMismatch(f"need {b.k} grid sizes, got {len(points)}")
    grid = []
    for lo, hi, g in zip(b.m, b.M, points):
        if g < 1 or (g == 1 and lo != hi):
            raise LengthMismatch("each grid needs at least both endpoints")
        if lo == hi:
            grid.append((lo,))
            continue
        pts = [lo * (hi / lo) ** (j / (g - 1)) for j in range(g)]
        pts[0], pts[-1] = lo, hi
        if g % 2 == 1:
            pts[g // 2] = _geo_mid(lo, hi)
        grid.append(tuple(min(max(p, lo), hi) for p in pts))
    return validate_bounds(b.m, b.M, grid)


@dataclass(frozen=True)
class CanonicalOrdering:
    """Permutation sorting objectives by fluctuation ratio, largest first.

    ``permutation[i]`` is the original index of the objective placed at position ``i``.
    """

    permutation: tuple[int, ...]
    applied: bool

    def apply(self, values: Sequence[float]) -> tuple[float, ...]:
        return tuple(values[j] for j in self.permutation)

    def invert(self, values: Sequence[float]) -> tuple[float, ...]:
        out = [0.0] * len(values)
        for pos, j in enumerate(self.permutation):
            out[j] = values[pos]
        return tuple(out)


def canonicalize(b: Bounds) -> tuple[Bounds, CanonicalOrdering]:
    """Reorder objectives so that ``phi_1 >= ... >= phi_k``; ties keep their order."""
    phi = b.phi
    perm = tuple(sorted(range(b.k), key=lambda i: -phi[i]))
    identity = perm == tuple(range(b.k))
    ordering = CanonicalOrdering(perm, applied=not identity)
    return (b if identity else b.permuted(perm)), ordering


@dataclass(frozen=True)
class InputSequence:
    """An ordered list of price vectors under common bounds. May be empty."""

    prices: tuple[PriceVector, ...]
    bounds: Bounds = field(repr=False)

    def __post_init__(self):
        for p in self.prices:
            if len(p) != self.bounds.k or not self.bounds.contains(p):
                raise PriceOutOfBounds(f"{tuple(p)} lies outside the sequence bounds")

    def __len__(self):
        return len(self.prices)

    def __iter__(self):
        return iter(self.prices)

    def __getitem__(self, i):
        return self.prices[i]

    @property
    def T(self) -> int:
        return len(self.prices)

    def extended(self, *prices: Sequence[float]) -> InputSequence:
        return InputSequence(self.prices + tuple(self.bounds.price(p) for p in prices), self.bounds)

    def prefix(self, t: int) -> InputSequence:
        return InputSequence(self.prices[:t], self.bounds)


# -- instance files ---------------------------------------------------------

def _parse_number(token: str, lineno: int) -> float:
    try:
        v = float(token)
    except ValueError:
        raise InstanceFormatError(f"line {lineno}: cannot parse {token!r}") from None
    if not math.isfinite(v):
        raise InstanceFormatError(f"line {lineno}: non-finite value {token!r}")
    return v


def _parse_row(text: str, lineno: int) -> list[float]:
    return [_parse_number(t.strip(), lineno) for t in text.split(",")]


def parse_instance(text: str) -> InputSequence:
    """Parse the text instance format.

    The first non-blank line is ``bounds m_1,...,m_k M_1,...,M_k``; each further
    line holds the k comma-separated prices of one time step.
    """
    lines = [(n, ln.strip()) for n, ln in enumerate(text.splitlines(), 1) if ln.strip()]
    if not lines:
        raise InstanceFormatError("empty instance")
    lineno, header = lines[0]
    parts = header.split()
    if len(parts) != 3 or parts[0] != "bounds":
        raise InstanceFormatError(f"line {lineno}: expected 'bounds <m...> <M...>'")
    m, M = _parse_row(parts[1], lineno), _parse_row(parts[2], lineno)
    b = validate_bounds(m, M)
    rows = []
    for n, ln in lines[1:]:
        row = _parse_row(ln, n)
        if len(row) != b.k:
            raise InstanceFormatError(f"line {n}: expected {b.k} prices, got {len(row)}")
        try:
            rows.append(b.price(row))
        except PriceOutOfBounds as exc:
            raise InstanceFormatError(f"line {n}: {exc}") from None
    return InputSequence(tuple(rows), b)


def read_instance(path: str | Path) -> InputSequence:
    return parse_instance(Path(path).read_text())


def format_instance(seq: InputSequence) -> str:
    b = seq.bounds
    out = ["bounds " + ",".join(map(repr, b.m)) + " " + ",".join(map(repr, b.M))]
    out += [",".join(map(repr, p)) for p in seq]
    return "\n".join(out) + "\n"
