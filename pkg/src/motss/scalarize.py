"""Monotone scalarizations ``f: R^k -> R`` of per-objective ratios.

Every scalarization evaluates along the last axis, so it accepts a single
vector or a stacked array of shape ``(..., k)``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core import Bounds
from .errors import ArityMismatch, NonPositiveInput, SearchError


class Kind(enum.Enum):
    WORST = "max"
    AMEAN = "amean"
    GMEAN = "gmean"
    BEST = "min"
    PLATEAU = "plateau"
    IDENTITY = "identity"
    CUSTOM = "custom"


@dataclass(frozen=True)
class Scalarization:
    """A monotone function of k ratios.

    ``k`` is ``None`` for the built-ins that accept any arity.
    """

    kind: Kind
    k: int | None = None
    continuous: bool = True
    c: float | None = None
    plateau_bounds: Bounds | None = None
    func: Callable | None = None
    name: str | None = None

    def __post_init__(self):
        if self.kind is Kind.PLATEAU:
            b = self.plateau_bounds
            if b is None or b.k != 1:
                raise ArityMismatch("plateau-max needs single-objective bounds")
            if self.c is None or not (1 < self.c < math.sqrt(b.phi[0])):
                raise SearchError(f"plateau-max needs 1 < c < sqrt(M/m), got c={self.c}")

    @property
    def label(self) -> str:
        if self.name:
            return self.name
        if self.kind is Kind.PLATEAU:
            return f"plateau:c={self.c!r}"
        return self.kind.value

    @property
    def plateau_level(self) -> float:
        b = self.plateau_bounds
        return self.c * math.sqrt(b.M[0] / b.m[0])

    def check_arity(self, k: int) -> None:
        if self.k is not None and self.k != k:
            raise ArityMismatch(f"{self.label} takes {self.k} arguments, got {k}")

    def __call__(self, v):
        return evaluate(self, v)


def worst_component(k: int | None = None) -> Scalarization:
    return Scalarization(Kind.WORST, k)


def arithmetic_mean(k: int | None = None) -> Scalarization:
    return Scalarization(Kind.AMEAN, k)


def geometric_mean(k: int | None = None) -> Scalarization:
    return Scalarization(Kind.GMEAN, k)


def best_component(k: int | None = None) -> Scalarization:
    return Scalarization(Kind.BEST, k)


def identity() -> Scalarization:
    return Scalarization(Kind.IDENTITY, 1)


def plateau_max(c: float, bounds: Bounds) -> Scalarization:
    """``g(x) = max(x, c * sqrt(M/m))``: flat up to ``c*sqrt(M/m)``, then the identity."""
    return Scalarization(Kind.PLATEAU, 1, c=float(c), plateau_bounds=bounds)


def custom(func: Callable, k: int | None = None, continuous: bool = False, name: str | None = None) -> Scalarization:
    """Wrap a user function taking one length-k vector and returning a real."""
    return Scalarization(Kind.CUSTOM, k, continuous=continuous, func=func, name=name or "custom")


BUILTINS = (worst_component(), arithmetic_mean(), geometric_mean(), best_component())


def evaluate(f: Scalarization, v):
    """Evaluate ``f`` on ``v`` (shape ``(k,)`` or ``(..., k)``).

    Returns a float for a single vector and an array otherwise.
    """
    a = np.asarray(v, dtype=float)
    if a.ndim == 0:
        raise ArityMismatch("expected a vector")
    f.check_arity(a.shape[-1])
    kind = f.kind
    if kind in (Kind.GMEAN, Kind.PLATEAU) and np.any(a <= 0):
        raise NonPositiveInput(f"{f.label} needs positive inputs")
    if kind is Kind.WORST:
        out = a.max(axis=-1)
    elif kind is Kind.BEST:
        out = a.min(axis=-1)
    elif kind is Kind.AMEAN:
        # rounding can push a mean of equal entries just past them
        out = np.clip(a.sum(axis=-1) / a.shape[-1], a.min(axis=-1), a.max(axis=-1))
    elif kind is Kind.GMEAN:
        out = np.clip(np.exp(np.log(a).sum(axis=-1) / a.shape[-1]), a.min(axis=-1), a.max(axis=-1))
    elif kind is Kind.IDENTITY:
        out = a[..., 0]
    elif kind is Kind.PLATEAU:
        out = np.maximum(a[..., 0], f.plateau_level)
    else:
        if a.ndim == 1:
            return float(f.func(a))
        out = np.apply_along_axis(lambda row: float(f.func(row)), -1, a)
    return float(out) if a.ndim == 1 else out


def check_monotone(f: Scalarization, sample_count: int, seed: int, k: int | None = None) -> bool:
    """Sample comparable pairs ``x <= y`` and report whether ``f(x) <= f(y)`` always held."""
    if sample_count < 1:
        raise ValueError("sample_count must be >= 1")
    k = f.k or k or 3
    rng = np.random.default_rng(seed)
    if f.kind is Kind.PLATEAU:
        hi = math.log(f.plateau_bounds.phi[0])
        x = np.exp(rng.uniform(0.0, hi, size=(sample_count, 1)))
    else:
        x = np.exp(rng.uniform(-3.0, 3.0, size=(sample_count, k)))
    # raise a random subset of coordinates; some pairs stay equal
    bump = rng.uniform(0.0, 1.0, size=x.shape) * (rng.random(x.shape) < 0.5)
    y = x * np.exp(bump)
    return bool(np.all(evaluate(f, x) <= evaluate(f, y)))


def parse_scalarization(text: str, bounds: Bounds | None = None) -> Scalarization:
    """Parse the CLI spelling ``max|amean|gmean|min|identity|plateau:c=<real>``."""
    text = text.strip()
    simple = {
        "max": worst_component,
        "amean": arithmetic_mean,
        "gmean": geometric_mean,
        "min": best_component,
    }
    if text in simple:
        return simple[text]()
    if text == "identity":
        return identity()
    if text.startswith("plateau:"):
        key, _, val = text[len("plateau:"):].partition("=")
        if key != "c" or not val:
            raise SearchError(f"bad plateau argument {text!r}; expected plateau:c=<real>")
        if bounds is None or bounds.k != 1:
            raise ArityMismatch("plateau-max needs single-objective bounds")
        return plateau_max(float(val), bounds)
    raise SearchError(f"unknown scalarization {text!r}")
