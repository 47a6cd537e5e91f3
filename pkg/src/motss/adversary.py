"""Adversary constructions and an exhaustive minimax oracle.

Two tools live here:

* the lower-bound game: reveal a balance-surface point; if the player
  accepts, reveal ``p_max``; if it rejects, stop;
* :func:`minimax_optimal_cr`, which solves the game between an arbitrary
  deterministic player and the adversary on a finite price grid by backward
  induction over all history prefixes.

In both, an accepted run is closed by the adversary revealing ``p_max``.
Every price is dominated by ``p_max``, so for monotone ``f`` this is the
adversary's best continuation and the realized ratio is ``f(M / p)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator

from .algorithms import Policy, RunOutcome, bpp_policy, run_generic
from .analysis import RatioReport, ZValue, competitive_ratio, on_surface, DEFAULT_TOL
from .core import Bounds, InputSequence, PriceVector
from .errors import BudgetExceeded, UnsupportedScalarization, WitnessOffSurface
from .offline import pareto_maximal
from .scalarize import Scalarization, evaluate

DEFAULT_BUDGET = 10**6


@dataclass(frozen=True)
class AdversaryGame:
    probe: PriceVector
    continuation_on_accept: PriceVector
    bounds: Bounds


@dataclass(frozen=True)
class MinimaxResult:
    """Best worst-case ratio over all deterministic players on a finite instance space.

    ``optimal_policy`` maps each history (tuple of revealed prices, the last
    one awaiting a decision) to True for accept.
    """

    value: float
    optimal_policy: dict
    instance_space_size: int

    def as_policy(self) -> Policy:
        table = self.optimal_policy

        def policy(history, p):
            return table[tuple(history) + (p,)]

        policy.__name__ = "minimax"
        return policy


def build_adversary(f: Scalarization, b: Bounds, z: ZValue, tol: float = DEFAULT_TOL) -> AdversaryGame:
    w = z.witness
    if not b.contains(w):
        raise WitnessOffSurface(f"witness {tuple(w)} is outside the bounds")
    if not on_surface(f, b, w, tol):
        raise WitnessOffSurface(f"witness {tuple(w)} does not balance f(M/x) and f(x/m)")
    return AdversaryGame(b.price(w), b.p_max, b)


def realize(game: AdversaryGame, policy: Policy) -> tuple[InputSequence, RunOutcome]:
    """Play the game and return the realized instance with the player's run on it."""
    b = game.bounds
    probe_only = InputSequence((game.probe,), b)
    first = run_generic(policy, probe_only)
    if not first.accepted:
        return probe_only, first
    seq = InputSequence((game.probe, game.continuation_on_accept), b)
    return seq, run_generic(policy, seq)


def play_adversary(game: AdversaryGame, policy: Policy, f: Scalarization) -> RatioReport:
    seq, outcome = realize(game, policy)
    return competitive_ratio(f, outcome, pareto_maximal(seq))


# -- finite instance spaces -------------------------------------------------

def _grid_points(b: Bounds) -> list[PriceVector]:
    if b.grid is None:
        raise UnsupportedScalarization("finite instance spaces need grid bounds")
    return [PriceVector(p, b) for p in product(*b.grid)]


def history_count(b: Bounds, T: int) -> int:
    g = len(_grid_points(b))
    return sum(g**t for t in range(1, T + 1))


def _check_budget(b: Bounds, T: int, budget: int) -> int:
    if T < 1:
        raise ValueError("horizon must be >= 1")
    count = history_count(b, T)
    if count > budget:
        raise BudgetExceeded(f"{count} histories exceed the budget of {budget}")
    return count


def iter_instances(b: Bounds, T: int, budget: int = DEFAULT_BUDGET) -> Iterator[InputSequence]:
    _check_budget(b, T, budget)
    pts = _grid_points(b)
    for t in range(1, T + 1):
        for prices in product(pts, repeat=t):
            yield InputSequence(prices, b)


def enumerate_instances(b: Bounds, T: int, budget: int = DEFAULT_BUDGET) -> list[InputSequence]:
    """All sequences of length 1..T over the grid, shorter first, each length in lexicographic order."""
    return list(iter_instances(b, T, budget))


def realized_ratio(f: Scalarization, policy: Policy, seq: InputSequence) -> float:
    """Ratio on ``seq`` once the adversary closes an accepted run with ``p_max``."""
    outcome = run_generic(policy, seq)
    ratio = competitive_ratio(f, outcome, pareto_maximal(seq)).value
    if outcome.accepted:
        closed = seq.prefix(outcome.accepted_at).extended(seq.bounds.M)
        ratio = max(ratio, competitive_ratio(f, outcome, pareto_maximal(closed)).value)
    return ratio


def worst_case_cr(f: Scalarization, b: Bounds, T: int, policy: Policy,
                  budget: int = DEFAULT_BUDGET) -> tuple[float, InputSequence]:
    """Worst realized ratio of ``policy`` over the enumerated space, with the worst instance."""
    worst, where = float("-inf"), None
    for seq in iter_instances(b, T, budget):
        r = realized_ratio(f, policy, seq)
        if r > worst:
            worst, where = r, seq
    return worst, where


def bpp_worst_case_cr(f: Scalarization, b: Bounds, T: int, budget: int = DEFAULT_BUDGET) -> float:
    return worst_case_cr(f, b, T, bpp_policy(f, b), budget)[0]


def minimax_optimal_cr(f: Scalarization, b: Bounds, T: int, budget: int = DEFAULT_BUDGET) -> MinimaxResult:
    """Backward induction over every history prefix of length <= T.

    At a history ending in ``p`` the player compares

    * accept: the adversary reveals ``p_max``, ratio ``f(M/p)``;
    * reject: the adversary stops (ratio ``max f(x/m)`` over revealed ``x``,
      since the return is ``p_min``) or, below the horizon, reveals the worst
      next price.

    Ties go to accept.
    """
    size = _check_budget(b, T, budget)
    f.check_arity(b.k)
    pts = _grid_points(b)
    m, M = b.m, b.M
    accept_val = {p: evaluate(f, tuple(hi / x for x, hi in zip(p, M))) for p in pts}
    stop_val = {p: evaluate(f, tuple(x / lo for x, lo in zip(p, m))) for p in pts}
    table: dict = {}

    def value(history: tuple, stop_so_far: float) -> float:
        p = history[-1]
        stop = max(stop_so_far, stop_val[p])
        reject = stop
        if len(history) < T:
            for q in pts:
                reject = max(reject, value(history + (q,), stop))
        acc = accept_val[p]
        table[history] = acc <= reject
        return min(acc, reject)

    best = max(value((q,), float("-inf")) for q in pts)
    return MinimaxResult(best, table, size)
