"""Online players: the balanced price policy, the reservation price policy and baselines.

A policy is any callable ``policy(history, p) -> bool`` that sees the prices
rejected so far and the current price, and returns True to accept.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

from .core import Bounds, InputSequence, PriceVector
from .errors import ArityMismatch
from .scalarize import Scalarization, evaluate

Policy = Callable[[tuple, PriceVector], bool]


@dataclass(frozen=True)
class RunOutcome:
    """Decision trace of one run.

    ``accepted_at`` is the 1-based acceptance time, or None when every price
    was rejected (the return is then ``p_min``). ``trace`` holds the test
    result of each step seen, ending at the accepted step.
    """

    accepted_at: int | None
    returned: PriceVector
    trace: tuple[bool, ...]

    @property
    def accepted(self) -> bool:
        return self.accepted_at is not None

    @property
    def decision(self) -> str:
        return "RejectedAll" if self.accepted_at is None else f"AcceptedAt({self.accepted_at})"


def _ratios_up(b: Bounds, p: Sequence[float]) -> tuple[float, ...]:
    return tuple(x / lo for x, lo in zip(p, b.m))


def _ratios_down(b: Bounds, p: Sequence[float]) -> tuple[float, ...]:
    return tuple(hi / x for x, hi in zip(p, b.M))


def bpp_decide(f: Scalarization, b: Bounds, p: Sequence[float]) -> bool:
    """Accept ``p`` iff ``f(M/p) <= f(p/m)``; equality accepts."""
    f.check_arity(b.k)
    if len(p) != b.k:
        raise ArityMismatch(f"price has {len(p)} components, bounds have {b.k}")
    return evaluate(f, _ratios_down(b, p)) <= evaluate(f, _ratios_up(b, p))


def reservation_price(b: Bounds) -> float:
    if b.k != 1:
        raise ArityMismatch("the reservation price policy is single-objective")
    return math.sqrt(b.M[0] * b.m[0])


def rpp_decide(b: Bounds, p) -> bool:
    """Accept iff ``p >= sqrt(M m)``."""
    p = p[0] if isinstance(p, (tuple, list)) else p
    return p >= reservation_price(b)


def bpp_policy(f: Scalarization, b: Bounds) -> Policy:
    f.check_arity(b.k)

    def policy(history, p):
        return bpp_decide(f, b, p)

    policy.__name__ = "bpp"
    return policy


def rpp_policy(b: Bounds) -> Policy:
    reservation_price(b)

    def policy(history, p):
        return rpp_decide(b, p)

    policy.__name__ = "rpp"
    return policy


def accept_first(history, p) -> bool:
    return True


def reject_all(history, p) -> bool:
    return False


def run_generic(policy: Policy, seq: InputSequence) -> RunOutcome:
    """Run an online policy; it accepts at the first step it says yes to."""
    trace = []
    history: tuple = ()
    for t, p in enumerate(seq, 1):
        ok = bool(policy(history, p))
        trace.append(ok)
        if ok:
            return RunOutcome(t, p, tuple(trace))
        history = history + (p,)
    return RunOutcome(None, seq.bounds.p_min, tuple(trace))


def run_bpp(f: Scalarization, seq: InputSequence) -> RunOutcome:
    return run_generic(bpp_policy(f, seq.bounds), seq)


def run_rpp(seq: InputSequence) -> RunOutcome:
    return run_generic(rpp_policy(seq.bounds), seq)


def make_policy(name: str, f: Scalarization | None, b: Bounds) -> Policy:
    """Look up a policy by its CLI name."""
    if name == "bpp":
        return bpp_policy(f, b)
    if name == "rpp":
        return rpp_policy(b)
    if name == "accept-first":
        return accept_first
    if name == "reject-all":
        return reject_all
    raise ValueError(f"unknown policy {name!r}")


POLICY_NAMES = ("bpp", "rpp", "accept-first", "reject-all")
