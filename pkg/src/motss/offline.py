"""Offline optimum: the Pareto-maximal revealed prices."""
from __future__ import annotations

from dataclasses import dataclass

from .core import InputSequence, PriceVector


@dataclass(frozen=True)
class ParetoFront:
    """Maximal prices in lexicographic order, with the 1-based times each was revealed."""

    members: tuple[PriceVector, ...]
    source_indices: tuple[tuple[int, ...], ...]

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)


def dominates(a, b) -> bool:
    """True when ``b <= a`` componentwise and ``a != b``."""
    return a != b and all(x >= y for x, y in zip(a, b))


def pareto_maximal(seq: InputSequence) -> ParetoFront:
    """Maximal elements of the revealed prices under the componentwise order.

    Equal prices collapse into one member that keeps every source index. An
    empty sequence yields the front ``{p_min}``.
    """
    if len(seq) == 0:
        return ParetoFront((seq.bounds.p_min,), ((),))
    sources: dict[PriceVector, list[int]] = {}
    for t, p in enumerate(seq, 1):
        sources.setdefault(p, []).append(t)
    # a strict dominator is lexicographically larger, so one pass in
    # descending order only has to check the members kept so far
    kept: list[PriceVector] = []
    for p in sorted(sources, reverse=True):
        if not any(all(q_i >= p_i for q_i, p_i in zip(q, p)) for q in kept):
            kept.append(p)
    kept.reverse()
    return ParetoFront(tuple(kept), tuple(tuple(sources[p]) for p in kept))
