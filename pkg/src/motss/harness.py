"""Reproducible experiments: random instances, one runner per CLI mode, JSON/CSV output."""
from __future__ import annotations

import csv
import io
import json
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from . import __version__
from .adversary import (
    DEFAULT_BUDGET,
    build_adversary,
    bpp_worst_case_cr,
    minimax_optimal_cr,
    realize,
)
from .algorithms import make_policy, run_generic
from .analysis import (
    DEFAULT_TOL,
    bpp_ratio_batch,
    competitive_ratio,
    z_closed_form,
    z_numeric,
)
from .core import Bounds, InputSequence, canonicalize, geometric_grid, read_instance, validate_bounds
from .errors import SearchError
from .offline import pareto_maximal
from .scalarize import parse_scalarization

MODES = ("simulate", "front", "ratio", "zvalue", "adversary", "verify", "sweep")


def price_batch(b: Bounds, T: int, count: int, rng: np.random.Generator) -> np.ndarray:
    """``(count, T, k)`` prices, log-uniform per coordinate (uniform over grid points for grids)."""
    if b.grid is not None:
        cols = [np.asarray(pts)[rng.integers(0, len(pts), size=(count, T))] for pts in b.grid]
        return np.stack(cols, axis=-1)
    lo, hi = np.log(b.m), np.log(b.M)
    x = np.exp(rng.uniform(lo, hi, size=(count, T, b.k)))
    return np.clip(x, b.m, b.M)


def generate_random_instances(b: Bounds, T: int, count: int, seed: int) -> list[InputSequence]:
    if count < 1 or T < 1:
        raise ValueError("count and T must be >= 1")
    prices = price_batch(b, T, count, np.random.default_rng(seed))
    return [b.sequence(inst) for inst in prices.tolist()]


@dataclass
class ExperimentConfig:
    mode: str
    f: str | None = None
    bounds: tuple[tuple[float, ...], tuple[float, ...]] | None = None
    seed: int = 0
    out: str | None = None
    instance: str | None = None
    policy: str = "bpp"
    method: str = "closed"
    resolution: int = 512
    tol: float = DEFAULT_TOL
    budget: int = DEFAULT_BUDGET
    horizon: int = 2
    grid: tuple[int, ...] | None = None
    count: int = 1000
    phis: tuple[float, ...] = (1.5, 2.0, 4.0, 9.0, 25.0, 100.0)
    canonicalize: bool = False
    extra: dict = field(default_factory=dict)

    def validate(self) -> None:
        if self.mode not in MODES:
            raise SearchError(f"unknown mode {self.mode!r}")
        if self.mode in ("simulate", "front", "ratio") and not self.instance:
            raise SearchError(f"{self.mode} needs an instance file")
        if self.mode in ("zvalue", "adversary", "verify") and self.bounds is None:
            raise SearchError(f"{self.mode} needs bounds")
        if self.mode != "front" and not self.f:
            raise SearchError(f"{self.mode} needs a scalarization")
        if self.method not in ("closed", "numeric"):
            raise SearchError(f"unknown method {self.method!r}")


# -- serialization ----------------------------------------------------------

def _plain(obj):
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    return obj


def dumps(obj) -> str:
    """Deterministic JSON; floats use the shortest repr that round-trips exactly."""
    return json.dumps(_plain(obj), sort_keys=True, indent=2, allow_nan=False) + "\n"


def _csv(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([repr(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()


# -- modes ------------------------------------------------------------------

def _bounds(cfg: ExperimentConfig) -> Bounds:
    m, M = cfg.bounds
    return validate_bounds(m, M)


def _zvalue(f, b: Bounds, cfg: ExperimentConfig):
    if cfg.method == "numeric":
        return z_numeric(f, b, cfg.resolution, cfg.tol)
    return z_closed_form(f, b)


def _simulate(cfg):
    seq = read_instance(cfg.instance)
    f = parse_scalarization(cfg.f, seq.bounds)
    outcome = run_generic(make_policy(cfg.policy, f, seq.bounds), seq)
    summary = {
        "mode": "simulate",
        "scalarization": f.label,
        "policy": cfg.policy,
        "T": len(seq),
        "decision": outcome.decision,
        "accepted_at": outcome.accepted_at,
        "returned": list(outcome.returned),
    }
    k = seq.bounds.k
    header = ["t"] + [f"p{i + 1}" for i in range(k)] + ["test", "accepted"]
    rows = [
        [t, *seq[t - 1], ok, outcome.accepted_at == t]
        for t, ok in enumerate(outcome.trace, 1)
    ]
    return summary, header, rows


def _front(cfg):
    seq = read_instance(cfg.instance)
    front = pareto_maximal(seq)
    k = seq.bounds.k
    summary = {
        "mode": "front",
        "T": len(seq),
        "members": [list(p) for p in front.members],
        "source_indices": [list(s) for s in front.source_indices],
    }
    header = [f"p{i + 1}" for i in range(k)] + ["source_indices"]
    rows = [[*p, " ".join(map(str, s))] for p, s in zip(front.members, front.source_indices)]
    return summary, header, rows


def _ratio(cfg):
    seq = read_instance(cfg.instance)
    f = parse_scalarization(cfg.f, seq.bounds)
    outcome = run_generic(make_policy(cfg.policy, f, seq.bounds), seq)
    report = competitive_ratio(f, outcome, pareto_maximal(seq))
    summary = {"mode": "ratio", "scalarization": f.label, "policy": cfg.policy,
               "decision": outcome.decision, **report.to_dict()}
    return summary, None, None


def _maybe_canonical(b: Bounds, cfg: ExperimentConfig):
    if not cfg.canonicalize:
        return b, None
    return canonicalize(b)


def _zvalue_mode(cfg):
    b, ordering = _maybe_canonical(_bounds(cfg), cfg)
    f = parse_scalarization(cfg.f, b)
    z = _zvalue(f, b, cfg)
    summary = {"mode": "zvalue", "scalarization": f.label, "m": list(b.m), "M": list(b.M), **z.to_dict()}
    if ordering is not None:
        summary["permutation"] = [j + 1 for j in ordering.permutation]
        summary["witness_original_order"] = list(ordering.invert(z.witness))
    return summary, None, None


def _adversary_mode(cfg):
    b, _ = _maybe_canonical(_bounds(cfg), cfg)
    f = parse_scalarization(cfg.f, b)
    z = _zvalue(f, b, cfg)
    game = build_adversary(f, b, z, cfg.tol)
    seq, outcome = realize(game, make_policy(cfg.policy, f, b))
    report = competitive_ratio(f, outcome, pareto_maximal(seq))
    summary = {
        "mode": "adversary",
        "scalarization": f.label,
        "policy": cfg.policy,
        "z": z.value,
        "probe": list(game.probe),
        "realized_instance": [list(p) for p in seq],
        "decision": outcome.decision,
        **report.to_dict(),
    }
    return summary, None, None


def _verify_mode(cfg):
    b = _bounds(cfg)
    grid = cfg.grid or (3,) * b.k
    gb = geometric_grid(b, grid)
    f = parse_scalarization(cfg.f, gb)
    result = minimax_optimal_cr(f, gb, cfg.horizon, cfg.budget)
    bpp = bpp_worst_case_cr(f, gb, cfg.horizon, cfg.budget)
    summary = {
        "mode": "verify",
        "scalarization": f.label,
        "grid": [list(p) for p in gb.grid],
        "horizon": cfg.horizon,
        "instance_space_size": result.instance_space_size,
        "minimax_value": result.value,
        "bpp_worst_case_cr": bpp,
        "bpp_is_optimal": abs(bpp - result.value) <= 1e-12,
    }
    return summary, None, None


def _sweep_mode(cfg):
    rng = np.random.default_rng(cfg.seed)
    f = parse_scalarization(cfg.f)
    phis = sorted(cfg.phis, reverse=True)
    header = ["phi1", "phi2", "z_closed", "z_numeric", "bpp_worst_random", "bpp_adversary"]
    rows = []
    for i, p1 in enumerate(phis):
        for p2 in phis[i:]:
            b = validate_bounds((1.0, 1.0), (p1, p2))
            zc = z_closed_form(f, b).value
            zn = z_numeric(f, b, cfg.resolution, cfg.tol)
            prices = price_batch(b, cfg.horizon, cfg.count, rng)
            lengths = rng.integers(1, cfg.horizon + 1, size=cfg.count)
            worst = float(bpp_ratio_batch(f, b, prices, lengths)[0].max())
            game = build_adversary(f, b, zn, cfg.tol)
            seq, outcome = realize(game, make_policy("bpp", f, b))
            adv = competitive_ratio(f, outcome, pareto_maximal(seq)).value
            rows.append([p1, p2, zc, zn.value, worst, adv])
    summary = {
        "mode": "sweep",
        "scalarization": f.label,
        "seed": cfg.seed,
        "count": cfg.count,
        "horizon": cfg.horizon,
        "pairs": len(rows),
        "max_gap_closed_numeric": max(abs(r[2] - r[3]) for r in rows),
        "upper_bound_held": all(r[4] <= r[2] + 1e-9 for r in rows),
    }
    return summary, header, rows


_RUNNERS = {
    "simulate": _simulate,
    "front": _front,
    "ratio": _ratio,
    "zvalue": _zvalue_mode,
    "adversary": _adversary_mode,
    "verify": _verify_mode,
    "sweep": _sweep_mode,
}


def execute(cfg: ExperimentConfig):
    """Run one mode and return ``(summary, csv_header, csv_rows)``; raises on failure."""
    cfg.validate()
    return _RUNNERS[cfg.mode](cfg)


def run_experiment(cfg: ExperimentConfig, stdout=None) -> int:
    """Run ``cfg``, print the result and write artifacts under ``cfg.out`` if set.

    Returns 0 on success. On failure prints ``{"error": ..., "message": ...}``
    and returns 2.
    """
    stdout = stdout or sys.stdout
    try:
        summary, header, rows = execute(cfg)
    except (SearchError, OSError, ValueError) as exc:
        stdout.write(dumps({"error": type(exc).__name__, "message": str(exc)}))
        return 2
    detail = _csv(header, rows) if header is not None else None
    if cfg.mode == "simulate":
        ret = summary["returned"]
        head = ["decision", "accepted_at"] + [f"r{i + 1}" for i in range(len(ret))]
        acc = summary["accepted_at"]
        stdout.write(_csv(head, [[summary["decision"], "" if acc is None else acc, *ret]]) + "\n" + detail)
    elif cfg.mode == "front":
        stdout.write(detail)
    else:
        stdout.write(dumps(summary))
    if cfg.out:
        out = Path(cfg.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "summary.json").write_text(dumps(summary))
        if detail is not None:
            (out / "detail.csv").write_text(detail)
        meta = {"version": __version__, "created": time.strftime("%Y-%m-%dT%H:%M:%S%z"),
                "config": asdict(cfg)}
        (out / "metadata.json").write_text(dumps(meta))
    return 0
