"""Command line entry point: ``motss <mode> [options]``."""
from __future__ import annotations

import argparse
import sys

from .adversary import DEFAULT_BUDGET
from .algorithms import POLICY_NAMES
from .analysis import DEFAULT_TOL
from .harness import ExperimentConfig, run_experiment


def _floats(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--f", help="max | amean | gmean | min | identity | plateau:c=<real>")
    common.add_argument("--bounds", nargs=2, type=_floats, metavar=("m1,..,mk", "M1,..,Mk"))
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", help="directory for summary.json / detail.csv / metadata.json")
    common.add_argument("--tol", type=float, default=DEFAULT_TOL)
    common.add_argument("--resolution", type=int, default=512)
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET)

    parser = argparse.ArgumentParser(prog="motss", description="Multi-objective time series search toolkit")
    sub = parser.add_subparsers(dest="mode", required=True)

    p = sub.add_parser("simulate", parents=[common], help="run a policy on an instance file")
    p.add_argument("--instance", required=True)
    p.add_argument("--policy", choices=POLICY_NAMES, default="bpp")

    p = sub.add_parser("front", parents=[common], help="Pareto-maximal prices of an instance")
    p.add_argument("--instance", required=True)

    p = sub.add_parser("ratio", parents=[common], help="competitive ratio of a policy on an instance")
    p.add_argument("--instance", required=True)
    p.add_argument("--policy", choices=POLICY_NAMES, default="bpp")

    p = sub.add_parser("zvalue", parents=[common], help="optimal competitive ratio for given bounds")
    p.add_argument("--method", choices=("closed", "numeric"), default="closed")
    p.add_argument("--canonicalize", action="store_true", help="sort objectives by fluctuation ratio first")

    p = sub.add_parser("adversary", parents=[common], help="play the lower-bound adversary")
    p.add_argument("--policy", choices=POLICY_NAMES, default="bpp")
    p.add_argument("--method", choices=("closed", "numeric"), default="closed")
    p.add_argument("--canonicalize", action="store_true")

    p = sub.add_parser("verify", parents=[common], help="minimax oracle vs the balanced price policy")
    p.add_argument("--grid", type=_ints, help="points per objective, e.g. 3,3")
    p.add_argument("--horizon", type=int, default=2)

    p = sub.add_parser("sweep", parents=[common], help="tabulate optimal and empirical ratios over bound pairs")
    p.add_argument("--phis", type=_floats, default=(1.5, 2.0, 4.0, 9.0, 25.0, 100.0))
    p.add_argument("--count", type=int, default=1000)
    p.add_argument("--horizon", type=int, default=20)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    opts = {k: v for k, v in vars(args).items() if v is not None}
    cfg = ExperimentConfig(**opts)
    return run_experiment(cfg)


if __name__ == "__main__":
    sys.exit(main())
