"""Online search over price vectors with several objectives.

The balanced price policy accepts the first price vector ``p`` with
``f(M/p) <= f(p/m)`` for a monotone scalarization ``f``. This package runs it
and its baselines, computes per-instance and optimal competitive ratios, and
checks optimality with adversary games and an exhaustive minimax oracle.
"""
__version__ = "0.1.0"

from .core import (
    Bounds,
    CanonicalOrdering,
    InputSequence,
    PriceVector,
    canonicalize,
    format_instance,
    geometric_grid,
    parse_instance,
    read_instance,
    validate_bounds,
)
from .scalarize import (
    Kind,
    Scalarization,
    arithmetic_mean,
    best_component,
    check_monotone,
    custom,
    evaluate,
    geometric_mean,
    identity,
    parse_scalarization,
    plateau_max,
    worst_component,
)
from .algorithms import (
    RunOutcome,
    accept_first,
    bpp_decide,
    bpp_policy,
    reject_all,
    rpp_decide,
    rpp_policy,
    run_bpp,
    run_generic,
    run_rpp,
)
from .offline import ParetoFront, pareto_maximal
from .analysis import (
    RatioReport,
    ZValue,
    balance_residual,
    bpp_ratio_batch,
    competitive_ratio,
    solve_fiber,
    z_closed_form,
    z_discrete,
    z_numeric,
)
from .adversary import (
    AdversaryGame,
    MinimaxResult,
    build_adversary,
    bpp_worst_case_cr,
    enumerate_instances,
    minimax_optimal_cr,
    play_adversary,
    worst_case_cr,
)
from .harness import ExperimentConfig, generate_random_instances, run_experiment
