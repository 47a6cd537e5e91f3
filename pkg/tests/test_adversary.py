from itertools import product

import numpy as np
import pytest

from motss import validate_bounds
from motss.adversary import (
    build_adversary,
    bpp_worst_case_cr,
    enumerate_instances,
    history_count,
    minimax_optimal_cr,
    play_adversary,
    realize,
    worst_case_cr,
)
from motss.algorithms import accept_first, bpp_policy, reject_all
from motss.analysis import ZValue, z_closed_form
from motss.core import geometric_grid
from motss.errors import BudgetExceeded, WitnessOffSurface
from motss.offline import pareto_maximal
from motss.scalarize import BUILTINS, identity as _identity

f1, f2, f3, f4 = BUILTINS
identity = _identity()
B44 = validate_bounds((1, 1), (4, 4))
B94 = validate_bounds((1, 1), (9, 4))


def _z(value, witness):
    return ZValue(value, witness, "closed", "hand", None, None)


# -- lower-bound game -------------------------------------------------------

def test_probe_accepted_then_max():
    game = build_adversary(f3, B44, _z(2.0, (2.0, 2.0)))
    assert game.probe == (2, 2) and game.continuation_on_accept == (4, 4)
    seq, out = realize(game, bpp_policy(f3, B44))
    assert [tuple(p) for p in seq] == [(2, 2), (4, 4)]
    assert out.accepted_at == 1
    assert play_adversary(game, bpp_policy(f3, B44), f3).value == pytest.approx(2.0, rel=1e-15)


def test_probe_rejected_then_stop():
    game = build_adversary(f3, B44, _z(2.0, (2.0, 2.0)))
    seq, out = realize(game, reject_all)
    assert len(seq) == 1 and not out.accepted
    assert play_adversary(game, reject_all, f3).value == pytest.approx(2.0, rel=1e-15)


def test_best_component_probe():
    game = build_adversary(f4, B94, _z(2.0, (3.0, 2.0)))
    assert game.probe == (3, 2)
    assert play_adversary(game, accept_first, f4).value == 2.0


def test_off_surface_witness():
    with pytest.raises(WitnessOffSurface):
        build_adversary(f3, B44, _z(2.0, (1.0, 1.0)))
    with pytest.raises(WitnessOffSurface):
        build_adversary(f3, B44, _z(2.0, (5.0, 1.0)))


def test_acceptance_branch_front_is_max():
    for f in BUILTINS:
        game = build_adversary(f, B94, z_closed_form(f, B94))
        seq, _ = realize(game, accept_first)
        assert pareto_maximal(seq).members == (B94.p_max,)


@pytest.mark.parametrize("f", BUILTINS, ids=lambda f: f.label)
def test_both_branches_reach_z(f):
    z = z_closed_form(f, B94)
    game = build_adversary(f, B94, z)
    for policy in (accept_first, reject_all, bpp_policy(f, B94)):
        assert play_adversary(game, policy, f).value == pytest.approx(z.value, rel=1e-12)


# -- enumeration ------------------------------------------------------------

def test_enumeration_counts():
    g1 = geometric_grid(validate_bounds((1,), (4,)), 3)
    g2 = geometric_grid(validate_bounds((1, 1), (2, 2)), (2, 2))
    g3 = geometric_grid(validate_bounds((1,), (2,)), 2)
    assert len(enumerate_instances(g1, 1)) == 3
    assert len(enumerate_instances(g2, 2)) == 20
    assert len(enumerate_instances(g3, 3)) == 14
    assert history_count(g3, 3) == 14


def test_enumeration_order():
    g = geometric_grid(validate_bounds((1,), (2,)), 2)
    seqs = [tuple(p[0] for p in s) for s in enumerate_instances(g, 2)]
    assert seqs == [(1,), (2,), (1, 1), (1, 2), (2, 1), (2, 2)]


def test_budget():
    g = geometric_grid(validate_bounds((1, 1), (4, 4)), (3, 3))
    with pytest.raises(BudgetExceeded):
        enumerate_instances(g, 3, budget=100)
    with pytest.raises(BudgetExceeded):
        minimax_optimal_cr(f1, g, 3, budget=100)


# -- minimax oracle ---------------------------------------------------------

def _brute_minimax(pts, m, M, T):
    """Min over every deterministic decision table of the worst closed-out ratio (k=1)."""
    histories = [h for t in range(1, T + 1) for h in product(pts, repeat=t)]
    best = float("inf")
    for bits in product((False, True), repeat=len(histories)):
        table = dict(zip(histories, bits))
        worst = 0.0
        for seq in histories:
            ratio = max(seq) / m
            for t in range(1, len(seq) + 1):
                if table[seq[:t]]:
                    p = seq[t - 1]
                    ratio = max(max(seq[:t]), M) / p
                    break
            worst = max(worst, ratio)
        best = min(best, worst)
    return best


def test_minimax_matches_brute_force():
    g = geometric_grid(validate_bounds((1,), (4,)), 3)
    pts = [p[0] for p in product(*g.grid)]
    brute = _brute_minimax(pts, 1.0, 4.0, 2)
    res = minimax_optimal_cr(identity, g, 2)
    assert brute == 2.0
    assert res.value == brute
    assert res.instance_space_size == 12
    assert bpp_worst_case_cr(identity, g, 2) == 2.0


@pytest.mark.parametrize("points,T", [(3, 2), (4, 1), (5, 1)])
def test_minimax_brute_force_other_grids(points, T):
    g = geometric_grid(validate_bounds((1,), (10,)), points)
    pts = [p[0] for p in product(*g.grid)]
    assert minimax_optimal_cr(identity, g, T).value == pytest.approx(_brute_minimax(pts, 1.0, 10.0, T), rel=1e-15)


def test_minimax_single_step_two_objectives():
    g = geometric_grid(validate_bounds((1, 1), (2, 2)), (2, 2))
    res = minimax_optimal_cr(f1, g, 1)
    assert bpp_worst_case_cr(f1, g, 1) == pytest.approx(res.value, abs=1e-12)


@pytest.mark.parametrize("f", (f1, f3), ids=lambda f: f.label)
def test_table_policy_achieves_value(f):
    g = geometric_grid(B94, (3, 3))
    res = minimax_optimal_cr(f, g, 2)
    own, _ = worst_case_cr(f, g, 2, res.as_policy())
    assert own == pytest.approx(res.value, abs=1e-12)
    for policy in (accept_first, reject_all, bpp_policy(f, g)):
        assert worst_case_cr(f, g, 2, policy)[0] >= res.value - 1e-12


def test_horizon_closing_matters():
    # without the p_max completion a player could accept the last price of a
    # length-T run for free; with it, T=1 and T=2 give the same value here
    g = geometric_grid(validate_bounds((1,), (4,)), 3)
    v1 = minimax_optimal_cr(identity, g, 1).value
    v2 = minimax_optimal_cr(identity, g, 2).value
    assert v1 == v2 == 2.0


def test_bpp_worst_instance_reported():
    g = geometric_grid(validate_bounds((1,), (4,)), 3)
    value, seq = worst_case_cr(identity, g, 2, bpp_policy(identity, g))
    assert value == 2.0 and len(seq) >= 1


@pytest.mark.parametrize("M,points", [((4.0,), 4), ((10.0,), 4), ((9.0, 4.0), 2), ((9.0, 4.0), (4, 2))])
@pytest.mark.parametrize("f", (f1, f3), ids=lambda f: f.label)
def test_bpp_optimal_on_grids_without_balance_point(M, points, f):
    g = geometric_grid(validate_bounds((1.0,) * len(M), M), points)
    for T in (1, 2):
        assert bpp_worst_case_cr(f, g, T) == pytest.approx(minimax_optimal_cr(f, g, T).value, abs=1e-12)
