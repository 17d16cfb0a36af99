import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cryptomix import (
    AttackMethod,
    AttackerParams,
    BudgetNegative,
    CalibrationConfig,
    DpConfig,
    GreedyConfig,
    TableTooLarge,
    TooManyMethods,
    calibrate_threshold,
    solve_brute_force,
    solve_dp,
    solve_hybrid,
    solve_sample_greedy,
    unconstrained_success,
)
from helpers import bare_algorithm, random_methods


def test_dp_empty_method_list():
    alg = bare_algorithm(())
    plan = solve_dp(alg, AttackerParams(value=10.0, budget=5.0))
    assert plan.methods == ()
    assert plan.utility == 0.0


def test_dp_zero_budget_returns_empty(worked_algorithm):
    plan = solve_dp(worked_algorithm, AttackerParams(value=1200.0, budget=0.0))
    assert plan.methods == ()


def test_dp_zero_cost_method_always_taken():
    alg = bare_algorithm((AttackMethod("free", 0.5, 0.0), AttackMethod("paid", 0.5, 50.0)))
    plan = solve_dp(alg, AttackerParams(value=100.0, budget=0.0), DpConfig(cost_scale=1))
    assert plan.methods == ("free",)


def test_dp_negative_budget_raises(worked_algorithm):
    with pytest.raises(BudgetNegative):
        solve_dp(worked_algorithm, AttackerParams(value=10.0, budget=-1.0))


def test_dp_table_guard(worked_algorithm):
    with pytest.raises(TableTooLarge):
        solve_dp(
            worked_algorithm,
            AttackerParams(value=10.0, budget=500.0),
            DpConfig(cost_scale=10, max_table_cells=100),
        )


def test_dp_guard_overridable(worked_algorithm, worked_params):
    plan = solve_dp(
        worked_algorithm, worked_params, DpConfig(cost_scale=10, max_table_cells=10**9)
    )
    assert plan.utility == pytest.approx(312.0)


def test_brute_force_method_guard():
    alg = bare_algorithm(tuple(AttackMethod(f"m{i:02d}", 0.5, 1.0) for i in range(26)))
    with pytest.raises(TooManyMethods):
        solve_brute_force(alg, AttackerParams(value=10.0, budget=5.0))


def test_equal_tie_prefers_lexicographic_ids():
    # {a, c} and {b} reach the same success and cost exactly (dyadic floats)
    alg = bare_algorithm(
        (
            AttackMethod("a", 0.5, 4.0),
            AttackMethod("b", 0.75, 8.0),
            AttackMethod("c", 0.5, 4.0),
        )
    )
    params = AttackerParams(value=100.0, budget=8.0)
    dp = solve_dp(alg, params, DpConfig(cost_scale=1))
    brute = solve_brute_force(alg, params)
    assert dp == brute
    assert dp.methods == ("a", "c")


def test_singleton_tie_prefers_smaller_id():
    alg = bare_algorithm((AttackMethod("b", 0.5, 4.0), AttackMethod("a", 0.5, 4.0)))
    params = AttackerParams(value=100.0, budget=4.0)
    assert solve_dp(alg, params, DpConfig(cost_scale=1)).methods == ("a",)
    assert solve_brute_force(alg, params).methods == ("a",)


def test_unprofitable_methods_left_out():
    alg = bare_algorithm((AttackMethod("dud", 0.01, 90.0),))
    plan = solve_brute_force(alg, AttackerParams(value=100.0, budget=100.0))
    assert plan.methods == ()
    plan = solve_dp(alg, AttackerParams(value=100.0, budget=100.0), DpConfig(cost_scale=1))
    assert plan.methods == ()


def test_fractional_costs_respect_budget(instance):
    # kyberslash1 costs 20.8; with scale 10 it must fit at k=20.8 but not 20
    alg = instance.algorithm("ml-kem-768")
    at_208 = solve_dp(alg, AttackerParams(value=300.0, budget=20.8))
    at_20 = solve_dp(alg, AttackerParams(value=300.0, budget=20.0))
    assert "kyberslash1" in at_208.methods
    assert at_20.methods == ()


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=10_000))
def test_dp_equals_brute_force_on_random_integer_instances(seed):
    rng = np.random.default_rng(seed)
    alg = bare_algorithm(random_methods(rng, int(rng.integers(1, 9)), max_cost=40))
    params = AttackerParams(
        value=float(rng.uniform(10, 500)), budget=float(rng.integers(0, 41))
    )
    dp = solve_dp(alg, params, DpConfig(cost_scale=1))
    brute = solve_brute_force(alg, params)
    assert dp == brute


def test_greedy_accept_all_takes_whole_density_order(worked_algorithm, worked_params):
    plan = solve_sample_greedy(
        worked_algorithm, worked_params, GreedyConfig(accept_prob=1.0)
    )
    assert plan.methods == ("a1", "a2", "a4")
    assert plan.utility == pytest.approx(312.0)


def test_greedy_reject_all_falls_back_to_best_singleton(worked_algorithm, worked_params):
    plan = solve_sample_greedy(
        worked_algorithm, worked_params, GreedyConfig(accept_prob=0.0)
    )
    assert plan.methods == ("a3",)


def test_greedy_seed_reproducible(worked_algorithm, worked_params):
    config = GreedyConfig(accept_prob=0.414, rng_seed=123)
    first = solve_sample_greedy(worked_algorithm, worked_params, config)
    second = solve_sample_greedy(worked_algorithm, worked_params, config)
    assert first == second


def test_greedy_explicit_coins_control_acceptance(worked_algorithm, worked_params):
    # accept only the second candidate considered
    plan = solve_sample_greedy(
        worked_algorithm,
        worked_params,
        GreedyConfig(accept_prob=0.414),
        coins=[0.9, 0.1, 0.9, 0.9],
    )
    assert plan.methods == ("a3",)


def test_greedy_never_beats_exact(worked_algorithm, worked_params):
    exact = solve_dp(worked_algorithm, worked_params, DpConfig(cost_scale=1))
    for seed in range(25):
        greedy = solve_sample_greedy(
            worked_algorithm, worked_params, GreedyConfig(rng_seed=seed)
        )
        assert greedy.utility <= exact.utility + 1e-12
        assert greedy.total_cost <= worked_params.budget


def test_hybrid_uses_dp_when_small(worked_algorithm, worked_params):
    result = solve_hybrid(worked_algorithm, worked_params)
    assert result.solver == "dp"
    assert result.plan.utility == pytest.approx(312.0)


def test_hybrid_falls_back_on_method_threshold(worked_algorithm, worked_params):
    result = solve_hybrid(
        worked_algorithm, worked_params, method_threshold=3
    )
    assert result.solver == "greedy"


def test_hybrid_falls_back_on_table_size(worked_algorithm, worked_params):
    result = solve_hybrid(
        worked_algorithm, worked_params, dp_config=DpConfig(max_table_cells=100)
    )
    assert result.solver == "greedy"


def test_unconstrained_success_uses_every_method(worked_algorithm):
    expected = 1.0 - (1.0 - 0.20) * (1.0 - 0.35) * (1.0 - 0.42) * (1.0 - 0.25)
    assert unconstrained_success(worked_algorithm) == pytest.approx(expected)


def test_calibration_stops_at_first_crossing_and_is_reproducible():
    config = CalibrationConfig(time_limit=1e9, max_methods=6, rng_seed=7)
    first = calibrate_threshold(config)
    second = calibrate_threshold(config)
    assert first.threshold == 6
    assert [n for n, _ in first.series] == [1, 2, 3, 4, 5, 6]
    assert [n for n, _ in second.series] == [n for n, _ in first.series]

    instant = calibrate_threshold(
        CalibrationConfig(time_limit=0.0, max_methods=6, rng_seed=7)
    )
    assert instant.threshold == 1
    assert len(instant.series) == 1
