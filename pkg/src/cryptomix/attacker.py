"""Attacker subgame solvers: exact DP, sampled greedy, hybrid dispatch,
a brute-force oracle, and the DP/greedy switching-threshold calibration.

All solvers maximize value * P_succ(S) - phi(sum of costs) over method
subsets S within the budget, and break ties identically: higher utility,
then lower total cost, then lexicographically smallest id set.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

import numpy as np

from .errors import BudgetNegative, TableTooLarge, TooManyMethods
from .model import (
    AttackMethod,
    AttackPlan,
    AttackerParams,
    EncryptionAlgorithm,
    make_plan,
    phi,
    plan_key,
    success_probability,
)


@dataclass(frozen=True)
class DpConfig:
    """Cost discretization and table-size guard for the exact DP."""

    cost_scale: int = 10
    max_table_cells: int = 100_000


@dataclass(frozen=True)
class GreedyConfig:
    """Acceptance probability and RNG seed for the sampled greedy."""

    accept_prob: float = 0.414
    rng_seed: int = 0


@dataclass(frozen=True)
class CalibrationConfig:
    """Synthetic-instance sweep used to locate the DP runtime threshold."""

    time_limit: float = 0.2
    max_methods: int = 500
    budget: float = 500.0
    value: float = 1000.0
    success_range: tuple[float, float] = (0.05, 0.85)
    cost_range: tuple[float, float] = (40.0, 200.0)
    rng_seed: int = 0


@dataclass(frozen=True)
class CalibrationResult:
    threshold: int
    series: tuple[tuple[int, float], ...]


@dataclass(frozen=True)
class HybridResult:
    plan: AttackPlan
    solver: str  # "dp" or "greedy"


def _sorted_methods(algorithm: EncryptionAlgorithm) -> list[AttackMethod]:
    return sorted(algorithm.attacks, key=lambda m: m.id)


def solve_brute_force(
    algorithm: EncryptionAlgorithm, params: AttackerParams
) -> AttackPlan:
    """Exhaustive subset enumeration; the test oracle for the DP."""
    methods = _sorted_methods(algorithm)
    if len(methods) > 25:
        raise TooManyMethods(f"{len(methods)} methods exceeds the 2^25 guard")
    if params.budget < 0:
        raise BudgetNegative(f"budget {params.budget} is negative")
    best = make_plan((), params)
    best_key = plan_key(best)
    for mask in range(1, 1 << len(methods)):
        subset = [m for j, m in enumerate(methods) if mask >> j & 1]
        plan = make_plan(subset, params)
        if plan.total_cost > params.budget:
            continue
        key = plan_key(plan)
        if key < best_key:
            best, best_key = plan, key
    return best


def _chain_indices(take: np.ndarray, weights: list[int], layer: int, cell: int) -> list[int]:
    """Follow parent pointers down from (layer, cell) and return the taken
    method indices in ascending order."""
    chosen: list[int] = []
    for i in range(layer, -1, -1):
        if take[i, cell]:
            chosen.append(i)
            cell -= weights[i]
    chosen.reverse()
    return chosen


def solve_dp(
    algorithm: EncryptionAlgorithm,
    params: AttackerParams,
    config: Optional[DpConfig] = None,
) -> AttackPlan:
    """Exact optimum under scaled-integer costs.

    The table is indexed by exact spent cost: minfail[c] is the smallest
    failure product among subsets whose scaled costs sum to exactly c.
    The answer is the best value * (1 - minfail[c]) - phi(c / scale) over
    all reachable c. Failure products accumulate over methods in ascending
    id order, matching make_plan bit for bit.
    """
    config = config or DpConfig()
    if params.budget < 0:
        raise BudgetNegative(f"budget {params.budget} is negative")
    methods = _sorted_methods(algorithm)
    n = len(methods)
    scale = config.cost_scale
    budget_cells = int(round(params.budget * scale))
    if n * (budget_cells + 1) > config.max_table_cells:
        raise TableTooLarge(
            f"{n} methods x {budget_cells + 1} cost levels exceeds "
            f"{config.max_table_cells} table cells"
        )
    weights = [int(round(m.cost * scale)) for m in methods]

    minfail = np.full(budget_cells + 1, np.inf)
    minfail[0] = 1.0
    take = np.zeros((max(n, 1), budget_cells + 1), dtype=bool)
    for j, (m, w) in enumerate(zip(methods, weights)):
        if w > budget_cells:
            continue
        keep = 1.0 - m.success
        cand = np.full(budget_cells + 1, np.inf)
        cand[w:] = minfail[: budget_cells + 1 - w] * keep
        take[j] = cand < minfail
        ties = (cand == minfail) & np.isfinite(minfail)
        for c in np.nonzero(ties)[0]:
            # exact tie in the failure product: keep the lexicographically
            # smaller id set
            with_j = _chain_indices(take, weights, j - 1, int(c) - w) + [j]
            without_j = _chain_indices(take, weights, j - 1, int(c))
            ids_with = tuple(methods[i].id for i in with_j)
            ids_without = tuple(methods[i].id for i in without_j)
            take[j, c] = ids_with < ids_without
        minfail = np.where(take[j], cand, minfail)

    # cell 0 is not necessarily the empty set: zero-cost methods land there
    best_cell = 0
    best_utility = params.value * (1.0 - float(minfail[0])) - phi(params.cost_fn, 0.0)
    for c in range(1, budget_cells + 1):
        f = minfail[c]
        if not math.isfinite(f):
            continue
        utility = params.value * (1.0 - f) - phi(params.cost_fn, c / scale)
        if utility > best_utility:
            best_cell, best_utility = c, utility
    chosen = _chain_indices(take, weights, n - 1, best_cell) if n else []
    return make_plan([methods[i] for i in chosen], params)


def solve_sample_greedy(
    algorithm: EncryptionAlgorithm,
    params: AttackerParams,
    config: Optional[GreedyConfig] = None,
    coins: Optional[Iterable[float]] = None,
) -> AttackPlan:
    """Randomized density greedy with a per-iteration acceptance coin.

    Phase 1 records the best feasible singleton. Phase 2 repeatedly takes
    the remaining feasible method with the highest marginal density
    (value * marginal success gain - cost) / cost, flips a coin, and either
    adds it or discards it permanently. The better of the greedy set and
    the singleton is returned; the empty plan wins ties.

    `coins` optionally replaces the seeded RNG with an explicit sequence of
    uniforms for deterministic replay.
    """
    config = config or GreedyConfig()
    methods = _sorted_methods(algorithm)
    if coins is None:
        rng = np.random.default_rng(config.rng_seed)

        def draw() -> float:
            return float(rng.random())

    else:
        stream: Iterator[float] = iter(coins)

        def draw() -> float:
            return float(next(stream))

    budget = params.budget
    singles = [make_plan([m], params) for m in methods if m.cost <= budget]
    best_single = min(singles, key=plan_key) if singles else None

    chosen: list[AttackMethod] = []
    remaining = list(methods)
    residual = budget
    while True:
        feasible = [m for m in remaining if m.cost <= residual]
        if not feasible:
            break
        fail_s = 1.0
        for m in sorted(chosen, key=lambda m: m.id):
            fail_s *= 1.0 - m.success
        def density(m: AttackMethod) -> float:
            if m.cost == 0:
                return math.inf  # zero-cost methods are free improvements
            return (params.value * fail_s * m.success - m.cost) / m.cost
        best = min(feasible, key=lambda m: (-density(m), m.cost, m.id))
        if draw() < config.accept_prob:
            chosen.append(best)
            residual -= best.cost
        remaining.remove(best)

    candidates = [make_plan((), params)]
    if best_single is not None:
        candidates.append(best_single)
    if chosen:
        candidates.append(make_plan(chosen, params))
    return min(candidates, key=plan_key)


def solve_hybrid(
    algorithm: EncryptionAlgorithm,
    params: AttackerParams,
    dp_config: Optional[DpConfig] = None,
    greedy_config: Optional[GreedyConfig] = None,
    method_threshold: int = 310,
) -> HybridResult:
    """Dispatch to the exact DP when the table stays small and the method
    count is below the calibrated threshold, otherwise fall back to the
    sampled greedy."""
    dp_config = dp_config or DpConfig()
    greedy_config = greedy_config or GreedyConfig()
    n = len(algorithm.attacks)
    scaled_budget = int(round(params.budget * dp_config.cost_scale))
    if scaled_budget * n <= dp_config.max_table_cells and n <= method_threshold:
        return HybridResult(solve_dp(algorithm, params, dp_config), "dp")
    return HybridResult(solve_sample_greedy(algorithm, params, greedy_config), "greedy")


def unconstrained_success(algorithm: EncryptionAlgorithm) -> float:
    """Breach probability when every method is executed (no budget)."""
    return success_probability(algorithm.attacks)


def calibrate_threshold(config: Optional[CalibrationConfig] = None) -> CalibrationResult:
    """Time the DP on growing synthetic instances and return the first
    method count whose solve exceeds the time limit.

    The sweep is linear in n and stops at the first crossing; if no solve
    crosses the limit the threshold is max_methods. The instance sequence
    is fully determined by rng_seed.
    """
    config = config or CalibrationConfig()
    rng = np.random.default_rng(config.rng_seed)
    params = AttackerParams(value=config.value, budget=config.budget)
    # the sweep intentionally exceeds the dispatch bound, so lift the guard
    dp_config = DpConfig(cost_scale=10, max_table_cells=2**62)
    series: list[tuple[int, float]] = []
    for n in range(1, config.max_methods + 1):
        succ = rng.uniform(*config.success_range, n)
        cost = rng.uniform(*config.cost_range, n)
        attacks = tuple(
            AttackMethod(id=f"m{i:04d}", success=float(succ[i]), cost=float(cost[i]))
            for i in range(n)
        )
        instance = EncryptionAlgorithm(
            id=f"synthetic-{n}",
            op_cost=0.0,
            cpu_cost=0.0,
            mem_cost=0.0,
            latency=0.0,
            resilience=0.0,
            protected_value=1.0,
            family=0,
            attacks=attacks,
        )
        started = time.perf_counter()
        solve_dp(instance, params, dp_config)
        elapsed = time.perf_counter() - started
        series.append((n, elapsed))
        if elapsed > config.time_limit:
            return CalibrationResult(threshold=n, series=tuple(series))
    return CalibrationResult(threshold=config.max_methods, series=tuple(series))
