"""Baseline defender strategies for comparison against the equilibrium:
random feasible vertices and single-criterion optimizers, all evaluated
against the same fixed attacker best responses.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .attacker import DpConfig, GreedyConfig
from .defender import (
    AlgorithmEvaluation,
    StrategyReport,
    build_defender_lp,
    defender_polytope,
    evaluate_all,
    make_report,
)
from .errors import InfeasibleDefender
from .lp import LinearProgram, solve_lp
from .model import GameInstance, MixedStrategy

SINGLE_OBJECTIVES = ("min_op_cost", "min_latency", "max_resilience")


@dataclass(frozen=True)
class ComparisonRow:
    label: str
    report: StrategyReport

    def csv_line(self) -> str:
        r = self.report
        u = r.usage
        fields = (
            r.objective,
            r.expected_breach,
            u["op"],
            u["cpu"],
            u["mem"],
            u["latency"],
            u["resilience"],
        )
        return self.label + "," + ",".join(repr(v) for v in fields)


def _solve_over_polytope(
    instance: GameInstance, sense: str, objective: Sequence[float]
) -> MixedStrategy:
    program = LinearProgram(
        sense=sense,
        objective=tuple(objective),
        constraints=defender_polytope(instance),
    )
    solution = solve_lp(program)
    if solution.status == "infeasible":
        raise InfeasibleDefender("defender polytope is empty")
    if solution.status != "optimal":
        raise RuntimeError(f"baseline LP status {solution.status!r}")
    return MixedStrategy(probs=solution.values)


def random_vertex_strategy(instance: GameInstance, rng_seed: int) -> MixedStrategy:
    """Vertex of the feasible region minimizing a standard-normal random
    objective drawn from rng_seed."""
    rng = np.random.default_rng(rng_seed)
    coeffs = rng.standard_normal(len(instance.algorithms))
    return _solve_over_polytope(instance, "min", tuple(float(c) for c in coeffs))


def single_objective_strategy(instance: GameInstance, objective: str) -> MixedStrategy:
    algs = instance.algorithms
    if objective == "min_op_cost":
        return _solve_over_polytope(instance, "min", [a.op_cost for a in algs])
    if objective == "min_latency":
        return _solve_over_polytope(instance, "min", [a.latency for a in algs])
    if objective == "max_resilience":
        return _solve_over_polytope(instance, "max", [a.resilience for a in algs])
    raise ValueError(f"unknown objective {objective!r}; expected one of {SINGLE_OBJECTIVES}")


def compare_strategies(
    instance: GameInstance,
    strategies: Sequence[tuple[str, Sequence[float]]],
    evaluations: Optional[Sequence[AlgorithmEvaluation]] = None,
    dp_config: Optional[DpConfig] = None,
    greedy_config: Optional[GreedyConfig] = None,
) -> list[ComparisonRow]:
    """Score labeled strategies against the fixed attacker best responses
    and return rows sorted by objective, best first. A 'stackelberg'
    reference row is always included."""
    if evaluations is None:
        evaluations = evaluate_all(instance, dp_config, greedy_config)
    program = build_defender_lp(instance, [ev.utility for ev in evaluations])
    solution = solve_lp(program)
    if solution.status == "infeasible":
        raise InfeasibleDefender("defender polytope is empty")
    if solution.status != "optimal":
        raise RuntimeError(f"defender LP status {solution.status!r}")
    rows = [
        ComparisonRow(
            "stackelberg",
            make_report(instance, solution.values, evaluations, solution.binding),
        )
    ]
    for label, probs in strategies:
        rows.append(ComparisonRow(label, make_report(instance, probs, evaluations)))
    rows.sort(key=lambda row: (-row.report.objective, row.label))
    return rows


def comparison_csv(rows: Sequence[ComparisonRow]) -> str:
    header = "label,objective,breach,op,cpu,mem,latency,resilience"
    return "\n".join([header] + [row.csv_line() for row in rows]) + "\n"
