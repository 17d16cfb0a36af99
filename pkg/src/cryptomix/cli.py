"""Command-line front end.

Subcommands: solve-attacker, solve-defender, solve-robust, baselines,
calibrate, validate. Exit codes: 0 success, 1 parse/validation error,
2 infeasible model, 3 internal error. All output is JSON or CSV with `.`
decimals; diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path
from typing import Optional, Sequence

from .attacker import (
    CalibrationConfig,
    DpConfig,
    GreedyConfig,
    calibrate_threshold,
    solve_brute_force,
    solve_dp,
    solve_hybrid,
    solve_sample_greedy,
)
from .baselines import (
    SINGLE_OBJECTIVES,
    compare_strategies,
    comparison_csv,
    random_vertex_strategy,
    single_objective_strategy,
)
from .defender import evaluate_all, solve_stackelberg
from .errors import (
    BudgetNegative,
    InfeasibleDefender,
    ParseError,
    TableTooLarge,
    TooManyMethods,
    ValidationError,
)
from .io import bundled_scenario_path, load_bundled_scenario, load_scenario
from .model import AttackPlan, GameInstance
from .robust import (
    ScenarioSet,
    breach_regret_matrix,
    regret_matrix,
    scenario_table,
    solve_maximin,
    solve_minimax_regret,
    solve_unconstrained_case,
)

INPUT_ERRORS = (
    ParseError,
    ValidationError,
    BudgetNegative,
    TooManyMethods,
    TableTooLarge,
    ValueError,
    KeyError,
)


def _load(args) -> tuple[GameInstance, Optional[ScenarioSet]]:
    if args.scenario is None:
        return load_bundled_scenario()
    return load_scenario(args.scenario)


def _emit(payload: dict) -> None:
    print(json.dumps(payload, indent=2))


def _plan_payload(plan: AttackPlan) -> dict:
    return {
        "methods": list(plan.methods),
        "success_prob": plan.success_prob,
        "total_cost": plan.total_cost,
        "utility": plan.utility,
    }


def cmd_solve_attacker(args) -> int:
    instance, _ = _load(args)
    try:
        algorithm = instance.algorithm(args.algorithm)
    except KeyError:
        known = ", ".join(a.id for a in instance.algorithms)
        raise ValidationError(
            f"unknown algorithm {args.algorithm!r}; scenario has: {known}"
        ) from None
    params = instance.attacker
    if args.budget is not None:
        params = replace(params, budget=args.budget)
    if args.value is not None:
        params = replace(params, value=args.value)
    dp_config = DpConfig(cost_scale=args.scale)
    greedy_config = GreedyConfig(rng_seed=args.seed)
    if args.solver == "dp":
        plan, tag = solve_dp(algorithm, params, dp_config), "dp"
    elif args.solver == "greedy":
        plan, tag = solve_sample_greedy(algorithm, params, greedy_config), "greedy"
    elif args.solver == "brute":
        plan, tag = solve_brute_force(algorithm, params), "brute"
    else:
        result = solve_hybrid(algorithm, params, dp_config, greedy_config)
        plan, tag = result.plan, result.solver
    _emit(
        {
            "algorithm": algorithm.id,
            "budget": params.budget,
            "value": params.value,
            "cost_scale": args.scale,
            "solver": tag,
            "plan": _plan_payload(plan),
        }
    )
    return 0


def _defender_payload(instance: GameInstance, result) -> dict:
    report = result.report
    return {
        "objective": report.objective,
        "expected_breach": report.expected_breach,
        "support_size": report.support_size,
        "usage": dict(report.usage),
        "binding": list(report.binding_labels),
        "strategy": [
            {"algorithm": alg.id, "prob": p}
            for alg, p in zip(instance.algorithms, report.strategy.probs)
        ],
        "attacks": [
            {
                "algorithm": ev.algorithm_id,
                "solver": ev.solver,
                "utility": ev.utility,
                "plan": _plan_payload(ev.attack_plan),
            }
            for ev in result.evaluations
        ],
    }


def cmd_solve_defender(args) -> int:
    instance, _ = _load(args)
    if args.budget is not None:
        instance = replace(instance, attacker=replace(instance.attacker, budget=args.budget))
    result = solve_stackelberg(instance)
    payload = _defender_payload(instance, result)
    if args.csv:
        lines = ["algorithm,prob,utility,breach,methods"]
        for alg, p, ev in zip(
            instance.algorithms, result.report.strategy.probs, result.evaluations
        ):
            methods = ";".join(ev.attack_plan.methods)
            lines.append(
                f"{alg.id},{p!r},{ev.utility!r},{ev.p_succ_star!r},{methods}"
            )
        print("\n".join(lines))
    else:
        _emit(payload)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
    return 0


def cmd_solve_robust(args) -> int:
    instance, file_scenarios = _load(args)
    if args.budgets:
        budgets = tuple(float(tok) for tok in args.budgets.split(","))
        scenarios = ScenarioSet(budgets=budgets)
    elif file_scenarios is not None:
        scenarios = file_scenarios
    else:
        raise ValidationError("no scenario budgets: pass --budgets or add scenario_budgets")
    table = scenario_table(instance, scenarios)
    payload: dict = {
        "budgets": list(table.budgets),
        "optima": list(table.optima),
        "optimal_breach": list(table.optimal_breach),
        "mode": args.mode,
    }
    extras: list[tuple[str, Sequence[float]]] = []
    if args.mode == "regret":
        rr = solve_minimax_regret(instance, table)
        payload["strategy"] = list(rr.strategy.probs)
        payload["per_scenario_regret"] = list(rr.per_scenario_regret)
        payload["max_regret"] = rr.max_regret
        extras.append(("mmr", rr.strategy.probs))
    elif args.mode == "maximin":
        report = solve_maximin(instance, table)
        payload["strategy"] = list(report.strategy.probs)
        payload["worst_case_value"] = report.objective
        payload["worst_case_breach"] = report.expected_breach
        extras.append(("maximin", report.strategy.probs))
    else:
        report = solve_unconstrained_case(instance)
        payload["strategy"] = list(report.strategy.probs)
        payload["objective"] = report.objective
        payload["expected_breach"] = report.expected_breach
    if args.matrices:
        utility_m = regret_matrix(instance, table, extras)
        breach_m = breach_regret_matrix(instance, table, extras)
        payload["regret_matrix"] = utility_m.to_dict()
        payload["breach_regret_matrix"] = breach_m.to_dict()
        out_dir = Path(args.out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        utility_m.save_csv(out_dir / "regret_matrix.csv")
        breach_m.save_csv(out_dir / "breach_regret_matrix.csv")
    _emit(payload)
    return 0


def cmd_baselines(args) -> int:
    instance, _ = _load(args)
    evaluations = evaluate_all(instance)
    strategies: list[tuple[str, Sequence[float]]] = []
    for i in range(args.samples):
        seed = args.seed + i
        strategies.append((f"random-{seed}", random_vertex_strategy(instance, seed).probs))
    for objective in SINGLE_OBJECTIVES:
        strategies.append((objective, single_objective_strategy(instance, objective).probs))
    rows = compare_strategies(instance, strategies, evaluations)
    text = comparison_csv(rows)
    sys.stdout.write(text)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return 0


def cmd_calibrate(args) -> int:
    config = CalibrationConfig(
        time_limit=args.time_limit,
        max_methods=args.max_methods,
        rng_seed=args.seed,
    )
    result = calibrate_threshold(config)
    if args.csv:
        with open(args.csv, "w", encoding="utf-8") as fh:
            fh.write("n,seconds\n")
            for n, seconds in result.series:
                fh.write(f"{n},{seconds!r}\n")
    _emit(
        {
            "threshold": result.threshold,
            "time_limit": config.time_limit,
            "max_methods": config.max_methods,
            "seed": config.rng_seed,
            "series_length": len(result.series),
        }
    )
    return 0


def cmd_validate(args) -> int:
    instance, scenarios = _load(args)
    _emit(
        {
            "ok": True,
            "algorithms": len(instance.algorithms),
            "attack_methods": sum(len(a.attacks) for a in instance.algorithms),
            "scenario_budgets": list(scenarios.budgets) if scenarios else [],
        }
    )
    return 0


def _add_scenario_arg(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--scenario",
        default=None,
        help=f"scenario JSON file (default: bundled {bundled_scenario_path().name})",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cryptomix",
        description="Stackelberg solvers for mixing encryption algorithms "
        "against a budgeted attacker.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve-attacker", help="best attack plan against one algorithm")
    _add_scenario_arg(p)
    p.add_argument("--algorithm", required=True, help="algorithm id from the scenario")
    p.add_argument("--budget", type=float, default=None)
    p.add_argument("--value", type=float, default=None)
    p.add_argument("--solver", choices=("dp", "greedy", "hybrid", "brute"), default="hybrid")
    p.add_argument("--seed", type=int, default=0, help="greedy coin seed")
    p.add_argument("--scale", type=int, default=10, help="DP cost discretization")
    p.set_defaults(func=cmd_solve_attacker)

    p = sub.add_parser("solve-defender", help="equilibrium mixed deployment strategy")
    _add_scenario_arg(p)
    p.add_argument("--budget", type=float, default=None, help="override attacker budget")
    p.add_argument("--out", default=None, help="also write the JSON report here")
    p.add_argument("--csv", action="store_true", help="per-algorithm CSV instead of JSON")
    p.set_defaults(func=cmd_solve_defender)

    p = sub.add_parser("solve-robust", help="budget-uncertain strategies and matrices")
    _add_scenario_arg(p)
    p.add_argument("--budgets", default=None, help="comma-separated scenario budgets")
    p.add_argument("--mode", choices=("regret", "maximin", "unconstrained"), default="regret")
    p.add_argument("--matrices", action="store_true", help="write regret matrix CSVs")
    p.add_argument("--out-dir", default=".", help="directory for matrix CSVs")
    p.set_defaults(func=cmd_solve_robust)

    p = sub.add_parser("baselines", help="compare heuristic strategies to the optimum")
    _add_scenario_arg(p)
    p.add_argument("--samples", type=int, default=50, help="random vertex count")
    p.add_argument("--seed", type=int, default=0, help="base seed for random vertices")
    p.add_argument("--out", default=None, help="also write the CSV here")
    p.set_defaults(func=cmd_baselines)

    p = sub.add_parser("calibrate", help="locate the DP runtime threshold")
    p.add_argument("--time-limit", type=float, default=0.2)
    p.add_argument("--max-methods", type=int, default=500)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--csv", default=None, help="write the n,seconds series here")
    p.set_defaults(func=cmd_calibrate)

    p = sub.add_parser("validate", help="check a scenario file")
    _add_scenario_arg(p)
    p.set_defaults(func=cmd_validate)

    return parser


def run_cli(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 0 for --help, 2 for usage errors; fold the latter
        # into the input-error code
        return 0 if exc.code in (0, None) else 1
    try:
        return args.func(args)
    except INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except InfeasibleDefender as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 3


def main() -> None:
    sys.exit(run_cli(sys.argv[1:]))


if __name__ == "__main__":
    main()
