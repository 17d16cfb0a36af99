#!/usr/bin/env python3
"""Budget-uncertainty experiment: per-scenario optima, the minimax-regret
mix, the maximin mix, and the two regret matrices.

Writes regret_matrix.csv and breach_regret_matrix.csv into --out-dir and
prints a summary table to stdout.
"""

import argparse
from pathlib import Path

from cryptomix import (
    ScenarioSet,
    breach_regret_matrix,
    load_bundled_scenario,
    load_scenario,
    regret_matrix,
    scenario_table,
    solve_maximin,
    solve_minimax_regret,
)


def print_matrix(title: str, mat) -> None:
    print(title)
    width = max(len(label) for label in mat.row_labels) + 2
    print(" " * width + "  ".join(f"{c:>10}" for c in mat.col_labels))
    for label, row in zip(mat.row_labels, mat.cells):
        print(f"{label:<{width}}" + "  ".join(f"{v:>10.4f}" for v in row))
    print()


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--scenario", default=None, help="scenario JSON (default: bundled)")
    parser.add_argument("--budgets", default=None, help="comma-separated budgets override")
    parser.add_argument("--out-dir", default="results", help="directory for matrix CSVs")
    args = parser.parse_args()

    if args.scenario:
        instance, scenarios = load_scenario(args.scenario)
    else:
        instance, scenarios = load_bundled_scenario()
    if args.budgets:
        scenarios = ScenarioSet(budgets=tuple(float(t) for t in args.budgets.split(",")))
    if scenarios is None:
        parser.error("scenario file has no scenario_budgets; pass --budgets")

    table = scenario_table(instance, scenarios)
    print(f"{'k':>6} {'V*(k)':>10} {'B*(k)':>10}")
    for k, opt, low in zip(table.budgets, table.optima, table.optimal_breach):
        print(f"{k:>6g} {opt:>10.4f} {low:>10.4f}")
    print()

    mmr = solve_minimax_regret(instance, table)
    print("minimax-regret strategy")
    for alg, p in zip(instance.algorithms, mmr.strategy.probs):
        if p > 1e-9:
            print(f"  {alg.id:<20} {p:.6f}")
    regrets = ", ".join(f"{r:.4f}" for r in mmr.per_scenario_regret)
    print(f"  per-scenario regret: {regrets}")
    print(f"  max regret: {mmr.max_regret:.4f}")
    print()

    mm = solve_maximin(instance, table)
    print("maximin strategy")
    for alg, p in zip(instance.algorithms, mm.strategy.probs):
        if p > 1e-9:
            print(f"  {alg.id:<20} {p:.6f}")
    print(f"  worst-case value:  {mm.objective:.4f}")
    print(f"  worst-case breach: {mm.expected_breach:.4f}")
    print()

    extras = [("mmr", mmr.strategy.probs), ("maximin", mm.strategy.probs)]
    umat = regret_matrix(instance, table, extras)
    bmat = breach_regret_matrix(instance, table, extras)
    print_matrix("utility regret by deployed strategy (rows) and true budget (cols)", umat)
    print_matrix("breach regret", bmat)

    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    umat.save_csv(out_dir / "regret_matrix.csv")
    bmat.save_csv(out_dir / "breach_regret_matrix.csv")
    print(f"wrote {out_dir}/regret_matrix.csv and {out_dir}/breach_regret_matrix.csv")


if __name__ == "__main__":
    main()
