#!/usr/bin/env python3
"""Score heuristic deployment strategies against the equilibrium.

Samples random feasible vertices, adds the three single-criterion
optimizers, evaluates everything against the same attacker best
responses, and reports how often the equilibrium strictly wins.
Writes the full comparison as CSV.
"""

import argparse

from cryptomix import (
    SINGLE_OBJECTIVES,
    compare_strategies,
    comparison_csv,
    evaluate_all,
    load_bundled_scenario,
    load_scenario,
    random_vertex_strategy,
    single_objective_strategy,
)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--scenario", default=None, help="scenario JSON (default: bundled)")
    parser.add_argument("--samples", type=int, default=50, help="random vertex count")
    parser.add_argument("--seed", type=int, default=0, help="base seed")
    parser.add_argument("--out", default="results/baselines.csv")
    args = parser.parse_args()

    if args.scenario:
        instance, _ = load_scenario(args.scenario)
    else:
        instance, _ = load_bundled_scenario()

    evaluations = evaluate_all(instance)
    strategies = []
    for i in range(args.samples):
        seed = args.seed + i
        strategies.append((f"random-{seed}", random_vertex_strategy(instance, seed).probs))
    for name in SINGLE_OBJECTIVES:
        strategies.append((name, single_objective_strategy(instance, name).probs))

    rows = compare_strategies(instance, strategies, evaluations)
    by_label = {row.label: row.report for row in rows}
    opt = by_label["stackelberg"].objective

    strict = sum(
        1
        for i in range(args.samples)
        if opt - by_label[f"random-{args.seed + i}"].objective > 1e-7
    )
    print(f"equilibrium objective {opt:.4f}")
    print(f"random vertices strictly beaten: {strict}/{args.samples}")
    print()
    print(f"{'label':<16} {'objective':>10} {'breach':>8}")
    for row in rows[:10]:
        r = row.report
        print(f"{row.label:<16} {r.objective:>10.4f} {r.expected_breach:>8.4f}")
    if len(rows) > 10:
        print(f"... {len(rows) - 10} more rows in the CSV")

    if args.out:
        import os

        os.makedirs(os.path.dirname(args.out) or ".", exist_ok=True)
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(comparison_csv(rows))
        print(f"\nwrote {args.out}")


if __name__ == "__main__":
    main()
