#!/usr/bin/env python3
"""Solve the defender equilibrium for a scenario and print the mix.

Outputs a per-algorithm table (probability, attacker best response,
breach probability), the resource usage against each cap, and the
binding constraint set. Optionally dumps the full JSON report.
"""

import argparse
import json

from cryptomix import (
    load_bundled_scenario,
    load_scenario,
    solve_stackelberg,
)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--scenario", default=None, help="scenario JSON (default: bundled)")
    parser.add_argument("--out", default=None, help="write a JSON report here")
    args = parser.parse_args()

    if args.scenario:
        instance, _ = load_scenario(args.scenario)
    else:
        instance, _ = load_bundled_scenario()

    result = solve_stackelberg(instance)
    report = result.report

    print(f"objective        {report.objective:.4f}")
    print(f"expected breach  {report.expected_breach:.4f}")
    print(f"support size     {report.support_size}")
    print(f"binding          {', '.join(report.binding_labels)}")
    print()
    print(f"{'algorithm':<20} {'prob':>8} {'breach':>8}  best response")
    for alg, p, ev in zip(instance.algorithms, report.strategy.probs, result.evaluations):
        methods = "+".join(ev.attack_plan.methods) or "(none)"
        print(f"{alg.id:<20} {p:>8.4f} {ev.p_succ_star:>8.4f}  {methods}")
    print()
    caps = instance.budgets
    for key, cap in (
        ("op", caps.c_op_max),
        ("cpu", caps.c_cpu_max),
        ("mem", caps.c_mem_max),
        ("latency", caps.t_max),
    ):
        print(f"usage {key:<10} {report.usage[key]:>14.4f} / {cap:g}")
    print(f"usage resilience {report.usage['resilience']:>12.4f} >= {caps.r_min:g}")

    if args.out:
        payload = {
            "objective": report.objective,
            "expected_breach": report.expected_breach,
            "strategy": {
                alg.id: p for alg, p in zip(instance.algorithms, report.strategy.probs)
            },
            "usage": dict(report.usage),
            "binding": list(report.binding_labels),
        }
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
        print(f"\nwrote {args.out}")


if __name__ == "__main__":
    main()
