#!/usr/bin/env python3
"""Sweep the exact DP over growing synthetic instances and report the
first method count whose solve time crosses the limit. That count is
the natural cutover point for the hybrid solver on this machine.

Writes the n,seconds series as CSV for plotting.
"""

import argparse

from cryptomix import CalibrationConfig, calibrate_threshold


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--time-limit", type=float, default=0.2, help="seconds per solve")
    parser.add_argument("--max-methods", type=int, default=500)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--csv", default="results/calibration.csv")
    args = parser.parse_args()

    config = CalibrationConfig(
        time_limit=args.time_limit,
        max_methods=args.max_methods,
        rng_seed=args.seed,
    )
    result = calibrate_threshold(config)

    last_n, last_t = result.series[-1]
    print(f"threshold: {result.threshold} methods")
    print(f"swept {len(result.series)} sizes; last solve n={last_n} took {last_t:.4f}s")
    if result.threshold == config.max_methods and last_t <= config.time_limit:
        print("no solve crossed the limit; threshold clamped to --max-methods")

    if args.csv:
        import os

        os.makedirs(os.path.dirname(args.csv) or ".", exist_ok=True)
        with open(args.csv, "w", encoding="utf-8") as fh:
            fh.write("n,seconds\n")
            for n, seconds in result.series:
                fh.write(f"{n},{seconds!r}\n")
        print(f"wrote {args.csv}")


if __name__ == "__main__":
    main()
