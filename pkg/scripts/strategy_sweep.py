#!/usr/bin/env python3
"""Sweep all seven selection strategies under the CZ gate.

Reproduces the headline strategy comparison: spillover rate against gate
success probability for a 50-bin pool over 50,000 attempts per point.
Writes per-replica records to stdout (or --output) plus the aggregate
file when an output path is given.

    python3 scripts/strategy_sweep.py
    python3 scripts/strategy_sweep.py --replicas 10 --output strategies.csv
"""

import argparse
import sys

from clustergrow.cli import main as cli_main

ALL_STRATEGIES = (
    "greed,modesty,random,paired-greed,paired-modesty,paired-random,eo-greed-paired"
)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--gate", default="cz")
    parser.add_argument("--strategy", default=ALL_STRATEGIES)
    parser.add_argument("--p-grid", default="0.05:1:0.05")
    parser.add_argument("--bins", default="50")
    parser.add_argument("--steps", default="50000")
    parser.add_argument("--replicas", default="1")
    parser.add_argument("--seed", default="1")
    parser.add_argument("--output")
    args = parser.parse_args()

    flags = [
        "sweep",
        "--gate", args.gate,
        "--strategy", args.strategy,
        "--p-grid", args.p_grid,
        "--bins", args.bins,
        "--steps", args.steps,
        "--replicas", args.replicas,
        "--seed", args.seed,
    ]
    if args.output:
        flags += ["--output", args.output]
    return cli_main(flags)


if __name__ == "__main__":
    sys.exit(main())
