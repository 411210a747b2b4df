#!/usr/bin/env python3
"""Compare the five gate types under the paired-greed strategy.

Rate against success probability for a 40-bin pool over 100,000 attempts
per point: enough to separate the gate families (merge-only CZ variants
versus the destructive fusions) across the probability axis.

    python3 scripts/gate_comparison.py
    python3 scripts/gate_comparison.py --output gates.csv
"""

import argparse
import sys

from clustergrow.cli import main as cli_main

ALL_GATES = "cz,klm-cz,fusion-1,fusion-2,eo"


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--gate", default=ALL_GATES)
    parser.add_argument("--strategy", default="paired-greed")
    parser.add_argument("--p-grid", default="0.05:1:0.05")
    parser.add_argument("--bins", default="40")
    parser.add_argument("--steps", default="100000")
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
