#!/usr/bin/env python3
"""Simulated recycling rates next to the no-recycling closed forms.

For each probability on the grid, runs the two recycling simulations that
target the closed-form schemes (EO gate fed by eo-greed-paired, CZ gate
fed by paired-greed) and prints them beside the closed-form rates.  The
simulated columns should dominate both formulas wherever the formulas are
defined.

    python3 scripts/analytic_comparison.py
    python3 scripts/analytic_comparison.py --p-grid 0.1:0.5:0.05 --replicas 10
"""

import argparse
import sys

from clustergrow.analytic import barrett_kok_rate, duan_raussendorf_rate
from clustergrow.cli import _fmt, _parse_p_grid
from clustergrow.engine import SimConfig, run_replicas
from clustergrow.gates import GateKind, GateModel
from clustergrow.strategies import StrategyKind

COLUMNS = "p,barrett_kok_rate,duan_raussendorf_rate,eo_recycling_rate,cz_recycling_rate"


def simulated(gate_kind, strategy, p, bins, steps, replicas, seed):
    config = SimConfig(
        gate=GateModel(gate_kind, p),
        strategy=strategy,
        max_len=bins,
        steps=steps,
        seed=seed,
    )
    return run_replicas(config, replicas).mean_rate


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--p-grid", default="0.1:0.9:0.1")
    parser.add_argument("--bins", type=int, default=50)
    parser.add_argument("--steps", type=int, default=500_000)
    parser.add_argument("--replicas", type=int, default=5)
    parser.add_argument("--seed", type=int, default=1)
    parser.add_argument("--output")
    args = parser.parse_args()

    lines = [COLUMNS]
    for token in _parse_p_grid(args.p_grid):
        p = float(token)
        try:
            bk = _fmt(barrett_kok_rate(p))
        except ValueError:
            bk = "out-of-domain"
        dr = _fmt(duan_raussendorf_rate(p))
        eo = simulated(
            GateKind.EO, StrategyKind.EO_GREED_PAIRED, p,
            args.bins, args.steps, args.replicas, args.seed,
        )
        cz = simulated(
            GateKind.CZ, StrategyKind.PAIRED_GREED, p,
            args.bins, args.steps, args.replicas, args.seed,
        )
        lines.append(f"{token},{bk},{dr},{_fmt(eo)},{_fmt(cz)}")

    text = "\n".join(lines) + "\n"
    if args.output:
        with open(args.output, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
