"""Command-line front end: runs, sweeps, analytic tables, oracle checks.

Subcommands:

    simulate   one configuration, one output record
    sweep      cross product of gates x strategies x probabilities,
               per-replica records plus per-combination aggregates
    analytic   table of closed-form reference rates over a p grid
    oracle     exact Markov-chain rate for small pools, optionally
               cross-checked against a Monte-Carlo run

Output is CSV (default) or JSON with identical field names, printed with
12 significant digits; probability tokens are echoed exactly as given.
Runs are fully determined by their flags, so repeated invocations are
byte-identical.  An optional config file (one ``key = value`` per line,
keys mirroring flag names) supplies defaults; explicit flags win.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from pathlib import Path
from typing import Optional, Sequence

from .engine import ReplicaSet, SimConfig, run_replicas
from .gates import GateKind, GateModel
from .strategies import StrategyKind
from . import analytic as _analytic
from . import oracle as _oracle

__all__ = ["main", "SweepSpec"]

RECORD_COLUMNS = (
    "gate,strategy,p_gate,bins,steps,burn_in,seed,replica,spilled_qubits,ops,rate"
)
AGGREGATE_COLUMNS = "gate,strategy,p_gate,bins,steps,replicas,mean_rate,stderr"

_EO_WARNING = "EO physical maximum p=1/2"


class CliError(Exception):
    """User-facing input problem; message printed, nonzero exit."""


@dataclass(frozen=True)
class SweepSpec:
    """A resolved sweep: probability tokens plus the shared run settings."""

    gates: tuple[GateKind, ...]
    strategies: tuple[StrategyKind, ...]
    p_tokens: tuple[str, ...]
    bins: int
    steps: int
    burn_in: int
    seed: int
    replicas: int

    def __post_init__(self) -> None:
        if not self.p_tokens:
            raise CliError("empty p grid")
        if self.replicas < 1:
            raise CliError(f"replicas must be >= 1, got {self.replicas}")


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _parse_p_token(token: str) -> float:
    try:
        value = float(token)
    except ValueError:
        raise CliError(f"invalid probability {token!r}") from None
    if not 0.0 < value <= 1.0:
        raise CliError(f"probability must be in (0, 1], got {token}")
    return value


def _parse_p_grid(text: str) -> list[str]:
    parts = text.split(":")
    if len(parts) != 3:
        raise CliError(f"p grid must be start:stop:step, got {text!r}")
    try:
        start, stop, step_ = (Decimal(part) for part in parts)
    except InvalidOperation:
        raise CliError(f"p grid values must be decimal numbers, got {text!r}") from None
    if step_ <= 0:
        raise CliError(f"p grid step must be > 0, got {parts[2]}")
    if start > stop:
        raise CliError("empty p grid (start > stop)")
    tokens = []
    v = start
    while v <= stop:
        tokens.append(str(v.normalize()))
        v += step_
    return tokens


def _load_config_file(path: str) -> dict[str, str]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise CliError(f"cannot read config file {path}: {exc}") from None
    values: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep or not key.strip():
            raise CliError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        values[key.strip()] = value.strip()
    return values


class _Options:
    """Flag / config-file / builtin-default resolution, flags first."""

    def __init__(self, args: argparse.Namespace) -> None:
        self.args = args
        self.file_values = _load_config_file(args.config) if args.config else {}

    def get(self, key: str, default: Optional[str] = None) -> Optional[str]:
        flag = getattr(self.args, key.replace("-", "_"), None)
        if flag is not None:
            return str(flag)
        if key in self.file_values:
            return self.file_values[key]
        return default

    def require(self, key: str) -> str:
        value = self.get(key)
        if value is None:
            raise CliError(f"missing required option --{key}")
        return value

    def get_int(self, key: str, default: int) -> int:
        value = self.get(key)
        if value is None:
            return default
        try:
            return int(value)
        except ValueError:
            raise CliError(f"--{key} expects an integer, got {value!r}") from None

    def get_flag(self, key: str) -> bool:
        flag = getattr(self.args, key.replace("-", "_"), False)
        if flag:
            return True
        value = self.file_values.get(key)
        if value is None:
            return False
        lowered = value.lower()
        if lowered in ("1", "true", "yes", "on"):
            return True
        if lowered in ("0", "false", "no", "off"):
            return False
        raise CliError(f"--{key} expects a boolean, got {value!r}")


def _parse_gates(text: str) -> tuple[GateKind, ...]:
    try:
        return tuple(GateKind.from_name(part) for part in text.split(","))
    except ValueError as exc:
        raise CliError(str(exc)) from None


def _parse_strategies(text: str) -> tuple[StrategyKind, ...]:
    try:
        return tuple(StrategyKind.from_name(part) for part in text.split(","))
    except ValueError as exc:
        raise CliError(str(exc)) from None


def _resolve_p_tokens(opts: _Options) -> list[str]:
    p_value = opts.get("p")
    p_grid = opts.get("p-grid")
    if p_value is not None and p_grid is not None:
        raise CliError("give either --p or --p-grid, not both")
    if p_grid is not None:
        tokens = _parse_p_grid(p_grid)
    elif p_value is not None:
        tokens = [tok.strip() for tok in p_value.split(",") if tok.strip()]
    else:
        raise CliError("missing probability: give --p or --p-grid")
    if not tokens:
        raise CliError("empty p grid")
    for tok in tokens:
        _parse_p_token(tok)
    return tokens


def _warn_eo(gate: GateKind, token: str) -> None:
    if gate == GateKind.EO and _parse_p_token(token) > 0.5:
        print(f"warning: {_EO_WARNING} (requested p={token})", file=sys.stderr)


def _record_rows(
    gate: GateKind,
    strategy: StrategyKind,
    token: str,
    spec_bins: int,
    steps: int,
    burn_in: int,
    seed: int,
    result: ReplicaSet,
) -> list[list[str]]:
    rows = []
    for k, rep in enumerate(result.results):
        rows.append(
            [
                gate.cli_name,
                strategy.cli_name,
                token,
                str(spec_bins),
                str(steps),
                str(burn_in),
                str(seed),
                str(k),
                str(rep.spilled_qubits),
                str(rep.ops),
                _fmt(rep.rate),
            ]
        )
    return rows


def _aggregate_row(
    gate: GateKind,
    strategy: StrategyKind,
    token: str,
    spec_bins: int,
    steps: int,
    seed: int,
    replicas: int,
    result: ReplicaSet,
) -> list[str]:
    return [
        gate.cli_name,
        strategy.cli_name,
        token,
        str(spec_bins),
        str(steps),
        str(replicas),
        _fmt(result.mean_rate),
        _fmt(result.stderr),
    ]


def _record_obj(columns: str, row: list[str]) -> dict:
    obj: dict = {}
    for name, cell in zip(columns.split(","), row):
        if name in ("gate", "strategy"):
            obj[name] = cell
        elif name in ("p_gate", "rate", "mean_rate", "stderr"):
            obj[name] = float(cell)
        else:
            obj[name] = int(cell)
    return obj


def _csv_text(columns: str, rows: list[list[str]]) -> str:
    lines = [columns]
    lines.extend(",".join(row) for row in rows)
    return "\n".join(lines) + "\n"


def _write_text(path: str, text: str) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write(text)


def _aggregate_path(path: str) -> str:
    p = Path(path)
    if p.suffix:
        return str(p.with_suffix(f".agg{p.suffix}"))
    return str(p) + ".agg"


def _run_combos(spec: SweepSpec) -> tuple[list[list[str]], list[list[str]]]:
    """Execute the cross product in canonical order; rows come back sorted
    by (gate, strategy, p, replica) because that is the execution order."""
    records: list[list[str]] = []
    aggregates: list[list[str]] = []
    for gate in spec.gates:
        for strategy in spec.strategies:
            for token in spec.p_tokens:
                _warn_eo(gate, token)
                config = SimConfig(
                    gate=GateModel(gate, _parse_p_token(token)),
                    strategy=strategy,
                    max_len=spec.bins,
                    steps=spec.steps,
                    burn_in=spec.burn_in,
                    seed=spec.seed,
                )
                result = run_replicas(config, spec.replicas)
                records.extend(
                    _record_rows(
                        gate, strategy, token, spec.bins, spec.steps,
                        spec.burn_in, spec.seed, result,
                    )
                )
                aggregates.append(
                    _aggregate_row(
                        gate, strategy, token, spec.bins, spec.steps,
                        spec.seed, spec.replicas, result,
                    )
                )
    return records, aggregates


def _emit_records(
    records: list[list[str]],
    aggregates: list[list[str]],
    fmt: str,
    output: Optional[str],
    with_aggregates: bool,
) -> None:
    if fmt == "csv":
        record_text = _csv_text(RECORD_COLUMNS, records)
        aggregate_text = _csv_text(AGGREGATE_COLUMNS, aggregates)
        if output:
            _write_text(output, record_text)
            if with_aggregates:
                _write_text(_aggregate_path(output), aggregate_text)
        else:
            sys.stdout.write(record_text)
            if with_aggregates:
                sys.stdout.write("\n" + aggregate_text)
        return
    record_objs = [_record_obj(RECORD_COLUMNS, row) for row in records]
    aggregate_objs = [_record_obj(AGGREGATE_COLUMNS, row) for row in aggregates]
    if with_aggregates:
        payload: object = {"records": record_objs, "aggregates": aggregate_objs}
    else:
        payload = record_objs[0] if len(record_objs) == 1 else record_objs
    text = json.dumps(payload, indent=2) + "\n"
    if output:
        _write_text(output, text)
    else:
        sys.stdout.write(text)


def _common_run_settings(opts: _Options) -> tuple[int, int, int, int]:
    spec_bins = opts.get_int("bins", 50)
    steps = opts.get_int("steps", 50_000)
    burn_in = opts.get_int("burn-in", 0)
    seed = opts.get_int("seed", 1)
    if spec_bins < 2:
        raise CliError(f"--bins must be >= 2, got {spec_bins}")
    if steps < 1:
        raise CliError(f"--steps must be >= 1, got {steps}")
    if not 0 <= burn_in < steps:
        raise CliError(f"--burn-in must satisfy 0 <= burn_in < steps, got {burn_in}")
    return spec_bins, steps, burn_in, seed


def _cmd_simulate(args: argparse.Namespace) -> int:
    opts = _Options(args)
    gate = _parse_gates(opts.require("gate"))
    strategy = _parse_strategies(opts.require("strategy"))
    if len(gate) != 1 or len(strategy) != 1:
        raise CliError("simulate takes exactly one gate and one strategy")
    token = opts.require("p")
    _parse_p_token(token)
    spec_bins, steps, burn_in, seed = _common_run_settings(opts)
    spec = SweepSpec(
        gates=gate,
        strategies=strategy,
        p_tokens=(token,),
        bins=spec_bins,
        steps=steps,
        burn_in=burn_in,
        seed=seed,
        replicas=1,
    )
    records, _ = _run_combos(spec)
    fmt = opts.get("format", "csv")
    if fmt not in ("csv", "json"):
        raise CliError(f"--format must be csv or json, got {fmt!r}")
    _emit_records(records, [], fmt, opts.get("output"), with_aggregates=False)
    return 0


def _cmd_sweep(args: argparse.Namespace) -> int:
    opts = _Options(args)
    spec_bins, steps, burn_in, seed = _common_run_settings(opts)
    spec = SweepSpec(
        gates=_parse_gates(opts.require("gate")),
        strategies=_parse_strategies(opts.require("strategy")),
        p_tokens=tuple(_resolve_p_tokens(opts)),
        bins=spec_bins,
        steps=steps,
        burn_in=burn_in,
        seed=seed,
        replicas=opts.get_int("replicas", 1),
    )
    records, aggregates = _run_combos(spec)
    fmt = opts.get("format", "csv")
    if fmt not in ("csv", "json"):
        raise CliError(f"--format must be csv or json, got {fmt!r}")
    _emit_records(records, aggregates, fmt, opts.get("output"), with_aggregates=True)
    return 0


def _cmd_analytic(args: argparse.Namespace) -> int:
    opts = _Options(args)
    tokens = _resolve_p_tokens(opts)
    rows: list[list[str]] = []
    objs: list[dict] = []
    for token in tokens:
        p = _parse_p_token(token)
        try:
            bk: Optional[float] = _analytic.barrett_kok_rate(p)
        except ValueError:
            bk = None
        dr = _analytic.duan_raussendorf_rate(p)
        rows.append([token, _fmt(bk) if bk is not None else "out-of-domain", _fmt(dr)])
        objs.append(
            {
                "p": float(token),
                "barrett_kok_rate": float(_fmt(bk)) if bk is not None else None,
                "duan_raussendorf_rate": float(_fmt(dr)),
            }
        )
    fmt = opts.get("format", "csv")
    if fmt == "csv":
        text = _csv_text("p,barrett_kok_rate,duan_raussendorf_rate", rows)
    elif fmt == "json":
        text = json.dumps(objs, indent=2) + "\n"
    else:
        raise CliError(f"--format must be csv or json, got {fmt!r}")
    output = opts.get("output")
    if output:
        _write_text(output, text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_oracle(args: argparse.Namespace) -> int:
    opts = _Options(args)
    gates = _parse_gates(opts.require("gate"))
    strategies = _parse_strategies(opts.require("strategy"))
    if len(gates) != 1 or len(strategies) != 1:
        raise CliError("oracle takes exactly one gate and one strategy")
    gate_kind, strategy = gates[0], strategies[0]
    token = opts.require("p")
    p = _parse_p_token(token)
    spec_bins = opts.get_int("bins", 50)
    state_cap = opts.get_int("state-cap", 100_000)
    _warn_eo(gate_kind, token)
    gate = GateModel(gate_kind, p)
    try:
        chain = _oracle.build_chain(strategy, gate, spec_bins, state_cap=state_cap)
        stationary = _oracle.solve_stationary(chain)
        rate = _oracle.exact_rate(chain)
    except (_oracle.OracleError, ValueError) as exc:
        raise CliError(str(exc)) from None
    print(f"gate {gate_kind.cli_name}")
    print(f"strategy {strategy.cli_name}")
    print(f"p_gate {token}")
    print(f"bins {spec_bins}")
    print(f"states {chain.n_states}")
    print(f"recurrent_states {len(stationary.class_indices)}")
    print(f"method {stationary.method}")
    print(f"exact_rate {_fmt(rate)}")
    output = opts.get("output")
    if output:
        lines = []
        for i, branches in enumerate(chain.transitions):
            for tr in branches:
                lines.append(f"{i} {_fmt(tr.probability)} {tr.target} {tr.spill}")
        _write_text(output, "\n".join(lines) + "\n")
    if opts.get_flag("check"):
        steps = opts.get_int("steps", 1_000_000)
        burn_in = opts.get_int("burn-in", 0)
        seed = opts.get_int("seed", 1)
        replicas = opts.get_int("replicas", 10)
        config = SimConfig(
            gate=gate,
            strategy=strategy,
            max_len=spec_bins,
            steps=steps,
            burn_in=burn_in,
            seed=seed,
        )
        result = run_replicas(config, replicas)
        diff = abs(result.mean_rate - rate)
        if result.stderr > 0:
            sigma = diff / result.stderr
        else:
            sigma = 0.0 if diff == 0.0 else float("inf")
        print(f"mc_mean {_fmt(result.mean_rate)}")
        print(f"mc_stderr {_fmt(result.stderr)}")
        print(f"agree within {sigma:.2f} stderr")
    return 0


def _add_run_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--gate", help="gate name (comma list where allowed)")
    parser.add_argument("--strategy", help="strategy name (comma list where allowed)")
    parser.add_argument("--p", help="success probability (or comma list)")
    parser.add_argument("--bins", type=int, help="population vector size L")
    parser.add_argument("--steps", type=int, help="gate attempts per replica")
    parser.add_argument("--burn-in", type=int, help="attempts excluded from the rate")
    parser.add_argument("--seed", type=int, help="base RNG seed")
    parser.add_argument("--config", help="config file with key = value defaults")
    parser.add_argument("--output", help="write output to this path")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="clustergrow",
        description="Monte-Carlo growth of long linear cluster states",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sim = sub.add_parser("simulate", help="run one configuration")
    _add_run_flags(p_sim)
    p_sim.add_argument("--format", choices=("csv", "json"))
    p_sim.set_defaults(handler=_cmd_simulate)

    p_sweep = sub.add_parser("sweep", help="cross product of gates/strategies/p")
    _add_run_flags(p_sweep)
    p_sweep.add_argument("--p-grid", help="probability grid start:stop:step")
    p_sweep.add_argument("--replicas", type=int, help="independent replicas per point")
    p_sweep.add_argument("--format", choices=("csv", "json"))
    p_sweep.set_defaults(handler=_cmd_sweep)

    p_ana = sub.add_parser("analytic", help="closed-form reference rates")
    p_ana.add_argument("--p", help="probability (or comma list)")
    p_ana.add_argument("--p-grid", help="probability grid start:stop:step")
    p_ana.add_argument("--format", choices=("csv", "json"))
    p_ana.add_argument("--config", help="config file with key = value defaults")
    p_ana.add_argument("--output", help="write output to this path")
    p_ana.set_defaults(handler=_cmd_analytic)

    p_orc = sub.add_parser("oracle", help="exact rate for small pools")
    _add_run_flags(p_orc)
    p_orc.add_argument("--state-cap", type=int, help="max reachable states")
    p_orc.add_argument("--check", action="store_true", help="cross-check vs Monte-Carlo")
    p_orc.add_argument("--replicas", type=int, help="replicas for --check")
    p_orc.set_defaults(handler=_cmd_oracle)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.handler(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
