"""Monte-Carlo growth engine.

One simulation step is one gate attempt: a strategy picks a pair of chain
lengths, one uniform draw decides success against ``p_gate``, and the gate
outcome is filed back into the pool.  The steady-state figure of merit is
the spillover rate

    rate = qubits delivered into complete chains / gate attempts

over the measurement window (everything after ``burn_in`` attempts).

Draw discipline, fixed so runs are reproducible across implementations:
each step consumes the strategy's selection draws first (two for RANDOM,
one for PAIRED_RANDOM, none otherwise), then exactly one success draw.

``run`` prefers a compiled kernel (same semantics, same SplitMix64 draw
sequence, roughly a hundredfold faster; see _kernel.py) and falls back to
the pure-Python path, which is the readable contract implementation.  The
two are interchangeable bit for bit.
"""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass, field
from typing import Optional

from .gates import GateKind, GateModel, outcome_accounting, outcome_rule
from .pool import PopulationVector, new_pool
from .rng import SplitMix64, replica_seed
from .strategies import StrategyKind, select_pair

try:
    from . import _kernel
except ImportError:  # pragma: no cover - numba not installed
    _kernel = None

__all__ = [
    "SimConfig",
    "SimResult",
    "ReplicaSet",
    "apply_bond",
    "step",
    "run",
    "run_replicas",
]


@dataclass(frozen=True)
class SimConfig:
    """Everything that determines a run, so equal configs give equal results."""

    gate: GateModel
    strategy: StrategyKind
    max_len: int = 50
    steps: int = 50_000
    burn_in: int = 0
    seed: int = 1

    def __post_init__(self) -> None:
        if self.max_len < 2:
            raise ValueError(f"max_len must be >= 2, got {self.max_len}")
        if self.steps < 1:
            raise ValueError(f"steps must be >= 1, got {self.steps}")
        if not 0 <= self.burn_in < self.steps:
            raise ValueError(
                f"burn_in must satisfy 0 <= burn_in < steps, got {self.burn_in}"
            )


@dataclass(frozen=True)
class SimResult:
    """Window tallies of one run; ``rate`` is spilled_qubits / ops."""

    rate: float
    spilled_qubits: int
    ops: int
    singles_drawn: int
    qubits_lost: int
    final_counts: dict[int, int] = field(repr=False)


@dataclass(frozen=True)
class ReplicaSet:
    """Independent replicas of one config, with mean and standard error."""

    results: tuple[SimResult, ...]
    mean_rate: float
    stderr: float


def apply_bond(
    pool: PopulationVector, kind: GateKind, l1: int, l2: int, success: bool
) -> None:
    """Bond two chains drawn from the pool and file the outcome.

    Removes the inputs, inserts every output length (destroyed entries are
    dropped, overlong chains spill), adds the measured qubits to
    ``qubits_lost`` and credits surviving unentangled qubits back to the
    infinite bin.  The conservation identity holds exactly afterwards.
    """
    pool.take_chain(l1)
    pool.take_chain(l2)
    outcome = outcome_rule(kind, l1, l2, success)
    for e in outcome:
        pool.insert_chain(e)
    lost, returned = outcome_accounting(kind, l1, l2, success, outcome)
    pool.qubits_lost += lost
    if returned:
        pool.return_singles(returned)


def step(
    pool: PopulationVector,
    gate: GateModel,
    strategy: StrategyKind,
    rng: SplitMix64,
) -> PopulationVector:
    """Execute one gate attempt in place and return the pool."""
    l1, l2 = select_pair(strategy, pool, rng)
    success = rng.random() < gate.p_gate
    apply_bond(pool, gate.kind, l1, l2, success)
    return pool


def _run_python(config: SimConfig) -> SimResult:
    pool = new_pool(config.max_len)
    rng = SplitMix64(config.seed)
    gate = config.gate
    strategy = config.strategy
    burn_in = config.burn_in
    base_spilled = base_singles = base_lost = 0
    for t in range(config.steps):
        if t == burn_in:
            base_spilled = pool.spilled_qubits
            base_singles = pool.singles_drawn
            base_lost = pool.qubits_lost
        step(pool, gate, strategy, rng)
    ops = config.steps - burn_in
    spilled = pool.spilled_qubits - base_spilled
    return SimResult(
        rate=spilled / ops,
        spilled_qubits=spilled,
        ops=ops,
        singles_drawn=pool.singles_drawn - base_singles,
        qubits_lost=pool.qubits_lost - base_lost,
        final_counts=pool.snapshot(),
    )


def _run_kernel(config: SimConfig) -> SimResult:
    spilled, singles, lost, counts, _ = _kernel.run_steps(
        config.max_len,
        config.steps,
        config.burn_in,
        config.gate.p_gate,
        int(config.gate.kind),
        int(config.strategy),
        config.seed,
    )
    ops = config.steps - config.burn_in
    final = {l: int(counts[l]) for l in range(2, config.max_len + 1) if counts[l]}
    return SimResult(
        rate=spilled / ops,
        spilled_qubits=int(spilled),
        ops=ops,
        singles_drawn=int(singles),
        qubits_lost=int(lost),
        final_counts=final,
    )


def run(config: SimConfig, use_kernel: Optional[bool] = None) -> SimResult:
    """Run one replica from an empty pool.

    ``use_kernel=None`` picks the compiled path when available; forcing
    either path gives identical results (tests enforce the parity).
    """
    if use_kernel is None:
        use_kernel = _kernel is not None
    if use_kernel:
        if _kernel is None:
            raise RuntimeError("compiled kernel unavailable (numba not importable)")
        return _run_kernel(config)
    return _run_python(config)


def run_replicas(
    config: SimConfig, replicas: int, use_kernel: Optional[bool] = None
) -> ReplicaSet:
    """Run independent replicas and aggregate.

    Replica k reuses ``config`` with seed ``replica_seed(config.seed, k)``.
    Results are ordered by replica index regardless of how they were
    executed, so aggregation is deterministic.  ``stderr`` is the sample
    standard deviation over replica rates divided by sqrt(replicas), and 0
    for a single replica.
    """
    if replicas < 1:
        raise ValueError(f"replicas must be >= 1, got {replicas}")
    results = []
    for k in range(replicas):
        cfg = SimConfig(
            gate=config.gate,
            strategy=config.strategy,
            max_len=config.max_len,
            steps=config.steps,
            burn_in=config.burn_in,
            seed=replica_seed(config.seed, k),
        )
        results.append(run(cfg, use_kernel=use_kernel))
    rates = [r.rate for r in results]
    mean = statistics.fmean(rates)
    stderr = 0.0
    if replicas > 1:
        stderr = statistics.stdev(rates) / math.sqrt(replicas)
    return ReplicaSet(results=tuple(results), mean_rate=mean, stderr=stderr)
