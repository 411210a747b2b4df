"""Monte-Carlo simulator for growing long linear cluster states.

Chains of entangled qubits are grown from an infinite supply of singles by
non-deterministic entangling gates; completed chains spill out of a finite
population vector.  The package provides the stochastic engine, the
pair-selection strategies, closed-form no-recycling cost references, an
exact Markov-chain solver for small pools, and a CLI for sweeps.
"""

from .analytic import (
    BUILDABLE_LADDER,
    ChainCostTable,
    barrett_kok_rate,
    c_m,
    critical_length,
    duan_raussendorf_cost,
    duan_raussendorf_rate,
    expected_length_after_add,
    r_m,
)
from .engine import (
    ReplicaSet,
    SimConfig,
    SimResult,
    apply_bond,
    run,
    run_replicas,
    step,
)
from .gates import GateKind, GateModel, outcome_rule, qubits_lost_by
from .oracle import (
    MarkovChain,
    OracleError,
    StateSpaceTooLarge,
    Transition,
    build_chain,
    exact_rate,
    solve_stationary,
)
from .pool import PopulationVector, new_pool
from .rng import SplitMix64, replica_seed
from .strategies import PairSelection, StrategyKind, select_pair, selection_distribution

__version__ = "0.1.0"

__all__ = [
    "BUILDABLE_LADDER",
    "ChainCostTable",
    "GateKind",
    "GateModel",
    "MarkovChain",
    "OracleError",
    "PairSelection",
    "PopulationVector",
    "ReplicaSet",
    "SimConfig",
    "SimResult",
    "SplitMix64",
    "StateSpaceTooLarge",
    "StrategyKind",
    "Transition",
    "apply_bond",
    "barrett_kok_rate",
    "build_chain",
    "c_m",
    "critical_length",
    "duan_raussendorf_cost",
    "duan_raussendorf_rate",
    "exact_rate",
    "expected_length_after_add",
    "new_pool",
    "outcome_rule",
    "qubits_lost_by",
    "r_m",
    "replica_seed",
    "run",
    "run_replicas",
    "select_pair",
    "selection_distribution",
    "solve_stationary",
    "step",
    "__version__",
]
