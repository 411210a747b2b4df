"""Exact steady-state spillover via the embedded Markov chain.

For deterministic-selection strategies (and stochastic ones on small
pools) the population vector follows a finite Markov chain over bin
occupancies.  ``build_chain`` enumerates the reachable states breadth
first, driving the very same ``selection_distribution`` and
``apply_bond`` code the simulator runs, so the chain cannot drift from
the simulated dynamics; only the enumeration is new.  ``exact_rate``
then solves for the stationary distribution of the recurrent class and
returns the expected spill per step, an independent check on the
Monte-Carlo estimates.

States are tuples of chain counts for bins 2..max_len.  Zero-probability
branches are pruned, which keeps p = 1 chains finite.  Strategies that
stockpile unboundedly (the RANDOM family can keep bonding singles) blow
past ``state_cap``; that is reported as an error rather than silently
truncating the chain.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .engine import apply_bond
from .gates import GateModel
from .pool import PopulationVector
from .strategies import StrategyKind, selection_distribution

__all__ = [
    "Transition",
    "MarkovChain",
    "StationaryResult",
    "OracleError",
    "StateSpaceTooLarge",
    "build_chain",
    "solve_stationary",
    "exact_rate",
]

_DENSE_LIMIT = 3000
_POWER_TOL = 1e-12
_POWER_MAX_SWEEPS = 1_000_000


class OracleError(RuntimeError):
    """The chain could not be built or solved as specified."""


class StateSpaceTooLarge(OracleError):
    """Reachable state count exceeded the cap; nothing was truncated."""

    def __init__(self, state_cap: int, discovered: int) -> None:
        super().__init__(
            f"reachable state space exceeds state_cap={state_cap} "
            f"(at least {discovered} states); raise the cap or pick a "
            f"strategy with bounded stockpiles"
        )
        self.state_cap = state_cap
        self.discovered = discovered


class Transition(NamedTuple):
    """One outgoing branch: probability, target state index, qubits spilled."""

    probability: float
    target: int
    spill: int


@dataclass(frozen=True)
class MarkovChain:
    """Reachable chain of a (strategy, gate, max_len) triple from empty."""

    gate: GateModel
    strategy: StrategyKind
    max_len: int
    states: tuple[tuple[int, ...], ...]
    transitions: tuple[tuple[Transition, ...], ...]
    start: int = 0

    @property
    def n_states(self) -> int:
        return len(self.states)


@dataclass(frozen=True)
class StationaryResult:
    """Stationary law on the recurrent class and how it was obtained."""

    class_indices: tuple[int, ...]
    pi: np.ndarray
    method: str


def _pool_from_state(state: tuple[int, ...], max_len: int) -> PopulationVector:
    return PopulationVector.from_counts(
        max_len, {l: state[l - 2] for l in range(2, max_len + 1) if state[l - 2]}
    )


def build_chain(
    strategy: StrategyKind,
    gate: GateModel,
    max_len: int,
    state_cap: int = 100_000,
) -> MarkovChain:
    """Enumerate every population state reachable from the empty pool.

    Each state's branches combine the strategy's exact selection law with
    the gate's success/failure split; branch application is the
    simulator's own bonding path, so spill and successor bookkeeping are
    shared, not reimplemented.  Raises StateSpaceTooLarge instead of
    truncating when more than ``state_cap`` states turn up.
    """
    if state_cap < 1:
        raise ValueError(f"state_cap must be >= 1, got {state_cap}")
    if max_len < 2:
        raise ValueError(f"max_len must be >= 2, got {max_len}")
    p = gate.p_gate
    empty = (0,) * (max_len - 1)
    index: dict[tuple[int, ...], int] = {empty: 0}
    states: list[tuple[int, ...]] = [empty]
    transitions: list[tuple[Transition, ...]] = []
    queue: deque[int] = deque([0])
    while queue:
        i = queue.popleft()
        state = states[i]
        law = selection_distribution(strategy, _pool_from_state(state, max_len))
        branches: list[Transition] = []
        total = 0.0
        for sel_p, (l1, l2) in law:
            for success, branch_p in ((True, p), (False, 1.0 - p)):
                prob = sel_p * branch_p
                if prob == 0.0:
                    continue
                work = _pool_from_state(state, max_len)
                apply_bond(work, gate.kind, l1, l2, success)
                succ_state = tuple(work.counts[2:])
                j = index.get(succ_state)
                if j is None:
                    if len(states) >= state_cap:
                        raise StateSpaceTooLarge(state_cap, len(states) + 1)
                    j = len(states)
                    index[succ_state] = j
                    states.append(succ_state)
                    queue.append(j)
                branches.append(Transition(prob, j, work.spilled_qubits))
                total += prob
        if abs(total - 1.0) > 1e-12:
            raise OracleError(
                f"branch probabilities sum to {total!r} != 1 in state {state}"
            )
        transitions.append(tuple(branches))
    return MarkovChain(
        gate=gate,
        strategy=strategy,
        max_len=max_len,
        states=tuple(states),
        transitions=tuple(transitions),
    )


def _recurrent_class(chain: MarkovChain) -> tuple[int, ...]:
    """The unique closed communicating class reachable from the start."""
    n = chain.n_states
    rows, cols = [], []
    for i, branches in enumerate(chain.transitions):
        for tr in branches:
            rows.append(i)
            cols.append(tr.target)
    adj = csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(n, n))
    _, labels = connected_components(adj, directed=True, connection="strong")
    open_comp = set()
    for i, branches in enumerate(chain.transitions):
        for tr in branches:
            if labels[tr.target] != labels[i]:
                open_comp.add(int(labels[i]))
    reachable = np.zeros(n, dtype=bool)
    stack = [chain.start]
    reachable[chain.start] = True
    while stack:
        i = stack.pop()
        for tr in chain.transitions[i]:
            if not reachable[tr.target]:
                reachable[tr.target] = True
                stack.append(tr.target)
    closed = {
        int(labels[i]) for i in range(n) if reachable[i] and labels[i] not in open_comp
    }
    if len(closed) != 1:
        raise OracleError(
            f"expected exactly one reachable closed class, found {len(closed)}"
        )
    target = closed.pop()
    return tuple(i for i in range(n) if labels[i] == target)


def _transition_matrix(chain: MarkovChain, nodes: tuple[int, ...]) -> np.ndarray:
    pos = {i: k for k, i in enumerate(nodes)}
    m = len(nodes)
    P = np.zeros((m, m))
    for i in nodes:
        for tr in chain.transitions[i]:
            # a closed class has no branches leaving it
            P[pos[i], pos[tr.target]] += tr.probability
    return P


def _power_iteration(P: np.ndarray) -> np.ndarray:
    # iterate the lazy chain (P + I)/2: same stationary law, and the added
    # self-loops kill the oscillation of periodic chains
    m = P.shape[0]
    pi = np.full(m, 1.0 / m)
    for _ in range(_POWER_MAX_SWEEPS):
        nxt = 0.5 * (pi @ P + pi)
        delta = np.abs(nxt - pi).sum()
        pi = nxt
        if delta < _POWER_TOL:
            pi /= pi.sum()
            return pi
    raise OracleError("power iteration failed to converge")


def solve_stationary(chain: MarkovChain) -> StationaryResult:
    """Stationary distribution of the recurrent class.

    Solves pi P = pi, sum(pi) = 1 directly (one balance equation swapped
    for the normalization row); falls back to damped power iteration when
    the dense solve is unavailable or numerically off.
    """
    nodes = _recurrent_class(chain)
    m = len(nodes)
    if m == 1:
        return StationaryResult(nodes, np.ones(1), "direct")
    P = _transition_matrix(chain, nodes)
    if m <= _DENSE_LIMIT:
        A = P.T - np.eye(m)
        A[-1, :] = 1.0
        b = np.zeros(m)
        b[-1] = 1.0
        try:
            pi = np.linalg.solve(A, b)
        except np.linalg.LinAlgError:
            pi = None
        if pi is not None and pi.min() > -1e-9:
            residual = np.abs(pi @ P - pi).max()
            if residual < 1e-10:
                pi = np.clip(pi, 0.0, None)
                pi /= pi.sum()
                return StationaryResult(nodes, pi, "direct")
    return StationaryResult(nodes, _power_iteration(P), "power")


def exact_rate(chain: MarkovChain) -> float:
    """Expected qubits spilled per step in steady state."""
    stat = solve_stationary(chain)
    rate = 0.0
    for weight, i in zip(stat.pi, stat.class_indices):
        spill = 0.0
        for tr in chain.transitions[i]:
            spill += tr.probability * tr.spill
        rate += weight * spill
    return rate
