"""Population of linear cluster chains, binned by length.

The state of the growth process is a population vector: how many chains of
each length 2..max_len are currently resident.  Length-1 chains (fresh
single qubits) live in an implicit infinite bin, so drawing one always
succeeds and is only tallied in ``singles_drawn``.  A chain pushed past
``max_len`` is complete: it leaves the system and its qubits accumulate in
``spilled_qubits``.

Qubit accounting is exact.  After every update,

    spilled_qubits + qubits_lost + resident_qubits == singles_drawn

since qubits enter the system only by drawing singles and leave only by
spilling or by being measured out on gate failure.
"""

from __future__ import annotations

from bisect import insort
from typing import Iterator, Mapping

__all__ = ["PopulationVector", "new_pool"]


class PopulationVector:
    """Counts of resident chains by length, plus cumulative accounting.

    ``counts[l]`` is the number of resident chains of length ``l`` for
    ``2 <= l <= max_len``; entries 0 and 1 are unused and stay zero.
    ``chain_count`` and ``resident_qubits`` are maintained incrementally so
    strategies and conservation checks never have to rescan the bins.
    """

    __slots__ = (
        "max_len",
        "counts",
        "spilled_qubits",
        "singles_drawn",
        "qubits_lost",
        "chain_count",
        "resident_qubits",
        "_occupied",
    )

    def __init__(self, max_len: int) -> None:
        if not isinstance(max_len, int) or isinstance(max_len, bool) or max_len < 2:
            raise ValueError(f"max_len must be an integer >= 2, got {max_len!r}")
        self.max_len = max_len
        self.counts: list[int] = [0] * (max_len + 1)
        self.spilled_qubits = 0
        self.singles_drawn = 0
        self.qubits_lost = 0
        self.chain_count = 0
        self.resident_qubits = 0
        # ascending lengths in 2..max_len with counts > 0
        self._occupied: list[int] = []

    @classmethod
    def from_counts(cls, max_len: int, counts: Mapping[int, int]) -> "PopulationVector":
        """Build a pool holding the given chains, with zeroed accounting."""
        pool = cls(max_len)
        for length, n in counts.items():
            if not 2 <= length <= max_len:
                raise ValueError(f"length {length} outside 2..{max_len}")
            if n < 0:
                raise ValueError(f"negative count for length {length}")
            if n:
                pool.counts[length] = n
                pool.chain_count += n
                pool.resident_qubits += length * n
                insort(pool._occupied, length)
        return pool

    def take_chain(self, l: int) -> None:
        """Remove one chain of length ``l``.

        Length 1 always succeeds (infinite bin) and bumps ``singles_drawn``.
        Taking from an empty bin is a caller bug and raises.
        """
        if l == 1:
            self.singles_drawn += 1
            return
        if l < 2 or l > self.max_len or self.counts[l] < 1:
            raise ValueError(f"no chain of length {l} available")
        c = self.counts[l] - 1
        self.counts[l] = c
        self.chain_count -= 1
        self.resident_qubits -= l
        if c == 0:
            self._occupied.remove(l)

    def insert_chain(self, l: int) -> None:
        """File a gate-rule output length back into the pool.

        l <= 0: the chain was wiped out by failure measurements; nothing to
        store (loss accounting is the caller's job, see engine.apply_bond).
        l == 1: the qubit rejoins the infinite bin; no-op here, the caller
        compensates via return_singles so conservation stays exact.
        l > max_len: the chain is complete and spills out of the system.
        """
        if l < 2:
            return
        if l > self.max_len:
            self.spilled_qubits += l
            return
        c = self.counts[l]
        self.counts[l] = c + 1
        self.chain_count += 1
        self.resident_qubits += l
        if c == 0:
            insort(self._occupied, l)

    def return_singles(self, n: int) -> None:
        """Credit ``n`` surviving qubits back to the infinite bin.

        Gate failures can leave unentangled qubits that may be re-prepared;
        they cancel against earlier draws so the conservation identity and
        the long-run meaning of ``singles_drawn`` (net qubits fed into the
        system) are preserved.
        """
        self.singles_drawn -= n

    def occupied_lengths(self) -> list[int]:
        """Ascending lengths with at least one chain; bin 1 is always listed."""
        return [1, *self._occupied]

    def snapshot(self) -> dict[int, int]:
        """Non-empty bins 2..max_len as {length: count}."""
        return {l: self.counts[l] for l in self._occupied}

    def conservation_residual(self) -> int:
        """Zero iff the qubit conservation identity holds."""
        return self.singles_drawn - self.spilled_qubits - self.qubits_lost - self.resident_qubits

    def chains(self) -> Iterator[int]:
        """Resident chain lengths, ascending, one entry per chain."""
        for l in self._occupied:
            for _ in range(self.counts[l]):
                yield l

    def __repr__(self) -> str:
        body = ", ".join(f"{l}:{self.counts[l]}" for l in self._occupied)
        return f"PopulationVector(L={self.max_len}, {{{body}}})"


def new_pool(max_len: int) -> PopulationVector:
    """Fresh pool with all bins empty; only the infinite single-qubit bin."""
    return PopulationVector(max_len)
