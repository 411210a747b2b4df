"""Entangling-gate outcome rules.

Each gate type maps an ordered pair of chain lengths and a success flag to
the raw multiset of output lengths:

    gate            success         failure
    CZ              {l1+l2}         {l1-2, l2-2}
    KLM_CZ          {l1+l2}         {l1-1, l2-1}
    TYPE_I_FUSION   {l1+l2-1}       {l1-1, l2-1}
    TYPE_II_FUSION  {l1+l2-2}       {l1-1, l2-1}
    EO, l2 == 1     {l1+1}          {l1-1, 1, 1}
    EO, l2 >= 2     {l1+l2-1}       {l1-1, l2-1}

Arguments are order-normalized to l1 >= l2 before dispatch, so the EO
special case keys off min(l1, l2) == 1.  Raw outputs may contain entries
<= 0: those chains were wiped out by the failure measurements and the pool
discards them.  On an EO failure against a single, the lone fresh qubit
survives unentangled and is returned to the infinite bin, while one qubit
of the long chain is measured away; the net loss for that branch is
exactly 1 qubit.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

__all__ = [
    "GateKind",
    "GateModel",
    "outcome_rule",
    "qubits_lost_by",
    "outcome_accounting",
]


class GateKind(enum.IntEnum):
    """Gate types, with stable integer codes shared by the compiled kernel."""

    CZ = 0
    KLM_CZ = 1
    TYPE_I_FUSION = 2
    TYPE_II_FUSION = 3
    EO = 4

    @property
    def cli_name(self) -> str:
        return _CLI_NAMES[self]

    @classmethod
    def from_name(cls, name: str) -> "GateKind":
        """Resolve a command-line gate name (case-insensitive)."""
        key = name.strip().lower()
        try:
            return _BY_CLI_NAME[key]
        except KeyError:
            known = ", ".join(sorted(_BY_CLI_NAME))
            raise ValueError(f"unknown gate {name!r} (choose from: {known})") from None


_CLI_NAMES = {
    GateKind.CZ: "cz",
    GateKind.KLM_CZ: "klm-cz",
    GateKind.TYPE_I_FUSION: "fusion-1",
    GateKind.TYPE_II_FUSION: "fusion-2",
    GateKind.EO: "eo",
}
_BY_CLI_NAME = {name: kind for kind, name in _CLI_NAMES.items()}


@dataclass(frozen=True)
class GateModel:
    """A gate type together with its success probability."""

    kind: GateKind
    p_gate: float

    def __post_init__(self) -> None:
        if not 0.0 < self.p_gate <= 1.0:
            raise ValueError(f"p_gate must be in (0, 1], got {self.p_gate}")


def outcome_rule(kind: GateKind, l1: int, l2: int, success: bool) -> tuple[int, ...]:
    """Raw output lengths of bonding chains ``l1`` and ``l2``.

    Entries <= 0 are retained so callers can account for destroyed chains;
    the pool's insert path ignores them.
    """
    if l1 < 1 or l2 < 1:
        raise ValueError(f"chain lengths must be >= 1, got ({l1}, {l2})")
    if l2 > l1:
        l1, l2 = l2, l1
    if kind == GateKind.CZ:
        return (l1 + l2,) if success else (l1 - 2, l2 - 2)
    if kind == GateKind.KLM_CZ:
        return (l1 + l2,) if success else (l1 - 1, l2 - 1)
    if kind == GateKind.TYPE_I_FUSION:
        return (l1 + l2 - 1,) if success else (l1 - 1, l2 - 1)
    if kind == GateKind.TYPE_II_FUSION:
        return (l1 + l2 - 2,) if success else (l1 - 1, l2 - 1)
    if kind == GateKind.EO:
        if l2 == 1:
            return (l1 + 1,) if success else (l1 - 1, 1, 1)
        return (l1 + l2 - 1,) if success else (l1 - 1, l2 - 1)
    raise ValueError(f"unknown gate kind {kind!r}")


def outcome_accounting(
    kind: GateKind, l1: int, l2: int, success: bool, outcome: tuple[int, ...]
) -> tuple[int, int]:
    """Split an outcome into (qubits lost, singles returned).

    Losses are measured qubits: input qubits that end up neither in a kept
    chain (length >= 2, stored or spilled) nor back in the infinite bin.
    The only branch that returns a single is the EO failure against a
    single, whose raw output {l1-1, 1, 1} carries two unit entries: one is
    the surviving fresh qubit, the other is the measured-off chain end, so
    exactly one single comes back and exactly one qubit is lost.
    """
    if l2 > l1:
        l1, l2 = l2, l1
    kept = 0
    ones = 0
    for e in outcome:
        if e >= 2:
            kept += e
        elif e == 1:
            ones += 1
    lost = l1 + l2 - kept - ones
    if ones and kind == GateKind.EO and not success and l2 == 1:
        ones -= 1
        lost += 1
    return lost, ones


def qubits_lost_by(kind: GateKind, l1: int, l2: int, success: bool) -> int:
    """Qubits measured away (lost for good) by this gate application."""
    outcome = outcome_rule(kind, l1, l2, success)
    return outcome_accounting(kind, l1, l2, success, outcome)[0]
