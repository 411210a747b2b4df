"""Closed-form costs for chain building without recycling.

These formulas price a length-m chain in fresh qubits when every failure
throws the damaged pieces away, so they bound what the pool simulator
(which recycles failure remnants) should beat.  All costs refer to a
two-qubit entangling attempt succeeding with probability p and trimming
one qubit from each side on failure.

``R_m(p)`` is the expected number of singles consumed to finish one
length-m chain, built by bonding two halves and retrying from scratch on
failure:

    R_2 = 1/p                  two singles, plus the failed attempts
    R_{k+1} = (R_k + 1) / p    grow by one single        (k = 2, 3)
    R_{2k-1} = (2 R_k + 1) / p  double two length-k halves

so the cheaply buildable lengths are {2, 3, 4} and the doubling ladder
{5, 9, 17, 33, ...} = {2^j + 1}.  Feeding completed m-chains into an
infinite target chain that loses one qubit per splice gives the per-qubit
cost

    c_m(p) = (R_m(p) + 1) / (m p - 1),

finite only above the breakeven length m > 1/p.  Two reference schemes:
the repeat-until-success scheme picks the smallest buildable m with
m p > 1 and delivers 1 / c_m(p) qubits per attempt, and the
double-and-splice scheme pays C(p) = (1/2) (2/p)^{log2(4/p + 1)} singles
per delivered qubit.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import log2
from typing import Mapping

__all__ = [
    "expected_length_after_add",
    "critical_length",
    "r_m",
    "c_m",
    "barrett_kok_rate",
    "duan_raussendorf_cost",
    "duan_raussendorf_rate",
    "ChainCostTable",
    "BUILDABLE_LADDER",
]

# smallest buildable lengths, in the order the rate schedule scans them
BUILDABLE_LADDER = (2, 3, 4, 5, 9, 17)


def _check_p(p: float) -> float:
    p = float(p)
    if not 0.0 < p <= 1.0:
        raise ValueError(f"p must be in (0, 1], got {p}")
    return p


def _is_buildable(m: int) -> bool:
    if m in (2, 3, 4):
        return True
    if m < 5:
        return False
    k = m - 1  # lengths 2^j + 1, j >= 2
    return k & (k - 1) == 0


def expected_length_after_add(n: int, m: int, p: float) -> float:
    """Expected chain length after bonding a length-m chain onto length n.

    Success (probability p) joins the chains minus the spliced qubit;
    failure trims one qubit off the long chain: n + m p - 1.
    """
    p = _check_p(p)
    if n < 1 or m < 1:
        raise ValueError(f"chain lengths must be >= 1, got ({n}, {m})")
    return n + m * p - 1


def critical_length(p: float) -> int:
    """Smallest m with m p > 1: shorter additions shrink the chain on average."""
    p = _check_p(p)
    m = 1
    while m * p <= 1.0:
        m += 1
    return m


def r_m(m: int, p: float) -> float:
    """Expected singles to build one length-m chain, restart-on-failure.

    Defined on the buildable set {2, 3, 4} and {2^j + 1, j >= 2}.
    """
    p = _check_p(p)
    if not _is_buildable(m):
        raise ValueError(
            f"m={m} is not buildable (choose 2, 3, 4 or 2^j + 1 with j >= 2)"
        )
    if m == 2:
        return 1.0 / p
    if m in (3, 4):
        return (r_m(m - 1, p) + 1.0) / p
    return (2.0 * r_m((m + 1) // 2, p) + 1.0) / p


def c_m(m: int, p: float) -> float:
    """Singles per delivered qubit when splicing length-m chains.

    Each splice adds m p - 1 qubits on average and consumes one finished
    m-chain plus one extra attempt qubit; below the breakeven length
    (m p <= 1) the chain never grows and the cost diverges.
    """
    p = _check_p(p)
    denom = m * p - 1.0
    if denom <= 0.0:
        raise ValueError(
            f"m={m} is at or below the breakeven length for p={p} (m*p <= 1)"
        )
    return (r_m(m, p) + 1.0) / denom


def barrett_kok_rate(p: float) -> float:
    """Delivered qubits per attempt for the repeat-until-success scheme.

    Uses the smallest buildable block length m with m p > 1 (strictly), so
    the schedule switches at p = 1/2, 1/3, 1/4, 1/5, 1/9; below p = 1/17
    the doubling table here runs out and the cost model needs longer
    blocks.
    """
    p = _check_p(p)
    for m in BUILDABLE_LADDER:
        if m * p > 1.0:
            return 1.0 / c_m(m, p)
    raise ValueError(
        f"p={p} is at or below 1/17; extend the doubling ladder for smaller p"
    )


def duan_raussendorf_cost(p: float) -> float:
    """Singles per delivered qubit for the double-and-splice scheme."""
    p = _check_p(p)
    return 0.5 * (2.0 / p) ** log2(4.0 / p + 1.0)


def duan_raussendorf_rate(p: float) -> float:
    """Delivered qubits per attempt for the double-and-splice scheme."""
    return 1.0 / duan_raussendorf_cost(p)


@dataclass(frozen=True)
class ChainCostTable:
    """R_m over the buildable ladder at one success probability."""

    p_gate: float
    costs: Mapping[int, float] = field(repr=False)

    @classmethod
    def for_probability(
        cls, p: float, lengths: tuple[int, ...] = BUILDABLE_LADDER
    ) -> "ChainCostTable":
        p = _check_p(p)
        return cls(p_gate=p, costs={m: r_m(m, p) for m in lengths})

    def __str__(self) -> str:
        rows = "\n".join(f"  R_{m:<3d} {cost:.6g}" for m, cost in self.costs.items())
        return f"ChainCostTable(p={self.p_gate:g})\n{rows}"
