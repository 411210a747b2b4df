"""Pair-selection strategies: which two chains to bond next.

Every strategy returns a ``PairSelection`` with ``l1 >= l2``.  A length of
1 means a fresh single qubit from the infinite bin, so a selection is
always possible, even from an empty pool.

    GREED            largest chain, bonded to the next largest (or to a
                     single if it is alone); two equal largest pair up.
    MODESTY          the two smallest chains of length >= 2 bond with each
                     other; with fewer than two such chains it bonds
                     (1, 1) to grow a partner instead of risking the one
                     chain it has.
    RANDOM           two independent uniform picks over occupied bins
                     (bin 1 included); the second pick excludes the first
                     chain itself but not its bin.
    PAIRED_GREED     largest length with two chains bonds (l, l);
                     otherwise (1, 1).
    PAIRED_MODESTY   smallest length with two chains bonds (l, l);
                     otherwise (1, 1).
    PAIRED_RANDOM    uniform over {lengths with two chains} plus the
                     always-eligible (1, 1).
    EO_GREED_PAIRED  any length-2 chain bonds with a single (the head-on
                     gate's sweet spot); otherwise PAIRED_GREED.

The paired strategies never mix lengths: equal inputs keep the bins
aligned on powers of two, which suits gates that trim on failure.
RANDOM and PAIRED_RANDOM consume draws from the supplied generator; all
other strategies are deterministic functions of the pool and accept
``rng=None``.
"""

from __future__ import annotations

import enum
from typing import NamedTuple, Optional, Protocol

from .pool import PopulationVector

__all__ = [
    "StrategyKind",
    "PairSelection",
    "select_pair",
    "selection_distribution",
]


class UniformSource(Protocol):
    def random(self) -> float: ...


class StrategyKind(enum.IntEnum):
    """Selection strategies, with stable integer codes shared by the kernel."""

    GREED = 0
    MODESTY = 1
    RANDOM = 2
    PAIRED_GREED = 3
    PAIRED_MODESTY = 4
    PAIRED_RANDOM = 5
    EO_GREED_PAIRED = 6

    @property
    def cli_name(self) -> str:
        return _CLI_NAMES[self]

    @property
    def needs_rng(self) -> bool:
        return self in (StrategyKind.RANDOM, StrategyKind.PAIRED_RANDOM)

    @classmethod
    def from_name(cls, name: str) -> "StrategyKind":
        """Resolve a command-line strategy name (case-insensitive)."""
        key = name.strip().lower()
        try:
            return _BY_CLI_NAME[key]
        except KeyError:
            known = ", ".join(sorted(_BY_CLI_NAME))
            raise ValueError(f"unknown strategy {name!r} (choose from: {known})") from None


_CLI_NAMES = {
    StrategyKind.GREED: "greed",
    StrategyKind.MODESTY: "modesty",
    StrategyKind.RANDOM: "random",
    StrategyKind.PAIRED_GREED: "paired-greed",
    StrategyKind.PAIRED_MODESTY: "paired-modesty",
    StrategyKind.PAIRED_RANDOM: "paired-random",
    StrategyKind.EO_GREED_PAIRED: "eo-greed-paired",
}
_BY_CLI_NAME = {name: kind for kind, name in _CLI_NAMES.items()}


class PairSelection(NamedTuple):
    """An ordered pair of chain lengths to bond, with l1 >= l2."""

    l1: int
    l2: int


def _greed(pool: PopulationVector) -> PairSelection:
    occ = pool._occupied
    if not occ:
        return PairSelection(1, 1)
    m = occ[-1]
    if pool.counts[m] >= 2:
        return PairSelection(m, m)
    if len(occ) >= 2:
        return PairSelection(m, occ[-2])
    return PairSelection(m, 1)


def _modesty(pool: PopulationVector) -> PairSelection:
    occ = pool._occupied
    if not occ:
        return PairSelection(1, 1)
    s = occ[0]
    if pool.counts[s] >= 2:
        return PairSelection(s, s)
    if len(occ) >= 2:
        return PairSelection(occ[1], s)
    # a lone chain waits while a partner is grown from singles
    return PairSelection(1, 1)


def _paired_greed(pool: PopulationVector) -> PairSelection:
    for l in reversed(pool._occupied):
        if pool.counts[l] >= 2:
            return PairSelection(l, l)
    return PairSelection(1, 1)


def _paired_modesty(pool: PopulationVector) -> PairSelection:
    for l in pool._occupied:
        if pool.counts[l] >= 2:
            return PairSelection(l, l)
    return PairSelection(1, 1)


def _eo_greed_paired(pool: PopulationVector) -> PairSelection:
    if pool.max_len >= 2 and pool.counts[2] >= 1:
        return PairSelection(2, 1)
    return _paired_greed(pool)


def _random_first_choices(pool: PopulationVector) -> list[int]:
    return pool.occupied_lengths()


def _random_second_choices(pool: PopulationVector, first: int) -> list[int]:
    # removing the first chain empties its bin only if it was the last one
    if first >= 2 and pool.counts[first] == 1:
        return [l for l in pool.occupied_lengths() if l != first]
    return pool.occupied_lengths()


def _paired_random_choices(pool: PopulationVector) -> list[int]:
    return [1, *(l for l in pool._occupied if pool.counts[l] >= 2)]


def _pick(choices: list[int], rng: UniformSource) -> int:
    return choices[int(rng.random() * len(choices))]


def select_pair(
    kind: StrategyKind, pool: PopulationVector, rng: Optional[UniformSource] = None
) -> PairSelection:
    """Choose the next pair of chain lengths to bond.

    ``rng`` must supply ``random()`` in [0, 1) and is required only for
    RANDOM and PAIRED_RANDOM; deterministic strategies ignore it.
    """
    if kind == StrategyKind.GREED:
        return _greed(pool)
    if kind == StrategyKind.MODESTY:
        return _modesty(pool)
    if kind == StrategyKind.PAIRED_GREED:
        return _paired_greed(pool)
    if kind == StrategyKind.PAIRED_MODESTY:
        return _paired_modesty(pool)
    if kind == StrategyKind.EO_GREED_PAIRED:
        return _eo_greed_paired(pool)
    if rng is None:
        raise ValueError(f"{kind.name} requires an rng")
    if kind == StrategyKind.RANDOM:
        a = _pick(_random_first_choices(pool), rng)
        b = _pick(_random_second_choices(pool, a), rng)
        return PairSelection(max(a, b), min(a, b))
    if kind == StrategyKind.PAIRED_RANDOM:
        l = _pick(_paired_random_choices(pool), rng)
        return PairSelection(l, l)
    raise ValueError(f"unknown strategy kind {kind!r}")


def selection_distribution(
    kind: StrategyKind, pool: PopulationVector
) -> list[tuple[float, PairSelection]]:
    """Exact selection law on this pool: [(probability, pair), ...].

    This is the same distribution ``select_pair`` samples from, enumerated
    instead of drawn; the exact-solver builds its transition branches from
    it so stochastic strategies share one source of truth.  Deterministic
    strategies yield a single unit-mass entry.  Pairs are unique and
    sorted; probabilities sum to 1.
    """
    if not kind.needs_rng:
        return [(1.0, select_pair(kind, pool))]
    acc: dict[PairSelection, float] = {}
    if kind == StrategyKind.RANDOM:
        first = _random_first_choices(pool)
        p_a = 1.0 / len(first)
        for a in first:
            second = _random_second_choices(pool, a)
            p_b = p_a / len(second)
            for b in second:
                pair = PairSelection(max(a, b), min(a, b))
                acc[pair] = acc.get(pair, 0.0) + p_b
    elif kind == StrategyKind.PAIRED_RANDOM:
        eligible = _paired_random_choices(pool)
        p_l = 1.0 / len(eligible)
        for l in eligible:
            pair = PairSelection(l, l)
            acc[pair] = acc.get(pair, 0.0) + p_l
    else:
        raise ValueError(f"unknown strategy kind {kind!r}")
    return [(acc[pair], pair) for pair in sorted(acc)]
