"""Compiled fast path for the Monte-Carlo loop.

Same step semantics as engine.step (pool bins, gate outcome rules,
strategy scans) specialized over integer gate/strategy codes on a bare
int64 counts array, with the same SplitMix64 draw sequence.  Parity with
the pure-Python path is enforced bit for bit by the engine tests: window
tallies, final bin counts and final generator state must all agree, so
any edit here must keep the two paths exactly interchangeable.

Strategy codes follow StrategyKind, gate codes follow GateKind.  Selection
draws map a uniform double onto an index with int(u * n), identical to the
reference, and candidate bins are ranked ascending with the infinite
single-qubit bin first.
"""

from __future__ import annotations

import numpy as np
from numba import njit

__all__ = ["run_steps"]

_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_S30 = np.uint64(30)
_S27 = np.uint64(27)
_S31 = np.uint64(31)
_S11 = np.uint64(11)
_DOUBLE_UNIT = 1.0 / 9007199254740992.0


@njit(cache=True)
def _sim(counts, steps, burn_in, p, gate, strat, state):
    L = counts.shape[0] - 1
    spilled = 0
    singles = 0
    lost = 0
    base_spilled = 0
    base_singles = 0
    base_lost = 0
    for t in range(steps):
        if t == burn_in:
            base_spilled = spilled
            base_singles = singles
            base_lost = lost

        # selection: draws (if any) come before the success draw
        l1 = 1
        l2 = 1
        if strat == 0:  # greed
            m = 0
            for l in range(L, 1, -1):
                if counts[l] > 0:
                    m = l
                    break
            if m > 0:
                if counts[m] >= 2:
                    l1 = m
                    l2 = m
                else:
                    l1 = m
                    l2 = 1
                    for l in range(m - 1, 1, -1):
                        if counts[l] > 0:
                            l2 = l
                            break
        elif strat == 1:  # modesty
            s = 0
            for l in range(2, L + 1):
                if counts[l] > 0:
                    s = l
                    break
            if s > 0:
                if counts[s] >= 2:
                    l1 = s
                    l2 = s
                else:
                    s2 = 0
                    for l in range(s + 1, L + 1):
                        if counts[l] > 0:
                            s2 = l
                            break
                    if s2 > 0:
                        l1 = s2
                        l2 = s
        elif strat == 2:  # random
            n = 1
            for l in range(2, L + 1):
                if counts[l] > 0:
                    n += 1
            state = state + _GAMMA
            z = state
            z = (z ^ (z >> _S30)) * _MIX1
            z = (z ^ (z >> _S27)) * _MIX2
            z = z ^ (z >> _S31)
            u = np.float64(z >> _S11) * _DOUBLE_UNIT
            i = int(u * n)
            a = 1
            if i > 0:
                k = 0
                for l in range(2, L + 1):
                    if counts[l] > 0:
                        k += 1
                        if k == i:
                            a = l
                            break
            # the first bin drops out of the second pick only if its lone
            # chain is already in hand
            excl = 0
            if a >= 2 and counts[a] == 1:
                excl = a
            n2 = n - 1 if excl > 0 else n
            state = state + _GAMMA
            z = state
            z = (z ^ (z >> _S30)) * _MIX1
            z = (z ^ (z >> _S27)) * _MIX2
            z = z ^ (z >> _S31)
            u = np.float64(z >> _S11) * _DOUBLE_UNIT
            j = int(u * n2)
            b = 1
            if j > 0:
                k = 0
                for l in range(2, L + 1):
                    if counts[l] > 0 and l != excl:
                        k += 1
                        if k == j:
                            b = l
                            break
            if a >= b:
                l1 = a
                l2 = b
            else:
                l1 = b
                l2 = a
        elif strat == 3:  # paired greed
            for l in range(L, 1, -1):
                if counts[l] >= 2:
                    l1 = l
                    l2 = l
                    break
        elif strat == 4:  # paired modesty
            for l in range(2, L + 1):
                if counts[l] >= 2:
                    l1 = l
                    l2 = l
                    break
        elif strat == 5:  # paired random
            n = 1
            for l in range(2, L + 1):
                if counts[l] >= 2:
                    n += 1
            state = state + _GAMMA
            z = state
            z = (z ^ (z >> _S30)) * _MIX1
            z = (z ^ (z >> _S27)) * _MIX2
            z = z ^ (z >> _S31)
            u = np.float64(z >> _S11) * _DOUBLE_UNIT
            i = int(u * n)
            if i > 0:
                k = 0
                for l in range(2, L + 1):
                    if counts[l] >= 2:
                        k += 1
                        if k == i:
                            l1 = l
                            l2 = l
                            break
        else:  # eo greed paired
            if counts[2] >= 1:
                l1 = 2
                l2 = 1
            else:
                for l in range(L, 1, -1):
                    if counts[l] >= 2:
                        l1 = l
                        l2 = l
                        break

        # take the inputs
        if l1 == 1:
            singles += 1
        else:
            counts[l1] -= 1
        if l2 == 1:
            singles += 1
        else:
            counts[l2] -= 1

        # success draw
        state = state + _GAMMA
        z = state
        z = (z ^ (z >> _S30)) * _MIX1
        z = (z ^ (z >> _S27)) * _MIX2
        z = z ^ (z >> _S31)
        u = np.float64(z >> _S11) * _DOUBLE_UNIT
        success = u < p

        # gate outcome, up to three raw output lengths
        o1 = 0
        o2 = 0
        o3 = 0
        if gate == 0:  # cz
            if success:
                o1 = l1 + l2
            else:
                o1 = l1 - 2
                o2 = l2 - 2
        elif gate == 1:  # klm cz
            if success:
                o1 = l1 + l2
            else:
                o1 = l1 - 1
                o2 = l2 - 1
        elif gate == 2:  # type-i fusion
            if success:
                o1 = l1 + l2 - 1
            else:
                o1 = l1 - 1
                o2 = l2 - 1
        elif gate == 3:  # type-ii fusion
            if success:
                o1 = l1 + l2 - 2
            else:
                o1 = l1 - 1
                o2 = l2 - 1
        else:  # eo
            if l2 == 1:
                if success:
                    o1 = l1 + 1
                else:
                    o1 = l1 - 1
                    o2 = 1
                    o3 = 1
            else:
                if success:
                    o1 = l1 + l2 - 1
                else:
                    o1 = l1 - 1
                    o2 = l2 - 1

        # file the outputs (entries <= 0 were destroyed; o2/o3 use 0 for
        # "absent", which the same guard skips)
        kept = 0
        ones = 0
        if o1 >= 2:
            kept += o1
            if o1 > L:
                spilled += o1
            else:
                counts[o1] += 1
        elif o1 == 1:
            ones += 1
        if o2 >= 2:
            kept += o2
            if o2 > L:
                spilled += o2
            else:
                counts[o2] += 1
        elif o2 == 1:
            ones += 1
        if o3 == 1:
            ones += 1

        lost_step = l1 + l2 - kept - ones
        if ones > 0 and gate == 4 and (not success) and l2 == 1:
            # one raw unit entry is the measured-off chain end, not a survivor
            ones -= 1
            lost_step += 1
        lost += lost_step
        singles -= ones

    return (
        spilled - base_spilled,
        singles - base_singles,
        lost - base_lost,
        state,
    )


def run_steps(max_len, steps, burn_in, p, gate, strat, seed):
    """Run the compiled loop from an empty pool.

    Returns (spilled, singles_drawn, qubits_lost, counts, rng_state); the
    first three are window tallies past ``burn_in``, ``counts`` is the
    final bin occupancy array indexed by length, and ``rng_state`` is the
    final SplitMix64 state word for parity checks.
    """
    counts = np.zeros(max_len + 1, dtype=np.int64)
    state0 = np.uint64(seed & 0xFFFFFFFFFFFFFFFF)
    spilled, singles, lost, state = _sim(
        counts, steps, burn_in, float(p), int(gate), int(strat), state0
    )
    return int(spilled), int(singles), int(lost), counts, int(state)
