"""Closed-form chain-building costs: frozen values and scaling laws."""

import math

from hypothesis import given
from hypothesis import strategies as st
import pytest

from clustergrow.analytic import (
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

REL = 1e-9

# hand-expanded attempt counts, worked out once by hand from
#   R_2 = 1/p,  R_{m+1} = (R_m + 1)/p  (m = 2, 3),
#   R_{2k-1} = (2 R_k + 1)/p          (k = 3, 5, 9)
EXPANSIONS = {
    3: lambda p: (1 + p) / p**2,
    4: lambda p: (1 + p + p**2) / p**3,
    5: lambda p: (2 + 2 * p + p**2) / p**3,
    9: lambda p: (4 + 4 * p + 2 * p**2 + p**3) / p**4,
    17: lambda p: (8 + 8 * p + 4 * p**2 + 2 * p**3 + p**4) / p**5,
}


@pytest.mark.parametrize(
    "m, expected",
    [(2, 2.0), (3, 6.0), (4, 14.0), (5, 26.0), (9, 106.0), (17, 426.0)],
)
def test_attempt_counts_at_one_half(m, expected):
    assert r_m(m, 0.5) == pytest.approx(expected, rel=REL)


def test_attempt_counts_at_one():
    assert r_m(2, 1.0) == pytest.approx(1.0, rel=REL)
    assert r_m(3, 1.0) == pytest.approx(2.0, rel=REL)
    assert r_m(5, 1.0) == pytest.approx(5.0, rel=REL)


@pytest.mark.parametrize("m", sorted(EXPANSIONS))
@pytest.mark.parametrize("p", [0.11, 0.2, 0.35, 0.5, 0.77, 0.9, 1.0])
def test_recursion_matches_hand_expansions(m, p):
    assert r_m(m, p) == pytest.approx(EXPANSIONS[m](p), rel=REL)


def test_doubling_extends_past_the_plotted_ladder():
    # 33 = 2^5 + 1 is buildable even though the rate schedule stops at 17
    assert r_m(33, 0.5) == pytest.approx((2 * 426 + 1) / 0.5, rel=REL)


@pytest.mark.parametrize("m", [1, 6, 7, 8, 10, 12, 16, 18])
def test_non_buildable_lengths_rejected(m):
    with pytest.raises(ValueError):
        r_m(m, 0.5)


@pytest.mark.parametrize("p", [0.0, -0.1, 1.2])
def test_bad_probability_rejected(p):
    for fn in (r_m, c_m):
        with pytest.raises(ValueError):
            fn(3, p)
    for fn in (critical_length, barrett_kok_rate, duan_raussendorf_rate):
        with pytest.raises(ValueError):
            fn(p)


def test_cost_per_qubit_values():
    assert c_m(3, 0.5) == pytest.approx(14.0, rel=REL)
    assert c_m(2, 1.0) == pytest.approx(2.0, rel=REL)


@pytest.mark.parametrize("m, p", [(5, 0.2), (3, 1 / 3), (4, 0.25), (2, 0.5)])
def test_cost_diverges_at_or_below_breakeven(m, p):
    with pytest.raises(ValueError):
        c_m(m, p)


def test_expected_length_after_add():
    assert expected_length_after_add(10, 3, 0.5) == pytest.approx(10.5, rel=REL)
    assert expected_length_after_add(10, 2, 0.5) == pytest.approx(10.0, rel=REL)
    assert expected_length_after_add(1, 1, 1.0) == pytest.approx(1.0, rel=REL)
    with pytest.raises(ValueError):
        expected_length_after_add(0, 3, 0.5)


@pytest.mark.parametrize(
    "p, expected",
    [(0.5, 3), (1.0, 2), (0.2, 6), (1 / 3, 4), (0.9, 2), (0.26, 4)],
)
def test_critical_length(p, expected):
    # the breakeven inequality is strict: 5 * 0.2 = 1 is not enough
    assert critical_length(p) == expected


def test_rate_schedule_picks_smallest_viable_block():
    assert barrett_kok_rate(0.5) == pytest.approx(1 / 14, rel=REL)
    assert barrett_kok_rate(1.0) == pytest.approx(0.5, rel=REL)
    assert barrett_kok_rate(0.3) == pytest.approx(1 / c_m(4, 0.3), rel=REL)
    assert barrett_kok_rate(0.24) == pytest.approx(1 / c_m(5, 0.24), rel=REL)
    assert barrett_kok_rate(0.15) == pytest.approx(1 / c_m(9, 0.15), rel=REL)
    assert barrett_kok_rate(0.1) == pytest.approx(1 / c_m(17, 0.1), rel=REL)


def test_rate_schedule_runs_out_below_one_seventeenth():
    with pytest.raises(ValueError):
        barrett_kok_rate(0.058)
    with pytest.raises(ValueError):
        barrett_kok_rate(0.01)


def test_double_and_splice_cost():
    assert duan_raussendorf_cost(0.5) == pytest.approx(40.5, rel=REL)
    assert duan_raussendorf_cost(1.0) == pytest.approx(2.5, rel=REL)
    assert duan_raussendorf_rate(0.5) == pytest.approx(1 / 40.5, rel=REL)
    assert duan_raussendorf_rate(1.0) == pytest.approx(0.4, rel=REL)


def test_longer_chains_cost_more():
    for p in (0.2, 0.5, 0.8, 1.0):
        costs = [r_m(m, p) for m in BUILDABLE_LADDER]
        assert all(a < b for a, b in zip(costs, costs[1:]))


def test_costs_decrease_with_success_probability():
    grid = [0.15, 0.3, 0.5, 0.7, 0.9, 1.0]
    for m in BUILDABLE_LADDER:
        values = [r_m(m, p) for p in grid]
        assert all(a > b for a, b in zip(values, values[1:]))
    duan = [duan_raussendorf_cost(p) for p in grid]
    assert all(a > b for a, b in zip(duan, duan[1:]))


def test_attempts_at_least_one_over_p():
    for p in (0.1, 0.4, 0.8, 1.0):
        for m in BUILDABLE_LADDER:
            assert r_m(m, p) >= 1.0 / p - 1e-12


@given(st.floats(min_value=0.07, max_value=1.0, allow_nan=False))
def test_rate_never_beats_one_qubit_per_attempt(p):
    rate = barrett_kok_rate(p)
    assert 0.0 < rate <= 1.0 + 1e-12


@given(st.floats(min_value=0.01, max_value=1.0, allow_nan=False))
def test_double_and_splice_rate_bounded(p):
    rate = duan_raussendorf_rate(p)
    assert 0.0 < rate <= 0.4 + 1e-12
    assert math.isfinite(rate)


def test_cost_table():
    table = ChainCostTable.for_probability(0.5)
    assert table.p_gate == 0.5
    assert table.costs == {2: 2.0, 3: 6.0, 4: 14.0, 5: 26.0, 9: 106.0, 17: 426.0}
    text = str(table)
    assert "p=0.5" in text
    assert "R_17" in text
    assert "426" in text


def test_cost_table_subset():
    table = ChainCostTable.for_probability(1.0, lengths=(2, 3))
    assert set(table.costs) == {2, 3}
