"""Population vector semantics: bins, spillover, and qubit accounting."""

from hypothesis import given
from hypothesis import strategies as st
import pytest

from clustergrow.pool import PopulationVector, new_pool


def test_new_pool_starts_empty():
    pool = new_pool(50)
    assert pool.max_len == 50
    assert all(c == 0 for c in pool.counts)
    assert pool.occupied_lengths() == [1]
    assert pool.spilled_qubits == 0
    assert pool.singles_drawn == 0
    assert pool.qubits_lost == 0
    assert pool.chain_count == 0
    assert pool.resident_qubits == 0


def test_new_pool_minimal_size():
    assert new_pool(2).max_len == 2


@pytest.mark.parametrize("bad", [1, 0, -3])
def test_new_pool_rejects_too_small(bad):
    with pytest.raises(ValueError):
        new_pool(bad)


def test_new_pool_rejects_non_integer():
    with pytest.raises(ValueError):
        new_pool(2.5)


def test_take_single_bumps_singles_drawn():
    pool = new_pool(5)
    pool.take_chain(1)
    pool.take_chain(1)
    assert pool.singles_drawn == 2
    assert pool.snapshot() == {}


def test_take_chain_decrements_bin():
    pool = PopulationVector.from_counts(5, {3: 1})
    pool.take_chain(3)
    assert pool.snapshot() == {}
    assert pool.chain_count == 0
    assert pool.resident_qubits == 0


def test_take_chain_from_empty_bin_is_an_error():
    pool = PopulationVector.from_counts(5, {3: 1})
    pool.take_chain(3)
    with pytest.raises(ValueError):
        pool.take_chain(3)
    with pytest.raises(ValueError):
        new_pool(5).take_chain(2)
    with pytest.raises(ValueError):
        new_pool(5).take_chain(6)


def test_insert_chain_stores_in_range_lengths():
    pool = new_pool(5)
    pool.insert_chain(3)
    pool.insert_chain(3)
    pool.insert_chain(5)
    assert pool.snapshot() == {3: 2, 5: 1}
    assert pool.chain_count == 3
    assert pool.resident_qubits == 11


def test_insert_chain_spills_past_max_len():
    pool = new_pool(50)
    pool.insert_chain(51)
    assert pool.spilled_qubits == 51
    assert pool.snapshot() == {}

    pool = new_pool(3)
    pool.insert_chain(4)
    assert pool.spilled_qubits == 4


def test_length_exactly_max_len_stays_resident():
    pool = new_pool(7)
    pool.insert_chain(7)
    assert pool.snapshot() == {7: 1}
    assert pool.spilled_qubits == 0


def test_insert_chain_drops_destroyed_and_single_entries():
    pool = new_pool(5)
    for l in (0, -1, -2, 1):
        pool.insert_chain(l)
    assert pool.snapshot() == {}
    # a returned single is credited separately, never via insert
    assert pool.singles_drawn == 0


def test_return_singles_credits_the_infinite_bin():
    pool = new_pool(5)
    pool.take_chain(1)
    pool.take_chain(1)
    pool.return_singles(1)
    assert pool.singles_drawn == 1


def test_occupied_lengths_sorted_with_bin_one_first():
    pool = PopulationVector.from_counts(9, {5: 2, 3: 1})
    assert pool.occupied_lengths() == [1, 3, 5]
    assert new_pool(4).occupied_lengths() == [1]


def test_occupied_lengths_excludes_emptied_bins():
    pool = PopulationVector.from_counts(9, {2: 1, 4: 1})
    pool.take_chain(2)
    assert pool.occupied_lengths() == [1, 4]


def test_from_counts_validates_lengths_and_counts():
    with pytest.raises(ValueError):
        PopulationVector.from_counts(5, {1: 1})
    with pytest.raises(ValueError):
        PopulationVector.from_counts(5, {6: 1})
    with pytest.raises(ValueError):
        PopulationVector.from_counts(5, {3: -1})
    # zero counts are allowed and ignored
    pool = PopulationVector.from_counts(5, {3: 0, 4: 2})
    assert pool.snapshot() == {4: 2}


def test_chains_iterates_each_resident_chain():
    pool = PopulationVector.from_counts(6, {2: 2, 5: 1})
    assert list(pool.chains()) == [2, 2, 5]


def test_repr_mentions_occupied_bins():
    pool = PopulationVector.from_counts(6, {4: 2})
    assert "4:2" in repr(pool)


def test_conservation_residual_tracks_all_flows():
    pool = new_pool(4)
    pool.take_chain(1)
    pool.take_chain(1)
    pool.insert_chain(2)  # pretend a bond succeeded
    assert pool.conservation_residual() == 0
    pool.take_chain(2)
    pool.take_chain(1)
    pool.insert_chain(3)
    assert pool.conservation_residual() == 0
    pool.take_chain(3)
    pool.take_chain(1)
    pool.insert_chain(4)
    assert pool.conservation_residual() == 0
    pool.take_chain(4)
    pool.take_chain(1)
    pool.insert_chain(5)  # spills out of an L=4 pool
    assert pool.spilled_qubits == 5
    assert pool.conservation_residual() == 0


_OPS = st.lists(
    st.one_of(
        st.tuples(st.just("insert"), st.integers(min_value=-2, max_value=12)),
        st.tuples(st.just("draw"), st.just(1)),
        st.tuples(st.just("take_largest"), st.just(0)),
    ),
    max_size=60,
)


@given(_OPS)
def test_random_op_sequences_keep_bookkeeping_consistent(ops):
    """Counts, occupancy and derived tallies agree with a shadow model."""
    max_len = 9
    pool = new_pool(max_len)
    ref_counts = {}
    ref_spilled = 0
    for op, arg in ops:
        if op == "insert":
            pool.insert_chain(arg)
            if arg > max_len:
                ref_spilled += arg
            elif arg >= 2:
                ref_counts[arg] = ref_counts.get(arg, 0) + 1
        elif op == "draw":
            pool.take_chain(1)
        elif ref_counts:
            largest = max(ref_counts)
            pool.take_chain(largest)
            ref_counts[largest] -= 1
            if not ref_counts[largest]:
                del ref_counts[largest]
        assert pool.snapshot() == ref_counts
        assert pool.spilled_qubits == ref_spilled
        assert pool.occupied_lengths() == [1, *sorted(ref_counts)]
        assert pool.chain_count == sum(ref_counts.values())
        assert pool.resident_qubits == sum(l * c for l, c in ref_counts.items())
        assert all(c >= 0 for c in pool.counts)
