"""SplitMix64: reference outputs, double derivation, replica splitting."""

from hypothesis import given
from hypothesis import strategies as st
import pytest

from clustergrow.rng import SplitMix64, replica_seed


def test_seed_zero_reference_vector():
    # first outputs of the seed-0 stream, as published with the algorithm
    rng = SplitMix64(0)
    assert rng.next_u64() == 0xE220A8397B1DCDAF
    assert rng.next_u64() == 0x6E789E6AA1B965F4
    assert rng.next_u64() == 0x06C45D188009454F


def test_double_is_top_53_bits():
    word = SplitMix64(123).next_u64()
    assert SplitMix64(123).random() == (word >> 11) * 2.0**-53


def test_same_seed_same_stream():
    a = SplitMix64(987654321)
    b = SplitMix64(987654321)
    assert [a.next_u64() for _ in range(10)] == [b.next_u64() for _ in range(10)]


def test_seed_wraps_at_64_bits():
    assert SplitMix64(2**64 + 5).next_u64() == SplitMix64(5).next_u64()
    assert SplitMix64(-1).next_u64() == SplitMix64(2**64 - 1).next_u64()


@given(st.integers(min_value=0, max_value=2**64 - 1))
def test_outputs_fit_in_64_bits_and_doubles_in_unit_interval(seed):
    rng = SplitMix64(seed)
    for _ in range(4):
        assert 0 <= rng.next_u64() < 2**64
    rng = SplitMix64(seed)
    for _ in range(4):
        u = rng.random()
        assert 0.0 <= u < 1.0


def test_replica_seed_is_kth_parent_output():
    parent = SplitMix64(42)
    outputs = [parent.next_u64() for _ in range(5)]
    for k in range(5):
        assert replica_seed(42, k) == outputs[k]


def test_replica_seeds_distinct():
    seeds = {replica_seed(7, k) for k in range(200)}
    assert len(seeds) == 200


def test_replica_seed_rejects_negative_index():
    with pytest.raises(ValueError):
        replica_seed(1, -1)
