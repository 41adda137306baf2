import pytest
from hypothesis import given, strategies as st

from ergoscope.errors import InvalidArgumentError
from ergoscope.partitions import ModePartition, enumerate_k_partitions, joint_partitions, stirling2

from oracles import brute_force_partitions, stirling2_recurrence

RECURRENCE = stirling2_recurrence(20)


def as_sets(partitions):
    return {frozenset(frozenset(b) for b in p.blocks) for p in partitions}


def test_three_into_two_in_canonical_order():
    got = [str(p) for p in enumerate_k_partitions(3, 2)]
    assert got == ["0,1|2", "0,2|1", "0|1,2"]


@pytest.mark.parametrize("n", [1, 4, 7])
def test_single_block(n):
    (only,) = list(enumerate_k_partitions(n, 1))
    assert only.blocks == (tuple(range(n)),)


def test_four_into_two_count():
    assert sum(1 for _ in enumerate_k_partitions(4, 2)) == 7


@pytest.mark.parametrize("n", range(1, 8))
def test_stream_matches_brute_force(n):
    for k in range(1, n + 1):
        stream = list(enumerate_k_partitions(n, k))
        assert len(stream) == len(set(stream))
        assert as_sets(stream) == brute_force_partitions(n, k)


@pytest.mark.parametrize("n,k", [(0, 1), (3, 0), (3, 4), (2.5, 1)])
def test_enumeration_range_errors(n, k):
    with pytest.raises(InvalidArgumentError):
        list(enumerate_k_partitions(n, k))


@pytest.mark.parametrize("n,k,expected", [(3, 2, 3), (5, 3, 25), (6, 6, 1), (4, 2, 7), (10, 5, 42525), (5, 0, 0)])
def test_stirling_examples(n, k, expected):
    assert stirling2(n, k) == expected


def test_stirling_matches_recurrence_to_twenty():
    for (n, k), value in RECURRENCE.items():
        if n >= 1:
            assert stirling2(n, k) == value


def test_stirling_is_exact_beyond_64_bits():
    # S(n, 2) = 2^(n-1) - 1
    assert stirling2(200, 2) == 2**199 - 1
    assert stirling2(120, 119) == 120 * 119 // 2


@pytest.mark.parametrize("n,k", [(0, 0), (3, 4), (3, -1)])
def test_stirling_range_errors(n, k):
    with pytest.raises(InvalidArgumentError):
        stirling2(n, k)


@given(st.lists(st.integers(0, 4), min_size=1, max_size=9))
def test_canonical_form_is_unique(labels):
    p = ModePartition.from_labels(labels)
    relabelled = ModePartition.from_labels([(l * 7 + 3) % 11 for l in labels])
    assert p == relabelled
    assert ModePartition.parse(str(p)) == p
    assert [b[0] for b in p.blocks] == sorted(b[0] for b in p.blocks)
    assert sum(len(b) for b in p.blocks) == len(labels)


def test_parse_round_trip_and_order():
    p = ModePartition.parse("3,1|0|2")
    assert p.blocks == ((0,), (1, 3), (2,))
    assert str(p) == "0|1,3|2"
    assert p.complement(1) == (0, 2)


@pytest.mark.parametrize("text", ["0,1|1", "0|2", "a|b", "0,,1", ""])
def test_parse_rejects_malformed(text):
    with pytest.raises(InvalidArgumentError):
        ModePartition.parse(text)


def test_joint_partitions_pair_blocks():
    p = ModePartition.parse("0|1,2")
    q = ModePartition.parse("0,1|2")
    joint = {str(j) for j in joint_partitions(p, q)}
    assert joint == {"0,3,4|1,2,5", "0,5|1,2,3,4"}


def test_joint_partitions_need_equal_block_counts():
    with pytest.raises(InvalidArgumentError):
        list(joint_partitions(ModePartition.parse("0|1"), ModePartition.parse("0,1")))
