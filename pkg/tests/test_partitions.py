from itertools import product

import pytest
from hypothesis import given, strategies as st

from wtower.partitions import (Partition, arm_leg, boxes, bump, canonical, class_size, conjugate,
                               content_sum, dominates, enumerate_partitions, from_json,
                               multiplicity, n_statistic, to_json, z_factor)

partitions = st.integers(min_value=0, max_value=9).flatmap(
    lambda n: st.sampled_from(enumerate_partitions(n)))


def brute_partitions(n):
    """All weakly decreasing tuples summing to n, by filtering compositions."""
    out = set()
    for length in range(0, n + 1):
        for parts in product(range(1, n + 1), repeat=length):
            if sum(parts) == n and list(parts) == sorted(parts, reverse=True):
                out.add(parts)
    return out


def test_enumerate_small():
    assert enumerate_partitions(0) == [()]
    assert [tuple(p) for p in enumerate_partitions(4)] == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    assert len(enumerate_partitions(5)) == 7


@pytest.mark.parametrize("n", range(0, 7))
def test_enumerate_matches_brute_force(n):
    got = [tuple(p) for p in enumerate_partitions(n)]
    assert set(got) == brute_partitions(n)
    assert len(got) == len(set(got))


def test_counts():
    assert [len(enumerate_partitions(n)) for n in range(11)] == [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]


def test_invalid_partition():
    with pytest.raises(ValueError):
        Partition([1, 2])
    with pytest.raises(ValueError):
        Partition([2, 0])


def test_multiplicity_and_z():
    assert multiplicity((2, 1, 1), 1) == 2
    assert multiplicity((2, 1, 1), 3) == 0
    assert multiplicity((4,), 4) == 1
    assert z_factor((1, 1, 1, 1)) == 24
    assert z_factor((2, 1, 1)) == 4
    assert z_factor(()) == 1


@pytest.mark.parametrize("n", range(1, 8))
def test_class_sizes_sum_to_factorial(n):
    from math import factorial
    assert sum(class_size(lam) for lam in enumerate_partitions(n)) == factorial(n)


def test_bump():
    assert tuple(bump((2, 1), 1)) == (2, 2)
    assert tuple(bump((3, 1), 3)) == (4, 1)
    with pytest.raises(ValueError):
        bump((1,), 2)


def test_content_sum():
    assert content_sum((4,)) == 6
    assert content_sum((1, 1, 1, 1)) == -6
    assert content_sum((2, 2)) == 0


def test_arm_leg():
    assert arm_leg((2, 1), (1, 1)) == (1, 1)
    assert arm_leg((3,), (1, 1)) == (2, 0)
    assert arm_leg((1,), (1, 1)) == (0, 0)


@given(partitions)
def test_conjugate_involution(lam):
    assert tuple(conjugate(conjugate(lam))) == tuple(lam)
    assert content_sum(conjugate(lam)) == -content_sum(lam)


@given(partitions)
def test_hook_lengths_sum(lam):
    # sum of hook lengths = n(lambda) + n(lambda') + |lambda|
    total = sum(a + l + 1 for a, l in (arm_leg(lam, b) for b in boxes(lam)))
    assert total == n_statistic(lam) + n_statistic(conjugate(lam)) + sum(lam)


@given(partitions)
def test_json_roundtrip(lam):
    assert tuple(from_json(to_json(lam))) == tuple(lam)


def test_dominance():
    assert dominates((3, 1), (2, 2))
    assert dominates((2, 2), (2, 2))
    assert not dominates((2, 2), (3, 1))
    assert not dominates((3, 1, 1, 1), (2, 2, 2)) and not dominates((2, 2, 2), (3, 1, 1, 1))


def test_canonical_sorts():
    assert tuple(canonical([1, 3, 2])) == (3, 2, 1)
