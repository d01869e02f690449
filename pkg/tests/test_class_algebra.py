from fractions import Fraction
from math import factorial

import pytest

from wtower.class_algebra import (CapExceeded, CentralElement, PermGroupContext, centered_ladder,
                                  characteristic_map, class_multiply, conjugacy_classes,
                                  count_factorizations, count_factorizations_bruteforce, cycle_type,
                                  expand, group_multiply, inverse_characteristic_map, jm_lifting,
                                  perm_inv, perm_mul, raising_map, transposition,
                                  verify_cutjoin_intertwining, verify_hurwitz, verify_jm_lifting,
                                  verify_ladder)
from wtower.partitions import class_size, enumerate_partitions
from wtower.symfun import SymFun

K = CentralElement.class_sum


def test_permutation_basics():
    t = transposition(1, 2, 3)
    assert perm_mul(t, t) == (0, 1, 2)
    s = (1, 2, 0)
    assert perm_mul(s, perm_inv(s)) == (0, 1, 2)
    assert cycle_type(s) == (3,)
    # right-to-left: (x*y)[i] = x[y[i]]
    assert perm_mul((1, 0, 2), (0, 2, 1)) == (1, 2, 0)


@pytest.mark.parametrize("n", range(1, 6))
def test_classes_partition_group(n):
    ctx = PermGroupContext(n)
    assert ctx.order == factorial(n)
    for lam, members in conjugacy_classes(n).items():
        assert len(members) == class_size(lam)


def test_class_multiply_examples():
    assert class_multiply(CentralElement.transposition_sum(3), K((3,))) == K((2, 1)).scale(2)
    assert class_multiply(CentralElement.transposition_sum(2), K((1, 1))) == K((2,))
    assert class_multiply(CentralElement.transposition_sum(3), K((2, 1))) == K((1, 1, 1)).scale(3) + K((3,)).scale(3)


@pytest.mark.parametrize("n", range(2, 5))
def test_structure_constants_against_group_algebra(n):
    for lam in enumerate_partitions(n):
        for mu in enumerate_partitions(n):
            prod = group_multiply(expand(K(lam)), expand(K(mu)))
            assert prod == expand(class_multiply(K(lam), K(mu)))


def test_commutative_and_associative():
    n = 4
    parts = enumerate_partitions(n)
    for a in parts:
        for b in parts:
            assert class_multiply(K(a), K(b)) == class_multiply(K(b), K(a))
    x, y, z = K((2, 1, 1)), K((3, 1)), K((2, 2))
    assert class_multiply(class_multiply(x, y), z) == class_multiply(x, class_multiply(y, z))


def test_characteristic_map():
    assert characteristic_map(K((2, 1)), normalized=False) == SymFun.p(2, 1)
    assert characteristic_map(K((2, 1))) == SymFun.p(2, 1).scale(Fraction(1, 2))
    assert characteristic_map(CentralElement(3)) == SymFun()
    f = SymFun.p(2, 1) + SymFun.p(3).scale(5)
    assert characteristic_map(inverse_characteristic_map(f, 3)) == f


@pytest.mark.parametrize("n", range(1, 6))
def test_cutjoin_normalized(n):
    assert verify_cutjoin_intertwining(n)["passed"]


def test_cutjoin_unnormalized_witness():
    report = verify_cutjoin_intertwining(3, normalized=False)
    assert not report["passed"]
    bad = [c for c in report["checks"] if c["status"] == "fail"]
    assert bad[0]["partition"] == [3]
    assert bad[0]["lhs"] == [{"partition": [2, 1], "coeff": "2"}]
    assert bad[0]["rhs"] == [{"partition": [2, 1], "coeff": "3"}]


def test_raising_map():
    assert raising_map(K((1,)), rescale=False) == K((1, 1))
    assert raising_map(K((1,))) == K((1, 1)).scale(2)
    assert raising_map(CentralElement(2)) == CentralElement(3)
    # l(K_(2)) = (12) in S_3, averaged over the 3 transpositions
    assert raising_map(K((2,)), rescale=False) == K((2, 1)).scale(Fraction(1, 3))


def test_centered_ladder_values():
    # frozen enumeration values with the (n+1) scaling
    assert centered_ladder(K((1,))) == K((2,)).scale(2)
    assert centered_ladder(K((1, 1))) == K((2, 1)).scale(2)
    assert centered_ladder(K((2,))) == K((3,)).scale(3)
    assert centered_ladder(K((1,)), rescale=False) == K((2,))
    assert jm_lifting(CentralElement(2)) == CentralElement(3)


@pytest.mark.parametrize("n", range(1, 5))
def test_ladder_and_jm(n):
    assert verify_ladder(n)["passed"]
    assert verify_jm_lifting(n)["passed"]


def test_count_factorizations_examples():
    assert count_factorizations((3,), 2) == 6
    assert count_factorizations((1, 1), 0) == 1
    assert count_factorizations((2, 1), 1) == 3
    assert count_factorizations((2, 1), 0) == 0


@pytest.mark.parametrize("n", range(1, 5))
@pytest.mark.parametrize("r", range(0, 4))
def test_count_factorizations_bruteforce(n, r):
    for mu in enumerate_partitions(n):
        assert count_factorizations(mu, r) == count_factorizations_bruteforce(mu, r)


@pytest.mark.parametrize("n", range(1, 5))
def test_counts_sum_to_total(n):
    r = 3
    total = sum(count_factorizations(mu, r) for mu in enumerate_partitions(n))
    assert total == (n * (n - 1) // 2) ** r


def test_hurwitz():
    assert verify_hurwitz(4, 4)["passed"]


def test_caps():
    with pytest.raises(CapExceeded):
        count_factorizations((6,), 1)
    with pytest.raises(CapExceeded):
        count_factorizations((2, 1), 7)
    with pytest.raises(CapExceeded):
        conjugacy_classes(9)
    with pytest.raises(ValueError):
        class_multiply(K((2,)), K((3,)))
