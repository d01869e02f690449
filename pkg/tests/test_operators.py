from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from wtower.operators import (NOOperator, WindowError, agree_on_window, apply, build_cut, build_D,
                              build_E, build_E1, build_join, build_Ln_beta, build_W0_beta,
                              build_W0_from_L, build_W1_display, build_W2, commutator, compose,
                              deriv_p, hierarchy, identity_op, linear_combination, mult_p,
                              operator_from_json, operator_to_json, verify_hierarchy)
from wtower.partitions import enumerate_partitions
from wtower.symfun import SymFun, hall_inner, parse_symfun


# --- an independent termwise oracle: p_lambda as a monomial in the p_k -----------

def d(k, f):
    """d/dp_k by the product rule on each monomial."""
    out = SymFun()
    for lam, c in f.terms.items():
        lam = list(lam)
        m = lam.count(k)
        if m:
            lam.remove(k)
            out = out + SymFun.p(*lam).scale(c * m)
    return out


def oracle_cut(f):
    deg = max(f.degrees(), default=0)
    out = SymFun()
    for a in range(1, deg + 1):
        for b in range(1, deg + 1 - a):
            out = out + (SymFun.p(a, b) * d(a + b, f)).scale(Fraction(a + b, 2))
    return out


def oracle_join(f):
    deg = max(f.degrees(), default=0)
    out = SymFun()
    for a in range(1, deg + 1):
        for b in range(1, deg + 1 - a):
            out = out + (SymFun.p(a + b) * d(a, d(b, f))).scale(Fraction(a * b, 2))
    return out


def all_p(max_n, min_n=0):
    return [SymFun.p(*lam) for n in range(min_n, max_n + 1) for lam in enumerate_partitions(n)]


small_p = st.integers(min_value=0, max_value=6).flatmap(
    lambda n: st.sampled_from(enumerate_partitions(n))).map(lambda lam: SymFun.p(*lam))


# --- named examples ------------------------------------------------------------------

def test_apply_examples():
    assert apply(build_W2(), SymFun.p(4)) == parse_symfun("4*p[3,1] + 2*p[2,2]")
    assert apply(build_E1(), SymFun.p(3)) == SymFun.p(4).scale(3)
    assert apply(build_W2(), SymFun.p(1)) == SymFun()
    assert apply(build_cut(), SymFun.p(3)) == SymFun.p(2, 1).scale(3)
    assert apply(build_join(), SymFun.p(2, 1)) == SymFun.p(3).scale(2)
    assert apply(build_join(), SymFun.p(1)) == SymFun()
    assert apply(build_D(), SymFun.p(3)) == SymFun.p(3).scale(6)
    assert apply(build_E(), SymFun.p(2, 1)) == SymFun.p(2, 1).scale(3)
    assert apply(build_D(), SymFun.p(1, 1, 1)) == SymFun()
    assert apply(build_W2(), SymFun.p(2)) == SymFun.p(1, 1)
    assert apply(build_W2(), SymFun.p(1, 1)) == SymFun.p(2)
    assert apply(build_E1(), SymFun.p(1)) == SymFun.p(2)
    assert apply(build_E1(), SymFun.p(2, 1)) == parse_symfun("2*p[3,1] + p[2,2]")


def test_W2_on_v_row():
    assert apply(build_W2(), SymFun.v(2, 1, 1)) == parse_symfun("3*v[3,1] + 2*v[2,2] + 6*v[1,1,1,1]")


@pytest.mark.parametrize("f", all_p(7), ids=str)
def test_cut_join_match_oracle(f):
    assert apply(build_cut(), f) == oracle_cut(f)
    assert apply(build_join(), f) == oracle_join(f)


def test_W0_beta_values():
    W2 = build_W2()
    W = build_W0_beta(1, 0)
    assert agree_on_window(W, W2, 8) is None
    for N in (1, Fraction(5, 3)):
        assert apply(build_W0_beta(1, N), SymFun.p(2, 1)) == apply(W2, SymFun.p(2, 1)) + SymFun.p(2, 1).scale(3 * N)
    assert apply(build_W0_beta(2, 0), SymFun.p(2)) == parse_symfun("2*p[1,1] - p[2]")


def test_compose_examples():
    out = compose(deriv_p(2), mult_p(2), 4)
    expected = linear_combination([(1, compose(mult_p(2), deriv_p(2), 4)), (1, identity_op())])
    assert agree_on_window(out, expected, 4) is None
    assert len(out.terms) == 2
    dd = commutator(build_D(), build_E(), 6)
    assert dd.terms == []


def test_compose_double_contraction():
    # d_1^2 p_1^2 = p_1^2 d_1^2 + 4 p_1 d_1 + 2
    out = compose(NOOperator(terms=[(1, (), (1, 1))]), NOOperator(terms=[(1, (1, 1), ())]), 3)
    table = {(t.create, t.annihilate): t.coeff for t in out.terms}
    assert table == {((1, 1), (1, 1)): 1, ((1,), (1,)): 4, ((), ()): 2}


def test_commutators():
    W = build_W2()
    assert agree_on_window(commutator(W, mult_p(1), 9), build_E1(), 8) is None
    assert agree_on_window(commutator(W, build_E1(), 9), build_W1_display(), 8) is None
    assert commutator(build_E(), W, 8).terms == []


@pytest.mark.parametrize("op", [build_W2(), build_E1(), build_D(), build_W0_beta(2, 3), mult_p(2), deriv_p(3)],
                         ids=lambda op: op.name or repr(op))
def test_grading(op):
    deg = op.degree()
    lhs = commutator(build_E(), op, 7)
    rhs = op.scale(deg)
    assert agree_on_window(lhs, rhs, 6) is None


def test_adjointness():
    C, J = build_cut(), build_join()
    basis = all_p(6, 1)
    for f in basis:
        Cf = apply(C, f)
        for g in basis:
            if sum(next(iter(f.terms))) == sum(next(iter(g.terms))):
                assert hall_inner(Cf, g) == hall_inner(f, apply(J, g))


def test_associativity():
    ops = [build_W2(), build_E1(), mult_p(1), deriv_p(2)]
    for a in ops:
        for b in ops:
            for c in ops:
                left = compose(compose(a, b, 8), c, 6)
                right = compose(a, compose(b, c, 6), 6)
                assert agree_on_window(left, right, 6) is None


@pytest.mark.parametrize("op", [build_W2(), build_E1(), build_Ln_beta(2, 2, 3), build_W0_beta(3, 1)],
                         ids=lambda op: op.name)
def test_schema_instantiation(op):
    finite = op.instantiate(6)
    for f in all_p(6):
        assert apply(op, f) == apply(finite, f)


def test_window_errors():
    finite = build_W2().instantiate(3)
    with pytest.raises(WindowError):
        apply(finite, SymFun.p(4))
    with pytest.raises(WindowError):
        compose(build_W2(), finite, 5)
    with pytest.raises(WindowError):
        compose(build_W2(), build_W2(), -1)


def test_Ln_edge_cases():
    N = Fraction(3)
    L_minus = build_Ln_beta(-1, 2, N)
    assert apply(L_minus, SymFun.one()) == SymFun.p(1).scale(N)
    L0 = build_Ln_beta(0, 2, N)
    # constant term beta N^2 + (1 - beta) N
    assert apply(L0, SymFun.one()) == SymFun.one().scale(2 * 9 - 3)
    assert build_Ln_beta(1, 2, N, shifted=True).degree() is None
    with pytest.raises(ValueError):
        build_Ln_beta(-2, 1, 1)


@given(small_p)
@settings(max_examples=40, deadline=None)
def test_W0_from_L_is_degree_preserving(f):
    out = apply(build_W0_from_L(2, 1), f)
    assert out.degrees() <= f.degrees() or out == SymFun()


def test_principal_symbol_beta_independent():
    for beta in (1, 2, Fraction(1, 2), 3):
        for N in (0, 1, Fraction(5, 2)):
            lhs = commutator(build_W0_beta(beta, N), mult_p(1), 7)
            rhs = linear_combination([(1, build_E1()), (beta * N, mult_p(1))])
            assert agree_on_window(lhs, rhs, 6) is None


def test_hierarchy():
    W1 = hierarchy(1, 6)
    assert apply(W1, SymFun.p(1)) == SymFun.p(1, 1)
    assert apply(W1, SymFun.p(2)) == SymFun.p(2, 1).scale(4)
    for n in range(1, 5):
        assert hierarchy(n, 5).degree() == n
    report = verify_hierarchy(8, levels=3, level_window=5)
    assert report["passed"]


def test_serialization_roundtrip():
    op = hierarchy(2, 4)
    data = operator_to_json(op)
    back = operator_from_json(data, valid_up_to=4)
    assert agree_on_window(op, back, 4) is None
    with pytest.raises(ValueError):
        operator_to_json(build_W2())
    assert operator_to_json(build_W2(), 2) == [
        {"coeff": "1/2", "create": [2], "annihilate": [1, 1]},
        {"coeff": "1", "create": [1, 1], "annihilate": [2]},
    ]
