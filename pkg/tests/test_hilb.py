import logging
from collections import Counter
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from wtower import linalg
from wtower.hilb import (EquivParams, e1_heisenberg, euler_tangent, fixed_point_basis,
                         fixed_point_data, fixed_point_transport, geometric_inner, graph_to_dot,
                         heisenberg_bracket, matrix_in_basis, pairing_matches_euler, rimhook_graph,
                         tangent_weight_vectors, tangent_weights, taut_weight_vectors, taut_weights,
                         verify_heisenberg)
from wtower.operators import agree_on_window, build_E, build_E1, build_W0_beta, build_W2
from wtower.partitions import conjugate, content_sum, enumerate_partitions, n_statistic
from wtower.symfun import SymFun

GENERIC = [EquivParams(7, 11), EquivParams(3, Fraction(-13, 5)), EquivParams(Fraction(-5, 7), Fraction(17, 3))]
partitions = st.integers(min_value=1, max_value=7).flatmap(lambda n: st.sampled_from(enumerate_partitions(n)))


def test_params_validation(caplog):
    with pytest.raises(ValueError):
        EquivParams(0, 1)
    with caplog.at_level(logging.WARNING):
        p = EquivParams(2, -2)
    assert p.self_dual
    assert "self-dual" in caplog.text
    assert EquivParams(1, -3).jack_alpha == Fraction(1, 3)


def test_tangent_examples():
    P = EquivParams(3, 5)
    assert sorted(tangent_weights((1,), P)) == [3, 5]
    # (2): boxes (1,1) with arm 1 and (1,2) with arm 0
    assert Counter(tangent_weight_vectors((2,))) == Counter([(2, 0), (-1, 1), (1, 0), (0, 1)])
    assert len(tangent_weights((3, 2, 2), P)) == 14


def test_taut_examples():
    P = EquivParams(3, 5)
    assert taut_weights((1,), P) == [0]
    assert sorted(taut_weights((2,), P)) == [0, 3]
    assert sorted(taut_weights((1, 1), P)) == [0, 5]


@given(partitions)
def test_conjugation_swaps_eps(lam):
    swapped = Counter((b, a) for a, b in tangent_weight_vectors(lam))
    assert Counter(tangent_weight_vectors(conjugate(lam))) == swapped


@given(partitions)
def test_taut_weight_sum(lam):
    total = sum(a + b for a, b in taut_weight_vectors(lam))
    assert total == n_statistic(lam) + n_statistic(conjugate(lam))


@given(partitions)
@settings(max_examples=30, deadline=None)
def test_tangent_character_identity(lam):
    # T = V* + V t1 t2 - V V* (1 - t1)(1 - t2) with V the tautological character
    t1, t2 = sympy.symbols("t1 t2")
    V = sum(t1 ** a * t2 ** b for a, b in taut_weight_vectors(lam))
    Vd = sum(t1 ** -a * t2 ** -b for a, b in taut_weight_vectors(lam))
    T = sum(t1 ** a * t2 ** b for a, b in tangent_weight_vectors(lam))
    assert sympy.expand(T - (Vd + V * t1 * t2 - V * Vd * (1 - t1) * (1 - t2))) == 0


@given(partitions)
def test_euler_homogeneous_and_nonzero(lam):
    n = sum(lam)
    for P in GENERIC:
        e = euler_tangent(lam, P)
        assert e != 0
        assert euler_tangent(lam, EquivParams(2 * P.eps1, 2 * P.eps2)) == 2 ** (2 * n) * e


def test_fixed_point_data_json():
    data = fixed_point_data((2, 1), EquivParams(1, 2)).to_json()
    assert data["partition"] == [2, 1]
    assert len(data["tangent_weights"]) == 6 and len(data["taut_weights"]) == 3


def test_vacuum_and_first_level():
    P = EquivParams(3, 5)
    assert geometric_inner(SymFun.one(), SymFun.one(), P) == 1
    one = fixed_point_basis(1, P)[(1,)]
    assert geometric_inner(one, one, P) == Fraction(1, 15)


@pytest.mark.parametrize("params", GENERIC, ids=str)
def test_pairing_matches_euler(params):
    for n in range(1, 5):
        assert pairing_matches_euler(n, params)


@pytest.mark.parametrize("params", GENERIC, ids=str)
def test_heisenberg(params):
    assert verify_heisenberg(params, 4)["passed"]


def test_heisenberg_examples():
    P = GENERIC[1]
    unit = 1 / (P.eps1 * P.eps2)
    for n in range(0, 4):
        size = len(enumerate_partitions(n))
        assert heisenberg_bracket(1, -1, n, P) == linalg.scalar_matrix(unit, size)
        assert heisenberg_bracket(2, -2, n, P) == linalg.scalar_matrix(2 * unit, size)
    br = heisenberg_bracket(2, -1, 3, P)
    assert all(x == 0 for row in br for x in row)


def test_transport_grading():
    for n in range(1, 5):
        assert fixed_point_transport(build_E(), n, GENERIC[0]) == linalg.scalar_matrix(n, len(enumerate_partitions(n)))


@pytest.mark.parametrize("beta", [Fraction(1), Fraction(2), Fraction(1, 2), Fraction(3)])
def test_W0_beta_diagonal_at_identification(beta):
    P = EquivParams(1, -beta)
    for n in range(1, 5):
        for N in (0, 2):
            assert linalg.is_diagonal(fixed_point_transport(build_W0_beta(beta, N), n, P))


def test_W0_beta_not_diagonal_off_identification():
    mat = fixed_point_transport(build_W0_beta(2, 0), 3, EquivParams(1, -3))
    assert not linalg.is_diagonal(mat)


def test_W2_self_dual_point():
    mat = fixed_point_transport(build_W2(), 4, EquivParams(1, -1))
    assert linalg.is_diagonal(mat)
    assert [mat[i][i] for i in range(5)] == [content_sum(l) for l in enumerate_partitions(4)]


def test_e1_avatar():
    assert agree_on_window(e1_heisenberg(), build_E1(), 8) is None


def test_matrix_shapes():
    rows, cols, mat = matrix_in_basis(build_E1(), 2, "p")
    assert len(rows) == 2 and len(cols) == 3
    # E_1 p_2 = 2 p_3, E_1 p_(1,1) = 2 p_(2,1)
    assert mat[0] == [2, 0, 0] and mat[1] == [0, 2, 0]
    with pytest.raises(ValueError):
        matrix_in_basis(build_E(), 2, "nope")


def test_rimhook_graph():
    g4 = rimhook_graph(4)
    edges = {(tuple(e["source"]), tuple(e["target"])): (e["value"], e["channel"]) for e in g4["edges"]}
    assert edges[((4,), (3, 1))] == ("3", "cut")
    assert edges[((1, 1, 1, 1), (2, 1, 1))] == ("1", "join")
    assert len(g4["vertices"]) == 5 and len(g4["edges"]) == 10
    g2 = rimhook_graph(2)
    assert {(tuple(e["source"]), e["value"]) for e in g2["edges"]} == {((2,), "1"), ((1, 1), "1")}
    assert rimhook_graph(1)["edges"] == []
    assert len(rimhook_graph(5)["vertices"]) == 7
    dot = graph_to_dot(g4)
    assert dot.startswith("digraph") and dot.count("->") == 10
    with pytest.raises(ValueError):
        rimhook_graph(11)
