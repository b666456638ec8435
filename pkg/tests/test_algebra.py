from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pfrep import algebra as A
from pfrep.algebra import FiniteAlgebra
from pfrep.corpus import random_closures
from pfrep.pfun import to_abstract

import oracles


def one_element():
    return FiniteAlgebra.from_tables(["0"], [[0]], [[0]], [0])


def closed_algebra(seed):
    return to_abstract(next(random_closures(1, seed)))[0]


seeds = st.integers(0, 10_000)


def test_one_element_algebra_validates():
    alg = one_element()
    assert A.validate(alg).passed
    assert alg.atoms == ()
    assert A.is_atomic(alg) and A.is_atomistic(alg)


def test_noncommutative_meet_reports_witness():
    alg = FiniteAlgebra.from_tables(["0", "a"], [[0, 0], [0, 0]], [[0, 1], [0, 1]], [1, 0])
    report = A.validate(alg)
    assert not report.passed
    laws = dict(report.failures)
    assert laws["meet-commutative"] == (0, 1)
    for law, witness in report.failures:
        assert not A.replay_law(alg, law, witness)


def test_ragged_table_rejected():
    with pytest.raises(A.TableError):
        FiniteAlgebra.from_tables(["0", "a"], [[0], [0, 0]], [[0, 0], [0, 1]], [1, 0])
    with pytest.raises(A.TableError):
        FiniteAlgebra.from_tables(["0"], [[1]], [[0]], [0])


def test_inconsistent_zero():
    # A(0);0 = 0 but A(a);a = a
    alg = FiniteAlgebra.from_tables(["0", "a"], [[0, 0], [0, 1]], [[0, 0], [0, 1]], [0, 1])
    with pytest.raises(A.InconsistentZero):
        A.zero(alg)
    assert "zero-consistent" in dict(A.validate(alg).failures)


def test_figure1_basic_structure(figure1_alg):
    alg = figure1_alg
    i = alg.index
    assert A.validate(alg).passed
    assert alg.elements[alg.zero] == "g4"
    assert A.leq(alg, i("h"), alg.compose[i("f1")][i("g")])
    assert A.is_atomistic(alg)
    assert A.check_phi(alg).holds


def test_figure1_atoms_match_relational_oracle(figure1_conc, figure1_alg):
    expected = oracles.rel_atoms({f.graph for f in figure1_conc.functions})
    got = {figure1_conc.functions[a].graph for a in figure1_alg.atoms}
    assert got == expected
    # frozen from the oracle run: seven minimal nonzero functions
    assert len(expected) == 7


def test_figure1_join_of_f_then_g(figure1_alg):
    alg = figure1_alg
    i = alg.index
    a, b = alg.compose[i("f1")][i("g")], alg.compose[i("f2")][i("g")]
    j = A.join(alg, [a, b])
    assert j is not None and A.leq(alg, i("h"), j)


def test_figure1_downset_of_f1_then_g_has_two_elements(figure1_alg):
    alg = figure1_alg
    i = alg.index
    view = A.downset_boolean(alg, alg.compose[i("f1")][i("g")])
    assert len(view.carrier) == 2


def test_join_and_meet_edge_cases():
    alg = A.boolean_as_algebra(2)
    assert A.join(alg, []) == alg.zero
    for a in range(len(alg)):
        assert A.meet_set(alg, [a]) == a
    with pytest.raises(A.EmptyMeet):
        A.meet_set(alg, [])


def test_join_absent_in_a_non_lattice():
    # bottom, two atoms a b, and two incomparable upper bounds c d
    names = ["0", "a", "b", "c", "d"]
    order = {(1, 3), (1, 4), (2, 3), (2, 4)}

    def meet(x, y):
        if x == y:
            return x
        if (x, y) in order:
            return x
        if (y, x) in order:
            return y
        return 0

    m = [[meet(x, y) for y in range(5)] for x in range(5)]
    alg = FiniteAlgebra.from_tables(names, m, m, [0] * 5)
    assert A.join(alg, [1, 2]) is None
    assert A.meet_set(alg, [3, 4]) is None


def test_domain_and_zero():
    alg = A.boolean_as_algebra(3)
    z = alg.zero
    assert A.domain_of(alg, z) == z
    for a in range(len(alg)):
        assert A.domain_of(alg, a) == a  # every element is its own domain here


@pytest.mark.parametrize("n", range(5))
def test_boolean_as_algebra(n):
    alg = A.boolean_as_algebra(n)
    assert len(alg) == 2**n
    assert len(alg.atoms) == n
    assert A.validate(alg).passed
    assert A.check_phi(alg).holds
    top = len(alg) - 1
    view = A.downset_boolean(alg, top)
    assert len(view.carrier) == 2**n
    for b in view.carrier:
        assert view.complement[b] == top ^ b


def test_boolean_one_atom():
    alg = A.boolean_as_algebra(1)
    assert alg.antidomain[1] == 0


def test_downset_of_zero_is_trivial():
    alg = A.boolean_as_algebra(2)
    view = A.downset_boolean(alg, alg.zero)
    assert view.carrier == (alg.zero,)


def test_corrupted_table_fails_phi():
    # three elements 0 < x < t; t;t = t but t;x = 0 so phi fails at (t, t, 0)
    names = ["0", "x", "t"]
    m = [[0, 0, 0], [0, 1, 1], [0, 1, 2]]
    c = [[0, 0, 0], [0, 1, 1], [0, 0, 2]]
    alg = FiniteAlgebra.from_tables(names, c, m, [2, 0, 0])
    check = A.check_phi(alg)
    assert not check.holds
    a, b, cc = check.witness
    ats_below_b = [x for x in alg.atoms if A.leq(alg, x, b)]
    assert all(A.leq(alg, alg.compose[a][x], cc) for x in ats_below_b)
    assert not A.leq(alg, alg.compose[a][b], cc)


def test_direct_product_sizes_and_identity():
    b1 = A.boolean_as_algebra(1)
    assert len(A.direct_product(b1, b1)) == 4
    b2 = A.boolean_as_algebra(2)
    prod = A.direct_product(b2, one_element())
    assert A.find_isomorphism(prod, b2) is not None


def test_isomorphism_finds_relabeling():
    alg = A.boolean_as_algebra(3)
    order = [5, 2, 7, 0, 1, 3, 6, 4]
    other = A.relabel(alg, order, [f"e{k}" for k in range(8)])
    iso = A.find_isomorphism(alg, other)
    assert iso is not None and A.is_isomorphism(alg, other, iso)
    assert A.find_isomorphism(alg, A.boolean_as_algebra(2)) is None


def test_figure1_right_meet_violation(figure1_alg):
    alg = figure1_alg
    i = alg.index
    found = {(alg.elements[a], alg.elements[b], alg.elements[c]) for a, b, c in A.right_meet_violations(alg)}
    assert found == {("f1", "f2", "g"), ("f2", "f1", "g")}
    assert A.right_distributivity_violation(alg) is None
    assert A.left_distributivity_violations(alg) == []
    assert alg.meet[i("f1")][i("f2")] == alg.zero


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_closed_algebras_satisfy_order_laws(seed):
    alg = closed_algebra(seed)
    z = alg.zero
    for a, b in itertools.product(range(len(alg)), repeat=2):
        assert A.leq(alg, z, a)
        assert A.leq(alg, alg.meet[a][b], a)
    for a in range(len(alg)):
        assert alg.compose[alg.antidomain[a]][a] == z
    assert A.validate(alg).passed
    assert A.check_phi(alg).holds
    assert A.is_atomic(alg) and A.is_atomistic(alg)


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_downsets_are_boolean_in_closed_algebras(seed):
    alg = closed_algebra(seed)
    for a in range(len(alg)):
        view = A.downset_boolean(alg, a)
        assert view.top == a and view.bottom == alg.zero


@settings(max_examples=40, deadline=None)
@given(seeds, seeds)
def test_product_of_closed_algebras_is_valid(s1, s2):
    a1, a2 = closed_algebra(s1), closed_algebra(s2)
    if len(a1) * len(a2) > 150:
        return
    prod = A.direct_product(a1, a2)
    assert A.validate(prod).passed
    assert len(prod.atoms) == len(a1.atoms) + len(a2.atoms)
