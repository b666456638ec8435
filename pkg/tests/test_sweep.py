from __future__ import annotations

import numpy as np
import pytest

from pfrep import algebra as A
from pfrep import representation as R
from pfrep import sweep as S

import oracles


def names_tables(alg):
    e = alg.elements
    return (
        list(e),
        [[e[v] for v in row] for row in alg.compose],
        [[e[v] for v in row] for row in alg.meet],
        [e[v] for v in alg.antidomain],
    )


def test_semilattice_shape_counts():
    # chains and the posets on n-1 points with a bottom added
    assert [len(S.semilattice_shapes(n)) for n in range(1, 5)] == [1, 1, 2, 5]


def test_shapes_are_semilattices_with_zero_bottom():
    for n in range(1, 5):
        for meet in S.semilattice_shapes(n):
            alg = A.FiniteAlgebra.from_tables([str(i) for i in range(n)], meet, meet, [0] * n)
            assert all(meet[0][a] == 0 for a in range(n))
            assert all(meet[a][b] == meet[b][a] and meet[a][a] == a for a in range(n) for b in range(n))
            assert alg.meet == tuple(map(tuple, meet))


def test_closed_algebra_counts_on_one_point():
    # the antidomain of the empty function is the identity, so {0, id} is the only one
    assert S.closed_algebras(4, 1) == {frozenset({(-1,), (0,)})}
    assert len(S.closed_algebras(4, 0)) == 1


@pytest.mark.parametrize("n", [1, 2, 3])
def test_batches_agree_with_scalar_decisions(n):
    catalog = S.build_catalog(n, n)
    for batch in S.table_batches(n):
        theta = S.theta_verifies_batch(batch.meet, batch.antidomain, batch.compose)
        phi = S.phi_holds_batch(batch.meet, batch.compose)
        oracle = np.isin(S.encode(batch.compose), catalog.lookup(n, batch.shape, batch.antidomain))
        for k in range(len(batch.compose)):
            alg = batch.algebra(k)
            expected = oracles.theta_is_representation(*names_tables(alg)) and A.validate(alg).passed
            assert bool(theta[k]) == expected
            assert bool(oracle[k]) == (R.brute_force_search(alg) is not None)
            assert bool(phi[k]) == A.check_phi(alg).holds


def test_small_sweep_is_clean():
    report = S.sweep(max_size=3, max_base=3, scalar_sample=5)
    assert report.clean
    assert report.theta_yes == report.oracle_yes == {1: 1, 2: 1, 3: 2}
    assert all(A.check_phi(a).holds for a in report.accepted)
