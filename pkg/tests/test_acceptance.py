"""Acceptance criteria 1-9, one printed pass/fail line each."""

from __future__ import annotations

import itertools
import time

import pytest

from pfrep import algebra as A
from pfrep import catalog
from pfrep import efgame as E
from pfrep import ninfty as N
from pfrep import pfun as P
from pfrep import representation as R
from pfrep import sweep as S
from pfrep.corpus import random_closures

import oracles

CORPUS_SIZE = 500
CORPUS_SEED = 20240


def report(capsys, number, ok, detail, elapsed, limit):
    within = elapsed < limit
    status = "PASS" if ok and within else "FAIL"
    with capsys.disabled():
        print(f"\n[{status}] criterion {number}: {detail} ({elapsed:.2f}s, limit {limit}s)")
    assert ok, detail
    assert within, f"took {elapsed:.2f}s, limit {limit}s"


@pytest.fixture(scope="module")
def corpus():
    """Abstractions of the seeded random closures, with their theta outcomes."""
    start = time.perf_counter()
    items = []
    for conc in random_closures(CORPUS_SIZE, seed=CORPUS_SEED):
        alg, labeling = P.to_abstract(conc)
        items.append((conc, alg, labeling, R.build_theta(alg)))
    return items, time.perf_counter() - start


@pytest.fixture(scope="module")
def full_sweep():
    start = time.perf_counter()
    result = S.sweep(max_size=4, max_base=4)
    return result, time.perf_counter() - start


def test_criterion_1_figure1_right_meet_failure(capsys):
    start = time.perf_counter()
    conc = catalog.figure1()
    alg, _ = P.to_abstract(conc)
    f1, f2, g, h = (alg.index(name) for name in ("f1", "f2", "g", "h"))
    left = alg.compose[alg.meet[f1][f2]][g]
    right = alg.meet[alg.compose[f1][g]][alg.compose[f2][g]]
    ok = left == alg.zero and right == h and h != alg.zero
    # independent relational check on the same generators
    gens = {k: v.graph for k, v in catalog.figure1_generators().items()}
    ok &= not oracles.rel_compose(gens["f1"] & gens["f2"], gens["g"])
    ok &= oracles.rel_compose(gens["f1"], gens["g"]) & oracles.rel_compose(gens["f2"], gens["g"]) == gens["h"]
    ok &= (f1, f2, g) in A.right_meet_violations(alg)
    elapsed = time.perf_counter() - start
    report(capsys, 1, ok, f"(f1^f2);g = 0 and (f1;g)^(f2;g) = h = {alg.elements[right]}", elapsed, 1)


def test_criterion_2_ninfty_left_distributivity(capsys):
    start = time.perf_counter()
    r = N.verify_example_43()
    ok = (
        r["join_g"] == str(N.TOP_N)
        and r["meet_h"] == str(N.ZERO)
        and r["left_dist_join_fails"]
        and r["left_dist_meet_fails"]
        and r["intermediates"]["f;join_g"] == "f"
        and r["intermediates"]["join(f;g_i)"] == str(N.ZERO)
        and r["intermediates"]["f;meet_h"] == str(N.ZERO)
        and r["intermediates"]["meet(f;h_i)"] == "f"
    )
    truncations = [N.truncation_agreement(n) for n in range(1, 5)]
    ok &= all(t["agrees"] and t["closed"] for t in truncations)
    elapsed = time.perf_counter() - start
    report(capsys, 2, ok, "join g_i = id on N, meet h_i = 0, both left laws fail; truncations n<=4 agree", elapsed, 5)


def test_criterion_3_theta_soundness(capsys, corpus):
    items, build_time = corpus
    start = time.perf_counter()
    failures = []
    for conc, alg, labeling, outcome in items:
        if not outcome.verified or not R.check_completeness(outcome.representation).all_true:
            failures.append(alg)
            continue
        iso = R.theta_image_isomorphism(outcome)
        image, _ = P.to_abstract(outcome.representation.concrete())
        if iso is None or not A.is_isomorphism(alg, image, iso):
            failures.append(alg)
    elapsed = build_time + time.perf_counter() - start
    sizes = [len(alg) for _, alg, _, _ in items]
    detail = f"{len(items)} closures (sizes {min(sizes)}..{max(sizes)}), {len(failures)} failures"
    report(capsys, 3, not failures and len(items) >= 500, detail, elapsed, 120)


def test_criterion_4_oracle_agreement(capsys, corpus, full_sweep):
    result, sweep_time = full_sweep
    items, _ = corpus
    start = time.perf_counter()
    corpus_disagreements = 0
    for _, alg, _, _ in items:
        decided = R.decide_complete_representability(alg).completely_representable
        if decided != (R.brute_force_search(alg) is not None):
            corpus_disagreements += 1
    elapsed = sweep_time + time.perf_counter() - start
    ok = result.clean and corpus_disagreements == 0 and result.theta_yes == result.oracle_yes
    detail = (
        f"sweep {sum(result.tables.values())} tables, {len(result.disagreements)} disagreements, "
        f"{result.scalar_checked} scalar replays; corpus {len(items)}, {corpus_disagreements} disagreements"
    )
    report(capsys, 4, ok, detail, elapsed, 600)


def _verified_representations(items, sweep_result):
    for conc, alg, _, outcome in items:
        yield outcome.representation
        yield P.identity_representation(conc)
    for _, alg, _, _ in items[:100]:
        rep = R.brute_force_search(alg)
        if rep is not None:
            yield rep
    for alg in sweep_result.accepted:
        yield R.build_theta(alg).representation
    small = [o.representation for _, alg, _, o in items[:40] if len(alg) <= 8]
    for r1, r2 in itertools.combinations(small[:12], 2):
        yield P.product_representation(r1, r2)
    for conc in (catalog.figure1(), catalog.figure2(), *(N.truncate(n) for n in (1, 2, 3))):
        yield P.identity_representation(conc)
        yield R.build_theta(P.to_abstract(conc)[0]).representation
    for n in range(5):
        yield R.build_theta(A.boolean_as_algebra(n)).representation


def test_criterion_5_completeness_equivalences(capsys, corpus, full_sweep):
    start = time.perf_counter()
    checked = exceptions = 0
    for rep in _verified_representations(corpus[0], full_sweep[0]):
        assert rep.verified
        checked += 1
        values = {P.is_meet_complete(rep), P.is_join_complete(rep), P.is_atomic_rep(rep)}
        exceptions += len(values) != 1
    elapsed = time.perf_counter() - start
    report(capsys, 5, exceptions == 0, f"{checked} representations, {exceptions} exceptions", elapsed, 600)


def test_criterion_6_distributivity(capsys, corpus):
    start = time.perf_counter()
    bad = 0
    for _, alg, _, _ in corpus[0]:
        if A.right_distributivity_violation(alg) is not None or A.left_distributivity_violations(alg):
            bad += 1
    elapsed = time.perf_counter() - start
    report(capsys, 6, bad == 0, f"{len(corpus[0])} algebras, {bad} exceptions", elapsed, 600)


def test_criterion_7_figure2_range(capsys):
    start = time.perf_counter()
    conc = catalog.figure2()
    alg, labeling = P.to_abstract(conc)
    g = labeling[conc.names.index("g")]
    range_g = conc.position[P.range_diag(g)]
    rep = R.build_theta(alg).representation
    ok = rep.verified and rep.assignment[range_g] != P.range_diag(rep.assignment[conc.position[g]])
    elapsed = time.perf_counter() - start
    detail = (
        f"theta(R(g)) = {rep.assignment[range_g].sorted_graph()}, "
        f"R(theta(g)) = {P.range_diag(rep.assignment[conc.position[g]]).sorted_graph()}"
    )
    report(capsys, 7, ok, detail, elapsed, 1)


def test_criterion_8_ef_game(capsys):
    start = time.perf_counter()
    losses = []
    for rounds in itertools.product(range(4), repeat=3):
        try:
            if not E.exhaustive_check(*rounds, split_bound=4, max_finite=4):
                losses.append(rounds)
        except E.StrategyUnavailable:
            losses.append(rounds)
    elapsed = time.perf_counter() - start
    report(capsys, 8, not losses, f"64 budget triples, duplicator lost {losses}", elapsed, 300)


def test_criterion_9_phi_and_atomistic(capsys, corpus, full_sweep):
    result, _ = full_sweep
    start = time.perf_counter()
    accepted = list(result.accepted) + [alg for _, alg, _, o in corpus[0] if o.verified]
    bad = [a for a in accepted if not (A.check_phi(a).holds and A.is_atomistic(a))]
    elapsed = time.perf_counter() - start
    detail = (
        f"{len(accepted)} accepted algebras, {len(bad)} failures; "
        f"phi-but-rejected per size {result.phi_but_rejected}, "
        f"{len(result.disagreements)} of them oracle-accepted"
    )
    report(capsys, 9, not bad and not result.disagreements, detail, elapsed, 600)
