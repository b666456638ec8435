"""The atom-base representation, the finite decision procedure, and a search oracle.

For a finite algebra, ``build_theta`` sends each element ``a`` to the partial
function on the atoms taking ``x`` to ``x;a`` whenever that is nonzero.  The
algebra is (completely) representable exactly when this map verifies; the
independent ``brute_force_search`` exists to keep that claim honest.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from pfrep.algebra import (
    FiniteAlgebra,
    InconsistentZero,
    find_isomorphism,
    validate,
)
from pfrep.pfun import (
    UNDEF,
    PartialFunction,
    Representation,
    Unverified,
    is_atomic_rep,
    is_join_complete,
    is_meet_complete,
    to_abstract,
    verify_representation,
)

NON_ATOM_IMAGE = "NonAtomImage"
INJECTIVITY_COLLISION = "InjectivityCollision"
OPERATION_MISMATCH = "OperationMismatch"
INVALID_TABLE = "InvalidTable"


class SearchBudgetExceeded(RuntimeError):
    pass


class CompletenessMismatch(AssertionError):
    """Meet completeness, join completeness and atomicity disagreed on one representation."""


@dataclass(frozen=True)
class Refutation:
    kind: str
    witness: tuple

    def to_json(self, alg: FiniteAlgebra) -> dict:
        def show(v):
            return alg.elements[v] if isinstance(v, int) else v

        return {"kind": self.kind, "witness": [show(v) for v in self.witness]}


@dataclass(frozen=True)
class ThetaOutcome:
    representation: Representation | None
    refutation: Refutation | None

    @property
    def verified(self) -> bool:
        return self.representation is not None and self.representation.verified


@dataclass(frozen=True)
class Verdict:
    completely_representable: bool
    witness: Representation | Refutation | None
    method: str

    def __bool__(self) -> bool:
        return self.completely_representable


def theta_assignment(alg: FiniteAlgebra) -> tuple[tuple[str, ...], list[PartialFunction]] | Refutation:
    z = alg.zero
    ats = alg.atoms
    pos = {x: i for i, x in enumerate(ats)}
    base = tuple(alg.elements[x] for x in ats)
    images = []
    for a in range(len(alg)):
        mapping = []
        for x in ats:
            y = alg.compose[x][a]
            if y == z:
                mapping.append(UNDEF)
            elif y in pos:
                mapping.append(pos[y])
            else:
                return Refutation(NON_ATOM_IMAGE, (x, a))
        images.append(PartialFunction(base, tuple(mapping)))
    return base, images


def build_theta(alg: FiniteAlgebra) -> ThetaOutcome:
    """Build and verify the atom-base map.  Refutations are data, never raised."""
    try:
        built = theta_assignment(alg)
    except InconsistentZero:
        return ThetaOutcome(None, Refutation(INVALID_TABLE, ("zero-consistent",)))
    if isinstance(built, Refutation):
        return ThetaOutcome(None, built)
    base, images = built
    rep = verify_representation(Representation(alg, base, tuple(images)))
    if rep.verified:
        return ThetaOutcome(rep, None)
    kind, *args = rep.witness
    if kind == "injectivity":
        return ThetaOutcome(rep, Refutation(INJECTIVITY_COLLISION, tuple(args)))
    return ThetaOutcome(rep, Refutation(OPERATION_MISMATCH, (kind, *args)))


def decide_complete_representability(alg: FiniteAlgebra, method: str = "theta", **search_opts) -> Verdict:
    """YES with a complete representation, or NO with a refutation.

    ``method`` is ``"theta"``, ``"brute_force"`` or ``"both"``; the last runs
    both and raises ``AssertionError`` if they disagree.
    """
    report = validate(alg)
    if not report.passed:
        law, witness = report.failures[0]
        refutation = Refutation(INVALID_TABLE, (law, *witness))
        return Verdict(False, refutation, method if method != "both" else "both_agree")
    if method == "brute_force":
        rep = brute_force_search(alg, **search_opts)
        return Verdict(rep is not None, rep, "brute_force")
    outcome = build_theta(alg)
    verdict = Verdict(
        outcome.verified,
        outcome.representation if outcome.verified else outcome.refutation,
        "theta",
    )
    if method == "theta":
        return verdict
    if method != "both":
        raise ValueError(f"unknown method {method!r}")
    rep = brute_force_search(alg, **search_opts)
    if (rep is not None) != verdict.completely_representable:
        raise AssertionError(
            f"theta says {verdict.completely_representable}, search says {rep is not None}"
        )
    return Verdict(verdict.completely_representable, verdict.witness, "both_agree")


@dataclass(frozen=True)
class CompletenessReport:
    meet_complete: bool
    join_complete: bool
    atomic: bool

    @property
    def all_true(self) -> bool:
        return self.meet_complete and self.join_complete and self.atomic


def check_completeness(rep: Representation) -> CompletenessReport:
    if not rep.verified:
        raise Unverified(f"representation status is {rep.status}")
    report = CompletenessReport(is_meet_complete(rep), is_join_complete(rep), is_atomic_rep(rep))
    if len({report.meet_complete, report.join_complete, report.atomic}) != 1:
        raise CompletenessMismatch(str(report))
    return report


def theta_image_isomorphism(outcome: ThetaOutcome) -> tuple[int, ...] | None:
    """Isomorphism from the source to the abstraction of the theta image, found by search."""
    rep = outcome.representation
    if rep is None or not rep.verified:
        return None
    image, _ = to_abstract(rep.concrete())
    return find_isomorphism(rep.source, image)


# Brute-force oracle -------------------------------------------------------------


def brute_force_search(
    alg: FiniteAlgebra,
    max_base: int | None = None,
    node_limit: int = 2_000_000,
) -> Representation | None:
    """Search for any representation on bases of 0..max_base points.

    Independent of the atom construction: elements are assigned partial
    functions one at a time (zero first, then atoms, then upward), every
    operation whose arguments are assigned forces its result, and candidates
    must respect the order and domain constraints already in place.  The
    first nonzero choice is taken only up to relabeling of base points.

    ``max_base`` defaults to the number of atoms, which suffices for finite
    algebras.  Raises SearchBudgetExceeded after ``node_limit`` branch nodes.
    """
    if max_base is None:
        try:
            max_base = len(alg.atoms)
        except InconsistentZero:
            return None
    budget = [node_limit]
    for k in range(max_base + 1):
        rep = _search_on_base(alg, k, budget)
        if rep is not None:
            return rep
    return None


def _search_on_base(alg: FiniteAlgebra, k: int, budget: list[int]) -> Representation | None:
    n = len(alg)
    base = tuple(str(i) for i in range(k))
    try:
        z = alg.zero
        order_key = _search_order(alg)
    except InconsistentZero:
        return None
    empty_map = (UNDEF,) * k
    C, M, A = alg.compose, alg.meet, alg.antidomain
    up, down = alg.upsets, alg.downsets

    asg: list[tuple[int, ...] | None] = [None] * n
    owner: dict[tuple[int, ...], int] = {}

    def assign(e, m, trail):
        queue = [(e, m)]
        while queue:
            e, m = queue.pop()
            if asg[e] is not None:
                if asg[e] != m:
                    return False
                continue
            if m in owner:
                return False
            asg[e] = m
            owner[m] = e
            trail.append(e)
            queue.append((A[e], _anti(m)))
            for v in range(n):
                mv = asg[v]
                if mv is None:
                    continue
                queue.append((C[e][v], _comp(m, mv)))
                queue.append((C[v][e], _comp(mv, m)))
                queue.append((M[e][v], _inter(m, mv)))
        return True

    def undo(trail):
        for e in trail:
            del owner[asg[e]]
            asg[e] = None

    def options(e):
        # images must contain everything assigned below e, sit inside
        # everything assigned above it, and be defined exactly off A(e)
        lower = [UNDEF] * k
        for b in down[e]:
            mb = asg[b]
            if mb is None:
                continue
            for i, y in enumerate(mb):
                if y != UNDEF:
                    if lower[i] not in (UNDEF, y):
                        return
                    lower[i] = y
        upper = None
        for b in up[e]:
            mb = asg[b]
            if mb is not None:
                upper = mb if upper is None else _inter(upper, mb)
        ma = asg[A[e]]
        per_point = []
        for i in range(k):
            if ma is not None:
                allowed = [UNDEF] if ma[i] != UNDEF else list(range(k))
            else:
                allowed = [UNDEF, *range(k)]
            if upper is not None:
                allowed = [y for y in allowed if y == UNDEF or y == upper[i]]
            if lower[i] != UNDEF:
                allowed = [y for y in allowed if y == lower[i]]
            if not allowed:
                return
            per_point.append(allowed)
        yield from itertools.product(*per_point)

    first_branch = [True]

    def search():
        nxt = next((e for e in order_key if asg[e] is None), None)
        if nxt is None:
            return True
        budget[0] -= 1
        if budget[0] < 0:
            raise SearchBudgetExceeded("brute-force search node budget exhausted")
        was_first = first_branch[0]
        first_branch[0] = False
        for m in options(nxt):
            if m in owner or (was_first and k <= _CANONICAL_MAX and m != _canonical(m)):
                continue
            trail: list[int] = []
            if assign(nxt, m, trail) and search():
                return True
            undo(trail)
        first_branch[0] = was_first
        return False

    trail: list[int] = []
    if not assign(z, empty_map, trail):
        return None
    if not search():
        return None
    images = tuple(PartialFunction(base, asg[e]) for e in range(n))  # type: ignore[arg-type]
    rep = verify_representation(Representation(alg, base, images))
    return rep if rep.verified else None


def _search_order(alg: FiniteAlgebra) -> list[int]:
    z = alg.zero
    ats = set(alg.atoms)
    return sorted(range(len(alg)), key=lambda e: (e != z, e not in ats, len(alg.downsets[e]), e))


def _comp(f, g):
    return tuple(UNDEF if y == UNDEF else g[y] for y in f)


def _inter(f, g):
    return tuple(y if y == w else UNDEF for y, w in zip(f, g))


def _anti(f):
    return tuple(i if y == UNDEF else UNDEF for i, y in enumerate(f))


_CANONICAL_MAX = 5


def _canonical(m):
    # lexicographically least relabeling of the base points
    k = len(m)
    best = None
    for perm in itertools.permutations(range(k)):
        relabeled = [UNDEF] * k
        for i, y in enumerate(m):
            relabeled[perm[i]] = UNDEF if y == UNDEF else perm[y]
        t = tuple(relabeled)
        if best is None or t < best:
            best = t
    return best
