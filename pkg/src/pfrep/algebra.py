"""Finite (compose, meet, antidomain)-algebras given by operation tables.

Elements are indices into ``FiniteAlgebra.elements``; the names are for
display only.  ``compose[i][j]`` is ``elements[i] ; elements[j]`` with
composition read left to right.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence


class TableError(ValueError):
    """Raised for ragged or out-of-range operation tables."""


class InconsistentZero(ValueError):
    """``A(a) ; a`` is not the same element for every ``a``."""


class EmptyMeet(ValueError):
    pass


class NotBoolean(ValueError):
    """A down-set failed a Boolean-algebra axiom; ``witness`` names it."""

    def __init__(self, law: str, witness: tuple):
        super().__init__(f"{law} fails at {witness}")
        self.law = law
        self.witness = witness


@dataclass(frozen=True)
class FiniteAlgebra:
    elements: tuple[str, ...]
    compose: tuple[tuple[int, ...], ...]
    meet: tuple[tuple[int, ...], ...]
    antidomain: tuple[int, ...]

    def __post_init__(self):
        n = len(self.elements)
        if n == 0:
            raise TableError("an algebra needs at least one element")
        if len(set(self.elements)) != n:
            raise TableError("duplicate element names")
        for name, table in (("compose", self.compose), ("meet", self.meet)):
            if len(table) != n:
                raise TableError(f"{name}: expected {n} rows, got {len(table)}")
            for i, row in enumerate(table):
                if len(row) != n:
                    raise TableError(f"{name}[{i}]: expected {n} entries, got {len(row)}")
                for j, v in enumerate(row):
                    if not 0 <= v < n:
                        raise TableError(f"{name}[{i}][{j}] = {v} is not an element index")
        if len(self.antidomain) != n:
            raise TableError(f"antidomain: expected {n} entries, got {len(self.antidomain)}")
        for i, v in enumerate(self.antidomain):
            if not 0 <= v < n:
                raise TableError(f"antidomain[{i}] = {v} is not an element index")

    @classmethod
    def from_tables(
        cls,
        elements: Sequence[str],
        compose: Sequence[Sequence[int]],
        meet: Sequence[Sequence[int]],
        antidomain: Sequence[int],
    ) -> FiniteAlgebra:
        return cls(
            tuple(elements),
            tuple(tuple(int(v) for v in row) for row in compose),
            tuple(tuple(int(v) for v in row) for row in meet),
            tuple(int(v) for v in antidomain),
        )

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def size(self) -> int:
        return len(self.elements)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown element {name!r}") from None

    @cached_property
    def _index(self) -> dict[str, int]:
        return {e: i for i, e in enumerate(self.elements)}

    def name(self, i: int) -> str:
        return self.elements[i]

    @cached_property
    def zero(self) -> int:
        return zero(self)

    @cached_property
    def atoms(self) -> tuple[int, ...]:
        return atoms(self)

    @cached_property
    def upsets(self) -> tuple[frozenset[int], ...]:
        """``upsets[a]`` is the set of ``b`` with ``a <= b``."""
        n = len(self)
        return tuple(
            frozenset(b for b in range(n) if self.meet[a][b] == a) for a in range(n)
        )

    @cached_property
    def downsets(self) -> tuple[frozenset[int], ...]:
        n = len(self)
        return tuple(
            frozenset(b for b in range(n) if self.meet[b][a] == b) for a in range(n)
        )


@dataclass(frozen=True)
class ValidationReport:
    passed: bool
    failures: tuple[tuple[str, tuple[int, ...]], ...] = field(default_factory=tuple)

    def __bool__(self) -> bool:
        return self.passed


# Replay each named law on a witness tuple; True means the law holds there.
LAWS = {
    "meet-idempotent": lambda alg, a: alg.meet[a][a] == a,
    "meet-commutative": lambda alg, a, b: alg.meet[a][b] == alg.meet[b][a],
    "meet-associative": lambda alg, a, b, c: (
        alg.meet[alg.meet[a][b]][c] == alg.meet[a][alg.meet[b][c]]
    ),
    "zero-consistent": lambda alg, a, b: (
        alg.compose[alg.antidomain[a]][a] == alg.compose[alg.antidomain[b]][b]
    ),
    "zero-meet": lambda alg, a: alg.meet[_z(alg)][a] == _z(alg),
    "zero-left": lambda alg, a: alg.compose[_z(alg)][a] == _z(alg),
    "zero-right": lambda alg, a: alg.compose[a][_z(alg)] == _z(alg),
}
_ARITY = {
    "meet-idempotent": 1,
    "meet-commutative": 2,
    "meet-associative": 3,
    "zero-consistent": 2,
    "zero-meet": 1,
    "zero-left": 1,
    "zero-right": 1,
}


def _z(alg: FiniteAlgebra) -> int:
    # candidate zero: A(e0) ; e0
    return alg.compose[alg.antidomain[0]][0]


def validate(alg: FiniteAlgebra) -> ValidationReport:
    """Check the semilattice and zero laws; one lexicographically least witness per failed law.

    The law list is deliberately small: meet must be a semilattice, ``A(a);a``
    must be a single element ``0``, and that ``0`` must be absorbing for meet
    and both sides of composition.  Passing does not imply representability.
    """
    n = len(alg)
    failures = []
    for law, check in LAWS.items():
        for args in itertools.product(range(n), repeat=_ARITY[law]):
            if not check(alg, *args):
                failures.append((law, args))
                break
    return ValidationReport(not failures, tuple(failures))


def replay_law(alg: FiniteAlgebra, law: str, witness: tuple[int, ...]) -> bool:
    """True iff ``law`` holds at ``witness``."""
    return LAWS[law](alg, *witness)


def leq(alg: FiniteAlgebra, a: int, b: int) -> bool:
    return alg.meet[a][b] == a


def zero(alg: FiniteAlgebra) -> int:
    z = alg.compose[alg.antidomain[0]][0]
    for a in range(len(alg)):
        if alg.compose[alg.antidomain[a]][a] != z:
            raise InconsistentZero(
                f"A({alg.elements[a]});{alg.elements[a]} = "
                f"{alg.elements[alg.compose[alg.antidomain[a]][a]]} but "
                f"A({alg.elements[0]});{alg.elements[0]} = {alg.elements[z]}"
            )
    return z


def domain_of(alg: FiniteAlgebra, a: int) -> int:
    return alg.antidomain[alg.antidomain[a]]


def atoms(alg: FiniteAlgebra) -> tuple[int, ...]:
    z = zero(alg)
    down = alg.downsets
    return tuple(a for a in range(len(alg)) if a != z and down[a] == {z, a})


def is_atomic(alg: FiniteAlgebra) -> bool:
    z = alg.zero
    ats = set(alg.atoms)
    return all(a == z or ats & alg.downsets[a] for a in range(len(alg)))


def join(alg: FiniteAlgebra, subset: Iterable[int]) -> int | None:
    """Least upper bound of ``subset`` if it exists.  ``join(alg, ())`` is the least element."""
    ub = set(range(len(alg)))
    for s in subset:
        ub &= alg.upsets[s]
    return _least(alg, ub)


def meet_set(alg: FiniteAlgebra, subset: Iterable[int]) -> int | None:
    subset = list(subset)
    if not subset:
        raise EmptyMeet("meet of the empty set is not defined")
    lb = set(range(len(alg)))
    for s in subset:
        lb &= alg.downsets[s]
    for c in lb:
        if lb <= alg.downsets[c]:
            return c
    return None


def _least(alg: FiniteAlgebra, candidates: set[int]) -> int | None:
    for c in candidates:
        if candidates <= alg.upsets[c]:
            return c
    return None


def is_atomistic(alg: FiniteAlgebra) -> bool:
    ats = alg.atoms
    return all(
        join(alg, [x for x in ats if leq(alg, x, a)]) == a for a in range(len(alg))
    )


@dataclass(frozen=True)
class BooleanView:
    carrier: tuple[int, ...]
    top: int
    bottom: int
    complement: dict[int, int]

    def join(self, alg: FiniteAlgebra, b: int, c: int) -> int:
        comp = self.complement
        return comp[alg.meet[comp[b]][comp[c]]]


def downset_boolean(alg: FiniteAlgebra, a: int) -> BooleanView:
    """The down-set of ``a`` as a Boolean algebra with complement ``b -> A(b);a``.

    Raises NotBoolean with a witness when any axiom fails; on a representable
    algebra that never happens.
    """
    z = zero(alg)
    carrier = tuple(sorted(alg.downsets[a]))
    members = set(carrier)
    if z not in members:
        raise NotBoolean("zero-below-top", (z, a))
    comp = {b: alg.compose[alg.antidomain[b]][a] for b in carrier}
    for b in carrier:
        if comp[b] not in members:
            raise NotBoolean("complement-closed", (b,))
        for c in carrier:
            if alg.meet[b][c] not in members:
                raise NotBoolean("meet-closed", (b, c))
    view = BooleanView(carrier, a, z, comp)
    m = alg.meet

    def j(b, c):
        return view.join(alg, b, c)

    for b in carrier:
        if comp[comp[b]] != b:
            raise NotBoolean("double-complement", (b,))
        if m[b][comp[b]] != z:
            raise NotBoolean("complement-meet", (b,))
        if j(b, comp[b]) != a:
            raise NotBoolean("complement-join", (b,))
        if m[b][a] != b or j(b, z) != b:
            raise NotBoolean("identity", (b,))
        for c in carrier:
            if j(b, c) != j(c, b):
                raise NotBoolean("join-commutative", (b, c))
            # absorption ties the De Morgan join to the meet order
            if m[b][j(b, c)] != b:
                raise NotBoolean("absorption", (b, c))
            for d in carrier:
                if m[b][j(c, d)] != j(m[b][c], m[b][d]):
                    raise NotBoolean("meet-distributive", (b, c, d))
                if j(b, m[c][d]) != m[j(b, c)][j(b, d)]:
                    raise NotBoolean("join-distributive", (b, c, d))
    return view


class PhiCheck(NamedTuple):
    holds: bool
    witness: tuple[int, int, int] | None


def check_phi(alg: FiniteAlgebra) -> PhiCheck:
    """For all a, b, c: if c >= a;x for every atom x <= b then c >= a;b.

    On failure the witness is the first ``(a, b, c)`` in index order.
    """
    n = len(alg)
    ats = alg.atoms
    up = alg.upsets
    everything = frozenset(range(n))
    for a in range(n):
        row = alg.compose[a]
        for b in range(n):
            bounds = everything
            for x in ats:
                if alg.meet[x][b] == x:
                    bounds = bounds & up[row[x]]
            target = up[row[b]]
            for c in sorted(bounds - target):
                return PhiCheck(False, (a, b, c))
    return PhiCheck(True, None)


def direct_product(a1: FiniteAlgebra, a2: FiniteAlgebra) -> FiniteAlgebra:
    n2 = len(a2)
    pairs = list(itertools.product(range(len(a1)), range(n2)))

    def idx(i, j):
        return i * n2 + j

    return FiniteAlgebra.from_tables(
        [f"({a1.elements[i]},{a2.elements[j]})" for i, j in pairs],
        [[idx(a1.compose[i][k], a2.compose[j][l]) for k, l in pairs] for i, j in pairs],
        [[idx(a1.meet[i][k], a2.meet[j][l]) for k, l in pairs] for i, j in pairs],
        [idx(a1.antidomain[i], a2.antidomain[j]) for i, j in pairs],
    )


def boolean_as_algebra(atom_count: int) -> FiniteAlgebra:
    """The powerset of ``atom_count`` atoms with compose = meet = intersection and A = complement."""
    if atom_count < 0:
        raise ValueError("atom_count must be non-negative")
    size = 1 << atom_count
    full = size - 1
    names = [
        "{" + ",".join(f"a{k}" for k in range(atom_count) if s >> k & 1) + "}"
        for s in range(size)
    ]
    inter = [[s & t for t in range(size)] for s in range(size)]
    return FiniteAlgebra.from_tables(names, inter, inter, [full ^ s for s in range(size)])


def relabel(alg: FiniteAlgebra, order: Sequence[int], names: Sequence[str] | None = None) -> FiniteAlgebra:
    """Reorder elements: new element ``k`` is old element ``order[k]``."""
    pos = {old: new for new, old in enumerate(order)}
    return FiniteAlgebra.from_tables(
        names if names is not None else [alg.elements[o] for o in order],
        [[pos[alg.compose[i][j]] for j in order] for i in order],
        [[pos[alg.meet[i][j]] for j in order] for i in order],
        [pos[alg.antidomain[i]] for i in order],
    )


def find_isomorphism(a1: FiniteAlgebra, a2: FiniteAlgebra) -> tuple[int, ...] | None:
    """An isomorphism ``a1 -> a2`` as an index tuple, or None.

    Atoms are matched first; every other element is pinned down by
    propagating the three operations, and only unforced elements are branched on.
    """
    n = len(a1)
    if n != len(a2):
        return None
    try:
        z1, z2 = zero(a1), zero(a2)
        at1, at2 = a1.atoms, a2.atoms
    except InconsistentZero:
        z1 = z2 = None
        at1 = at2 = ()
    if len(at1) != len(at2):
        return None
    inv1, inv2 = _invariants(a1), _invariants(a2)
    if sorted(inv1) != sorted(inv2):
        return None
    at1_set, at2_set = set(at1), set(at2)
    rest1 = [e for e in _height_order(a1) if e not in at1_set and e != z1]
    order = ([z1] if z1 is not None else []) + list(at1) + rest1

    fwd: list[int | None] = [None] * n
    used: list[int | None] = [None] * n

    def assign(x, y, trail):
        if fwd[x] is not None:
            return fwd[x] == y
        if used[y] is not None or inv1[x] != inv2[y]:
            return False
        fwd[x] = y
        used[y] = x
        trail.append(x)
        queue = [x]
        while queue:
            u = queue.pop()
            pending = [(a1.antidomain[u], a2.antidomain[fwd[u]])]
            for v in range(n):
                if fwd[v] is None:
                    continue
                fu, fv = fwd[u], fwd[v]
                pending.append((a1.compose[u][v], a2.compose[fu][fv]))
                pending.append((a1.compose[v][u], a2.compose[fv][fu]))
                pending.append((a1.meet[u][v], a2.meet[fu][fv]))
            for s, t in pending:
                if fwd[s] is None:
                    if used[t] is not None or inv1[s] != inv2[t]:
                        return False
                    fwd[s] = t
                    used[t] = s
                    trail.append(s)
                    queue.append(s)
                elif fwd[s] != t:
                    return False
        return True

    def undo(trail):
        for x in trail:
            used[fwd[x]] = None
            fwd[x] = None

    def search(k):
        while k < n and fwd[order[k]] is not None:
            k += 1
        if k == n:
            return True
        x = order[k]
        pool = at2 if x in at1_set else range(n)
        for y in pool:
            if used[y] is not None:
                continue
            if (y in at2_set) != (x in at1_set):
                continue
            trail: list[int] = []
            if assign(x, y, trail) and search(k + 1):
                return True
            undo(trail)
        return False

    if search(0):
        return tuple(fwd)  # type: ignore[arg-type]
    return None


def _height_order(alg: FiniteAlgebra) -> list[int]:
    return sorted(range(len(alg)), key=lambda a: (len(alg.downsets[a]), a))


def _invariants(alg: FiniteAlgebra) -> list[tuple]:
    # isomorphism-invariant fingerprint per element
    n = len(alg)
    out = []
    for a in range(n):
        out.append(
            (
                len(alg.downsets[a]),
                len(alg.upsets[a]),
                alg.meet[a][a] == a,
                alg.antidomain[a] == a,
                alg.compose[a][a] == a,
                sum(1 for b in range(n) if alg.compose[a][b] == a),
                sum(1 for b in range(n) if alg.compose[b][a] == a),
            )
        )
    return out


def is_isomorphism(a1: FiniteAlgebra, a2: FiniteAlgebra, mapping: Sequence[int]) -> bool:
    n = len(a1)
    if n != len(a2) or sorted(mapping) != list(range(n)):
        return False
    return all(
        mapping[a1.antidomain[a]] == a2.antidomain[mapping[a]]
        and all(
            mapping[a1.compose[a][b]] == a2.compose[mapping[a]][mapping[b]]
            and mapping[a1.meet[a][b]] == a2.meet[mapping[a]][mapping[b]]
            for b in range(n)
        )
        for a in range(n)
    )


# Distributive laws that every representable algebra satisfies.

def right_distributivity_violation(alg: FiniteAlgebra) -> tuple[frozenset[int], int] | None:
    """First ``(S, a)`` with ``join(S) ; a != join(S ; a)`` where ``join(S)`` exists.

    Every subset S is covered: subsets are explored as states keyed by their
    upper-bound sets, which determine both joins, so the search stays small.
    """
    n = len(alg)
    up = alg.upsets
    everything = frozenset(range(n))
    for a in range(n):
        col = [alg.compose[s][a] for s in range(n)]
        start = (everything, everything)
        seen = {start: frozenset()}
        frontier = [start]
        while frontier:
            nxt = []
            for state in frontier:
                ub_s, ub_sa = state
                j = _least(alg, set(ub_s))
                if j is not None and _least(alg, set(ub_sa)) != alg.compose[j][a]:
                    return seen[state], a
                for t in range(n):
                    new = (ub_s & up[t], ub_sa & up[col[t]])
                    if new not in seen:
                        seen[new] = seen[state] | {t}
                        nxt.append(new)
            frontier = nxt
    return None


def left_distributivity_violations(alg: FiniteAlgebra) -> list[tuple[str, int, int, int]]:
    """Binary instances of ``a;(b v c) = a;b v a;c`` and ``a;(b ^ c) = a;b ^ a;c``.

    Returns ``(law, a, b, c)`` for every failure; joins are only tested where
    ``b v c`` exists.
    """
    n = len(alg)
    out = []
    for a, b, c in itertools.product(range(n), repeat=3):
        row = alg.compose[a]
        bc = join(alg, (b, c))
        if bc is not None and join(alg, (row[b], row[c])) != row[bc]:
            out.append(("left-join", a, b, c))
        if row[alg.meet[b][c]] != alg.meet[row[b]][row[c]]:
            out.append(("left-meet", a, b, c))
    return out


def right_meet_violations(alg: FiniteAlgebra) -> list[tuple[int, int, int]]:
    """Every ``(a, b, c)`` with ``(a ^ b);c != (a;c) ^ (b;c)``.

    Partial functions only guarantee ``<=`` here, so representable algebras may fail it.
    """
    n = len(alg)
    comp, meet = alg.compose, alg.meet
    return [
        (a, b, c)
        for a, b, c in itertools.product(range(n), repeat=3)
        if comp[meet[a][b]][c] != meet[comp[a][c]][comp[b][c]]
    ]
