"""Partial functions on a finite base and the algebras they form.

A partial function stores, for each base point (by position), the position of
its image or ``-1`` where it is undefined.  Two functions over the same base
are equal exactly when their graphs are.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Iterable, Sequence

from pfrep.algebra import FiniteAlgebra, direct_product, join

UNDEF = -1

COMPOSE = "compose"
MEET = "meet"
ZERO = "zero"
ID = "id"
DOMAIN = "domain"
RANGE = "range"
ANTIDOMAIN = "antidomain"
OPERATIONS = (COMPOSE, MEET, ZERO, ID, DOMAIN, RANGE, ANTIDOMAIN)
CORE_SIGNATURE = frozenset({COMPOSE, MEET, ANTIDOMAIN})

# Accepted aliases on the command line and in files.
_ALIASES = {";": COMPOSE, "^": MEET, "0": ZERO, "D": DOMAIN, "R": RANGE, "A": ANTIDOMAIN}


class BaseMismatch(ValueError):
    pass


class SizeLimitExceeded(RuntimeError):
    pass


class Unverified(ValueError):
    """A completeness question was asked of a representation that is not verified."""


def parse_signature(ops: Iterable[str]) -> frozenset[str]:
    out = set()
    for op in ops:
        op = _ALIASES.get(op, op)
        if op not in OPERATIONS:
            raise ValueError(f"unknown operation {op!r}; expected one of {OPERATIONS}")
        out.add(op)
    return frozenset(out)


@dataclass(frozen=True)
class PartialFunction:
    base: tuple[str, ...]
    mapping: tuple[int, ...]

    def __post_init__(self):
        if len(self.mapping) != len(self.base):
            raise ValueError("mapping must have one entry per base point")
        k = len(self.base)
        if any(not UNDEF <= v < k for v in self.mapping):
            raise ValueError(f"image index out of range in {self.mapping}")

    @classmethod
    def from_pairs(cls, base: Sequence[str], pairs: Iterable[tuple[str, str]]) -> PartialFunction:
        base = tuple(base)
        pos = {p: i for i, p in enumerate(base)}
        mapping = [UNDEF] * len(base)
        for x, y in pairs:
            if x not in pos or y not in pos:
                raise ValueError(f"pair ({x}, {y}) uses a point outside the base")
            i = pos[x]
            if mapping[i] not in (UNDEF, pos[y]):
                raise ValueError(f"not a function: {x} has two images")
            mapping[i] = pos[y]
        return cls(base, tuple(mapping))

    @property
    def pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple((i, j) for i, j in enumerate(self.mapping) if j != UNDEF)

    @property
    def graph(self) -> frozenset[tuple[str, str]]:
        return frozenset((self.base[i], self.base[j]) for i, j in self.pairs)

    def sorted_graph(self) -> list[list[str]]:
        return [[self.base[i], self.base[j]] for i, j in self.pairs]

    @property
    def domain(self) -> frozenset[int]:
        return frozenset(i for i, j in enumerate(self.mapping) if j != UNDEF)

    def is_empty(self) -> bool:
        return all(j == UNDEF for j in self.mapping)

    def __le__(self, other: PartialFunction) -> bool:
        _same_base(self, other)
        return all(j == UNDEF or j == k for j, k in zip(self.mapping, other.mapping))

    def __call__(self, point: str) -> str | None:
        j = self.mapping[self.base.index(point)]
        return None if j == UNDEF else self.base[j]

    def __repr__(self) -> str:
        body = ", ".join(f"{self.base[i]}->{self.base[j]}" for i, j in self.pairs)
        return f"PartialFunction({{{body}}})"


def _same_base(f: PartialFunction, g: PartialFunction) -> None:
    if f.base != g.base:
        raise BaseMismatch(f"bases differ: {f.base} vs {g.base}")


def compose(f: PartialFunction, g: PartialFunction) -> PartialFunction:
    """``f ; g``: first f, then g."""
    _same_base(f, g)
    gm = g.mapping
    return PartialFunction(f.base, tuple(UNDEF if y == UNDEF else gm[y] for y in f.mapping))


def intersect(f: PartialFunction, g: PartialFunction) -> PartialFunction:
    _same_base(f, g)
    return PartialFunction(
        f.base, tuple(y if y == z else UNDEF for y, z in zip(f.mapping, g.mapping))
    )


def antidomain(f: PartialFunction) -> PartialFunction:
    return PartialFunction(f.base, tuple(i if y == UNDEF else UNDEF for i, y in enumerate(f.mapping)))


def domain_diag(f: PartialFunction) -> PartialFunction:
    return PartialFunction(f.base, tuple(UNDEF if y == UNDEF else i for i, y in enumerate(f.mapping)))


def range_diag(f: PartialFunction) -> PartialFunction:
    image = set(f.mapping)
    return PartialFunction(f.base, tuple(i if i in image else UNDEF for i in range(len(f.base))))


def identity(base: Sequence[str]) -> PartialFunction:
    base = tuple(base)
    return PartialFunction(base, tuple(range(len(base))))


def empty(base: Sequence[str]) -> PartialFunction:
    base = tuple(base)
    return PartialFunction(base, (UNDEF,) * len(base))


def all_functions(base: Sequence[str]) -> list[PartialFunction]:
    base = tuple(base)
    k = len(base)
    return [PartialFunction(base, m) for m in itertools.product(range(UNDEF, k), repeat=k)]


_UNARY = {ANTIDOMAIN: antidomain, DOMAIN: domain_diag, RANGE: range_diag}
_BINARY = {COMPOSE: compose, MEET: intersect}


@dataclass(frozen=True)
class ConcreteAlgebra:
    base: tuple[str, ...]
    functions: tuple[PartialFunction, ...]
    signature: frozenset[str]
    names: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.names:
            object.__setattr__(self, "names", tuple(f"g{i}" for i in range(len(self.functions))))
        if len(self.names) != len(self.functions):
            raise ValueError("one name per function required")

    def __len__(self) -> int:
        return len(self.functions)

    @cached_property
    def position(self) -> dict[PartialFunction, int]:
        return {f: i for i, f in enumerate(self.functions)}

    def __contains__(self, f: PartialFunction) -> bool:
        return f in self.position

    def by_name(self, name: str) -> PartialFunction:
        return self.functions[self.names.index(name)]

    def is_closed(self) -> bool:
        return self.is_closed_under(self.signature)

    def is_closed_under(self, ops: Iterable[str]) -> bool:
        ops = parse_signature(ops)
        fs = self.functions
        members = self.position
        for op in ops:
            if op in _UNARY and any(_UNARY[op](f) not in members for f in fs):
                return False
            if op in _BINARY and any(_BINARY[op](f, g) not in members for f in fs for g in fs):
                return False
        if ZERO in ops and empty(self.base) not in members:
            return False
        if ID in ops and identity(self.base) not in members:
            return False
        return True


def close_generators(
    base: Sequence[str],
    generators: Iterable[PartialFunction],
    signature: Iterable[str] = CORE_SIGNATURE,
    max_size: int = 10_000,
    names: Sequence[str] | None = None,
) -> ConcreteAlgebra:
    """Least set of functions containing ``generators`` and closed under ``signature``.

    Output order is discovery order: generators, then constants, then new
    functions as the worklist finds them.  Generators keep their ``names``;
    everything else is named ``g<k>`` by discovery position.
    """
    base = tuple(base)
    signature = parse_signature(signature)
    found: list[PartialFunction] = []
    seen: dict[PartialFunction, int] = {}
    given_names: dict[PartialFunction, str] = {}

    def add(f):
        if f.base != base:
            raise BaseMismatch(f"generator over {f.base}, expected {base}")
        if f not in seen:
            if len(found) >= max_size:
                raise SizeLimitExceeded(f"closure exceeds {max_size} functions")
            seen[f] = len(found)
            found.append(f)

    generators = list(generators)
    for i, f in enumerate(generators):
        add(f)
        if names is not None and f not in given_names:
            given_names[f] = names[i]
    if ZERO in signature or ANTIDOMAIN in signature:
        add(empty(base))
    if ID in signature:
        add(identity(base))

    unary = [_UNARY[op] for op in sorted(signature) if op in _UNARY]
    binary = [_BINARY[op] for op in sorted(signature) if op in _BINARY]
    i = 0
    while i < len(found):
        f = found[i]
        for op in unary:
            add(op(f))
        for j in range(i + 1):
            g = found[j]
            for op in binary:
                add(op(f, g))
                add(op(g, f))
        i += 1

    taken = set(given_names.values())
    out_names = []
    for k, f in enumerate(found):
        if f in given_names:
            out_names.append(given_names[f])
            continue
        name = f"g{k}"
        while name in taken:
            name += "'"
        taken.add(name)
        out_names.append(name)
    return ConcreteAlgebra(base, tuple(found), signature, tuple(out_names))


def to_abstract(conc: ConcreteAlgebra) -> tuple[FiniteAlgebra, tuple[PartialFunction, ...]]:
    """Operation tables read off the functions; ``labeling[i]`` is element ``i``."""
    if not CORE_SIGNATURE <= conc.signature and not conc.is_closed_under(CORE_SIGNATURE):
        raise ValueError("algebra is not closed under compose, meet and antidomain")
    fs = conc.functions
    pos = conc.position
    alg = FiniteAlgebra.from_tables(
        conc.names,
        [[pos[compose(f, g)] for g in fs] for f in fs],
        [[pos[intersect(f, g)] for g in fs] for f in fs],
        [pos[antidomain(f)] for f in fs],
    )
    return alg, fs


# Representations --------------------------------------------------------------

UNVERIFIED = "unverified"
VERIFIED = "verified"
FAILED = "failed"


@dataclass(frozen=True)
class Representation:
    """A map from the elements of ``source`` to partial functions over ``base``.

    ``assignment[i]`` is the image of element ``i``.  ``witness`` is set when
    verification fails: ``("compose", a, b)``, ``("meet", a, b)``,
    ``("antidomain", a)``, ``("injectivity", a, b)`` or ``("base", a)``.
    """

    source: FiniteAlgebra
    base: tuple[str, ...]
    assignment: tuple[PartialFunction, ...]
    status: str = UNVERIFIED
    witness: tuple | None = field(default=None, compare=False)

    @property
    def verified(self) -> bool:
        return self.status == VERIFIED

    def image(self, element: int | str) -> PartialFunction:
        if isinstance(element, str):
            element = self.source.index(element)
        return self.assignment[element]

    def concrete(self) -> ConcreteAlgebra:
        return ConcreteAlgebra(self.base, self.assignment, CORE_SIGNATURE, self.source.elements)


def verify_representation(rep: Representation) -> Representation:
    """Check the assignment against the tables; first disagreement wins.

    Check order: base, compose, meet, antidomain, injectivity.
    """
    alg = rep.source
    asg = rep.assignment
    n = len(alg)
    if len(asg) != n:
        return replace(rep, status=FAILED, witness=("base", len(asg)))
    for a in range(n):
        if asg[a].base != rep.base:
            return replace(rep, status=FAILED, witness=("base", a))
    for a in range(n):
        for b in range(n):
            if asg[alg.compose[a][b]] != compose(asg[a], asg[b]):
                return replace(rep, status=FAILED, witness=(COMPOSE, a, b))
    for a in range(n):
        for b in range(n):
            if asg[alg.meet[a][b]] != intersect(asg[a], asg[b]):
                return replace(rep, status=FAILED, witness=(MEET, a, b))
    for a in range(n):
        if asg[alg.antidomain[a]] != antidomain(asg[a]):
            return replace(rep, status=FAILED, witness=(ANTIDOMAIN, a))
    first: dict[PartialFunction, int] = {}
    for a in range(n):
        if asg[a] in first:
            return replace(rep, status=FAILED, witness=("injectivity", first[asg[a]], a))
        first[asg[a]] = a
    return replace(rep, status=VERIFIED, witness=None)


def identity_representation(conc: ConcreteAlgebra) -> Representation:
    alg, labeling = to_abstract(conc)
    return verify_representation(Representation(alg, conc.base, labeling))


def _require_verified(rep: Representation) -> None:
    if not rep.verified:
        raise Unverified(f"representation status is {rep.status}")


def is_meet_complete(rep: Representation) -> bool:
    """Every nonempty subset's meet is sent to the intersection of the images.

    All subsets are covered by exploring (meet, intersection) states reachable
    by adding one element at a time; distinct subsets with the same state need
    no separate check.
    """
    _require_verified(rep)
    alg = rep.source
    asg = rep.assignment
    n = len(alg)
    seen = {(s, asg[s]) for s in range(n)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for m, inter in frontier:
            if asg[m] != inter:
                return False
            for t in range(n):
                state = (alg.meet[m][t], intersect(inter, asg[t]))
                if state not in seen:
                    seen.add(state)
                    nxt.append(state)
        frontier = nxt
    return True


def is_join_complete(rep: Representation) -> bool:
    """Every existing join (the empty one included) is sent to the union of the images.

    Subsets are explored as (upper-bound set, union of graphs) states.
    """
    _require_verified(rep)
    alg = rep.source
    pairs = [frozenset(f.pairs) for f in rep.assignment]
    n = len(alg)
    up = alg.upsets
    start = (frozenset(range(n)), frozenset())
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for ub, union in frontier:
            j = _least_of(alg, ub)
            if j is not None and pairs[j] != union:
                return False
            for t in range(n):
                state = (ub & up[t], union | pairs[t])
                if state not in seen:
                    seen.add(state)
                    nxt.append(state)
        frontier = nxt
    return True


def _least_of(alg: FiniteAlgebra, candidates: frozenset[int]) -> int | None:
    up = alg.upsets
    for c in candidates:
        if candidates <= up[c]:
            return c
    return None


def is_atomic_rep(rep: Representation) -> bool:
    """Every pair in any image lies in the image of some atom."""
    _require_verified(rep)
    covered = set()
    for x in rep.source.atoms:
        covered.update(rep.assignment[x].pairs)
    return all(set(f.pairs) <= covered for f in rep.assignment)


def product_representation(r1: Representation, r2: Representation) -> Representation:
    """Representation of the direct product over the disjoint union of the two bases."""
    _require_verified(r1)
    _require_verified(r2)
    k1 = len(r1.base)
    base = tuple(f"0:{p}" for p in r1.base) + tuple(f"1:{p}" for p in r2.base)
    asg = []
    for f in r1.assignment:
        for g in r2.assignment:
            shifted = tuple(UNDEF if y == UNDEF else y + k1 for y in g.mapping)
            asg.append(PartialFunction(base, f.mapping + shifted))
    rep = Representation(direct_product(r1.source, r2.source), base, tuple(asg))
    return verify_representation(rep)


# Order-theoretic helpers on concrete algebras used by the law checks.

def concrete_join(conc: ConcreteAlgebra, members: Iterable[PartialFunction]) -> PartialFunction | None:
    alg, labeling = to_abstract(conc)
    j = join(alg, [conc.position[f] for f in members])
    return None if j is None else labeling[j]
