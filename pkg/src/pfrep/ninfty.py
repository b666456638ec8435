"""An infinite algebra of partial functions on ``{p}`` plus ``N u {inf}``, handled symbolically.

Its elements are the identity restricted to ``P u B`` where ``P`` is empty or
``{p}`` and ``B`` is a finite subset of ``N = {1, 2, ...}`` or a cofinite
subset of ``N u {inf}`` containing ``inf``, together with one extra function
``F`` sending ``p`` to ``inf``.

In this algebra composition fails to distribute on the left over the join
of ``g_i = id{1..i}`` and over the meet of ``h_i = id({i, i+1, ...} u {inf})``.
Both families are handled here by finite case analysis, and every operation
is cross-checked against concrete truncations.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from pfrep.pfun import (
    CORE_SIGNATURE,
    UNDEF,
    ConcreteAlgebra,
    PartialFunction,
    antidomain,
    compose,
    intersect,
)

FINITE = "finite"
COFINITE = "cofinite"


@dataclass(frozen=True)
class FinCofSet:
    """A finite subset of N, or a cofinite subset of N u {inf} given by its (finite) complement.

    ``support`` lists the members when finite and the missing naturals when
    cofinite; ``inf`` is a member exactly in the cofinite case.
    """

    kind: str
    support: frozenset[int]

    def __post_init__(self):
        if self.kind not in (FINITE, COFINITE):
            raise ValueError(f"kind must be {FINITE!r} or {COFINITE!r}")
        if any(not isinstance(i, int) or i < 1 for i in self.support):
            raise ValueError("support must consist of naturals >= 1")

    @classmethod
    def finite(cls, members=()) -> FinCofSet:
        return cls(FINITE, frozenset(members))

    @classmethod
    def cofinite(cls, missing=()) -> FinCofSet:
        return cls(COFINITE, frozenset(missing))

    @property
    def contains_infinity(self) -> bool:
        return self.kind == COFINITE

    def __contains__(self, i: int) -> bool:
        return (i in self.support) == (self.kind == FINITE)

    def is_empty(self) -> bool:
        return self.kind == FINITE and not self.support

    def complement(self) -> FinCofSet:
        return FinCofSet(COFINITE if self.kind == FINITE else FINITE, self.support)

    def __and__(self, other: FinCofSet) -> FinCofSet:
        if self.kind == FINITE and other.kind == FINITE:
            return FinCofSet.finite(self.support & other.support)
        if self.kind == FINITE:
            return FinCofSet.finite(self.support - other.support)
        if other.kind == FINITE:
            return FinCofSet.finite(other.support - self.support)
        return FinCofSet.cofinite(self.support | other.support)

    def __le__(self, other: FinCofSet) -> bool:
        return self & other == self

    def to_json(self):
        return {"kind": self.kind, "support": sorted(self.support)}

    def __str__(self) -> str:
        if self.kind == FINITE:
            return "{" + ",".join(map(str, sorted(self.support))) + "}"
        if not self.support:
            return "N_inf"
        return "N_inf-{" + ",".join(map(str, sorted(self.support))) + "}"


@dataclass(frozen=True)
class IdRestriction:
    p: bool
    b: FinCofSet

    def to_json(self):
        return {"p": self.p, "set": self.b.to_json()}

    def __str__(self) -> str:
        return f"id[{'{p} u ' if self.p else ''}{self.b}]"


@dataclass(frozen=True)
class FFunction:
    """The function defined only at ``p``, with value ``inf``."""

    def to_json(self):
        return "f"

    def __str__(self) -> str:
        return "f"


FElement = Union[IdRestriction, FFunction]

F = FFunction()
ZERO = IdRestriction(False, FinCofSet.finite())
TOP_N = IdRestriction(False, FinCofSet.cofinite())  # identity on N u {inf}
IDENTITY = IdRestriction(True, FinCofSet.cofinite())


def f_compose(x: FElement, y: FElement) -> FElement:
    if isinstance(x, FFunction):
        if isinstance(y, FFunction):
            return ZERO
        return F if y.b.contains_infinity else ZERO
    if isinstance(y, FFunction):
        return F if x.p else ZERO
    return IdRestriction(x.p and y.p, x.b & y.b)


def f_meet(x: FElement, y: FElement) -> FElement:
    if isinstance(x, FFunction) or isinstance(y, FFunction):
        return F if x == y else ZERO
    return IdRestriction(x.p and y.p, x.b & y.b)


def f_antidomain(x: FElement) -> FElement:
    if isinstance(x, FFunction):
        return TOP_N
    return IdRestriction(not x.p, x.b.complement())


def f_leq(x: FElement, y: FElement) -> bool:
    return f_meet(x, y) == x


def g(i: int) -> IdRestriction:
    """``id{1..i}``."""
    return IdRestriction(False, FinCofSet.finite(range(1, i + 1)))


def h(i: int) -> IdRestriction:
    """``id({i, i+1, ...} u {inf})``."""
    return IdRestriction(False, FinCofSet.cofinite(range(1, i)))


def below_atom(x: FElement) -> FElement | None:
    """An atom below ``x`` (a singleton identity or F), None for zero."""
    if isinstance(x, FFunction):
        return F
    if x.p:
        return IdRestriction(True, FinCofSet.finite())
    if x.b.kind == FINITE:
        return IdRestriction(False, FinCofSet.finite([min(x.b.support)])) if x.b.support else None
    k = 1
    while k in x.b.support:
        k += 1
    return IdRestriction(False, FinCofSet.finite([k]))


def is_valid(x: FElement) -> bool:
    if isinstance(x, FFunction):
        return True
    b = x.b
    return b.kind in (FINITE, COFINITE) and all(i >= 1 for i in b.support)


# Upper and lower bounds of the two families, by shape of the candidate.

def _initial_segment(s: frozenset[int]) -> int:
    # largest k with {1..k} contained in s
    k = 0
    while k + 1 in s:
        k += 1
    return k


def _shapes():
    """One representative constraint family per structural shape of element."""
    return [
        ("f", None, None),
        ("id", False, FINITE),
        ("id", True, FINITE),
        ("id", False, COFINITE),
        ("id", True, COFINITE),
    ]


def g_upper_bound_case(p: bool | None, kind: str | None):
    """When is an element of the given shape above every ``g_i``?

    Returns (constraint text, predicate on the support, witness function
    giving an ``i`` with ``g_i`` not below the candidate when the predicate fails).
    """
    if kind is None:
        return ("never: f ^ g_1 = 0", lambda s: False, lambda s: 1)
    if kind == FINITE:
        return (
            "never: g_i <= id[B] needs {1..i} in B for every i, impossible for finite B",
            lambda s: False,
            lambda s: _initial_segment(s) + 1,
        )
    return (
        "exactly when the missing set is empty: g_i <= id[N_inf - C] iff i < min C",
        lambda s: not s,
        lambda s: min(s),
    )


def h_lower_bound_case(p: bool | None, kind: str | None):
    """When is an element of the given shape below every ``h_i``?"""
    if kind is None:
        return ("never: f ^ h_1 = 0 != f", lambda s: False, lambda s: 1)
    if p:
        return ("never: p is outside every h_i", lambda s: False, lambda s: 1)
    if kind == COFINITE:
        return (
            "never: id[N_inf - C] <= h_i needs {1..i-1} in C for every i, impossible for finite C",
            lambda s: False,
            lambda s: _initial_segment(s) + 2,
        )
    return (
        "exactly when B is empty: id[B] <= h_i iff every member of B is >= i",
        lambda s: not s,
        lambda s: max(s) + 1,
    )


def _candidate(shape, support):
    tag, p, kind = shape
    if tag == "f":
        return F
    return IdRestriction(p, FinCofSet(kind, frozenset(support)))


# supports tried against each shape's closed-form answer
_SAMPLE_SUPPORTS = [(), (1,), (2,), (1, 2), (1, 3), (2, 5), (1, 2, 3, 4), (7,)]
_SAMPLE_RANGE = range(1, 12)


def chain_join_g() -> tuple[FElement, dict]:
    """The join of ``g_1, g_2, ...`` together with its case analysis.

    Each shape contributes its closed-form condition for being an upper bound;
    that condition is replayed on sample supports, with a concrete failing
    ``i`` wherever it says "not a bound".  The least of the surviving bounds
    is the join.
    """
    cases = []
    bounds = []
    for shape in _shapes():
        text, pred, witness = g_upper_bound_case(shape[1], shape[2])
        replay = []
        for support in _SAMPLE_SUPPORTS if shape[0] == "id" else [()]:
            cand = _candidate(shape, support)
            s = frozenset(support)
            claimed = pred(s)
            if claimed:
                ok = all(f_leq(g(i), cand) for i in _SAMPLE_RANGE)
            else:
                i = witness(s)
                ok = not f_leq(g(i), cand)
            replay.append({"candidate": str(cand), "bound": claimed, "checked": ok})
            if claimed:
                bounds.append(cand)
        cases.append({"shape": _shape_name(shape), "constraint": text, "replay": replay})
    least = [u for u in bounds if all(f_leq(u, v) for v in bounds)]
    join = least[0] if len(set(least)) == 1 else None
    # every g_i lies below the join: {1..i} & cofinite(empty) = {1..i}
    bound_for_all_i = join is not None and all(
        f_compose(g(i), join) == g(i) for i in _SAMPLE_RANGE
    )
    report = {
        "cases": cases,
        "upper_bounds": sorted({str(u) for u in bounds}),
        "least": str(join),
        "bound_for_all_i": bound_for_all_i,
        "all_cases_checked": all(r["checked"] for c in cases for r in c["replay"]),
    }
    return join, report


def chain_meet_h() -> tuple[FElement, dict]:
    """The meet of ``h_1, h_2, ...`` together with its case analysis."""
    cases = []
    bounds = []
    for shape in _shapes():
        text, pred, witness = h_lower_bound_case(shape[1], shape[2])
        replay = []
        for support in _SAMPLE_SUPPORTS if shape[0] == "id" else [()]:
            cand = _candidate(shape, support)
            s = frozenset(support)
            claimed = pred(s)
            if claimed:
                ok = all(f_leq(cand, h(i)) for i in _SAMPLE_RANGE)
            else:
                i = witness(s)
                ok = not f_leq(cand, h(i))
            replay.append({"candidate": str(cand), "bound": claimed, "checked": ok})
            if claimed:
                bounds.append(cand)
        cases.append({"shape": _shape_name(shape), "constraint": text, "replay": replay})
    greatest = [u for u in bounds if all(f_leq(v, u) for v in bounds)]
    meet = greatest[0] if len(set(greatest)) == 1 else None
    report = {
        "cases": cases,
        "lower_bounds": sorted({str(u) for u in bounds}),
        "greatest": str(meet),
        "all_cases_checked": all(r["checked"] for c in cases for r in c["replay"]),
    }
    return meet, report


def _shape_name(shape) -> str:
    tag, p, kind = shape
    if tag == "f":
        return "f"
    return f"id[{'p+' if p else ''}{kind}]"


def verify_example_43() -> dict:
    """Both failures of left-distributivity, with every intermediate value."""
    join_g, join_report = chain_join_g()
    meet_h, meet_report = chain_meet_h()

    f_after_join = f_compose(F, join_g)
    # f ; g_i is zero for every i because g_i is finite and misses inf
    f_after_each_g = {f_compose(F, g(i)) for i in _SAMPLE_RANGE}
    join_of_f_g = ZERO if f_after_each_g == {ZERO} else None

    f_after_meet = f_compose(F, meet_h)
    # f ; h_i is f for every i because each h_i contains inf
    f_after_each_h = {f_compose(F, h(i)) for i in _SAMPLE_RANGE}
    meet_of_f_h = F if f_after_each_h == {F} else None

    below_f = [x for x in _sample_elements() if f_leq(x, F) and x != F]
    return {
        "join_g": str(join_g),
        "meet_h": str(meet_h),
        "left_dist_join_fails": f_after_join == F and join_of_f_g == ZERO and F != ZERO,
        "left_dist_meet_fails": f_after_meet == ZERO and meet_of_f_h == F and F != ZERO,
        "f_is_atom": below_f == [ZERO],
        "intermediates": {
            "f;join_g": str(f_after_join),
            "f;g_i": sorted(str(v) for v in f_after_each_g),
            "join(f;g_i)": str(join_of_f_g),
            "f;meet_h": str(f_after_meet),
            "f;h_i": sorted(str(v) for v in f_after_each_h),
            "meet(f;h_i)": str(meet_of_f_h),
            "join_g_cases": join_report,
            "meet_h_cases": meet_report,
        },
    }


def _sample_elements() -> list[FElement]:
    out: list[FElement] = [F]
    for p in (False, True):
        for support in _SAMPLE_SUPPORTS:
            out.append(IdRestriction(p, FinCofSet.finite(support)))
            out.append(IdRestriction(p, FinCofSet.cofinite(support)))
    return out


# Finite truncations -------------------------------------------------------------


def truncation_base(n: int) -> tuple[str, ...]:
    return ("p", *(str(i) for i in range(1, n + 1)), "inf")


def truncation_elements(n: int) -> list[FElement]:
    """Every element whose support lies in ``{1..n}``: identity restrictions, then F."""
    if n < 1:
        raise ValueError("n must be at least 1")
    out: list[FElement] = []
    for p in (False, True):
        for kind in (FINITE, COFINITE):
            for mask in range(1 << n):
                support = frozenset(i + 1 for i in range(n) if mask >> i & 1)
                out.append(IdRestriction(p, FinCofSet(kind, support)))
    out.append(F)
    return out


def embed(x: FElement, n: int) -> PartialFunction:
    """The partial function on the truncated base that ``x`` restricts to."""
    base = truncation_base(n)
    inf = len(base) - 1
    mapping = [UNDEF] * len(base)
    if isinstance(x, FFunction):
        mapping[0] = inf
        return PartialFunction(base, tuple(mapping))
    if any(i > n for i in x.b.support):
        raise ValueError(f"{x} has support outside 1..{n}")
    if x.p:
        mapping[0] = 0
    for i in range(1, n + 1):
        if i in x.b:
            mapping[i] = i
    if x.b.contains_infinity:
        mapping[inf] = inf
    return PartialFunction(base, tuple(mapping))


def truncate(n: int) -> ConcreteAlgebra:
    elems = truncation_elements(n)
    return ConcreteAlgebra(
        truncation_base(n),
        tuple(embed(x, n) for x in elems),
        CORE_SIGNATURE,
        tuple(str(x) for x in elems),
    )


def truncation_agreement(n: int) -> dict:
    """Compare symbolic operations with concrete ones on the truncation to ``{1..n}``.

    Every compose, meet and antidomain over the truncated elements must commute
    with ``embed``; the finite chains ``g_1..g_n`` and ``h_1..h_n`` must show
    the same f-compositions as the symbolic chains.
    """
    elems = truncation_elements(n)
    images = {x: embed(x, n) for x in elems}
    mismatches = []
    for x in elems:
        if embed(f_antidomain(x), n) != antidomain(images[x]):
            mismatches.append(("antidomain", str(x)))
        for y in elems:
            if embed(f_compose(x, y), n) != compose(images[x], images[y]):
                mismatches.append(("compose", str(x), str(y)))
            if embed(f_meet(x, y), n) != intersect(images[x], images[y]):
                mismatches.append(("meet", str(x), str(y)))
    fc = images[F]
    chains_ok = all(
        compose(fc, embed(g(i), n)).is_empty() and compose(fc, embed(h(i), n)) == fc
        for i in range(1, n + 1)
    )
    return {
        "n": n,
        "elements": len(elems),
        "closed": truncate(n).is_closed(),
        "mismatches": mismatches,
        "chains_agree": chains_ok,
        "agrees": not mismatches and chains_ok,
    }
