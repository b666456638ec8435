"""Exhaustive sweeps over every table of a few elements that passes ``validate``.

There are tens of millions of such tables with four elements, so the atom-base
check is evaluated on whole batches of composition tables with numpy, and the
oracle side is a catalog of every concrete algebra of that size on small
bases, read off under every labeling.  Scalar ``decide`` and
``brute_force_search`` are replayed on every positive and on a random sample
of the rest, so the batched paths are themselves under test.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from pfrep.algebra import FiniteAlgebra
from pfrep.representation import brute_force_search, decide_complete_representability

_INDEX_DTYPE = np.int8


# Meet semilattices ----------------------------------------------------------------


def semilattice_shapes(n: int) -> list[tuple[tuple[int, ...], ...]]:
    """Meet tables on ``0..n-1`` with ``0`` as bottom, one per isomorphism class."""
    found: dict[tuple, tuple] = {}
    others = list(range(1, n))
    pairs = [(a, b) for a in others for b in others if a != b]
    for bits in itertools.product((0, 1), repeat=len(pairs)):
        leq = {(a, a) for a in range(n)} | {(0, a) for a in range(n)}
        leq |= {p for p, bit in zip(pairs, bits) if bit}
        if any((a, b) in leq and (b, a) in leq for a, b in pairs):
            continue
        if any(
            (a, b) in leq and (b, c) in leq and (a, c) not in leq
            for a in range(n) for b in range(n) for c in range(n)
        ):
            continue
        table = _meet_table(n, leq)
        if table is None:
            continue
        key = min(_permute_table(table, perm) for perm in _bottom_fixing_perms(n))
        found.setdefault(key, key)
    return sorted(found)


def _meet_table(n, leq):
    table = []
    for a in range(n):
        row = []
        for b in range(n):
            lbs = [c for c in range(n) if (c, a) in leq and (c, b) in leq]
            top = [c for c in lbs if all((d, c) in leq for d in lbs)]
            if len(top) != 1:
                return None
            row.append(top[0])
        table.append(tuple(row))
    return tuple(table)


def _bottom_fixing_perms(n):
    for rest in itertools.permutations(range(1, n)):
        yield (0, *rest)


def _permute_table(table, perm):
    # perm[old] = new
    n = len(table)
    inv = [0] * n
    for old, new in enumerate(perm):
        inv[new] = old
    return tuple(tuple(perm[table[inv[i]][inv[j]]] for j in range(n)) for i in range(n))


# Enumeration of validated tables --------------------------------------------------


@dataclass(frozen=True)
class Batch:
    shape: int
    meet: tuple[tuple[int, ...], ...]
    antidomain: tuple[int, ...]
    compose: np.ndarray  # (K, n, n)

    def algebra(self, k: int) -> FiniteAlgebra:
        n = len(self.meet)
        return FiniteAlgebra.from_tables(
            [f"e{i}" for i in range(n)], self.compose[k].tolist(), self.meet, self.antidomain
        )


def table_batches(n: int) -> Iterator[Batch]:
    """Every table with ``n`` elements passing ``validate``, up to isomorphism.

    Element 0 is the zero and the meet table is one of ``semilattice_shapes(n)``;
    every validated table is isomorphic to at least one table produced here.
    """
    for si, meet in enumerate(semilattice_shapes(n)):
        for anti in itertools.product(range(n), repeat=n):
            fixed = {(0, a) for a in range(n)} | {(a, 0) for a in range(n)}
            fixed |= {(anti[a], a) for a in range(n)}
            free = [(i, j) for i in range(n) for j in range(n) if (i, j) not in fixed]
            count = n ** len(free)
            compose = np.zeros((count, n, n), dtype=_INDEX_DTYPE)
            if free:
                grid = np.indices((n,) * len(free), dtype=_INDEX_DTYPE).reshape(len(free), -1)
                for f, (i, j) in enumerate(free):
                    compose[:, i, j] = grid[f]
            yield Batch(si, meet, anti, compose)


def encode(compose: np.ndarray) -> np.ndarray:
    """Integer code of each composition table in a batch."""
    k, n, _ = compose.shape
    weights = (n ** np.arange(n * n, dtype=np.int64)).astype(np.int64)
    return compose.reshape(k, n * n).astype(np.int64) @ weights


# Batched atom-base check ----------------------------------------------------------


def _atoms_of(meet) -> list[int]:
    n = len(meet)
    return [
        a for a in range(1, n)
        if all(b in (0, a) for b in range(n) if meet[b][a] == b)
    ]


def theta_verifies_batch(meet, antidomain, compose: np.ndarray) -> np.ndarray:
    """Vectorized ``build_theta(...).verified`` for tables sharing meet and antidomain (zero = 0)."""
    count, n, _ = compose.shape
    atoms = _atoms_of(meet)
    ok = np.ones(count, dtype=bool)
    if not atoms:
        return ok if n == 1 else np.zeros(count, dtype=bool)
    C = compose.astype(np.intp)
    rows = np.arange(count)[:, None, None]
    cols = np.arange(n)[None, None, :]
    targets = np.array([0, *atoms])
    meet_arr = np.asarray(meet, dtype=np.intp)
    anti_arr = np.asarray(antidomain, dtype=np.intp)

    for x in atoms:
        row_x = C[:, x, :]  # theta(a)(x) for every a, 0 meaning undefined
        ok &= np.isin(row_x, targets).all(axis=1)
        # composition: x;(a;b) == (x;a);b
        lhs = np.take_along_axis(row_x, C.reshape(count, n * n), axis=1).reshape(count, n, n)
        rhs = C[rows, row_x[:, :, None], cols]
        ok &= (lhs == rhs).all(axis=(1, 2))
        # meet: x;(a^b) == x;a if x;a == x;b else 0
        lhs = row_x[:, meet_arr]
        xa = row_x[:, :, None]
        xb = row_x[:, None, :]
        ok &= (lhs == np.where(xa == xb, xa, 0)).all(axis=(1, 2))
        # antidomain: x;A(a) == x if x;a == 0 else 0
        ok &= (row_x[:, anti_arr] == np.where(row_x == 0, x, 0)).all(axis=1)

    # injectivity: the columns C[atoms, a] are pairwise distinct
    weights = (n ** np.arange(len(atoms), dtype=np.int64))
    codes = np.einsum("kxa,x->ka", C[:, atoms, :].astype(np.int64), weights)
    codes.sort(axis=1)
    ok &= (np.diff(codes, axis=1) != 0).all(axis=1)
    return ok


def phi_holds_batch(meet, compose: np.ndarray) -> np.ndarray:
    """Vectorized ``check_phi(...).holds``."""
    count, n, _ = compose.shape
    atoms = _atoms_of(meet)
    C = compose.astype(np.intp)
    geq = np.array([[meet[y][c] == y for c in range(n)] for y in range(n)])  # geq[y, c]: c >= y
    ok = np.ones(count, dtype=bool)
    for a in range(n):
        for b in range(n):
            bounds = np.ones((count, n), dtype=bool)
            for x in atoms:
                if meet[x][b] == x:
                    bounds &= geq[C[:, a, x]]
            ok &= ~(bounds & ~geq[C[:, a, b]]).any(axis=1)
    return ok


# Oracle catalog -------------------------------------------------------------------


def closed_algebras(max_size: int, base_size: int) -> set[frozenset[tuple[int, ...]]]:
    """All sets of partial functions on ``base_size`` points closed under compose, meet and
    antidomain, with at most ``max_size`` members (plain exhaustive search)."""
    k = base_size
    universe = list(itertools.product(range(-1, k), repeat=k))
    empty = (-1,) * k

    def comp(f, g):
        return tuple(-1 if y == -1 else g[y] for y in f)

    def inter(f, g):
        return tuple(y if y == w else -1 for y, w in zip(f, g))

    def anti(f):
        return tuple(i if y == -1 else -1 for i, y in enumerate(f))

    def close(seed):
        seen = set(seed)
        if len(seen) > max_size:
            return None
        found = list(dict.fromkeys(seed))
        i = 0
        while i < len(found):
            f = found[i]
            new = [anti(f)]
            for g in found[: i + 1]:
                new += [comp(f, g), comp(g, f), inter(f, g)]
            for h in new:
                if h not in seen:
                    if len(found) >= max_size:
                        return None
                    seen.add(h)
                    found.append(h)
            i += 1
        return frozenset(found)

    start = close([empty])
    if start is None:
        return set()
    result = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for s in frontier:
            for f in universe:
                if f in s:
                    continue
                t = close(list(s) + [f])
                if t is not None and t not in result:
                    result.add(t)
                    nxt.append(t)
        frontier = nxt
    return result


@dataclass
class Catalog:
    """Codes of every representable table, keyed by (size, shape index, antidomain)."""

    codes: dict[tuple[int, int, tuple[int, ...]], set[int]] = field(default_factory=dict)
    algebras_seen: int = 0

    def lookup(self, n: int, shape: int, antidomain: tuple[int, ...]) -> np.ndarray:
        return np.fromiter(self.codes.get((n, shape, antidomain), ()), dtype=np.int64)


def build_catalog(max_size: int, max_base: int) -> Catalog:
    """Read off every concrete algebra on up to ``max_base`` points under every labeling."""
    shapes = {n: {t: i for i, t in enumerate(semilattice_shapes(n))} for n in range(1, max_size + 1)}
    cat = Catalog()
    for k in range(max_base + 1):
        for funcs in closed_algebras(max_size, k):
            cat.algebras_seen += 1
            empty = (-1,) * k
            rest = sorted(f for f in funcs if f != empty)
            n = len(funcs)
            for order in itertools.permutations(rest):
                elems = [empty, *order]
                pos = {f: i for i, f in enumerate(elems)}
                meet = tuple(
                    tuple(pos[tuple(y if y == w else -1 for y, w in zip(f, g))] for g in elems)
                    for f in elems
                )
                si = shapes[n].get(meet)
                if si is None:
                    continue
                anti = tuple(pos[tuple(i if y == -1 else -1 for i, y in enumerate(f))] for f in elems)
                comp = np.array(
                    [[pos[tuple(-1 if y == -1 else g[y] for y in f)] for g in elems] for f in elems],
                    dtype=_INDEX_DTYPE,
                )
                cat.codes.setdefault((n, si, anti), set()).add(int(encode(comp[None])[0]))
    return cat


# The sweep --------------------------------------------------------------------------


@dataclass
class SweepReport:
    tables: dict[int, int] = field(default_factory=dict)
    theta_yes: dict[int, int] = field(default_factory=dict)
    oracle_yes: dict[int, int] = field(default_factory=dict)
    disagreements: list[FiniteAlgebra] = field(default_factory=list)
    phi_but_rejected: dict[int, int] = field(default_factory=dict)
    scalar_checked: int = 0
    scalar_mismatches: list[tuple[str, FiniteAlgebra]] = field(default_factory=list)
    accepted: list[FiniteAlgebra] = field(default_factory=list)

    @property
    def clean(self) -> bool:
        return not self.disagreements and not self.scalar_mismatches


def sweep(
    max_size: int = 4,
    max_base: int = 4,
    scalar_sample: int = 2,
    seed: int = 0,
    catalog: Catalog | None = None,
) -> SweepReport:
    """Compare the atom-base decision with the catalog oracle on every validated table.

    ``scalar_sample`` random tables per batch, plus every table either side
    accepts, are re-decided with the scalar ``decide_complete_representability``
    and ``brute_force_search``.  Rejected tables that are nonetheless atomic
    (all finite ones are) and satisfy phi are counted per size.
    """
    rng = random.Random(seed)
    catalog = catalog or build_catalog(max_size, max_base)
    report = SweepReport()
    for n in range(1, max_size + 1):
        for batch in table_batches(n):
            C = batch.compose
            theta = theta_verifies_batch(batch.meet, batch.antidomain, C)
            oracle = np.isin(encode(C), catalog.lookup(n, batch.shape, batch.antidomain))
            phi = phi_holds_batch(batch.meet, C)
            report.tables[n] = report.tables.get(n, 0) + len(C)
            report.theta_yes[n] = report.theta_yes.get(n, 0) + int(theta.sum())
            report.oracle_yes[n] = report.oracle_yes.get(n, 0) + int(oracle.sum())
            report.phi_but_rejected[n] = report.phi_but_rejected.get(n, 0) + int((phi & ~theta).sum())
            for k in np.flatnonzero(theta != oracle):
                report.disagreements.append(batch.algebra(int(k)))
            picks = set(np.flatnonzero(theta | oracle).tolist())
            picks |= {rng.randrange(len(C)) for _ in range(min(scalar_sample, len(C)))}
            for k in sorted(picks):
                alg = batch.algebra(k)
                report.scalar_checked += 1
                verdict = decide_complete_representability(alg)
                if verdict.completely_representable != bool(theta[k]):
                    report.scalar_mismatches.append(("decide", alg))
                if (brute_force_search(alg) is not None) != bool(oracle[k]):
                    report.scalar_mismatches.append(("brute_force", alg))
                if theta[k]:
                    report.accepted.append(alg)
    return report
