"""Reference implementations that share no code with the package.

Partial functions are frozensets of ``(x, y)`` pairs; algebras are plain
dicts of sets.  Everything here is written for obviousness, not speed.
"""

from __future__ import annotations

import itertools


def rel_compose(f, g):
    return frozenset((x, z) for x, y in f for y2, z in g if y == y2)


def rel_meet(f, g):
    return f & g


def rel_antidomain(f, base):
    dom = {x for x, _ in f}
    return frozenset((x, x) for x in base if x not in dom)


def rel_range(f):
    return frozenset((y, y) for _, y in f)


def rel_closure(base, gens):
    """Least set containing ``gens`` and the empty function, closed under the three operations."""
    found = set(gens) | {frozenset()}
    while True:
        new = set()
        for f in found:
            new.add(rel_antidomain(f, base))
            for g in found:
                new.add(rel_compose(f, g))
                new.add(rel_meet(f, g))
        if new <= found:
            return found
        found |= new


def rel_atoms(functions):
    nonzero = [f for f in functions if f]
    return {f for f in nonzero if not any(g < f for g in nonzero)}


def _zero_and_atoms(elements, compose, meet, antidomain):
    idx = {e: i for i, e in enumerate(elements)}
    zero = compose[idx[antidomain[0]]][0]
    atoms = [
        a for a in elements
        if a != zero and not any(b not in (zero, a) and meet[idx[b]][idx[a]] == b for b in elements)
    ]
    return zero, atoms


def table_theta(elements, compose, meet, antidomain):
    """The atom-base map computed from name tables, straight from its definition.

    Returns ``None`` when some ``x;a`` is neither zero nor an atom, else a dict
    from element names to graphs over the atom names.
    """
    idx = {e: i for i, e in enumerate(elements)}
    zero, atoms = _zero_and_atoms(elements, compose, meet, antidomain)
    out = {}
    for a in elements:
        graph = set()
        for x in atoms:
            y = compose[idx[x]][idx[a]]
            if y == zero:
                continue
            if y not in atoms:
                return None
            graph.add((x, y))
        out[a] = frozenset(graph)
    return out


def theta_is_representation(elements, compose, meet, antidomain) -> bool:
    theta = table_theta(elements, compose, meet, antidomain)
    if theta is None or len(set(theta.values())) != len(elements):
        return False
    idx = {e: i for i, e in enumerate(elements)}
    _, atoms = _zero_and_atoms(elements, compose, meet, antidomain)
    for a, b in itertools.product(elements, repeat=2):
        if theta[compose[idx[a]][idx[b]]] != rel_compose(theta[a], theta[b]):
            return False
        if theta[meet[idx[a]][idx[b]]] != theta[a] & theta[b]:
            return False
    return all(theta[antidomain[idx[a]]] == rel_antidomain(theta[a], atoms) for a in elements)


def powerset_identity_algebra(points):
    """Identity restrictions to every subset of ``points``, as graphs."""
    out = []
    for r in range(len(points) + 1):
        for sub in itertools.combinations(points, r):
            out.append(frozenset((p, p) for p in sub))
    return out
