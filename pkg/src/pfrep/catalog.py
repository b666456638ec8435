"""Named fixtures: the two drawn counterexample algebras, powerset algebras, truncations."""

from __future__ import annotations

import re

from pfrep import ninfty
from pfrep.algebra import FiniteAlgebra, boolean_as_algebra
from pfrep.pfun import (
    CORE_SIGNATURE,
    RANGE,
    ConcreteAlgebra,
    PartialFunction,
    close_generators,
)


class UnknownFixture(KeyError):
    pass


FIGURE1_BASE = ("left", "top", "bottom", "right")
FIGURE2_BASE = ("top", "bottom", "right")


def figure1_generators() -> dict[str, PartialFunction]:
    """Four points; f1 and f2 leave ``left`` for ``top``/``bottom``, g carries both to ``right``."""
    b = FIGURE1_BASE
    return {
        "f1": PartialFunction.from_pairs(b, [("left", "top")]),
        "f2": PartialFunction.from_pairs(b, [("left", "bottom")]),
        "g": PartialFunction.from_pairs(b, [("top", "right"), ("bottom", "right")]),
        "h": PartialFunction.from_pairs(b, [("left", "right")]),
    }


def figure2_generators() -> dict[str, PartialFunction]:
    b = FIGURE2_BASE
    return {
        "f": PartialFunction.from_pairs(b, [("top", "right")]),
        "g": PartialFunction.from_pairs(b, [("bottom", "right")]),
    }


def figure1() -> ConcreteAlgebra:
    gens = figure1_generators()
    return close_generators(FIGURE1_BASE, gens.values(), CORE_SIGNATURE, names=list(gens))


def figure2() -> ConcreteAlgebra:
    """Closed under range as well, so the range of g is an element."""
    gens = figure2_generators()
    return close_generators(
        FIGURE2_BASE, gens.values(), CORE_SIGNATURE | {RANGE}, names=list(gens)
    )


FIXTURE_NAMES = ("figure1", "figure2", "boolean-<n>", "example43-truncation-<n>")


def fixture(name: str) -> ConcreteAlgebra | FiniteAlgebra:
    """Look up a fixture by name: a generator set's closure, or an abstract algebra."""
    if name == "figure1":
        return figure1()
    if name == "figure2":
        return figure2()
    m = re.fullmatch(r"boolean-(\d+)", name)
    if m:
        return boolean_as_algebra(int(m.group(1)))
    m = re.fullmatch(r"example43-truncation-(\d+)", name)
    if m and int(m.group(1)) >= 1:
        return ninfty.truncate(int(m.group(1)))
    raise UnknownFixture(f"unknown fixture {name!r}; known: {', '.join(FIXTURE_NAMES)}")
