from __future__ import annotations

import sys
from pathlib import Path

import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from pfrep import catalog  # noqa: E402
from pfrep.pfun import PartialFunction, to_abstract  # noqa: E402


@pytest.fixture(scope="session")
def figure1_conc():
    return catalog.figure1()


@pytest.fixture(scope="session")
def figure1_alg(figure1_conc):
    return to_abstract(figure1_conc)[0]


@pytest.fixture(scope="session")
def figure2_conc():
    return catalog.figure2()


def bases(min_size=0, max_size=3):
    return st.integers(min_size, max_size).map(lambda k: tuple(f"x{i}" for i in range(k)))


def functions_on(base):
    k = len(base)
    return st.lists(st.integers(-1, k - 1), min_size=k, max_size=k).map(
        lambda m: PartialFunction(base, tuple(m))
    )


@st.composite
def function_tuples(draw, n=3, min_base=0, max_base=3):
    base = draw(bases(min_base, max_base))
    return tuple(draw(functions_on(base)) for _ in range(n))
