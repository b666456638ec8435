from __future__ import annotations

import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pfrep import algebra as A
from pfrep import io as pio
from pfrep.corpus import random_closures
from pfrep.pfun import to_abstract


def test_algebra_round_trip(figure1_alg):
    doc = pio.algebra_to_json(figure1_alg)
    assert pio.algebra_from_json(json.loads(pio.dumps(doc))) == figure1_alg


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_random_algebra_round_trip(seed):
    alg = to_abstract(next(random_closures(1, seed)))[0]
    assert pio.algebra_from_json(pio.algebra_to_json(alg)) == alg


@pytest.mark.parametrize(
    "mutate, message",
    [
        (lambda d: d["compose"][1].__setitem__(0, "zz"), "compose[1][0]: unknown element 'zz'"),
        (lambda d: d["meet"][0].pop(), "meet[0]: expected a row of 2 entries"),
        (lambda d: d.pop("antidomain"), "missing key 'antidomain'"),
        (lambda d: d["antidomain"].__setitem__(1, 7), "antidomain[1]: unknown element 7"),
        (lambda d: d.__setitem__("elements", ["a", "a"]), "duplicate"),
    ],
)
def test_algebra_format_errors(mutate, message):
    doc = pio.algebra_to_json(A.boolean_as_algebra(1))
    mutate(doc)
    with pytest.raises(pio.FormatError, match=message.replace("[", r"\[").replace("]", r"\]")):
        pio.algebra_from_json(doc)


def test_pfun_round_trip(figure1_conc):
    doc = pio.concrete_to_json(figure1_conc)
    base, funcs = pio.pfun_from_json(doc)
    assert base == figure1_conc.base
    assert list(funcs) == list(figure1_conc.names)
    assert tuple(funcs.values()) == figure1_conc.functions


@pytest.mark.parametrize(
    "doc, message",
    [
        ({"base": ["a"]}, "expected an object"),
        ({"base": ["a", "a"], "functions": {}}, "duplicate"),
        ({"base": ["a"], "functions": {"f": [["a", "b"]]}}, "unknown point 'b'"),
        ({"base": ["a"], "functions": {"f": [["a"]]}}, "pair"),
        ({"base": ["a", "b"], "functions": {"f": [["a", "a"], ["a", "b"]]}}, "two images"),
    ],
)
def test_pfun_format_errors(doc, message):
    with pytest.raises(pio.FormatError, match=message):
        pio.pfun_from_json(doc)


def test_load_json_reports_position(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{"elements": [\n  "a",\n]}')
    with pytest.raises(pio.FormatError, match="line 3"):
        pio.load_json(path)
