"""Reading and writing the algebra and partial-function JSON formats.

Algebra files::

    {"elements": [...], "compose": [[...]], "meet": [[...]], "antidomain": [...]}

with entries given by element name.  Partial-function files::

    {"base": [...], "functions": {"name": [[x, y], ...]}}
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from pfrep.algebra import FiniteAlgebra, TableError
from pfrep.pfun import ConcreteAlgebra, PartialFunction, Representation


class FormatError(ValueError):
    """Malformed input; the message names the offending position."""


def algebra_to_json(alg: FiniteAlgebra) -> dict[str, Any]:
    e = alg.elements
    return {
        "elements": list(e),
        "compose": [[e[v] for v in row] for row in alg.compose],
        "meet": [[e[v] for v in row] for row in alg.meet],
        "antidomain": [e[v] for v in alg.antidomain],
    }


def algebra_from_json(data: Any) -> FiniteAlgebra:
    if not isinstance(data, dict):
        raise FormatError("algebra: expected a JSON object")
    for key in ("elements", "compose", "meet", "antidomain"):
        if key not in data:
            raise FormatError(f"algebra: missing key {key!r}")
    elements = data["elements"]
    if not isinstance(elements, list) or not all(isinstance(x, str) for x in elements):
        raise FormatError("elements: expected a list of strings")
    if not elements:
        raise FormatError("elements: must be nonempty")
    if len(set(elements)) != len(elements):
        raise FormatError("elements: duplicate names")
    pos = {x: i for i, x in enumerate(elements)}
    n = len(elements)

    def lookup(value, where):
        if not isinstance(value, str) or value not in pos:
            raise FormatError(f"{where}: unknown element {value!r}")
        return pos[value]

    def table(key):
        rows = data[key]
        if not isinstance(rows, list) or len(rows) != n:
            raise FormatError(f"{key}: expected {n} rows")
        out = []
        for i, row in enumerate(rows):
            if not isinstance(row, list) or len(row) != n:
                raise FormatError(f"{key}[{i}]: expected a row of {n} entries")
            out.append([lookup(v, f"{key}[{i}][{j}]") for j, v in enumerate(row)])
        return out

    compose = table("compose")
    meet = table("meet")
    anti = data["antidomain"]
    if not isinstance(anti, list) or len(anti) != n:
        raise FormatError(f"antidomain: expected {n} entries")
    antidomain = [lookup(v, f"antidomain[{i}]") for i, v in enumerate(anti)]
    try:
        return FiniteAlgebra.from_tables(elements, compose, meet, antidomain)
    except TableError as exc:
        raise FormatError(str(exc)) from exc


def pfun_to_json(base, named_functions) -> dict[str, Any]:
    return {
        "base": list(base),
        "functions": {name: f.sorted_graph() for name, f in named_functions},
    }


def concrete_to_json(conc: ConcreteAlgebra) -> dict[str, Any]:
    return pfun_to_json(conc.base, zip(conc.names, conc.functions))


def representation_to_json(rep: Representation) -> dict[str, Any]:
    return pfun_to_json(rep.base, zip(rep.source.elements, rep.assignment))


def pfun_from_json(data: Any) -> tuple[tuple[str, ...], dict[str, PartialFunction]]:
    if not isinstance(data, dict) or "base" not in data or "functions" not in data:
        raise FormatError("partial functions: expected an object with 'base' and 'functions'")
    base = data["base"]
    if not isinstance(base, list) or not all(isinstance(x, str) for x in base):
        raise FormatError("base: expected a list of strings")
    if len(set(base)) != len(base):
        raise FormatError("base: duplicate points")
    funcs = data["functions"]
    if not isinstance(funcs, dict):
        raise FormatError("functions: expected an object")
    out = {}
    points = set(base)
    for name, pairs in funcs.items():
        if not isinstance(pairs, list):
            raise FormatError(f"functions[{name!r}]: expected a list of pairs")
        clean = []
        for k, pair in enumerate(pairs):
            if not isinstance(pair, list) or len(pair) != 2:
                raise FormatError(f"functions[{name!r}][{k}]: expected a [point, point] pair")
            for p in pair:
                if p not in points:
                    raise FormatError(f"functions[{name!r}][{k}]: unknown point {p!r}")
            clean.append((pair[0], pair[1]))
        try:
            out[name] = PartialFunction.from_pairs(base, clean)
        except ValueError as exc:
            raise FormatError(f"functions[{name!r}]: {exc}") from exc
    return tuple(base), out


def dumps(data: Any) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


def load_json(path: str | Path) -> Any:
    text = Path(path).read_text(encoding="utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc


def read_algebra(path: str | Path) -> FiniteAlgebra:
    return algebra_from_json(load_json(path))


def read_pfun(path: str | Path) -> tuple[tuple[str, ...], dict[str, PartialFunction]]:
    return pfun_from_json(load_json(path))
