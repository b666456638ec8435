"""Command-line entry point.

Machine output is JSON on stdout; diagnostics go to stderr.  Exit codes:
0 success or YES, 3 negative verdict, 1 usage or input error, 2 internal error.
"""

from __future__ import annotations

import argparse
import json
import sys
import traceback
from importlib.metadata import PackageNotFoundError, version
from pathlib import Path
from typing import Sequence

from pfrep import algebra as alg_mod
from pfrep import catalog, efgame, ninfty
from pfrep.corpus import random_closures
from pfrep import io as pio
from pfrep.pfun import (
    CORE_SIGNATURE,
    SizeLimitExceeded,
    close_generators,
    parse_signature,
    to_abstract,
)
from pfrep.representation import (
    Refutation,
    build_theta,
    check_completeness,
    decide_complete_representability,
    theta_image_isomorphism,
)

OK, INPUT_ERROR, INTERNAL_ERROR, NEGATIVE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(INPUT_ERROR)


def _version() -> str:
    try:
        return version("artifact")
    except PackageNotFoundError:  # pragma: no cover
        return "unknown"


def _emit(data) -> None:
    sys.stdout.write(pio.dumps(data))


def _names(alg, seq):
    return [alg.elements[v] for v in seq]


# Subcommands ------------------------------------------------------------------


def cmd_validate(args) -> int:
    alg = pio.read_algebra(args.file)
    report = alg_mod.validate(alg)
    _emit({
        "valid": report.passed,
        "failures": [{"law": law, "witness": _names(alg, w)} for law, w in report.failures],
    })
    return OK if report.passed else NEGATIVE


def cmd_close(args) -> int:
    base, funcs = pio.read_pfun(args.file)
    signature = parse_signature(args.signature.split(",")) if args.signature else CORE_SIGNATURE
    conc = close_generators(base, funcs.values(), signature, args.max_closure, names=list(funcs))
    if args.format == "algebra":
        _emit(pio.algebra_to_json(to_abstract(conc)[0]))
    else:
        _emit(pio.concrete_to_json(conc))
    return OK


def cmd_atoms(args) -> int:
    alg = pio.read_algebra(args.file)
    _emit({
        "zero": alg.elements[alg.zero],
        "atoms": _names(alg, alg.atoms),
        "atomic": alg_mod.is_atomic(alg),
        "atomistic": alg_mod.is_atomistic(alg),
    })
    return OK


def _verdict_output(alg, verdict, with_witness: bool) -> int:
    yes = verdict.completely_representable
    sys.stdout.write("YES\n" if yes else "NO\n")
    if yes:
        body = pio.representation_to_json(verdict.witness) if with_witness else {"method": verdict.method}
    elif isinstance(verdict.witness, Refutation):
        body = verdict.witness.to_json(alg)
    else:
        body = {"kind": "NoRepresentationFound", "witness": []}
    _emit(body)
    return OK if yes else NEGATIVE


def cmd_represent(args) -> int:
    alg = pio.read_algebra(args.file)
    return _verdict_output(alg, decide_complete_representability(alg, args.method), True)


def cmd_decide(args) -> int:
    alg = pio.read_algebra(args.file)
    return _verdict_output(alg, decide_complete_representability(alg, args.method), False)


def _law_report(alg) -> dict:
    n = alg.elements
    rd = alg_mod.right_distributivity_violation(alg)
    right_meet = alg_mod.right_meet_violations(alg)
    left = alg_mod.left_distributivity_violations(alg)
    phi = alg_mod.check_phi(alg)
    laws = [
        {
            "law": "right-distributivity-over-joins",
            "holds": rd is None,
            "witness": None if rd is None else {"S": sorted(n[s] for s in rd[0]), "a": n[rd[1]]},
        },
        {
            "law": "right-distributivity-over-meets",
            "holds": not right_meet,
            "witness": [_right_meet_witness(alg, t) for t in right_meet],
        },
        {
            "law": "left-distributivity",
            "holds": not left,
            "witness": [[law, n[a], n[b], n[c]] for law, a, b, c in left],
        },
        {"law": "phi", "holds": phi.holds, "witness": None if phi.holds else _names(alg, phi.witness)},
        {"law": "atomistic", "holds": alg_mod.is_atomistic(alg), "witness": None},
    ]
    return {"laws": laws}


def _right_meet_witness(alg, t) -> dict:
    a, b, c = t
    n = alg.elements
    ab = alg.meet[a][b]
    return {
        "a": n[a], "b": n[b], "c": n[c],
        "(a^b)": n[ab],
        "(a^b);c": n[alg.compose[ab][c]],
        "a;c": n[alg.compose[a][c]],
        "b;c": n[alg.compose[b][c]],
        "(a;c)^(b;c)": n[alg.meet[alg.compose[a][c]][alg.compose[b][c]]],
        "zero": n[alg.zero],
    }


def _random_laws(count: int, seed: int) -> dict:
    failures = []
    for k, conc in enumerate(random_closures(count, seed)):
        alg, _ = to_abstract(conc)
        problems = []
        if not alg_mod.validate(alg).passed:
            problems.append("validate")
        if alg_mod.right_distributivity_violation(alg) is not None:
            problems.append("right-distributivity-over-joins")
        if alg_mod.left_distributivity_violations(alg):
            problems.append("left-distributivity")
        if not alg_mod.check_phi(alg).holds:
            problems.append("phi")
        outcome = build_theta(alg)
        if not outcome.verified:
            problems.append("theta")
        else:
            if not check_completeness(outcome.representation).all_true:
                problems.append("completeness")
            if theta_image_isomorphism(outcome) is None:
                problems.append("theta-image-isomorphism")
        if problems:
            failures.append({"sample": k, "size": len(alg), "failed": problems})
    return {"samples": count, "seed": seed, "failures": failures}


def cmd_laws(args) -> int:
    if args.random is not None:
        report = _random_laws(args.random, args.seed)
        _emit(report)
        return INTERNAL_ERROR if report["failures"] else OK
    if args.figure1:
        alg, _ = to_abstract(catalog.figure1())
    elif args.file:
        alg = pio.read_algebra(args.file)
    else:
        raise UsageError("laws needs FILE, --figure1 or --random N")
    report = _law_report(alg)
    _emit(report)
    return OK if all(law["holds"] for law in report["laws"]) else NEGATIVE


def cmd_example43(args) -> int:
    report = ninfty.verify_example_43()
    report["truncations"] = [ninfty.truncation_agreement(n) for n in range(1, args.max_n + 1)]
    for t in report["truncations"]:
        t["mismatches"] = [list(m) for m in t["mismatches"]]
    _emit(report)
    good = (
        report["left_dist_join_fails"]
        and report["left_dist_meet_fails"]
        and all(t["agrees"] for t in report["truncations"])
    )
    return OK if good else NEGATIVE


def _parse_rounds(text: str) -> tuple[int, int, int]:
    try:
        values = tuple(int(v) for v in text.split(","))
    except ValueError:
        raise UsageError(f"--rounds expects n1,n2,n3, got {text!r}") from None
    if len(values) != 3 or min(values) < 0:
        raise UsageError(f"--rounds expects three non-negative integers, got {text!r}")
    return values


def cmd_ef_game(args) -> int:
    rounds = _parse_rounds(args.rounds)
    if args.mode == "exhaustive":
        won = efgame.exhaustive_check(*rounds, split_bound=args.split_bound, max_finite=args.max_finite)
        _emit({"rounds": list(rounds), "split_bound": args.split_bound,
               "max_finite": args.max_finite, "duplicator_wins": won})
        return OK if won else NEGATIVE
    return _scripted_game(rounds, sys.stdin)


def _scripted_game(rounds, lines) -> int:
    """One JSON line per round: ``{"cell": i, "parts": [...]}`` or ``{"splits": [...]}``."""
    state = efgame.new_game(rounds)
    for lineno, line in enumerate(lines, 1):
        if not line.strip():
            continue
        if state.round > 3:
            raise UsageError(f"line {lineno}: the game is already over")
        try:
            move = json.loads(line)
        except json.JSONDecodeError as exc:
            raise pio.FormatError(f"line {lineno}: {exc.msg}") from exc
        if not isinstance(move, dict):
            raise pio.FormatError(f"line {lineno}: expected a JSON object")
        splits = move.get("splits", [move] if "cell" in move else [])
        side = efgame.ROUND_SIDE[state.round]
        subdivisions = {}
        for s in splits:
            if not isinstance(s, dict) or not isinstance(s.get("cell"), int) or not isinstance(s.get("parts"), list):
                raise pio.FormatError(f"line {lineno}: each split needs an integer 'cell' and a list 'parts'")
            subdivisions[s["cell"]] = [efgame.cell_from_json(side, p) for p in s["parts"]]
        try:
            state = efgame.spoiler_move(state, side, subdivisions)
        except efgame.IllegalSplit as exc:
            raise UsageError(f"line {lineno}: {exc}") from exc
        try:
            state = efgame.duplicator_reply(state)
        except efgame.StrategyUnavailable as exc:
            _emit({"round": state.round, "error": str(exc), "winner": efgame.SPOILER})
            return NEGATIVE
        _emit(state.to_json())
    while state.round <= 3:
        state = efgame.duplicator_reply(efgame.spoiler_move(state, efgame.ROUND_SIDE[state.round], {}))
    result = efgame.winner(state)
    _emit({"winner": result})
    return OK if result == efgame.DUPLICATOR else NEGATIVE


def cmd_catalog(args) -> int:
    fx = catalog.fixture(args.name)
    if isinstance(fx, alg_mod.FiniteAlgebra):
        alg = fx
        rep = build_theta(alg).representation
        pfun_doc = pio.representation_to_json(rep)
    else:
        alg = to_abstract(fx)[0]
        pfun_doc = pio.concrete_to_json(fx)
    docs = {"pfun": pfun_doc, "algebra": pio.algebra_to_json(alg)}
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        written = []
        for fmt in ("pfun", "algebra"):
            path = out / f"{args.name}.{fmt}.json"
            path.write_text(pio.dumps(docs[fmt]), encoding="utf-8")
            written.append(str(path))
        _emit({"written": written})
    else:
        _emit(docs[args.format])
    return OK


# Parser -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="pfrep", description="Algebras of partial functions: validation, representation, games.")
    p.add_argument("--version", action="version", version=f"pfrep {_version()}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("validate", help="check the algebra laws on a table file")
    s.add_argument("file")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("close", help="close a set of partial functions under operations")
    s.add_argument("file")
    s.add_argument("--signature", help="comma-separated operations, e.g. compose,meet,antidomain,range")
    s.add_argument("--max-closure", type=int, default=10_000)
    s.add_argument("--format", choices=("pfun", "algebra"), default="pfun")
    s.set_defaults(func=cmd_close)

    s = sub.add_parser("atoms", help="zero, atoms, atomicity")
    s.add_argument("file")
    s.set_defaults(func=cmd_atoms)

    for name, func, methods, helptext in (
        ("represent", cmd_represent, ("theta", "brute_force"), "emit a complete representation or a refutation"),
        ("decide", cmd_decide, ("theta", "brute_force", "both"), "decide complete representability"),
    ):
        s = sub.add_parser(name, help=helptext)
        s.add_argument("file")
        s.add_argument("--method", choices=methods, default="theta")
        s.set_defaults(func=func)

    s = sub.add_parser("laws", help="distributive laws, phi and atomisticity")
    s.add_argument("file", nargs="?")
    s.add_argument("--figure1", action="store_true")
    s.add_argument("--random", type=int, metavar="N", help="check N random closures")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_laws)

    s = sub.add_parser("example43", help="left-distributivity failures on N u {inf}")
    s.add_argument("--max-n", type=int, default=4, help="largest truncation to cross-check")
    s.set_defaults(func=cmd_example43)

    s = sub.add_parser("ef-game", help="the three-round game between atomic and non-atomic algebras")
    s.add_argument("--rounds", default="1,1,1")
    s.add_argument("--split-bound", type=int, default=4)
    s.add_argument("--max-finite", type=int, default=4)
    s.add_argument("--mode", choices=("exhaustive", "interactive-script"), default="exhaustive")
    s.set_defaults(func=cmd_ef_game)

    s = sub.add_parser("catalog", help="emit a named fixture")
    s.add_argument("name")
    s.add_argument("--format", choices=("pfun", "algebra"), default="pfun")
    s.add_argument("--out", help="directory to write <name>.pfun.json and <name>.algebra.json")
    s.set_defaults(func=cmd_catalog)
    return p


_INPUT_ERRORS = (
    UsageError,
    pio.FormatError,
    OSError,
    catalog.UnknownFixture,
    SizeLimitExceeded,
    efgame.IllegalSplit,
)


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except _INPUT_ERRORS as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return INPUT_ERROR
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR
    except Exception:
        traceback.print_exc(file=sys.stderr)
        return INTERNAL_ERROR


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
