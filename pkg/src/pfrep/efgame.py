"""A three-round Ehrenfeucht-Fraisse game between two Boolean algebras, played on partitions.

``B`` is atomic with infinitely many atoms; ``B'`` has infinitely many atoms
but is not atomic.  Elements chosen so far generate finite subalgebras whose
atoms partition the top element, so a position is a pair of partitions with a
bijection between their cells.  A ``B`` cell is described by its size (a
finite number of atoms, or infinite); a ``B'`` cell by how many atoms lie
below it and whether it has an atomless part.  Concretely one can take
``B = P(N)`` and ``B' = P(N) x`` the countable atomless algebra; every cell
description below is realised there.

Spoiler plays on ``B``, then ``B'``, then ``B``.  Each move refines the
spoiler's partition; the duplicator answers with a matching refinement.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Callable, Iterable, Mapping, Sequence, Union

INF = math.inf

SIDE_B = "B"
SIDE_BP = "B'"
ROUND_SIDE = {1: SIDE_B, 2: SIDE_BP, 3: SIDE_B}

DUPLICATOR = "duplicator"
SPOILER = "spoiler"


class IllegalSplit(ValueError):
    pass


class StrategyUnavailable(RuntimeError):
    """The duplicator has no legal answer.  The strategies here never raise it on legal play."""


class GameIncomplete(RuntimeError):
    pass


class BudgetExceeded(RuntimeError):
    pass


def _size_str(v) -> str:
    return "inf" if v == INF else str(v)


def _size_json(v):
    return "inf" if v == INF else v


@dataclass(frozen=True)
class CellB:
    size: Union[int, float]

    def __post_init__(self):
        if self.size != INF and (not isinstance(self.size, int) or self.size < 1):
            raise IllegalSplit(f"B cell size must be a positive integer or infinite, got {self.size}")

    @property
    def infinite(self) -> bool:
        return self.size == INF

    def to_json(self):
        return _size_json(self.size)

    def __repr__(self) -> str:
        return f"B[{_size_str(self.size)}]"


@dataclass(frozen=True)
class CellBp:
    atoms: Union[int, float]
    atomless: bool

    def __post_init__(self):
        if self.atoms != INF and (not isinstance(self.atoms, int) or self.atoms < 0):
            raise IllegalSplit(f"atom count must be a non-negative integer or infinite, got {self.atoms}")
        if self.atoms == 0 and not self.atomless:
            raise IllegalSplit("a cell with no atoms must have an atomless part (cells are nonzero)")

    @property
    def match_size(self) -> Union[int, float]:
        """Finite exactly when the cell is a join of finitely many atoms."""
        if self.atoms != INF and not self.atomless:
            return self.atoms
        return INF

    def to_json(self):
        return {"atoms": _size_json(self.atoms), "atomless": self.atomless}

    def __repr__(self) -> str:
        return f"B'[{_size_str(self.atoms)}{'+atomless' if self.atomless else ''}]"


Cell = Union[CellB, CellBp]


def check_split(cell: Cell, parts: Sequence[Cell]) -> None:
    """Raise IllegalSplit unless ``parts`` is a legal subdivision of ``cell``."""
    if not parts:
        raise IllegalSplit("a subdivision needs at least one part")
    if isinstance(cell, CellB):
        if not all(isinstance(p, CellB) for p in parts):
            raise IllegalSplit("B cells split into B cells")
        if cell.infinite:
            if not any(p.infinite for p in parts):
                raise IllegalSplit(f"{cell} split into {list(parts)}: some part must be infinite")
        else:
            if any(p.infinite for p in parts) or sum(p.size for p in parts) != cell.size:
                raise IllegalSplit(f"{cell} split into {list(parts)}: sizes must sum to {cell.size}")
        return
    if not all(isinstance(p, CellBp) for p in parts):
        raise IllegalSplit("B' cells split into B' cells")
    if cell.atoms == INF:
        if not any(p.atoms == INF for p in parts):
            raise IllegalSplit(f"{cell} split into {list(parts)}: infinitely many atoms must go somewhere")
    elif any(p.atoms == INF for p in parts) or sum(p.atoms for p in parts) != cell.atoms:
        raise IllegalSplit(f"{cell} split into {list(parts)}: atom counts must sum to {cell.atoms}")
    flags = [p.atomless for p in parts]
    if cell.atomless and not any(flags):
        raise IllegalSplit(f"{cell} split into {list(parts)}: the atomless part vanished")
    if not cell.atomless and any(flags):
        raise IllegalSplit(f"{cell} split into {list(parts)}: atomless part appeared from nowhere")


@dataclass(frozen=True)
class Choice:
    """A chosen element, as sets of cell indices in both current partitions."""

    round: int
    side: str
    b_cells: frozenset[int]
    bp_cells: frozenset[int]


@dataclass(frozen=True)
class PendingMove:
    side: str
    splits: tuple[tuple[int, tuple[Cell, ...]], ...]
    choices: tuple[frozenset[tuple[int, int]], ...]


@dataclass(frozen=True)
class GameState:
    round: int
    b_cells: tuple[CellB, ...]
    bp_cells: tuple[CellBp, ...]
    matching: tuple[int, ...]  # B cell i is matched with B' cell matching[i]
    history: tuple[Choice, ...] = ()
    budgets: tuple[int, int, int] | None = None
    pending: PendingMove | None = None

    @property
    def correspondence(self) -> tuple[tuple[CellB, CellBp], ...]:
        return tuple((b, self.bp_cells[j]) for b, j in zip(self.b_cells, self.matching))

    @property
    def finished(self) -> bool:
        return self.round > 3 and self.pending is None

    def cells(self, side: str) -> tuple[Cell, ...]:
        return self.b_cells if side == SIDE_B else self.bp_cells

    def partner(self, side: str, i: int) -> int:
        if side == SIDE_B:
            return self.matching[i]
        return self.matching.index(i)

    def to_json(self):
        return {
            "round": self.round,
            "correspondence": [[b.to_json(), bp.to_json()] for b, bp in self.correspondence],
        }


def new_game(budgets: tuple[int, int, int] | None = None) -> GameState:
    return GameState(1, (CellB(INF),), (CellBp(INF, True),), (0,), (), budgets)


def spoiler_move(
    state: GameState,
    side: str,
    subdivisions: Mapping[int, Sequence[Cell]],
    choices: Sequence[Iterable[tuple[int, int]]] | None = None,
) -> GameState:
    """Refine the spoiler's partition.

    ``subdivisions`` maps cell indices to their parts; other cells stay whole.
    ``choices`` lists the chosen elements as sets of ``(cell, part)`` pairs;
    by default part ``t`` of every cell is in element ``j`` iff bit ``j`` of
    ``t`` is set, which is a set of elements generating exactly this refinement.
    """
    if state.pending is not None:
        raise IllegalSplit("the duplicator has not answered the previous move")
    if state.round > 3:
        raise IllegalSplit("the game is over")
    if side != ROUND_SIDE[state.round]:
        raise IllegalSplit(f"round {state.round} is played on {ROUND_SIDE[state.round]}, not {side}")
    cells = state.cells(side)
    splits = {}
    for i, parts in subdivisions.items():
        if not 0 <= i < len(cells):
            raise IllegalSplit(f"no cell {i} on {side}")
        parts = tuple(parts)
        check_split(cells[i], parts)
        splits[i] = parts
    widths = {i: len(splits.get(i, (cells[i],))) for i in range(len(cells))}
    budget = None if state.budgets is None else state.budgets[state.round - 1]
    if choices is None:
        bits = max((w - 1).bit_length() for w in widths.values())
        choices = [
            {(i, t) for i in range(len(cells)) for t in range(widths[i]) if t >> j & 1}
            for j in range(bits)
        ]
    choices = tuple(frozenset(c) for c in choices)
    if budget is not None and len(choices) > budget:
        raise IllegalSplit(f"round {state.round} allows {budget} elements, got {len(choices)}")
    for i in range(len(cells)):
        signatures = [tuple((i, t) in c for c in choices) for t in range(widths[i])]
        if len(set(signatures)) != widths[i]:
            raise IllegalSplit(f"the chosen elements do not generate the subdivision of cell {i}")
    for c in choices:
        for i, t in c:
            if not (0 <= i < len(cells) and 0 <= t < widths[i]):
                raise IllegalSplit(f"chosen element mentions unknown part ({i}, {t})")
    pending = PendingMove(side, tuple(sorted(splits.items())), choices)
    return replace(state, pending=pending)


Strategy = Callable[[int, Sequence[Cell], Cell], Sequence[Cell]]


def single_atom_strategy(round_no: int, parts: Sequence[Cell], partner: Cell) -> list[Cell]:
    """The duplicator's answer to one cell being split into ``parts``.

    Round 2: finite-size cells are copied size for size; for an infinite-size
    cell one infinite-size part is matched with the infinite remainder and
    every other part with a single atom.  Rounds 1 and 3: a subdivision of the
    partner with each part at least as large as the spoiler's (exactly equal
    in round 1).
    """
    if round_no == 2:
        return _answer_on_atomic(parts, partner)
    return _answer_on_nonatomic(parts, partner)


def _answer_on_atomic(parts: Sequence[CellBp], partner: CellB) -> list[CellB]:
    sizes = [p.match_size for p in parts]
    if not partner.infinite:
        if INF in sizes:
            raise StrategyUnavailable(f"{partner} cannot match an infinite part of {list(parts)}")
        return [CellB(s) for s in sizes]
    big = sizes.index(INF) if INF in sizes else None
    if big is None:
        raise StrategyUnavailable(f"no infinite part among {list(parts)}")
    return [CellB(INF) if t == big else CellB(1) for t in range(len(parts))]


def size_matching_strategy(round_no: int, parts: Sequence[Cell], partner: Cell) -> list[Cell]:
    """Like ``single_atom_strategy`` but in round 2 finite-size parts of an infinite cell keep their size."""
    if round_no == 2 and partner.infinite:
        sizes = [p.match_size for p in parts]
        if INF not in sizes:
            raise StrategyUnavailable(f"no infinite part among {list(parts)}")
        big = sizes.index(INF)
        return [CellB(INF) if t == big else CellB(1 if s == INF else s) for t, s in enumerate(sizes)]
    return single_atom_strategy(round_no, parts, partner)


def _answer_on_nonatomic(parts: Sequence[CellB], partner: CellBp) -> list[CellBp]:
    sizes = [p.size for p in parts]
    if partner.match_size != INF:
        if INF in sizes or sum(sizes) > partner.atoms:
            raise StrategyUnavailable(f"{partner} is too small for {list(parts)}")
        spare = partner.atoms - sum(sizes)
        return [CellBp(s + (spare if t == len(sizes) - 1 else 0), False) for t, s in enumerate(sizes)]
    if partner.atoms == INF:
        infinite = [t for t, s in enumerate(sizes) if s == INF]
        heir = infinite[0] if infinite else len(sizes) - 1
        out = []
        for t, s in enumerate(sizes):
            if t == heir:
                out.append(CellBp(INF, partner.atomless))
            elif s == INF:
                out.append(CellBp(INF, False))
            else:
                out.append(CellBp(s, False))
        return out
    # finitely many atoms plus an atomless part: every piece keeps some atomless mass
    return [CellBp(partner.atoms if t == 0 else 0, True) for t in range(len(sizes))]


def duplicator_reply(state: GameState, strategy: Strategy = single_atom_strategy) -> GameState:
    pending = state.pending
    if pending is None:
        raise IllegalSplit("no spoiler move to answer")
    side = pending.side
    other = SIDE_BP if side == SIDE_B else SIDE_B
    mine, theirs = state.cells(side), state.cells(other)
    replies = {}
    for i, parts in pending.splits:
        j = state.partner(side, i)
        answer = tuple(strategy(state.round, parts, theirs[j]))
        if len(answer) != len(parts):
            raise StrategyUnavailable(f"answer {answer} does not match {parts} part for part")
        try:
            check_split(theirs[j], answer)
        except IllegalSplit as exc:
            raise StrategyUnavailable(str(exc)) from exc
        replies[j] = answer
    split_mine = dict(pending.splits)

    new_mine, children_mine = _refine(mine, split_mine)
    new_theirs, children_theirs = _refine(theirs, replies)
    matching_pairs = []
    for i in range(len(mine)):
        j = state.partner(side, i)
        for a, b in zip(children_mine[i], children_theirs[j]):
            matching_pairs.append((a, b))
    if side == SIDE_B:
        b_cells, bp_cells = new_mine, new_theirs
        children_b, children_bp = children_mine, children_theirs
        to_b = dict(matching_pairs)
    else:
        b_cells, bp_cells = new_theirs, new_mine
        children_b, children_bp = children_theirs, children_mine
        to_b = {b: a for a, b in matching_pairs}
    matching = tuple(to_b[i] for i in range(len(b_cells)))

    history = [
        replace(
            c,
            b_cells=frozenset(k for i in c.b_cells for k in children_b[i]),
            bp_cells=frozenset(k for i in c.bp_cells for k in children_bp[i]),
        )
        for c in state.history
    ]
    for chosen in pending.choices:
        cells_mine = frozenset(children_mine[i][t] for i, t in chosen)
        if side == SIDE_B:
            history.append(Choice(state.round, side, cells_mine, frozenset(matching[k] for k in cells_mine)))
        else:
            inverse = {v: k for k, v in enumerate(matching)}
            history.append(Choice(state.round, side, frozenset(inverse[k] for k in cells_mine), cells_mine))
    return GameState(state.round + 1, tuple(b_cells), tuple(bp_cells), matching, tuple(history), state.budgets)


def _refine(cells, splits):
    new, children = [], []
    for i, cell in enumerate(cells):
        parts = splits.get(i, (cell,))
        children.append(list(range(len(new), len(new) + len(parts))))
        new.extend(parts)
    return new, children


def winner(state: GameState) -> str:
    """The duplicator wins when the final cell bijection respects sizes and every chosen element."""
    if not state.finished:
        raise GameIncomplete(f"round {state.round} has not been played")
    return DUPLICATOR if _consistent(state) else SPOILER


def _consistent(state: GameState) -> bool:
    m = state.matching
    if len(state.b_cells) != len(state.bp_cells) or sorted(m) != list(range(len(state.bp_cells))):
        return False
    if any(b.size > bp.match_size for b, bp in state.correspondence):
        return False
    return all(frozenset(m[i] for i in c.b_cells) == c.bp_cells for c in state.history)


def play(moves: Sequence[Mapping[int, Sequence[Cell]]], strategy: Strategy = single_atom_strategy,
         budgets: tuple[int, int, int] | None = None) -> tuple[str, GameState]:
    """Play three spoiler moves; a duplicator without an answer loses."""
    state = new_game(budgets)
    for move in moves:
        state = spoiler_move(state, ROUND_SIDE[state.round], move)
        try:
            state = duplicator_reply(state, strategy)
        except StrategyUnavailable:
            return SPOILER, state
    return winner(state), state


# Exhaustive search over bounded spoilers ----------------------------------------------


@lru_cache(maxsize=None)
def spoiler_splits(cell: Cell, max_parts: int, max_finite: int) -> tuple[tuple[Cell, ...], ...]:
    """Every legal subdivision of ``cell`` into at most ``max_parts`` parts, up to reordering.

    Finite sizes and atom counts of the parts are at most ``max_finite`` (or the
    cell's own finite size, if larger).  The trivial one-part subdivision is included.
    """
    if isinstance(cell, CellB):
        top = max(max_finite, 0 if cell.infinite else cell.size)
        kinds = [CellB(s) for s in range(1, top + 1)] + [CellB(INF)]
    else:
        top = max(max_finite, 0 if cell.atoms == INF else cell.atoms)
        kinds = [
            CellBp(a, flag)
            for a in [*range(0, top + 1), INF]
            for flag in (False, True)
            if a != 0 or flag
        ]
    out = []
    for p in range(1, max_parts + 1):
        for parts in itertools.combinations_with_replacement(kinds, p):
            try:
                check_split(cell, parts)
            except IllegalSplit:
                continue
            out.append(parts)
    return tuple(out)


def exhaustive_check(
    n1: int,
    n2: int,
    n3: int,
    split_bound: int = 4,
    max_finite: int = 4,
    strategy: Strategy = single_atom_strategy,
    method: str = "factored",
    node_limit: int = 5_000_000,
) -> bool:
    """True iff the duplicator beats every bounded spoiler.

    In round ``r`` every cell may be split into at most ``min(split_bound, 2**n_r)``
    parts (``n_r`` elements cut a cell into at most ``2**n_r`` pieces).

    ``method="global"`` enumerates whole positions.  ``method="factored"``
    uses that both a spoiler move and the duplicator's answer act cell by
    cell, so a position is won iff every matched pair of cells is won on its
    own; pairs are memoized.  The two agree on every budget small enough to
    run globally.
    """
    budgets = (n1, n2, n3)
    for v in budgets:
        if v < 0:
            raise ValueError("round budgets must be non-negative")
    nodes = [0]

    def tick():
        nodes[0] += 1
        if nodes[0] > node_limit:
            raise BudgetExceeded(f"more than {node_limit} positions")

    def widths(r):
        return min(split_bound, 2 ** budgets[r - 1])

    if method == "global":
        return _global(new_game(budgets), strategy, widths, max_finite, tick)
    if method != "factored":
        raise ValueError(f"unknown method {method!r}")

    memo: dict = {}

    def pair_won(r: int, b: CellB, bp: CellBp) -> bool:
        if r > 3:
            return b.size <= bp.match_size
        key = (r, b, bp)
        if key in memo:
            return memo[key]
        side = ROUND_SIDE[r]
        cell = b if side == SIDE_B else bp
        start = GameState(r, (b,), (bp,), (0,), (), None)
        won = True
        for parts in spoiler_splits(cell, widths(r), max_finite):
            tick()
            state = spoiler_move(start, side, {0: parts})
            try:
                state = duplicator_reply(state, strategy)
            except StrategyUnavailable:
                won = False
                break
            if not all(pair_won(r + 1, cb, cbp) for cb, cbp in state.correspondence):
                won = False
                break
        memo[key] = won
        return won

    return pair_won(1, CellB(INF), CellBp(INF, True))


def _global(state: GameState, strategy, widths, max_finite, tick) -> bool:
    if state.finished:
        return winner(state) == DUPLICATOR
    side = ROUND_SIDE[state.round]
    cells = state.cells(side)
    options = [spoiler_splits(c, widths(state.round), max_finite) for c in cells]
    for combo in itertools.product(*options):
        tick()
        move = {i: parts for i, parts in enumerate(combo) if len(parts) > 1}
        nxt = spoiler_move(state, side, move)
        try:
            nxt = duplicator_reply(nxt, strategy)
        except StrategyUnavailable:
            return False
        if not _global(nxt, strategy, widths, max_finite, tick):
            return False
    return True


# JSON helpers for scripted play ------------------------------------------------------


def cell_from_json(side: str, value) -> Cell:
    def num(v):
        if v in ("inf", "infinite", None):
            return INF
        if isinstance(v, bool) or not isinstance(v, int):
            raise IllegalSplit(f"expected an integer or 'inf', got {v!r}")
        return v

    if side == SIDE_B:
        return CellB(num(value))
    if not isinstance(value, dict):
        raise IllegalSplit(f"B' parts are objects with 'atoms' and 'atomless', got {value!r}")
    return CellBp(num(value.get("atoms")), bool(value.get("atomless", False)))
