"""Static board verdicts from potential lines, plus an actual-pattern variant.

The mover X is examined against a mutually exclusive case ladder:

  1. any potential S5X           -> win in sight, play one of them
  2. exactly one S5Y square      -> forced, block it
  3. two or more S5Y squares     -> loss certain
  4. any potential D4X or C44X   -> win in sight
  5. any potential D4Y or C44Y   -> forced: intersection of the defender
     squares of every such attack, plus every S4X counter-four (left for
     the tree search to refute); empty set with no counters -> loss certain
  6. otherwise                   -> open

The actual-pattern variant phrases the same ladder over fours and threes
standing on the stones (degree-4 blocks and one-shared-empty degree-3 block
pairs) and is used as an independent cross-check of the potential data.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .board import Board
from .core import BLACK, DIRECTIONS, GameOverError, opponent
from .lines import CENTER, LineClass


class Verdict(str, Enum):
    WIN_IN_SIGHT = "win_in_sight"
    LOSS_CERTAIN = "loss_certain"
    FORCED = "forced"
    OPEN = "open"


@dataclass(frozen=True)
class Evidence:
    square: int
    kind: str
    owner: int


@dataclass(frozen=True)
class AnalysisReport:
    verdict: Verdict
    moves: tuple[int, ...]
    evidence: tuple[Evidence, ...]
    case: int

    def to_json(self, board: Board) -> dict:
        return {
            "verdict": self.verdict.value,
            "case": self.case,
            "moves": [list(board.rc(sq)) for sq in self.moves],
            "evidence": [
                {"square": list(board.rc(e.square)), "kind": e.kind, "owner": e.owner}
                for e in self.evidence
            ],
        }


_S5 = int(LineClass.SIMPLE_FIVE)
_S4 = int(LineClass.SIMPLE_FOUR)
_D4 = int(LineClass.DOUBLE_FOUR)


def _line_defence_squares(board: Board, square: int, direction: int, color: int):
    """Absolute squares of the stored defence offsets of one potential line."""
    code = int(board.codes[board.rc(square)][direction])
    if color != BLACK:
        code = int(board.table.swap[code])
    r, c = board.rc(square)
    dr, dc = DIRECTIONS[direction]
    out = []
    for off in board.table.defence_offsets(code):
        rr, cc = r + (off - CENTER) * dr, c + (off - CENTER) * dc
        out.append(board.index(rr, cc))
    return out


def _attack_instances(board: Board, cls: np.ndarray, squares: np.ndarray, color: int):
    """(defence square set) per D4 line and per C44 crossing-pair instance."""
    instances = []
    for i, sq in enumerate(squares):
        sq = int(sq)
        dirs4 = [d for d in range(4) if cls[i, d] == _S4]
        for d in range(4):
            if cls[i, d] == _D4:
                instances.append(frozenset(_line_defence_squares(board, sq, d, color)))
        for a in range(len(dirs4)):
            for b in range(a + 1, len(dirs4)):
                defence = {sq}
                defence.update(_line_defence_squares(board, sq, dirs4[a], color))
                defence.update(_line_defence_squares(board, sq, dirs4[b], color))
                instances.append(frozenset(defence))
    return instances


def analyze_board(board: Board, mover: int | None = None) -> AnalysisReport:
    if board.winner is not None:
        raise GameOverError("board already has a five")
    x = mover if mover is not None else board.to_move
    y = opponent(x)

    squares = board.candidate_squares()
    if squares.size == 0:
        return AnalysisReport(Verdict.OPEN, (), (), 6)
    flat = board.codes.reshape(-1, 4)[squares]
    table = board.table
    cls_x = table.classes[flat if x == 1 else table.swap[flat]].astype(np.int16)
    cls_y = table.classes[table.swap[flat] if x == 1 else flat].astype(np.int16)

    s5x = squares[(cls_x == _S5).any(axis=1)]
    if s5x.size:
        ev = tuple(Evidence(int(s), "S5", x) for s in s5x)
        return AnalysisReport(Verdict.WIN_IN_SIGHT, tuple(int(s) for s in s5x), ev, 1)

    s5y = squares[(cls_y == _S5).any(axis=1)]
    if s5y.size == 1:
        sq = int(s5y[0])
        return AnalysisReport(
            Verdict.FORCED, (sq,), (Evidence(sq, "S5", y),), 2
        )
    if s5y.size >= 2:
        ev = tuple(Evidence(int(s), "S5", y) for s in s5y)
        return AnalysisReport(Verdict.LOSS_CERTAIN, (), ev, 3)

    fours_x = (cls_x == _S4).sum(axis=1)
    d4x_mask = (cls_x == _D4).any(axis=1) | (fours_x >= 2)
    if d4x_mask.any():
        winners = squares[d4x_mask]
        ev = []
        for i, sq in zip(np.flatnonzero(d4x_mask), winners):
            kind = "D4" if (cls_x[i] == _D4).any() else "C44"
            ev.append(Evidence(int(sq), kind, x))
        return AnalysisReport(
            Verdict.WIN_IN_SIGHT, tuple(int(s) for s in winners), tuple(ev), 4
        )

    fours_y = (cls_y == _S4).sum(axis=1)
    d4y_mask = (cls_y == _D4).any(axis=1) | (fours_y >= 2)
    if d4y_mask.any():
        idx = np.flatnonzero(d4y_mask)
        instances = _attack_instances(board, cls_y[idx], squares[idx], y)
        defence: set[int] = set(instances[0])
        for inst in instances[1:]:
            defence &= inst
        counters = {int(s) for s in squares[(cls_x == _S4).any(axis=1)]}
        moves = sorted(defence | counters)
        ev = []
        for i, sq in zip(idx, squares[idx]):
            kind = "D4" if (cls_y[i] == _D4).any() else "C44"
            ev.append(Evidence(int(sq), kind, y))
        if not moves:
            return AnalysisReport(Verdict.LOSS_CERTAIN, (), tuple(ev), 5)
        return AnalysisReport(Verdict.FORCED, tuple(moves), tuple(ev), 5)

    return AnalysisReport(Verdict.OPEN, (), (), 6)


# --- actual-pattern variant ----------------------------------------------------

def _alive_blocks(board: Board, color: int, degree: int):
    """(cells, empties) of alive degree-n blocks for a colour, by enumeration."""
    g = board.grid
    other = opponent(color)
    out = []
    for r in range(board.nrows):
        for c in range(board.ncols):
            for dr, dc in DIRECTIONS:
                rr, cc = r + 4 * dr, c + 4 * dc
                if not board.in_bounds(rr, cc):
                    continue
                cells = [(r + k * dr, c + k * dc) for k in range(5)]
                deg = 0
                empties = []
                dead = False
                for cell in cells:
                    v = g[cell]
                    if v == other:
                        dead = True
                        break
                    if v == color:
                        deg += 1
                    else:
                        empties.append(board.index(*cell))
                if not dead and deg == degree:
                    out.append((tuple(board.index(*cell) for cell in cells), tuple(empties)))
    return out


def _w3_instances(blocks3):
    """Pairs of degree-3 blocks intersecting in exactly one empty square."""
    out = []
    for i in range(len(blocks3)):
        ei = set(blocks3[i][1])
        for j in range(i + 1, len(blocks3)):
            shared = ei & set(blocks3[j][1])
            if len(shared) == 1:
                trigger = next(iter(shared))
                defence = frozenset(ei | set(blocks3[j][1]))
                out.append((trigger, defence))
    return out


def analyze_board_actual(board: Board, mover: int | None = None) -> AnalysisReport:
    if board.winner is not None:
        raise GameOverError("board already has a five")
    x = mover if mover is not None else board.to_move
    y = opponent(x)

    b4x = _alive_blocks(board, x, 4)
    if b4x:
        moves = sorted({e for _, (e,) in b4x})
        ev = tuple(Evidence(sq, "S4", x) for sq in moves)
        return AnalysisReport(Verdict.WIN_IN_SIGHT, tuple(moves), ev, 1)

    b4y = _alive_blocks(board, y, 4)
    if b4y:
        triggers = sorted({e for _, (e,) in b4y})
        ev = tuple(Evidence(sq, "S4", y) for sq in triggers)
        if len(triggers) == 1:
            return AnalysisReport(Verdict.FORCED, tuple(triggers), ev, 2)
        return AnalysisReport(Verdict.LOSS_CERTAIN, (), ev, 3)

    b3x = _alive_blocks(board, x, 3)
    w3x = _w3_instances(b3x)
    if w3x:
        moves = sorted({t for t, _ in w3x})
        ev = tuple(Evidence(sq, "W3", x) for sq in moves)
        return AnalysisReport(Verdict.WIN_IN_SIGHT, tuple(moves), ev, 4)

    b3y = _alive_blocks(board, y, 3)
    w3y = _w3_instances(b3y)
    if w3y:
        defence = set(w3y[0][1])
        for _, d in w3y[1:]:
            defence &= d
        y_triggers = {t for t, _ in w3y}
        s3x_all: set[int] = set()
        s3x_kept: set[int] = set()
        for _, empties in b3x:
            if len(empties) != 2:
                continue
            for e, partner in (empties, empties[::-1]):
                s3x_all.add(e)
                # Useless when PY's forced block also triggers a PY attack.
                if partner not in y_triggers:
                    s3x_kept.add(e)
        moves = sorted(defence | s3x_kept)
        ev = tuple(Evidence(t, "W3", y) for t in sorted(y_triggers))
        if moves:
            return AnalysisReport(Verdict.FORCED, tuple(moves), ev, 5)
        if s3x_all:
            # Every counter-threat is excepted and no defence remains: keep
            # the counters so both analysis variants agree on the category.
            return AnalysisReport(Verdict.FORCED, tuple(sorted(s3x_all)), ev, 5)
        return AnalysisReport(Verdict.LOSS_CERTAIN, (), ev, 5)

    return AnalysisReport(Verdict.OPEN, (), (), 6)
