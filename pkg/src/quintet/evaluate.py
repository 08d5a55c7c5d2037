"""Heuristic board evaluation and top-B move generation from line scores.

Every candidate square contributes the scores of its eight potential lines
and its cross pattern.  Evaluation weighs the mover positive and the
opponent negative; move ordering weighs both positive, since killing a good
opponent square is as valuable as playing a good own square.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .analysis import Verdict, analyze_board
from .board import Board
from .core import BLACK, ConfigurationError, ContractError, GameOverError
from .lines import CrossClass, LineClass

# Heuristic values live strictly inside the win/loss bands; win values are
# offset by ply so quicker wins rank higher.
WIN_BASE = 1_000_000_000_000
WIN_THRESHOLD = WIN_BASE - 10_000

_DEFAULT_LINE = {
    LineClass.GENERIC: 0,
    LineClass.SIMPLE_TWO: 1,
    LineClass.WEAK_TWO: 4,
    LineClass.DOUBLE_TWO: 16,
    LineClass.SIMPLE_THREE: 64,
    LineClass.WEAK_THREE: 256,
    LineClass.DOUBLE_THREE: 1024,
    LineClass.SIMPLE_FOUR: 16384,
    LineClass.DOUBLE_FOUR: 65536,
    LineClass.SIMPLE_FIVE: 262144,
}
_DEFAULT_CROSS = {
    CrossClass.NONE: 0,
    CrossClass.C33: 2048,
    CrossClass.C43: 32768,
    CrossClass.C44: 131072,
}


@dataclass(frozen=True)
class ScoreTable:
    """Line and cross scores, one vector for evaluation and one for ordering."""

    eval_line: tuple[int, ...] = tuple(_DEFAULT_LINE[c] for c in LineClass)
    eval_cross: tuple[int, ...] = tuple(_DEFAULT_CROSS[c] for c in CrossClass)
    order_line: tuple[int, ...] = tuple(_DEFAULT_LINE[c] for c in LineClass)
    order_cross: tuple[int, ...] = tuple(_DEFAULT_CROSS[c] for c in CrossClass)

    def __post_init__(self) -> None:
        for name, vec in (("eval", self.eval_line), ("order", self.order_line)):
            if len(vec) != len(LineClass):
                raise ConfigurationError(f"score.{name}: need {len(LineClass)} entries")
            if vec[LineClass.GENERIC] != 0:
                raise ConfigurationError(f"score.{name}.GENERIC must be 0")
            for a, b in zip(LineClass, list(LineClass)[1:]):
                if vec[a] >= vec[b]:
                    raise ConfigurationError(
                        f"score.{name}: {a.name} >= {b.name} violates strength order"
                    )
        for name, vec in (("eval", self.eval_cross), ("order", self.order_cross)):
            if len(vec) != len(CrossClass):
                raise ConfigurationError(f"score.{name}.cross: need {len(CrossClass)} entries")
            if vec[CrossClass.NONE] != 0:
                raise ConfigurationError(f"score.{name}.cross NONE must be 0")

    def scaled(self, factor: int) -> "ScoreTable":
        mul = lambda vec: tuple(v * factor for v in vec)
        return ScoreTable(
            mul(self.eval_line), mul(self.eval_cross),
            mul(self.order_line), mul(self.order_cross),
        )

    def coarse(self) -> "ScoreTable":
        """Coarse variant: merge double/weak threes and twos (A/B evaluation)."""
        def merge(vec):
            v = list(vec)
            v[LineClass.DOUBLE_THREE] = v[LineClass.WEAK_THREE] + 1
            v[LineClass.DOUBLE_TWO] = v[LineClass.WEAK_TWO] + 1
            return tuple(v)

        return ScoreTable(
            merge(self.eval_line), self.eval_cross,
            merge(self.order_line), self.order_cross,
        )

    @classmethod
    def from_mapping(cls, kv: dict[str, int]) -> "ScoreTable":
        eval_line = list(cls().eval_line)
        order_line = list(cls().order_line)
        eval_cross = list(cls().eval_cross)
        order_cross = list(cls().order_cross)
        for key, value in kv.items():
            try:
                vec, name = key.split(".", 1)
            except ValueError:
                raise ConfigurationError(f"bad score key: {key}")
            if name.upper() in LineClass.__members__:
                idx = LineClass[name.upper()]
                target = {"eval": eval_line, "order": order_line}.get(vec)
            elif name.upper() in CrossClass.__members__:
                idx = CrossClass[name.upper()]
                target = {"eval": eval_cross, "order": order_cross}.get(vec)
            else:
                raise ConfigurationError(f"unknown score class in key: {key}")
            if target is None:
                raise ConfigurationError(f"unknown score vector in key: {key}")
            target[idx] = value
        return cls(tuple(eval_line), tuple(eval_cross), tuple(order_line), tuple(order_cross))

    @classmethod
    def load(cls, path: str | Path) -> "ScoreTable":
        kv: dict[str, int] = {}
        for ln in Path(path).read_text().splitlines():
            ln = ln.strip()
            if not ln or ln.startswith("#"):
                continue
            if "=" not in ln:
                raise ConfigurationError(f"bad score line: {ln}")
            key, value = (part.strip() for part in ln.split("=", 1))
            kv[key] = int(value)
        return cls.from_mapping(kv)


def _cross_categories(classes: np.ndarray) -> np.ndarray:
    """CrossClass per square from its 4 directional classes, strongest pair."""
    fours = (classes == int(LineClass.SIMPLE_FOUR)).sum(axis=1)
    threes = (
        (classes == int(LineClass.DOUBLE_THREE))
        | (classes == int(LineClass.WEAK_THREE))
    ).sum(axis=1)
    out = np.zeros(classes.shape[0], dtype=np.int64)
    out[threes >= 2] = int(CrossClass.C33)
    out[(fours >= 1) & (threes >= 1)] = int(CrossClass.C43)
    out[fours >= 2] = int(CrossClass.C44)
    return out


def _square_scores(board: Board, line_vec, cross_vec):
    """Per-candidate-square (black_total, white_total) using one score vector."""
    squares = board.candidate_squares()
    if squares.size == 0:
        return squares, None, None, None
    flat = board.codes.reshape(-1, 4)[squares]
    table = board.table
    cls_b = table.classes[flat].astype(np.int64)
    cls_w = table.classes[table.swap[flat]].astype(np.int64)
    lv = np.asarray(line_vec, dtype=np.int64)
    cv = np.asarray(cross_vec, dtype=np.int64)
    score_b = lv[cls_b].sum(axis=1) + cv[_cross_categories(cls_b)]
    score_w = lv[cls_w].sum(axis=1) + cv[_cross_categories(cls_w)]
    return squares, score_b, score_w, (cls_b, cls_w)


def evaluate(board: Board, table: ScoreTable | None = None) -> int:
    """Mover-perspective sum of candidate-square line and cross scores."""
    if board.winner is not None or board.full:
        raise GameOverError("evaluation of a finished game")
    table = table or ScoreTable()
    squares, score_b, score_w, _ = _square_scores(
        board, table.eval_line, table.eval_cross
    )
    if squares.size == 0:
        return 0
    total = int(score_b.sum() - score_w.sum())
    return total if board.to_move == BLACK else -total


def generate_moves(
    board: Board,
    table: ScoreTable | None = None,
    branch: int = 40,
    *,
    verdict_checked: bool = False,
) -> list[int]:
    """Candidate squares scored for both colours, best `branch` first."""
    if not verdict_checked:
        report = analyze_board(board)
        if report.verdict != Verdict.OPEN:
            raise ContractError(
                f"move generation needs an open verdict, got {report.verdict.value}"
            )
    table = table or ScoreTable()
    squares, score_b, score_w, classes = _square_scores(
        board, table.order_line, table.order_cross
    )
    if squares.size == 0:
        return []
    scores = score_b + score_w
    order = np.lexsort((squares, -scores))
    limit = branch
    if branch >= 8:
        cls_b, cls_w = classes
        strong = (
            (np.maximum(cls_b, cls_w) >= int(LineClass.SIMPLE_FOUR)).any(axis=1).sum()
        )
        limit = max(branch, int(strong))
    return [int(squares[i]) for i in order[:limit]]
