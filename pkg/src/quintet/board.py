"""Mutable board state with incremental potential-line maintenance.

For every square and direction the board keeps the 16-bit code of the
nine-square line centred there (black-relative; the white view is a cell
swap away).  Placing or removing a stone touches at most 32 neighbouring
codes, the candidate flags within Chebyshev distance 2, the Zobrist hash
and the winner cache, all undone exactly by unmake.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from .core import (
    BLACK,
    CHAR_STONES,
    ConfigurationError,
    DIRECTIONS,
    EMPTY,
    HistoryUnderflowError,
    IllegalMoveError,
    MAX_DIM,
    MIN_DIM,
    OUTSIDE,
    STONE_CHARS,
    TurnError,
    WHITE,
    opponent,
)
from .lines import LineTable, get_line_table

CANDIDATE_RADIUS = 2

_ZOBRIST_SEED = 0x5EED_C0DE_2021
_rng = random.Random(_ZOBRIST_SEED)
# Keys indexed by (color-1, row * MAX_DIM + col) on the maximal grid so that
# hashes are dimension-independent and reproducible across builds.
ZOBRIST_KEYS = tuple(
    tuple(_rng.getrandbits(64) for _ in range(MAX_DIM * MAX_DIM)) for _ in range(2)
)
ZOBRIST_SIDE = _rng.getrandbits(64)
del _rng

_SLOT_SHIFT = {}
for _k in range(1, 5):
    _SLOT_SHIFT[-_k] = 2 * (4 - _k)  # stone left of the centre
    _SLOT_SHIFT[_k] = 2 * (_k + 3)  # stone right of the centre


@dataclass(frozen=True)
class Move:
    square: int
    color: int


class Board:
    """Game state; squares are flat indices row * ncols + col."""

    def __init__(self, nrows: int = 15, ncols: int = 15, table: LineTable | None = None):
        if not (MIN_DIM <= nrows <= MAX_DIM and MIN_DIM <= ncols <= MAX_DIM):
            raise ConfigurationError(
                f"board dims {nrows}x{ncols} outside [{MIN_DIM}, {MAX_DIM}]"
            )
        self.nrows = nrows
        self.ncols = ncols
        self.table = table or get_line_table()
        self.grid = np.zeros((nrows, ncols), dtype=np.int8)
        self.candidates = np.zeros((nrows, ncols), dtype=bool)
        self.codes = self._codes_from_scratch()
        self.to_move = BLACK
        self.hash = 0
        self.winner: int | None = None
        self.history: list[tuple] = []

    # --- geometry helpers ----------------------------------------------------

    def index(self, row: int, col: int) -> int:
        return row * self.ncols + col

    def rc(self, square: int) -> tuple[int, int]:
        return divmod(square, self.ncols)

    def in_bounds(self, row: int, col: int) -> bool:
        return 0 <= row < self.nrows and 0 <= col < self.ncols

    @property
    def move_count(self) -> int:
        return len(self.history)

    @property
    def full(self) -> bool:
        return self.move_count == self.nrows * self.ncols

    def stone_at(self, square: int) -> int:
        r, c = self.rc(square)
        return int(self.grid[r, c])

    # --- from-scratch reconstruction (also the incrementality oracle) ---------

    def _codes_from_scratch(self) -> np.ndarray:
        nr, nc = self.nrows, self.ncols
        padded = np.full((nr + 8, nc + 8), OUTSIDE, dtype=np.uint16)
        padded[4 : 4 + nr, 4 : 4 + nc] = self.grid
        codes = np.zeros((nr, nc, 4), dtype=np.uint16)
        for d, (dr, dc) in enumerate(DIRECTIONS):
            for k in list(range(-4, 0)) + list(range(1, 5)):
                plane = padded[
                    4 + k * dr : 4 + k * dr + nr, 4 + k * dc : 4 + k * dc + nc
                ]
                codes[:, :, d] |= plane << _SLOT_SHIFT[k]
        return codes

    def recompute_candidates(self) -> np.ndarray:
        nr, nc = self.nrows, self.ncols
        occ = self.grid != EMPTY
        near = np.zeros((nr, nc), dtype=bool)
        r = CANDIDATE_RADIUS
        padded = np.zeros((nr + 2 * r, nc + 2 * r), dtype=bool)
        padded[r : r + nr, r : r + nc] = occ
        for dr in range(-r, r + 1):
            for dc in range(-r, r + 1):
                near |= padded[r + dr : r + dr + nr, r + dc : r + dc + nc]
        return near & ~occ

    def recompute_hash(self) -> int:
        h = 0
        for r, c in zip(*np.nonzero(self.grid)):
            color = int(self.grid[r, c])
            h ^= ZOBRIST_KEYS[color - 1][r * MAX_DIM + c]
        if self.to_move == WHITE:
            h ^= ZOBRIST_SIDE
        return h

    def scan_winner(self) -> int | None:
        """Naive full-board five-in-a-row scan."""
        g = self.grid
        for color in (BLACK, WHITE):
            m = (g == color).astype(np.int8)
            for dr, dc in DIRECTIONS:
                acc = m
                for k in range(1, 5):
                    rolled = np.zeros_like(m)
                    r0, c0 = k * dr, k * dc
                    rs = slice(r0, None) if r0 >= 0 else slice(None, r0)
                    rd = slice(None, -r0 if r0 > 0 else None) if r0 >= 0 else slice(-r0, None)
                    if dc >= 0:
                        cs, cd = slice(c0, None), slice(None, -c0 if c0 > 0 else None)
                    else:
                        cs, cd = slice(None, c0), slice(-c0, None)
                    rolled[rd, cd] = m[rs, cs]
                    acc = acc & rolled
                if acc.any():
                    return color
        return None

    # --- make / unmake ----------------------------------------------------------

    def make_move(self, move: Move) -> None:
        if move.color != self.to_move:
            raise TurnError(f"it is not {STONE_CHARS[move.color]}'s turn")
        self.make(move.square)

    def make(self, square: int) -> None:
        r, c = self.rc(square)
        if not self.in_bounds(r, c):
            raise IllegalMoveError(f"square {square} off board")
        if self.grid[r, c] != EMPTY:
            raise IllegalMoveError(f"square {square} is occupied")
        if self.winner is not None:
            raise IllegalMoveError("game is over")
        color = self.to_move

        cand_added: list[int] = []
        was_candidate = bool(self.candidates[r, c])

        self.grid[r, c] = color
        self.hash ^= ZOBRIST_KEYS[color - 1][r * MAX_DIM + c] ^ ZOBRIST_SIDE
        self._touch_codes(r, c, color)

        rad = CANDIDATE_RADIUS
        for rr in range(max(0, r - rad), min(self.nrows, r + rad + 1)):
            for cc in range(max(0, c - rad), min(self.ncols, c + rad + 1)):
                if self.grid[rr, cc] == EMPTY and not self.candidates[rr, cc]:
                    self.candidates[rr, cc] = True
                    cand_added.append(self.index(rr, cc))
        self.candidates[r, c] = False

        won = self._five_through(r, c, color)
        self.history.append((square, color, cand_added, was_candidate, self.winner))
        if won:
            self.winner = color
        self.to_move = opponent(color)

    def unmake(self) -> None:
        if not self.history:
            raise HistoryUnderflowError("no move to unmake")
        square, color, cand_added, was_candidate, prev_winner = self.history.pop()
        r, c = self.rc(square)
        self.grid[r, c] = EMPTY
        self.hash ^= ZOBRIST_KEYS[color - 1][r * MAX_DIM + c] ^ ZOBRIST_SIDE
        self._touch_codes(r, c, EMPTY)
        for sq in cand_added:
            rr, cc = self.rc(sq)
            self.candidates[rr, cc] = False
        self.candidates[r, c] = was_candidate
        self.winner = prev_winner
        self.to_move = color

    def _touch_codes(self, r: int, c: int, value: int) -> None:
        codes = self.codes
        nr, nc = self.nrows, self.ncols
        for d, (dr, dc) in enumerate(DIRECTIONS):
            for k in (-4, -3, -2, -1, 1, 2, 3, 4):
                rr, cc = r - k * dr, c - k * dc
                if 0 <= rr < nr and 0 <= cc < nc:
                    shift = _SLOT_SHIFT[k]
                    codes[rr, cc, d] = (
                        int(codes[rr, cc, d]) & (0xFFFF ^ (3 << shift))
                    ) | (value << shift)

    def _five_through(self, r: int, c: int, color: int) -> bool:
        g = self.grid
        for dr, dc in DIRECTIONS:
            run = 1
            rr, cc = r + dr, c + dc
            while self.in_bounds(rr, cc) and g[rr, cc] == color:
                run += 1
                rr, cc = rr + dr, cc + dc
            rr, cc = r - dr, c - dc
            while self.in_bounds(rr, cc) and g[rr, cc] == color:
                run += 1
                rr, cc = rr - dr, cc - dc
            if run >= 5:
                return True
        return False

    # --- solver support -----------------------------------------------------------

    def place_stone(self, square: int, color: int) -> tuple:
        """Place a stone without turn bookkeeping (endgame solvers place
        several defender stones per pseudo-turn).  Returns an undo token."""
        r, c = self.rc(square)
        if self.grid[r, c] != EMPTY:
            raise IllegalMoveError(f"square {square} is occupied")
        cand_added: list[int] = []
        was_candidate = bool(self.candidates[r, c])
        self.grid[r, c] = color
        self.hash ^= ZOBRIST_KEYS[color - 1][r * MAX_DIM + c]
        self._touch_codes(r, c, color)
        rad = CANDIDATE_RADIUS
        for rr in range(max(0, r - rad), min(self.nrows, r + rad + 1)):
            for cc in range(max(0, c - rad), min(self.ncols, c + rad + 1)):
                if self.grid[rr, cc] == EMPTY and not self.candidates[rr, cc]:
                    self.candidates[rr, cc] = True
                    cand_added.append(self.index(rr, cc))
        self.candidates[r, c] = False
        prev_winner = self.winner
        if prev_winner is None and self._five_through(r, c, color):
            self.winner = color
        return (square, color, cand_added, was_candidate, prev_winner)

    def remove_stone(self, token: tuple) -> None:
        square, color, cand_added, was_candidate, prev_winner = token
        r, c = self.rc(square)
        self.grid[r, c] = EMPTY
        self.hash ^= ZOBRIST_KEYS[color - 1][r * MAX_DIM + c]
        self._touch_codes(r, c, EMPTY)
        for sq in cand_added:
            rr, cc = self.rc(sq)
            self.candidates[rr, cc] = False
        self.candidates[r, c] = was_candidate
        self.winner = prev_winner

    # --- views ------------------------------------------------------------------

    def classes_for(self, color: int) -> np.ndarray:
        """Potential-line classes per square and direction for one colour."""
        flat = self.codes.reshape(-1, 4)
        if color == BLACK:
            return self.table.classes[flat].reshape(self.codes.shape)
        return self.table.classes[self.table.swap[flat]].reshape(self.codes.shape)

    def codes_for(self, color: int) -> np.ndarray:
        if color == BLACK:
            return self.codes
        return self.table.swap[self.codes.reshape(-1, 4)].reshape(self.codes.shape)

    def candidate_squares(self) -> np.ndarray:
        return np.flatnonzero(self.candidates.reshape(-1))

    def clone(self) -> "Board":
        b = Board.__new__(Board)
        b.nrows, b.ncols, b.table = self.nrows, self.ncols, self.table
        b.grid = self.grid.copy()
        b.candidates = self.candidates.copy()
        b.codes = self.codes.copy()
        b.to_move = self.to_move
        b.hash = self.hash
        b.winner = self.winner
        b.history = list(self.history)
        return b

    # --- text dumps ----------------------------------------------------------------

    def to_text(self) -> str:
        rows = [f"{self.nrows}x{self.ncols} {STONE_CHARS[self.to_move]}"]
        for r in range(self.nrows):
            rows.append(
                "".join(
                    STONE_CHARS[int(v)] if v else "." for v in self.grid[r]
                )
            )
        return "\n".join(rows) + "\n"

    @classmethod
    def from_text(
        cls, text: str, table: LineTable | None = None, strict: bool = True
    ) -> "Board":
        """Parse a board dump.  Strict mode replays the stones as a legal
        move sequence; non-strict places them directly (analysis positions,
        e.g. solver inputs, need not be reachable)."""
        lines = [ln for ln in text.splitlines() if ln.strip()]
        dims, mover = lines[0].split()
        nr, nc = (int(x) for x in dims.split("x"))
        board = cls(nr, nc, table=table)
        stones: list[tuple[int, int]] = []
        for r, row in enumerate(lines[1 : nr + 1]):
            for c, ch in enumerate(row):
                if ch == ".":
                    continue
                stones.append((board.index(r, c), CHAR_STONES[ch]))
        to_move = {"X": BLACK, "O": WHITE}[mover]
        if strict:
            board.setup(stones, to_move)
        else:
            for sq, color in stones:
                board.place_stone(sq, color)
            board.to_move = to_move
        return board

    def setup(self, stones: list[tuple[int, int]], to_move: int) -> None:
        """Load a position as one legal-order move sequence (black first)."""
        if self.history:
            raise IllegalMoveError("setup requires a fresh board")
        blacks = [sq for sq, col in stones if col == BLACK]
        whites = [sq for sq, col in stones if col == WHITE]
        if not (0 <= len(blacks) - len(whites) <= 1):
            raise IllegalMoveError(
                f"unreachable stone balance: {len(blacks)}B/{len(whites)}W"
            )
        order: list[int] = []
        for i in range(len(whites)):
            order.append(blacks[i])
            order.append(whites[i])
        order.extend(blacks[len(whites) :])
        for sq in order:
            self.make(sq)
        if self.to_move != to_move:
            raise IllegalMoveError("to-move colour inconsistent with stone counts")


def new_board(nrows: int, ncols: int) -> Board:
    return Board(nrows, ncols)


def zobrist_hash(board: Board) -> int:
    """Position hash: a function of stone placement and side to move only."""
    return board.hash


def winner_on_board(board: Board) -> int | None:
    return board.winner
