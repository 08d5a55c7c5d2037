"""Shared primitives: cell values, directions, square indexing."""

from __future__ import annotations

EMPTY = 0
BLACK = 1
WHITE = 2
OUTSIDE = 3

STONE_CHARS = {EMPTY: "+", BLACK: "X", WHITE: "O"}
CHAR_STONES = {v: k for k, v in STONE_CHARS.items()}

# E, S, SE, NE-SW. Order matters: it is the direction index used everywhere.
DIRECTIONS = ((0, 1), (1, 0), (1, 1), (1, -1))

MIN_DIM = 5
MAX_DIM = 32


def opponent(color: int) -> int:
    if color == BLACK:
        return WHITE
    if color == WHITE:
        return BLACK
    raise ValueError(f"not a player color: {color}")


def rc_to_index(row: int, col: int, ncols: int) -> int:
    return row * ncols + col


def index_to_rc(index: int, ncols: int) -> tuple[int, int]:
    return divmod(index, ncols)


class QuintetError(Exception):
    """Base for engine errors."""


class ConfigurationError(QuintetError):
    pass


class IllegalMoveError(QuintetError):
    pass


class TurnError(IllegalMoveError):
    pass


class HistoryUnderflowError(QuintetError):
    pass


class GameOverError(QuintetError):
    pass


class ContractError(QuintetError):
    pass
