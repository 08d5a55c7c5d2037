"""Shared test utilities: independent oracles and random board generation."""

import random

import numpy as np

from quintet.board import Board
from quintet.core import BLACK, DIRECTIONS, EMPTY, WHITE, opponent


def naive_scan_winner(board: Board):
    """Five-in-a-row detection by direct enumeration, independent of Board."""
    g = board.grid
    for r in range(board.nrows):
        for c in range(board.ncols):
            color = int(g[r, c])
            if color == EMPTY:
                continue
            for dr, dc in DIRECTIONS:
                if all(
                    board.in_bounds(r + k * dr, c + k * dc)
                    and g[r + k * dr, c + k * dc] == color
                    for k in range(5)
                ):
                    return color
    return None


def random_game(rng: random.Random, nrows=15, ncols=15, max_plies=None, board=None):
    """Play random candidate-restricted moves until a win or the ply budget."""
    b = board or Board(nrows, ncols)
    b.make(b.index(nrows // 2, ncols // 2))
    plies = max_plies if max_plies is not None else nrows * ncols
    while b.winner is None and not b.full and b.move_count < plies:
        cands = b.candidate_squares()
        b.make(int(rng.choice(list(cands))))
    return b


def random_open_board(rng: random.Random, plies: int, nrows=15, ncols=15):
    """A reachable, unfinished board with the requested number of stones."""
    while True:
        b = Board(nrows, ncols)
        b.make(b.index(nrows // 2, ncols // 2))
        ok = True
        while b.move_count < plies:
            cands = list(b.candidate_squares())
            b.make(int(rng.choice(cands)))
            if b.winner is not None:
                ok = False
                break
        if ok:
            return b


def assert_incremental_consistency(b: Board):
    assert np.array_equal(b.codes, b._codes_from_scratch()), "potential codes drifted"
    assert np.array_equal(b.candidates, b.recompute_candidates()), "candidates drifted"
    assert b.hash == b.recompute_hash(), "hash drifted"
    assert b.winner == b.scan_winner(), "winner drifted"
