#!/usr/bin/env python3
"""Colour-swapped self-play match between two search depths.

The sanity bar behind it: a depth-6 engine must beat a depth-2 engine in at
least 80% of 50 colour-swapped pairs (11x11 board, branch 6, seeded opening
variation per pair; a pair is beaten when the deep side's score is strictly
greater over its two games)."""

from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parents[1] / "src"))

from quintet.analysis import Verdict, analyze_board
from quintet.board import Board
from quintet.core import BLACK
from quintet.engine import Engine, EngineConfig


def play_game(deep_is_black: bool, opening_seed: int, deep_depth: int, shallow_depth: int,
              size: int = 11, branch: int = 6) -> float:
    """Returns the deep engine's score: 1 win, 0.5 draw, 0 loss."""
    rng = random.Random(opening_seed)
    board = Board(size, size)
    deep = Engine(EngineConfig(rows=size, cols=size, branch=branch, max_depth=deep_depth,
                               tt_entries=1 << 14), board)
    shallow = Engine(EngineConfig(rows=size, cols=size, branch=branch, max_depth=shallow_depth,
                                  tt_entries=1 << 14), board)
    # Seeded opening: centre plus one random reply keeps the pairs varied.
    board.make(board.index(size // 2, size // 2))
    board.make(int(rng.choice(list(board.candidate_squares()))))
    engines = {True: deep, False: shallow}
    while board.winner is None and not board.full:
        mover_is_deep = (board.to_move == BLACK) == deep_is_black
        reply = engines[mover_is_deep].choose_move()
        board.make(reply.move)
    if board.winner is None:
        return 0.5
    deep_color = BLACK if deep_is_black else 2
    return 1.0 if board.winner == deep_color else 0.0


def run_match(pairs: int = 50, deep_depth: int = 6, shallow_depth: int = 2,
              verbose: bool = False) -> tuple[int, list[tuple[float, float]]]:
    """Plays the match; returns (pairs beaten by the deep side, pair scores)."""
    results = []
    beaten = 0
    for i in range(pairs):
        a = play_game(True, 1000 + i, deep_depth, shallow_depth)
        b = play_game(False, 1000 + i, deep_depth, shallow_depth)
        deep_score = a + b
        shallow_score = 2.0 - deep_score
        if deep_score > shallow_score:
            beaten += 1
        results.append((a, b))
        if verbose:
            print(f"pair {i:2d}: deep as black {a}, deep as white {b}", flush=True)
    return beaten, results


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--pairs", type=int, default=50)
    ap.add_argument("--deep", type=int, default=6)
    ap.add_argument("--shallow", type=int, default=2)
    ap.add_argument("--verbose", action="store_true")
    args = ap.parse_args()
    beaten, results = run_match(args.pairs, args.deep, args.shallow, args.verbose)
    total = sum(a + b for a, b in results)
    print(f"depth-{args.deep} beat depth-{args.shallow} in {beaten}/{args.pairs} pairs "
          f"(game score {total}/{2 * args.pairs})")
    return 0 if beaten >= 0.8 * args.pairs else 1


if __name__ == "__main__":
    raise SystemExit(main())
