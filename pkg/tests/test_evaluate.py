"""Evaluation and move generation against naive full-rescan oracles."""

import random

import numpy as np
import pytest

from quintet.board import Board
from quintet.core import BLACK, ConfigurationError, ContractError, GameOverError, WHITE
from quintet.evaluate import ScoreTable, evaluate, generate_moves
from quintet.lines import CrossClass, LineClass, classify_line, cross_class

from .helpers import random_open_board


def naive_square_scores(board: Board, line_vec, cross_vec, color):
    """Rescan oracle: classify every line of every candidate square directly."""
    from quintet.core import DIRECTIONS, EMPTY, OUTSIDE

    total = {}
    g = board.grid
    for sq in board.candidate_squares():
        r, c = board.rc(int(sq))
        classes = []
        for dr, dc in DIRECTIONS:
            cells = []
            for k in range(-4, 5):
                rr, cc = r + k * dr, c + k * dc
                if not board.in_bounds(rr, cc):
                    cells.append(OUTSIDE)
                elif (rr, cc) == (r, c):
                    cells.append(EMPTY)
                else:
                    v = int(g[rr, cc])
                    if v == EMPTY:
                        cells.append(EMPTY)
                    elif v == color:
                        cells.append(1)
                    else:
                        cells.append(2)
            classes.append(classify_line(tuple(cells))[0])
        cc_, _ = cross_class(classes)
        total[int(sq)] = sum(line_vec[c] for c in classes) + cross_vec[cc_]
    return total


def test_empty_board_evaluates_zero():
    assert evaluate(Board(15, 15)) == 0


def test_single_stone_eval_matches_rescan_oracle():
    b = Board(15, 15)
    b.make(b.index(7, 7))
    t = ScoreTable()
    black = naive_square_scores(b, t.eval_line, t.eval_cross, BLACK)
    white = naive_square_scores(b, t.eval_line, t.eval_cross, WHITE)
    expected = sum(white.values()) - sum(black.values())  # white to move
    assert evaluate(b, t) == expected
    assert expected == -sum(black.values())  # white has no structure yet


@pytest.mark.parametrize("seed", range(4))
def test_eval_matches_rescan_oracle_random(seed):
    rng = random.Random(seed)
    b = random_open_board(rng, plies=rng.randrange(6, 20))
    t = ScoreTable()
    black = naive_square_scores(b, t.eval_line, t.eval_cross, BLACK)
    white = naive_square_scores(b, t.eval_line, t.eval_cross, WHITE)
    diff = sum(black.values()) - sum(white.values())
    expected = diff if b.to_move == BLACK else -diff
    assert evaluate(b, t) == expected


def test_eval_antisymmetry_under_color_swap():
    # Same mover, all stone colours swapped: the value negates exactly.
    rng = random.Random(42)
    for _ in range(5):
        b = random_open_board(rng, plies=rng.randrange(4, 16))
        swapped = Board(b.nrows, b.ncols)
        for (r, c), v in np.ndenumerate(b.grid):
            if v:
                swapped.place_stone(
                    swapped.index(r, c), WHITE if int(v) == BLACK else BLACK
                )
        swapped.to_move = b.to_move
        assert evaluate(swapped) == -evaluate(b)


def test_eval_rejects_finished_game():
    b = Board(15, 15)
    for i in range(4):
        b.make(b.index(7, 7 - 3 + i) if False else b.index(7, 4 + i))
        b.make(b.index(8, 4 + i))
    b.make(b.index(7, 8))
    with pytest.raises(GameOverError):
        evaluate(b)


# --- move generation ---------------------------------------------------------

def open_board(seed=3, plies=8):
    rng = random.Random(seed)
    from quintet.analysis import Verdict, analyze_board

    while True:
        b = random_open_board(rng, plies=plies)
        if analyze_board(b).verdict == Verdict.OPEN:
            return b


def test_generate_fewer_than_branch_returns_all():
    b = Board(15, 15)
    b.make(b.index(7, 7))
    moves = generate_moves(b, branch=40)
    assert len(moves) == 24


def test_branch_one_returns_argmax():
    b = open_board()
    t = ScoreTable()
    moves = generate_moves(b, t, branch=1)
    scores = naive_square_scores(b, t.order_line, t.order_cross, BLACK)
    scores_w = naive_square_scores(b, t.order_line, t.order_cross, WHITE)
    combined = {sq: scores[sq] + scores_w[sq] for sq in scores}
    best = max(combined.items(), key=lambda kv: (kv[1], -kv[0]))
    assert moves == [best[0]]


def test_ordering_matches_rescan_oracle():
    b = open_board(seed=9, plies=12)
    t = ScoreTable()
    moves = generate_moves(b, t, branch=10_000)
    sb = naive_square_scores(b, t.order_line, t.order_cross, BLACK)
    sw = naive_square_scores(b, t.order_line, t.order_cross, WHITE)
    expected = sorted(sb, key=lambda sq: (-(sb[sq] + sw[sq]), sq))
    assert moves == expected


def test_argmax_invariance_under_scaling():
    b = open_board(seed=5, plies=10)
    t = ScoreTable()
    assert generate_moves(b, t, branch=40) == generate_moves(b, t.scaled(7), branch=40)


def test_generate_moves_requires_open_verdict():
    b = Board(15, 15)
    for i in range(4):
        b.make(b.index(7, 4 + i))
        b.make(b.index(8, 4 + i))
    # Black has an open four: not an open position.
    with pytest.raises(ContractError):
        generate_moves(b)


def test_truncation_never_drops_four_class_squares():
    # With branch >= 8 every square holding a simple-four potential (either
    # colour) survives the cut, even when weaker squares outnumber it.
    from quintet.analysis import Verdict, analyze_board
    from quintet.lines import LineClass

    rng = random.Random(123)
    seen = 0
    while seen < 6:
        b = random_open_board(rng, plies=rng.randrange(10, 24))
        if analyze_board(b).verdict != Verdict.OPEN:
            continue
        squares = b.candidate_squares()
        flat = b.codes.reshape(-1, 4)[squares]
        cls_b = b.table.classes[flat]
        cls_w = b.table.classes[b.table.swap[flat]]
        strong = {
            int(sq)
            for i, sq in enumerate(squares)
            if max(cls_b[i].max(), cls_w[i].max()) >= int(LineClass.SIMPLE_FOUR)
        }
        if not strong:
            continue
        seen += 1
        moves = set(generate_moves(b, branch=8))
        assert strong <= moves, f"lost four-class squares {strong - moves}"


# --- score table validation ----------------------------------------------------

def test_non_monotone_table_rejected():
    line = list(ScoreTable().eval_line)
    line[LineClass.SIMPLE_FOUR] = 1  # below the threes
    with pytest.raises(ConfigurationError):
        ScoreTable(eval_line=tuple(line))


def test_generic_must_be_zero():
    line = list(ScoreTable().eval_line)
    line[LineClass.GENERIC] = 5
    with pytest.raises(ConfigurationError):
        ScoreTable(eval_line=tuple(line))


def test_score_table_from_config_text(tmp_path):
    p = tmp_path / "scores.conf"
    p.write_text("# tuning\neval.simple_four = 20000\norder.c44 = 99999\n")
    t = ScoreTable.load(p)
    assert t.eval_line[LineClass.SIMPLE_FOUR] == 20000
    assert t.order_cross[CrossClass.C44] == 99999
    assert t.eval_line[LineClass.SIMPLE_FIVE] == ScoreTable().eval_line[LineClass.SIMPLE_FIVE]


def test_score_table_rejects_unknown_key(tmp_path):
    p = tmp_path / "scores.conf"
    p.write_text("eval.super_five = 1\n")
    with pytest.raises(ConfigurationError, match="super_five"):
        ScoreTable.load(p)


def test_coarse_mode_merges_threes():
    t = ScoreTable().coarse()
    assert t.eval_line[LineClass.DOUBLE_THREE] == t.eval_line[LineClass.WEAK_THREE] + 1
