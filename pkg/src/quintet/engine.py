"""Move selection pipeline shared by the protocol and the HTTP bridge."""

from __future__ import annotations

from dataclasses import dataclass

from .analysis import AnalysisReport, Verdict, analyze_board
from .board import Board
from .config import EngineConfig
from .endgame import ThreatSet, bmm_solve, tss_solve
from .search import SearchLimits, SearchResult, TranspositionTable, pvs_iterative


@dataclass
class EngineReply:
    move: int
    analysis: AnalysisReport
    search: SearchResult | None


class Engine:
    """One game's engine state: board, score table, persistent TT."""

    def __init__(self, config: EngineConfig, board: Board | None = None):
        self.config = config
        self.board = board or Board(config.rows, config.cols)
        self.scores = config.score_table()
        self.tt = TranspositionTable(config.tt_entries)

    def limits(self) -> SearchLimits:
        return SearchLimits(
            max_depth=self.config.max_depth,
            time_ms=self.config.time_ms,
            node_budget=self.config.node_budget,
            branch=self.config.branch,
        )

    def choose_move(self) -> EngineReply:
        board = self.board
        if board.move_count == 0:
            move = board.index(board.nrows // 2, board.ncols // 2)
            return EngineReply(move, analyze_board(board), None)
        report = analyze_board(board)
        if self.config.check_actual_analysis:
            from .analysis import analyze_board_actual

            actual = analyze_board_actual(board)
            if actual.verdict != report.verdict:
                import sys

                print(
                    f"quintet: analysis variants disagree: "
                    f"{report.verdict.value} vs {actual.verdict.value}",
                    file=sys.stderr,
                )
        if report.verdict == Verdict.WIN_IN_SIGHT:
            return EngineReply(report.moves[0], report, None)
        if report.verdict == Verdict.FORCED and len(report.moves) == 1:
            return EngineReply(report.moves[0], report, None)
        if report.verdict == Verdict.LOSS_CERTAIN:
            # Lost position: block the first winning square anyway.
            block = report.evidence[0].square
            return EngineReply(block, report, None)
        if self.config.solver != "off":
            ts = (
                ThreatSet.FOURS_AND_THREES
                if self.config.solver_threats == "fours+threes"
                else ThreatSet.FOURS
            )
            solve = bmm_solve if self.config.solver == "bmm" else tss_solve
            verdict = solve(board, ts, self.limits())
            if verdict.is_victory and verdict.line:
                return EngineReply(verdict.line[0], report, None)
        result = pvs_iterative(
            board,
            self.limits(),
            tt=self.tt,
            table=self.scores,
            extend_forced=self.config.forced_extension,
        )
        move = result.best_move
        if move is None:  # no proof and no pv: fall back to any candidate
            move = int(board.candidate_squares()[0])
        return EngineReply(move, report, result)

    def play(self, square: int) -> None:
        self.board.make(square)

    @property
    def game_over(self) -> bool:
        return self.board.winner is not None or self.board.full
