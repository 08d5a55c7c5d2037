"""Game-tree search: reference minimax, alpha-beta, and PVS with iterative
deepening and a transposition table.

All three searchers share one node model so their root values are exactly
comparable: static analysis short-circuits proven positions (win-in-sight,
loss-certain), forced positions expand only the forced move set, open
positions expand the ordered top-B candidate moves, and depth-0 leaves take
the heuristic evaluation.  Win and loss sentinels carry the ply distance so
quicker wins dominate.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .analysis import AnalysisReport, Verdict, analyze_board
from .board import Board
from .core import ConfigurationError, GameOverError
from .evaluate import ScoreTable, WIN_BASE, WIN_THRESHOLD, evaluate, generate_moves

INF = WIN_BASE * 2

BOUND_EXACT = 0
BOUND_LOWER = 1
BOUND_UPPER = 2

_TIME_CHECK_MASK = 1023  # budget checked every 1024 nodes


@dataclass
class SearchLimits:
    max_depth: int = 0
    time_ms: int = 0
    node_budget: int = 0
    branch: int = 40

    def __post_init__(self) -> None:
        if self.max_depth <= 0 and self.time_ms <= 0 and self.node_budget <= 0:
            raise ConfigurationError("at least one search limit must be set")
        if self.branch <= 0:
            raise ConfigurationError("branch must be positive")


@dataclass
class TTEntry:
    key: int
    depth: int
    value: int
    bound: int
    move: int
    age: int


class TranspositionTable:
    """Fixed-size single-slot table; replace stale ages or shallower depths."""

    def __init__(self, entries: int = 1 << 18, exact_only: bool = False):
        if entries & (entries - 1) or entries <= 0:
            raise ConfigurationError("TT size must be a power of two")
        self.mask = entries - 1
        self.exact_only = exact_only
        self.slots: list[TTEntry | None] = [None] * entries
        self.age = 0
        self.hits = 0

    def new_search(self) -> None:
        self.age += 1

    def probe(self, key: int) -> TTEntry | None:
        e = self.slots[key & self.mask]
        if e is not None and e.key == key:
            return e
        return None

    def store(self, key: int, depth: int, value: int, bound: int, move: int) -> None:
        if self.exact_only and bound != BOUND_EXACT:
            return
        i = key & self.mask
        e = self.slots[i]
        if e is None or e.age != self.age or depth >= e.depth:
            self.slots[i] = TTEntry(key, depth, value, bound, move, self.age)


def _to_tt_value(value: int, ply: int) -> int:
    if value > WIN_THRESHOLD:
        return value + ply
    if value < -WIN_THRESHOLD:
        return value - ply
    return value


def _from_tt_value(value: int, ply: int) -> int:
    if value > WIN_THRESHOLD:
        return value - ply
    if value < -WIN_THRESHOLD:
        return value + ply
    return value


@dataclass
class SearchStats:
    nodes: int = 0
    tt_hits: int = 0
    depth_reached: int = 0
    time_ms: float = 0.0


@dataclass
class SearchResult:
    best_move: int | None
    value: int
    pv: tuple[int, ...]
    stats: SearchStats = field(default_factory=SearchStats)

    def to_json(self, board: Board | None = None) -> dict:
        pv = [list(board.rc(sq)) if board else sq for sq in self.pv]
        move = (
            (list(board.rc(self.best_move)) if board else self.best_move)
            if self.best_move is not None
            else None
        )
        return {
            "best_move": move,
            "value": self.value,
            "pv": pv,
            "nodes": self.stats.nodes,
            "tt_hits": self.stats.tt_hits,
            "depth": self.stats.depth_reached,
            "time_ms": round(self.stats.time_ms, 3),
        }


class _BudgetExceeded(Exception):
    pass


# Win distance by analysis case: an S5 wins next ply, a double four needs
# the opponent's block plus the finishing stone; the loss cases mirror it.
_WIN_DISTANCE = {1: 1, 4: 3}
_LOSS_DISTANCE = {3: 2, 5: 4}


class Searcher:
    def __init__(
        self,
        board: Board,
        table: ScoreTable | None = None,
        branch: int = 40,
        tt: TranspositionTable | None = None,
        node_budget: int = 0,
        time_ms: int = 0,
        extend_forced: bool = False,
    ):
        self.board = board
        self.table = table or ScoreTable()
        self.branch = branch
        self.tt = tt
        self.node_budget = node_budget
        self.deadline = time.perf_counter() + time_ms / 1000 if time_ms > 0 else None
        # Optional extension: single-reply forced nodes keep their depth,
        # bounded so a long exchange of fours cannot recurse unboundedly.
        self.extend_forced = extend_forced
        self.stats = SearchStats()

    # --- shared node pieces ---------------------------------------------------

    def _tick(self) -> None:
        self.stats.nodes += 1
        if self.node_budget and self.stats.nodes > self.node_budget:
            raise _BudgetExceeded
        if self.deadline is not None and (self.stats.nodes & _TIME_CHECK_MASK) == 0:
            if time.perf_counter() > self.deadline:
                raise _BudgetExceeded

    def _static(self, ply: int) -> tuple[int | None, AnalysisReport | None]:
        """Sentinel value for decided nodes, else the analysis report."""
        b = self.board
        if b.winner is not None:
            return -(WIN_BASE - ply), None  # the previous move won
        if b.full:
            return 0, None
        report = analyze_board(b)
        if report.verdict == Verdict.WIN_IN_SIGHT:
            return WIN_BASE - (ply + _WIN_DISTANCE[report.case]), report
        if report.verdict == Verdict.LOSS_CERTAIN:
            return -(WIN_BASE - (ply + _LOSS_DISTANCE[report.case])), report
        return None, report

    def _moves(self, report: AnalysisReport) -> list[int]:
        if report.verdict == Verdict.FORCED:
            return list(report.moves)
        return generate_moves(
            self.board, self.table, self.branch, verdict_checked=True
        )

    def _child_depth(self, depth: int, report: AnalysisReport, moves, ply: int) -> int:
        if (
            self.extend_forced
            and report.verdict == Verdict.FORCED
            and len(moves) == 1
            and ply < 64
        ):
            return depth
        return depth - 1

    # --- plain minimax -----------------------------------------------------------

    def minimax(self, depth: int) -> SearchResult:
        value, pv = self._minimax(depth, 0)
        return self._finish(value, pv)

    def _minimax(self, depth: int, ply: int) -> tuple[int, tuple[int, ...]]:
        self._tick()
        value, report = self._static(ply)
        if value is not None:
            return value, ()
        if depth == 0:
            return evaluate(self.board, self.table), ()
        best, best_pv = -INF, ()
        for move in self._moves(report):
            self.board.make(move)
            v, sub = self._minimax(depth - 1, ply + 1)
            self.board.unmake()
            if -v > best:
                best, best_pv = -v, (move, *sub)
        return best, best_pv

    # --- alpha-beta ------------------------------------------------------------------

    def alphabeta(self, depth: int, alpha: int = -INF, beta: int = INF) -> SearchResult:
        value, pv = self._alphabeta(depth, 0, alpha, beta)
        return self._finish(value, pv)

    def _alphabeta(
        self, depth: int, ply: int, alpha: int, beta: int
    ) -> tuple[int, tuple[int, ...]]:
        self._tick()
        value, report = self._static(ply)
        if value is not None:
            return value, ()
        if depth == 0:
            return evaluate(self.board, self.table), ()
        best, best_pv = -INF, ()
        for move in self._moves(report):
            self.board.make(move)
            v, sub = self._alphabeta(depth - 1, ply + 1, -beta, -alpha)
            self.board.unmake()
            if -v > best:
                best, best_pv = -v, (move, *sub)
            alpha = max(alpha, best)
            if alpha >= beta:
                break
        return best, best_pv

    # --- PVS with iterative deepening ---------------------------------------------------

    def pvs_iterative(self, limits: SearchLimits) -> SearchResult:
        self.branch = limits.branch
        self.node_budget = limits.node_budget
        if limits.time_ms > 0:
            self.deadline = time.perf_counter() + limits.time_ms / 1000
        if self.tt is not None:
            self.tt.new_search()
        started = time.perf_counter()
        max_depth = limits.max_depth if limits.max_depth > 0 else 1 << 10
        best: SearchResult | None = None
        for depth in range(1, max_depth + 1):
            if depth == 1:
                # Depth 1 always completes so a result exists even under a
                # budget smaller than its cost.
                saved = self.node_budget, self.deadline
                self.node_budget, self.deadline = 0, None
                value, pv = self._pvs(1, 0, -INF, INF)
                self.node_budget, self.deadline = saved
            else:
                try:
                    value, pv = self._pvs(depth, 0, -INF, INF)
                except _BudgetExceeded:
                    break
            best = self._finish(value, pv)
            best.stats.depth_reached = depth
        assert best is not None
        best.stats.time_ms = (time.perf_counter() - started) * 1000
        return best

    def _pvs(
        self, depth: int, ply: int, alpha: int, beta: int
    ) -> tuple[int, tuple[int, ...]]:
        self._tick()
        value, report = self._static(ply)
        if value is not None:
            return value, ()
        if depth == 0:
            return evaluate(self.board, self.table), ()

        tt = self.tt
        tt_move = None
        key = self.board.hash
        if tt is not None:
            entry = tt.probe(key)
            if entry is not None:
                usable = (
                    entry.depth == depth
                    if tt.exact_only
                    else entry.depth >= depth
                )
                v = _from_tt_value(entry.value, ply)
                if usable:
                    if entry.bound == BOUND_EXACT:
                        tt.hits += 1
                        self.stats.tt_hits += 1
                        return v, (entry.move,) if entry.move >= 0 else ()
                    if entry.bound == BOUND_LOWER and v >= beta:
                        tt.hits += 1
                        self.stats.tt_hits += 1
                        return v, ()
                    if entry.bound == BOUND_UPPER and v <= alpha:
                        tt.hits += 1
                        self.stats.tt_hits += 1
                        return v, ()
                if entry.move >= 0:
                    tt_move = entry.move

        moves = self._moves(report)
        if tt_move is not None and tt_move in moves:
            moves.remove(tt_move)
            moves.insert(0, tt_move)

        child_depth = self._child_depth(depth, report, moves, ply)
        alpha_orig = alpha
        best, best_pv = -INF, ()
        for i, move in enumerate(moves):
            self.board.make(move)
            if i == 0:
                v, sub = self._pvs(child_depth, ply + 1, -beta, -alpha)
                v = -v
            else:
                v, sub = self._pvs(child_depth, ply + 1, -alpha - 1, -alpha)
                v = -v
                if alpha < v < beta:
                    v, sub = self._pvs(child_depth, ply + 1, -beta, -alpha)
                    v = -v
            self.board.unmake()
            if v > best:
                best, best_pv = v, (move, *sub)
            alpha = max(alpha, best)
            if alpha >= beta:
                break

        if tt is not None:
            if best <= alpha_orig:
                bound = BOUND_UPPER
            elif best >= beta:
                bound = BOUND_LOWER
            else:
                bound = BOUND_EXACT
            move = best_pv[0] if best_pv else -1
            tt.store(key, depth, _to_tt_value(best, ply), bound, move)
        return best, best_pv

    def _finish(self, value: int, pv: tuple[int, ...]) -> SearchResult:
        return SearchResult(
            best_move=pv[0] if pv else None,
            value=value,
            pv=pv,
            stats=self.stats,
        )


def _decided_root(board: Board) -> SearchResult | None:
    """Analysis short-circuit at the root, carrying the winning move."""
    report = analyze_board(board)
    if report.verdict == Verdict.WIN_IN_SIGHT:
        move = report.moves[0]
        value = WIN_BASE - _WIN_DISTANCE[report.case]
        return SearchResult(move, value, (move,))
    if report.verdict == Verdict.LOSS_CERTAIN:
        return SearchResult(None, -(WIN_BASE - _LOSS_DISTANCE[report.case]), ())
    return None


def minimax(board: Board, depth: int, *, table: ScoreTable | None = None, branch: int = 40) -> SearchResult:
    if depth < 1:
        raise ConfigurationError("depth must be at least 1")
    if board.winner is not None or board.full:
        raise GameOverError("search invoked on a finished game")
    decided = _decided_root(board)
    if decided is not None:
        return decided
    return Searcher(board, table, branch).minimax(depth)


def alphabeta(
    board: Board,
    depth: int,
    alpha: int = -INF,
    beta: int = INF,
    *,
    table: ScoreTable | None = None,
    branch: int = 40,
) -> SearchResult:
    if depth < 1:
        raise ConfigurationError("depth must be at least 1")
    if board.winner is not None or board.full:
        raise GameOverError("search invoked on a finished game")
    decided = _decided_root(board)
    if decided is not None:
        return decided
    return Searcher(board, table, branch).alphabeta(depth, alpha, beta)


def pvs_iterative(
    board: Board,
    limits: SearchLimits,
    tt: TranspositionTable | None = None,
    *,
    table: ScoreTable | None = None,
    extend_forced: bool = False,
) -> SearchResult:
    if board.winner is not None or board.full:
        raise GameOverError("search invoked on a finished game")
    decided = _decided_root(board)
    if decided is not None:
        decided.stats.depth_reached = 0
        return decided
    searcher = Searcher(board, table, limits.branch, tt=tt, extend_forced=extend_forced)
    return searcher.pvs_iterative(limits)
