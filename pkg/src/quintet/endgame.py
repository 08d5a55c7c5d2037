"""Endgame solvers: binary minimax (BMM) and threat space search (TSS).

Both prove forced wins for the side to move by playing threat moves only.
A threat move is a square whose potential class creates an attack: four
makers (simple-four class) always, three makers (double/weak-three class
and crossed threes) when enabled.

BMM alternates real moves: Max nodes play every threat move, Min nodes the
defender's analysis-forced set; analysis win-in-sight closes a Max node as
Victory, a defender escape closes a Min node as Bad.

TSS gives the defender a pseudo-turn that fills every defence square of the
strongest attack the threat created, recursing on newly created threats
only.  A trigger registry over the standing degree-3 blocks detects two
threats sharing a trigger; such a candidate combination is only accepted
after a replay of the move sequence under real alternating play in which
the defender never gains a five, double-four or crossed-four potential.
Wins proved under the defender's multi-stone handicap hold in the real
game, so TSS is sound but deliberately conservative.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .analysis import Verdict, _alive_blocks, analyze_board
from .board import Board
from .core import BLACK, DIRECTIONS, opponent
from .evaluate import ScoreTable, _square_scores
from .lines import CENTER, LineClass
from .search import SearchLimits

_S4 = int(LineClass.SIMPLE_FOUR)
_S5 = int(LineClass.SIMPLE_FIVE)
_D4 = int(LineClass.DOUBLE_FOUR)
_A2S = (int(LineClass.DOUBLE_THREE), int(LineClass.WEAK_THREE))


class ThreatSet(str, Enum):
    FOURS = "fours"
    FOURS_AND_THREES = "fours+threes"

    @property
    def includes_threes(self) -> bool:
        return self is ThreatSet.FOURS_AND_THREES


_VICTORY = 1
_BAD = 0
_UNKNOWN = -1

_ORDER_TABLE = ScoreTable()


@dataclass
class SolveStats:
    nodes: int = 0
    candidates_tried: int = 0
    candidates_confirmed: int = 0


@dataclass
class TernaryVerdict:
    status: str  # "victory" | "bad"
    line: tuple[int, ...] = ()
    unknown: bool = False  # Bad by exhausted budget, not a proof
    stats: SolveStats = field(default_factory=SolveStats)

    @property
    def is_victory(self) -> bool:
        return self.status == "victory"

    def to_json(self, board: Board | None = None) -> dict:
        return {
            "status": self.status,
            "line": [list(board.rc(sq)) if board else sq for sq in self.line],
            "unknown": self.unknown,
            "nodes": self.stats.nodes,
        }


class _Budget(Exception):
    pass


def _threat_keys(board: Board, x: int, ts: ThreatSet) -> dict[int, bool]:
    """square -> is_four for every threat move available to x."""
    squares = board.candidate_squares()
    if squares.size == 0:
        return {}
    flat = board.codes.reshape(-1, 4)[squares]
    table = board.table
    cls = table.classes[flat if x == BLACK else table.swap[flat]].astype(np.int16)
    fours = (cls == _S4).any(axis=1)
    out = {int(sq): True for sq in squares[fours]}
    if ts.includes_threes:
        threes = np.isin(cls, _A2S).any(axis=1) & ~fours
        for sq in squares[threes]:
            out.setdefault(int(sq), False)
    return out


def _ordered_threats(
    board: Board, x: int, ts: ThreatSet, allowed: tuple[int, ...] | None = None
) -> list[int]:
    """Threat moves, fours first, then by both-colour ordering score.

    When the mover is analysis-forced, only forced threat moves survive:
    anything else loses to the defender's faster attack within two plies."""
    keys = _threat_keys(board, x, ts)
    if allowed is not None:
        keys = {sq: f for sq, f in keys.items() if sq in set(allowed)}
    if not keys:
        return []
    t = _ORDER_TABLE
    squares, sb, sw, _ = _square_scores(board, t.order_line, t.order_cross)
    score = {int(s): int(sb[i] + sw[i]) for i, s in enumerate(squares)}
    return sorted(keys, key=lambda sq: (not keys[sq], -score.get(sq, 0), sq))


def _created_defence(board: Board, square: int, x: int) -> list[int]:
    """Defence squares of the strongest attack created by playing `square`.

    Read from the square's line codes (unchanged by its own stone): a
    four-maker leaves one blocking square, a three-maker two or three."""
    r, c = board.rc(square)
    table = board.table
    four_dirs, a2_dirs = [], []
    for d in range(4):
        code = int(board.codes[r, c, d])
        if x != BLACK:
            code = int(table.swap[code])
        cls = int(table.classes[code])
        if cls == _S4:
            four_dirs.append((d, code))
        elif cls in _A2S:
            a2_dirs.append((d, code))
    d, code = (four_dirs or a2_dirs)[0]
    dr, dc = DIRECTIONS[d]
    return [
        board.index(r + (off - CENTER) * dr, c + (off - CENTER) * dc)
        for off in table.defence_offsets(code)
    ]


def _first_candidate(board: Board) -> int:
    squares = board.candidate_squares()
    return int(squares[0]) if squares.size else int(np.flatnonzero(board.grid.reshape(-1) == 0)[0])


def replay_defence_policy(board: Board) -> int:
    """Deterministic defender move: first forced square, else first candidate."""
    report = analyze_board(board)
    if report.verdict == Verdict.FORCED:
        return report.moves[0]
    if report.verdict == Verdict.WIN_IN_SIGHT:
        return report.moves[0]
    return _first_candidate(board)


# --- binary minimax -----------------------------------------------------------------


class _BmmSolver:
    def __init__(self, board: Board, ts: ThreatSet, limits: SearchLimits):
        self.board = board
        self.x = board.to_move
        self.ts = ts
        self.max_plies = limits.max_depth * 2 if limits.max_depth > 0 else 64
        self.node_budget = limits.node_budget or 200_000
        self.stats = SolveStats()
        self.cache: dict[int, tuple[int, tuple[int, ...]]] = {}

    def _tick(self) -> None:
        self.stats.nodes += 1
        if self.stats.nodes > self.node_budget:
            raise _Budget

    def max_node(self, ply: int) -> tuple[int, tuple[int, ...]]:
        self._tick()
        board = self.board
        if board.winner is not None:
            return (_VICTORY, ()) if board.winner == self.x else (_BAD, ())
        cached = self.cache.get(board.hash)
        if cached is not None:
            return cached
        report = analyze_board(board)
        if report.verdict == Verdict.WIN_IN_SIGHT:
            return self._remember(_VICTORY, ())
        if report.verdict == Verdict.LOSS_CERTAIN:
            return self._remember(_BAD, ())
        allowed = report.moves if report.verdict == Verdict.FORCED else None
        threats = _ordered_threats(board, self.x, self.ts, allowed)
        if not threats:
            return self._remember(_BAD, ())
        if ply >= self.max_plies:
            return _UNKNOWN, ()
        saw_unknown = False
        for move in threats:
            board.make(move)
            status, line = self.min_node(ply + 1)
            board.unmake()
            if status == _VICTORY:
                return self._remember(_VICTORY, (move, *line))
            if status == _UNKNOWN:
                saw_unknown = True
        if saw_unknown:
            return _UNKNOWN, ()
        return self._remember(_BAD, ())

    def _remember(self, status: int, line: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
        self.cache[self.board.hash] = (status, line)
        return status, line

    def min_node(self, ply: int) -> tuple[int, tuple[int, ...]]:
        self._tick()
        board = self.board
        if board.winner is not None:
            return (_VICTORY, ()) if board.winner == self.x else (_BAD, ())
        cached = self.cache.get(board.hash)
        if cached is not None:
            return cached
        report = analyze_board(board)
        if report.verdict == Verdict.WIN_IN_SIGHT:
            return self._remember(_BAD, ())  # the defender wins first
        if report.verdict == Verdict.LOSS_CERTAIN:
            return self._remember(_VICTORY, ())
        if report.verdict == Verdict.OPEN:
            return _BAD, ()  # the threat did not bind; conservative
        saw_unknown = False
        guided_line: tuple[int, ...] = ()
        for i, move in enumerate(report.moves):
            board.make(move)
            status, line = self.max_node(ply + 1)
            board.unmake()
            if status == _BAD:
                return self._remember(_BAD, ())
            if status == _UNKNOWN:
                saw_unknown = True
            elif i == 0:
                guided_line = (move, *line)
        if saw_unknown:
            return _UNKNOWN, ()
        return self._remember(_VICTORY, guided_line)


def bmm_solve(board: Board, ts: ThreatSet = ThreatSet.FOURS, limits: SearchLimits | None = None) -> TernaryVerdict:
    limits = limits or SearchLimits(max_depth=16)
    solver = _BmmSolver(board.clone(), ts, limits)
    try:
        status, line = solver.max_node(0)
    except _Budget:
        return TernaryVerdict("bad", unknown=True, stats=solver.stats)
    if status == _VICTORY:
        return TernaryVerdict("victory", line, stats=solver.stats)
    return TernaryVerdict("bad", unknown=status == _UNKNOWN, stats=solver.stats)


# --- threat space search ----------------------------------------------------------------


class _TssSolver:
    def __init__(self, board: Board, ts: ThreatSet, limits: SearchLimits):
        self.root = board
        self.board = board.clone()
        self.x = board.to_move
        self.y = opponent(self.x)
        self.ts = ts
        self.max_moves = limits.max_depth if limits.max_depth > 0 else 24
        self.node_budget = limits.node_budget or 100_000
        self.stats = SolveStats()

    def _tick(self) -> None:
        self.stats.nodes += 1
        if self.stats.nodes > self.node_budget:
            raise _Budget

    def solve(self) -> TernaryVerdict:
        try:
            line = self.node(_threat_keys(self.board, self.x, self.ts), (), 0)
        except _Budget:
            return TernaryVerdict("bad", unknown=True, stats=self.stats)
        if line is not None:
            return TernaryVerdict("victory", line, stats=self.stats)
        return TernaryVerdict("bad", stats=self.stats)

    def node(self, threat_keys: dict[int, bool], path: tuple[int, ...], n_moves: int):
        """Returns a confirmed real-play winning line, or None."""
        self._tick()
        board = self.board
        if board.winner is not None:
            return None  # a pseudo-fill completed a defender five
        report = analyze_board(board, mover=self.x)
        if report.verdict == Verdict.WIN_IN_SIGHT:
            return self._confirm(path, report.moves)
        if report.verdict in (Verdict.LOSS_CERTAIN, Verdict.FORCED):
            return None
        for trigger in self._registry_collisions():
            line = self._confirm(path, (trigger,))
            if line is not None:
                return line
        if n_moves >= self.max_moves:
            return None
        parent_keys = threat_keys
        current = _threat_keys(board, self.x, self.ts)
        ordered = _ordered_threats(board, self.x, self.ts)
        fresh = [
            sq
            for sq in ordered
            if parent_keys.get(sq) != current[sq] or not path
        ]
        for move in fresh:
            defence = _created_defence(board, move, self.x)
            tokens = [board.place_stone(move, self.x)]
            for d in defence:
                if board.stone_at(d) == 0:
                    tokens.append(board.place_stone(d, self.y))
            line = self.node(current, path + (move,), n_moves + 1)
            for t in reversed(tokens):
                board.remove_stone(t)
            if line is not None:
                return line
        return None

    def _registry_collisions(self) -> list[int]:
        """Triggers shared by two standing threats with disjoint defences."""
        registry: dict[int, set[int]] = {}
        for _, empties in _alive_blocks(self.board, self.x, 3):
            if len(empties) != 2:
                continue
            a, b = empties
            registry.setdefault(a, set()).add(b)
            registry.setdefault(b, set()).add(a)
        return sorted(t for t, partners in registry.items() if len(partners) >= 2)

    def _confirm(self, path: tuple[int, ...], winners: tuple[int, ...]):
        """Replay the candidate in real alternating play; the defender follows
        the forced analysis and any defender five/double-four aborts."""
        self.stats.candidates_tried += 1
        board = self.root.clone()
        line: list[int] = []

        def x_move(sq: int) -> bool:
            if board.stone_at(sq) != 0:
                return False
            board.make(sq)
            line.append(sq)
            return True

        plan = list(path) + [w for w in winners[:1]]
        for sq in plan:
            if board.winner == self.x:
                break
            if not x_move(sq):
                return None
            if board.winner == self.x:
                break
            if self._defender_breaks_through(board):
                return None
            reply = replay_defence_policy(board)
            board.make(reply)
            line.append(reply)
            if board.winner is not None:
                return None
        for _ in range(16):
            if board.winner == self.x:
                self.stats.candidates_confirmed += 1
                return tuple(line)
            if board.winner is not None or board.full:
                return None
            report = analyze_board(board)
            if report.verdict not in (Verdict.WIN_IN_SIGHT, Verdict.FORCED):
                return None
            if not x_move(report.moves[0]):
                return None
            if board.winner == self.x:
                continue
            if self._defender_breaks_through(board):
                return None
            reply = replay_defence_policy(board)
            board.make(reply)
            line.append(reply)
            if board.winner is not None:
                return None
        return None

    def _defender_breaks_through(self, board: Board) -> bool:
        """True when the defender holds any five, double-four or crossed-four
        potential, which would outrun the attacker's sequence."""
        squares = board.candidate_squares()
        if squares.size == 0:
            return False
        flat = board.codes.reshape(-1, 4)[squares]
        table = board.table
        cls = table.classes[
            flat if self.y == BLACK else table.swap[flat]
        ].astype(np.int16)
        if (cls == _S5).any() or (cls == _D4).any():
            return True
        return bool(((cls == _S4).sum(axis=1) >= 2).any())


def tss_solve(board: Board, ts: ThreatSet = ThreatSet.FOURS, limits: SearchLimits | None = None) -> TernaryVerdict:
    limits = limits or SearchLimits(max_depth=12)
    return _TssSolver(board, ts, limits).solve()


def replay_victory(board: Board, verdict: TernaryVerdict, max_plies: int = 60) -> bool:
    """Soundness check: replay a victory under real alternating play with the
    analysis-guided defender; the proof line's attacker moves are followed,
    then the analysis finishes the win.  True iff the attacker fives."""
    if not verdict.is_victory:
        return False
    x = board.to_move
    b = board.clone()
    x_moves = [sq for i, sq in enumerate(verdict.line) if i % 2 == 0]
    i = 0
    for _ in range(max_plies):
        if b.winner == x:
            return True
        if b.winner is not None or b.full:
            return False
        report = analyze_board(b)
        if report.verdict == Verdict.WIN_IN_SIGHT:
            b.make(report.moves[0])
        elif i < len(x_moves) and b.stone_at(x_moves[i]) == 0:
            b.make(x_moves[i])
            i += 1
        elif report.verdict == Verdict.FORCED:
            b.make(report.moves[0])
        else:
            return False
        if b.winner == x:
            return True
        if b.winner is not None:
            return False
        b.make(replay_defence_policy(b))
    return b.winner == x
