"""Gomocup-style line protocol over text streams.

Commands: START <n>, BEGIN, TURN x,y, BOARD ... DONE, INFO <key> <value>,
ABOUT, END.  Replies are `x,y` with 0-based x=column, y=row; errors are
`ERROR <message>`.  Standard output carries only protocol lines; logging
goes to standard error.
"""

from __future__ import annotations

import sys
from dataclasses import replace

from . import __version__
from .board import Board
from .core import BLACK, IllegalMoveError, MIN_DIM, MAX_DIM, QuintetError, WHITE
from .config import EngineConfig
from .engine import Engine

ABOUT = (
    f'name="Quintet", version="{__version__}", '
    'author="quintet", country="n/a"'
)


class ProtocolSession:
    """One engine process speaking the protocol; at most one game at a time."""

    def __init__(self, config: EngineConfig, log=None):
        self.config = config
        self.engine: Engine | None = None
        self.log = log if log is not None else sys.stderr
        self.finished = False
        self._uploads: list[tuple[int, int]] | None = None
        self._warned_keys: set[str] = set()

    # --- helpers -------------------------------------------------------------

    def _fmt(self, square: int) -> str:
        row, col = self.engine.board.rc(square)
        return f"{col},{row}"

    def _parse_square(self, text: str) -> int:
        x, y = (int(part) for part in text.strip().split(","))
        board = self.engine.board
        if not board.in_bounds(y, x):
            raise IllegalMoveError(f"coordinates {x},{y} off board")
        return board.index(y, x)

    def _engine_move(self) -> str:
        reply = self.engine.choose_move()
        self.engine.play(reply.move)
        return self._fmt(reply.move)

    # --- command handling -------------------------------------------------------

    def handle(self, line: str) -> list[str]:
        line = line.strip()
        if not line:
            return []
        try:
            return self._dispatch(line)
        except (QuintetError, ValueError) as exc:
            return [f"ERROR {exc}"]

    def _dispatch(self, line: str) -> list[str]:
        parts = line.split(None, 1)
        cmd = parts[0].upper()
        rest = parts[1] if len(parts) > 1 else ""

        if self._uploads is not None and cmd != "DONE":
            x, y, who = (int(part) for part in line.split(","))
            board = self.engine.board
            if not board.in_bounds(y, x) or who not in (1, 2):
                self._uploads = None
                return [f"ERROR bad board line {line!r}"]
            self._uploads.append((board.index(y, x), who))
            return []

        if cmd == "START":
            n = int(rest)
            if not MIN_DIM <= n <= MAX_DIM:
                return [f"ERROR unsupported size {n}"]
            self.engine = Engine(replace(self.config, rows=n, cols=n))
            return ["OK"]
        if cmd == "INFO":
            return self._info(rest)
        if cmd == "ABOUT":
            return [ABOUT]
        if cmd == "END":
            self.finished = True
            return []
        if cmd not in ("BEGIN", "TURN", "BOARD", "DONE"):
            return [f"ERROR unknown command {cmd}"]
        if self.engine is None:
            return ["ERROR no game started"]
        if cmd == "BEGIN":
            return [self._engine_move()]
        if cmd == "TURN":
            square = self._parse_square(rest)
            self.engine.play(square)
            if self.engine.game_over:
                return ["ERROR game is over"]
            return [self._engine_move()]
        if cmd == "BOARD":
            self._uploads = []
            return []
        if cmd == "DONE":
            uploads, self._uploads = self._uploads, None
            if uploads is None:
                return ["ERROR DONE without BOARD"]
            return self._apply_upload(uploads)
        raise AssertionError("unreachable")

    def _info(self, rest: str) -> list[str]:
        key, _, value = rest.partition(" ")
        key = key.strip().lower()
        if key == "timeout_turn":
            self.config = replace(self.config, time_ms=int(value))
            if self.engine is not None:
                self.engine.config = replace(self.engine.config, time_ms=int(value))
        elif key in ("timeout_match", "max_memory", "time_left", "game_type", "rule", "folder"):
            pass  # accepted, irrelevant to play
        elif key not in self._warned_keys:
            self._warned_keys.add(key)
            print(f"quintet: ignoring INFO key {key!r}", file=self.log)
        return []

    def _apply_upload(self, uploads: list[tuple[int, int]]) -> list[str]:
        """Rebuild the position from 'x,y,field' lines (1=own, 2=opponent)."""
        own = [sq for sq, who in uploads if who == 1]
        opp = [sq for sq, who in uploads if who == 2]
        if len(own) == len(opp):
            own_color = BLACK  # the engine's side opens or mirrors
        elif len(opp) == len(own) + 1:
            own_color = WHITE
        else:
            return [f"ERROR unreachable position {len(own)} own / {len(opp)} opponent"]
        other = WHITE if own_color == BLACK else BLACK
        board = Board(self.engine.board.nrows, self.engine.board.ncols)
        board.setup(
            [(sq, own_color) for sq in own] + [(sq, other) for sq in opp],
            own_color,
        )
        self.engine.board = board
        return [self._engine_move()]

    # --- session loop ----------------------------------------------------------------

    def run(self, instream, outstream) -> int:
        for raw in instream:
            for reply in self.handle(raw):
                outstream.write(reply + "\n")
            try:
                outstream.flush()
            except AttributeError:
                pass
            if self.finished:
                break
        return 0


def run_protocol(instream=None, outstream=None, config: EngineConfig | None = None) -> int:
    session = ProtocolSession(config or EngineConfig())
    return session.run(instream or sys.stdin, outstream or sys.stdout)
