"""JSON/HTTP bridge for the browser interface.

Endpoints (all responses carry schema_version):
  POST   /game               create (optional rows/cols/moves replay)
  GET    /game/{id}          state
  POST   /game/{id}/move     human move; engine replies synchronously
  POST   /game/{id}/analyze  verdict plus top-B scored candidate moves
  POST   /game/{id}/solve    endgame verdict with proof line
  DELETE /game/{id}

Unknown ids are 404, illegal moves 409, a busy engine 429.  Games are
serialized per id; distinct games run independently.
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import replace
from pathlib import Path

from fastapi import FastAPI, HTTPException
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, Field

from .analysis import Verdict, analyze_board
from .board import Board
from .config import EngineConfig
from .core import IllegalMoveError, QuintetError, STONE_CHARS
from .endgame import ThreatSet, bmm_solve, tss_solve
from .engine import Engine
from .evaluate import _square_scores

SCHEMA_VERSION = 1


class NewGame(BaseModel):
    rows: int = 15
    cols: int = 15
    moves: list[list[int]] = Field(default_factory=list)  # [row, col] replay


class HumanMove(BaseModel):
    row: int
    col: int


class SolveRequest(BaseModel):
    solver: str = "bmm"
    threats: str = "fours"


class GameSlot:
    def __init__(self, engine: Engine):
        self.engine = engine
        self.lock = threading.Lock()


def board_state(board: Board) -> dict:
    return {
        "rows": board.nrows,
        "cols": board.ncols,
        "grid": [
            "".join(STONE_CHARS[int(v)] if v else "." for v in board.grid[r])
            for r in range(board.nrows)
        ],
        "to_move": STONE_CHARS[board.to_move],
        "move_count": board.move_count,
        "winner": STONE_CHARS[board.winner] if board.winner else None,
        "draw": board.full and board.winner is None,
        "history": [list(board.rc(sq)) for sq, _c, *_ in board.history],
    }


def create_app(config: EngineConfig | None = None, static_dir: str | Path | None = None) -> FastAPI:
    config = config or EngineConfig()
    app = FastAPI(title="quintet bridge")
    games: dict[int, GameSlot] = {}
    ids = itertools.count(1)

    def get_slot(game_id: int) -> GameSlot:
        slot = games.get(game_id)
        if slot is None:
            raise HTTPException(404, detail=f"unknown game {game_id}")
        return slot

    def respond(game_id: int, engine: Engine, **extra) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "id": game_id,
            "state": board_state(engine.board),
            **extra,
        }

    def locked(slot: GameSlot):
        if not slot.lock.acquire(blocking=False):
            raise HTTPException(429, detail="engine busy")
        return slot.lock

    @app.post("/game")
    def create_game(req: NewGame):
        cfg = replace(config, rows=req.rows, cols=req.cols)
        engine = Engine(cfg)
        for row, col in req.moves:
            try:
                engine.play(engine.board.index(row, col))
            except QuintetError as exc:
                raise HTTPException(409, detail=str(exc))
        game_id = next(ids)
        games[game_id] = GameSlot(engine)
        return respond(game_id, engine)

    @app.get("/game/{game_id}")
    def get_game(game_id: int):
        slot = get_slot(game_id)
        return respond(game_id, slot.engine)

    @app.post("/game/{game_id}/move")
    def play_move(game_id: int, req: HumanMove):
        slot = get_slot(game_id)
        lock = locked(slot)
        try:
            engine = slot.engine
            board = engine.board
            if not board.in_bounds(req.row, req.col):
                raise HTTPException(409, detail="square off board")
            try:
                engine.play(board.index(req.row, req.col))
            except IllegalMoveError as exc:
                raise HTTPException(409, detail=str(exc))
            if engine.game_over:
                return respond(game_id, engine, engine_move=None, analysis=None, search=None)
            reply = engine.choose_move()
            engine.play(reply.move)
            analysis = None
            if not engine.game_over:
                analysis = analyze_board(engine.board).to_json(engine.board)
            return respond(
                game_id,
                engine,
                engine_move=list(board.rc(reply.move)),
                analysis=analysis,
                search=reply.search.to_json(board) if reply.search else None,
            )
        finally:
            lock.release()

    @app.post("/game/{game_id}/analyze")
    def analyze(game_id: int):
        slot = get_slot(game_id)
        lock = locked(slot)
        try:
            engine = slot.engine
            board = engine.board
            if engine.game_over:
                raise HTTPException(409, detail="game is over")
            report = analyze_board(board)
            candidates = []
            if report.verdict == Verdict.OPEN:
                squares, sb, sw, _ = _square_scores(
                    board, engine.scores.order_line, engine.scores.order_cross
                )
                scored = sorted(
                    ((int(sb[i] + sw[i]), int(sq)) for i, sq in enumerate(squares)),
                    key=lambda t: (-t[0], t[1]),
                )[: engine.config.branch]
                candidates = [
                    {"square": list(board.rc(sq)), "score": score}
                    for score, sq in scored
                ]
            return respond(
                game_id,
                engine,
                analysis=report.to_json(board),
                candidates=candidates,
            )
        finally:
            lock.release()

    @app.post("/game/{game_id}/solve")
    def solve(game_id: int, req: SolveRequest):
        slot = get_slot(game_id)
        lock = locked(slot)
        try:
            engine = slot.engine
            if engine.game_over:
                raise HTTPException(409, detail="game is over")
            if req.solver not in ("bmm", "tss"):
                raise HTTPException(409, detail=f"unknown solver {req.solver!r}")
            ts = ThreatSet.FOURS_AND_THREES if req.threats == "fours+threes" else ThreatSet.FOURS
            solve_fn = bmm_solve if req.solver == "bmm" else tss_solve
            verdict = solve_fn(engine.board, ts, engine.limits())
            return respond(game_id, engine, verdict=verdict.to_json(engine.board))
        finally:
            lock.release()

    @app.delete("/game/{game_id}")
    def delete_game(game_id: int):
        get_slot(game_id)
        del games[game_id]
        return {"schema_version": SCHEMA_VERSION, "id": game_id, "deleted": True}

    static = Path(static_dir) if static_dir else Path(__file__).parents[2] / "frontend" / "dist"
    if static.is_dir():
        app.mount("/", StaticFiles(directory=static, html=True), name="ui")
    return app


def run_http_bridge(port: int, config: EngineConfig | None = None):
    """Serve the bridge; returns only when the server stops."""
    import uvicorn

    app = create_app(config)
    uvicorn.run(app, host="127.0.0.1", port=port, log_level="warning")
