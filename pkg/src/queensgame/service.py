"""HTTP/JSON service hosting live human-vs-engine games.

Sessions are in-memory with an idle expiry; each session serializes move
submissions (a second submit while one is in flight gets a turn error) while
snapshot reads see consistent states. The engine side is auto-selected:
center-then-mirror on odd boards as player 1, the inner-cell opening on the
4-board as player 1, perfect search otherwise. On boards of side 10 and up a
perfect-search move runs under a time budget and falls back to the first
available cell, flagged as heuristic play in the snapshot.
"""

from __future__ import annotations

import threading
import time
import uuid
from dataclasses import dataclass, field
from pathlib import Path

from fastapi import FastAPI, Response
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, Field

from .board import GameState, IllegalMoveError, Player, Position
from .solver import ProgressSink, SearchCancelled
from .strategies import StrategyKind, next_move

MAX_SERVICE_N = 16
BUDGETED_SEARCH_MIN_N = 10


class CreateGameRequest(BaseModel):
    n: int
    human: int = Field(description="1 or 2")


class MoveRequest(BaseModel):
    r: int
    c: int


@dataclass
class GameSession:
    id: str
    state: GameState
    human: Player
    engine_strategy: StrategyKind
    engine_play: str = "perfect"
    last_touch: float = field(default_factory=time.monotonic)
    state_lock: threading.Lock = field(default_factory=threading.Lock)
    submit_lock: threading.Lock = field(default_factory=threading.Lock)

    @property
    def engine(self) -> Player:
        return self.human.opponent


class _DeadlineSink(ProgressSink):
    def __init__(self, deadline: float):
        self.deadline = deadline

    def poll_cancel(self) -> bool:
        return time.monotonic() > self.deadline


def _select_strategy(n: int, engine: Player) -> StrategyKind:
    if engine is Player.ONE and n % 2 == 1:
        return StrategyKind.MIRROR_ODD
    if engine is Player.ONE and n == 4:
        return StrategyKind.INNER_FOUR
    return StrategyKind.PERFECT_SEARCH


def _snapshot(session: GameSession) -> dict:
    state = session.state
    n = state.dims.n
    available = state.available_positions()
    occupied = set(state.moves)
    available_set = set(available)
    attacked = [
        [r, c]
        for r in range(n)
        for c in range(n)
        if Position(r, c) not in occupied and Position(r, c) not in available_set
    ]
    finished = not available
    winner = state.last_mover if finished else None
    return {
        "id": session.id,
        "n": n,
        "human": int(session.human),
        "toMove": None if finished else int(state.player_to_move),
        "moves": [[p.row, p.col] for p in state.moves],
        "available": [[p.row, p.col] for p in available],
        "attacked": attacked,
        "status": "finished" if finished else "in_progress",
        "winner": None if winner is None else int(winner),
        "enginePlay": session.engine_play,
    }


def _error(status: int, payload: dict) -> JSONResponse:
    return JSONResponse(status_code=status, content={"detail": payload})


def create_app(
    *,
    engine_budget_seconds: float = 3.0,
    session_idle_seconds: float = 1800.0,
    max_n: int = MAX_SERVICE_N,
    static_dir: str | Path | None = None,
) -> FastAPI:
    app = FastAPI(title="queensgame play service")
    sessions: dict[str, GameSession] = {}
    registry_lock = threading.Lock()
    app.state.sessions = sessions

    def sweep_idle() -> None:
        cutoff = time.monotonic() - session_idle_seconds
        with registry_lock:
            stale = [sid for sid, s in sessions.items() if s.last_touch < cutoff]
            for sid in stale:
                del sessions[sid]

    def engine_move(session: GameSession) -> None:
        """Compute and apply one engine move; sets the play-mode flag."""
        state = session.state
        kind = session.engine_strategy
        play = "perfect"
        if kind is StrategyKind.PERFECT_SEARCH and state.dims.n >= BUDGETED_SEARCH_MIN_N:
            sink = _DeadlineSink(time.monotonic() + engine_budget_seconds)
            try:
                move = next_move(kind, state, sink=sink)
            except SearchCancelled:
                cells = state.available_positions()
                move = cells[0] if cells else None
                play = "heuristic"
        else:
            move = next_move(kind, state)
        if move is None:
            return
        assert state.is_available(move), "engine selected an unavailable cell"
        state.place(move)
        session.engine_play = play

    def check_engine_win_postcondition(session: GameSession) -> None:
        state = session.state
        if not state.available_positions() and state.dims.n % 2 == 1:
            if session.engine is Player.ONE and state.last_mover is not Player.ONE:
                raise AssertionError(
                    "engine lost an odd-board game as player 1; server bug"
                )

    @app.post("/api/games", status_code=201)
    def create_game(req: CreateGameRequest):
        sweep_idle()
        if not 1 <= req.n <= max_n:
            return _error(422, {"error": "board size out of service bounds",
                                "n": req.n, "max": max_n})
        if req.human not in (1, 2):
            return _error(422, {"error": "human side must be 1 or 2"})
        human = Player(req.human)
        session = GameSession(
            id=uuid.uuid4().hex,
            state=GameState(req.n),
            human=human,
            engine_strategy=_select_strategy(req.n, human.opponent),
        )
        with session.state_lock:
            if session.engine is Player.ONE:
                engine_move(session)
            check_engine_win_postcondition(session)
            snap = _snapshot(session)
        with registry_lock:
            sessions[session.id] = session
        return snap

    @app.get("/api/games/{game_id}")
    def get_game(game_id: str):
        sweep_idle()
        session = sessions.get(game_id)
        if session is None:
            return _error(404, {"error": "unknown game"})
        session.last_touch = time.monotonic()
        with session.state_lock:
            return _snapshot(session)

    @app.post("/api/games/{game_id}/moves")
    def submit_move(game_id: str, req: MoveRequest):
        sweep_idle()
        session = sessions.get(game_id)
        if session is None:
            return _error(404, {"error": "unknown game"})
        session.last_touch = time.monotonic()
        if not session.submit_lock.acquire(blocking=False):
            return _error(409, {"error": "not your turn", "reason": "a move is already in flight"})
        try:
            with session.state_lock:
                state = session.state
                if not state.available_positions():
                    return _error(409, {"error": "game finished"})
                if state.player_to_move is not session.human:
                    return _error(409, {"error": "not your turn"})
                if not (0 <= req.r < state.dims.n and 0 <= req.c < state.dims.n):
                    return _error(422, {"error": "position off the board"})
                try:
                    state.place(Position(req.r, req.c))
                except IllegalMoveError as err:
                    return _error(409, {
                        "error": "illegal move",
                        "constraint": err.constraint,
                        "conflicting": [err.conflicting.row, err.conflicting.col],
                    })
                if state.available_positions():
                    engine_move(session)
                check_engine_win_postcondition(session)
                return _snapshot(session)
        finally:
            session.submit_lock.release()

    @app.delete("/api/games/{game_id}", status_code=204)
    def delete_game(game_id: str):
        with registry_lock:
            sessions.pop(game_id, None)
        return Response(status_code=204)

    if static_dir is not None:
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="static")

    return app


def run_serve(
    host: str = "127.0.0.1",
    port: int = 8000,
    static_dir: str | None = None,
    engine_budget_seconds: float = 3.0,
) -> None:
    """Start the service; with port 0 the OS-assigned port is printed."""
    import socket

    import uvicorn

    app = create_app(
        engine_budget_seconds=engine_budget_seconds, static_dir=static_dir
    )
    sock = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    sock.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
    sock.bind((host, port))
    bound_port = sock.getsockname()[1]
    print(f"Serving on http://{host}:{bound_port}", flush=True)
    server = uvicorn.Server(uvicorn.Config(app, log_level="warning"))
    server.run(sockets=[sock])
