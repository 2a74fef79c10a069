"""Engine, solver, answer tables, and play service for the queens placing game."""

__version__ = "0.1.0"

from .board import (
    ContractError,
    Dims,
    GameError,
    GameState,
    IllegalMoveError,
    Player,
    Position,
    Representation,
    attacks,
    canonical_first_moves,
    mirror,
)
from .solver import (
    InconclusiveResultError,
    Outcome,
    ProgressSink,
    SearchCancelled,
    SearchOptions,
    SearchStats,
    oracle_solve,
    solve,
    winning_move,
    wins,
)
from .strategies import StrategyKind, format_transcript, next_move, playout

__all__ = [
    "ContractError",
    "Dims",
    "GameError",
    "GameState",
    "IllegalMoveError",
    "InconclusiveResultError",
    "Outcome",
    "Player",
    "Position",
    "ProgressSink",
    "Representation",
    "SearchCancelled",
    "SearchOptions",
    "SearchStats",
    "StrategyKind",
    "attacks",
    "canonical_first_moves",
    "format_transcript",
    "mirror",
    "next_move",
    "oracle_solve",
    "playout",
    "solve",
    "winning_move",
    "wins",
]
