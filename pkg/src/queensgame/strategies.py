"""Move-selection policies.

Two provably winning first-player policies (center-then-mirror on odd
boards, the inner-cell opening on the 4-board), a table-backed second-player
policy, and a search-backed perfect-play policy usable by either side.
"""

from __future__ import annotations

import enum
from typing import Callable, Optional, TYPE_CHECKING

from .board import (
    ContractError,
    GameState,
    IllegalMoveError,
    Player,
    Position,
    mirror,
)
from .solver import ProgressSink, SearchOptions, wins

if TYPE_CHECKING:
    from .tables import AnswerTables

MoveSource = Callable[[GameState], Position]


class StrategyKind(enum.Enum):
    MIRROR_ODD = "mirror-odd"
    INNER_FOUR = "inner-four"
    TABLE_N16 = "table-n16"
    PERFECT_SEARCH = "perfect"


#: Side each strategy plays by construction.
STRATEGY_SIDE = {
    StrategyKind.MIRROR_ODD: Player.ONE,
    StrategyKind.INNER_FOUR: Player.ONE,
    StrategyKind.TABLE_N16: Player.TWO,
}

INNER_FOUR_OPENING = Position(1, 1)


def _check_mirror_reachable(state: GameState) -> None:
    n = state.dims.n
    center = Position(state.dims.half, state.dims.half)
    if state.moves and state.moves[0] != center:
        raise ContractError("mirror strategy states open at the center")
    for k in range(2, len(state.moves), 2):
        if state.moves[k] != mirror(state.moves[k - 1], n):
            raise ContractError(
                "mirror strategy states answer every reply with its half-turn image"
            )


def next_move(
    kind: StrategyKind,
    state: GameState,
    *,
    tables: Optional["AnswerTables"] = None,
    options: SearchOptions | None = None,
    sink: ProgressSink | None = None,
) -> Position | None:
    """The strategy's move in `state`, or None when no cell is available.

    It must be the strategy's side's turn; the proof-backed strategies also
    require a state reachable under their own play.
    """
    n = state.dims.n
    to_move = state.player_to_move

    if kind is StrategyKind.MIRROR_ODD:
        if n % 2 == 0:
            raise ContractError("mirror strategy requires an odd board side")
        if to_move is not Player.ONE:
            raise ContractError("mirror strategy plays player 1")
        _check_mirror_reachable(state)
        if not state.moves:
            return Position(state.dims.half, state.dims.half)
        return mirror(state.moves[-1], n)

    if kind is StrategyKind.INNER_FOUR:
        if n != 4:
            raise ContractError("inner-cell opening requires n = 4")
        if to_move is not Player.ONE:
            raise ContractError("inner-cell opening plays player 1")
        if not state.moves:
            return INNER_FOUR_OPENING
        if state.moves[0] != INNER_FOUR_OPENING or len(state.moves) != 2:
            raise ContractError("state not reachable under the inner-cell opening")
        remaining = state.available_positions()
        assert len(remaining) == 1, "inner-cell opening leaves exactly one reply cell"
        return remaining[0]

    if kind is StrategyKind.TABLE_N16:
        if n != 16:
            raise ContractError("table strategy requires n = 16")
        if tables is None or tables.n != 16:
            raise ContractError("table strategy requires loaded 16-board tables")
        if to_move is not Player.TWO:
            raise ContractError("table strategy plays player 2")
        k = len(state.moves)
        if k == 1:
            return tables.reply_round1(state.moves[0])
        if k == 3:
            return tables.reply_round2(state.moves[0], state.moves[2])
        return next_move(
            StrategyKind.PERFECT_SEARCH, state, options=options, sink=sink
        )

    if kind is StrategyKind.PERFECT_SEARCH:
        cells = state.available_positions()
        if not cells:
            return None
        opts = options if options is not None else SearchOptions()
        for p in cells:
            state.place(p)
            try:
                opponent_wins = wins(state, opts, sink=sink)
            finally:
                state.unplace_last()
            if not opponent_wins:
                return p
        return cells[0]

    raise ContractError(f"unknown strategy {kind!r}")


def random_mover(rng) -> MoveSource:
    """Adversary choosing uniformly among available cells."""

    def mover(state: GameState) -> Position:
        cells = state.available_positions()
        return rng.choice(cells)

    return mover


def perfect_mover(
    options: SearchOptions | None = None, sink: ProgressSink | None = None
) -> MoveSource:
    """Adversary playing perfect-search moves."""

    def mover(state: GameState) -> Position:
        return next_move(
            StrategyKind.PERFECT_SEARCH, state, options=options, sink=sink
        )

    return mover


def playout(
    kind: StrategyKind,
    adversary: MoveSource,
    n: int,
    *,
    tables: Optional["AnswerTables"] = None,
    options: SearchOptions | None = None,
) -> tuple[Player, list[Position]]:
    """Play one full game of strategy vs adversary; returns (winner, moves).

    The strategy plays its natural side (player 2 for the table strategy,
    player 1 otherwise); the winner is whoever moved last. An illegal
    adversary move raises IllegalMoveError carrying the transcript so far.
    """
    state = GameState(n)
    strategy_side = STRATEGY_SIDE.get(kind, Player.ONE)
    transcript: list[Position] = []
    while True:
        if state.finished:
            break
        if state.player_to_move is strategy_side:
            p = next_move(kind, state, tables=tables, options=options)
            state.place(p)
        else:
            p = Position(*adversary(state))
            try:
                state.place(p)
            except IllegalMoveError as err:
                err.transcript = list(transcript)
                raise
        transcript.append(p)
    assert transcript, "a non-empty board always allows the first move"
    winner = Player.ONE if (len(transcript) - 1) % 2 == 0 else Player.TWO
    return winner, transcript


def format_transcript(moves) -> str:
    """One move per line as "k: (r,c)" with 1-based move numbers."""
    return "\n".join(f"{i + 1}: ({p[0]},{p[1]})" for i, p in enumerate(moves))
