"""Exhaustive win/loss search for the queens placing game.

The core routine is a boolean backtracking search: the player to move wins
iff some available cell leads to a position the opponent loses. Each of the
speedups is individually switchable:

* half-board restriction for player 1 while the position is half-turn
  symmetric (a move and its half-turn image are then equivalent);
* a per-invocation forbidden set: when a candidate move is refuted by a
  specific winning reply, that reply is skipped as a later candidate of the
  same player, since the two placement orders commute;
* reply-row rotation: candidate rows are scanned starting just below the
  opponent's last row (wrapping), except for the second move of a game;
* first-move canonicalization on the empty board (col <= (n-1)//2, row <= col).

Restrictions that can hide wins (forced inner start for small even boards,
the center-then-mirror mode for odd boards, table-forced replies) are
tracked per side so `solve` can refuse to report a result they may have
falsified.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Optional, TYPE_CHECKING

from .board import ContractError, GameError, GameState, Player, Position

if TYPE_CHECKING:
    from .tables import AnswerTables

# Poll the sink's cancel flag every this many calls.
_CANCEL_POLL_MASK = 0x3FFF


class SearchCancelled(GameError):
    """The sink requested cancellation; partial stats remain valid."""


class InconclusiveResultError(GameError):
    """A candidate restriction was active and may have hidden the reported winner."""


@dataclass
class SearchOptions:
    """Pruning switches and reporting knobs for the search."""

    use_rotsym_pruning: bool = True
    use_forbidden_pruning: bool = True
    use_first_move_canonicalization: bool = True
    force_inner_start_even_small: bool = True  # even n <= 8 only
    use_reply_row_rotation: bool = True
    odd_n_strategy_mode: bool = False
    progress_interval: int = 1_000_000
    tables: Optional["AnswerTables"] = None

    def __post_init__(self):
        if self.progress_interval < 1:
            raise ContractError("progress_interval must be >= 1")

    def fingerprint(self) -> dict:
        return {
            "rotsym_pruning": self.use_rotsym_pruning,
            "forbidden_pruning": self.use_forbidden_pruning,
            "first_move_canonicalization": self.use_first_move_canonicalization,
            "force_inner_start_even_small": self.force_inner_start_even_small,
            "reply_row_rotation": self.use_reply_row_rotation,
            "odd_n_strategy_mode": self.odd_n_strategy_mode,
            "progress_interval": self.progress_interval,
            "tables": None if self.tables is None else self.tables.n,
        }


class FirstMoveStat(NamedTuple):
    position: Position
    player2_wins: bool
    calls: int


@dataclass
class SearchStats:
    """Call counter and per-first-move breakdown.

    `calls` is a Python int and therefore exact at any magnitude; it cannot
    wrap the way a fixed-width counter would. `restricted` is true when any
    candidate restriction that can affect soundness was active; the two
    per-side flags say whose candidates were restricted.
    """

    calls: int = 0
    per_first_move: list[FirstMoveStat] = field(default_factory=list)
    restricted: bool = False
    restricted_player1: bool = False
    restricted_player2: bool = False


class Outcome(NamedTuple):
    winner: Player


class ProgressSink:
    """Search callbacks, invoked synchronously on the search thread.

    Implementations must be fast and must not mutate the search state.
    """

    def on_calls_milestone(self, total_calls: int) -> None:
        pass

    def on_first_move_result(self, position: Position, player2_wins: bool, calls: int) -> None:
        pass

    def on_third_move_enter(self, first: Position, third: Position) -> None:
        pass

    def on_third_move_exit(self, win_digit: int) -> None:
        pass

    def poll_cancel(self) -> bool:
        return False


_NULL_SINK = ProgressSink()


def winning_move(
    state: GameState,
    options: SearchOptions | None = None,
    stats: SearchStats | None = None,
    sink: ProgressSink | None = None,
) -> Position | None:
    """A winning move for the player to move in `state`, or None if they lose.

    The state is left unchanged. Increments stats.calls once per recursive
    invocation, the outermost one included.
    """
    opts = options if options is not None else SearchOptions()
    st = stats if stats is not None else SearchStats()
    sk = sink if sink is not None else _NULL_SINK

    n = state.dims.n
    nm1 = n - 1
    full = (1 << n) - 1
    half = state.dims.half

    rows = cols = fall = rise2 = 0
    moves: list[tuple[int, int]] = []
    for r, c in state.moves:
        rows |= 1 << r
        cols |= 1 << c
        fall |= 1 << (r + c)
        rise2 |= 1 << (c - r + nm1)  # rising diagonal keyed by col-row+(n-1)
        moves.append((r, c))
    k0 = len(moves)
    if k0:
        prev_r, prev_c = moves[-1]
    else:
        prev_r = prev_c = -1

    use_rotsym = opts.use_rotsym_pruning
    use_forbidden = opts.use_forbidden_pruning
    use_rotation = opts.use_reply_row_rotation
    use_canon = opts.use_first_move_canonicalization
    inner_start = opts.force_inner_start_even_small and n % 2 == 0 and n <= 8
    strategy_mode = opts.odd_n_strategy_mode and n % 2 == 1
    tables = opts.tables
    if tables is not None and tables.n != n:
        tables = None

    if strategy_mode:
        st.restricted_player1 = True
    if inner_start and k0 == 0:
        st.restricted_player1 = True
    if tables is not None and k0 <= 3:
        st.restricted_player2 = True
    st.restricted = st.restricted_player1 or st.restricted_player2

    interval = opts.progress_interval
    milestone = sk.on_calls_milestone
    poll = sk.poll_cancel
    third_enter = sk.on_third_move_enter
    third_exit = sk.on_third_move_exit

    rotated = tuple(
        tuple(range(pr + 1, n)) + tuple(range(0, pr + 1)) for pr in range(n)
    )
    all_rows = tuple(range(n))
    canonical = tuple(
        (r, c) for r in range(half + 1) for c in range(r, half + 1)
    )

    calls = st.calls

    def rec(rows, cols, fall, rise2, prev_r, prev_c, rotsym, k):
        nonlocal calls
        calls += 1
        if calls % interval == 0:
            st.calls = calls
            milestone(calls)
            if poll():
                raise SearchCancelled()
        elif not calls & _CANCEL_POLL_MASK and poll():
            raise SearchCancelled()
        assert k <= n, "more moves than rows"
        player1 = not k & 1

        if k == 0:
            if inner_start or (player1 and strategy_mode):
                cands = ((half, half),)
            elif use_canon:
                cands = canonical
            elif use_rotsym:
                cands = tuple((r, c) for r in range(half + 1) for c in range(n))
            else:
                cands = tuple((r, c) for r in range(n) for c in range(n))
            for r, c in cands:
                before = calls
                moves.append((r, c))
                try:
                    sub = rec(
                        rows | 1 << r,
                        cols | 1 << c,
                        fall | 1 << (r + c),
                        rise2 | 1 << (c - r + nm1),
                        r,
                        c,
                        rotsym,
                        1,
                    )
                finally:
                    moves.pop()
                p2_wins = sub is not None
                delta = calls - before
                st.per_first_move.append(FirstMoveStat(Position(r, c), p2_wins, delta))
                sk.on_first_move_result(Position(r, c), p2_wins, delta)
                if not p2_wins:
                    return (r, c)
            return None

        # Single forced candidate: strategy move for player 1, table reply
        # for player 2's first two answers.
        single = None
        if player1 and strategy_mode:
            single = (nm1 - prev_r, nm1 - prev_c)
        elif not player1 and tables is not None and (k == 1 or k == 3):
            if k == 1:
                rep = tables.reply_round1(Position(prev_r, prev_c))
            else:
                rep = tables.reply_round2(Position(*moves[0]), Position(prev_r, prev_c))
            single = (rep[0], rep[1])
        if single is not None:
            r, c = single
            if (
                r < n
                and c < n
                and not (
                    rows >> r & 1
                    or cols >> c & 1
                    or fall >> (r + c) & 1
                    or rise2 >> (c - r + nm1) & 1
                )
            ):
                rotsym2 = rotsym if player1 else (
                    rotsym and r == nm1 - prev_r and c == nm1 - prev_c
                )
                third = k == 2
                if third:
                    third_enter(Position(*moves[0]), Position(r, c))
                moves.append((r, c))
                try:
                    sub = rec(
                        rows | 1 << r,
                        cols | 1 << c,
                        fall | 1 << (r + c),
                        rise2 | 1 << (c - r + nm1),
                        r,
                        c,
                        rotsym2,
                        k + 1,
                    )
                finally:
                    moves.pop()
                if third:
                    third_exit(1 if sub is not None else 0)
                if sub is None:
                    return (r, c)
            return None

        if k == 1 or not use_rotation:
            rseq = all_rows
        else:
            rseq = rotated[prev_r]
        restrict = use_rotsym and player1 and rotsym
        forbidden = 0
        for r in rseq:
            if restrict and r > half:
                continue
            rb = 1 << r
            if rows & rb:
                continue
            m = ~(cols | (fall >> r) | (rise2 >> (nm1 - r))) & full
            while m:
                b = m & -m
                m ^= b
                c = b.bit_length() - 1
                if forbidden and forbidden >> (r * n + c) & 1:
                    continue
                if player1:
                    rotsym2 = rotsym
                else:
                    rotsym2 = rotsym and r == nm1 - prev_r and c == nm1 - prev_c
                third = k == 2
                if third:
                    third_enter(Position(*moves[0]), Position(r, c))
                moves.append((r, c))
                try:
                    sub = rec(
                        rows | rb,
                        cols | 1 << c,
                        fall | 1 << (r + c),
                        rise2 | 1 << (c - r + nm1),
                        r,
                        c,
                        rotsym2,
                        k + 1,
                    )
                finally:
                    moves.pop()
                if third:
                    third_exit(1 if sub is not None else 0)
                if sub is None:
                    return (r, c)
                if use_forbidden:
                    forbidden |= 1 << (sub[0] * n + sub[1])
        return None

    try:
        result = rec(rows, cols, fall, rise2, prev_r, prev_c, state.rotsym, k0)
    finally:
        st.calls = calls
    return None if result is None else Position(*result)


def wins(
    state: GameState,
    options: SearchOptions | None = None,
    stats: SearchStats | None = None,
    sink: ProgressSink | None = None,
) -> bool:
    """True iff the player to move in `state` wins with best play."""
    return winning_move(state, options, stats, sink) is not None


def solve(
    n: int,
    options: SearchOptions | None = None,
    sink: ProgressSink | None = None,
) -> tuple[Outcome, SearchStats]:
    """Who wins the game on an empty n-board, with fresh stats.

    Raises InconclusiveResultError when an active candidate restriction may
    have hidden a win for the side that would otherwise be reported as the
    loser: restrictions on player 1's moves (forced inner start, the odd-n
    strategy mode) taint a player-2 result, and table-forced player-2
    replies taint a player-1 result.
    """
    opts = options if options is not None else SearchOptions()
    state = GameState(n)
    stats = SearchStats()
    move = winning_move(state, opts, stats, sink)
    if move is not None:
        if stats.restricted_player2:
            raise InconclusiveResultError(
                "player 2's replies were table-forced; the player-1 win may be "
                "an artifact of a bad table entry"
            )
        return Outcome(Player.ONE), stats
    if stats.restricted_player1:
        raise InconclusiveResultError(
            "player 1's candidate moves were restricted; a player-1 win may "
            "have been hidden"
        )
    return Outcome(Player.TWO), stats


def oracle_solve(n: int, *, size_guard: int = 8) -> Outcome:
    """Game-theoretic winner by plain unpruned search.

    Independent of the bit-mask machinery: legality is checked directly
    against the placed queens with the four conflict inequalities, cells are
    scanned in row-major order, and no symmetry, forbidden-set, ordering, or
    table shortcuts apply. Guarded to n <= size_guard (default 8) because the
    unpruned tree grows quickly.
    """
    if not 1 <= n <= size_guard:
        raise ContractError(f"oracle_solve() size guard: need 1 <= n <= {size_guard}")
    queens: list[tuple[int, int]] = []

    def mover_wins() -> bool:
        for r in range(n):
            for c in range(n):
                clear = True
                for qr, qc in queens:
                    if qr == r or qc == c or qr + qc == r + c or qr - qc == r - c:
                        clear = False
                        break
                if clear:
                    queens.append((r, c))
                    opponent_wins = mover_wins()
                    queens.pop()
                    if not opponent_wins:
                        return True
        return False

    return Outcome(Player.ONE if mover_wins() else Player.TWO)
