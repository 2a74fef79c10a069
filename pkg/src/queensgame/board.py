"""Board geometry, conflict rules, and occupancy bookkeeping.

Rows and columns are numbered 0..n-1 and a position is the pair (row, col).
Two queens conflict when they share a row, a column, a falling diagonal
(equal row+col), or a rising diagonal (equal row-col). Players alternate
placements and the last player able to place a queen wins.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import NamedTuple

MAX_N = 32
COMPACT_MAX_N = 16


class GameError(Exception):
    """Base class for errors raised by this package."""


class ContractError(GameError):
    """An operation was called outside its documented preconditions."""


class IllegalMoveError(GameError):
    """A placement conflicts with a queen already on the board.

    `constraint` is one of "row", "col", "falling", "rising" and
    `conflicting` is the queen that occupies that line. `transcript` is
    filled in by playout drivers so a failed game can be reconstructed.
    """

    def __init__(self, position, constraint, conflicting, transcript=None):
        self.position = Position(*position)
        self.constraint = constraint
        self.conflicting = Position(*conflicting)
        self.transcript = transcript
        super().__init__(
            f"illegal move {self.position}: shares {constraint} "
            f"with queen at {self.conflicting}"
        )


class Player(enum.IntEnum):
    ONE = 1
    TWO = 2

    @property
    def opponent(self) -> "Player":
        return Player.TWO if self is Player.ONE else Player.ONE


class Position(NamedTuple):
    row: int
    col: int

    def __str__(self) -> str:
        return f"({self.row},{self.col})"


@dataclass(frozen=True)
class Dims:
    """Board dimensions; side length n with 1 <= n <= 32."""

    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or not 1 <= self.n <= MAX_N:
            raise ContractError(f"board side must be an integer in 1..{MAX_N}, got {self.n!r}")

    @property
    def half(self) -> int:
        """Largest row index of the lower half-board: (n - 1) // 2."""
        return (self.n - 1) // 2

    def contains(self, p) -> bool:
        return 0 <= p[0] < self.n and 0 <= p[1] < self.n


def attacks(a, b) -> bool:
    """True iff queens at distinct cells a and b attack each other."""
    ar, ac = a
    br, bc = b
    if ar == br and ac == bc:
        raise ContractError("attacks() requires two distinct positions")
    return ar == br or ac == bc or ar + ac == br + bc or ar - ac == br - bc


def mirror(p, n: int) -> Position:
    """Half-turn image of p on an n-board: (n-1-row, n-1-col)."""
    return Position(n - 1 - p[0], n - 1 - p[1])


def canonical_first_moves(n) -> list[Position]:
    """First-move representatives of the empty board's 8-fold symmetry.

    All positions with col <= (n-1)//2 and row <= col, in row-major order.
    """
    if isinstance(n, Dims):
        n = n.n
    half = (Dims(n)).half
    return [Position(r, c) for r in range(half + 1) for c in range(r, half + 1)]


class Representation(enum.Enum):
    COMPACT = "compact"
    GENERAL = "general"


class CompactOccupancy:
    """The four attack masks packed one-per-machine-word (n <= 16 only)."""

    __slots__ = ("n", "rows", "cols", "falling", "rising")

    kind = Representation.COMPACT

    def __init__(self, n: int):
        if n > COMPACT_MAX_N:
            raise ContractError(
                f"compact occupancy supports n <= {COMPACT_MAX_N}, got {n}"
            )
        self.n = n
        self.rows = 0  # bit r
        self.cols = 0  # bit c
        self.falling = 0  # bit r+c
        self.rising = 0  # bit r-c+(n-1)

    def conflict(self, r: int, c: int) -> str | None:
        """Name of the first violated constraint at (r, c), or None if free."""
        if self.rows >> r & 1:
            return "row"
        if self.cols >> c & 1:
            return "col"
        if self.falling >> (r + c) & 1:
            return "falling"
        if self.rising >> (r - c + self.n - 1) & 1:
            return "rising"
        return None

    def is_free(self, r: int, c: int) -> bool:
        return self.conflict(r, c) is None

    def set_(self, r: int, c: int) -> None:
        self.rows |= 1 << r
        self.cols |= 1 << c
        self.falling |= 1 << (r + c)
        self.rising |= 1 << (r - c + self.n - 1)

    def clear(self, r: int, c: int) -> None:
        self.rows &= ~(1 << r)
        self.cols &= ~(1 << c)
        self.falling &= ~(1 << (r + c))
        self.rising &= ~(1 << (r - c + self.n - 1))

    def as_masks(self) -> tuple[int, int, int, int]:
        return (self.rows, self.cols, self.falling, self.rising)

    def bit_counts(self) -> tuple[int, int, int, int]:
        return tuple(m.bit_count() for m in self.as_masks())

    def __eq__(self, other):
        if not hasattr(other, "as_masks"):
            return NotImplemented
        return self.n == other.n and self.as_masks() == other.as_masks()

    def __hash__(self):
        return hash((self.n, self.as_masks()))


class GeneralOccupancy:
    """The four attack masks as per-line flag arrays (n <= 32)."""

    __slots__ = ("n", "_rows", "_cols", "_falling", "_rising")

    kind = Representation.GENERAL

    def __init__(self, n: int):
        self.n = n
        self._rows = bytearray(n)
        self._cols = bytearray(n)
        self._falling = bytearray(2 * n - 1)  # index r+c
        self._rising = bytearray(2 * n - 1)  # index r-c+(n-1)

    def conflict(self, r: int, c: int) -> str | None:
        if self._rows[r]:
            return "row"
        if self._cols[c]:
            return "col"
        if self._falling[r + c]:
            return "falling"
        if self._rising[r - c + self.n - 1]:
            return "rising"
        return None

    def is_free(self, r: int, c: int) -> bool:
        return self.conflict(r, c) is None

    def set_(self, r: int, c: int) -> None:
        self._rows[r] = 1
        self._cols[c] = 1
        self._falling[r + c] = 1
        self._rising[r - c + self.n - 1] = 1

    def clear(self, r: int, c: int) -> None:
        self._rows[r] = 0
        self._cols[c] = 0
        self._falling[r + c] = 0
        self._rising[r - c + self.n - 1] = 0

    @staticmethod
    def _to_mask(flags: bytearray) -> int:
        m = 0
        for i, v in enumerate(flags):
            if v:
                m |= 1 << i
        return m

    def as_masks(self) -> tuple[int, int, int, int]:
        return (
            self._to_mask(self._rows),
            self._to_mask(self._cols),
            self._to_mask(self._falling),
            self._to_mask(self._rising),
        )

    def bit_counts(self) -> tuple[int, int, int, int]:
        return (
            sum(self._rows),
            sum(self._cols),
            sum(self._falling),
            sum(self._rising),
        )

    def __eq__(self, other):
        if not hasattr(other, "as_masks"):
            return NotImplemented
        return self.n == other.n and self.as_masks() == other.as_masks()

    def __hash__(self):
        return hash((self.n, self.as_masks()))


def make_occupancy(representation: Representation, n: int):
    if representation is Representation.COMPACT:
        return CompactOccupancy(n)
    if representation is Representation.GENERAL:
        return GeneralOccupancy(n)
    raise ContractError(f"unknown representation {representation!r}")


class GameState:
    """Mutable game position: dimensions, move list, occupancy, symmetry flag.

    Moves at even indices (0-based) belong to player 1. `rotsym` is true while
    every player-2 move so far has been the half-turn image of the player-1
    move before it; it starts true on the empty board. A state is a plain
    value with no hidden sharing, but a single instance must not be mutated
    from two threads at once.
    """

    def __init__(self, n, representation: Representation | None = None):
        dims = n if isinstance(n, Dims) else Dims(n)
        if representation is None:
            representation = (
                Representation.COMPACT
                if dims.n <= COMPACT_MAX_N
                else Representation.GENERAL
            )
        self.dims = dims
        self.moves: list[Position] = []
        self.occupancy = make_occupancy(representation, dims.n)
        self.rotsym = True
        self._rotsym_stack: list[bool] = []

    @classmethod
    def from_moves(cls, n, moves, representation: Representation | None = None):
        state = cls(n, representation)
        for p in moves:
            state.place(p)
        return state

    @property
    def representation(self) -> Representation:
        return self.occupancy.kind

    @property
    def player_to_move(self) -> Player:
        return Player.ONE if len(self.moves) % 2 == 0 else Player.TWO

    @property
    def last_mover(self) -> Player | None:
        if not self.moves:
            return None
        return Player.ONE if (len(self.moves) - 1) % 2 == 0 else Player.TWO

    def _check_on_board(self, p) -> Position:
        p = Position(*p)
        if not self.dims.contains(p):
            raise ContractError(f"position {p} outside {self.dims.n}x{self.dims.n} board")
        return p

    def is_available(self, p) -> bool:
        """True iff no placed queen attacks p and p is unoccupied."""
        p = self._check_on_board(p)
        return self.occupancy.is_free(p.row, p.col)

    def _queen_on(self, constraint: str, p: Position) -> Position:
        for q in self.moves:
            if (
                (constraint == "row" and q.row == p.row)
                or (constraint == "col" and q.col == p.col)
                or (constraint == "falling" and q.row + q.col == p.row + p.col)
                or (constraint == "rising" and q.row - q.col == p.row - p.col)
            ):
                return q
        raise AssertionError(f"occupancy claims a {constraint} conflict but no queen matches")

    def place(self, p) -> None:
        """Append a queen at p; raises IllegalMoveError naming the conflict."""
        p = self._check_on_board(p)
        constraint = self.occupancy.conflict(p.row, p.col)
        if constraint is not None:
            raise IllegalMoveError(p, constraint, self._queen_on(constraint, p))
        self._rotsym_stack.append(self.rotsym)
        if len(self.moves) % 2 == 1:
            # player 2 moving: did it restore the half-turn symmetry?
            self.rotsym = self.rotsym and p == mirror(self.moves[-1], self.dims.n)
        self.occupancy.set_(p.row, p.col)
        self.moves.append(p)

    def unplace_last(self) -> Position:
        """Exact inverse of the last place(); returns the removed position."""
        if not self.moves:
            raise ContractError("unplace_last() on an empty move list")
        p = self.moves.pop()
        self.occupancy.clear(p.row, p.col)
        self.rotsym = self._rotsym_stack.pop()
        return p

    def available_positions(self) -> list[Position]:
        """All available cells in row-major order."""
        free = self.occupancy.is_free
        return [
            Position(r, c)
            for r in range(self.dims.n)
            for c in range(self.dims.n)
            if free(r, c)
        ]

    @property
    def finished(self) -> bool:
        free = self.occupancy.is_free
        n = self.dims.n
        return not any(free(r, c) for r in range(n) for c in range(n))

    def render(self) -> str:
        """Diagnostic text board: 'Q' queen, '*' unavailable, '.' available.

        Rows are printed top to bottom as 0..n-1, cells space-separated.
        """
        queens = set(self.moves)
        free = self.occupancy.is_free
        lines = []
        for r in range(self.dims.n):
            cells = []
            for c in range(self.dims.n):
                if Position(r, c) in queens:
                    cells.append("Q")
                elif free(r, c):
                    cells.append(".")
                else:
                    cells.append("*")
            lines.append(" ".join(cells))
        return "\n".join(lines)

    def copy(self) -> "GameState":
        clone = GameState(self.dims, self.representation)
        for p in self.moves:
            clone.place(p)
        return clone

    def __eq__(self, other):
        if not isinstance(other, GameState):
            return NotImplemented
        return (
            self.dims == other.dims
            and self.moves == other.moves
            and self.rotsym == other.rotsym
            and self.occupancy.as_masks() == other.occupancy.as_masks()
        )

    def __repr__(self):
        return (
            f"GameState(n={self.dims.n}, moves={[tuple(m) for m in self.moves]}, "
            f"rotsym={self.rotsym})"
        )
