"""Answer tables: precomputed winning player-2 replies for the first two rounds.

Replies are nibble-encoded, one byte per entry: high nibble row, low nibble
column, 0xFF marking an invalid/unexpected entry. Table T maps each canonical
first move to a reply; grid A maps a first move to a 1-based index into the
list B of per-first-move reply grids for the third move (0 marks a first move
that is invalid by design, i.e. outside the canonical set).

Storage is the QPTABLES v1 text format:

    QPTABLES v1 n=<n>
    # comments allowed anywhere
    T
    <canonical-order entries, two-digit uppercase hex>
    A
    <n rows of n entries>
    B1 .. Bk
    <n rows of n entries each>
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import NamedTuple

from .board import (
    ContractError,
    GameError,
    GameState,
    Player,
    Position,
    attacks,
    canonical_first_moves,
    mirror,
)
from .solver import ProgressSink, SearchOptions, solve, winning_move

INVALID_BYTE = 0xFF


class TableError(GameError):
    """Base class for answer-table errors."""


class UnexpectedFirstMoveError(TableError):
    """Round-1 lookup hit an invalid entry for this first move."""


class UnexpectedThirdMoveError(TableError):
    """Round-2 lookup hit an invalid entry for this third move."""


class InvalidByDesignError(TableError):
    """Round-2 lookup addressed a first move the tables mark invalid."""


class TableFormatError(TableError):
    """A table file could not be parsed."""


def encode(p) -> int:
    """Pack a position with coordinates <= 15 into one byte.

    (15, 15) is unrepresentable: its packing collides with the invalid
    marker 0xFF, an inherent ambiguity of the nibble scheme.
    """
    r, c = p
    if not (0 <= r <= 15 and 0 <= c <= 15):
        raise ContractError(f"cannot nibble-encode {(r, c)}")
    if r == 15 and c == 15:
        raise ContractError("(15, 15) collides with the invalid marker 0xFF")
    return (r << 4) | c


def decode(byte: int) -> Position | None:
    """Unpack a reply byte; 0xFF decodes to None."""
    if not 0 <= byte <= 0xFF:
        raise ContractError(f"reply byte out of range: {byte}")
    if byte == INVALID_BYTE:
        return None
    return Position(byte >> 4, byte & 0xF)


class Violation(NamedTuple):
    table: str
    index: tuple
    rule: str

    def __str__(self) -> str:
        return f"{self.table}{self.index}: {self.rule}"


@dataclass
class AnswerTables:
    """Immutable after construction; safe for concurrent reads."""

    n: int
    t: dict[Position, int]
    a: list[list[int]]
    b: list[list[list[int]]]

    def reply_round1(self, first) -> Position:
        first = Position(*first)
        if first not in self.t:
            raise ContractError(f"first move {first} outside the canonical set")
        reply = decode(self.t[first])
        if reply is None:
            raise UnexpectedFirstMoveError(f"no tabulated reply to first move {first}")
        return reply

    def reply_round2(self, first, third) -> Position:
        first = Position(*first)
        third = Position(*third)
        idx = self.a[first.row][first.col]
        if idx == 0:
            raise InvalidByDesignError(
                f"first move {first} is invalid by design for round-2 lookup"
            )
        if not 1 <= idx <= len(self.b):
            raise TableError(f"A{tuple(first)} index {idx} has no sub-table")
        reply = decode(self.b[idx - 1][third.row][third.col])
        if reply is None:
            raise UnexpectedThirdMoveError(
                f"no tabulated reply to third move {third} after first move {first}"
            )
        return reply


def lookup_round1(tables: AnswerTables, first) -> Position:
    """Tabulated player-2 reply to a canonical first move."""
    return tables.reply_round1(first)


def lookup_round2(tables: AnswerTables, first, third) -> Position:
    """Tabulated player-2 reply to the third game move, given the first."""
    return tables.reply_round2(first, third)


def validate(tables: AnswerTables) -> list[Violation]:
    """All invariant violations in the tables; empty means valid."""
    out: list[Violation] = []
    n = tables.n
    if not 1 <= n <= 16:
        out.append(Violation("n", (n,), "board side must be 1..16 for nibble encoding"))
        return out
    canonical = canonical_first_moves(n)
    canonical_set = set(canonical)

    for key in tables.t:
        if key not in canonical_set:
            out.append(Violation("T", tuple(key), "key outside the canonical first-move set"))
    for key in canonical:
        if key not in tables.t:
            out.append(Violation("T", tuple(key), "canonical first move has no entry"))

    for key, byte in sorted(tables.t.items()):
        reply = decode(byte)
        if reply is None:
            continue
        if not (reply.row < n and reply.col < n):
            out.append(Violation("T", tuple(key), f"reply {reply} off the board"))
        elif reply == key or attacks(key, reply):
            out.append(Violation("T", tuple(key), f"reply {reply} conflicts with the first move"))

    if len(tables.a) != n or any(len(row) != n for row in tables.a):
        out.append(Violation("A", (), f"grid is not {n}x{n}"))
        return out
    for r in range(n):
        for c in range(n):
            idx = tables.a[r][c]
            pos = Position(r, c)
            if pos in canonical_set:
                if idx == 0:
                    out.append(Violation("A", (r, c), "canonical first move marked invalid"))
                elif not 1 <= idx <= len(tables.b):
                    out.append(Violation("A", (r, c), f"index {idx} out of range"))
            elif idx != 0:
                out.append(Violation("A", (r, c), "non-canonical first move has an index"))

    for i, sub in enumerate(tables.b):
        name = f"B{i + 1}"
        if len(sub) != n or any(len(row) != n for row in sub):
            out.append(Violation(name, (), f"grid is not {n}x{n}"))

    # Round-2 replies must be legal in the position (first, round-1 reply, third).
    for first in canonical:
        idx = tables.a[first.row][first.col] if first.row < n and first.col < n else 0
        if not 1 <= idx <= len(tables.b):
            continue
        sub = tables.b[idx - 1]
        if len(sub) != n or any(len(row) != n for row in sub):
            continue
        byte1 = tables.t.get(first, INVALID_BYTE)
        reply1 = decode(byte1)
        if reply1 is None or not (reply1.row < n and reply1.col < n):
            if any(e != INVALID_BYTE for row in sub for e in row):
                out.append(
                    Violation(f"B{idx}", tuple(first), "sub-table present but round-1 reply invalid")
                )
            continue
        placed = [first, reply1]
        for r2 in range(n):
            for c2 in range(n):
                byte2 = sub[r2][c2]
                if byte2 == INVALID_BYTE:
                    continue
                third = Position(r2, c2)
                if third in placed or any(attacks(third, q) for q in placed):
                    out.append(
                        Violation(f"B{idx}", (r2, c2), "entry present for an illegal third move")
                    )
                    continue
                reply2 = decode(byte2)
                if not (reply2.row < n and reply2.col < n):
                    out.append(Violation(f"B{idx}", (r2, c2), f"reply {reply2} off the board"))
                    continue
                group = placed + [third]
                if reply2 in group or any(attacks(reply2, q) for q in group):
                    out.append(
                        Violation(
                            f"B{idx}", (r2, c2), f"reply {reply2} conflicts with the three queens"
                        )
                    )
    return out


def _is_canonical(p: Position, half: int) -> bool:
    return p.col <= half and p.row <= p.col


def _winning_reply(
    state: GameState,
    first: Position,
    opts: SearchOptions,
    sink: ProgressSink | None,
) -> Position:
    """A winning player-2 reply to `first`, preferring the half-turn image.

    For first moves on the main diagonal the image is never legal (it shares
    the rising diagonal), so candidates inside the canonical region are tried
    first to keep the table compact under symmetry.
    """
    n = state.dims.n
    half = state.dims.half
    image = mirror(first, n)
    cells = state.available_positions()
    ordered: list[Position] = []
    if image in cells:
        ordered.append(image)
    if first.row == first.col:
        ordered.extend(p for p in cells if _is_canonical(p, half) and p not in ordered)
    ordered.extend(p for p in cells if p not in ordered)
    for reply in ordered:
        state.place(reply)
        try:
            refuted = winning_move(state, opts, sink=sink) is None
        finally:
            state.unplace_last()
        if refuted:
            return reply
    raise ContractError(f"no winning reply to first move {first}")


def generate_tables(
    n: int,
    options: SearchOptions | None = None,
    sink: ProgressSink | None = None,
    *,
    max_n: int = 12,
) -> AnswerTables:
    """Build answer tables for an even board size that player 2 wins.

    B sub-table indices are assigned 1..k in canonical first-move order. Every
    entry holds a reply verified winning by the search at generation time.
    """
    if n % 2 != 0:
        raise ContractError("answer tables target even board sizes")
    if n > max_n:
        raise ContractError(f"table generation guarded to n <= {max_n}")
    opts = options if options is not None else SearchOptions()
    if opts.tables is not None:
        raise ContractError("cannot generate tables while table-forcing is active")
    outcome, _ = solve(n, opts, sink)
    if outcome.winner is not Player.TWO:
        raise ContractError(
            f"player 1 wins the {n}-board game; there are no replies to tabulate"
        )

    canonical = canonical_first_moves(n)
    t: dict[Position, int] = {}
    a = [[0] * n for _ in range(n)]
    b: list[list[list[int]]] = []
    state = GameState(n)
    for i, first in enumerate(canonical):
        state.place(first)
        reply1 = _winning_reply(state, first, opts, sink)
        t[first] = encode(reply1)
        a[first.row][first.col] = i + 1
        sub = [[INVALID_BYTE] * n for _ in range(n)]
        state.place(reply1)
        for third in state.available_positions():
            state.place(third)
            try:
                reply2 = winning_move(state, opts, sink=sink)
            finally:
                state.unplace_last()
            assert reply2 is not None, "round-1 reply was verified winning"
            sub[third.row][third.col] = encode(reply2)
        state.unplace_last()
        state.unplace_last()
        b.append(sub)
    return AnswerTables(n=n, t=t, a=a, b=b)


def round1_check_count(n: int) -> int:
    """Distinct round-1 searches needed to fill T for an even board.

    Each diagonal first move pairs with the canonical reply chosen for it:
    the two search orders produce the same two-queen position, so one search
    covers both table rows. The remaining canonical first moves need one
    search each.
    """
    if n % 2 != 0:
        raise ContractError("round-1 check counting applies to even board sizes")
    canonical = canonical_first_moves(n)
    diagonal = sum(1 for p in canonical if p.row == p.col)
    return len(canonical) - diagonal


def save_tables(tables: AnswerTables, path) -> None:
    """Write the QPTABLES v1 text representation (deterministic output)."""
    canonical = canonical_first_moves(tables.n)
    lines = [f"QPTABLES v1 n={tables.n}"]
    lines.append("# T entries follow canonical first-move order (row-major)")
    lines.append("# A holds 1-based B sub-table indices assigned in canonical first-move order")
    lines.append("T")
    lines.append(" ".join(f"{tables.t.get(p, INVALID_BYTE):02X}" for p in canonical))
    lines.append("A")
    for row in tables.a:
        lines.append(" ".join(f"{v:02X}" for v in row))
    for i, sub in enumerate(tables.b):
        lines.append(f"B{i + 1}")
        for row in sub:
            lines.append(" ".join(f"{v:02X}" for v in row))
    Path(path).write_text("\n".join(lines) + "\n", encoding="ascii")


def load_tables(path) -> AnswerTables:
    """Parse a QPTABLES v1 file; raises TableFormatError on malformed input."""
    text = Path(path).read_text(encoding="ascii")
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise TableFormatError(f"{path}: empty table file")
    header = lines[0].split()
    if len(header) != 3 or header[0] != "QPTABLES" or header[1] != "v1":
        raise TableFormatError(f"{path}: bad header {lines[0]!r}")
    if not header[2].startswith("n="):
        raise TableFormatError(f"{path}: bad header {lines[0]!r}")
    try:
        n = int(header[2][2:])
    except ValueError:
        raise TableFormatError(f"{path}: bad board size in header") from None
    if not 1 <= n <= 16:
        raise TableFormatError(f"{path}: board size {n} outside 1..16")

    # Section sizes are fixed by n, so parse by expected counts; this keeps
    # byte values like "B1" unambiguous against section names.
    tokens: list[str] = []
    for line in lines[1:]:
        tokens.extend(line.split())
    pos = 0

    def expect_header(name: str) -> None:
        nonlocal pos
        if pos >= len(tokens) or tokens[pos] != name:
            got = tokens[pos] if pos < len(tokens) else "<eof>"
            raise TableFormatError(f"{path}: expected section {name}, got {got!r}")
        pos += 1

    def read_bytes(count: int, section: str) -> list[int]:
        nonlocal pos
        out = []
        for _ in range(count):
            if pos >= len(tokens):
                raise TableFormatError(f"{path}: section {section} truncated")
            tok = tokens[pos]
            if not _is_hex_byte(tok):
                raise TableFormatError(f"{path}: bad byte {tok!r} in section {section}")
            out.append(int(tok, 16))
            pos += 1
        return out

    canonical = canonical_first_moves(n)
    expect_header("T")
    t_bytes = read_bytes(len(canonical), "T")
    expect_header("A")
    a_bytes = read_bytes(n * n, "A")
    b: list[list[list[int]]] = []
    while pos < len(tokens):
        name = f"B{len(b) + 1}"
        expect_header(name)
        data = read_bytes(n * n, name)
        b.append([data[r * n : (r + 1) * n] for r in range(n)])
    return AnswerTables(
        n=n,
        t=dict(zip(canonical, t_bytes)),
        a=[a_bytes[r * n : (r + 1) * n] for r in range(n)],
        b=b,
    )


def _is_hex_byte(tok: str) -> bool:
    if len(tok) != 2:
        return False
    return all(ch in "0123456789ABCDEF" for ch in tok)
