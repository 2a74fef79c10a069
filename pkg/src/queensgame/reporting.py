"""Progress output and the QPGAME.LST listing.

The listing file receives only summary lines; progress '+' marks and
third-move check markers go to the stream alone, so the listing stays a
clean subset of the stream output. Every listing write is flushed so the
file stays readable if the run is cancelled mid-search.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from pathlib import Path

from .board import Player
from .solver import ProgressSink

STOP_LINE = "== Regular program stop =="


@dataclass
class ReportConfig:
    listing_path: str | Path = "QPGAME.LST"
    emit_progress_plus: bool = True
    first_move_checking_statistics: bool = False
    indicate_third_moves_checking: bool = False


class Reporter(ProgressSink):
    """Writes run output to a stream and the listing file.

    Also acts as the search's progress sink: milestone '+' marks, first-move
    statistics lines, third-move markers, and the cancellation flag.
    """

    def __init__(self, config: ReportConfig | None = None, stream=None):
        self.config = config if config is not None else ReportConfig()
        self.stream = stream if stream is not None else sys.stdout
        try:
            self._listing = open(self.config.listing_path, "w", encoding="ascii")
        except OSError as err:
            raise OSError(f"cannot open listing file {self.config.listing_path}: {err}") from err
        self._markers_pending = False
        self._cancel = False

    # -- cancellation --------------------------------------------------

    def request_cancel(self) -> None:
        self._cancel = True

    def poll_cancel(self) -> bool:
        return self._cancel

    # -- low-level writes ----------------------------------------------

    def _stream_write(self, text: str) -> None:
        self.stream.write(text)
        self.stream.flush()

    def _line(self, line: str) -> None:
        """One summary line to both the stream and the listing."""
        if self._markers_pending:
            self._stream_write("\n")
            self._markers_pending = False
        self._stream_write(line + "\n")
        self._listing.write(line + "\n")
        self._listing.flush()

    # -- run structure ---------------------------------------------------

    def write_header(self, progress_interval: int = 1_000_000) -> None:
        from . import __version__

        listing_name = Path(self.config.listing_path).name
        self._line("=== Checking solutions for the queens placing game problem ===")
        self._line(f"=== queensgame {__version__} ===")
        self._line("")
        self._line("Hints:")
        self._line(f"  Output listing into file {listing_name} within the working directory.")
        self._line(f"  After each {progress_interval} moves a + will be emitted.")
        self._line("  To cancel the execution press Ctrl-C.")
        self._line("")

    def write_case_start(self, n: int) -> None:
        self._line(f"Starting search with n = {n}")

    def write_case_end(self, winner: Player, calls: int) -> None:
        word = "win" if winner is Player.ONE else "loss"
        self._line(f"Search completed. Result of player 1: {word}. Sum of calls: {calls}")
        self._line("")

    def write_first_move_stat(self, position, player2_wins: bool, calls: int) -> None:
        word = "win" if player2_wins else "loss"
        self._line(
            f"pl. 1: ({position[0]},{position[1]}) -> pl. 2: {word}. Sum of calls: {calls}"
        )

    def write_stop(self) -> None:
        self._line(STOP_LINE)

    # -- sink callbacks (stream only) ------------------------------------

    def on_calls_milestone(self, total_calls: int) -> None:
        if self.config.emit_progress_plus:
            self._stream_write("+")
            self._markers_pending = True

    def on_first_move_result(self, position, player2_wins: bool, calls: int) -> None:
        if self.config.first_move_checking_statistics:
            self.write_first_move_stat(position, player2_wins, calls)

    def on_third_move_enter(self, first, third) -> None:
        if self.config.indicate_third_moves_checking:
            self._stream_write(
                f"[1: ({first[0]},{first[1]})] 3: ({third[0]},{third[1]})"
            )
            self._markers_pending = True

    def on_third_move_exit(self, win_digit: int) -> None:
        if self.config.indicate_third_moves_checking:
            self._stream_write(f" -> {win_digit}\n")
            self._markers_pending = False

    # -- lifecycle -------------------------------------------------------

    def close(self) -> None:
        if not self._listing.closed:
            self._listing.flush()
            self._listing.close()

    def __enter__(self) -> "Reporter":
        return self

    def __exit__(self, *exc) -> None:
        self.close()
