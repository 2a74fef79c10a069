"""Command-line entry point: case checks, tables, strategy demos, service.

Exit codes: 0 success, 1 failure (violations, lost demo input), 2 usage
errors, 3 inconclusive search results, 130 cancelled by interrupt.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import signal
import sys
import time

from .board import GameState, IllegalMoveError, Player
from .reporting import ReportConfig, Reporter
from .solver import (
    InconclusiveResultError,
    SearchCancelled,
    SearchOptions,
    solve,
)
from .strategies import (
    StrategyKind,
    format_transcript,
    next_move,
)
from .tables import generate_tables, load_tables, save_tables, validate

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_INCONCLUSIVE = 3
EXIT_CANCELLED = 130


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qpgame",
        description="Who wins the non-attacking queens placement game?",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    chk = sub.add_parser("check", help="solve a range of board sizes")
    chk.add_argument("--min", dest="min_n", type=int, default=6)
    chk.add_argument("--max", dest="max_n", type=int, default=12)
    chk.add_argument(
        "--even-only",
        action=argparse.BooleanOptionalAction,
        default=None,
        help="check only even sizes (default: on, unless --odd-strategy)",
    )
    chk.add_argument(
        "--odd-strategy",
        action="store_true",
        help="verify the center-then-mirror strategy on odd sizes",
    )
    chk.add_argument("--no-rotsym", action="store_true", help="disable the half-board restriction")
    chk.add_argument("--no-forbidden", action="store_true", help="disable forbidden-set pruning")
    chk.add_argument("--no-reply-rotation", action="store_true", help="disable reply-row rotation")
    chk.add_argument(
        "--no-first-move-canon", action="store_true", help="disable first-move canonicalization"
    )
    chk.add_argument(
        "--no-inner-start", action="store_true", help="do not force the inner start on even n <= 8"
    )
    chk.add_argument(
        "--first-move-stats",
        action=argparse.BooleanOptionalAction,
        default=None,
        help="per-first-move summary lines (default: on for n >= 16)",
    )
    chk.add_argument(
        "--third-move-markers",
        action=argparse.BooleanOptionalAction,
        default=None,
        help="third-move check markers on the stream (default: on for n >= 16)",
    )
    chk.add_argument("--progress-interval", type=int, default=1_000_000)
    chk.add_argument("--listing", default=None, help="listing file path (default QPGAME.LST)")
    chk.add_argument("--json", dest="json_path", default=None, help="machine-readable results")
    chk.add_argument("--tables", dest="tables_path", default=None, help="answer tables to force player-2 replies")

    demo = sub.add_parser("demo", help="play one game, printing the board")
    demo.add_argument("--n", type=int, required=True)
    demo.add_argument(
        "--strategy",
        choices=["inner-four", "mirror-odd", "perfect"],
        required=True,
    )
    demo.add_argument("--adversary", choices=["random", "stdin"], default="random")
    demo.add_argument("--seed", type=int, default=None)

    gen = sub.add_parser("tables-generate", help="generate answer tables")
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--out", required=True)

    val = sub.add_parser("tables-validate", help="validate a tables file")
    val.add_argument("--in", dest="path", required=True)

    srv = sub.add_parser("serve", help="start the play service")
    srv.add_argument("--port", type=int, default=8000)
    srv.add_argument("--host", default="127.0.0.1")
    srv.add_argument("--static", dest="static_dir", default=None)
    srv.add_argument("--budget", type=float, default=3.0, help="engine move budget in seconds")

    return parser


def _check_options(args) -> SearchOptions:
    return SearchOptions(
        use_rotsym_pruning=not args.no_rotsym,
        use_forbidden_pruning=not args.no_forbidden,
        use_first_move_canonicalization=not args.no_first_move_canon,
        force_inner_start_even_small=not args.no_inner_start,
        use_reply_row_rotation=not args.no_reply_rotation,
        odd_n_strategy_mode=args.odd_strategy,
        progress_interval=args.progress_interval,
        tables=load_tables(args.tables_path) if args.tables_path else None,
    )


def cmd_check(args, parser) -> int:
    if not 1 <= args.min_n <= args.max_n <= 32:
        parser.error(f"need 1 <= min <= max <= 32, got {args.min_n}..{args.max_n}")
    even_only = args.even_only
    if even_only is None:
        even_only = not args.odd_strategy
    try:
        options = _check_options(args)
    except Exception as err:  # unreadable or malformed tables file
        print(f"error: {err}", file=sys.stderr)
        return EXIT_FAILURE
    listing = args.listing or os.environ.get("QPGAME_LISTING") or "QPGAME.LST"
    config = ReportConfig(listing_path=listing)
    reporter = Reporter(config)
    previous_handler = signal.getsignal(signal.SIGINT)
    signal.signal(signal.SIGINT, lambda *_: reporter.request_cancel())
    results = []
    code = EXIT_OK
    try:
        reporter.write_header(args.progress_interval)
        for n in range(args.min_n, args.max_n + 1):
            if even_only and n % 2 == 1:
                continue
            config.first_move_checking_statistics = (
                args.first_move_stats if args.first_move_stats is not None else n >= 16
            )
            config.indicate_third_moves_checking = (
                args.third_move_markers if args.third_move_markers is not None else n >= 16
            )
            reporter.write_case_start(n)
            started = time.perf_counter()
            outcome, stats = solve(n, options, sink=reporter)
            elapsed = time.perf_counter() - started
            reporter.write_case_end(outcome.winner, stats.calls)
            results.append(
                {
                    "n": n,
                    "winner": int(outcome.winner),
                    "calls": stats.calls,
                    "seconds": round(elapsed, 3),
                }
            )
        reporter.write_stop()
    except SearchCancelled:
        print("\ncancelled", file=sys.stderr)
        code = EXIT_CANCELLED
    except InconclusiveResultError as err:
        print(f"\ninconclusive: {err}", file=sys.stderr)
        code = EXIT_INCONCLUSIVE
    finally:
        signal.signal(signal.SIGINT, previous_handler)
        reporter.close()
    if args.json_path:
        payload = {"options": options.fingerprint(), "results": results}
        with open(args.json_path, "w", encoding="ascii") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
    return code


def _stdin_adversary(state: GameState):
    while True:
        print(f"your move (row col), 0..{state.dims.n - 1}: ", end="", flush=True)
        line = sys.stdin.readline()
        if not line:
            raise EOFError("input closed")
        parts = line.split()
        if len(parts) != 2:
            print("enter two integers, e.g. '0 3'")
            continue
        try:
            r, c = int(parts[0]), int(parts[1])
        except ValueError:
            print("enter two integers, e.g. '0 3'")
            continue
        if not (0 <= r < state.dims.n and 0 <= c < state.dims.n):
            print("off the board")
            continue
        try:
            state.place((r, c))
        except IllegalMoveError as err:
            print(f"illegal: shares {err.constraint} with queen at {err.conflicting}")
            continue
        state.unplace_last()
        return (r, c)


def cmd_demo(args, parser) -> int:
    kind = {
        "inner-four": StrategyKind.INNER_FOUR,
        "mirror-odd": StrategyKind.MIRROR_ODD,
        "perfect": StrategyKind.PERFECT_SEARCH,
    }[args.strategy]
    if kind is StrategyKind.MIRROR_ODD and args.n % 2 == 0:
        parser.error("mirror-odd requires an odd board side")
    if kind is StrategyKind.INNER_FOUR and args.n != 4:
        parser.error("inner-four requires --n 4")
    rng = random.Random(args.seed)
    state = GameState(args.n)
    transcript = []
    try:
        while not state.finished:
            if state.player_to_move is Player.ONE:
                move = next_move(kind, state)
                print(f"engine plays {len(state.moves) + 1}: ({move[0]},{move[1]})")
            elif args.adversary == "random":
                move = rng.choice(state.available_positions())
                print(f"adversary plays {len(state.moves) + 1}: ({move[0]},{move[1]})")
            else:
                move = _stdin_adversary(state)
            state.place(move)
            transcript.append(state.moves[-1])
            print(state.render())
            print()
    except EOFError:
        print("input closed; aborting game", file=sys.stderr)
        return EXIT_FAILURE
    winner = state.last_mover
    print(format_transcript(transcript))
    print(f"Player {int(winner)} wins (last to move)")
    return EXIT_OK


def cmd_tables_generate(args) -> int:
    try:
        tables = generate_tables(args.n)
    except Exception as err:  # precondition failures, cancellations
        print(f"error: {err}", file=sys.stderr)
        return EXIT_FAILURE
    save_tables(tables, args.out)
    print(f"wrote tables for n={args.n} to {args.out}")
    return EXIT_OK


def cmd_tables_validate(args) -> int:
    try:
        tables = load_tables(args.path)
    except Exception as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_FAILURE
    violations = validate(tables)
    for violation in violations:
        print(violation)
    if violations:
        print(f"{len(violations)} violation(s)", file=sys.stderr)
        return EXIT_FAILURE
    print(f"{args.path}: tables valid (n={tables.n})")
    return EXIT_OK


def cmd_serve(args) -> int:
    from .service import run_serve

    run_serve(
        host=args.host,
        port=args.port,
        static_dir=args.static_dir,
        engine_budget_seconds=args.budget,
    )
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "check":
        return cmd_check(args, parser)
    if args.command == "demo":
        return cmd_demo(args, parser)
    if args.command == "tables-generate":
        return cmd_tables_generate(args)
    if args.command == "tables-validate":
        return cmd_tables_validate(args)
    if args.command == "serve":
        return cmd_serve(args)
    parser.error(f"unknown command {args.command!r}")
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
