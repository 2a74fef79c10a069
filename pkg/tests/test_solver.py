import itertools

import pytest

from queensgame.board import ContractError, GameState, Player, Position
from queensgame.solver import (
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

# Who wins on small boards, frozen from oracle_solve (and consistent with
# the published outcome table: 1..9 and 11 are first-player wins, 10 and 12
# are second-player wins).
EXPECTED_WINNERS = {
    1: Player.ONE,
    2: Player.ONE,
    3: Player.ONE,
    4: Player.ONE,
    5: Player.ONE,
    6: Player.ONE,
    7: Player.ONE,
    8: Player.ONE,
}


def no_restrictions(**kw) -> SearchOptions:
    return SearchOptions(force_inner_start_even_small=False, **kw)


class TestOracle:
    def test_small_board_winners(self):
        for n, winner in EXPECTED_WINNERS.items():
            if n <= 7:  # keep the unit run quick; n=8 is covered via solve
                assert oracle_solve(n) == Outcome(winner)

    def test_size_guard(self):
        with pytest.raises(ContractError):
            oracle_solve(9)
        with pytest.raises(ContractError):
            oracle_solve(0)

    def test_size_guard_overridable(self):
        assert oracle_solve(8, size_guard=8).winner is Player.ONE


class TestWins:
    def test_single_cell_board(self):
        assert wins(GameState(1)) is True

    def test_2x2_first_queen_covers_all(self):
        assert wins(GameState(2)) is True

    def test_after_losing_first_move_on_10(self):
        # player 2 wins n=10, so player 2 to move after any first move wins
        state = GameState.from_moves(10, [(0, 0)])
        assert wins(state) is True

    def test_finished_position_is_a_loss_for_the_mover(self):
        state = GameState.from_moves(2, [(0, 0)])
        assert wins(state) is False

    def test_winning_move_is_actually_winning(self):
        state = GameState(6)
        move = winning_move(state, no_restrictions())
        assert move is not None
        state.place(move)
        assert wins(state, no_restrictions()) is False

    def test_state_left_unchanged(self):
        state = GameState.from_moves(6, [(2, 2), (0, 1)])
        snapshot = (list(state.moves), state.rotsym, state.occupancy.as_masks())
        wins(state)
        assert (list(state.moves), state.rotsym, state.occupancy.as_masks()) == snapshot


class TestSolve:
    def test_paper_outcomes_small(self):
        for n in range(1, 9):
            outcome, _ = solve(n)
            assert outcome.winner is EXPECTED_WINNERS[n], n

    def test_n10_second_player_wins(self):
        outcome, stats = solve(10)
        assert outcome.winner is Player.TWO
        assert stats.restricted is False

    def test_odd_strategy_mode(self):
        for n in (5, 7, 9):
            outcome, stats = solve(n, SearchOptions(odd_n_strategy_mode=True))
            assert outcome.winner is Player.ONE
            assert stats.restricted is True
            assert stats.restricted_player1 is True

    def test_counts_calls(self):
        _, stats = solve(4)
        assert stats.calls > 0
        assert isinstance(stats.calls, int)
        # Python ints do not wrap; well past the 2.14e15 design bound.
        assert stats.calls + 2_150_000_000_000_000 > 2_150_000_000_000_000

    def test_per_first_move_breakdown(self):
        _, stats = solve(6, no_restrictions())
        assert stats.per_first_move
        assert sum(s.calls for s in stats.per_first_move) <= stats.calls
        # player 1 wins n=6 so the last recorded first move refutes player 2
        assert stats.per_first_move[-1].player2_wins is False
        for s in stats.per_first_move[:-1]:
            assert s.player2_wins is True

    def test_forced_inner_start_restricts(self):
        outcome, stats = solve(6)
        assert outcome.winner is Player.ONE
        assert stats.restricted_player1 is True
        assert stats.per_first_move[0].position == (2, 2)
        assert len(stats.per_first_move) == 1


class TestPruningSoundness:
    def test_all_toggle_combinations_small(self):
        # n <= 6 here; the n = 7 sweep runs in the acceptance suite.
        for n in range(1, 7):
            expected = oracle_solve(n)
            for rot, forb, rota, canon in itertools.product([False, True], repeat=4):
                opts = SearchOptions(
                    use_rotsym_pruning=rot,
                    use_forbidden_pruning=forb,
                    use_reply_row_rotation=rota,
                    use_first_move_canonicalization=canon,
                    force_inner_start_even_small=False,
                )
                outcome, _ = solve(n, opts)
                assert outcome == expected, (n, rot, forb, rota, canon)

    def test_forbidden_commutativity_premise(self):
        import random

        from queensgame.board import attacks

        rng = random.Random(13)
        for _ in range(200):
            n = rng.randrange(2, 11)
            state = GameState(n)
            while rng.random() < 0.5:
                cells = state.available_positions()
                if not cells:
                    break
                state.place(rng.choice(cells))
            cells = state.available_positions()
            pairs = [
                (p, q)
                for p in cells
                for q in cells
                if p != q and not attacks(p, q)
            ]
            if not pairs:
                continue
            p, q = rng.choice(pairs)
            state.place(p)
            state.place(q)
            masks_pq = state.occupancy.as_masks()
            state.unplace_last()
            state.unplace_last()
            state.place(q)
            state.place(p)
            assert state.occupancy.as_masks() == masks_pq

    def test_forbidden_pruning_monotonic(self):
        for n in range(4, 8):  # n=8 is re-checked in the acceptance suite
            _, with_forbidden = solve(n, SearchOptions())
            _, without = solve(n, SearchOptions(use_forbidden_pruning=False))
            assert with_forbidden.calls <= without.calls


class TestDeterminism:
    def test_identical_runs_identical_stats(self):
        a_outcome, a = solve(7)
        b_outcome, b = solve(7)
        assert a_outcome == b_outcome
        assert a.calls == b.calls
        assert a.per_first_move == b.per_first_move
        assert (a.restricted, a.restricted_player1, a.restricted_player2) == (
            b.restricted,
            b.restricted_player1,
            b.restricted_player2,
        )

    def test_identical_runs_byte_identical_reports(self, tmp_path):
        import io

        from queensgame.reporting import ReportConfig, Reporter

        outputs = []
        for name in ("a.lst", "b.lst"):
            stream = io.StringIO()
            config = ReportConfig(
                listing_path=tmp_path / name,
                first_move_checking_statistics=True,
                indicate_third_moves_checking=True,
            )
            reporter = Reporter(config, stream=stream)
            reporter.write_case_start(7)
            outcome, stats = solve(7, SearchOptions(progress_interval=100), sink=reporter)
            reporter.write_case_end(outcome.winner, stats.calls)
            reporter.close()
            outputs.append((stream.getvalue(), (tmp_path / name).read_bytes()))
        assert outputs[0] == outputs[1]


class TestWinsMatchesSolve:
    def test_empty_board_wins_equals_solve_subtree_behavior(self):
        opts = SearchOptions()
        stats_wins = SearchStats()
        assert wins(GameState(6), opts, stats_wins) is True
        outcome, stats_solve = solve(6, opts)
        assert outcome.winner is Player.ONE
        assert stats_wins.calls == stats_solve.calls
        assert stats_wins.per_first_move == stats_solve.per_first_move


class RecordingSink(ProgressSink):
    def __init__(self):
        self.milestones = []
        self.first_moves = []
        self.third_enters = []
        self.third_exits = []

    def on_calls_milestone(self, total_calls):
        self.milestones.append(total_calls)

    def on_first_move_result(self, position, player2_wins, calls):
        self.first_moves.append((position, player2_wins, calls))

    def on_third_move_enter(self, first, third):
        self.third_enters.append((first, third))

    def on_third_move_exit(self, win_digit):
        self.third_exits.append(win_digit)


class CancellingSink(ProgressSink):
    def poll_cancel(self):
        return True


class TestSinks:
    def test_milestones_every_interval(self):
        sink = RecordingSink()
        _, stats = solve(8, SearchOptions(progress_interval=100), sink=sink)
        expected = list(range(100, stats.calls + 1, 100))
        assert sink.milestones == expected

    def test_first_move_results_reported(self):
        sink = RecordingSink()
        _, stats = solve(6, no_restrictions(), sink=sink)
        assert sink.first_moves == [
            (s.position, s.player2_wins, s.calls) for s in stats.per_first_move
        ]

    def test_third_move_markers_paired(self):
        sink = RecordingSink()
        solve(6, sink=sink)
        assert len(sink.third_enters) == len(sink.third_exits)
        assert sink.third_enters  # n=6 searches beyond the third move
        assert set(sink.third_exits) <= {0, 1}
        # every enter names the actual first move of the game
        first_moves = {f for (f, _) in sink.third_enters}
        assert first_moves == {Position(2, 2)}

    def test_cancellation_raises(self):
        with pytest.raises(SearchCancelled):
            solve(8, SearchOptions(progress_interval=10), sink=CancellingSink())

    def test_cancellation_leaves_valid_stats(self):
        stats = SearchStats()
        with pytest.raises(SearchCancelled):
            winning_move(
                GameState(8),
                SearchOptions(progress_interval=10),
                stats,
                CancellingSink(),
            )
        assert stats.calls > 0


class TestInconclusive:
    def test_restricted_wins_are_conclusive(self):
        # Restrictions on player 1's candidates can only hide player-1 wins,
        # so a restricted player-1 win is reported without error.
        for n in (6, 8):
            outcome, stats = solve(n)
            assert outcome.winner is Player.ONE
            assert stats.restricted_player1
        outcome, stats = solve(5, SearchOptions(odd_n_strategy_mode=True))
        assert outcome.winner is Player.ONE
        assert stats.restricted_player1
    # The inconclusive error itself fires when table-forced replies make
    # player 1 win spuriously; that path is exercised in test_tables.py.


class TestOptionValidation:
    def test_progress_interval_positive(self):
        with pytest.raises(ContractError):
            SearchOptions(progress_interval=0)
