"""Searchers, iterative deepening, and anytime sessions on toy games."""

from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rtsearch.model import ContractViolation, Outcome, Player, is_pass
from rtsearch.search import (
    SearchSession,
    SessionStatus,
    TickClock,
    Variant,
    next_cutoff,
    rrtmm,
    rtmm,
    rtmm_alphabeta,
)

from toygame import IssueSpy, ToyGame


def brute_force(game, state, t_max):
    """Direct transcription of the search definition: exhaust all play
    sequences, MAX choices before MIN at simultaneous states, fast-forward
    when nobody can act.  No pruning, no statistics."""
    if state.clock >= t_max or game.winner(state) is not Outcome.ONGOING:
        return game.evaluate(state)
    max_acts = game.player_actions(state, Player.MAX)
    if not is_pass(max_acts):
        return max(brute_force(game, game.issue(state, a, Player.MAX), t_max)
                   for a in max_acts)
    min_acts = game.player_actions(state, Player.MIN)
    if not is_pass(min_acts):
        return min(brute_force(game, game.issue(state, a, Player.MIN), t_max)
                   for a in min_acts)
    return brute_force(game, game.simulate(state, t_max), t_max)


# ---------------------------------------------------------------------------
# value correctness


def test_terminal_root_is_single_leaf():
    game = ToyGame(seed=1, end_time=0)
    root = game.initial_state()
    result = rtmm(root, 5, game)
    assert result.value == game.evaluate(root)
    assert result.leaves_total == 1
    assert result.nodes == 1


def test_zero_horizon_evaluates_root():
    game = ToyGame(seed=2)
    root = game.initial_state()
    result = rtmm(root, root.clock, game)
    assert result.value == game.evaluate(root)
    assert result.leaves_total == 1


def test_two_by_two_toy_matches_brute_force():
    # two units (one per player), 2 choices each, horizon = 2 action lengths
    game = ToyGame(seed=3, units_per_player=(1, 1), n_choices=2, default_duration=2)
    root = game.initial_state()
    expected = brute_force(game, root, 4)
    assert rtmm(root, 4, game).value == expected


@pytest.mark.parametrize("seed", range(20))
def test_rtmm_matches_brute_force_on_varied_toys(seed):
    game = ToyGame(seed=seed, units_per_player=(1, 1), n_choices=2,
                   durations={(0, 0): 2, (0, 1): 3, (1, 0): 2, (1, 1): 2},
                   end_time=9 if seed % 3 == 0 else None)
    root = game.initial_state()
    for horizon in (2, 5, 7):
        assert rtmm(root, horizon, game).value == brute_force(game, root, horizon)


def test_horizon_before_root_time_rejected():
    game = ToyGame(seed=4)
    root = game.initial_state()
    moved = game.simulate(game.issue(game.issue(
        root, game.player_actions(root, Player.MAX)[0], Player.MAX),
        game.player_actions(root, Player.MIN)[0], Player.MIN), None)
    assert moved.clock > 0
    with pytest.raises(ContractViolation):
        rtmm(moved, moved.clock - 1, game)


# ---------------------------------------------------------------------------
# alpha-beta


@pytest.mark.parametrize("seed", range(20))
def test_alphabeta_equals_plain_and_never_more_nodes(seed):
    game = ToyGame(seed=seed, units_per_player=(1, 1), n_choices=3,
                   durations={(0, 0): 2, (0, 1): 3, (0, 2): 2,
                              (1, 0): 2, (1, 1): 2, (1, 2): 3})
    root = game.initial_state()
    for horizon in (4, 7):
        plain = rtmm(root, horizon, game)
        pruned = rtmm_alphabeta(root, horizon, game)
        assert pruned.value == plain.value
        assert pruned.nodes <= plain.nodes


def test_alphabeta_fail_high_window():
    # hunt a toy whose true root value clears the window's upper bound
    for seed in range(50):
        game = ToyGame(seed=seed, n_choices=2)
        root = game.initial_state()
        true_value = rtmm(root, 4, game).value
        if true_value >= 5:
            windowed = rtmm_alphabeta(root, 4, game, alpha=0.0, beta=1.0)
            assert windowed.value >= 1.0
            return
    pytest.fail("no toy with a high root value found")


def test_alphabeta_rejects_inverted_window():
    game = ToyGame(seed=5)
    with pytest.raises(ContractViolation):
        rtmm_alphabeta(game.initial_state(), 4, game, alpha=2.0, beta=1.0)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10_000), horizon=st.integers(1, 7))
def test_alphabeta_soundness_property(seed, horizon):
    game = ToyGame(seed=seed, units_per_player=(1, 1), n_choices=2,
                   durations={(0, 0): 2, (0, 1): 3, (1, 0): 1, (1, 1): 2})
    root = game.initial_state()
    assert rtmm_alphabeta(root, horizon, game).value == rtmm(root, horizon, game).value


# ---------------------------------------------------------------------------
# randomized alpha-beta


def test_rrtmm_without_simultaneity_matches_alphabeta():
    # after the root, readiness times never coincide within the horizon
    game = ToyGame(seed=6, units_per_player=(1, 1), n_choices=2,
                   durations={(0, 0): 2, (0, 1): 2, (1, 0): 3, (1, 1): 3})
    root = game.initial_state()
    reference = rtmm_alphabeta(root, 5, game)
    for seed in range(20):
        result = rrtmm(root, 5, game, seed=seed)
        assert result.value == reference.value
        assert result.best_action == reference.best_action


def test_rrtmm_same_seed_same_result():
    game = ToyGame(seed=7, units_per_player=(2, 1), n_choices=2)
    root = game.initial_state()
    first = rrtmm(root, 6, game, seed=42)
    second = rrtmm(root, 6, game, seed=42)
    assert first == second


def test_rrtmm_flips_both_orderings_at_nonroot_simultaneous_nodes():
    game = ToyGame(seed=8, units_per_player=(1, 1), n_choices=2, default_duration=2)
    max_first_seen = set()
    for seed in range(200):
        spy = IssueSpy(game)
        root = game.initial_state()
        rrtmm(root, 8, spy, seed=seed)
        first_player_at = {}
        for state, player in spy.issued:
            if state not in first_player_at:
                first_player_at[state] = player
        for state, player in first_player_at.items():
            if state.clock > root.clock and all(b == 0 for b in state.busy):
                max_first_seen.add(player)
        if len(max_first_seen) == 2:
            break
    assert max_first_seen == {Player.MAX, Player.MIN}


def test_rrtmm_root_always_expands_searching_player_first():
    game = ToyGame(seed=9, units_per_player=(1, 1), n_choices=2, default_duration=2)
    for seed in range(30):
        spy = IssueSpy(game)
        root = game.initial_state()
        rrtmm(root, 4, spy, seed=seed)
        assert spy.issued[0][0] == root and spy.issued[0][1] is Player.MAX


# ---------------------------------------------------------------------------
# iterative deepening mechanics


def test_frontier_ordering_t_plus_t_minus_cutoff():
    game = ToyGame(seed=10, units_per_player=(1, 1), n_choices=2,
                   durations={(0, 0): 3, (0, 1): 4, (1, 0): 3, (1, 1): 5})
    root = game.initial_state()
    for horizon in (2, 4, 6):
        result = rtmm(root, horizon, game)
        if result.leaves_cutoff:
            assert result.t_plus >= result.t_minus >= horizon


def test_next_cutoff_formula():
    game = ToyGame(seed=11, default_duration=3)
    root = game.initial_state()
    result = rtmm(root, 4, game)
    assert result.leaves_cutoff > 0
    assert next_cutoff(result, 3) == result.t_minus + 3


def test_next_cutoff_rejects_complete_tree():
    game = ToyGame(seed=12, end_time=4, default_duration=2)
    root = game.initial_state()
    result = rtmm(root, 50, game)
    assert result.leaves_cutoff == 0
    with pytest.raises(ContractViolation):
        next_cutoff(result, 2)


def test_rerun_at_t_minus_explores_identical_tree():
    game = ToyGame(seed=13, units_per_player=(1, 1), n_choices=2,
                   durations={(0, 0): 3, (0, 1): 3, (1, 0): 3, (1, 1): 3})
    root = game.initial_state()
    first = rtmm(root, 4, game)
    assert first.t_minus > 4
    again = rtmm(root, first.t_minus, game)
    assert again.nodes == first.nodes
    assert again.leaves_total == first.leaves_total
    assert again.value == first.value


def test_rerun_at_t_plus_expands_every_cutoff_branch():
    game = ToyGame(seed=14, units_per_player=(1, 1), n_choices=2,
                   durations={(0, 0): 3, (0, 1): 4, (1, 0): 3, (1, 1): 5})
    root = game.initial_state()
    horizon = 4

    cut_leaves = []
    def spy_eval(state):
        if state.clock >= horizon and game.winner(state) is Outcome.ONGOING:
            cut_leaves.append(state)
        return game.evaluate(state)

    first = rtmm(root, horizon, game, spy_eval)
    assert first.leaves_cutoff == len(cut_leaves) > 0
    t_plus = first.t_plus
    assert t_plus > horizon

    deeper_spy = IssueSpy(game)
    deeper_leaves = []
    def deeper_eval(state):
        deeper_leaves.append(state)
        return game.evaluate(state)

    deeper = rtmm(root, t_plus, deeper_spy, deeper_eval)
    assert deeper.nodes > first.nodes
    for leaf in cut_leaves:
        follow_up = game.simulate(leaf, None)
        if follow_up.clock < t_plus:
            assert follow_up in deeper_spy.expanded
        else:
            assert follow_up in deeper_leaves


def test_node_count_growth_across_iterations():
    game = ToyGame(seed=15, units_per_player=(1, 1), n_choices=2,
                   durations={(0, 0): 2, (0, 1): 3, (1, 0): 2, (1, 1): 3},
                   end_time=14)
    root = game.initial_state()
    epsilon = game.min_action_duration
    cutoff = root.clock + epsilon
    previous = None
    for _ in range(6):
        result = rtmm(root, cutoff, game)
        if previous is not None:
            assert result.nodes >= previous.nodes
            if previous.leaves_cutoff > 0 and cutoff > previous.t_minus:
                assert result.nodes > previous.nodes
        previous = result
        if result.leaves_cutoff == 0:
            break
        cutoff = next_cutoff(result, epsilon)


# ---------------------------------------------------------------------------
# sessions


def small_game(**kwargs):
    defaults = dict(seed=21, units_per_player=(1, 1), n_choices=2,
                    default_duration=2, end_time=8)
    defaults.update(kwargs)
    return ToyGame(**defaults)


def test_session_starts_ready_with_first_horizon():
    game = small_game()
    root = game.initial_state()
    session = SearchSession(root, game, seed=0)
    assert session.status is SessionStatus.READY
    assert session.cutoff == root.clock + game.min_action_duration
    assert session.last_complete is None
    assert session.best_action() is None


def test_session_on_finished_game_is_terminal():
    game = small_game(end_time=0)
    session = SearchSession(game.initial_state(), game)
    assert session.status is SessionStatus.TERMINAL
    session.step(1000)  # no-op
    assert session.last_complete is None


def test_session_requires_decision_point():
    game = small_game()
    root = game.initial_state()
    busy = game.issue(root, game.player_actions(root, Player.MAX)[0], Player.MAX)
    with pytest.raises(ContractViolation):
        SearchSession(busy, game)


def test_session_zero_budget_changes_only_status():
    game = small_game()
    session = SearchSession(game.initial_state(), game, clock=TickClock())
    cutoff_before = session.cutoff
    session.step(0)
    assert session.status is SessionStatus.EXHAUSTED
    assert session.last_complete is None
    assert session.cutoff == cutoff_before
    assert session.iterations == 0


def test_session_exhausts_tiny_game_to_full_value():
    game = small_game()
    root = game.initial_state()
    session = SearchSession(root, game, seed=0)
    session.step(10_000)
    assert session.status is SessionStatus.TERMINAL
    full = rtmm(root, game.end_time, game)
    assert session.last_complete.value == full.value
    assert session.last_complete.leaves_cutoff == 0
    assert session.best_action() == full.best_action


def test_session_resume_across_steps_matches_single_step():
    game = small_game()
    root = game.initial_state()

    split = SearchSession(root, game, clock=TickClock(), check_interval=4)
    split.step(15)
    assert split.telemetry.aborted >= 1  # an iteration was cut mid-flight
    split.step(15)

    whole = SearchSession(root, game, clock=TickClock(), check_interval=4)
    whole.step(30)

    assert split.last_complete == whole.last_complete
    assert split.status == whole.status


def test_session_budget_overshoot_bounded_by_check_interval():
    game = ToyGame(seed=22, units_per_player=(2, 2), n_choices=2, default_duration=2)
    clock = TickClock()
    session = SearchSession(game.initial_state(), game, clock=clock, check_interval=8)
    start = clock.now
    session.step(10)
    consumed = clock.now - start
    assert consumed <= 10 + 2  # one in-flight check plus the loop's own reads


def test_session_cutoffs_strictly_increase():
    game = small_game(end_time=None)
    session = SearchSession(game.initial_state(), game, clock=TickClock())
    seen = []
    for _ in range(4):
        session.step(400)
        cutoff = session.last_complete.cutoff if session.last_complete else None
        if cutoff is not None and (not seen or cutoff != seen[-1]):
            seen.append(cutoff)
    assert seen == sorted(seen) and len(seen) == len(set(seen))
    assert len(seen) >= 2


def test_session_deterministic_creation_and_stepping():
    game = small_game()
    root = game.initial_state()
    a = SearchSession(root, game, variant=Variant.RRTMM_AB, seed=5, clock=TickClock())
    b = SearchSession(root, game, variant=Variant.RRTMM_AB, seed=5, clock=TickClock())
    assert a.fingerprint() == b.fingerprint()
    a.step(30)
    b.step(30)
    assert a.fingerprint() == b.fingerprint()


def test_best_action_prefers_winning_choice():
    # unit 0's choice 1 pays off, choice 0 costs; MIN's choices are neutral
    def payoff(unit, choice, t):
        if unit == 0:
            return 10.0 if choice == 1 else -10.0
        return 0.0

    game = ToyGame(units_per_player=(1, 1), n_choices=2, default_duration=2,
                   payoff_fn=payoff, end_time=4)
    root = game.initial_state()
    session = SearchSession(root, game)
    session.step(1000)
    best = session.best_action()
    assert best is not None
    assert best.actions[0].choice == 1


def test_best_action_tie_breaks_to_first_enumerated():
    game = ToyGame(units_per_player=(1, 1), n_choices=3, default_duration=2,
                   payoff_fn=lambda u, c, t: 0.0, end_time=6)
    root = game.initial_state()
    for _ in range(3):
        session = SearchSession(root, game)
        session.step(1000)
        best = session.best_action()
        assert best == game.player_actions(root, Player.MAX)[0]


def test_argmax_stable_under_positive_evaluator_scaling():
    game = ToyGame(seed=23, units_per_player=(1, 2), n_choices=2, default_duration=2)
    root = game.initial_state()
    base = rtmm_alphabeta(root, 6, game)
    scaled = rtmm_alphabeta(root, 6, game, lambda s: 3.5 * game.evaluate(s))
    assert scaled.best_action == base.best_action
    assert scaled.value == pytest.approx(3.5 * base.value)
