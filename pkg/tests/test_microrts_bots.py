"""Stochastic and Rush baselines: category weights and scripted priorities."""

from __future__ import annotations

import pytest

from rtsearch.microrts import (
    ActKind,
    MRAction,
    RushBot,
    StochasticBot,
    UnitType,
    make_scenario,
    parse_scenario,
)
from rtsearch.model import Player


def grid(rows, resources=0):
    return parse_scenario("\n".join(rows), starting_resources=resources)


def action_for(action, uid):
    return next(a for a in action if a.unit == uid)


# ---------------------------------------------------------------------------
# stochastic bot


def test_stochastic_attacks_with_at_least_five_elevenths_probability():
    # the light has an adjacent enemy plus moves, so at least the attack,
    # approach, and other categories compete; attack's share is >= 5/11
    game, state = grid([
        ".....",
        ".Lw..",
        ".....",
        "..b..",
    ])
    light = next(u for u in state.units if u.type == UnitType.LIGHT)
    bot = StochasticBot(game, Player.MAX, seed=99)
    samples = 10_000
    attacks = 0
    for _ in range(samples):
        chosen = action_for(bot.act(state), light.uid)
        if chosen.kind is ActKind.ATTACK:
            attacks += 1
    assert attacks / samples >= 5 / 11 - 0.02


def test_stochastic_training_dominates_non_move_choices():
    # idle barracks, full stockpile, no enemy anywhere near: categories are
    # produce (weight 3) and other (weight 1), so train shows ~75%
    game, state = grid([
        "K....",
        ".....",
        "....b",
    ], resources=10)
    barracks = next(u for u in state.units if u.type == UnitType.BARRACKS)
    bot = StochasticBot(game, Player.MAX, seed=7)
    samples = 10_000
    trains = 0
    for _ in range(samples):
        chosen = action_for(bot.act(state), barracks.uid)
        if chosen.kind is ActKind.TRAIN:
            trains += 1
    assert trains / samples == pytest.approx(0.75, abs=0.02)


def test_stochastic_seeded_stream_reproducible():
    game, state = make_scenario("melee")
    a = StochasticBot(game, Player.MAX, seed=5)
    b = StochasticBot(game, Player.MAX, seed=5)
    assert [a.act(state) for _ in range(50)] == [b.act(state) for _ in range(50)]


def test_stochastic_covers_every_ready_unit():
    game, state = make_scenario("melee")
    bot = StochasticBot(game, Player.MIN, seed=1)
    action = bot.act(state)
    ready = {u.uid for u in game.ready_units(state, Player.MIN)}
    assert {a.unit for a in action} == ready
    # returned action is actually issuable
    game.issue(state, action, Player.MIN)


# ---------------------------------------------------------------------------
# rush bot


def test_rush_opening_sends_worker_toward_mine():
    game, state = make_scenario("full")
    bot = RushBot(game, Player.MAX)
    action = bot.act(state)
    worker = next(u for u in state.units if u.owner == Player.MAX
                  and u.type == UnitType.WORKER)
    chosen = action_for(action, worker.uid)
    assert chosen.kind is ActKind.MOVE
    mine = next(u for u in state.units if u.type == UnitType.MINE
                and game.manhattan(u.pos, worker.pos) <= 4)
    before = game.manhattan(worker.pos, mine.pos)
    after = game.manhattan(game.step_pos(worker.pos, chosen.direction), mine.pos)
    assert after < before


def test_rush_worker_harvests_when_adjacent():
    game, state = grid([
        "MW...",
        "..B.b",
    ], resources=0)
    bot = RushBot(game, Player.MAX)
    worker = next(u for u in state.units if u.owner == Player.MAX
                  and u.type == UnitType.WORKER)
    chosen = action_for(bot.act(state), worker.uid)
    assert chosen.kind is ActKind.HARVEST


def test_rush_builds_barracks_at_threshold():
    game, state = grid([
        "MW...",
        "..B.b",
    ], resources=5)
    bot = RushBot(game, Player.MAX)
    worker = next(u for u in state.units if u.owner == Player.MAX
                  and u.type == UnitType.WORKER)
    chosen = action_for(bot.act(state), worker.uid)
    assert chosen.kind is ActKind.BUILD
    assert chosen.produce == int(UnitType.BARRACKS)


def test_rush_does_not_build_second_barracks():
    game, state = grid([
        "MWK..",
        "..B.b",
    ], resources=9)
    bot = RushBot(game, Player.MAX)
    worker = next(u for u in state.units if u.owner == Player.MAX
                  and u.type == UnitType.WORKER)
    chosen = action_for(bot.act(state), worker.uid)
    assert chosen.kind is ActKind.HARVEST


def test_rush_barracks_trains_light_continuously():
    game, state = grid([
        "K....",
        "....b",
    ], resources=4)
    bot = RushBot(game, Player.MAX)
    barracks = next(u for u in state.units if u.type == UnitType.BARRACKS)
    chosen = action_for(bot.act(state), barracks.uid)
    assert chosen.kind is ActKind.TRAIN
    assert chosen.produce == int(UnitType.LIGHT)


def test_rush_light_attacks_adjacent_enemy_worker():
    game, state = grid([
        ".....",
        ".Lw..",
        "....b",
    ])
    bot = RushBot(game, Player.MAX)
    light = next(u for u in state.units if u.type == UnitType.LIGHT)
    victim = next(u for u in state.units if u.owner == Player.MIN
                  and u.type == UnitType.WORKER)
    chosen = action_for(bot.act(state), light.uid)
    assert chosen.kind is ActKind.ATTACK
    assert chosen.target == victim.uid


def test_rush_combat_units_close_distance_with_tie_broken_steps():
    game, state = make_scenario("melee")
    bot = RushBot(game, Player.MAX)
    action = bot.act(state)
    enemies = [u for u in state.units if u.owner == Player.MIN]
    for a in action:
        unit = next(u for u in state.units if u.uid == a.unit)
        assert a.kind is ActKind.MOVE
        nearest_d = min(game.manhattan(unit.pos, e.pos) for e in enemies)
        after = min(game.manhattan(game.step_pos(unit.pos, a.direction), e.pos)
                    for e in enemies)
        assert after <= nearest_d  # never steps away from the fight


def test_rush_is_deterministic():
    game, state = make_scenario("melee")
    assert RushBot(game, Player.MAX).act(state) == RushBot(game, Player.MAX).act(state)
