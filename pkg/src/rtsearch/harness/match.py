"""Match loop, records, and replays.

Each cycle both controllers are polled against the same pre-cycle snapshot,
their actions are issued (MAX first), and the game advances exactly one
cycle.  A player that can act but returns nothing is issued explicit
no-actions so simulation time always flows.  Everything is driven by the
per-match seed, so a record replays to the identical outcome.

Records serialize as line-delimited JSON: a config header, one record per
cycle that saw an action or telemetry, and an outcome footer.
"""

from __future__ import annotations

import json
import time as _time
from dataclasses import dataclass, field, asdict
from pathlib import Path
from typing import Optional

from ..battlecity import FollowerBot, RandomBot, load_map
from ..microrts import RushBot, StochasticBot, load_scenario
from ..model import GameModel, Outcome, Player, PlayerAction
from ..search import TickClock, Variant
from .controllers import Controller, ScriptedController, SearchController

CYCLES_PER_SECOND = 50

SEARCH_BOTS = {
    "rtmm": Variant.RTMM_AB,
    "rrtmm": Variant.RRTMM_AB,
    "rtmm-plain": Variant.RTMM_PLAIN,
}
SCRIPTED_BOTS = {
    "battlecity": ("random", "follower"),
    "microrts": ("stochastic", "rush"),
}


class ConfigError(ValueError):
    """Unusable match or tournament configuration."""


@dataclass(frozen=True)
class MatchConfig:
    game: str                  # "battlecity" | "microrts"
    arena: str                 # map name/path or scenario name/path
    max_bot: str
    min_bot: str
    budget_ms: float = 15.0
    budget_ticks: Optional[int] = None  # deterministic budget (overrides wall when set)
    max_cycles: int = 5000
    seed: int = 0
    cycles_per_second: int = CYCLES_PER_SECOND

    def __post_init__(self):
        if self.max_cycles <= 0:
            raise ConfigError("max_cycles must be positive")
        if self.game not in SCRIPTED_BOTS:
            raise ConfigError(f"unknown game {self.game!r}")
        for name in (self.max_bot, self.min_bot):
            if name not in SEARCH_BOTS and name not in SCRIPTED_BOTS[self.game]:
                raise ConfigError(
                    f"unknown bot {name!r} for {self.game}; scripted: "
                    f"{', '.join(SCRIPTED_BOTS[self.game])}; search: "
                    f"{', '.join(sorted(SEARCH_BOTS))}")


@dataclass
class CycleRecord:
    cycle: int
    actions: dict = field(default_factory=dict)      # player name -> encoded action
    telemetry: list = field(default_factory=list)


@dataclass
class MatchRecord:
    config: dict
    outcome: str
    final_cycle: int
    cycles: list
    forfeited_by: Optional[str] = None
    budget_overshoot_ms: float = 0.0

    def to_jsonl(self) -> str:
        lines = [json.dumps({"config": self.config}, sort_keys=True)]
        for rec in self.cycles:
            lines.append(json.dumps(
                {"cycle": rec.cycle, "actions": rec.actions, "telemetry": rec.telemetry},
                sort_keys=True))
        lines.append(json.dumps({
            "outcome": self.outcome, "final_cycle": self.final_cycle,
            "forfeited_by": self.forfeited_by,
            "budget_overshoot_ms": round(self.budget_overshoot_ms, 3),
        }, sort_keys=True))
        return "\n".join(lines) + "\n"

    @staticmethod
    def from_jsonl(text: str) -> "MatchRecord":
        lines = [json.loads(line) for line in text.splitlines() if line.strip()]
        if len(lines) < 2 or "config" not in lines[0] or "outcome" not in lines[-1]:
            raise ConfigError("not a match record: expected config header and outcome footer")
        cycles = [CycleRecord(entry["cycle"], entry["actions"], entry.get("telemetry", []))
                  for entry in lines[1:-1]]
        footer = lines[-1]
        return MatchRecord(lines[0]["config"], footer["outcome"], footer["final_cycle"],
                           cycles, footer.get("forfeited_by"),
                           footer.get("budget_overshoot_ms", 0.0))

    def save(self, path) -> None:
        Path(path).write_text(self.to_jsonl())

    @staticmethod
    def load(path) -> "MatchRecord":
        return MatchRecord.from_jsonl(Path(path).read_text())


def build_game(config: MatchConfig):
    if config.game == "battlecity":
        game = load_map(config.arena)
        return game, game.initial_state()
    return load_scenario(config.arena)


def player_seed(config: MatchConfig, player: Player) -> int:
    return (config.seed * 1_000_003 + int(player) * 101 + 17) & 0x7FFFFFFF


def build_controller(name: str, model: GameModel, player: Player,
                     config: MatchConfig) -> Controller:
    seed = player_seed(config, player)
    if name in SEARCH_BOTS:
        clock = TickClock() if config.budget_ticks is not None else None
        return SearchController(model, player, variant=SEARCH_BOTS[name],
                                seed=seed, clock=clock)
    if config.game == "battlecity":
        bot = RandomBot(model, player, seed) if name == "random" else FollowerBot(model, player)
    else:
        bot = StochasticBot(model, player, seed) if name == "stochastic" else RushBot(model, player)
    return ScriptedController(model, player, bot)


def controller_budget(config: MatchConfig) -> float:
    return float(config.budget_ticks) if config.budget_ticks is not None else config.budget_ms


def run_match(config: MatchConfig) -> MatchRecord:
    """Play one full match; fully deterministic given the config and seed
    (with a tick budget even the search depth is reproducible)."""
    model, state = build_game(config)
    controllers = {p: build_controller(name, model, p, config)
                   for p, name in ((Player.MAX, config.max_bot), (Player.MIN, config.min_bot))}
    budget = controller_budget(config)

    cycles: list = []
    forfeited_by: Optional[Player] = None
    worst_overshoot = 0.0

    while forfeited_by is None:
        outcome = model.winner(state)
        if outcome is not Outcome.ONGOING or model.time(state) >= config.max_cycles:
            break
        snapshot = state
        record = CycleRecord(model.time(state))
        for player in Player:
            controller = controllers[player]
            wall_before = _time.perf_counter()
            try:
                action = controller.on_cycle(snapshot, budget)
            except Exception:
                forfeited_by = player
                break
            elapsed_ms = (_time.perf_counter() - wall_before) * 1000.0
            if config.budget_ticks is None:
                worst_overshoot = max(worst_overshoot, elapsed_ms - budget)
            if model.can_act(state, player):
                if action is None or action.is_empty:
                    action = model.noop_action(state, player)  # fallback: idle explicitly
                state = model.issue(state, action, player)
                record.actions[player.name.lower()] = model.encode_player_action(action)
            elif action is not None and not action.is_empty:
                forfeited_by = player  # acted out of turn: contract breach
                break
            record.telemetry.extend(controller.drain_telemetry())
        if forfeited_by is not None:
            cycles.append(record)
            break
        if record.actions or record.telemetry:
            cycles.append(record)
        state = model.simulate(state, model.time(state) + 1)

    if forfeited_by is not None:
        outcome = Outcome.win_for(forfeited_by.opponent)
    else:
        outcome = model.winner(state)
        if outcome is Outcome.ONGOING:
            outcome = Outcome.DRAW  # cycle cutoff
    return MatchRecord(
        config=asdict(config), outcome=outcome.value, final_cycle=model.time(state),
        cycles=cycles, forfeited_by=None if forfeited_by is None else forfeited_by.name.lower(),
        budget_overshoot_ms=max(0.0, worst_overshoot),
    )


def replay(record: MatchRecord) -> Outcome:
    """Re-simulate a record's action log; returns the outcome it reaches.

    Raises :class:`ConfigError` when the log cannot be reissued, which means
    the record does not belong to this engine/config."""
    config = MatchConfig(**record.config)
    model, state = build_game(config)
    by_cycle = {rec.cycle: rec for rec in record.cycles}
    while True:
        outcome = model.winner(state)
        if outcome is not Outcome.ONGOING or model.time(state) >= config.max_cycles:
            break
        rec = by_cycle.get(model.time(state))
        if rec is not None:
            for player in Player:
                encoded = rec.actions.get(player.name.lower())
                if encoded is not None:
                    action = model.decode_player_action(encoded)
                    state = model.issue(state, action, player)
        state = model.simulate(state, model.time(state) + 1)
    if record.forfeited_by is not None:
        return Outcome(record.outcome)  # forfeits are not re-simulated
    outcome = model.winner(state)
    if outcome is Outcome.ONGOING:
        outcome = Outcome.DRAW
    return outcome


def verify_replay(record: MatchRecord) -> bool:
    return replay(record) is Outcome(record.outcome)
