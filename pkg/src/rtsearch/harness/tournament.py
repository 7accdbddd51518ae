"""Round-robin tournaments with win/tie/loss tables.

Every unordered bot pairing (diagonal included) plays ``maps x reps``
games, sides alternating by repetition.  Cell (row R, column C) holds
column bot C's wins-ties-losses against row bot R, mirrored across the
diagonal; self-play cells count each game once from the MAX side's
perspective.  Per-match seeds derive from the master seed, so a table is
byte-reproducible (use tick budgets to pin search depth too).
"""

from __future__ import annotations

import io
import csv
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Callable, Optional, Sequence

from ..model import Outcome, Player
from .match import ConfigError, MatchConfig, MatchRecord, run_match


@dataclass
class TournamentTable:
    bots: list
    games_per_pairing: int
    cells: dict = field(default_factory=dict)  # (row, col) -> [win, tie, loss]

    def cell(self, row: str, col: str) -> list:
        return self.cells.setdefault((row, col), [0, 0, 0])

    def add_result(self, row_bot: str, col_bot: str, outcome_for_col: str) -> None:
        index = {"win": 0, "tie": 1, "loss": 2}[outcome_for_col]
        self.cell(row_bot, col_bot)[index] += 1

    def totals(self) -> dict:
        out = {}
        for bot in self.bots:
            acc = [0, 0, 0]
            for row in self.bots:
                w, t, l = self.cell(row, bot)
                acc[0] += w
                acc[1] += t
                acc[2] += l
            out[bot] = acc
        return out

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow([""] + list(self.bots))
        for row in self.bots:
            writer.writerow([row] + ["-".join(map(str, self.cell(row, col)))
                                     for col in self.bots])
        writer.writerow(["total"] + ["-".join(map(str, self.totals()[col]))
                                     for col in self.bots])
        return buf.getvalue()

    def to_text(self) -> str:
        names = list(self.bots)
        rows = [[""] + names]
        for row in names:
            rows.append([row] + ["-".join(map(str, self.cell(row, col))) for col in names])
        rows.append(["total"] + ["-".join(map(str, self.totals()[col])) for col in names])
        widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
        return "\n".join("  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip()
                         for r in rows) + "\n"


@dataclass(frozen=True)
class TournamentConfig:
    game: str
    bots: tuple
    arenas: tuple                  # map or scenario names
    reps: int = 10
    seed: int = 0
    budget_ms: float = 15.0
    budget_ticks: Optional[int] = None
    max_cycles: int = 5000
    jobs: int = 1

    def __post_init__(self):
        if not self.bots:
            raise ConfigError("at least one bot required")
        if not self.arenas:
            raise ConfigError("at least one map/scenario required")
        if self.reps <= 0:
            raise ConfigError("reps must be positive")


def _pairing_matches(config: TournamentConfig):
    """Deterministic schedule: (match_config, col_bot_is_max, row, col)."""
    schedule = []
    match_index = 0
    for i, col_bot in enumerate(config.bots):
        for j in range(i, len(config.bots)):
            row_bot = config.bots[j]
            for arena in config.arenas:
                for rep in range(config.reps):
                    col_is_max = rep % 2 == 0  # alternate sides by repetition
                    max_bot, min_bot = (col_bot, row_bot) if col_is_max else (row_bot, col_bot)
                    match_config = MatchConfig(
                        game=config.game, arena=arena, max_bot=max_bot, min_bot=min_bot,
                        budget_ms=config.budget_ms, budget_ticks=config.budget_ticks,
                        max_cycles=config.max_cycles,
                        seed=(config.seed * 1_000_003 + match_index) & 0x7FFFFFFF,
                        )
                    schedule.append((match_config, col_is_max, row_bot, col_bot))
                    match_index += 1
    return schedule


def run_tournament(config: TournamentConfig,
                   match_fn: Callable[[MatchConfig], MatchRecord] = run_match,
                   ) -> tuple:
    """Play the whole schedule; returns (table, records).

    With ``jobs > 1`` matches run in separate processes (only with the
    default match function); aggregation order stays deterministic.
    """
    schedule = _pairing_matches(config)
    configs = [entry[0] for entry in schedule]
    if config.jobs > 1 and match_fn is run_match:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            records = list(pool.map(run_match, configs, chunksize=4))
    else:
        records = [match_fn(c) for c in configs]

    table = TournamentTable(list(config.bots), len(config.arenas) * config.reps)
    for (match_config, col_is_max, row_bot, col_bot), record in zip(schedule, records):
        outcome = Outcome(record.outcome)
        if outcome is Outcome.DRAW:
            col_result = "tie"
        elif (outcome is Outcome.MAX_WINS) == col_is_max:
            col_result = "win"
        else:
            col_result = "loss"
        table.add_result(row_bot, col_bot, col_result)
        if row_bot != col_bot:
            mirror = {"win": "loss", "loss": "win", "tie": "tie"}[col_result]
            table.add_result(col_bot, row_bot, mirror)
    return table, records
