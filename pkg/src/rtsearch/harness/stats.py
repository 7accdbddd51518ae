"""Aggregate per-decision search telemetry into a per-domain statistics
table: search time range, branching range, biggest tree, deepest lookahead
(reported in seconds of game time at the configured cycle rate)."""

from __future__ import annotations

import io
import csv
from dataclasses import dataclass
from typing import Iterable, Optional

from .match import MatchRecord


@dataclass
class DomainStats:
    domain: str
    decisions: int = 0
    min_search_ms: Optional[float] = None
    max_search_ms: Optional[float] = None
    min_branching: Optional[int] = None
    max_branching: Optional[int] = None
    max_leaves: int = 0
    max_lookahead_cycles: int = 0
    cycles_per_second: int = 50

    @property
    def max_lookahead_seconds(self) -> float:
        return self.max_lookahead_cycles / self.cycles_per_second

    def absorb(self, entry: dict) -> None:
        self.decisions += 1
        wall = entry.get("wall_ms", 0.0)
        if self.min_search_ms is None or wall < self.min_search_ms:
            self.min_search_ms = wall
        if self.max_search_ms is None or wall > self.max_search_ms:
            self.max_search_ms = wall
        branching_high = entry.get("max_branching", 0)
        branching_low = entry.get("min_branching", 0)
        if branching_high:
            if self.max_branching is None or branching_high > self.max_branching:
                self.max_branching = branching_high
        if branching_low:
            if self.min_branching is None or branching_low < self.min_branching:
                self.min_branching = branching_low
        if entry.get("max_leaves", 0) > self.max_leaves:
            self.max_leaves = entry["max_leaves"]
        if entry.get("lookahead_cycles", 0) > self.max_lookahead_cycles:
            self.max_lookahead_cycles = entry["lookahead_cycles"]


def telemetry_entries(record: MatchRecord):
    for cycle in record.cycles:
        for entry in cycle.telemetry:
            yield entry


def collect_stats(records: Iterable[MatchRecord]) -> dict:
    """Per-domain aggregation keyed by game id; empty input, empty table."""
    stats: dict = {}
    for record in records:
        domain = record.config.get("game", "?")
        cps = record.config.get("cycles_per_second", 50)
        bucket = stats.setdefault(domain, DomainStats(domain, cycles_per_second=cps))
        for entry in telemetry_entries(record):
            bucket.absorb(entry)
    return stats


def _fmt_ms(value: Optional[float]) -> str:
    if value is None:
        return "-"
    return f"{value / 1000:.2f}s" if value >= 1000 else f"{value:.0f}ms"


def render_text(stats: dict) -> str:
    domains = sorted(stats)
    header = [""] + domains
    lines = [
        ["Search Time"] + [f"{_fmt_ms(stats[d].min_search_ms)} - {_fmt_ms(stats[d].max_search_ms)}"
                           for d in domains],
        ["Branching"] + [f"{stats[d].min_branching or '-'} - {stats[d].max_branching or '-'}"
                         for d in domains],
        ["Max Leaves"] + [str(stats[d].max_leaves) for d in domains],
        ["Max Depth"] + [f"{stats[d].max_lookahead_seconds:.2f}s" for d in domains],
        ["Decisions"] + [str(stats[d].decisions) for d in domains],
    ]
    rows = [header] + lines
    widths = [max(len(str(r[i])) for r in rows) for i in range(len(header))]
    return "\n".join("  ".join(str(cell).ljust(w) for cell, w in zip(row, widths)).rstrip()
                     for row in rows) + "\n"


def render_csv(stats: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["domain", "decisions", "min_search_ms", "max_search_ms",
                     "min_branching", "max_branching", "max_leaves",
                     "max_lookahead_cycles", "max_lookahead_seconds"])
    for domain in sorted(stats):
        s = stats[domain]
        writer.writerow([domain, s.decisions, s.min_search_ms, s.max_search_ms,
                         s.min_branching, s.max_branching, s.max_leaves,
                         s.max_lookahead_cycles, f"{s.max_lookahead_seconds:.3f}"])
    return buf.getvalue()
