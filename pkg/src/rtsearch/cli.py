"""Command line interface: single matches, tournaments, telemetry stats,
and replay verification.

Exit codes: 0 on success, 1 on a failed replay verification, 2 on any
configuration error (unknown game/bot/map, malformed files, bad flags).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .battlecity import BUNDLED_MAPS, MapError
from .harness.match import ConfigError, MatchConfig, MatchRecord, run_match, verify_replay
from .harness.stats import collect_stats, render_csv, render_text
from .harness.tournament import TournamentConfig, run_tournament
from .microrts import ScenarioError
from .model import ContractViolation

BOT_CHOICES = ("random", "follower", "stochastic", "rush", "rtmm", "rrtmm")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rtsearch",
        description="Real-time adversarial search engine: matches, tournaments, stats, replays.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--game", required=True, choices=("battlecity", "microrts"))
        p.add_argument("--budget-ms", type=float, default=15.0,
                       help="per-cycle wall-clock search budget (default 15)")
        p.add_argument("--budget-ticks", type=int, default=None,
                       help="deterministic work-based budget; overrides --budget-ms")
        p.add_argument("--max-cycles", type=int, default=None,
                       help="draw cutoff in game cycles (default 5000, microrts 15000)")
        p.add_argument("--seed", type=int, default=0)

    m = sub.add_parser("match", help="play one match")
    add_common(m)
    m.add_argument("--map", "--scenario", dest="arena", required=True,
                   help=f"map/scenario name or file (bundled maps: {', '.join(BUNDLED_MAPS)}; "
                        f"scenarios: melee, full)")
    m.add_argument("--max-bot", required=True, choices=BOT_CHOICES)
    m.add_argument("--min-bot", required=True, choices=BOT_CHOICES)
    m.add_argument("--replay-out", default=None, help="write the replay/telemetry JSONL here")

    t = sub.add_parser("tournament", help="round-robin over bots and maps")
    add_common(t)
    t.add_argument("--maps", "--scenarios", dest="arenas", required=True,
                   help="comma-separated map/scenario names")
    t.add_argument("--bots", required=True, help="comma-separated bot names")
    t.add_argument("--reps", type=int, default=10)
    t.add_argument("--jobs", type=int, default=1, help="parallel match processes")
    t.add_argument("--out", default=None,
                   help="directory for table.txt, table.csv, and records.jsonl")

    s = sub.add_parser("stats", help="aggregate telemetry into a statistics table")
    s.add_argument("--in", dest="inputs", required=True, nargs="+",
                   help="replay/telemetry JSONL files")
    s.add_argument("--out", default=None, help="write the text table here (stdout otherwise)")
    s.add_argument("--csv", default=None, help="also write a CSV rendering here")

    r = sub.add_parser("replay", help="re-simulate a record and verify its outcome")
    r.add_argument("--in", dest="inputs", required=True, nargs="+")
    return parser


def default_max_cycles(game: str) -> int:
    # battlecity games cut off at 5000 cycles; micro-RTS draws after five
    # minutes of game time at 50 cycles per second
    return 15000 if game == "microrts" else 5000


def cmd_match(args) -> int:
    config = MatchConfig(
        game=args.game, arena=args.arena, max_bot=args.max_bot, min_bot=args.min_bot,
        budget_ms=args.budget_ms, budget_ticks=args.budget_ticks,
        max_cycles=args.max_cycles or default_max_cycles(args.game), seed=args.seed)
    record = run_match(config)
    print(f"outcome: {record.outcome}  final cycle: {record.final_cycle}"
          + (f"  (forfeit by {record.forfeited_by})" if record.forfeited_by else ""))
    if args.replay_out:
        record.save(args.replay_out)
        print(f"replay written to {args.replay_out}")
    return 0


def cmd_tournament(args) -> int:
    config = TournamentConfig(
        game=args.game, bots=tuple(args.bots.split(",")),
        arenas=tuple(args.arenas.split(",")), reps=args.reps, seed=args.seed,
        budget_ms=args.budget_ms, budget_ticks=args.budget_ticks,
        max_cycles=args.max_cycles or default_max_cycles(args.game), jobs=args.jobs)
    table, records = run_tournament(config)
    text = table.to_text()
    print(text, end="")
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "table.txt").write_text(text)
        (out / "table.csv").write_text(table.to_csv())
        with (out / "records.jsonl").open("w") as fh:
            for record in records:
                fh.write(record.to_jsonl())
        print(f"written to {out}/")
    return 0


def load_records(paths) -> list:
    records = []
    for path in paths:
        if not Path(path).is_file():
            raise ConfigError(f"no such file: {path}")
        text = Path(path).read_text()
        # a tournament records file concatenates per-match records
        chunk: list = []
        for line in text.splitlines():
            if not line.strip():
                continue
            if line.lstrip().startswith('{"config"') and chunk:
                records.append(MatchRecord.from_jsonl("\n".join(chunk)))
                chunk = []
            chunk.append(line)
        if chunk:
            records.append(MatchRecord.from_jsonl("\n".join(chunk)))
    return records


def cmd_stats(args) -> int:
    records = load_records(args.inputs)
    stats = collect_stats(records)
    text = render_text(stats)
    if args.out:
        Path(args.out).write_text(text)
    else:
        print(text, end="")
    if args.csv:
        Path(args.csv).write_text(render_csv(stats))
    return 0


def cmd_replay(args) -> int:
    status = 0
    for record in load_records(args.inputs):
        ok = verify_replay(record)
        label = f"{record.config.get('game')} {record.config.get('arena')} seed={record.config.get('seed')}"
        print(f"{'ok' if ok else 'MISMATCH'}: {label} -> {record.outcome} @ {record.final_cycle}")
        if not ok:
            status = 1
    return status


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {"match": cmd_match, "tournament": cmd_tournament,
                "stats": cmd_stats, "replay": cmd_replay}
    try:
        return handlers[args.command](args)
    except (ConfigError, MapError, ScenarioError, ContractViolation) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
