from .controllers import Controller, ScriptedController, SearchController
from .match import (
    ConfigError,
    CycleRecord,
    MatchConfig,
    MatchRecord,
    build_controller,
    build_game,
    replay,
    run_match,
    verify_replay,
)
from .stats import DomainStats, collect_stats, render_csv, render_text
from .tournament import TournamentConfig, TournamentTable, run_tournament

__all__ = [
    "ConfigError", "Controller", "CycleRecord", "DomainStats", "MatchConfig",
    "MatchRecord", "ScriptedController", "SearchController", "TournamentConfig",
    "TournamentTable", "build_controller", "build_game", "collect_stats",
    "render_csv", "render_text", "replay", "run_match", "run_tournament",
    "verify_replay",
]
