"""Real-time adversarial game-tree search over durative-action games.

The package bundles the search algorithms (plain, alpha-beta, and
randomized-alpha-beta real-time minimax with iterative deepening), two
reference games (BattleCity and a micro real-time-strategy game), four
scripted baseline bots, and a match/tournament harness with a CLI.
"""

from .model import (
    EMPTY_ACTION,
    ContractViolation,
    Evaluator,
    GameClock,
    GameModel,
    Outcome,
    Player,
    PlayerAction,
    SimulationCapExceeded,
)
from .search import (
    SearchResult,
    SearchSession,
    SessionStatus,
    TickClock,
    Variant,
    next_cutoff,
    rrtmm,
    rtmm,
    rtmm_alphabeta,
)

__all__ = [
    "EMPTY_ACTION",
    "ContractViolation",
    "Evaluator",
    "GameClock",
    "GameModel",
    "Outcome",
    "Player",
    "PlayerAction",
    "SimulationCapExceeded",
    "SearchResult",
    "SearchSession",
    "SessionStatus",
    "TickClock",
    "Variant",
    "next_cutoff",
    "rrtmm",
    "rtmm",
    "rtmm_alphabeta",
]

__version__ = "0.1.0"
