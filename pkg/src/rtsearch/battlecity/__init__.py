from .bots import FollowerBot, RandomBot, astar
from .maps import BUNDLED_MAPS, MapError, load_map, parse_map
from .rules import (
    BCAction,
    BCKind,
    BCState,
    BattleCityGame,
    Bullet,
    FIRE_CYCLES,
    MOVE_CYCLES,
    Structure,
    Tank,
    WIN_SENTINEL,
)

__all__ = [
    "BCAction", "BCKind", "BCState", "BattleCityGame", "Bullet", "FIRE_CYCLES",
    "FollowerBot", "BUNDLED_MAPS", "MapError", "MOVE_CYCLES", "RandomBot",
    "Structure", "Tank", "WIN_SENTINEL", "astar", "load_map", "parse_map",
]
