from .bots import RushBot, StochasticBot
from .rules import (
    ATTACK_CYCLES,
    ActKind,
    COST,
    MAX_HP,
    MRAction,
    MRState,
    MicroRTSGame,
    NEUTRAL,
    TRAIN_CYCLES,
    UNIT_ACTION_CAPACITY,
    Unit,
    UnitType,
    idle_unit,
)
from .scenarios import (
    BUNDLED_SCENARIOS,
    ScenarioError,
    load_scenario,
    make_scenario,
    parse_scenario,
)

__all__ = [
    "ATTACK_CYCLES", "ActKind", "BUNDLED_SCENARIOS", "COST", "MAX_HP",
    "MRAction", "MRState", "MicroRTSGame", "NEUTRAL", "RushBot",
    "ScenarioError", "StochasticBot", "TRAIN_CYCLES", "UNIT_ACTION_CAPACITY",
    "Unit", "UnitType", "idle_unit", "load_scenario", "make_scenario",
    "parse_scenario",
]
