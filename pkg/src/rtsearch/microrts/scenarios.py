"""Experiment scenarios and the text-grid scenario format.

Legend (case is the owner, uppercase MAX): ``w``/``W`` worker, ``b``/``B``
base, ``k``/``K`` barracks, ``l``/``L`` light, ``h``/``H`` heavy, ``M``
mine (neutral), ``.`` empty.  Rows are newline-separated and rectangular.

Two bundled scenarios: an 8x8 four-versus-four melee with no economy, and
a full 8x8 game where each side starts with one worker and one base next
to a mirrored mine.
"""

from __future__ import annotations

from pathlib import Path

from ..model import Player
from .rules import NEUTRAL, MRState, MicroRTSGame, UnitType, idle_unit


class ScenarioError(ValueError):
    """Malformed scenario text or unknown scenario name."""


_UNIT_CHARS = {
    "w": UnitType.WORKER, "b": UnitType.BASE, "k": UnitType.BARRACKS,
    "l": UnitType.LIGHT, "h": UnitType.HEAVY,
}

MELEE_4V4_8X8 = "\n".join([
    "........",
    "........",
    "..H..h..",
    "..L..l..",
    "..L..l..",
    "..H..h..",
    "........",
    "........",
])

FULL_8X8 = "\n".join([
    "M.......",
    ".W......",
    "..B.....",
    "........",
    "........",
    ".....b..",
    "......w.",
    ".......M",
])

BUNDLED_SCENARIOS = {"melee": MELEE_4V4_8X8, "full": FULL_8X8}


def parse_scenario(text: str, starting_resources: int = 0):
    rows = [line for line in text.splitlines() if line.strip()]
    if not rows:
        raise ScenarioError("empty scenario")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ScenarioError("scenario rows must all have the same width")
    height = len(rows)

    units = []
    uid = 0
    for y, row in enumerate(rows):
        for x, ch in enumerate(row):
            pos = y * width + x
            if ch == ".":
                continue
            if ch == "M":
                units.append(idle_unit(uid, NEUTRAL, UnitType.MINE, pos))
            elif ch.lower() in _UNIT_CHARS:
                owner = Player.MAX if ch.isupper() else Player.MIN
                units.append(idle_unit(uid, int(owner), _UNIT_CHARS[ch.lower()], pos))
            else:
                raise ScenarioError(f"unknown scenario character {ch!r} at {x},{y}")
            uid += 1

    game = MicroRTSGame(width, height)
    state = MRState(0, tuple(units), (starting_resources, starting_resources), uid)
    return game, state


def make_scenario(kind: str):
    """Build a bundled scenario; ``kind`` is ``melee`` or ``full``."""
    if kind not in BUNDLED_SCENARIOS:
        raise ScenarioError(
            f"unknown scenario {kind!r}; available: {', '.join(sorted(BUNDLED_SCENARIOS))}")
    return parse_scenario(BUNDLED_SCENARIOS[kind])


def load_scenario(name_or_path: str):
    if name_or_path in BUNDLED_SCENARIOS:
        return make_scenario(name_or_path)
    path = Path(name_or_path)
    if not path.is_file():
        raise ScenarioError(f"no bundled scenario or file named {name_or_path!r}")
    return parse_scenario(path.read_text())
