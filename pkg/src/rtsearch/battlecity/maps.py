"""Text map format and the bundled map set.

Legend: ``#`` solid wall, ``%`` destructible wall, ``.`` empty, ``A``/``a``
MAX tank/base, ``B``/``b`` MIN tank/base.  Maps are rectangular,
newline-separated rows.  The bundled set spans 18x18 to 26x18 tiles; all
layouts are 180-degree rotationally symmetric so sides are fair.
"""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from .rules import DESTR, EMPTY, SOLID, BattleCityGame, Structure, Tank


class MapError(ValueError):
    """Malformed map text or unknown map name."""


BUNDLED_MAPS = ("open18", "pillars20", "lanes22", "fortress24", "arena26", "maze18")

_CELL = {".": EMPTY, "#": SOLID, "%": DESTR}


def parse_map(text: str, noop_cycles: int = 8) -> BattleCityGame:
    rows = [line for line in text.splitlines() if line.strip()]
    if not rows:
        raise MapError("empty map")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise MapError("map rows must all have the same width")
    height = len(rows)

    grid = bytearray(width * height)
    tanks: dict[str, int] = {}
    bases: dict[str, int] = {}
    for y, row in enumerate(rows):
        for x, ch in enumerate(row):
            pos = y * width + x
            if ch in _CELL:
                grid[pos] = _CELL[ch]
            elif ch in "AB":
                if ch in tanks:
                    raise MapError(f"duplicate tank {ch!r}")
                tanks[ch] = pos
            elif ch in "ab":
                if ch in bases:
                    raise MapError(f"duplicate base {ch!r}")
                bases[ch] = pos
            else:
                raise MapError(f"unknown map character {ch!r} at {x},{y}")
    missing = {"A", "B"} - set(tanks) or {"a", "b"} - set(bases)
    if missing:
        raise MapError(f"map is missing {sorted(missing)}")

    up = 0
    return BattleCityGame(
        width, height, bytes(grid),
        tanks=[Tank(tanks["A"], up, 0, 0, -1, True), Tank(tanks["B"], up, 0, 0, -1, True)],
        bases=[Structure(bases["a"], True), Structure(bases["b"], True)],
        noop_cycles=noop_cycles,
    )


def bundled_map_text(name: str) -> str:
    if name not in BUNDLED_MAPS:
        raise MapError(f"unknown bundled map {name!r}; available: {', '.join(BUNDLED_MAPS)}")
    return resources.files(__package__).joinpath(f"maps/{name}.txt").read_text()


def load_map(name_or_path: str, noop_cycles: int = 8) -> BattleCityGame:
    """Load a bundled map by name or any map file by path."""
    if name_or_path in BUNDLED_MAPS:
        return parse_map(bundled_map_text(name_or_path), noop_cycles)
    path = Path(name_or_path)
    if not path.is_file():
        raise MapError(f"no bundled map or file named {name_or_path!r}")
    return parse_map(path.read_text(), noop_cycles)
