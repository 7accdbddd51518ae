"""Scripted micro-RTS baselines.

``StochasticBot`` samples a weighted action category per ready unit with a
strong bias toward attacking, producing, and closing on the enemy.
``RushBot`` runs a fixed light-rush script: workers harvest, one barracks
goes up at five resources, the barracks trains light units nonstop, and
every combat unit marches at the nearest enemy.
"""

from __future__ import annotations

from random import Random
from typing import Optional

from ..model import EMPTY_ACTION, Player, PlayerAction
from .rules import (
    ActKind,
    COST,
    MRAction,
    MRState,
    MicroRTSGame,
    NEUTRAL,
    UnitType,
)

# category weights: attack : train/build : move-toward-enemy : anything else
CATEGORY_WEIGHTS = (
    ("attack", 5),
    ("produce", 3),
    ("approach", 2),
    ("other", 1),
)


def nearest(model: MicroRTSGame, from_pos: int, candidates) -> Optional[object]:
    """Closest unit by Manhattan distance, ties to the lowest uid."""
    best = None
    best_key = None
    for unit in candidates:
        key = (model.manhattan(from_pos, unit.pos), unit.uid)
        if best_key is None or key < best_key:
            best, best_key = unit, key
    return best


def greedy_step_dirs(model: MicroRTSGame, from_pos: int, target_pos: int) -> list:
    """All four directions ordered by resulting distance to the target,
    ties in up/down/left/right order."""
    ranked = []
    for d in range(4):
        np = model.step_pos(from_pos, d)
        if np is None:
            continue
        ranked.append((model.manhattan(np, target_pos), d, np))
    ranked.sort()
    return ranked


class StochasticBot:
    def __init__(self, model: MicroRTSGame, player: Player, seed: int = 0):
        self.model = model
        self.player = player
        self.rng = Random(seed)

    def act(self, state: MRState) -> PlayerAction:
        ready = self.model.ready_units(state, self.player)
        if not ready:
            return EMPTY_ACTION
        occ = self.model.occupancy(state.units)
        enemies = [u for u in state.units
                   if u.owner not in (self.player, NEUTRAL)]
        parts = []
        for unit in ready:
            menu = self.model.unit_menu(state, unit, occ)
            parts.append(self._pick(unit, menu, enemies))
        return PlayerAction(tuple(parts))

    def _pick(self, unit, menu, enemies) -> MRAction:
        target = nearest(self.model, unit.pos, enemies)
        toward = set()
        if target is not None:
            here = self.model.manhattan(unit.pos, target.pos)
            for a in menu:
                if a.kind is ActKind.MOVE:
                    np = self.model.step_pos(unit.pos, a.direction)
                    if self.model.manhattan(np, target.pos) < here:
                        toward.add(a)
        buckets = {
            "attack": [a for a in menu if a.kind is ActKind.ATTACK],
            "produce": [a for a in menu if a.kind in (ActKind.TRAIN, ActKind.BUILD)],
            "approach": [a for a in menu if a in toward],
        }
        claimed = set(buckets["attack"]) | set(buckets["produce"]) | toward
        buckets["other"] = [a for a in menu if a not in claimed]
        available = [(name, weight) for name, weight in CATEGORY_WEIGHTS
                     if buckets[name]]
        total = sum(w for _, w in available)
        roll = self.rng.random() * total
        for name, weight in available:
            roll -= weight
            if roll < 0:
                choices = buckets[name]
                return choices[self.rng.randrange(len(choices))]
        return buckets[available[-1][0]][-1]  # unreachable numeric guard


class RushBot:
    def __init__(self, model: MicroRTSGame, player: Player):
        self.model = model
        self.player = player

    def act(self, state: MRState) -> PlayerAction:
        ready = self.model.ready_units(state, self.player)
        if not ready:
            return EMPTY_ACTION
        occ = self.model.occupancy(state.units)
        parts = []
        barracks_pending = any(
            u.owner == self.player and (
                u.type == UnitType.BARRACKS
                or (u.busy == int(ActKind.BUILD) and u.produce == int(UnitType.BARRACKS)))
            for u in state.units)
        for unit in ready:
            menu = self.model.unit_menu(state, unit, occ)
            utype = UnitType(unit.type)
            if utype is UnitType.WORKER:
                action = self._worker(state, unit, menu, barracks_pending)
                if action.kind is ActKind.BUILD:
                    barracks_pending = True  # only one builder per cycle
            elif utype is UnitType.BARRACKS:
                action = self._first(menu, ActKind.TRAIN, produce=int(UnitType.LIGHT)) \
                    or MRAction(unit.uid, ActKind.NOOP)
            elif utype in (UnitType.LIGHT, UnitType.HEAVY):
                action = self._combat(state, unit, menu)
            else:  # BASE idles: the script spends everything on the rush
                action = MRAction(unit.uid, ActKind.NOOP)
            parts.append(action)
        return PlayerAction(tuple(parts))

    @staticmethod
    def _first(menu, kind, produce=None) -> Optional[MRAction]:
        for a in menu:
            if a.kind is kind and (produce is None or a.produce == produce):
                return a
        return None

    def _worker(self, state, unit, menu, barracks_pending) -> MRAction:
        if not barracks_pending and state.res[self.player] >= COST[UnitType.BARRACKS]:
            build = self._first(menu, ActKind.BUILD, produce=int(UnitType.BARRACKS))
            if build is not None:
                return build
        if unit.carrying:
            deposit = self._first(menu, ActKind.RETURN)
            if deposit is not None:
                return deposit
            depots = [u for u in state.units
                      if u.owner == self.player and u.type == UnitType.BASE]
            step = self._step_toward(state, unit, menu, depots)
            if step is not None:
                return step
        else:
            dig = self._first(menu, ActKind.HARVEST)
            if dig is not None:
                return dig
            mines = [u for u in state.units if u.type == UnitType.MINE]
            step = self._step_toward(state, unit, menu, mines)
            if step is not None:
                return step
        return self._combat(state, unit, menu)  # no economy: fight instead

    def _combat(self, state, unit, menu) -> MRAction:
        enemies = [u for u in state.units if u.owner not in (self.player, NEUTRAL)]
        target = nearest(self.model, unit.pos, enemies)
        if target is not None:
            for a in menu:
                if a.kind is ActKind.ATTACK and a.target == target.uid:
                    return a
            attacks = [a for a in menu if a.kind is ActKind.ATTACK]
            if attacks:
                return attacks[0]
        step = self._step_toward(state, unit, menu, enemies)
        if step is not None:
            return step
        return MRAction(unit.uid, ActKind.NOOP)

    def _step_toward(self, state, unit, menu, targets) -> Optional[MRAction]:
        target = nearest(self.model, unit.pos, targets)
        if target is None:
            return None
        moves = {a.direction: a for a in menu if a.kind is ActKind.MOVE}
        for _, d, _np in greedy_step_dirs(self.model, unit.pos, target.pos):
            if d in moves:
                return moves[d]
        return None
