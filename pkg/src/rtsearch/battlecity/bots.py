"""Scripted BattleCity baselines.

``RandomBot`` moves at random and fires whenever the fire channel is ready,
unless its own base sits in the line of fire.  ``FollowerBot`` runs A* to
the nearer of the enemy tank and enemy base and follows the path, firing
under the same base-safety rule.
"""

from __future__ import annotations

import heapq
from random import Random
from typing import Optional

from ..model import EMPTY_ACTION, Player, PlayerAction
from .rules import (
    DX,
    DY,
    EMPTY,
    MOVE_KINDS,
    BCAction,
    BCKind,
    BCState,
    BattleCityGame,
)


class RandomBot:
    def __init__(self, model: BattleCityGame, player: Player, seed: int = 0):
        self.model = model
        self.player = player
        self.rng = Random(seed)

    def act(self, state: BCState) -> PlayerAction:
        tank = state.tanks[self.player]
        parts = []
        facing = tank.facing
        if tank.move_eta == 0:
            direction = self.rng.randrange(4)
            facing = direction
            parts.append(BCAction(2 * self.player, MOVE_KINDS[direction]))
        if tank.fire_eta == 0:
            parts.append(_fire_or_hold(self.model, state, self.player, tank.pos, facing))
        return PlayerAction(parts) if parts else EMPTY_ACTION


class FollowerBot:
    def __init__(self, model: BattleCityGame, player: Player):
        self.model = model
        self.player = player

    def act(self, state: BCState) -> PlayerAction:
        tank = state.tanks[self.player]
        parts = []
        facing = tank.facing
        if tank.move_eta == 0:
            direction = self._chase_direction(state, tank.pos)
            if direction is None:
                parts.append(BCAction(2 * self.player, BCKind.NO_MOVE))
            else:
                facing = direction
                parts.append(BCAction(2 * self.player, MOVE_KINDS[direction]))
        if tank.fire_eta == 0:
            parts.append(_fire_or_hold(self.model, state, self.player, tank.pos, facing))
        return PlayerAction(parts) if parts else EMPTY_ACTION

    def _chase_direction(self, state: BCState, start: int) -> Optional[int]:
        enemy = self.player.opponent
        enemy_tank = state.tanks[enemy]
        enemy_base = state.bases[enemy]
        paths = []
        if enemy_tank.alive:
            paths.append(astar(self.model, state, start, enemy_tank.pos))
        if enemy_base.alive:
            paths.append(astar(self.model, state, start, enemy_base.pos))
        paths = [p for p in paths if p]
        if not paths:
            return None
        best = min(paths, key=len)  # tank target wins length ties (listed first)
        step = best[0]
        for d in range(4):
            if self.model.step_pos(start, d) == step:
                return d
        return None


def _fire_or_hold(model: BattleCityGame, state: BCState, player: Player,
                  pos: int, facing: int) -> BCAction:
    unit = 2 * player + 1
    if model.line_of_fire_hits_own_base(state, player, pos, facing):
        return BCAction(unit, BCKind.NO_FIRE)
    return BCAction(unit, BCKind.FIRE)


def passable(model: BattleCityGame, state: BCState, player: Player,
             pos: int, goal: int) -> bool:
    """Pathing rule: walls of either kind block, as do both bases and the
    enemy tank, except when the blocking entity is the goal itself."""
    if pos == goal:
        return True
    if state.grid[pos] != EMPTY:
        return False
    for base in state.bases:
        if base.alive and base.pos == pos:
            return False
    enemy_tank = state.tanks[player.opponent]
    if enemy_tank.alive and enemy_tank.pos == pos:
        return False
    return True


def astar(model: BattleCityGame, state: BCState, start: int, goal: int,
          player: Optional[Player] = None) -> Optional[list[int]]:
    """Shortest 4-connected path from start to goal (excluding start),
    Manhattan heuristic, neighbours expanded in up/down/left/right order
    and f-ties broken first-in-first-out.  None when unreachable."""
    if player is None:
        player = Player.MAX if state.tanks[0].pos == start else Player.MIN
    if start == goal:
        return []
    counter = 0
    open_heap = [(model.manhattan(start, goal), 0, 0, start)]
    g_best = {start: 0}
    parent = {}
    while open_heap:
        f, g, _, pos = heapq.heappop(open_heap)
        if pos == goal:
            path = [pos]
            while parent[path[-1]] != start:
                path.append(parent[path[-1]])
            return path[::-1]
        if g > g_best.get(pos, g):
            continue
        for d in range(4):
            np = model.step_pos(pos, d)
            if np is None or not passable(model, state, player, np, goal):
                continue
            ng = g + 1
            if ng < g_best.get(np, ng + 1):
                g_best[np] = ng
                parent[np] = pos
                counter += 1
                heapq.heappush(open_heap, (ng + model.manhattan(np, goal), ng, counter, np))
    return None
