"""BattleCity: two tanks, two bases, destructible walls, bullets.

Each player controls one tank with two independent action channels: the
move channel (16-cycle moves in four directions) and the fire channel
(8-cycle cooldown shots), so a player can issue up to two basic-actions at
once.  Bullets travel one cell per cycle, destroying destructible walls,
tanks, and bases on contact.  A player wins when the opponent's tank or
base is destroyed; simultaneous mutual destruction is a draw.

Tanks reposition when a move completes; a move into a blocked cell still
consumes its full duration and completes as a no-op.  When both tanks
complete moves into the same cell on the same cycle, the lower unit id
wins and the other move no-ops.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from itertools import product
from typing import NamedTuple, Optional, Sequence

from ..model import (
    EMPTY_ACTION,
    ContractViolation,
    GameClock,
    GameModel,
    Outcome,
    Player,
    PlayerAction,
    SIMULATION_CAP,
    SimulationCapExceeded,
)

MOVE_CYCLES = 16
FIRE_CYCLES = 8
NOOP_CYCLES = 8
WIN_SENTINEL = 10**7

EMPTY, SOLID, DESTR = 0, 1, 2

# directions: up, down, left, right (also the deterministic tie-break order)
DX = (0, 0, -1, 1)
DY = (-1, 1, 0, 0)


class BCKind(IntEnum):
    MOVE_UP = 0
    MOVE_DOWN = 1
    MOVE_LEFT = 2
    MOVE_RIGHT = 3
    FIRE = 4
    NO_MOVE = 5
    NO_FIRE = 6


MOVE_KINDS = (BCKind.MOVE_UP, BCKind.MOVE_DOWN, BCKind.MOVE_LEFT, BCKind.MOVE_RIGHT)


@dataclass(frozen=True, order=True)
class BCAction:
    """One channel command.  ``unit`` is the channel id: player*2 for the
    move channel, player*2+1 for the fire channel."""

    unit: int
    kind: BCKind

    @property
    def player(self) -> Player:
        return Player(self.unit // 2)


class Tank(NamedTuple):
    pos: int
    facing: int
    move_eta: int
    fire_eta: int
    pending_dir: int  # -1 while the move channel runs a no-action
    alive: bool


class Structure(NamedTuple):
    pos: int
    alive: bool


class Bullet(NamedTuple):
    pos: int
    direction: int
    owner: int


class BCState(NamedTuple):
    clock: GameClock
    grid: bytes  # row-major wall layer; tanks/bases/bullets live separately
    tanks: tuple
    bases: tuple
    bullets: tuple


class BattleCityGame(GameModel):
    """Rules for one map.  States are value objects bound to this model's
    grid dimensions."""

    def __init__(self, width: int, height: int, grid: bytes,
                 tanks: Sequence[Tank], bases: Sequence[Structure],
                 noop_cycles: int = NOOP_CYCLES):
        self.width = width
        self.height = height
        self.noop_cycles = noop_cycles
        self._initial = BCState(0, grid, tuple(tanks), tuple(bases), ())
        # channel menus are state-independent; build every enumeration once
        self._menus = {}
        for p in Player:
            move_unit, fire_unit = 2 * p, 2 * p + 1
            moves = [BCAction(move_unit, k) for k in MOVE_KINDS]
            moves.append(BCAction(move_unit, BCKind.NO_MOVE))
            fires = [BCAction(fire_unit, BCKind.FIRE), BCAction(fire_unit, BCKind.NO_FIRE)]
            self._menus[p, True, True] = [PlayerAction(c) for c in product(moves, fires)]
            self._menus[p, True, False] = [PlayerAction((m,)) for m in moves]
            self._menus[p, False, True] = [PlayerAction((f,)) for f in fires]
            self._menus[p, False, False] = [EMPTY_ACTION]

    def initial_state(self) -> BCState:
        return self._initial

    # -- geometry helpers --

    def xy(self, pos: int) -> tuple[int, int]:
        return pos % self.width, pos // self.width

    def pos(self, x: int, y: int) -> int:
        return y * self.width + x

    def step_pos(self, pos: int, direction: int) -> Optional[int]:
        """Neighbouring cell in a direction, or None when out of bounds."""
        x = pos % self.width + DX[direction]
        y = pos // self.width + DY[direction]
        if 0 <= x < self.width and 0 <= y < self.height:
            return y * self.width + x
        return None

    def manhattan(self, a: int, b: int) -> int:
        ax, ay = a % self.width, a // self.width
        bx, by = b % self.width, b // self.width
        return abs(ax - bx) + abs(ay - by)

    # -- contract --

    def winner(self, state: BCState) -> Outcome:
        max_dead = not state.tanks[0].alive or not state.bases[0].alive
        min_dead = not state.tanks[1].alive or not state.bases[1].alive
        if max_dead and min_dead:
            return Outcome.DRAW
        if max_dead:
            return Outcome.MIN_WINS
        if min_dead:
            return Outcome.MAX_WINS
        return Outcome.ONGOING

    def can_act(self, state: BCState, player: Player) -> bool:
        if self.winner(state) is not Outcome.ONGOING:
            return False
        tank = state.tanks[player]
        return tank.move_eta == 0 or tank.fire_eta == 0

    def next_decision_time(self, state: BCState) -> GameClock:
        ta, tb = state.tanks
        if not (ta.alive and tb.alive and state.bases[0].alive and state.bases[1].alive):
            return state.clock
        if ta.move_eta == 0 or ta.fire_eta == 0 or tb.move_eta == 0 or tb.fire_eta == 0:
            return state.clock
        if state.bullets:
            # a bullet may end the game before any channel frees
            return self.simulate(state, None).clock
        return state.clock + min(ta.move_eta, ta.fire_eta, tb.move_eta, tb.fire_eta)

    def player_actions(self, state: BCState, player: Player):
        if self.winner(state) is not Outcome.ONGOING:
            return self._menus[player, False, False]
        tank = state.tanks[player]
        return self._menus[player, tank.move_eta == 0, tank.fire_eta == 0]

    def noop_action(self, state: BCState, player: Player) -> PlayerAction:
        if not self.can_act(state, player):
            return EMPTY_ACTION
        tank = state.tanks[player]
        parts = []
        if tank.move_eta == 0:
            parts.append(BCAction(2 * player, BCKind.NO_MOVE))
        if tank.fire_eta == 0:
            parts.append(BCAction(2 * player + 1, BCKind.NO_FIRE))
        return PlayerAction(parts)

    def issue(self, state: BCState, action: PlayerAction, player: Player) -> BCState:
        if action.is_empty:
            return state
        tank = state.tanks[player]
        ready = []
        if self.winner(state) is Outcome.ONGOING:
            if tank.move_eta == 0:
                ready.append(2 * player)
            if tank.fire_eta == 0:
                ready.append(2 * player + 1)
        if [a.unit for a in action] != ready:  # actions are unit-sorted already
            raise ContractViolation(
                f"action {action!r} does not cover exactly the ready channels of {player.name}")

        pos, facing = tank.pos, tank.facing
        move_eta, fire_eta, pending = tank.move_eta, tank.fire_eta, tank.pending_dir
        bullets = state.bullets
        # move channel comes first in unit order, so a same-cycle shot
        # leaves along the new facing
        for a in action:
            if a.unit == 2 * player:
                if a.kind in MOVE_KINDS:
                    facing = int(a.kind)
                    pending = int(a.kind)
                    move_eta = MOVE_CYCLES
                elif a.kind is BCKind.NO_MOVE:
                    pending = -1
                    move_eta = self.noop_cycles
                else:
                    raise ContractViolation(f"{a.kind.name} is not a move-channel action")
            else:
                if a.kind is BCKind.FIRE:
                    fire_eta = FIRE_CYCLES
                    bullets = bullets + (Bullet(pos, facing, int(player)),)
                elif a.kind is BCKind.NO_FIRE:
                    fire_eta = self.noop_cycles
                else:
                    raise ContractViolation(f"{a.kind.name} is not a fire-channel action")
        tanks = list(state.tanks)
        tanks[player] = Tank(pos, facing, move_eta, fire_eta, pending, tank.alive)
        return BCState(state.clock, state.grid, tuple(tanks), state.bases, bullets)

    def simulate(self, state: BCState, until: GameClock | None = None) -> BCState:
        if until is not None and until < state.clock:
            raise ContractViolation("cannot simulate into the past")
        cap = state.clock + SIMULATION_CAP if until is None else until

        # the cycle loop runs entirely on unpacked scalars; states are only
        # rebuilt at return (this is the engine's hottest path)
        clock = state.clock
        grid = state.grid
        grid_mutable = None
        ta, tb = state.tanks
        a_pos, a_facing, a_move, a_fire, a_pend, a_alive = ta
        b_pos, b_facing, b_move, b_fire, b_pend, b_alive = tb
        base_a, base_b = state.bases
        ba_pos, ba_alive = base_a
        bb_pos, bb_alive = base_b
        bullets = list(state.bullets)
        width = self.width
        n_cells = width * self.height
        dirty = False

        while True:
            if not (a_alive and b_alive and ba_alive and bb_alive):
                break
            if (a_move == 0 or a_fire == 0) or (b_move == 0 or b_fire == 0):
                break
            if clock >= cap:
                if until is None:
                    raise SimulationCapExceeded(f"no decision point within {SIMULATION_CAP} cycles")
                break

            clock += 1
            # 1. bullets advance one cell, colliding on entry
            if bullets:
                survivors = []
                lookup = grid_mutable if grid_mutable is not None else grid
                for pos, d, owner in bullets:
                    if d == 0:
                        np = pos - width
                        if np < 0:
                            continue
                    elif d == 1:
                        np = pos + width
                        if np >= n_cells:
                            continue
                    elif d == 2:
                        np = pos - 1
                        if pos % width == 0:
                            continue
                    else:
                        np = pos + 1
                        if np % width == 0:
                            continue
                    cell = lookup[np]
                    if cell == SOLID:
                        continue
                    if cell == DESTR:
                        if grid_mutable is None:
                            grid_mutable = bytearray(grid)
                            lookup = grid_mutable
                        grid_mutable[np] = EMPTY
                        continue
                    if a_alive and a_pos == np:
                        a_alive = False
                        dirty = True
                        continue
                    if b_alive and b_pos == np:
                        b_alive = False
                        dirty = True
                        continue
                    if ba_alive and ba_pos == np:
                        ba_alive = False
                        dirty = True
                        continue
                    if bb_alive and bb_pos == np:
                        bb_alive = False
                        dirty = True
                        continue
                    survivors.append((np, d, owner, pos))
                # head-on swaps annihilate, then same-cell pileups
                if len(survivors) > 1:
                    dead = set()
                    for i in range(len(survivors)):
                        pi, _, _, oi = survivors[i]
                        for j in range(i + 1, len(survivors)):
                            pj, _, _, oj = survivors[j]
                            if pi == oj and pj == oi:
                                dead.add(i)
                                dead.add(j)
                    counts: dict = {}
                    for pos, _, _, _ in survivors:
                        counts[pos] = counts.get(pos, 0) + 1
                    bullets = [(pos, d, owner)
                               for i, (pos, d, owner, _) in enumerate(survivors)
                               if i not in dead and counts[pos] == 1]
                else:
                    bullets = [(pos, d, owner) for pos, d, owner, _ in survivors]
                dirty = True

            # 2. channel countdowns and move completions, ascending unit id
            for is_a in (True, False):
                if is_a:
                    if not a_alive:
                        continue
                    pos, move_eta, fire_eta, pending = a_pos, a_move, a_fire, a_pend
                else:
                    if not b_alive:
                        continue
                    pos, move_eta, fire_eta, pending = b_pos, b_move, b_fire, b_pend
                if fire_eta > 0:
                    fire_eta -= 1
                    dirty = True
                if move_eta > 0:
                    move_eta -= 1
                    dirty = True
                    if move_eta == 0 and pending >= 0:
                        np = self.step_pos(pos, pending)
                        lookup = grid_mutable if grid_mutable is not None else grid
                        blocked = (
                            np is None
                            or lookup[np] != EMPTY
                            or (a_alive and a_pos == np) or (b_alive and b_pos == np)
                            or (ba_alive and ba_pos == np) or (bb_alive and bb_pos == np)
                        )
                        if not blocked:
                            pos = np
                            for bi, (bpos, _, _) in enumerate(bullets):
                                if bpos == np:
                                    # driving onto a bullet is fatal
                                    if is_a:
                                        a_alive = False
                                    else:
                                        b_alive = False
                                    del bullets[bi]
                                    break
                        pending = -1
                if is_a:
                    a_pos, a_move, a_fire, a_pend = pos, move_eta, fire_eta, pending
                else:
                    b_pos, b_move, b_fire, b_pend = pos, move_eta, fire_eta, pending

        if clock == state.clock and not dirty:
            return state
        if grid_mutable is not None:
            grid = bytes(grid_mutable)
        return BCState(
            clock, grid,
            (Tank(a_pos, a_facing, a_move, a_fire, a_pend, a_alive),
             Tank(b_pos, b_facing, b_move, b_fire, b_pend, b_alive)),
            (Structure(ba_pos, ba_alive), Structure(bb_pos, bb_alive)),
            tuple(Bullet(*b) for b in bullets))

    def eta(self, action: BCAction, state: BCState) -> GameClock:
        player = action.player
        tank = state.tanks[player]
        if action.unit == 2 * player:  # move channel
            if tank.move_eta > 0:
                executing = (
                    (action.kind in MOVE_KINDS and tank.pending_dir == int(action.kind))
                    or (action.kind is BCKind.NO_MOVE and tank.pending_dir == -1)
                )
                if not executing:
                    raise ContractViolation(f"{action!r} is neither executing nor issuable")
                return tank.move_eta
            return MOVE_CYCLES if action.kind in MOVE_KINDS else self.noop_cycles
        if tank.fire_eta > 0:
            return tank.fire_eta
        return FIRE_CYCLES if action.kind is BCKind.FIRE else self.noop_cycles

    def evaluate(self, state: BCState) -> float:
        outcome = self.winner(state)
        if outcome is Outcome.MAX_WINS:
            return WIN_SENTINEL - state.clock
        if outcome is Outcome.MIN_WINS:
            return -WIN_SENTINEL + state.clock
        if outcome is Outcome.DRAW:
            return 0.0
        enemy_to_our_base = self.manhattan(state.tanks[1].pos, state.bases[0].pos)
        us_to_enemy_base = self.manhattan(state.tanks[0].pos, state.bases[1].pos)
        return float(enemy_to_our_base - us_to_enemy_base)

    @property
    def min_action_duration(self) -> GameClock:
        return min(MOVE_CYCLES, FIRE_CYCLES, self.noop_cycles)

    def encode_action(self, action: BCAction) -> list:
        return [action.unit, action.kind.name]

    def decode_action(self, data: list) -> BCAction:
        return BCAction(int(data[0]), BCKind[data[1]])

    # -- queries used by bots --

    def line_of_fire_hits_own_base(self, state: BCState, player: Player,
                                   from_pos: int, direction: int) -> bool:
        """Walk the firing ray; True when the first thing it would hit is the
        shooter's own base.  Walls of either kind shield the base."""
        base = state.bases[player]
        enemy_tank = state.tanks[player.opponent]
        enemy_base = state.bases[player.opponent]
        pos = from_pos
        while True:
            pos = self.step_pos(pos, direction)
            if pos is None:
                return False
            if state.grid[pos] != EMPTY:
                return False
            if base.alive and pos == base.pos:
                return True
            if (enemy_tank.alive and pos == enemy_tank.pos) or \
               (enemy_base.alive and pos == enemy_base.pos):
                return False
