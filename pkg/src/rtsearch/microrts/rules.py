"""Micro real-time-strategy game on an n x m grid with six unit types.

Workers harvest neighbouring mines, return resources to bases, and build
buildings; bases train workers; barracks train light and heavy combat
units; combat units and workers attack adjacent enemies.  Every action is
durative with a deterministic length, and effects (movement, damage, new
units, deposits) land when the action completes.  A player loses when they
have no units left (buildings count, mines are neutral and indestructible).

Cross-product action enumeration keeps conflicting combinations (two units
moving into one cell, joint overdrafts); conflicts resolve inside
``simulate``/``issue`` in ascending unit id, the loser completing as a
no-op that still consumes its duration.  Failed funded builds and trains
refund their cost so resources are conserved.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
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

DX = (0, 0, -1, 1)  # up, down, left, right
DY = (-1, 1, 0, 0)

NEUTRAL = -1
WIN_SENTINEL = 10**7


class UnitType(IntEnum):
    WORKER = 0
    LIGHT = 1
    HEAVY = 2
    BASE = 3
    BARRACKS = 4
    MINE = 5


class ActKind(IntEnum):
    MOVE = 0
    HARVEST = 1
    RETURN = 2
    BUILD = 3
    TRAIN = 4
    ATTACK = 5
    NOOP = 6


COST = {UnitType.WORKER: 1, UnitType.LIGHT: 2, UnitType.HEAVY: 3,
        UnitType.BASE: 10, UnitType.BARRACKS: 5}
MAX_HP = {UnitType.WORKER: 1, UnitType.LIGHT: 4, UnitType.HEAVY: 8,
          UnitType.BASE: 10, UnitType.BARRACKS: 4, UnitType.MINE: 1}
ATTACK_DAMAGE = {UnitType.WORKER: 1, UnitType.LIGHT: 2, UnitType.HEAVY: 4}
MOVE_CYCLES = {UnitType.WORKER: 10, UnitType.LIGHT: 8, UnitType.HEAVY: 12}
TRAIN_CYCLES = {UnitType.WORKER: 100, UnitType.LIGHT: 80, UnitType.HEAVY: 120}
TRAINS = {UnitType.BASE: (UnitType.WORKER,),
          UnitType.BARRACKS: (UnitType.LIGHT, UnitType.HEAVY)}
BUILDS = (UnitType.BASE, UnitType.BARRACKS)  # what a worker may construct
ATTACK_CYCLES = 5
HARVEST_CYCLES = 20
RETURN_CYCLES = 10
BUILD_CYCLES = 100
NOOP_CYCLES = 10
ATTACK_RANGE = 1

#: Theoretical per-cycle menu size by type, explicit no-action excluded.
#: The worker tops out the whole game at 24 (4 moves + 4 harvests +
#: 4 returns + 2x4 builds + 4 attacks); grids cannot realize it, but no
#: enumeration may ever exceed it.
UNIT_ACTION_CAPACITY = {
    UnitType.WORKER: 4 + 4 + 4 + len(BUILDS) * 4 + 4,
    UnitType.LIGHT: 4 + 4,
    UnitType.HEAVY: 4 + 4,
    UnitType.BASE: len(TRAINS[UnitType.BASE]) * 4,
    UnitType.BARRACKS: len(TRAINS[UnitType.BARRACKS]) * 4,
    UnitType.MINE: 0,
}


@dataclass(frozen=True, order=True)
class MRAction:
    unit: int
    kind: ActKind
    direction: int = -1
    produce: int = -1  # UnitType for BUILD/TRAIN
    target: int = -1   # victim uid for ATTACK


class Unit(NamedTuple):
    uid: int
    owner: int  # Player value, or NEUTRAL for mines
    type: int
    pos: int
    hp: int
    carrying: int
    busy: int      # ActKind, -1 when idle
    eta: int
    direction: int
    produce: int
    funded: bool   # False when a build/train lost the funding race


class MRState(NamedTuple):
    clock: GameClock
    units: tuple  # ascending uid
    res: tuple    # stockpiles, indexed by Player
    next_uid: int


def idle_unit(uid: int, owner: int, utype: UnitType, pos: int,
              hp: Optional[int] = None, carrying: int = 0) -> Unit:
    return Unit(uid, owner, int(utype), pos, MAX_HP[utype] if hp is None else hp,
                carrying, -1, 0, -1, -1, True)


class ActionSpace(Sequence):
    """Cross product of per-unit menus, materialized lazily.

    Mid-game enumeration can run to tens of thousands of player-actions;
    length is the product of menu sizes and items decode by mixed radix, so
    search can read the branching factor and abort part-way without ever
    building the whole list.
    """

    def __init__(self, menus: Sequence[Sequence[MRAction]]):
        self._menus = menus
        n = 1
        for menu in menus:
            n *= len(menu)
        self._len = n

    def __len__(self) -> int:
        return self._len

    def __getitem__(self, index: int) -> PlayerAction:
        if not 0 <= index < self._len:
            raise IndexError(index)
        parts = []
        for menu in reversed(self._menus):
            index, choice = divmod(index, len(menu))
            parts.append(menu[choice])
        return PlayerAction(tuple(reversed(parts)))

    def __iter__(self):
        def walk(prefix, rest):
            if not rest:
                yield PlayerAction(prefix)
                return
            for item in rest[0]:
                yield from walk(prefix + (item,), rest[1:])
        return walk((), tuple(self._menus))


class MicroRTSGame(GameModel):
    def __init__(self, width: int, height: int):
        self.width = width
        self.height = height

    # -- geometry --

    def step_pos(self, pos: int, direction: int) -> Optional[int]:
        x = pos % self.width + DX[direction]
        y = pos // self.width + DY[direction]
        if 0 <= x < self.width and 0 <= y < self.height:
            return y * self.width + x
        return None

    def manhattan(self, a: int, b: int) -> int:
        return (abs(a % self.width - b % self.width)
                + abs(a // self.width - b // self.width))

    def occupancy(self, units) -> dict:
        return {u.pos: u for u in units}

    # -- unit menus --

    def unit_menu(self, state: MRState, unit: Unit, occ: dict) -> list:
        """Available basic-actions of one ready unit, explicit no-action
        last.  Deterministic order: moves, harvests, returns, builds,
        trains, attacks, no-action."""
        acts = []
        utype = UnitType(unit.type)
        res = state.res[unit.owner]
        if utype in MOVE_CYCLES:
            for d in range(4):
                np = self.step_pos(unit.pos, d)
                if np is not None and np not in occ:
                    acts.append(MRAction(unit.uid, ActKind.MOVE, direction=d))
        if utype is UnitType.WORKER:
            if unit.carrying == 0:
                for d in range(4):
                    np = self.step_pos(unit.pos, d)
                    other = occ.get(np)
                    if other is not None and other.type == UnitType.MINE:
                        acts.append(MRAction(unit.uid, ActKind.HARVEST, direction=d))
            else:
                for d in range(4):
                    np = self.step_pos(unit.pos, d)
                    other = occ.get(np)
                    if other is not None and other.type == UnitType.BASE \
                            and other.owner == unit.owner:
                        acts.append(MRAction(unit.uid, ActKind.RETURN, direction=d))
            for btype in BUILDS:
                if res >= COST[btype]:
                    for d in range(4):
                        np = self.step_pos(unit.pos, d)
                        if np is not None and np not in occ:
                            acts.append(MRAction(unit.uid, ActKind.BUILD,
                                                 direction=d, produce=int(btype)))
        if utype in TRAINS:
            for ttype in TRAINS[utype]:
                if res >= COST[ttype]:
                    for d in range(4):
                        np = self.step_pos(unit.pos, d)
                        if np is not None and np not in occ:
                            acts.append(MRAction(unit.uid, ActKind.TRAIN,
                                                 direction=d, produce=int(ttype)))
        if utype in ATTACK_DAMAGE:
            for d in range(4):
                np = self.step_pos(unit.pos, d)
                other = occ.get(np)
                if other is not None and other.owner not in (unit.owner, NEUTRAL):
                    acts.append(MRAction(unit.uid, ActKind.ATTACK, target=other.uid))
        acts.append(MRAction(unit.uid, ActKind.NOOP))
        return acts

    def ready_units(self, state: MRState, player: Player) -> list:
        return [u for u in state.units if u.owner == player and u.busy == -1]

    def can_act(self, state: MRState, player: Player) -> bool:
        if self.winner(state) is not Outcome.ONGOING:
            return False
        return any(u.owner == player and u.busy == -1 for u in state.units)

    def next_decision_time(self, state: MRState) -> GameClock:
        # effects land only at completions and every completion readies its
        # unit, so the next decision (or game end) is exactly the earliest
        # completion; no projectiles exist to end the game before it
        if self.winner(state) is not Outcome.ONGOING:
            return state.clock
        etas = []
        for u in state.units:
            if u.owner == NEUTRAL:
                continue
            if u.busy == -1:
                return state.clock
            etas.append(u.eta)
        return state.clock + min(etas)

    def player_actions(self, state: MRState, player: Player):
        if self.winner(state) is not Outcome.ONGOING:
            return [EMPTY_ACTION]
        ready = self.ready_units(state, player)
        if not ready:
            return [EMPTY_ACTION]
        occ = self.occupancy(state.units)
        menus = [self.unit_menu(state, u, occ) for u in ready]
        return ActionSpace(menus)

    def noop_action(self, state: MRState, player: Player) -> PlayerAction:
        ready = self.ready_units(state, player)
        if not ready or self.winner(state) is not Outcome.ONGOING:
            return EMPTY_ACTION
        return PlayerAction(tuple(MRAction(u.uid, ActKind.NOOP) for u in ready))

    # -- dynamics --

    def _nominal_duration(self, action: MRAction, utype: UnitType) -> int:
        kind = action.kind
        if kind is ActKind.MOVE:
            return MOVE_CYCLES[utype]
        if kind is ActKind.HARVEST:
            return HARVEST_CYCLES
        if kind is ActKind.RETURN:
            return RETURN_CYCLES
        if kind is ActKind.BUILD:
            return BUILD_CYCLES
        if kind is ActKind.TRAIN:
            return TRAIN_CYCLES[UnitType(action.produce)]
        if kind is ActKind.ATTACK:
            return ATTACK_CYCLES
        return NOOP_CYCLES

    def issue(self, state: MRState, action: PlayerAction, player: Player) -> MRState:
        if action.is_empty:
            return state
        ready = self.ready_units(state, player)
        if self.winner(state) is not Outcome.ONGOING:
            ready = []
        if {a.unit for a in action} != {u.uid for u in ready}:
            raise ContractViolation(
                f"action must cover exactly the ready units of {player.name}")
        occ = self.occupancy(state.units)
        by_uid = {u.uid: u for u in state.units}
        menus = {u.uid: self.unit_menu(state, u, occ) for u in ready}
        units = dict(by_uid)
        res = list(state.res)
        for a in sorted(action, key=lambda a: a.unit):
            if a not in menus[a.unit]:
                raise ContractViolation(f"{a!r} is not available")
            unit = units[a.unit]
            funded = True
            if a.kind in (ActKind.BUILD, ActKind.TRAIN):
                cost = COST[UnitType(a.produce)]
                if res[player] >= cost:
                    res[player] -= cost
                else:
                    funded = False  # joint overdraft: completes as a no-op
            units[a.unit] = unit._replace(
                busy=int(a.kind),
                eta=self._nominal_duration(a, UnitType(unit.type)),
                direction=a.direction, produce=a.produce, funded=funded,
            ) if a.kind is not ActKind.ATTACK else unit._replace(
                busy=int(a.kind), eta=ATTACK_CYCLES,
                direction=a.target, produce=-1, funded=True,
            )
        ordered = tuple(units[uid] for uid in sorted(units))
        return MRState(state.clock, ordered, tuple(res), state.next_uid)

    def simulate(self, state: MRState, until: GameClock | None = None) -> MRState:
        if until is not None and until < state.clock:
            raise ContractViolation("cannot simulate into the past")
        cap = state.clock + SIMULATION_CAP if until is None else until

        clock = state.clock
        units = {u.uid: u for u in state.units}
        res = list(state.res)
        next_uid = state.next_uid

        def alive_counts():
            n = [0, 0]
            for u in units.values():
                if u.owner != NEUTRAL:
                    n[u.owner] += 1
            return n

        while True:
            counts = alive_counts()
            if counts[0] == 0 or counts[1] == 0:
                break
            if any(u.busy == -1 and u.owner != NEUTRAL for u in units.values()):
                break
            if clock >= cap:
                if until is None:
                    raise SimulationCapExceeded(
                        f"no decision point within {SIMULATION_CAP} cycles")
                break

            dt = min(u.eta for u in units.values() if u.busy != -1)
            advance = min(dt, cap - clock)
            clock += advance
            for uid, u in units.items():
                if u.busy != -1:
                    units[uid] = u._replace(eta=u.eta - advance)
            if advance < dt:
                continue  # cap reached mid-execution

            occ = {u.pos: u.uid for u in units.values()}
            for uid in sorted(units):
                u = units.get(uid)
                if u is None or u.busy == -1 or u.eta > 0:
                    continue
                kind = ActKind(u.busy)
                if kind is ActKind.MOVE:
                    np = self.step_pos(u.pos, u.direction)
                    if np is not None and np not in occ:
                        del occ[u.pos]
                        occ[np] = uid
                        u = u._replace(pos=np)
                elif kind is ActKind.HARVEST:
                    u = u._replace(carrying=1)
                elif kind is ActKind.RETURN:
                    np = self.step_pos(u.pos, u.direction)
                    depot = units.get(occ.get(np, -1))
                    if depot is not None and depot.type == UnitType.BASE \
                            and depot.owner == u.owner:
                        res[u.owner] += u.carrying
                        u = u._replace(carrying=0)
                elif kind in (ActKind.BUILD, ActKind.TRAIN):
                    if u.funded:
                        np = self.step_pos(u.pos, u.direction)
                        if np is not None and np not in occ:
                            new = idle_unit(next_uid, u.owner, UnitType(u.produce), np)
                            units[next_uid] = new
                            occ[np] = next_uid
                            next_uid += 1
                        else:
                            res[u.owner] += COST[UnitType(u.produce)]  # refund
                elif kind is ActKind.ATTACK:
                    victim = units.get(u.direction)  # target uid
                    if victim is not None and victim.owner != NEUTRAL \
                            and self.manhattan(u.pos, victim.pos) <= ATTACK_RANGE:
                        hp = victim.hp - ATTACK_DAMAGE[UnitType(u.type)]
                        if hp <= 0:
                            del units[victim.uid]
                            del occ[victim.pos]
                        else:
                            units[victim.uid] = victim._replace(hp=hp)
                units[uid] = u._replace(busy=-1, eta=0, direction=-1,
                                        produce=-1, funded=True)

        ordered = tuple(units[uid] for uid in sorted(units))
        return MRState(clock, ordered, tuple(res), next_uid)

    def eta(self, action: MRAction, state: MRState) -> GameClock:
        unit = next((u for u in state.units if u.uid == action.unit), None)
        if unit is None:
            raise ContractViolation(f"no unit {action.unit}")
        if unit.busy != -1:
            kind = ActKind(unit.busy)
            matches = kind is action.kind and (
                (kind is ActKind.ATTACK and unit.direction == action.target)
                or (kind is not ActKind.ATTACK and unit.direction == action.direction
                    and unit.produce == action.produce))
            if not matches:
                raise ContractViolation(f"{action!r} is not the executing action")
            return unit.eta
        return self._nominal_duration(action, UnitType(unit.type))

    def winner(self, state: MRState) -> Outcome:
        counts = [0, 0]
        for u in state.units:
            if u.owner != NEUTRAL:
                counts[u.owner] += 1
        if counts[0] == 0 and counts[1] == 0:
            return Outcome.DRAW
        if counts[0] == 0:
            return Outcome.MIN_WINS
        if counts[1] == 0:
            return Outcome.MAX_WINS
        return Outcome.ONGOING

    def evaluate(self, state: MRState) -> float:
        outcome = self.winner(state)
        if outcome is Outcome.MAX_WINS:
            return WIN_SENTINEL - state.clock
        if outcome is Outcome.MIN_WINS:
            return -WIN_SENTINEL + state.clock
        if outcome is Outcome.DRAW:
            return 0.0
        total = 0
        for u in state.units:
            if u.owner == Player.MAX:
                total += COST[UnitType(u.type)]
            elif u.owner == Player.MIN:
                total -= COST[UnitType(u.type)]
        return float(total)

    @property
    def min_action_duration(self) -> GameClock:
        return ATTACK_CYCLES

    def encode_action(self, action: MRAction) -> list:
        return [action.unit, action.kind.name, action.direction,
                action.produce, action.target]

    def decode_action(self, data: list) -> MRAction:
        return MRAction(int(data[0]), ActKind[data[1]], int(data[2]),
                        int(data[3]), int(data[4]))
