"""Contract for two-player real-time games with durative unit actions.

Time is measured in integer game cycles (roughly 50 per second of game
time).  States are immutable values: ``issue`` and ``simulate`` return
fresh states and never mutate their input, so search can branch freely and
matches can run in parallel without aliasing.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from enum import Enum, IntEnum
from typing import Any, Callable, Iterator, Sequence

GameClock = int
Evaluator = Callable[[Any], float]

# Ceiling for unbounded simulation.  Unreachable while every basic-action
# has a finite duration; converts a broken game model into a diagnostic
# instead of a hang.
SIMULATION_CAP = 10**6


class ContractViolation(Exception):
    """An operation was called outside its stated precondition."""


class SimulationCapExceeded(RuntimeError):
    """Unbounded simulation ran past the safety cap without reaching a
    decision point or the end of the game."""


class Player(IntEnum):
    MAX = 0
    MIN = 1

    @property
    def opponent(self) -> "Player":
        return Player.MIN if self is Player.MAX else Player.MAX

    @property
    def sign(self) -> int:
        """+1 for the maximizing player, -1 for the minimizing player."""
        return 1 if self is Player.MAX else -1


class Outcome(Enum):
    MAX_WINS = "max_wins"
    MIN_WINS = "min_wins"
    DRAW = "draw"
    ONGOING = "ongoing"

    @staticmethod
    def win_for(player: Player) -> "Outcome":
        return Outcome.MAX_WINS if player is Player.MAX else Outcome.MIN_WINS


class PlayerAction:
    """A set of basic-actions one player issues atomically, at most one per
    unit.

    The empty value denotes "nothing can be issued"; it is legal exactly
    when the player has no ready unit and is distinct from a set of
    explicit no-action basic-actions.  Basic-actions are any hashable
    values carrying a ``unit`` attribute; storage is canonicalized to
    ascending unit order so equality and hashing are order-insensitive.
    """

    __slots__ = ("actions", "_hash")

    def __init__(self, actions: Sequence = ()):
        acts = tuple(actions)
        if any(acts[i].unit >= acts[i + 1].unit for i in range(len(acts) - 1)):
            acts = tuple(sorted(acts, key=lambda a: a.unit))
            if any(acts[i].unit == acts[i + 1].unit for i in range(len(acts) - 1)):
                raise ContractViolation("at most one basic-action per unit")
        self.actions = acts
        self._hash = hash(acts)

    @property
    def is_empty(self) -> bool:
        return not self.actions

    def __iter__(self) -> Iterator:
        return iter(self.actions)

    def __len__(self) -> int:
        return len(self.actions)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PlayerAction) and self.actions == other.actions

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        if not self.actions:
            return "PlayerAction(∅)"
        return f"PlayerAction({list(self.actions)!r})"


#: The "player cannot act" value; `player_actions` yields `[EMPTY_ACTION]`
#: exactly when the player has no ready unit.
EMPTY_ACTION = PlayerAction()


def is_pass(actions: Sequence[PlayerAction]) -> bool:
    """True when an action collection means "cannot act": just {∅}."""
    return len(actions) == 1 and actions[0].is_empty


class GameModel(ABC):
    """Rules bundle a concrete game provides to search and the harness.

    Implementations must be fully deterministic (equal states and equal
    issued actions give equal successors) and must treat states as values:
    no operation mutates its input.  State objects must be hashable and
    comparable and must expose an integer ``clock`` attribute.
    """

    @abstractmethod
    def player_actions(self, state, player: Player) -> Sequence[PlayerAction]:
        """Every legal simultaneous combination of basic-actions for the
        player's ready units (the cross product of each ready unit's
        available basic-actions, including an explicit per-unit no-action
        where the domain defines one).  Returns ``[EMPTY_ACTION]`` exactly
        when the player has no ready unit."""

    @abstractmethod
    def issue(self, state, action: PlayerAction, player: Player):
        """Mark the units named in ``action`` busy with their basic-actions.

        Does not advance the clock.  Raises :class:`ContractViolation` if
        the action set is not legal for the player in this state."""

    @abstractmethod
    def simulate(self, state, until: GameClock | None = None):
        """Run the game forward until any player can issue an action, the
        game ends, or the clock reaches ``until`` (unbounded when None).

        Returns the earliest such state; returns ``state`` unchanged when
        one of the stop conditions already holds."""

    @abstractmethod
    def eta(self, action, state) -> GameClock:
        """Remaining duration of an executing basic-action, or the nominal
        duration of an issuable one.  Raises :class:`ContractViolation`
        for actions that are neither."""

    @abstractmethod
    def winner(self, state) -> Outcome:
        pass

    @abstractmethod
    def evaluate(self, state) -> float:
        """Heuristic state value; positive favors MAX, negative MIN."""

    @property
    @abstractmethod
    def min_action_duration(self) -> GameClock:
        """Length of the shortest basic-action in the domain (the
        iterative-deepening increment)."""

    @abstractmethod
    def noop_action(self, state, player: Player) -> PlayerAction:
        """The player-action assigning every ready unit its explicit
        no-action; ``EMPTY_ACTION`` when the player cannot act."""

    # -- cheap derived queries; override where a faster path exists --

    def time(self, state) -> GameClock:
        return state.clock

    def can_act(self, state, player: Player) -> bool:
        return not is_pass(self.player_actions(state, player))

    def next_decision_time(self, state) -> GameClock:
        """Clock of ``simulate(state, UNBOUNDED)``: when somebody can act
        next or the game ends.  Semantically redundant with ``simulate``
        but on the search frontier only the time matters, so domains may
        override it with arithmetic."""
        return self.time(self.simulate(state, None))

    # -- replay serialization --

    @abstractmethod
    def encode_action(self, action) -> list:
        """JSON-compatible encoding of one basic-action."""

    @abstractmethod
    def decode_action(self, data: list):
        pass

    def encode_player_action(self, action: PlayerAction) -> list:
        return [self.encode_action(a) for a in action]

    def decode_player_action(self, data: list) -> PlayerAction:
        return PlayerAction([self.decode_action(a) for a in data])
