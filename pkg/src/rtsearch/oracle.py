"""Classic depth-limited minimax over strictly alternating games, plus an
embedding of such games into the real-time contract.

The embedding gives every move duration 1 and alternates which player holds
a ready unit, so a real-time search over the embedded game must reproduce
plain minimax exactly at matching horizons.  That equivalence is the main
correctness oracle for the real-time searchers; nothing here is tuned for
speed.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from random import Random
from typing import Any, Sequence

from .model import (
    EMPTY_ACTION,
    ContractViolation,
    GameClock,
    GameModel,
    Outcome,
    Player,
    PlayerAction,
)

INF = float("inf")


class TurnBasedGame(ABC):
    """Strictly alternating two-player game: exactly one player to move in
    every non-terminal state, one move per turn, instantaneous moves."""

    @abstractmethod
    def to_move(self, state) -> Player:
        pass

    @abstractmethod
    def moves(self, state) -> Sequence:
        """Legal moves for the player to move; non-empty unless terminal."""

    @abstractmethod
    def apply(self, state, move):
        pass

    @abstractmethod
    def winner(self, state) -> Outcome:
        pass

    @abstractmethod
    def evaluate(self, state) -> float:
        pass


def minimax(game: TurnBasedGame, state, depth: int, player: Player) -> float:
    """Depth-limited minimax value of ``state`` with ``player`` to move."""
    if depth <= 0 or game.winner(state) is not Outcome.ONGOING:
        return game.evaluate(state)
    if player is Player.MAX:
        best = -INF
        for move in game.moves(state):
            best = max(best, minimax(game, game.apply(state, move), depth - 1, Player.MIN))
        return best
    best = INF
    for move in game.moves(state):
        best = min(best, minimax(game, game.apply(state, move), depth - 1, Player.MAX))
    return best


# ---------------------------------------------------------------------------
# Embedding into the real-time contract


@dataclass(frozen=True, order=True)
class EmbeddedMove:
    """Duration-1 basic-action wrapping one turn-based move (by index into
    the deterministic move enumeration)."""

    unit: int  # 0 = MAX's single unit, 1 = MIN's
    index: int


@dataclass(frozen=True)
class EmbeddedState:
    clock: GameClock
    inner: Any
    pending: EmbeddedMove | None  # completes at clock + 1


class TurnBasedEmbedding(GameModel):
    """Real-time view of a strictly alternating game.

    Exactly one player can act at each actionable time (the inner game's
    mover); the opponent's unit is never ready.  Issued moves complete one
    cycle later, at which point the turn passes.  There is deliberately no
    per-unit no-action: the inner game does not allow passing, and adding
    one would break the minimax layer correspondence.
    """

    def __init__(self, game: TurnBasedGame):
        self.game = game

    def initial_state(self, inner) -> EmbeddedState:
        return EmbeddedState(0, inner, None)

    def _mover(self, state: EmbeddedState) -> Player | None:
        if state.pending is not None:
            return None
        if self.game.winner(state.inner) is not Outcome.ONGOING:
            return None
        return self.game.to_move(state.inner)

    def player_actions(self, state: EmbeddedState, player: Player):
        if self._mover(state) is not player:
            return [EMPTY_ACTION]
        moves = self.game.moves(state.inner)
        if not moves:
            raise ContractViolation("alternating game has a stuck non-terminal state")
        return [
            PlayerAction((EmbeddedMove(int(player), i),)) for i in range(len(moves))
        ]

    def can_act(self, state: EmbeddedState, player: Player) -> bool:
        return self._mover(state) is player

    def issue(self, state: EmbeddedState, action: PlayerAction, player: Player):
        if action.is_empty:
            return state
        if self._mover(state) is not player or len(action) != 1:
            raise ContractViolation("not this player's turn")
        move = action.actions[0]
        if move.unit != int(player) or not 0 <= move.index < len(self.game.moves(state.inner)):
            raise ContractViolation(f"illegal move {move!r}")
        return EmbeddedState(state.clock, state.inner, move)

    def simulate(self, state: EmbeddedState, until: GameClock | None = None):
        if until is not None and until < state.clock:
            raise ContractViolation("cannot simulate into the past")
        while True:
            if self.game.winner(state.inner) is not Outcome.ONGOING:
                return state
            if state.pending is None:
                return state  # the mover can act right now
            if until is not None and state.clock >= until:
                return state
            moves = self.game.moves(state.inner)
            inner = self.game.apply(state.inner, moves[state.pending.index])
            state = EmbeddedState(state.clock + 1, inner, None)

    def eta(self, action: EmbeddedMove, state: EmbeddedState) -> GameClock:
        if state.pending is not None and state.pending != action:
            raise ContractViolation("another move is executing")
        return 1

    def winner(self, state: EmbeddedState) -> Outcome:
        return self.game.winner(state.inner)

    def evaluate(self, state: EmbeddedState) -> float:
        return self.game.evaluate(state.inner)

    @property
    def min_action_duration(self) -> GameClock:
        return 1

    def noop_action(self, state: EmbeddedState, player: Player) -> PlayerAction:
        return EMPTY_ACTION  # the embedding has no no-action moves

    def encode_action(self, action: EmbeddedMove) -> list:
        return [action.unit, action.index]

    def decode_action(self, data: list) -> EmbeddedMove:
        return EmbeddedMove(int(data[0]), int(data[1]))


# ---------------------------------------------------------------------------
# Seeded synthetic alternating games with explicit value tables


@dataclass(frozen=True)
class TableNode:
    node_id: int


class RandomAlternatingGame(TurnBasedGame):
    """Random game tree with explicit terminal/heuristic value tables.

    Generated breadth-first from a seed: every non-terminal node gets
    1..max_branching children; nodes at ``depth`` (and a few random early
    ones) are terminal.  Ground truth is exhaustively checkable.
    """

    def __init__(self, seed: int, max_branching: int = 4, depth: int = 5,
                 root_player: Player = Player.MAX, early_terminal_prob: float = 0.1):
        rng = Random(seed)
        self.root = TableNode(0)
        self.root_player = root_player
        self._children: dict[int, list[int]] = {}
        self._value: dict[int, float] = {}
        self._terminal: dict[int, bool] = {}
        self._player: dict[int, Player] = {}
        next_id = 1
        frontier = [(0, 0)]
        while frontier:
            node_id, d = frontier.pop(0)
            self._player[node_id] = root_player if d % 2 == 0 else root_player.opponent
            self._value[node_id] = round(rng.uniform(-100, 100), 3)
            terminal = d >= depth or (d > 0 and rng.random() < early_terminal_prob)
            self._terminal[node_id] = terminal
            if terminal:
                self._children[node_id] = []
                continue
            kids = []
            for _ in range(rng.randint(1, max_branching)):
                kids.append(next_id)
                frontier.append((next_id, d + 1))
                next_id += 1
            self._children[node_id] = kids

    def to_move(self, state: TableNode) -> Player:
        return self._player[state.node_id]

    def moves(self, state: TableNode) -> Sequence[int]:
        return self._children[state.node_id]

    def apply(self, state: TableNode, move: int) -> TableNode:
        return TableNode(move)

    def winner(self, state: TableNode) -> Outcome:
        if not self._terminal[state.node_id]:
            return Outcome.ONGOING
        value = self._value[state.node_id]
        if value > 0:
            return Outcome.MAX_WINS
        if value < 0:
            return Outcome.MIN_WINS
        return Outcome.DRAW

    def evaluate(self, state: TableNode) -> float:
        return self._value[state.node_id]


def embed_turn_based(game: TurnBasedGame) -> TurnBasedEmbedding:
    """Wrap a strictly alternating game as a real-time model."""
    return TurnBasedEmbedding(game)
