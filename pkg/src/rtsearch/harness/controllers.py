"""Per-cycle controllers: scripted bots and the search scheduling policy.

A controller is polled once per game cycle with the authoritative state and
a time budget, and may return a player-action (when its player can act) or
None.  The search controller follows a three-case policy: do nothing when
the opponent acts next; think ahead from the upcoming decision state while
waiting; and when its player can act now, finish thinking and commit to
the best action from the deepest completed iteration.
"""

from __future__ import annotations

import time as _time
from abc import ABC, abstractmethod
from typing import Callable, Optional

from ..model import GameModel, Player, PlayerAction
from ..search import SearchSession, SessionStatus, TickClock, Variant, wall_clock_ms


class Controller(ABC):
    """One player's decision maker inside the match loop.

    Must return within the budget (soft: overshoot is logged by the match
    runner).  Controllers see states by value and can never mutate the
    authoritative game."""

    def __init__(self, model: GameModel, player: Player):
        self.model = model
        self.player = player

    @abstractmethod
    def on_cycle(self, state, budget_ms: float) -> Optional[PlayerAction]:
        pass

    def drain_telemetry(self) -> list:
        """Per-decision search telemetry accumulated since the last drain."""
        return []


class ScriptedController(Controller):
    """Wraps a bot object exposing ``act(state) -> PlayerAction``."""

    def __init__(self, model: GameModel, player: Player, bot):
        super().__init__(model, player)
        self.bot = bot

    def on_cycle(self, state, budget_ms: float) -> Optional[PlayerAction]:
        if not self.model.can_act(state, self.player):
            return None
        return self.bot.act(state)


class SearchController(Controller):
    """Anytime real-time minimax player.

    Sessions persist across waiting cycles and accumulate budget; a session
    is discarded once its action is issued (the acted-upon root is stale)
    or when the game diverges from the predicted decision state.
    """

    def __init__(self, model: GameModel, player: Player, *,
                 variant: Variant = Variant.RTMM_AB, seed: int = 0,
                 epsilon: Optional[int] = None,
                 clock: Optional[Callable[[], float]] = None,
                 max_first_prob: float = 0.5):
        super().__init__(model, player)
        self.variant = variant
        self.seed = seed
        self.epsilon = epsilon
        self.clock = clock if clock is not None else wall_clock_ms
        self.max_first_prob = max_first_prob
        self.session: Optional[SearchSession] = None
        self.decisions = 0
        self._telemetry: list = []

    def _new_session(self, root) -> SearchSession:
        self.decisions += 1
        return SearchSession(
            root, self.model, variant=self.variant, player=self.player,
            epsilon=self.epsilon, seed=self.seed * 7_919 + self.decisions,
            clock=self.clock, max_first_prob=self.max_first_prob,
        )

    def _session_for(self, root) -> SearchSession:
        if self.session is None or self.session.root != root:
            self.session = self._new_session(root)
        return self.session

    def on_cycle(self, state, budget_ms: float) -> Optional[PlayerAction]:
        wall_start = _time.perf_counter()
        decision_state = self.model.simulate(state, None)
        if not self.model.can_act(decision_state, self.player):
            # the opponent moves next: nothing to think about yet
            self.session = None
            return None
        acting_now = self.model.time(decision_state) == self.model.time(state)
        session = self._session_for(state if acting_now else decision_state)
        session.step(budget_ms)
        if not acting_now:
            return None
        action = session.best_action()
        self._telemetry.append(self._record(session, wall_start))
        self.session = None  # the root is stale once we act
        return action

    def _record(self, session: SearchSession, wall_start: float) -> dict:
        tele = session.telemetry
        last = session.last_complete
        return {
            "player": self.player.name.lower(),
            "variant": self.variant.value,
            "wall_ms": round(tele.wall_ms, 3),
            "nodes": tele.nodes,
            "iterations": tele.iterations,
            "aborted": tele.aborted,
            "max_branching": tele.max_branching,
            "min_branching": tele.min_branching,
            "max_leaves": tele.max_leaves,
            "lookahead_cycles": tele.max_lookahead,
            "completed_value": None if last is None else last.value,
            "exhausted": session.status is SessionStatus.TERMINAL,
        }

    def drain_telemetry(self) -> list:
        out = self._telemetry
        self._telemetry = []
        return out
