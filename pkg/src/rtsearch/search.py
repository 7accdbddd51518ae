"""Real-time minimax search: plain, alpha-beta, and randomized-alpha-beta
variants, with time-horizon iterative deepening and interruptible anytime
sessions.

The searcher cuts off by game time rather than tree depth.  At states where
both players can act it expands all MAX choices before MIN (max-first)
unless randomization picks the opposite order; at states where neither can
act it fast-forwards the game to the next decision point and recurses.
Between iterations the horizon advances to just past the earliest frontier
decision time, the step after which the explored tree is guaranteed to
grow.
"""

from __future__ import annotations

import time as _time
from dataclasses import dataclass, field
from enum import Enum
from random import Random
from typing import Any, Callable, Optional

from .model import (
    ContractViolation,
    Evaluator,
    GameClock,
    GameModel,
    Outcome,
    Player,
    PlayerAction,
)

INF = float("inf")

#: How many node visits pass between budget checks.  Bounds timer overhead;
#: budget overshoot is bounded by one interval's worth of work.
CHECK_INTERVAL = 256


def wall_clock_ms() -> float:
    return _time.perf_counter() * 1000.0


class Variant(Enum):
    RTMM_PLAIN = "rtmm-plain"
    RTMM_AB = "rtmm"
    RRTMM_AB = "rrtmm"


class SearchAborted(Exception):
    """Raised inside the recursion when the wall-clock budget expires; the
    in-flight iteration is discarded."""


@dataclass(frozen=True)
class SearchResult:
    """Outcome of one completed search at a fixed horizon.

    ``t_minus``/``t_plus`` are the minimum/maximum next-decision times over
    frontier leaves that were cut off by the horizon (None when the whole
    reachable tree bottoms out at the end of the game).
    """

    value: float
    best_action: Optional[PlayerAction]
    cutoff: GameClock
    root_time: GameClock
    nodes: int
    leaves_total: int
    leaves_cutoff: int
    t_minus: Optional[GameClock]
    t_plus: Optional[GameClock]
    max_lookahead: GameClock  # deepest leaf time minus root time
    max_branching: int
    min_branching: int


def next_cutoff(result: SearchResult, epsilon: GameClock) -> GameClock:
    """Horizon for the next deepening iteration: t⁻ + ε.

    Any rerun at or below t⁻ explores the identical tree; ε (the shortest
    basic-action length) is the smallest increment guaranteed to grow it.
    """
    if result.leaves_cutoff == 0:
        raise ContractViolation("no cutoff frontier: the tree is already complete")
    return result.t_minus + epsilon


class _Searcher:
    """One horizon-bounded traversal.  Collects frontier statistics and
    honors an optional deadline on an injectable clock."""

    __slots__ = (
        "model", "evaluate", "t_max", "prune", "rng", "max_first_prob",
        "root_player", "deadline", "clock", "check_interval", "_until_check",
        "nodes", "leaves_total", "leaves_cutoff", "t_minus", "t_plus",
        "max_leaf_time", "max_branching", "min_branching", "best_action",
    )

    def __init__(self, model: GameModel, evaluate: Evaluator, t_max: GameClock, *,
                 prune: bool, rng: Optional[Random] = None, max_first_prob: float = 0.5,
                 root_player: Player = Player.MAX, deadline: Optional[float] = None,
                 clock: Callable[[], float] = wall_clock_ms,
                 check_interval: int = CHECK_INTERVAL):
        self.model = model
        self.evaluate = evaluate
        self.t_max = t_max
        self.prune = prune
        self.rng = rng
        self.max_first_prob = max_first_prob
        self.root_player = root_player
        self.deadline = deadline
        self.clock = clock
        self.check_interval = check_interval
        self._until_check = check_interval
        self.nodes = 0
        self.leaves_total = 0
        self.leaves_cutoff = 0
        self.t_minus: Optional[GameClock] = None
        self.t_plus: Optional[GameClock] = None
        self.max_leaf_time = 0
        self.max_branching = 0
        self.min_branching = 0
        self.best_action: Optional[PlayerAction] = None

    def run(self, root) -> SearchResult:
        root_time = self.model.time(root)
        if self.t_max < root_time:
            raise ContractViolation(f"horizon {self.t_max} precedes state time {root_time}")
        self.max_leaf_time = root_time
        value = self._search(root, -INF, INF, True)
        return SearchResult(
            value=value,
            best_action=self.best_action,
            cutoff=self.t_max,
            root_time=root_time,
            nodes=self.nodes,
            leaves_total=self.leaves_total,
            leaves_cutoff=self.leaves_cutoff,
            t_minus=self.t_minus,
            t_plus=self.t_plus,
            max_lookahead=self.max_leaf_time - root_time,
            max_branching=self.max_branching,
            min_branching=self.min_branching,
        )

    def _search(self, state, alpha: float, beta: float, is_root: bool) -> float:
        self.nodes += 1
        if self.deadline is not None:
            self._until_check -= 1
            if self._until_check <= 0:
                self._until_check = self.check_interval
                if self.clock() >= self.deadline:
                    raise SearchAborted()

        model = self.model
        t = model.time(state)
        outcome = model.winner(state)
        if t >= self.t_max or outcome is not Outcome.ONGOING:
            self.leaves_total += 1
            if t > self.max_leaf_time:
                self.max_leaf_time = t
            if outcome is Outcome.ONGOING:
                self.leaves_cutoff += 1
                next_decision = model.next_decision_time(state)
                if self.t_minus is None or next_decision < self.t_minus:
                    self.t_minus = next_decision
                if self.t_plus is None or next_decision > self.t_plus:
                    self.t_plus = next_decision
            return self.evaluate(state)

        can_max = model.can_act(state, Player.MAX)
        can_min = model.can_act(state, Player.MIN)
        if not can_max and not can_min:
            return self._search(model.simulate(state, self.t_max), alpha, beta, is_root)

        if can_max and can_min:
            if is_root:
                max_first = self.root_player is Player.MAX
            elif self.rng is not None:
                max_first = self.rng.random() < self.max_first_prob
            else:
                max_first = True
            player = Player.MAX if max_first else Player.MIN
        else:
            player = Player.MAX if can_max else Player.MIN

        actions = model.player_actions(state, player)
        branching = len(actions)
        if branching > self.max_branching:
            self.max_branching = branching
        if self.min_branching == 0 or branching < self.min_branching:
            self.min_branching = branching

        maximizing = player is Player.MAX
        track = is_root and player is self.root_player
        best = -INF if maximizing else INF
        for action in actions:
            value = self._search(model.issue(state, action, player), alpha, beta, False)
            if maximizing:
                if value > best:
                    best = value
                    if track:
                        self.best_action = action
                if best > alpha:
                    alpha = best
                if self.prune and best >= beta:
                    break
            else:
                if value < best:
                    best = value
                    if track:
                        self.best_action = action
                if best < beta:
                    beta = best
                if self.prune and best <= alpha:
                    break
        return best


def rtmm(state, t_max: GameClock, model: GameModel,
         evaluate: Optional[Evaluator] = None, *,
         root_player: Player = Player.MAX) -> SearchResult:
    """Plain real-time minimax to horizon ``t_max`` (no pruning)."""
    searcher = _Searcher(model, evaluate or model.evaluate, t_max, prune=False,
                         root_player=root_player)
    return searcher.run(state)


def rtmm_alphabeta(state, t_max: GameClock, model: GameModel,
                   evaluate: Optional[Evaluator] = None, *,
                   alpha: float = -INF, beta: float = INF,
                   root_player: Player = Player.MAX) -> SearchResult:
    """Alpha-beta real-time minimax.  With the full window the root value
    equals plain rtmm's exactly; narrower windows obey the usual fail-soft
    bound contracts.  Simulation layers pass the window through unchanged."""
    if alpha >= beta:
        raise ContractViolation("alpha must be below beta")
    searcher = _Searcher(model, evaluate or model.evaluate, t_max, prune=True,
                         root_player=root_player)
    return _run_windowed(searcher, state, alpha, beta)


def rrtmm(state, t_max: GameClock, model: GameModel,
          evaluate: Optional[Evaluator] = None, *,
          rng: Optional[Random] = None, seed: int = 0,
          alpha: float = -INF, beta: float = INF,
          max_first_prob: float = 0.5,
          root_player: Player = Player.MAX) -> SearchResult:
    """Randomized alpha-beta real-time minimax: at every simultaneous-move
    state other than the root, a coin decides whether MAX or MIN moves are
    expanded first.  The root always expands the searching player first.
    Same seed, same result."""
    if alpha >= beta:
        raise ContractViolation("alpha must be below beta")
    searcher = _Searcher(model, evaluate or model.evaluate, t_max, prune=True,
                         rng=rng if rng is not None else Random(seed),
                         max_first_prob=max_first_prob, root_player=root_player)
    return _run_windowed(searcher, state, alpha, beta)


def _run_windowed(searcher: _Searcher, state, alpha: float, beta: float) -> SearchResult:
    root_time = searcher.model.time(state)
    if searcher.t_max < root_time:
        raise ContractViolation(f"horizon {searcher.t_max} precedes state time {root_time}")
    searcher.max_leaf_time = root_time
    value = searcher._search(state, alpha, beta, True)
    return SearchResult(
        value=value, best_action=searcher.best_action, cutoff=searcher.t_max,
        root_time=root_time, nodes=searcher.nodes, leaves_total=searcher.leaves_total,
        leaves_cutoff=searcher.leaves_cutoff, t_minus=searcher.t_minus,
        t_plus=searcher.t_plus, max_lookahead=searcher.max_leaf_time - root_time,
        max_branching=searcher.max_branching, min_branching=searcher.min_branching,
    )


class SessionStatus(Enum):
    READY = "ready"
    EXHAUSTED = "exhausted"
    TERMINAL = "terminal"


@dataclass
class SessionTelemetry:
    """Observational counters accumulated across all step() calls,
    including iterations that were aborted and discarded."""

    wall_ms: float = 0.0
    nodes: int = 0
    iterations: int = 0
    aborted: int = 0
    max_branching: int = 0
    min_branching: int = 0
    max_leaves: int = 0
    max_lookahead: GameClock = 0

    def absorb(self, searcher: _Searcher) -> None:
        self.nodes += searcher.nodes
        if searcher.max_branching > self.max_branching:
            self.max_branching = searcher.max_branching
        if searcher.min_branching and (
            self.min_branching == 0 or searcher.min_branching < self.min_branching
        ):
            self.min_branching = searcher.min_branching


class SearchSession:
    """Interruptible iterative-deepening search anchored at a decision state.

    ``step`` runs whole iterations until the budget expires on the injected
    clock; an iteration that overruns is discarded and rerun on the next
    step, so ``last_complete`` always holds a fully completed iteration at
    a strictly increasing horizon (the anytime contract).  A session is
    confined to one thread at a time but may be handed between threads
    across steps.
    """

    def __init__(self, root, model: GameModel, evaluate: Optional[Evaluator] = None, *,
                 variant: Variant = Variant.RTMM_AB, player: Player = Player.MAX,
                 epsilon: Optional[GameClock] = None, seed: int = 0,
                 max_first_prob: float = 0.5,
                 clock: Callable[[], float] = wall_clock_ms,
                 check_interval: int = CHECK_INTERVAL):
        self.root = root
        self.model = model
        self.evaluate = evaluate or model.evaluate
        self.variant = variant
        self.player = player
        self.epsilon = epsilon if epsilon is not None else model.min_action_duration
        if self.epsilon <= 0:
            raise ContractViolation("epsilon must be positive")
        self.seed = seed
        self.max_first_prob = max_first_prob
        self.clock = clock
        self.check_interval = check_interval
        self.last_complete: Optional[SearchResult] = None
        self.iterations = 0
        self.telemetry = SessionTelemetry()
        root_time = model.time(root)
        if model.winner(root) is not Outcome.ONGOING:
            self.status = SessionStatus.TERMINAL
            self.cutoff = root_time
        else:
            if not model.can_act(root, player):
                raise ContractViolation("session root must be a decision point for the player")
            self.status = SessionStatus.READY
            self.cutoff = root_time + self.epsilon

    def _build_searcher(self, deadline: Optional[float]) -> _Searcher:
        rng = None
        if self.variant is Variant.RRTMM_AB:
            # Per-iteration derived stream: a rerun after an abort flips the
            # same coins, keeping resumption deterministic.
            rng = Random(self.seed * 1_000_003 + self.iterations)
        return _Searcher(
            self.model, self.evaluate, self.cutoff,
            prune=self.variant is not Variant.RTMM_PLAIN,
            rng=rng, max_first_prob=self.max_first_prob, root_player=self.player,
            deadline=deadline, clock=self.clock, check_interval=self.check_interval,
        )

    def step(self, budget_ms: float) -> "SearchSession":
        """Run iterations within ``budget_ms`` on the session clock."""
        if self.status is SessionStatus.TERMINAL:
            return self
        wall_start = _time.perf_counter()
        deadline = self.clock() + budget_ms
        try:
            while self.clock() < deadline:
                searcher = self._build_searcher(deadline)
                try:
                    result = searcher.run(self.root)
                except SearchAborted:
                    self.telemetry.absorb(searcher)
                    self.telemetry.aborted += 1
                    self.status = SessionStatus.EXHAUSTED
                    return self
                self.telemetry.absorb(searcher)
                self.telemetry.iterations += 1
                if result.leaves_total > self.telemetry.max_leaves:
                    self.telemetry.max_leaves = result.leaves_total
                if result.max_lookahead > self.telemetry.max_lookahead:
                    self.telemetry.max_lookahead = result.max_lookahead
                self.iterations += 1
                self.last_complete = result
                if result.leaves_cutoff == 0:
                    self.status = SessionStatus.TERMINAL
                    return self
                self.cutoff = next_cutoff(result, self.epsilon)
            self.status = SessionStatus.EXHAUSTED
            return self
        finally:
            self.telemetry.wall_ms += (_time.perf_counter() - wall_start) * 1000.0

    def best_action(self) -> Optional[PlayerAction]:
        """Best root action from the deepest completed iteration; ties fall
        to the first action in enumeration order.  None before the first
        iteration completes (the fallback policy lives in the harness)."""
        if self.last_complete is None:
            return None
        return self.last_complete.best_action

    def fingerprint(self) -> tuple:
        """Deterministic snapshot of externally visible session state."""
        last = self.last_complete
        return (
            hash(self.root), self.cutoff, self.status, self.iterations,
            None if last is None else (last.value, last.best_action, last.cutoff, last.nodes),
        )


class TickClock:
    """Deterministic clock advancing one unit per reading.

    Search checks the clock at fixed node intervals, so tick time measures
    work done, which makes budgets reproducible across machines and runs.
    """

    def __init__(self):
        self.now = 0.0

    def __call__(self) -> float:
        now = self.now
        self.now += 1.0
        return now
