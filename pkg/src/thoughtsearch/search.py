"""Uninformed BFS/DFS over pluggable successor functions and goal tests.

A domain supplies a :class:`SearchProblem`; the search owns the frontier,
the closed list and the expanded/generated counters. Duplicates are
filtered when popped, not when pushed, and the goal is tested right after
a state enters the closed list.
"""

from __future__ import annotations

import enum
import time
from collections import deque
from dataclasses import dataclass
from typing import Any, Callable, Hashable, Iterable, NamedTuple, Optional, Sequence

State = Any
Successors = Callable[[State], Sequence[tuple[str, State]]]


class Status(str, enum.Enum):
    SOLVED = "SOLVED"
    EXHAUSTED = "EXHAUSTED"
    LIMIT = "LIMIT"


class ClosedListCorruption(RuntimeError):
    """The parent chain in the closed list does not lead back to the initial state."""


@dataclass(frozen=True)
class SearchProblem:
    initial: State
    successors: Successors
    is_goal: Callable[[State], bool]
    canonical_key: Callable[[State], str]


class PathStep(NamedTuple):
    action: Optional[str]
    state: State


@dataclass(frozen=True)
class SearchOutcome:
    status: Status
    path: tuple[PathStep, ...]
    expanded: int
    generated: int
    # number of keys inserted into the closed list
    closed: int = 0

    @property
    def solved(self) -> bool:
        return self.status is Status.SOLVED

    @property
    def plan_length(self) -> Optional[int]:
        return len(self.path) - 1 if self.path else None

    @property
    def actions(self) -> list[str]:
        return [step.action for step in self.path[1:]]


@dataclass(frozen=True)
class SearchLimits:
    max_expansions: Optional[int] = None
    max_wall_time: Optional[float] = None

    def __post_init__(self):
        if self.max_expansions is not None and self.max_expansions < 0:
            raise ValueError("max_expansions must be non-negative")
        if self.max_wall_time is not None and self.max_wall_time < 0:
            raise ValueError("max_wall_time must be non-negative")


UNLIMITED = SearchLimits()

# how many pops between wall-clock checks
_CLOCK_EVERY = 256


def reconstruct_path(
    closed: dict[str, tuple[Optional[str], Optional[str]]],
    goal_key: str,
    states: dict[str, State],
) -> list[PathStep]:
    """Walk parent links from ``goal_key`` back to the root and reverse."""
    path = []
    key: Optional[str] = goal_key
    seen = set()
    while key is not None:
        if key not in closed or key not in states:
            raise ClosedListCorruption(f"key {key!r} missing from closed list")
        if key in seen:
            raise ClosedListCorruption(f"cycle in parent chain at {key!r}")
        seen.add(key)
        parent, action = closed[key]
        path.append(PathStep(action, states[key]))
        key = parent
    path.reverse()
    if path[0].action is not None:
        raise ClosedListCorruption("root entry carries an action label")
    return path


def _search(problem: SearchProblem, limits: SearchLimits, lifo: bool) -> SearchOutcome:
    key_of = problem.canonical_key
    frontier: deque = deque([(problem.initial, None, None)])
    pop = frontier.pop if lifo else frontier.popleft
    push = frontier.append
    closed: dict[str, tuple[Optional[str], Optional[str]]] = {}
    states: dict[str, State] = {}
    expanded = generated = 0
    max_exp = limits.max_expansions
    deadline = None
    if limits.max_wall_time is not None:
        deadline = time.monotonic() + limits.max_wall_time
    pops = 0

    while frontier:
        if deadline is not None:
            pops += 1
            if pops % _CLOCK_EVERY == 0 and time.monotonic() > deadline:
                return SearchOutcome(Status.LIMIT, (), expanded, generated, len(closed))
        state, parent, action = pop()
        key = key_of(state)
        if key in closed:
            continue
        closed[key] = (parent, action)
        states[key] = state
        if problem.is_goal(state):
            path = reconstruct_path(closed, key, states)
            return SearchOutcome(Status.SOLVED, tuple(path), expanded, generated, len(closed))
        if max_exp is not None and expanded >= max_exp:
            return SearchOutcome(Status.LIMIT, (), expanded, generated, len(closed))
        expanded += 1
        for label, child in problem.successors(state):
            push((child, key, label))
            generated += 1

    return SearchOutcome(Status.EXHAUSTED, (), expanded, generated, len(closed))


def bfs(problem: SearchProblem, limits: SearchLimits = UNLIMITED) -> SearchOutcome:
    """Breadth-first search; solutions are shortest in number of actions."""
    return _search(problem, limits, lifo=False)


def dfs(problem: SearchProblem, limits: SearchLimits = UNLIMITED) -> SearchOutcome:
    """Depth-first search: same bookkeeping as :func:`bfs` with a LIFO frontier."""
    return _search(problem, limits, lifo=True)


ALGORITHMS = {"bfs": bfs, "dfs": dfs}


def validate_path(problem: SearchProblem, path: Sequence[PathStep]) -> bool:
    """Replay ``path`` against the problem's own successor function.

    Independent of the search bookkeeping: every step must be an emitted
    successor (same label, same canonical key) of the previous state, the
    first state must be the initial one and the last must satisfy the goal.
    """
    if not path:
        return False
    key_of = problem.canonical_key
    first = path[0]
    if first.action is not None or key_of(first.state) != key_of(problem.initial):
        return False
    for prev, step in zip(path, path[1:]):
        target = key_of(step.state)
        if not any(
            label == step.action and key_of(child) == target
            for label, child in problem.successors(prev.state)
        ):
            return False
    return bool(problem.is_goal(path[-1].state))


def replay(problem: SearchProblem, labels: Iterable[str]) -> Optional[list[PathStep]]:
    """Build a path by following action labels from the initial state.

    Returns None when some label is not applicable.
    """
    state = problem.initial
    path = [PathStep(None, state)]
    for label in labels:
        for candidate, child in problem.successors(state):
            if candidate == label:
                state = child
                break
        else:
            return None
        path.append(PathStep(label, state))
    return path


def reachable_states(problem: SearchProblem, limit: Optional[int] = None) -> dict[str, State]:
    """Plain reachability crawl (no goal test, no counters).

    Kept separate from :func:`bfs` so it can serve as an oracle for it.
    """
    key_of = problem.canonical_key
    seen = {key_of(problem.initial): problem.initial}
    todo = [problem.initial]
    while todo:
        state = todo.pop()
        for _, child in problem.successors(state):
            k = key_of(child)
            if k not in seen:
                seen[k] = child
                todo.append(child)
                if limit is not None and len(seen) > limit:
                    raise OverflowError(f"more than {limit} reachable states")
    return seen


def shortest_distance(problem: SearchProblem, limit: Optional[int] = None) -> Optional[int]:
    """Goal distance by expanding whole breadth layers; None if unreachable."""
    key_of = problem.canonical_key
    layer = {key_of(problem.initial): problem.initial}
    seen: set[Hashable] = set(layer)
    depth = 0
    while layer:
        if any(problem.is_goal(s) for s in layer.values()):
            return depth
        nxt = {}
        for s in layer.values():
            for _, child in problem.successors(s):
                k = key_of(child)
                if k not in seen:
                    seen.add(k)
                    nxt[k] = child
        if limit is not None and len(seen) > limit:
            raise OverflowError(f"more than {limit} reachable states")
        layer = nxt
        depth += 1
    return None
