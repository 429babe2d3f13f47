"""Best-first search: A* and Weighted A* with duplicate detection."""

from __future__ import annotations

import enum
import heapq
import itertools
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Hashable, Iterable, Optional, Protocol


class SearchError(RuntimeError):
    """Internal corruption, e.g. a cycle in a parent chain."""


class SearchProblem(Protocol):
    initial: Any

    def is_goal(self, state: Any) -> bool: ...

    def successors(self, state: Any) -> Iterable[tuple[Any, Any]]: ...

    def key(self, state: Any) -> Hashable: ...


class SearchStatus(enum.Enum):
    SOLVED = "solved"
    UNSOLVABLE = "unsolvable"
    TIMEOUT = "timeout"


@dataclass(frozen=True)
class SearchLimits:
    max_expansions: Optional[int] = None
    max_seconds: Optional[float] = None

    def __post_init__(self) -> None:
        if self.max_expansions is not None and self.max_expansions <= 0:
            raise ValueError("max_expansions must be positive")
        if self.max_seconds is not None and self.max_seconds <= 0:
            raise ValueError("max_seconds must be positive")


class SearchNode:
    __slots__ = ("state", "g", "h", "parent", "action")

    def __init__(self, state, g: int, h: int, parent: "SearchNode | None" = None, action=None):
        self.state = state
        self.g = g
        self.h = h
        self.parent = parent
        self.action = action

    def f(self, weight: int = 1) -> int:
        return self.g + weight * self.h


@dataclass
class SearchOutcome:
    status: SearchStatus
    plan: list = field(default_factory=list)
    cost: Optional[int] = None
    expansions: int = 0
    generated: int = 0
    wall_time: float = 0.0
    terminal_state: Any = None
    initial_h: int = 0

    @property
    def solved(self) -> bool:
        return self.status is SearchStatus.SOLVED


def reconstruct_plan(node: SearchNode) -> list:
    """Actions from the root to ``node``, in execution order."""
    plan = []
    seen = set()
    while node.parent is not None:
        if id(node) in seen:
            raise SearchError("cycle in parent chain")
        seen.add(id(node))
        plan.append(node.action)
        node = node.parent
    plan.reverse()
    return plan


def best_first_search(
    problem: SearchProblem,
    heuristic: Callable[[Any], int],
    weight: int = 1,
    limits: SearchLimits | None = None,
    on_expand: Callable[[SearchNode], None] | None = None,
) -> SearchOutcome:
    """Expand nodes in order of g + weight * h.

    Ties go to the larger g, then to the earlier insertion. Closed states are
    never re-opened. Goals are detected when a node is selected for
    expansion, so with weight 1 and an admissible heuristic the returned plan
    is optimal for the problem's action set.
    """
    if int(weight) != weight or weight < 1:
        raise ValueError(f"weight must be an integer >= 1, got {weight!r}")
    weight = int(weight)
    limits = limits or SearchLimits()
    key = problem.key
    counter = itertools.count()

    start = time.perf_counter()
    root_h = heuristic(problem.initial)
    root = SearchNode(problem.initial, 0, root_h)
    open_heap = [(root_h * weight, 0, next(counter), root)]
    best_g = {key(problem.initial): 0}
    closed: dict[Hashable, int] = {}
    expansions = 0
    generated = 1
    deadline = None if limits.max_seconds is None else start + limits.max_seconds

    def finish(status: SearchStatus, node: SearchNode | None) -> SearchOutcome:
        elapsed = time.perf_counter() - start
        if node is None:
            return SearchOutcome(status, expansions=expansions, generated=generated, wall_time=elapsed, initial_h=root_h)
        plan = reconstruct_plan(node)
        return SearchOutcome(status, plan, node.g, expansions, generated, elapsed, node.state, root_h)

    while open_heap:
        _, _, _, node = heapq.heappop(open_heap)
        state_key = key(node.state)
        if state_key in closed:
            continue
        if limits.max_expansions is not None and expansions >= limits.max_expansions:
            return finish(SearchStatus.TIMEOUT, None)
        if deadline is not None and time.perf_counter() > deadline:
            return finish(SearchStatus.TIMEOUT, None)
        closed[state_key] = node.g
        expansions += 1
        if on_expand is not None:
            on_expand(node)
        if problem.is_goal(node.state):
            return finish(SearchStatus.SOLVED, node)
        for action, child in problem.successors(node.state):
            generated += 1
            g2 = node.g + getattr(action, "cost", 1)
            child_key = key(child)
            if child_key in closed:
                continue
            known = best_g.get(child_key)
            if known is not None and known <= g2:
                continue
            best_g[child_key] = g2
            h = heuristic(child)
            heapq.heappush(open_heap, (g2 + weight * h, -g2, next(counter), SearchNode(child, g2, h, node, action)))
    return finish(SearchStatus.UNSOLVABLE, None)


def astar(problem: SearchProblem, heuristic: Callable[[Any], int], **kwargs) -> SearchOutcome:
    return best_first_search(problem, heuristic, weight=1, **kwargs)


def weighted_astar(problem: SearchProblem, heuristic: Callable[[Any], int], weight: int, **kwargs) -> SearchOutcome:
    return best_first_search(problem, heuristic, weight=weight, **kwargs)
