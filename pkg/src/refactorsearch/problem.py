"""The refactoring search problem: actions, goal test and heuristics."""

from __future__ import annotations

import math
from fractions import Fraction
from functools import cached_property
from typing import Callable, Iterator

from .graph import (
    Action,
    ActionKind,
    DependencyClosure,
    Edge,
    ProjectState,
    apply_action,
    iter_bits,
    transitive_closure,
)

DEFAULT_ALPHA = Fraction(1, 2)


def parse_alpha(value: float | str | Fraction) -> Fraction:
    """Exact cohesion aggression in [0, 1]; floats are read by their decimal repr."""
    if isinstance(value, Fraction):
        alpha = value
    else:
        try:
            alpha = Fraction(str(value))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"alpha must be a number in [0, 1], got {value!r}") from exc
    if not 0 <= alpha <= 1:
        raise ValueError(f"alpha must lie in [0, 1], got {value!r}")
    return alpha


class RefactorProblem:
    """Initial project, cohesion aggression and action policy.

    With ``pruned=True`` each state offers at most one add and one delete
    (see ``applicable_actions``); ``pruned=False`` exposes every filtered
    action and is meant for oracles and property tests.
    """

    def __init__(self, initial: ProjectState, alpha: float | str | Fraction = DEFAULT_ALPHA, pruned: bool = True):
        self.initial = initial
        self.alpha = parse_alpha(alpha)
        self.pruned = pruned
        self.e_max = initial.partition.max_intra_edges
        self.cohesion_target = math.ceil(self.alpha * self.e_max)

    @cached_property
    def original_closure(self) -> DependencyClosure:
        return transitive_closure(self.initial)

    def is_goal(self, state: ProjectState) -> bool:
        return goal_test(self, state)

    def actions(self, state: ProjectState) -> list[Action]:
        if self.pruned:
            return applicable_actions(self, state)
        return full_actions(self, state)

    def successors(self, state: ProjectState) -> Iterator[tuple[Action, ProjectState]]:
        for action in self.actions(state):
            yield action, apply_action(state, action)

    @staticmethod
    def key(state: ProjectState) -> int:
        return state.bits

    def heuristic(self, name: str) -> Callable[[ProjectState], int]:
        try:
            fn = HEURISTICS[name]
        except KeyError:
            raise ValueError(f"unknown heuristic {name!r}; choose from {sorted(HEURISTICS)}") from None
        return lambda state: fn(self, state)


def applicable_actions(problem: RefactorProblem, state: ProjectState) -> list[Action]:
    """Pruned action set: at most one add and one delete.

    The add is the smallest absent intra-module pair. The delete is the
    smallest present inter-edge whose module pair still holds more than one
    edge, or the smallest present inter-edge when no pair has a surplus.
    """
    partition = state.partition
    n = state.n
    actions = []
    absent = partition.intra_mask & ~state.bits
    if absent:
        idx = (absent & -absent).bit_length() - 1
        actions.append(Action(ActionKind.ADD_INTRA, Edge(*divmod(idx, n))))
    present = state.bits & partition.inter_mask
    if present:
        chosen = None
        if state.coupling_excess:
            module_of = partition.module_of
            for idx in iter_bits(present):
                u, v = divmod(idx, n)
                if state.pair_count(module_of[u], module_of[v]) > 1:
                    chosen = idx
                    break
        if chosen is None:
            chosen = (present & -present).bit_length() - 1
        actions.append(Action(ActionKind.DELETE_INTER, Edge(*divmod(chosen, n))))
    return actions


def full_actions(problem: RefactorProblem, state: ProjectState) -> list[Action]:
    """Every absent intra pair as an add, every present inter-edge as a delete."""
    partition = state.partition
    n = state.n
    adds = [Action(ActionKind.ADD_INTRA, Edge(*divmod(i, n))) for i in iter_bits(partition.intra_mask & ~state.bits)]
    deletes = [Action(ActionKind.DELETE_INTER, Edge(*divmod(i, n))) for i in iter_bits(state.bits & partition.inter_mask)]
    return adds + deletes


def goal_test(problem: RefactorProblem, state: ProjectState) -> bool:
    return state.coupling_excess == 0 and state.intra_count >= problem.cohesion_target


def h_zero(problem: RefactorProblem | None, state: ProjectState) -> int:
    return 0


def h_coupling(problem: RefactorProblem | None, state: ProjectState) -> int:
    """Inter-edges above one per module pair; each needs its own delete."""
    return state.coupling_excess


def h_cohesion(problem: RefactorProblem, state: ProjectState) -> int:
    return max(0, problem.cohesion_target - state.intra_count)


def h_additive(problem: RefactorProblem, state: ProjectState) -> int:
    return state.coupling_excess + max(0, problem.cohesion_target - state.intra_count)


HEURISTICS: dict[str, Callable[[RefactorProblem, ProjectState], int]] = {
    "zero": h_zero,
    "coupling": h_coupling,
    "cohesion": h_cohesion,
    "additive": h_additive,
}
