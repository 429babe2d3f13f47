"""Human-readable refactoring suggestions for a single project."""

from __future__ import annotations

from dataclasses import dataclass, field

from .experiments import RunConfig
from .graph import ActionKind, ProjectState, transitive_closure, validity_violations
from .problem import RefactorProblem
from .repair import repair
from .search import SearchOutcome, best_first_search


class SuggestionError(RuntimeError):
    """The search ended without a plan; ``outcome`` holds the diagnostics."""

    def __init__(self, outcome: SearchOutcome):
        super().__init__(
            f"search {outcome.status.value} after {outcome.expansions} expansions "
            f"({outcome.generated} generated, {outcome.wall_time:.3f}s)"
        )
        self.outcome = outcome


@dataclass
class Suggestions:
    lines: list[str] = field(default_factory=list)
    removals: int = 0
    cohesion_additions: int = 0
    repair_additions: int = 0
    coupling_before: int = 0
    coupling_after: int = 0
    cohesion_before: int = 0
    cohesion_after: int = 0
    valid_before_repair: bool = True
    valid_after_repair: bool = True
    expansions: int = 0

    @property
    def additions(self) -> int:
        return self.cohesion_additions + self.repair_additions

    def summary(self) -> str:
        if not self.lines:
            head = "no changes: project already meets the coupling and cohesion targets"
        else:
            head = f"{self.removals} removal(s), {self.cohesion_additions} cohesion addition(s), {self.repair_additions} repair addition(s)"
        return (
            f"{head}\n"
            f"coupling (inter-module edges): {self.coupling_before} -> {self.coupling_after}\n"
            f"cohesion (intra-module edges): {self.cohesion_before} -> {self.cohesion_after}\n"
            f"original dependencies preserved: before repair {'yes' if self.valid_before_repair else 'no'}, "
            f"after repair {'yes' if self.valid_after_repair else 'no'}"
        )


def suggest(state: ProjectState, config: RunConfig) -> Suggestions:
    """Search, optionally repair, and phrase the result as REMOVE/ADD lines."""
    problem = RefactorProblem(state, config.alpha)
    outcome = best_first_search(problem, problem.heuristic(config.heuristic), config.weight, config.limits)
    if not outcome.solved:
        raise SuggestionError(outcome)
    names = state.names
    out = Suggestions(coupling_before=state.inter_count, cohesion_before=state.intra_count,
                      expansions=outcome.expansions)
    for action in outcome.plan:
        u, v = action.edge
        if action.kind is ActionKind.DELETE_INTER:
            out.lines.append(f"REMOVE dependency {names[u]} -> {names[v]}")
            out.removals += 1
        else:
            out.lines.append(f"ADD dependency {names[u]} -> {names[v]} (cohesion)")
            out.cohesion_additions += 1
    closure = transitive_closure(state)
    final = outcome.terminal_state
    if config.repair:
        fixed = repair(closure, final, state)
        for u, v in fixed.added_edges:
            out.lines.append(f"ADD dependency {names[u]} -> {names[v]} (repair)")
        out.repair_additions = len(fixed.added_edges)
        out.valid_before_repair = fixed.violations_before == 0
        out.valid_after_repair = fixed.valid
        final = fixed.state
    else:
        out.valid_before_repair = out.valid_after_repair = validity_violations(closure, final) == 0
    out.coupling_after = final.inter_count
    out.cohesion_after = final.intra_count
    return out
