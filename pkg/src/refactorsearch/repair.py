"""Post-search repair: restore lost dependencies by re-adding reverse inter-edges."""

from __future__ import annotations

from dataclasses import dataclass, field

from . import kernels
from .graph import DependencyClosure, Edge, GraphError, ProjectState


@dataclass
class RepairOutcome:
    state: ProjectState
    added_edges: list[Edge] = field(default_factory=list)
    violations_before: int = 0
    violations_after: int = 0
    inter_deleted_net: int | None = None

    @property
    def valid(self) -> bool:
        return self.violations_after == 0


def repair(
    original_closure: DependencyClosure,
    solution_state: ProjectState,
    initial: ProjectState | None = None,
) -> RepairOutcome:
    """Single pass over the solution's inter-edges in index order.

    For each edge (u, v) the reverse (v, u) is added tentatively and kept
    only if it strictly lowers the number of lost original dependencies.
    Stops as soon as nothing is lost. When ``initial`` is given, the net
    inter-edge reduction against it is reported as well.
    """
    n = solution_state.n
    if original_closure.n != n:
        raise GraphError(f"closure over {original_closure.n} vertices, state over {n}")
    required = original_closure.bits

    def lost(bits: int) -> int:
        return (required & ~kernels.closure_bits(bits, n)).bit_count()

    bits = solution_state.bits
    before = current = lost(bits)
    added: list[Edge] = []
    if current:
        for edge in solution_state.inter_edges():
            reverse_bit = 1 << (edge.target * n + edge.source)
            if bits & reverse_bit:
                continue
            trial = lost(bits | reverse_bit)
            if trial < current:
                bits |= reverse_bit
                current = trial
                added.append(edge.reversed())
                if current == 0:
                    break
    state = solution_state if not added else ProjectState(solution_state.partition, bits, solution_state.names)
    net = None
    if initial is not None:
        net = initial.inter_count - state.inter_count
    return RepairOutcome(state, added, before, current, net)
