"""Projects as graphs: classes are vertices, dependencies are directed edges,
and modules partition the classes.

Edge sets are stored as a packed bitmap (bit ``u * n + v`` for edge (u, v)),
so a state's bitmap doubles as its canonical key once the partition is fixed,
and ascending bit order is lexicographic (from, to) order.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, NamedTuple, Sequence

from . import kernels


class GraphError(ValueError):
    """Malformed graph input: bad vertex, module or edge."""


class ActionError(GraphError):
    """An action was applied to a state where its precondition fails."""


class Edge(NamedTuple):
    source: int
    target: int

    def reversed(self) -> "Edge":
        return Edge(self.target, self.source)


class EdgeKind(enum.Enum):
    INTRA = "intra"
    INTER = "inter"


class ActionKind(enum.Enum):
    ADD_INTRA = "add"
    DELETE_INTER = "delete"


@dataclass(frozen=True)
class Action:
    kind: ActionKind
    edge: Edge

    cost = 1

    def __str__(self) -> str:
        verb = "add" if self.kind is ActionKind.ADD_INTRA else "delete"
        return f"{verb}({self.edge.source},{self.edge.target})"


def _default_names(prefix: str, count: int) -> tuple[str, ...]:
    width = max(2, len(str(max(count - 1, 0))))
    return tuple(f"{prefix}{i:0{width}d}" for i in range(count))


@dataclass(frozen=True)
class ModulePartition:
    """Assignment of every vertex to exactly one module. Modules may be empty."""

    module_of: tuple[int, ...]
    module_count: int
    module_names: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "module_of", tuple(int(m) for m in self.module_of))
        if self.module_count < 0:
            raise GraphError("module_count must be non-negative")
        for v, m in enumerate(self.module_of):
            if not 0 <= m < self.module_count:
                raise GraphError(f"vertex {v} assigned to module {m}, outside 0..{self.module_count - 1}")
        if not self.module_names:
            object.__setattr__(self, "module_names", _default_names("m", self.module_count))
        elif len(self.module_names) != self.module_count:
            raise GraphError("module_names length does not match module_count")

    @classmethod
    def from_groups(cls, groups: Sequence[Sequence[int]], names: Sequence[str] = ()) -> "ModulePartition":
        n = sum(len(g) for g in groups)
        module_of = [-1] * n
        for m, group in enumerate(groups):
            for v in group:
                if not 0 <= v < n or module_of[v] != -1:
                    raise GraphError(f"vertex {v} is out of range or listed in two modules")
                module_of[v] = m
        return cls(tuple(module_of), len(groups), tuple(names))

    @property
    def n(self) -> int:
        return len(self.module_of)

    @cached_property
    def members(self) -> tuple[tuple[int, ...], ...]:
        groups: list[list[int]] = [[] for _ in range(self.module_count)]
        for v, m in enumerate(self.module_of):
            groups[m].append(v)
        return tuple(tuple(g) for g in groups)

    @cached_property
    def intra_mask(self) -> int:
        n = self.n
        mask = 0
        for group in self.members:
            for u in group:
                for v in group:
                    if u != v:
                        mask |= 1 << (u * n + v)
        return mask

    @cached_property
    def diagonal_mask(self) -> int:
        n = self.n
        return sum(1 << (u * n + u) for u in range(n))

    @cached_property
    def inter_mask(self) -> int:
        n = self.n
        full = 0
        for u in range(n):
            full |= (((1 << n) - 1) & ~(1 << u)) << (u * n)
        return full & ~self.intra_mask

    @cached_property
    def max_intra_edges(self) -> int:
        return sum(len(g) * (len(g) - 1) for g in self.members)

    @cached_property
    def _pair_masks(self) -> dict[tuple[int, int], int]:
        return {}

    def pair_index(self, a: int, b: int) -> int:
        """Slot of the unordered module pair {a, b} in a flattened count list."""
        if a == b:
            raise GraphError("a module pair needs two distinct modules")
        if a > b:
            a, b = b, a
        k = self.module_count
        return a * k - a * (a + 1) // 2 + (b - a - 1)

    def pair_mask(self, a: int, b: int) -> int:
        """Bitmap of every ordered vertex pair joining modules a and b, both ways."""
        if a > b:
            a, b = b, a
        cache = self._pair_masks
        mask = cache.get((a, b))
        if mask is None:
            n = self.n
            members = self.members
            mask = 0
            for u in members[a]:
                for v in members[b]:
                    mask |= (1 << (u * n + v)) | (1 << (v * n + u))
            cache[(a, b)] = mask
        return mask


def iter_bits(bits: int) -> Iterator[int]:
    """Set bit positions in ascending order."""
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low


@dataclass(frozen=True)
class ProjectState:
    """Immutable project graph: partition, edge bitmap and class names.

    Derived counts are cached per instance; ``apply_action`` seeds a child's
    caches from its parent so search nodes never rescan the whole bitmap.
    """

    partition: ModulePartition
    bits: int
    names: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        n = self.partition.n
        if not self.names:
            object.__setattr__(self, "names", _default_names("c", n))
        elif len(self.names) != n:
            raise GraphError("names length does not match vertex count")
        if self.bits < 0 or self.bits >> (n * n):
            raise GraphError("edge bitmap references vertices out of range")
        if self.bits & self.partition.diagonal_mask:
            loop = (self.bits & self.partition.diagonal_mask).bit_length() // (n + 1)
            raise GraphError(f"self-loop on vertex {loop}")

    @classmethod
    def from_edges(
        cls,
        partition: ModulePartition,
        edges: Iterable[tuple[int, int]],
        names: Sequence[str] = (),
    ) -> "ProjectState":
        n = partition.n
        bits = 0
        for u, v in edges:
            check_vertex(n, u)
            check_vertex(n, v)
            if u == v:
                raise GraphError(f"self-loop on vertex {u}")
            bits |= 1 << (u * n + v)
        return cls(partition, bits, tuple(names))

    @property
    def n(self) -> int:
        return self.partition.n

    @property
    def key(self) -> int:
        return self.bits

    def edge_bit(self, edge: tuple[int, int]) -> int:
        u, v = edge
        check_vertex(self.n, u)
        check_vertex(self.n, v)
        return 1 << (u * self.n + v)

    def has_edge(self, edge: tuple[int, int]) -> bool:
        return bool(self.bits & self.edge_bit(edge))

    def edges(self) -> list[Edge]:
        n = self.n
        return [Edge(*divmod(i, n)) for i in iter_bits(self.bits)]

    def intra_edges(self) -> list[Edge]:
        n = self.n
        return [Edge(*divmod(i, n)) for i in iter_bits(self.bits & self.partition.intra_mask)]

    def inter_edges(self) -> list[Edge]:
        n = self.n
        return [Edge(*divmod(i, n)) for i in iter_bits(self.bits & self.partition.inter_mask)]

    @property
    def edge_count(self) -> int:
        return self.bits.bit_count()

    @cached_property
    def intra_count(self) -> int:
        """Cohesion: number of intra-module edges."""
        return (self.bits & self.partition.intra_mask).bit_count()

    @property
    def inter_count(self) -> int:
        """Coupling: number of inter-module edges."""
        return self.edge_count - self.intra_count

    @cached_property
    def pair_counts(self) -> tuple[int, ...]:
        p = self.partition
        return tuple(kernels.pair_counts(self.bits, p.n, p.module_of, p.module_count))

    @cached_property
    def coupling_excess(self) -> int:
        """Inter-edges beyond one per module pair, summed over all pairs."""
        return sum(c - 1 for c in self.pair_counts if c > 1)

    def pair_count(self, a: int, b: int) -> int:
        return (self.bits & self.partition.pair_mask(a, b)).bit_count()

    def with_edge(self, edge: tuple[int, int]) -> "ProjectState":
        bit = self.edge_bit(edge)
        if self.bits & bit:
            raise ActionError(f"edge {tuple(edge)} already present")
        if edge[0] == edge[1]:
            raise GraphError("self-loops are not allowed")
        return ProjectState(self.partition, self.bits | bit, self.names)

    def without_edge(self, edge: tuple[int, int]) -> "ProjectState":
        bit = self.edge_bit(edge)
        if not self.bits & bit:
            raise ActionError(f"edge {tuple(edge)} not present")
        return ProjectState(self.partition, self.bits & ~bit, self.names)

    def module_of(self, v: int) -> int:
        check_vertex(self.n, v)
        return self.partition.module_of[v]


def check_vertex(n: int, v: int) -> None:
    if not 0 <= v < n:
        raise GraphError(f"vertex {v} out of range 0..{n - 1}")


def classify_edge(state: ProjectState, edge: tuple[int, int]) -> EdgeKind:
    u, v = edge
    if state.module_of(u) == state.module_of(v):
        return EdgeKind.INTRA
    return EdgeKind.INTER


def count_inter_between(state: ProjectState, m1: int, m2: int) -> int:
    """Edges joining modules m1 and m2, counted in both directions."""
    k = state.partition.module_count
    if m1 == m2:
        raise GraphError("count_inter_between needs two distinct modules")
    for m in (m1, m2):
        if not 0 <= m < k:
            raise GraphError(f"module {m} out of range 0..{k - 1}")
    return state.pair_count(m1, m2)


def max_intra_edges(state: ProjectState) -> int:
    return state.partition.max_intra_edges


@dataclass(frozen=True)
class DependencyClosure:
    """Which classes depend on which, directly or through a path.

    Pairs (x, x) are never stored, even when x sits on a cycle.
    """

    n: int
    bits: int

    def reaches(self, x: int, y: int) -> bool:
        check_vertex(self.n, x)
        check_vertex(self.n, y)
        return bool(self.bits >> (x * self.n + y) & 1)

    def pairs(self) -> list[Edge]:
        return [Edge(*divmod(i, self.n)) for i in iter_bits(self.bits)]

    def __len__(self) -> int:
        return self.bits.bit_count()


def transitive_closure(state: ProjectState) -> DependencyClosure:
    return DependencyClosure(state.n, kernels.closure_bits(state.bits, state.n))


def validity_violations(original: DependencyClosure, state: ProjectState) -> int:
    """Original dependencies lost in ``state``. New dependencies are allowed."""
    if original.n != state.n:
        raise GraphError(f"closure over {original.n} vertices, state over {state.n}")
    now = kernels.closure_bits(state.bits, state.n)
    return (original.bits & ~now).bit_count()


def apply_action(state: ProjectState, action: Action) -> ProjectState:
    """Return the successor state; ``state`` itself is never modified."""
    edge = action.edge
    kind = classify_edge(state, edge)
    bit = state.edge_bit(edge)
    cached = state.__dict__
    if action.kind is ActionKind.ADD_INTRA:
        if kind is not EdgeKind.INTRA:
            raise ActionError(f"add {tuple(edge)}: not an intra-module pair")
        if state.bits & bit:
            raise ActionError(f"add {tuple(edge)}: edge already present")
        child = ProjectState(state.partition, state.bits | bit, state.names)
        if "intra_count" in cached:
            child.__dict__["intra_count"] = cached["intra_count"] + 1
        if "coupling_excess" in cached:
            child.__dict__["coupling_excess"] = cached["coupling_excess"]
        return child
    if kind is not EdgeKind.INTER:
        raise ActionError(f"delete {tuple(edge)}: not an inter-module edge")
    if not state.bits & bit:
        raise ActionError(f"delete {tuple(edge)}: edge not present")
    child = ProjectState(state.partition, state.bits & ~bit, state.names)
    if "intra_count" in cached:
        child.__dict__["intra_count"] = cached["intra_count"]
    if "coupling_excess" in cached:
        a, b = state.module_of(edge[0]), state.module_of(edge[1])
        drop = 1 if state.pair_count(a, b) > 1 else 0
        child.__dict__["coupling_excess"] = cached["coupling_excess"] - drop
    return child


def replay(initial: ProjectState, plan: Iterable[Action]) -> ProjectState:
    """Apply ``plan`` action by action; any failed precondition raises."""
    state = initial
    for action in plan:
        state = apply_action(state, action)
    return state
