"""Random benchmark projects: uniform module assignment, uniform edge count."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .graph import ModulePartition, ProjectState, _default_names

# Part of the instance-file contract: ids and seeds only reproduce under this
# generator, so files record it and the files themselves are what get shared.
GENERATOR = "python-random-mt19937/1"


@dataclass(frozen=True)
class InstanceSpec:
    n_classes: int = 25
    n_modules: int = 15
    seed: int = 0
    count: int = 100

    def __post_init__(self) -> None:
        if self.n_classes < 1 or self.n_modules < 1:
            raise ValueError("need at least one class and one module")
        if self.count < 0:
            raise ValueError("count must be non-negative")


def pair_from_slot(slot: int, n: int) -> tuple[int, int]:
    """Map 0..n(n-1)-1 onto ordered non-loop pairs in lexicographic order."""
    u, r = divmod(slot, n - 1)
    return u, (r if r < u else r + 1)


def generate(spec: InstanceSpec, seed: int | None = None) -> ProjectState:
    """One random project.

    Each class joins a module uniformly and independently (modules may end up
    empty). The edge count x is uniform on 1..n(n-1), clamped to 0 when no
    ordered pairs exist, and the edges are a uniform x-subset of all pairs.
    """
    rng = random.Random(spec.seed if seed is None else seed)
    n, k = spec.n_classes, spec.n_modules
    module_of = tuple(rng.randrange(k) for _ in range(n))
    slots = n * (n - 1)
    x = rng.randint(1, slots) if slots else 0
    edges = [pair_from_slot(s, n) for s in rng.sample(range(slots), x)]
    partition = ModulePartition(module_of, k, _default_names("M", k))
    return ProjectState.from_edges(partition, edges, _default_names("C", n))


def instance_id(spec: InstanceSpec, seed: int) -> str:
    return f"rand-{spec.n_classes}c{spec.n_modules}m-s{seed}"


def generate_batch(spec: InstanceSpec) -> list[tuple[str, int, ProjectState]]:
    """``count`` instances seeded ``seed``, ``seed + 1``, ..."""
    out = []
    for i in range(spec.count):
        seed = spec.seed + i
        out.append((instance_id(spec, seed), seed, generate(spec, seed)))
    return out
