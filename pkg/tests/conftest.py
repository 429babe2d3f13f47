import random
import sys
from pathlib import Path

import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from refactorsearch import kernels
from refactorsearch.graph import ModulePartition, ProjectState

FIXTURES = Path(__file__).parent / "fixtures"

# Running example: modules A = {a, b, c}, B = {d, e, f}
A, B_, C, D, E, F = range(6)
EXAMPLE_INTRA = [(A, B_), (B_, C), (D, E), (E, F)]
EXAMPLE_INTER = [(C, D), (B_, F)]


def example_state(extra=()):
    partition = ModulePartition.from_groups([[A, B_, C], [D, E, F]], ["A", "B"])
    return ProjectState.from_edges(partition, EXAMPLE_INTRA + EXAMPLE_INTER + list(extra), "abcdef")


@pytest.fixture
def example():
    return example_state()


@pytest.fixture
def example_back():
    return example_state([(F, B_)])


@pytest.fixture(params=["python", "cython"])
def backend(request):
    if request.param == "cython":
        if kernels.compiled_backend is None:
            pytest.skip("compiled kernels not built")
        return kernels.compiled_backend
    return kernels.python_backend


def random_state(rng: random.Random, n: int, k: int, density: float | None = None) -> ProjectState:
    module_of = tuple(rng.randrange(k) for _ in range(n))
    p = rng.random() if density is None else density
    edges = [(u, v) for u in range(n) for v in range(n) if u != v and rng.random() < p]
    return ProjectState.from_edges(ModulePartition(module_of, k), edges)


@st.composite
def states(draw, max_n=10, max_k=4):
    n = draw(st.integers(1, max_n))
    k = draw(st.integers(1, max_k))
    module_of = tuple(draw(st.lists(st.integers(0, k - 1), min_size=n, max_size=n)))
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))) if pairs else []
    return ProjectState.from_edges(ModulePartition(module_of, k), chosen)


alphas = st.sampled_from(["0", "0.25", "0.5", "0.75", "1"])


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
