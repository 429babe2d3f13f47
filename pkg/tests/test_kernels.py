import os
import random
import subprocess
import sys

import pytest

from conftest import random_state
from oracles import bfs_reach_pairs, undirected_pair_counts

from refactorsearch import kernels


@pytest.mark.parametrize("n", [0, 1, 2, 7, 63, 64, 65, 130])
def test_closure_matches_oracle(backend, n):
    rng = random.Random(n)
    for density in (0.0, 0.02, 0.2):
        edges = {(u, v) for u in range(n) for v in range(n) if u != v and rng.random() < density}
        bits = sum(1 << (u * n + v) for u, v in edges)
        got = backend.closure_bits(bits, n)
        want = sum(1 << (u * n + v) for u, v in bfs_reach_pairs(n, edges))
        assert got == want


def test_pair_counts_match_oracle(backend):
    rng = random.Random(3)
    for _ in range(50):
        k = rng.randint(1, 8)
        s = random_state(rng, rng.randint(1, 20), k)
        flat = backend.pair_counts(s.bits, s.n, s.partition.module_of, k)
        want = undirected_pair_counts(s.partition.module_of, s.edges())
        i = 0
        for a in range(k):
            for b in range(a + 1, k):
                assert flat[i] == want.get(frozenset((a, b)), 0)
                i += 1
        assert i == len(flat)


def test_backends_agree_on_large_graph():
    if kernels.compiled_backend is None:
        pytest.skip("compiled kernels not built")
    rng = random.Random(9)
    n = 300
    bits = sum(1 << (u * n + v) for u in range(n) for v in range(n) if u != v and rng.random() < 0.004)
    assert kernels.compiled_backend.closure_bits(bits, n) == kernels.python_backend.closure_bits(bits, n)


def test_pure_python_switch():
    env = dict(os.environ, REFACTORSEARCH_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "from refactorsearch import kernels; print(kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
