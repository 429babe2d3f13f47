"""Pure-Python kernels over packed adjacency bitmaps.

An n-vertex edge set is a single int where bit ``u * n + v`` is set when the
edge (u, v) is present. Both backends share this layout.
"""

from __future__ import annotations

from typing import Sequence

BACKEND = "python"


def closure_bits(bits: int, n: int) -> int:
    """Transitive closure of a packed adjacency bitmap, diagonal cleared."""
    if n == 0 or bits == 0:
        return 0
    row_mask = (1 << n) - 1
    rows = [(bits >> (u * n)) & row_mask for u in range(n)]
    for k in range(n):
        bit_k = 1 << k
        row_k = rows[k]
        if not row_k:
            continue
        for u in range(n):
            if rows[u] & bit_k:
                rows[u] |= row_k
    out = 0
    for u in range(n - 1, -1, -1):
        out = (out << n) | (rows[u] & ~(1 << u))
    return out


def pair_counts(bits: int, n: int, module_of: Sequence[int], module_count: int) -> list[int]:
    """Inter-edge counts per unordered module pair, both directions summed.

    The result is the flattened strict upper triangle: pair (a, b) with
    a < b lives at ``a * module_count - a * (a + 1) // 2 + (b - a - 1)``.
    """
    k = module_count
    counts = [0] * (k * (k - 1) // 2)
    while bits:
        low = bits & -bits
        idx = low.bit_length() - 1
        bits ^= low
        a = module_of[idx // n]
        b = module_of[idx % n]
        if a == b:
            continue
        if a > b:
            a, b = b, a
        counts[a * k - a * (a + 1) // 2 + (b - a - 1)] += 1
    return counts
