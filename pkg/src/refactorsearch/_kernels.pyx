# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels over packed adjacency bitmaps.

Same contract as ``_kernels_py``; rows are unpacked into 64-bit words so the
closure runs as word-parallel ORs.
"""

from libc.stdint cimport uint64_t
from libc.stdlib cimport calloc, free

BACKEND = "cython"


cdef inline void _unpack(const unsigned char[::1] raw, Py_ssize_t n, Py_ssize_t words,
                         uint64_t* rows) noexcept nogil:
    cdef Py_ssize_t u, v, idx
    for u in range(n):
        for v in range(n):
            idx = u * n + v
            if (raw[idx >> 3] >> (idx & 7)) & 1:
                rows[u * words + (v >> 6)] |= (<uint64_t>1) << (v & 63)


def closure_bits(bits, Py_ssize_t n):
    """Transitive closure of a packed adjacency bitmap, diagonal cleared."""
    if n == 0 or not bits:
        return 0
    cdef Py_ssize_t nbytes = (n * n + 7) // 8
    cdef bytes packed = bits.to_bytes(nbytes, "little")
    cdef const unsigned char[::1] raw = packed
    cdef Py_ssize_t words = (n + 63) // 64
    cdef uint64_t* rows = <uint64_t*>calloc(n * words, sizeof(uint64_t))
    if rows == NULL:
        raise MemoryError()
    cdef bytearray out = bytearray(nbytes)
    cdef unsigned char[::1] res = out
    cdef Py_ssize_t k, u, w, v, idx
    cdef uint64_t kbit
    cdef uint64_t* rk
    cdef uint64_t* ru
    try:
        with nogil:
            _unpack(raw, n, words, rows)
            for k in range(n):
                kbit = (<uint64_t>1) << (k & 63)
                rk = rows + k * words
                for u in range(n):
                    ru = rows + u * words
                    if ru[k >> 6] & kbit:
                        for w in range(words):
                            ru[w] |= rk[w]
            for u in range(n):
                ru = rows + u * words
                for v in range(n):
                    if v != u and (ru[v >> 6] >> (v & 63)) & 1:
                        idx = u * n + v
                        res[idx >> 3] |= <unsigned char>(1 << (idx & 7))
    finally:
        free(rows)
    return int.from_bytes(out, "little")


def pair_counts(bits, Py_ssize_t n, module_of, Py_ssize_t module_count):
    """Inter-edge counts per unordered module pair, both directions summed."""
    cdef Py_ssize_t k = module_count
    cdef Py_ssize_t npairs = k * (k - 1) // 2
    if n == 0 or not bits or npairs == 0:
        return [0] * npairs
    cdef Py_ssize_t nbytes = (n * n + 7) // 8
    cdef bytes packed = bits.to_bytes(nbytes, "little")
    cdef const unsigned char[::1] raw = packed
    cdef Py_ssize_t* mod = <Py_ssize_t*>calloc(n, sizeof(Py_ssize_t))
    cdef Py_ssize_t* tally = <Py_ssize_t*>calloc(npairs, sizeof(Py_ssize_t))
    cdef Py_ssize_t idx, a, b, t
    if mod == NULL or tally == NULL:
        free(mod)
        free(tally)
        raise MemoryError()
    try:
        for t in range(n):
            mod[t] = module_of[t]
        with nogil:
            for idx in range(n * n):
                if (raw[idx >> 3] >> (idx & 7)) & 1:
                    a = mod[idx // n]
                    b = mod[idx % n]
                    if a == b:
                        continue
                    if a > b:
                        t = a
                        a = b
                        b = t
                    tally[a * k - a * (a + 1) // 2 + (b - a - 1)] += 1
        return [tally[t] for t in range(npairs)]
    finally:
        free(mod)
        free(tally)
