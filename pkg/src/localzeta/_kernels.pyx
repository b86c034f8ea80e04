# cython: language_level=3
"""Compiled kernels for 4x4 matrix arithmetic over Z/p.

Same contract as _kernels_py: matrices are flat 16-tuples of ints in
[0, p) at the API boundary; internally products are computed on C buffers
and deduplicated as 16-byte keys.
"""

from cpython.bytes cimport PyBytes_FromStringAndSize

BACKEND = "cython"

IDENTITY = (1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1)


cdef inline void _unpack(object t, int* buf):
    cdef int i
    for i in range(16):
        buf[i] = t[i]


cdef bytes _mul_bytes(const unsigned char* a, const unsigned char* b, int p):
    cdef unsigned char out[16]
    cdef int i, j, s
    for i in range(4):
        for j in range(4):
            s = (
                a[4 * i] * b[j]
                + a[4 * i + 1] * b[4 + j]
                + a[4 * i + 2] * b[8 + j]
                + a[4 * i + 3] * b[12 + j]
            )
            out[4 * i + j] = <unsigned char> (s % p)
    return PyBytes_FromStringAndSize(<char*> out, 16)


cdef bytes _to_bytes(object seq, int p):
    cdef unsigned char buf[16]
    cdef int i, v
    for i in range(16):
        v = seq[i] % p
        buf[i] = <unsigned char> v
    return PyBytes_FromStringAndSize(<char*> buf, 16)


def mat_mul_mod(a, b, int p):
    """Product of two flat 4x4 matrices mod p."""
    cdef bytes ab = _to_bytes(a, p)
    cdef bytes bb = _to_bytes(b, p)
    return tuple(_mul_bytes(<const unsigned char*> ab, <const unsigned char*> bb, p))


def group_closure(gens, int p, Py_ssize_t max_size):
    """Closure of the generators under multiplication mod p (BFS)."""
    cdef list gens_b = [_to_bytes(gen, p) for gen in gens]
    cdef bytes ident = _to_bytes(IDENTITY, p)
    cdef set visited = {ident}
    cdef list frontier = [ident]
    cdef list new
    cdef bytes m, g, prod
    while frontier:
        new = []
        for m in frontier:
            for g in gens_b:
                prod = _mul_bytes(
                    <const unsigned char*> m, <const unsigned char*> g, p
                )
                if prod not in visited:
                    visited.add(prod)
                    new.append(prod)
        if len(visited) > max_size:
            raise RuntimeError(f"group closure exceeded {max_size} elements")
        frontier = new
    return frozenset(tuple(v) for v in visited)


def mark_products(reps, subgroup, int p):
    """Mark every product rep*k; detect the first product reached twice."""
    cdef list reps_b = [_to_bytes(rep, p) for rep in reps]
    cdef list sub_b = [_to_bytes(elt, p) for elt in subgroup]
    cdef set seen = set()
    cdef object duplicate = None
    cdef bytes r, k, prod
    for r in reps_b:
        for k in sub_b:
            prod = _mul_bytes(
                <const unsigned char*> r, <const unsigned char*> k, p
            )
            if prod in seen:
                if duplicate is None:
                    duplicate = tuple(prod)
            else:
                seen.add(prod)
    return len(seen), duplicate
