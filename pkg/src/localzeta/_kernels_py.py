"""Pure-Python kernels for 4x4 matrix arithmetic over Z/p.

Matrices are flat 16-tuples of ints in [0, p), row-major.  The compiled
extension _kernels implements the same three functions; kernels.py picks
whichever is available.  These loops are the only hot spot of the finite
group enumeration, everything else in the package is either exact formal
algebra (already fast) or vectorized numerics.
"""

from __future__ import annotations

from typing import Iterable, Sequence

BACKEND = "python"

IDENTITY = (1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1)


def mat_mul_mod(a: Sequence[int], b: Sequence[int], p: int) -> tuple[int, ...]:
    """Product of two flat 4x4 matrices mod p."""
    out = []
    for i in (0, 4, 8, 12):
        a0, a1, a2, a3 = a[i], a[i + 1], a[i + 2], a[i + 3]
        for j in (0, 1, 2, 3):
            out.append((a0 * b[j] + a1 * b[4 + j] + a2 * b[8 + j] + a3 * b[12 + j]) % p)
    return tuple(out)


def group_closure(
    gens: Iterable[Sequence[int]], p: int, max_size: int
) -> frozenset[tuple[int, ...]]:
    """Closure of the generators under multiplication mod p.

    Breadth-first: repeatedly multiplies the frontier by every generator.
    Since the generated set is finite (a subgroup of GL4(F_p)) and every
    generator is invertible, closure under products equals the subgroup.
    Raises RuntimeError if the closure exceeds max_size.
    """
    gens = [tuple(v % p for v in g) for g in gens]
    visited = {IDENTITY}
    frontier = [IDENTITY]
    while frontier:
        new = []
        for m in frontier:
            for g in gens:
                prod = mat_mul_mod(m, g, p)
                if prod not in visited:
                    visited.add(prod)
                    new.append(prod)
        if len(visited) > max_size:
            raise RuntimeError(f"group closure exceeded {max_size} elements")
        frontier = new
    return frozenset(visited)


def mark_products(
    reps: Sequence[Sequence[int]], subgroup: Sequence[Sequence[int]], p: int
) -> tuple[int, tuple[int, ...] | None]:
    """Mark every product rep*k; detect the first product reached twice.

    Returns (number of distinct products, first duplicated product or
    None).  If the reps lie in pairwise distinct left cosets of the
    subgroup, no product repeats and the count is len(reps)*len(subgroup).
    """
    seen: set[tuple[int, ...]] = set()
    duplicate = None
    for r in reps:
        rt = tuple(v % p for v in r)
        for k in subgroup:
            prod = mat_mul_mod(rt, k, p)
            if prod in seen:
                if duplicate is None:
                    duplicate = prod
            else:
                seen.add(prod)
    return len(seen), duplicate
