"""Local quadratic-extension data.

Everything here is about a quadratic etale algebra L over a p-adic field F
with odd residue characteristic or p = 2: the splitting symbol that says
whether L is inert, ramified or split over F, the values of an unramified
character on the relevant uniformizer classes, and the unit indices
(o_L^x : o_m^x) of the filtration orders o_m = o + p^m o_L, together with a
finite-quotient counting oracle for those indices.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .exact import Rational, rat


class PrecisionError(RuntimeError):
    """Raised when a finite-quotient computation fails to stabilize."""


class SplittingSymbol(enum.IntEnum):
    INERT = -1
    RAMIFIED = 0
    SPLIT = 1


def _is_unit_square(u: int, p: int) -> bool:
    """True when the p-adic unit u is a square in Z_p^x."""
    if p == 2:
        return u % 8 == 1
    return pow(u % p, (p - 1) // 2, p) == 1


def splitting_symbol(d: int, p: int) -> SplittingSymbol:
    """Classify the quadratic algebra F(sqrt(d)) over Q_p.

    Returns +1 when d is a p-adic square (split), -1 when d is a unit
    non-square (inert/unramified field), and 0 when d is a non-square of
    positive valuation (ramified).  d = 0 is rejected: it does not define
    an etale algebra.
    """
    if d == 0:
        raise ValueError("d = 0 does not define a quadratic algebra")
    v, u = 0, d
    while u % p == 0:
        u //= p
        v += 1
    if v % 2 == 0 and _is_unit_square(u, p):
        return SplittingSymbol.SPLIT
    if v == 0:
        return SplittingSymbol.INERT
    return SplittingSymbol.RAMIFIED


@dataclass(frozen=True)
class LocalQuadData:
    """A splitting class together with the character values it supports.

    lambda_piF is the value of the (unramified) character on a uniformizer
    of F.  In the split and ramified cases the character also sees finer
    elements: lambda_piL on a uniformizer of L, and in the split case
    lambda_piF_over_piL on their quotient.  Slots that are meaningless for
    the given splitting class must be None; present values must be nonzero
    and satisfy the multiplicative relations tying them to lambda_piF.
    """

    p: int
    symbol: SplittingSymbol
    lambda_piF: Rational
    lambda_piL: Optional[Rational] = None
    lambda_piF_over_piL: Optional[Rational] = None

    def __post_init__(self):
        if self.p < 2:
            raise ValueError("p must be a prime")
        if not self.lambda_piF:
            raise ValueError("lambda_piF must be nonzero")
        sym = SplittingSymbol(self.symbol)
        object.__setattr__(self, "symbol", sym)
        if sym is SplittingSymbol.INERT:
            if self.lambda_piL is not None or self.lambda_piF_over_piL is not None:
                raise ValueError("inert class carries only lambda_piF")
        elif sym is SplittingSymbol.RAMIFIED:
            if self.lambda_piL is None:
                raise ValueError("ramified class requires lambda_piL")
            if self.lambda_piF_over_piL is not None:
                raise ValueError("lambda_piF_over_piL is a split-only value")
            if self.lambda_piL * self.lambda_piL != self.lambda_piF:
                raise ValueError("ramified class needs lambda_piL^2 = lambda_piF")
        else:
            if self.lambda_piL is None or self.lambda_piF_over_piL is None:
                raise ValueError("split class requires both extra values")
            if not self.lambda_piL or not self.lambda_piF_over_piL:
                raise ValueError("character values must be nonzero")
            if self.lambda_piL * self.lambda_piF_over_piL != self.lambda_piF:
                raise ValueError(
                    "split class needs lambda_piL * lambda_piF_over_piL = lambda_piF"
                )

    @property
    def q(self) -> int:
        """Residue cardinality of F (here always p itself)."""
        return self.p


def unit_index(data: LocalQuadData, m: int) -> Rational:
    """The index (o_L^x : o_m^x) = (1 - symbol/q) q^m, with o_0 = o_L.

    For m = 0 the order is all of o_L and the index is 1; the closed
    formula applies from m = 1 on.
    """
    if m < 0:
        raise ValueError("m must be non-negative")
    if m == 0:
        return rat(1)
    q = data.q
    return (1 - rat(int(data.symbol), q)) * rat(q) ** m


def unit_index_oracle(a: int, b: int, c: int, p: int, m: int) -> int:
    """Count (o_L^x : o_m^x) inside the finite quotient o_L / p^k o_L.

    o_L is presented on the integral basis {1, xi0} where xi0 has minimal
    polynomial x^2 + b x + ac, so the quotient by p^k is the ring
    (Z/p^k)[x]/(x^2 + b x + ac) and the norm of x + y xi0 is
    x^2 - b x y + a c y^2.  A class is a unit exactly when its norm is a
    unit mod p.  The order o_m sits inside as the pairs (x, p^m y); since
    1 + p^k o_L lies in o_m^x for k >= m, the global index equals the ratio
    of unit counts in the quotient.  Computed at k = m+1 and k = m+2; a
    mismatch raises PrecisionError rather than guessing.
    """
    if c % p == 0:
        raise ValueError("c must be a p-adic unit")
    if m < 0:
        raise ValueError("m must be non-negative")

    b_red = b % p
    ac_red = (a * c) % p

    def norm_unit_count(xs: np.ndarray, ys: np.ndarray) -> int:
        x = (xs % p).astype(np.int16)[:, None]
        y = (ys % p).astype(np.int16)[None, :]
        norm = (x * x - b_red * x * y + ac_red * y * y) % p
        return int(np.count_nonzero(norm))

    def index_at(k: int) -> int:
        pk = p**k
        full = np.arange(pk, dtype=np.int64)
        total = norm_unit_count(full, full)
        sub = (np.arange(p ** (k - m), dtype=np.int64) * p**m) % pk
        image = norm_unit_count(full, sub)
        if image == 0 or total % image:
            raise PrecisionError(
                f"unit count {total} not divisible by suborder count {image}"
            )
        return total // image

    first, second = index_at(m + 1), index_at(m + 2)
    if first != second:
        raise PrecisionError(
            f"index did not stabilize: k={m + 1} gives {first}, k={m + 2} gives {second}"
        )
    return second
