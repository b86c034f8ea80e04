"""Exact arithmetic substrate for all formal identities.

Scalars live in the quadratic field Q(sqrt(q)) for a prime q, stored as
pairs (a, b) = a + b*sqrt(q).  Because q is prime, sqrt(q) is irrational,
the pair representation is faithful, and nonzero elements are invertible
(a^2 - b^2*q = 0 with rational a, b forces a = b = 0).  On top of the
scalars sit dense univariate polynomials, rational functions, and
truncated power series in one formal variable; degrees in this problem
never exceed 8, so nothing clever is needed.

No floating point enters this module.  Rational arithmetic is backed by
gmpy2's mpq when available (exact, and considerably faster than the
stdlib), with fractions.Fraction as a drop-in fallback.
"""

from __future__ import annotations

from typing import Iterable, Sequence, Union

try:
    from gmpy2 import mpq as Rational
except ImportError:  # pragma: no cover - gmpy2 is a hard dependency
    from fractions import Fraction as Rational

RationalLike = Union[int, str, "Rational"]


def rat(value: RationalLike, den: int | None = None) -> Rational:
    """Coerce to an exact rational; accepts ints, 'num/den' strings, rationals."""
    if den is not None:
        return Rational(value, den)
    return Rational(value)


class PoleAtOriginError(ZeroDivisionError):
    """Raised when a Taylor expansion at t = 0 is requested across a pole."""


class QuadCoeff:
    """An element a + b*sqrt(q) of Q(sqrt(q)), q prime.

    Arithmetic mixes freely with ints and rationals (coerced into the
    rational part).  Elements attached to different primes q never mix;
    attempting to combine them raises ValueError rather than guessing.
    """

    __slots__ = ("a", "b", "q")

    def __init__(self, a: RationalLike, b: RationalLike, q: int):
        object.__setattr__(self, "a", rat(a))
        object.__setattr__(self, "b", rat(b))
        object.__setattr__(self, "q", q)

    def __setattr__(self, name, value):
        raise AttributeError("QuadCoeff is immutable")

    @classmethod
    def rational(cls, x: RationalLike, q: int) -> "QuadCoeff":
        return cls(x, 0, q)

    @classmethod
    def sqrt_q(cls, q: int) -> "QuadCoeff":
        return cls(0, 1, q)

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def conjugate(self) -> "QuadCoeff":
        return QuadCoeff(self.a, -self.b, self.q)

    def _coerce(self, other) -> "QuadCoeff | None":
        if isinstance(other, QuadCoeff):
            if other.q != self.q:
                raise ValueError(
                    f"cannot mix Q(sqrt({self.q})) and Q(sqrt({other.q}))"
                )
            return other
        if isinstance(other, (int, Rational)):
            return QuadCoeff(other, 0, self.q)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadCoeff(self.a + o.a, self.b + o.b, self.q)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadCoeff(self.a - o.a, self.b - o.b, self.q)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadCoeff(o.a - self.a, o.b - self.b, self.q)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadCoeff(
            self.a * o.a + self.b * o.b * self.q,
            self.a * o.b + self.b * o.a,
            self.q,
        )

    __rmul__ = __mul__

    def inverse(self) -> "QuadCoeff":
        norm = self.a * self.a - self.b * self.b * self.q
        if norm == 0:
            raise ZeroDivisionError("inverse of zero in Q(sqrt(q))")
        return QuadCoeff(self.a / norm, -self.b / norm, self.q)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = QuadCoeff(1, 0, self.q)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __neg__(self):
        return QuadCoeff(-self.a, -self.b, self.q)

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except ValueError:
            return False
        if o is None:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((self.a, self.b, self.q))

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def __complex__(self) -> complex:
        return complex(float(self.a) + float(self.b) * self.q**0.5)

    def __repr__(self):
        return f"QuadCoeff({self.a!s}, {self.b!s}, q={self.q})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        root = f"{self.b}*sqrt({self.q})"
        if self.a == 0:
            return root
        return f"{self.a} + {root}" if self.b > 0 else f"{self.a} - {-self.b}*sqrt({self.q})"


def q_half_power(q: int, n: int) -> QuadCoeff:
    """q**(n/2) as an element of Q(sqrt(q)), for any integer n."""
    if n % 2 == 0:
        return QuadCoeff(Rational(q) ** (n // 2), 0, q)
    return QuadCoeff(0, Rational(q) ** ((n - 1) // 2), q)


def _as_quad(value, q: int) -> QuadCoeff:
    if isinstance(value, QuadCoeff):
        if value.q != q:
            raise ValueError("mixed ground fields in polynomial coefficients")
        return value
    return QuadCoeff(value, 0, q)


class Poly:
    """Dense polynomial over Q(sqrt(q)); coefficients[i] is the t^i term.

    Trailing zeros are stripped; the zero polynomial has no coefficients
    and degree -1.
    """

    __slots__ = ("coefficients", "q")

    def __init__(self, coefficients: Iterable, q: int | None = None):
        coeffs = list(coefficients)
        if q is None:
            for c in coeffs:
                if isinstance(c, QuadCoeff):
                    q = c.q
                    break
            else:
                raise ValueError("polynomial ground field undetermined; pass q")
        coeffs = [_as_quad(c, q) for c in coeffs]
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))
        object.__setattr__(self, "q", q)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def one(cls, q: int) -> "Poly":
        return cls([QuadCoeff(1, 0, q)], q)

    @classmethod
    def zero(cls, q: int) -> "Poly":
        return cls([], q)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def coefficient(self, i: int) -> QuadCoeff:
        if 0 <= i < len(self.coefficients):
            return self.coefficients[i]
        return QuadCoeff(0, 0, self.q)

    @property
    def constant_term(self) -> QuadCoeff:
        return self.coefficient(0)

    def _check(self, other: "Poly"):
        if other.q != self.q:
            raise ValueError("mixed ground fields")

    def __add__(self, other):
        if isinstance(other, Poly):
            self._check(other)
            n = max(len(self.coefficients), len(other.coefficients))
            return Poly(
                [self.coefficient(i) + other.coefficient(i) for i in range(n)], self.q
            )
        if isinstance(other, (int, Rational, QuadCoeff)):
            return self + Poly([other], self.q)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (Poly, int, Rational, QuadCoeff)):
            return self + (-other if isinstance(other, Poly) else Poly([other], self.q) * -1)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, Rational, QuadCoeff)):
            return Poly([other], self.q) - self
        return NotImplemented

    def __neg__(self):
        return Poly([-c for c in self.coefficients], self.q)

    def __mul__(self, other):
        if isinstance(other, Poly):
            self._check(other)
            if not self.coefficients or not other.coefficients:
                return Poly.zero(self.q)
            out = [QuadCoeff(0, 0, self.q)] * (
                len(self.coefficients) + len(other.coefficients) - 1
            )
            for i, ci in enumerate(self.coefficients):
                if not ci:
                    continue
                for j, cj in enumerate(other.coefficients):
                    out[i + j] = out[i + j] + ci * cj
            return Poly(out, self.q)
        if isinstance(other, (int, Rational, QuadCoeff)):
            s = _as_quad(other, self.q)
            return Poly([c * s for c in self.coefficients], self.q)
        return NotImplemented

    __rmul__ = __mul__

    def __call__(self, x: QuadCoeff) -> QuadCoeff:
        acc = QuadCoeff(0, 0, self.q)
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def eval_complex(self, t: complex) -> complex:
        acc = 0j
        for c in reversed(self.coefficients):
            acc = acc * t + complex(c)
        return acc

    def shift(self, k: int) -> "Poly":
        """Multiply by t^k."""
        zero = QuadCoeff(0, 0, self.q)
        return Poly([zero] * k + list(self.coefficients), self.q)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.q == other.q and self.coefficients == other.coefficients
        return NotImplemented

    def __hash__(self):
        return hash((self.coefficients, self.q))

    def __bool__(self):
        return bool(self.coefficients)

    def to_str(self, var: str = "t") -> str:
        if not self.coefficients:
            return "0"
        parts = []
        for i, c in enumerate(self.coefficients):
            if not c:
                continue
            # Pull an overall minus sign out of coefficients that live on a
            # single ray (pure rational, or a pure sqrt(q) multiple) so the
            # join below can absorb it into the separator.
            if c.a == 0 and c.b < 0:
                cs = f"-({-c})"
            else:
                cs = str(c)
                if not c.is_rational:
                    cs = f"({cs})"
            if i == 0:
                parts.append(cs)
            else:
                power = var if i == 1 else f"{var}^{i}"
                if cs == "1":
                    term = power
                elif cs == "-1":
                    term = f"-{power}"
                else:
                    term = f"{cs}*{power}"
                parts.append(term)
        out = parts[0]
        for term in parts[1:]:
            out += f" - {term[1:]}" if term.startswith("-") else f" + {term}"
        return out

    def truncate(self, n: int) -> "TruncatedSeries":
        """This polynomial viewed as a power series through order n."""
        return TruncatedSeries([self.coefficient(i) for i in range(n + 1)], self.q)

    def __repr__(self):
        return f"Poly({self.to_str()})"


class RationalFunction:
    """Quotient num/den of polynomials, den != 0.

    When den(0) != 0 the pair is normalized so that den has constant term
    1; all L-factor denominators in this package satisfy den(0) != 0.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly):
        if not den:
            raise ZeroDivisionError("zero denominator")
        num._check(den)
        d0 = den.constant_term
        if d0 and d0 != 1:
            inv = d0.inverse()
            num = num * inv
            den = den * inv
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    @property
    def q(self) -> int:
        return self.num.q

    def __mul__(self, other):
        if isinstance(other, RationalFunction):
            return RationalFunction(self.num * other.num, self.den * other.den)
        if isinstance(other, (Poly, int, Rational, QuadCoeff)):
            return RationalFunction(self.num * other, self.den)
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, RationalFunction):
            return self.num * other.den == other.num * self.den
        return NotImplemented

    def __hash__(self):
        raise TypeError("unhashable (equality is cross-multiplicative)")

    def __call__(self, x: QuadCoeff) -> QuadCoeff:
        return self.num(x) / self.den(x)

    def eval_complex(self, t: complex) -> complex:
        return self.num.eval_complex(t) / self.den.eval_complex(t)

    def __repr__(self):
        return f"RationalFunction(({self.num.to_str()}) / ({self.den.to_str()}))"


class TruncatedSeries:
    """Power series through a fixed order N: exactly N+1 coefficients."""

    __slots__ = ("coefficients", "q")

    def __init__(self, coefficients: Sequence, q: int | None = None):
        coeffs = list(coefficients)
        if not coeffs:
            raise ValueError("a truncated series holds at least the order-0 term")
        if q is None:
            for c in coeffs:
                if isinstance(c, QuadCoeff):
                    q = c.q
                    break
            else:
                raise ValueError("series ground field undetermined; pass q")
        object.__setattr__(
            self, "coefficients", tuple(_as_quad(c, q) for c in coeffs)
        )
        object.__setattr__(self, "q", q)

    def __setattr__(self, name, value):
        raise AttributeError("TruncatedSeries is immutable")

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, i: int) -> QuadCoeff:
        return self.coefficients[i]

    def _check(self, other: "TruncatedSeries"):
        if other.q != self.q:
            raise ValueError("mixed ground fields")
        if other.order != self.order:
            raise ValueError("mixed truncation orders")

    def __add__(self, other):
        if isinstance(other, TruncatedSeries):
            self._check(other)
            return TruncatedSeries(
                [a + b for a, b in zip(self.coefficients, other.coefficients)], self.q
            )
        return NotImplemented

    def __sub__(self, other):
        if isinstance(other, TruncatedSeries):
            self._check(other)
            return TruncatedSeries(
                [a - b for a, b in zip(self.coefficients, other.coefficients)], self.q
            )
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            self._check(other)
            n = self.order
            zero = QuadCoeff(0, 0, self.q)
            out = [zero] * (n + 1)
            for i, ci in enumerate(self.coefficients):
                if not ci:
                    continue
                for j in range(n + 1 - i):
                    cj = other.coefficients[j]
                    if cj:
                        out[i + j] = out[i + j] + ci * cj
            return TruncatedSeries(out, self.q)
        if isinstance(other, (int, Rational, QuadCoeff)):
            s = _as_quad(other, self.q)
            return TruncatedSeries([c * s for c in self.coefficients], self.q)
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, TruncatedSeries):
            return (
                self.q == other.q
                and self.order == other.order
                and self.coefficients == other.coefficients
            )
        return NotImplemented

    def __hash__(self):
        return hash((self.coefficients, self.q))

    def first_difference(self, other: "TruncatedSeries") -> int | None:
        """Index of the first coefficient where the two series disagree."""
        self._check(other)
        for i, (a, b) in enumerate(zip(self.coefficients, other.coefficients)):
            if a != b:
                return i
        return None

    def __repr__(self):
        return f"TruncatedSeries({[str(c) for c in self.coefficients]})"


def series_of(rf: RationalFunction, n: int) -> TruncatedSeries:
    """Taylor expansion of rf at t = 0 through order n, by long division.

    With num = sum c_k t^k and den = sum d_k t^k (d_0 != 0), the expansion
    s satisfies s_k = (c_k - sum_{j>=1} d_j s_{k-j}) / d_0.
    """
    if n < 0:
        raise ValueError("order must be >= 0")
    d0 = rf.den.constant_term
    if not d0:
        raise PoleAtOriginError("pole at origin: denominator vanishes at t = 0")
    q = rf.q
    dcoeffs = rf.den.coefficients
    s: list[QuadCoeff] = []
    for k in range(n + 1):
        acc = rf.num.coefficient(k)
        for j in range(1, min(k, len(dcoeffs) - 1) + 1):
            dj = dcoeffs[j]
            if dj:
                acc = acc - dj * s[k - j]
        s.append(acc if d0 == 1 else acc / d0)
    return TruncatedSeries(s, q)


_QUAD_OPS = {
    "+": QuadCoeff.__add__,
    "-": QuadCoeff.__sub__,
    "*": QuadCoeff.__mul__,
    "/": QuadCoeff.__truediv__,
    "×": QuadCoeff.__mul__,
    "÷": QuadCoeff.__truediv__,
}


def quad_arith(x: QuadCoeff, y: QuadCoeff, op: str) -> QuadCoeff:
    """Exact field arithmetic in Q(sqrt(q)): op is one of + - * / (× ÷)."""
    try:
        fn = _QUAD_OPS[op]
    except KeyError:
        raise ValueError(f"unknown operation {op!r}") from None
    return fn(x, y)
