"""Assembly of the global value from its local pieces.

The two kappa constants (an archimedean Gamma product and a finite product
over the level primes), the truncated Euler product of local factors, the
weight-l special-value constant, and the consistency identity tying the
two constants together.

Character data is complex-valued here (unitary class characters), while
the formal local modules work over exact rationals; the two layers meet
only through numeric evaluation of the same formulas, and the tests pin
that meeting point prime by prime.
"""

from __future__ import annotations

import math
import numbers
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Mapping, Optional, Sequence, Tuple

from .arch import _reciprocal_gamma, c1_coefficient, gamma_fn
from .zeta import UNRAMIFIED_FACTOR_NOTE

__all__ = [
    "ALGEBRAICITY_NOTE",
    "CONVENTION_NOTE",
    "DegenerateInputWarning",
    "TruncationWarning",
    "PrimeQuadData",
    "GlobalInput",
    "GlobalZReport",
    "a_lambda",
    "kappa_infinity",
    "kappa_N",
    "global_z",
    "global_z_report",
    "theorem3_constant",
    "theorem3_consistency",
    "special_value_ratio",
    "v_N",
    "primes_up_to",
]

ALGEBRAICITY_NOTE = (
    "numeric value only: algebraicity of the normalized ratio is not certified"
)
CONVENTION_NOTE = (
    "contragredient local shape; self-dual under trivial central character"
)

_PAIRING_TOL = 1e-9


class DegenerateInputWarning(UserWarning):
    """The class sum a(Lambda) vanishes, so the global constant degenerates."""


class TruncationWarning(UserWarning):
    """The Euler product is evaluated outside its convergence half-plane."""


def primes_up_to(n: int) -> list:
    """All primes <= n, by sieve."""
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, int(n**0.5) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    return [p for p in range(2, n + 1) if sieve[p]]


def _squarefree_factors(n: int) -> Tuple[int, ...]:
    """Sorted prime factors of n; rejects n with a square factor."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    factors = []
    m = n
    d = 2
    while d * d <= m:
        if m % d == 0:
            m //= d
            if m % d == 0:
                raise ValueError(f"{n} is not square-free")
            factors.append(d)
        d += 1 if d == 2 else 2
    if m > 1:
        factors.append(m)
    return tuple(factors)


def v_N(n: int) -> Fraction:
    """The level volume V_N = prod_{p | N} 1/((p^2 - 1)(p^4 - 1)), exactly."""
    value = Fraction(1)
    for p in _squarefree_factors(n):
        value *= Fraction(1, (p * p - 1) * (p**4 - 1))
    return value


def _close(x: complex, y: complex, tol: float = _PAIRING_TOL) -> bool:
    return abs(complex(x) - complex(y)) <= tol * max(1.0, abs(complex(y)))


@dataclass(frozen=True)
class PrimeQuadData:
    """Complex character data of the quadratic algebra above one prime.

    The numeric mirror of the exact local datum: a splitting symbol in
    {-1, 0, +1} and the unitary character values on the uniformizer
    classes that exist for that symbol.  Slots that are meaningless for
    the class must stay None; present values must be nonzero and satisfy
    the multiplicative relations (ramified: lambda_piL^2 = lambda_piF;
    split: lambda_piL * lambda_piF_over_piL = lambda_piF) to 1e-9.
    """

    symbol: int
    lambda_piF: complex = 1.0
    lambda_piL: Optional[complex] = None
    lambda_piF_over_piL: Optional[complex] = None

    def __post_init__(self):
        if self.symbol not in (-1, 0, 1):
            raise ValueError("symbol must be -1 (inert), 0 (ramified) or +1 (split)")
        if not self.lambda_piF:
            raise ValueError("lambda_piF must be nonzero")
        if self.symbol == -1:
            if self.lambda_piL is not None or self.lambda_piF_over_piL is not None:
                raise ValueError("inert class carries only lambda_piF")
            return
        if self.lambda_piL is None or not self.lambda_piL:
            raise ValueError("non-inert class needs a nonzero lambda_piL")
        if self.symbol == 0:
            if self.lambda_piF_over_piL is not None:
                raise ValueError("ramified class carries no lambda_piF_over_piL")
            if not _close(self.lambda_piL * self.lambda_piL, self.lambda_piF):
                raise ValueError("ramified class needs lambda_piL^2 = lambda_piF")
            return
        if self.lambda_piF_over_piL is None or not self.lambda_piF_over_piL:
            raise ValueError("split class needs a nonzero lambda_piF_over_piL")
        if not _close(self.lambda_piL * self.lambda_piF_over_piL, self.lambda_piF):
            raise ValueError(
                "split class needs lambda_piL * lambda_piF_over_piL = lambda_piF"
            )


@dataclass(frozen=True)
class GlobalInput:
    """Everything the global formulas consume.

    Class-group data (the values Lambda(t_j) and the coefficients
    a(S_j, Phi)) are inputs, not derived.  The per-prime tables must
    agree on coverage prime by prime: satake_table holds the three
    unramified parameters (u0, u1, u2) of the degree-4 component,
    gl2_table holds the degree-2 component (a Satake pair off the level,
    a twist value +-1 at a level prime), and local_table holds the
    quadratic character data.  l1 is the lowest weight of the degree-2
    archimedean component and defaults to l.
    """

    l: int
    D: int
    N: int
    lambda_classvals: Tuple[complex, ...]
    fourier_classvals: Tuple[complex, ...]
    a1: complex
    r: complex
    satake_table: Mapping[int, Tuple[complex, complex, complex]]
    gl2_table: Mapping[int, object]
    local_table: Mapping[int, PrimeQuadData]
    l1: Optional[int] = None
    petersson_phi: Optional[float] = None
    petersson_psi: Optional[float] = None

    def __post_init__(self):
        if self.l < 2 or self.l % 2:
            raise ValueError("l must be an even integer >= 2")
        if self.l1 is None:
            object.__setattr__(self, "l1", self.l)
        if self.l1 < 2 or self.l1 % 2:
            raise ValueError("l1 must be an even integer >= 2")
        if self.D <= 0 or self.D % 4 not in (0, 3):
            raise ValueError("D must be a positive integer = 0 or 3 mod 4")
        level = _squarefree_factors(self.N)  # also rejects square factors
        object.__setattr__(self, "lambda_classvals", tuple(self.lambda_classvals))
        object.__setattr__(self, "fourier_classvals", tuple(self.fourier_classvals))
        if not self.lambda_classvals:
            raise ValueError("at least one ideal class is required")
        if len(self.lambda_classvals) != len(self.fourier_classvals):
            raise ValueError("class value lists must have equal length h")
        object.__setattr__(
            self, "satake_table", {int(p): tuple(v) for p, v in self.satake_table.items()}
        )
        object.__setattr__(self, "gl2_table", dict(self.gl2_table))
        object.__setattr__(self, "local_table", dict(self.local_table))
        for p, triple in self.satake_table.items():
            if len(triple) != 3 or not all(complex(u) for u in triple):
                raise ValueError(f"satake_table[{p}] needs three nonzero values")
        for p in level:
            if p not in self.gl2_table:
                raise ValueError(f"level prime {p} missing from gl2_table")
            if p not in self.local_table:
                raise ValueError(f"level prime {p} missing from local_table")
        for p, entry in self.gl2_table.items():
            if p in level:
                try:
                    omega = complex(entry)
                except TypeError:
                    raise ValueError(
                        f"gl2_table[{p}]: a level prime carries a twist value +-1"
                    ) from None
                if min(abs(omega - 1), abs(omega + 1)) > 1e-12:
                    raise ValueError(
                        f"gl2_table[{p}]: a level prime carries a twist value +-1"
                    )
            else:
                try:
                    pair = tuple(entry)
                except TypeError:
                    pair = ()
                if len(pair) != 2 or not all(complex(b) for b in pair):
                    raise ValueError(
                        f"gl2_table[{p}]: an unramified prime carries a nonzero Satake pair"
                    )
        for p, data in self.local_table.items():
            if not isinstance(data, PrimeQuadData):
                raise ValueError(f"local_table[{p}] must be a PrimeQuadData")
            if p in self.satake_table and not _close(
                data.lambda_piF, self.omega_pi(p)
            ):
                raise ValueError(
                    f"pairing constraint violated at p = {p}: "
                    f"lambda_piF = {data.lambda_piF} but omega_pi = {self.omega_pi(p)}"
                )

    @property
    def h(self) -> int:
        """Number of ideal classes carried by the input."""
        return len(self.lambda_classvals)

    @property
    def level_primes(self) -> Tuple[int, ...]:
        return _squarefree_factors(self.N)

    @property
    def splitting_table(self) -> Dict[int, int]:
        """Per-prime splitting symbols, as a view of local_table."""
        return {p: data.symbol for p, data in self.local_table.items()}

    def omega_pi(self, p: int) -> complex:
        """Central character value u0^2 u1 u2 at the prime p."""
        u0, u1, u2 = (complex(u) for u in self.satake_table[p])
        return u0 * u0 * u1 * u2

    def gamma(self, p: int) -> Tuple[complex, complex, complex, complex]:
        """The four Satake values (u1 u2 u0, u1 u0, u0, u2 u0) at p."""
        u0, u1, u2 = (complex(u) for u in self.satake_table[p])
        return (u1 * u2 * u0, u1 * u0, u0, u2 * u0)


def a_lambda(gi: GlobalInput) -> complex:
    """The class sum a(Lambda) = sum_j Lambda(t_j) a(S_j, Phi).

    Warns (DegenerateInputWarning) when the sum vanishes to working
    precision, since every global constant carries it as a factor.
    """
    value = complex(
        sum(lam * av for lam, av in zip(gi.lambda_classvals, gi.fourier_classvals))
    )
    if abs(value) < 1e-12:
        warnings.warn(
            "a(Lambda) = 0 to working precision; the global constants degenerate",
            DegenerateInputWarning,
            stacklevel=2,
        )
    return value


def _kappa_infinity_value(
    l: int, D: int, a_bar: complex, c1: complex, ir: complex, s: complex
) -> complex:
    s = complex(s)
    ir = complex(ir)
    front = (
        0.5
        * a_bar
        * c1
        * math.pi
        * complex(D) ** (-3 * s - l / 2)
        * (4 * math.pi) ** (-3 * s + 1.5 - l)
    )
    num = gamma_fn(3 * s + l - 1 + ir / 2) * gamma_fn(3 * s + l - 1 - ir / 2)
    return front * num * _reciprocal_gamma(3 * s + (l + 1) / 2)


def kappa_infinity(gi: GlobalInput, s: complex) -> complex:
    """Archimedean constant of the global formula:

    (1/2) conj(a(Lambda)) c(1) pi D^(-3s-l/2) (4 pi)^(-3s+3/2-l)
        Gamma(3s+l-1+ir/2) Gamma(3s+l-1-ir/2) / Gamma(3s+(l+1)/2)

    with c(1) from c1_coefficient (raising the weight-l1 coefficient a1
    to weight l when needed).
    """
    a_bar = a_lambda(gi).conjugate()
    c1 = c1_coefficient(gi.l, gi.l1, gi.r, gi.a1)
    return _kappa_infinity_value(gi.l, gi.D, a_bar, c1, 1j * complex(gi.r), s)


def kappa_N(gi: GlobalInput, s):
    """Level constant: prod over p | N of

    p(p-1)/((p+1)(p^4-1)) * (1 - symbol/p) * (1 - p^(-6s-1))^(-1).

    Exact (a Fraction) when s is rational with 6s+1 an integer; complex
    otherwise.  N = 1 gives the empty product 1.
    """
    if isinstance(s, numbers.Rational):
        k = 6 * Fraction(s.numerator, s.denominator) + 1
        if k.denominator == 1:
            value = Fraction(1)
            for p in gi.level_primes:
                sym = gi.local_table[p].symbol
                factor = Fraction(p * (p - 1), (p + 1) * (p**4 - 1)) * (
                    1 - Fraction(sym, p)
                )
                value *= factor / (1 - Fraction(p) ** (-int(k)))
            return value
    s = complex(s)
    value = complex(1)
    for p in gi.level_primes:
        sym = gi.local_table[p].symbol
        value *= (
            p * (p - 1) / ((p + 1) * (p**4 - 1))
            * (1 - sym / p)
            / (1 - complex(p) ** (-6 * s - 1))
        )
    return value


def _local_factor_parts(gi: GlobalInput, p: int, s: complex):
    """(rankin_inverse, aux_inverse) at t = p^(-3s).

    rankin_inverse is the inverse local factor of the degree-8 pairing
    (contragredient shape: every Satake value enters inverted), built
    from the Satake pair off the level and from the twist value at a
    level prime.  aux_inverse is zeta_p(6s+1)^(-1) times the inverse
    local factor of the induced-character twist.  The local factor of
    the global product is aux_inverse / rankin_inverse (assembled, not
    restated; see UNRAMIFIED_FACTOR_NOTE).
    """
    data = gi.local_table.get(p)
    sat = gi.satake_table.get(p)
    gl2 = gi.gl2_table.get(p)
    if data is None or sat is None or gl2 is None:
        raise ValueError(f"missing local data for p = {p}")
    t = complex(p) ** (-3 * complex(s))
    gamma = gi.gamma(p)
    omega_pi = gi.omega_pi(p)
    zeta_inv = 1 - t * t / p

    if p in gi.level_primes:
        omega = complex(gl2)
        chi = 1 / (omega_pi * omega * omega)
        rankin_inv = complex(1)
        for g in gamma:
            rankin_inv *= 1 - t / (g * omega * p)
        if data.symbol == -1:
            twist_inv = 1 - chi * t * t / p**3
        else:
            chi_omega = chi * omega
            twist_inv = 1 - data.lambda_piL * chi_omega * t / p**1.5
            if data.symbol == 1:
                twist_inv *= 1 - data.lambda_piF_over_piL * chi_omega * t / p**1.5
        return rankin_inv, zeta_inv * twist_inv

    beta = tuple(complex(b) for b in gl2)
    chi = 1 / (omega_pi * beta[0] * beta[1])
    rankin_inv = complex(1)
    for g in gamma:
        for b in beta:
            rankin_inv *= 1 - t / (g * b * math.sqrt(p))
    ai_inv = complex(1)
    for b in beta:
        if data.symbol == -1:
            ai_inv *= 1 - data.lambda_piF * (chi * b) ** 2 * t * t / p**2
        elif data.symbol == 0:
            ai_inv *= 1 - data.lambda_piL * chi * b * t / p
        else:
            for delta in (data.lambda_piL, data.lambda_piF_over_piL):
                ai_inv *= 1 - delta * chi * b * t / p
    return rankin_inv, zeta_inv * ai_inv


def _local_euler_ratio(gi: GlobalInput, p: int, s: complex) -> complex:
    rankin_inv, aux_inv = _local_factor_parts(gi, p, s)
    return aux_inv / rankin_inv


def _tail_bound(p_max: int, s: complex) -> float:
    """Crude relative bound on the omitted primes' contribution.

    Assumes unitary local data (all Satake and character values on the
    unit circle): each omitted prime then moves the log of the product
    by at most 26 p^(-alpha) with alpha = 3 Re(s) + 1/2, and the primes
    beyond p_max contribute at most the integral tail of that bound.
    Infinite when alpha <= 1 (outside absolute convergence).
    """
    alpha = 3 * complex(s).real + 0.5
    if alpha <= 1:
        return math.inf
    log_tail = 26.0 * p_max ** (1 - alpha) / (alpha - 1)
    return math.expm1(log_tail)


@dataclass(frozen=True)
class GlobalZReport:
    """A truncated global evaluation with its error bookkeeping."""

    value: complex
    kappa_inf: complex
    kappa_level: complex
    euler_product: complex
    primes: Tuple[int, ...]
    tail_bound: float
    in_convergence_region: bool
    notes: Tuple[str, ...]


def global_z_report(gi: GlobalInput, s, p_max: int) -> GlobalZReport:
    """kappa_inf * kappa_level * prod_{p <= p_max} (local factor at t_p).

    Every prime up to p_max must be covered by the three tables; the
    level primes must all lie below the truncation point.  The report
    carries the crude tail bound and flags evaluation outside the
    convergence region Re(6s+1) > 1 (also warned, TruncationWarning).
    """
    level = gi.level_primes
    if level and p_max < max(level):
        raise ValueError(
            f"p_max = {p_max} omits the level prime {max(level)}"
        )
    s_c = complex(s)
    in_region = (6 * s_c + 1).real > 1
    if not in_region:
        warnings.warn(
            "Re(6s+1) <= 1: the Euler-product truncation is unreliable here",
            TruncationWarning,
            stacklevel=2,
        )
    primes = tuple(primes_up_to(p_max))
    product = complex(1)
    for p in primes:
        product *= _local_euler_ratio(gi, p, s_c)
    k_inf = kappa_infinity(gi, s_c)
    k_level = complex(kappa_N(gi, s_c))
    return GlobalZReport(
        value=k_inf * k_level * product,
        kappa_inf=k_inf,
        kappa_level=k_level,
        euler_product=product,
        primes=primes,
        tail_bound=_tail_bound(p_max, s_c),
        in_convergence_region=in_region,
        notes=(UNRAMIFIED_FACTOR_NOTE, CONVENTION_NOTE),
    )


def global_z(gi: GlobalInput, s, p_max: int) -> complex:
    """The truncated global value; see global_z_report for the bookkeeping."""
    return global_z_report(gi, s, p_max).value


def theorem3_constant(gi: GlobalInput) -> complex:
    """The weight-l special-value constant:

    conj(a(Lambda)) D^(-l+3/2) 2^(-4l+6) (2l-5)!
        * prod_{p | N} p(p-1)/((p+1)(p^4-1)) (1 - symbol/p) (1 - p^(-l+2))^(-1).
    """
    l = gi.l
    if l < 3:
        raise ValueError("(2l-5)! needs l >= 3")
    value = (
        a_lambda(gi).conjugate()
        * complex(gi.D) ** (-l + 1.5)
        * 2.0 ** (-4 * l + 6)
        * float(math.factorial(2 * l - 5))
    )
    for p in gi.level_primes:
        sym = gi.local_table[p].symbol
        value *= (
            p * (p - 1) / ((p + 1) * (p**4 - 1))
            * (1 - sym / p)
            / (1 - float(p) ** (-(l - 2)))
        )
    return value


def theorem3_consistency(gi: GlobalInput) -> bool:
    """Check that the two printed constants agree at s = l/6 - 1/2.

    kappa_infinity specialized to the holomorphic point (ir = l - 1,
    c(1) = (4 pi)^(-l/2)) must equal the level-free part of
    theorem3_constant times pi^(4-2l); the comparison reduces to the
    factorial identity (2l-4)!/(2(l-2)) = (2l-5)! and is checked to
    1e-9 relative.  The input's own spectral data (r, a1, l1) is not
    consulted: the check specializes internally.
    """
    l = gi.l
    if l < 3 or l % 2:
        raise ValueError("the special-value point needs an even l >= 3")
    a_bar = a_lambda(gi).conjugate()
    kap = _kappa_infinity_value(
        l, gi.D, a_bar, (4 * math.pi) ** (-l / 2), ir=l - 1.0, s=l / 6 - 0.5
    )
    target = (
        a_bar
        * complex(gi.D) ** (-l + 1.5)
        * 2.0 ** (-4 * l + 6)
        * float(math.factorial(2 * l - 5))
        * math.pi ** (4 - 2 * l)
    )
    if target == 0:
        return kap == 0
    return abs(kap - target) <= 1e-9 * abs(target)


def _rankin_lfactor(gi: GlobalInput, p: int, s: complex) -> complex:
    """The degree-8 pairing's local L-value (the inverse of rankin_inverse)."""
    rankin_inv, _ = _local_factor_parts(gi, p, s)
    return 1 / rankin_inv


def special_value_ratio(gi: GlobalInput, p_max: int) -> complex:
    """L(l/2-1, pairing) / (pi^(5l-8) (Phi,Phi)(Psi,Psi)), truncated at p_max.

    Requires both Petersson norms and the holomorphic spectral point
    ir = l - 1 (the only point where l/2 - 1 is the value 3s + 1/2 of
    the running variable).  The numerator is the truncated Euler
    product of the degree-8 local factors at t_p = p^(-l/2+3/2).  The
    result is a numeric value only; see ALGEBRAICITY_NOTE.
    """
    if gi.petersson_phi is None or gi.petersson_psi is None:
        raise ValueError("both Petersson norms are required")
    if abs(1j * complex(gi.r) - (gi.l - 1)) > 1e-9:
        raise ValueError("the special value lives at the point ir = l - 1")
    level = gi.level_primes
    if level and p_max < max(level):
        raise ValueError(f"p_max = {p_max} omits the level prime {max(level)}")
    s0 = gi.l / 6 - 0.5
    lvalue = complex(1)
    for p in primes_up_to(p_max):
        lvalue *= _rankin_lfactor(gi, p, s0)
    return lvalue / (
        math.pi ** (5 * gi.l - 8) * gi.petersson_phi * gi.petersson_psi
    )
