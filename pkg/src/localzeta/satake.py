"""Satake parameters and the two exact local L-factor constructors.

The degree-8 factor is built for the contragredient pair, literally as the
product over the four Satake parameters with everything inverted; the
degree-<=2 factor on the other side comes from the character obtained by
automorphic induction, twisted by the restriction character chi.  Both are
returned as inverse L-factors: polynomials in t = q^(-3s).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .exact import Poly, QuadCoeff, Rational, q_half_power, rat
from .localfield import LocalQuadData, SplittingSymbol


@dataclass(frozen=True)
class SatakeParams:
    """Unramified principal-series parameters (u0, u1, u2) = (sigma, chi1, chi2) at a uniformizer.

    gamma holds the four Satake values (u1 u2 u0, u1 u0, u0, u2 u0); the
    central character value omega_pi_piF = gamma[0] * gamma[2] coincides with
    gamma[1] * gamma[3], and that coincidence is checked.
    """

    u0: Rational
    u1: Rational
    u2: Rational
    gamma: tuple = field(init=False, default=None)

    def __post_init__(self):
        if not (self.u0 and self.u1 and self.u2):
            raise ValueError("Satake inputs must be nonzero")
        gamma = (
            self.u1 * self.u2 * self.u0,
            self.u1 * self.u0,
            self.u0,
            self.u2 * self.u0,
        )
        object.__setattr__(self, "gamma", gamma)
        if gamma[0] * gamma[2] != gamma[1] * gamma[3]:
            raise ValueError("central character mismatch among Satake values")

    @property
    def omega_pi_piF(self) -> Rational:
        return self.gamma[0] * self.gamma[2]


@dataclass(frozen=True)
class SteinbergData:
    """An unramified-twist-of-Steinberg local datum: the twist value at a uniformizer."""

    omega_piF: Rational
    conductor_exponent: int = 1

    def __post_init__(self):
        if not self.omega_piF:
            raise ValueError("omega_piF must be nonzero")
        if self.conductor_exponent != 1:
            raise ValueError("conductor exponent is fixed at 1")

    @property
    def omega_tau_piF(self) -> Rational:
        """Central character value at the uniformizer."""
        return self.omega_piF * self.omega_piF


def chi_piF_from(sat: SatakeParams, st: SteinbergData) -> Rational:
    """The compensating character on F^x at a uniformizer: (omega_pi * omega_tau)^(-1)."""
    return 1 / (sat.omega_pi_piF * st.omega_tau_piF)


def l8_inverse(sat: SatakeParams, st: SteinbergData, q: int) -> Poly:
    """Degree-8-type inverse L-factor of the contragredient pair, in t = q^(-3s).

    Each linear factor carries the coefficient gamma^(-1) Omega^(-1) q^(-1/2)
    in the variable u = q^(-3s-1/2); expanding first and substituting
    u = q^(-1/2) t afterwards keeps the sqrt(q) arithmetic honest, and the
    result is checked to have purely rational coefficients.
    """
    half_inv = q_half_power(q, -1)  # q^(-1/2), genuinely irrational
    product = Poly.one(q)
    for g in sat.gamma:
        c = half_inv * (1 / (g * st.omega_piF))
        product = product * Poly([QuadCoeff.rational(1, q), -c], q)
    # substitute u = q^(-1/2) t: scale the t^k coefficient by q^(-k/2)
    coeffs = [
        product.coefficient(k) * q_half_power(q, -k) for k in range(product.degree + 1)
    ]
    result = Poly(coeffs, q)
    assert all(c.is_rational for c in result.coefficients), "sqrt(q) part must cancel"
    assert result.degree == 4
    return result


def l_tau_ai_chi_inverse(
    local: LocalQuadData, chi_piF: Rational, st: SteinbergData
) -> Poly:
    """Inverse L-factor of the induced-character twist, as a polynomial in t.

    Inert: 1 - chi(pi_F) q^(-3) t^2.  Ramified: one linear factor with
    coefficient Lambda(pi_L) (chi Omega)(pi_F) q^(-3/2).  Split: the product
    of the two analogous linear factors.
    """
    if not chi_piF:
        raise ValueError("chi_piF must be nonzero")
    q = local.q
    if local.symbol is SplittingSymbol.INERT:
        return Poly([1, 0, -chi_piF * rat(1, q**3)], q)
    if local.lambda_piL is None:
        raise ValueError("missing lambda_piL for a non-inert class")
    chi_omega = chi_piF * st.omega_piF
    three_half_inv = q_half_power(q, -3)
    first = Poly([1, -(three_half_inv * (local.lambda_piL * chi_omega))], q)
    if local.symbol is SplittingSymbol.RAMIFIED:
        return first
    if local.lambda_piF_over_piL is None:
        raise ValueError("missing lambda_piF_over_piL for the split class")
    second = Poly([1, -(three_half_inv * (local.lambda_piF_over_piL * chi_omega))], q)
    return first * second
