import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from localzeta.exact import (
    Poly,
    PoleAtOriginError,
    QuadCoeff,
    Rational,
    RationalFunction,
    TruncatedSeries,
    q_half_power,
    quad_arith,
    rat,
    series_of,
)

rationals = st.fractions(min_value=-40, max_value=40, max_denominator=12).map(
    lambda f: rat(f.numerator) / rat(f.denominator)
)
primes = st.sampled_from([2, 3, 5])


def quads(q):
    return st.tuples(rationals, rationals).map(lambda ab: QuadCoeff(ab[0], ab[1], q))


def polys(q, max_degree=4):
    return st.lists(quads(q), min_size=0, max_size=max_degree + 1).map(
        lambda cs: Poly(cs, q)
    )


class TestQuadCoeff:
    def test_norm_form(self):
        x = QuadCoeff(1, 1, 2) * QuadCoeff(1, -1, 2)
        assert x == QuadCoeff(-1, 0, 2)

    def test_sqrt3_inverse(self):
        x = QuadCoeff(0, 1, 3).inverse()
        assert x == QuadCoeff(0, rat(1, 3), 3)

    @given(primes.flatmap(quads))
    def test_mul_inverse_is_one(self, x):
        if x:
            assert x * x.inverse() == QuadCoeff(1, 0, x.q)

    @given(primes.flatmap(quads))
    def test_conjugate_norm_is_rational(self, x):
        n = x * x.conjugate()
        assert n.is_rational

    def test_mixed_fields_rejected(self):
        with pytest.raises(ValueError):
            QuadCoeff(1, 1, 2) + QuadCoeff(1, 1, 3)

    def test_int_coercion(self):
        assert 1 + QuadCoeff(1, 2, 5) == QuadCoeff(2, 2, 5)
        assert 2 * QuadCoeff(1, 2, 5) == QuadCoeff(2, 4, 5)
        assert 1 / QuadCoeff(0, 1, 5) == QuadCoeff(0, rat(1, 5), 5)

    def test_pow(self):
        s = QuadCoeff.sqrt_q(2)
        assert s**2 == QuadCoeff(2, 0, 2)
        assert s**-2 == QuadCoeff(rat(1, 2), 0, 2)
        assert s**0 == QuadCoeff(1, 0, 2)

    def test_quad_arith_dispatch(self):
        x = QuadCoeff(1, 1, 2)
        y = QuadCoeff(1, -1, 2)
        assert quad_arith(x, y, "+") == QuadCoeff(2, 0, 2)
        assert quad_arith(x, y, "-") == QuadCoeff(0, 2, 2)
        assert quad_arith(x, y, "×") == QuadCoeff(-1, 0, 2)
        assert quad_arith(x, x, "÷") == QuadCoeff(1, 0, 2)
        with pytest.raises(ZeroDivisionError):
            quad_arith(x, QuadCoeff(0, 0, 2), "/")
        with pytest.raises(ValueError):
            quad_arith(x, y, "%")

    def test_q_half_power(self):
        assert q_half_power(3, 4) == QuadCoeff(9, 0, 3)
        assert q_half_power(3, 1) == QuadCoeff(0, 1, 3)
        assert q_half_power(3, -3) == QuadCoeff(0, rat(1, 9), 3)
        assert q_half_power(3, -3) * q_half_power(3, 3) == QuadCoeff(1, 0, 3)


class TestPoly:
    def test_trailing_zeros_stripped(self):
        p = Poly([1, 2, 0, 0], 2)
        assert p.degree == 1

    def test_zero_poly(self):
        assert Poly([], 2).degree == -1
        assert not Poly([0, 0], 2)

    @given(primes.flatmap(lambda q: st.tuples(polys(q), polys(q), polys(q))))
    @settings(max_examples=60)
    def test_ring_axioms(self, abc):
        a, b, c = abc
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + b == b + a
        assert a * b == b * a

    def test_evaluation(self):
        p = Poly([1, -1], 2)  # 1 - t
        assert p(QuadCoeff(rat(1, 2), 0, 2)) == QuadCoeff(rat(1, 2), 0, 2)

    def test_str(self):
        p = Poly([1, 0, QuadCoeff(0, rat(-1, 2), 2)], 2)
        assert p.to_str() == "1 - (1/2*sqrt(2))*t^2"


class TestRationalFunction:
    def test_denominator_normalized(self):
        rf = RationalFunction(Poly([2], 2), Poly([2, -1], 2))
        assert rf.den.constant_term == QuadCoeff(1, 0, 2)
        assert rf.num.constant_term == QuadCoeff(1, 0, 2)

    def test_zero_denominator_rejected(self):
        with pytest.raises(ZeroDivisionError):
            RationalFunction(Poly([1], 2), Poly([], 2))

    @given(primes.flatmap(lambda q: st.tuples(polys(q), polys(q))))
    @settings(max_examples=40)
    def test_equality_cross_multiplicative(self, ab):
        a, b = ab
        if not b or b.constant_term == QuadCoeff(0, 0, b.q):
            return
        rf = RationalFunction(a, b)
        doubled = RationalFunction(a * 2, b * 2)
        assert rf == doubled


class TestSeries:
    def test_geometric(self):
        rf = RationalFunction(Poly([1], 2), Poly([1, -1], 2))
        assert series_of(rf, 4) == TruncatedSeries([1, 1, 1, 1, 1], 2)

    def test_telescoping(self):
        rf = RationalFunction(Poly([1, 0, -1], 2), Poly([1, -1], 2))
        assert series_of(rf, 3) == TruncatedSeries([1, 1, 0, 0], 2)

    def test_pole_at_origin(self):
        rf = RationalFunction(Poly([1], 2), Poly([0, 1], 2))
        with pytest.raises(PoleAtOriginError):
            series_of(rf, 3)

    @given(
        primes.flatmap(
            lambda q: st.tuples(polys(q), polys(q), st.integers(min_value=0, max_value=12))
        )
    )
    @settings(max_examples=60)
    def test_recompose(self, args):
        num, den, n = args
        if den.constant_term == QuadCoeff(0, 0, den.q):
            return
        rf = RationalFunction(num, den)
        s = series_of(rf, n)
        # num === series * den  (mod t^(n+1)), exactly
        prod = Poly(list(s.coefficients), s.q) * rf.den
        for k in range(n + 1):
            assert prod.coefficient(k) == rf.num.coefficient(k)

    def test_long_division_oracle_degree_2(self):
        # independent hand long division for a degree-2 case:
        # (1 + t) / (1 - 2t + t^2): s_k satisfies s_0=1, s_1 = 1+2 = 3,
        # s_k = 2 s_{k-1} - s_{k-2}  =>  1, 3, 5, 7, 9, ...
        rf = RationalFunction(Poly([1, 1], 3), Poly([1, -2, 1], 3))
        assert series_of(rf, 4) == TruncatedSeries([1, 3, 5, 7, 9], 3)

    def test_series_arithmetic(self):
        a = TruncatedSeries([1, 1, 1], 5)
        b = TruncatedSeries([1, -1, 0], 5)
        assert a + b == TruncatedSeries([2, 0, 1], 5)
        assert a - b == TruncatedSeries([0, 2, 1], 5)
        assert a * b == TruncatedSeries([1, 0, 0], 5)
        assert (a * 2)[0] == QuadCoeff(2, 0, 5)

    def test_first_difference(self):
        a = TruncatedSeries([1, 1, 1], 5)
        b = TruncatedSeries([1, 1, 2], 5)
        assert a.first_difference(b) == 2
        assert a.first_difference(a) is None

    def test_rational_backend_exact(self):
        assert Rational(1, 3) + Rational(1, 6) == Rational(1, 2)
        assert rat("3/4") == rat(3, 4)
