import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from localzeta.exact import rat
from localzeta.localfield import LocalQuadData, SplittingSymbol, unit_index
from localzeta.cosets import (
    BesselDatum,
    CosetAuditReport,
    DegenerateDraw,
    EtaleMatrix,
    EtaleNum,
    FqSp4,
    IDENTITY_NAMES,
    bruhat_reps,
    coset_audit,
    count_polynomial_identity,
    ediag,
    eta_matrix,
    expected_rep_count,
    matrix_identity_trial,
    sp4_order,
    support_classify,
    verify_matrix_identity,
    vol_k_sharp,
    volume_V1,
    volume_V2,
)


def quad_data(q, symbol):
    if symbol is SplittingSymbol.INERT:
        return LocalQuadData(q, symbol, rat(2))
    if symbol is SplittingSymbol.RAMIFIED:
        return LocalQuadData(q, symbol, rat(9), lambda_piL=rat(3))
    return LocalQuadData(q, symbol, rat(2), lambda_piL=rat(1), lambda_piF_over_piL=rat(2))


class TestEtaleNum:
    def test_sqrt_square(self):
        root = EtaleNum(0, 1, 5)
        assert root * root == EtaleNum(5, 0, 5)

    def test_conjugation_is_ring_map(self):
        x = EtaleNum(rat(1, 2), rat(3), -4)
        y = EtaleNum(rat(2), rat(-1, 3), -4)
        assert (x * y).conjugate() == x.conjugate() * y.conjugate()
        assert (x + y).conjugate() == x.conjugate() + y.conjugate()

    def test_inverse_roundtrip(self):
        x = EtaleNum(rat(3, 2), rat(-1, 5), 7)
        assert x * x.inverse() == EtaleNum(1, 0, 7)

    def test_zero_divisor_raises(self):
        # with d = 4 a square, 2 + sqrt(d) has norm zero
        x = EtaleNum(2, 1, 4)
        with pytest.raises(ZeroDivisionError):
            x.inverse()

    def test_mixed_algebras_rejected(self):
        with pytest.raises(ValueError):
            EtaleNum(1, 1, 3) + EtaleNum(1, 1, 5)

    @given(
        x=st.integers(-9, 9),
        y=st.integers(-9, 9),
        d=st.sampled_from([-4, -3, 5, 8]),
    )
    def test_norm_is_multiplicative(self, x, y, d):
        a = EtaleNum(x, y, d)
        b = EtaleNum(y - 2, x + 1, d)
        assert (a * b).norm == a.norm * b.norm


class TestBesselDatum:
    def test_alpha_relations_hold(self):
        datum = BesselDatum(1, 1, 1)  # d = -3
        alpha = datum.alpha
        assert alpha + alpha.conjugate() == rat(1)
        assert alpha * alpha.conjugate() == rat(1)

    def test_degenerate_discriminant_rejected(self):
        with pytest.raises(ValueError):
            BesselDatum(1, 2, 1)  # d = 0

    def test_positive_d_has_no_D(self):
        datum = BesselDatum(-1, 0, 1)  # d = 4
        with pytest.raises(ValueError):
            datum.D

    def test_D_flips_sign(self):
        assert BesselDatum(1, 0, 1).D == 4

    def test_S_matrix(self):
        datum = BesselDatum(2, 3, 1)
        assert datum.S == ((rat(2), rat(3, 2)), (rat(3, 2), rat(1)))

    def test_eta_shape(self):
        datum = BesselDatum(1, 0, 1)
        eta = datum.eta
        assert eta[1, 0] == datum.alpha
        assert eta[2, 3] == -datum.alpha.conjugate()
        assert eta[0, 0] == EtaleNum(1, 0, datum.d)

    def test_xi0_satisfies_minimal_polynomial(self):
        datum = BesselDatum(3, 5, 1)
        xi = datum.xi0
        assert xi * xi + datum.b * xi + datum.a * datum.c == 0

    def test_psi_convention_recorded(self):
        assert "exp(-2*pi*i*x)" in BesselDatum.psi_convention


class TestBruhatReps:
    def test_count_p2(self):
        assert len(bruhat_reps(2)) == 45

    def test_count_p3(self):
        assert len(bruhat_reps(3)) == 640

    def test_counts_match_both_formulas(self):
        for p in (2, 3):
            assert expected_rep_count(p) == (p**2 - 1) * (p**4 - 1)

    def test_torus_family_alone(self):
        for p in (2, 3):
            assert len(bruhat_reps(p, families=[1])) == (p - 1) ** 2

    def test_count_polynomial_identity(self):
        assert count_polynomial_identity()

    def test_large_p_rejected(self):
        with pytest.raises(ValueError):
            bruhat_reps(5)

    def test_non_symplectic_rejected(self):
        bad = ((1, 1, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))
        with pytest.raises(ValueError):
            FqSp4(bad, 3)


class TestCosetAudit:
    def test_p2_full_audit(self):
        report = coset_audit(2)
        assert report.group_order == 720
        assert report.subgroup_order == 16
        assert report.rep_count == 45
        assert report.passed and report.witness is None

    def test_p3_full_audit(self):
        report = coset_audit(3)
        assert report.group_order == sp4_order(3) == 51840
        assert report.subgroup_order == 81
        assert report.rep_count == 640
        assert report.passed

    def test_identity_is_a_member(self):
        from localzeta.cosets import ksharp_mod_p_member
        from localzeta.kernels import IDENTITY

        assert ksharp_mod_p_member(IDENTITY, 2)
        assert ksharp_mod_p_member(IDENTITY, 3)


class _QueueRng:
    """Deterministic stand-in for random.Random driven by preset values."""

    def __init__(self, ints):
        self.ints = list(ints)

    def randint(self, lo, hi):
        return self.ints.pop(0)

    def choice(self, seq):
        return seq[0]

    def random(self):
        return 0.9


class TestMatrixIdentities:
    @pytest.mark.parametrize("which", IDENTITY_NAMES)
    def test_identity_holds(self, which):
        assert verify_matrix_identity(which, trials=15, seed=7)

    def test_identity_i_by_hand(self):
        datum = BesselDatum(1, 0, 1)
        d = datum.d
        torus = ediag(1, 1, 1, 1, d)
        lhs = eta_matrix(datum.alpha, rat(1)) * torus
        rhs = torus * eta_matrix(datum.alpha, rat(1))
        assert lhs == rhs == datum.eta

    def test_degenerate_draw_raised(self):
        # a=-2, b=1, c=1, u=1, w=1 makes v = a + b uw + c (uw)^2 vanish
        rng = _QueueRng([-2, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1])
        with pytest.raises(DegenerateDraw):
            matrix_identity_trial("m0-equiv", rng)

    def test_unknown_identity_rejected(self):
        with pytest.raises(ValueError):
            verify_matrix_identity("iii")


class TestSupportClassify:
    def test_torus_family_always_supported(self):
        for m in (0, 1, 5):
            assert support_classify("i", m)

    def test_family_ii_needs_unit_beta(self):
        assert support_classify("ii", 0, "unit")
        assert not support_classify("ii", 2, "in_P")
        assert not support_classify("ii", 2, "other")

    def test_family_vi_needs_positive_m_and_small_beta(self):
        assert support_classify("vi", 1, "in_P")
        assert support_classify("vi", 2, "in_P")
        assert not support_classify("vi", 0, "in_P")
        assert not support_classify("vi", 1, "unit")

    def test_obstructed_families(self):
        for family in ("iii", "iv", "v", "vii", "viii"):
            for m in (0, 1, 3):
                assert not support_classify(family, m)

    def test_input_validation(self):
        with pytest.raises(ValueError):
            support_classify("ii", 1)
        with pytest.raises(ValueError):
            support_classify("iii", 1, "unit")
        with pytest.raises(ValueError):
            support_classify("ix", 1)
        with pytest.raises(ValueError):
            support_classify("i", -1)


class TestVolumes:
    def test_base_point_inert(self):
        local = quad_data(2, SplittingSymbol.INERT)
        assert volume_V1(local, 0, 0) == rat(1, 15)

    def test_m1_pair_and_cancellation(self):
        local = quad_data(2, SplittingSymbol.INERT)
        v1 = volume_V1(local, 0, 1)
        v2 = volume_V2(local, 0, 1)
        assert v1 == rat(16, 15) and v2 == rat(32, 15)
        assert v1 - rat(1, 2) * v2 == 0

    def test_cancellation_grid(self):
        for q in (2, 3):
            for symbol in SplittingSymbol:
                local = quad_data(q, symbol)
                for l in range(4):
                    for m in range(1, 4):
                        lhs = volume_V1(local, l, m)
                        rhs = rat(1, q) * volume_V2(local, l, m)
                        assert lhs == rhs

    def test_v2_needs_positive_m(self):
        local = quad_data(3, SplittingSymbol.SPLIT)
        with pytest.raises(ValueError):
            volume_V2(local, 0, 0)

    def test_level_subgroup_volume(self):
        assert vol_k_sharp(2) == rat(1, 45)

    def test_unit_index_bridge(self):
        for q in (2, 3, 5):
            for symbol in SplittingSymbol:
                local = quad_data(q, symbol)
                for l in (0, 1, 2):
                    bridged = (
                        volume_V1(local, l, 0)
                        * (q + 1)
                        * (q**4 - 1)
                        / rat(q) ** (3 * l + 1)
                    )
                    assert bridged == 1 - rat(int(symbol), q)
                    assert bridged == unit_index(local, 1) / q
