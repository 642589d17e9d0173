"""Tests for the cn/dn polynomial families, Szego recurrence and Toeplitz routes."""

import sys
from pathlib import Path

import numpy as np
import pytest

# Add project root to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.circle import (
    MomentSequence,
    MonicCirclePolynomial,
    ReflectionSequence,
    determinant_poly,
    explicit_family,
    explicit_poly,
    family_values_at_pm1,
    functional_orthogonality,
    h_n_family,
    levinson_reflections,
    moments,
    reflect_sign,
    reflected_moments,
    reflected_reflections,
    reflections,
    szego_build,
    szego_family,
    szego_step_residual,
    three_term_check,
    toeplitz_dets,
    value_at_pm1,
)
from src.config import Config
from src.elliptic import jacobi_cn, jacobi_dn, make_context
from src.limits import hyp_moments, hyp_reflections
from src.utils.error_handlers import DomainError, FiniteCaseSignal, PositivityError

W = 0.31


@pytest.fixture
def ctx():
    """Context for k = 0.6."""
    return make_context(0.6)


class TestTypes:
    """Tests for the value types."""

    def test_monic_required(self):
        """A non-monic coefficient vector is rejected."""
        with pytest.raises(DomainError):
            MonicCirclePolynomial([0.5, 2.0])

    def test_reflection_inside_disk(self):
        """|a_n| = 1 inside an infinite sequence signals the finite case."""
        with pytest.raises(FiniteCaseSignal) as info:
            ReflectionSequence([0.2, 1.0])
        assert info.value.index == 1

    def test_finite_terminal_allowed(self):
        """A terminal -1 is accepted when marked finite."""
        a = ReflectionSequence([0.3, -1.0], finite=True)
        assert len(a) == 2

    def test_moment_c0_positive(self):
        """c_0 must be positive."""
        with pytest.raises(DomainError):
            MomentSequence([0.0, 0.5])


class TestFamilies:
    """Tests for the closed forms of both families."""

    def test_reflection_parameters(self, ctx):
        """a_2m = cn(w(2m+1)), a_(2m+1) = -dn(w(2m+2)) for the cn family."""
        a = reflections("cn", 6, W, ctx)
        assert a[0] == pytest.approx(jacobi_cn(W, ctx))
        assert a[1] == pytest.approx(-jacobi_dn(2 * W, ctx))
        assert a[4] == pytest.approx(jacobi_cn(5 * W, ctx))

    def test_dn_swaps_roles(self, ctx):
        """The dn family has a_0 = dn(w), a_1 = -cn(2w)."""
        a = reflections("dn", 2, W, ctx)
        assert a[0] == pytest.approx(jacobi_dn(W, ctx))
        assert a[1] == pytest.approx(-jacobi_cn(2 * W, ctx))

    @pytest.mark.parametrize("family", ["cn", "dn"])
    def test_explicit_matches_szego(self, ctx, family):
        """Closed-form coefficients equal the Szego recurrence output."""
        a = reflections(family, 12, W, ctx)
        for n in range(13):
            diff = np.max(np.abs(explicit_poly(family, n, W, ctx).coeffs - szego_build(a, n).coeffs))
            assert diff < 1e-10

    def test_constant_term(self, ctx):
        """Phi_n(0) = -a_(n-1)."""
        a = reflections("cn", 8, W, ctx)
        for n in range(1, 9):
            assert explicit_poly("cn", n, W, ctx).coeffs[0] == pytest.approx(-a[n - 1], abs=1e-12)

    def test_unknown_family(self, ctx):
        """Only cn and dn exist."""
        with pytest.raises(DomainError):
            reflections("sn", 4, W, ctx)

    def test_finite_case_detected(self, ctx):
        """w = K makes a_1 = -dn(2K) = -1."""
        with pytest.raises(FiniteCaseSignal) as info:
            reflections("cn", 4, ctx.big_K, ctx)
        assert info.value.index == 1


class TestLevinson:
    """Tests for moments -> reflection parameters."""

    @pytest.mark.parametrize("family", ["cn", "dn"])
    def test_recovers_reflections(self, ctx, family):
        """Levinson on c_n reproduces the closed-form a_n for n <= 8."""
        result = levinson_reflections(moments(family, 8, W, ctx), 8)
        expected = reflections(family, 8, W, ctx)
        assert np.max(np.abs(result.reflections.values - expected.values)) < 1e-9

    @pytest.mark.parametrize("family", ["cn", "dn"])
    def test_norms(self, ctx, family):
        """h_n from Levinson equals the closed product formula."""
        result = levinson_reflections(moments(family, 8, W, ctx), 8)
        for n in range(9):
            assert result.h[n] == pytest.approx(h_n_family(family, n, W, ctx), rel=1e-8)

    def test_constant_moments_not_positive(self):
        """c_n = 1 for all n has a_0 = 1 and stops at once."""
        with pytest.raises(PositivityError) as info:
            levinson_reflections(MomentSequence(np.ones(5)), 4)
        assert info.value.index == 0

    def test_needs_enough_moments(self, ctx):
        """N reflections need N + 1 moments."""
        with pytest.raises(DomainError):
            levinson_reflections(moments("cn", 3, W, ctx), 4)


class TestToeplitz:
    """Tests for determinants and the determinant formula."""

    def test_determinants_positive(self, ctx):
        """Delta_n > 0 for the cn moments."""
        dets = toeplitz_dets(moments("cn", 10, W, ctx), 10)
        assert dets.positive
        assert np.all(dets.values > 0.0)

    def test_routes_agree(self, ctx):
        """Elimination and Levinson determinants agree."""
        c = moments("dn", 8, W, ctx)
        direct = toeplitz_dets(c, 8, method="elimination").values
        levinson = toeplitz_dets(c, 8, method="levinson").values
        assert np.allclose(direct, levinson, rtol=1e-9, atol=0.0)

    def test_determinant_poly(self, ctx):
        """The bordered-determinant polynomial equals the explicit one."""
        c = moments("cn", 6, W, ctx)
        for n in range(6):
            diff = np.max(np.abs(determinant_poly(c, n).coeffs - explicit_poly("cn", n, W, ctx).coeffs))
            assert diff < 1e-8

    def test_levinson_to_degree_ten(self, ctx):
        """In double precision Levinson still holds 1e-9 at n = 10."""
        result = levinson_reflections(moments("cn", 10, W, ctx), 10)
        expected = reflections("cn", 10, W, ctx)
        assert np.max(np.abs(result.reflections.values - expected.values)) < 1e-9

    def test_functional_orthogonality(self, ctx):
        """<sigma, Phi_n z^-m> vanishes for m < n and equals h_n at m = n."""
        c = moments("cn", 8, W, ctx)
        n = 6
        poly = explicit_poly("cn", n, W, ctx)
        for m in range(n):
            assert abs(functional_orthogonality(poly, c, m)) < 1e-11
        assert functional_orthogonality(poly, c, n) == pytest.approx(h_n_family("cn", n, W, ctx), rel=1e-9)

    def test_unknown_method(self, ctx):
        """Only the three routes are accepted."""
        with pytest.raises(DomainError):
            toeplitz_dets(moments("cn", 4, W, ctx), 4, method="lu")


def _relative_diff(left: MonicCirclePolynomial, right: MonicCirclePolynomial) -> float:
    scale = max(1.0, float(np.max(np.abs(right.coeffs))))
    return float(np.max(np.abs(left.coeffs - right.coeffs))) / scale


class TestExtendedPrecision:
    """Tests for the mpmath Toeplitz routes used when ELLIPUC_PRECISION > 0."""

    @pytest.fixture
    def digits(self, monkeypatch):
        """Run at 40 decimal digits."""
        monkeypatch.setattr(Config, "PRECISION", 40)
        return 40

    def test_double_moments_have_no_copies(self, ctx):
        """With the default precision no mpmath values are attached."""
        assert moments("cn", 6, W, ctx).extended == ()

    def test_moments_carry_copies(self, ctx, digits):
        """Extended copies agree with the double moments."""
        c = moments("dn", 12, W, ctx)
        assert len(c.extended) == 13
        assert np.max(np.abs(np.array([float(x) for x in c.extended]) - c.values)) < 1e-14

    @pytest.mark.parametrize("family", ["cn", "dn"])
    def test_levinson_to_degree_twenty(self, ctx, digits, family):
        """Levinson recovers a_0..a_19 within 1e-10."""
        result = levinson_reflections(moments(family, 20, W, ctx), 20)
        expected = reflections(family, 20, W, ctx)
        assert np.max(np.abs(result.reflections.values - expected.values)) < 1e-10
        for n in (10, 20):
            assert result.h[n] == pytest.approx(h_n_family(family, n, W, ctx), rel=1e-9)

    @pytest.mark.parametrize("n", [10, 15, 20])
    def test_determinant_poly(self, ctx, digits, n):
        """The bordered determinant matches the explicit polynomial."""
        c = moments("cn", n, W, ctx)
        assert _relative_diff(determinant_poly(c, n), explicit_poly("cn", n, W, ctx)) < 1e-10

    @pytest.mark.parametrize("family", ["cn", "dn"])
    def test_four_routes_agree(self, ctx, digits, family):
        """Explicit, Szego, Levinson and determinant routes give the same Phi_20."""
        c = moments(family, 20, W, ctx)
        explicit = explicit_poly(family, 20, W, ctx)
        szego = szego_family(reflections(family, 20, W, ctx), 20)[20]
        from_levinson = szego_build(levinson_reflections(c, 20).reflections, 20)
        determinant = determinant_poly(c, 20)
        for other in (szego, from_levinson, determinant):
            assert _relative_diff(other, explicit) < 1e-10

    def test_determinants_positive(self, ctx, digits):
        """The Levinson determinant route reaches Delta_20 > 0."""
        dets = toeplitz_dets(moments("cn", 20, W, ctx), 20, method="levinson")
        assert dets.positive
        assert np.all(np.isfinite(dets.values))

    def test_hyperbolic_moments(self, digits):
        """1/cosh(wn) moments gain copies and Levinson reaches n = 20."""
        c = hyp_moments(20, 0.5)
        result = levinson_reflections(c, 20)
        assert np.max(np.abs(result.reflections.values - hyp_reflections(20, 0.5).values)) < 1e-10


class TestThreeTerm:
    """Tests for the three-term recurrence check."""

    @pytest.mark.parametrize("family", ["cn", "dn"])
    def test_explicit_family_passes(self, ctx, family):
        """Explicit polynomials satisfy the recurrence built from a_n."""
        a = reflections(family, 12, W, ctx)
        report = three_term_check(a, 12, explicit_family(family, 12, W, ctx))
        assert report.max_residual < 1e-10
        assert report.skipped == []

    def test_fault_is_caught(self, ctx):
        """A perturbed reflection parameter breaks the recurrence."""
        a = reflections("cn", 10, W, ctx)
        faulty = a.values.copy()
        faulty[5] += 1e-6
        report = three_term_check(ReflectionSequence(faulty), 10, explicit_family("cn", 10, W, ctx))
        assert report.max_residual > 1e-8

    def test_zero_reflection_skipped(self):
        """a_(n-1) = 0 is skipped and listed."""
        a = ReflectionSequence([0.0, 0.3, 0.2, -0.1])
        report = three_term_check(a, 4)
        assert 1 in report.skipped

    def test_szego_step_residual(self, ctx):
        """The Szego family of a has zero step residual."""
        a = reflections("dn", 8, W, ctx)
        assert szego_step_residual(szego_family(a, 8), a) == 0.0


class TestValuesAtPm1:
    """Tests for Phi_n(+-1)."""

    @pytest.mark.parametrize("family", ["cn", "dn"])
    def test_products_match(self, ctx, family):
        """The reflection products equal the (1 +- cn)(1 +- dn) forms and direct evaluation."""
        a = reflections(family, 10, W, ctx)
        for n in range(11):
            at_one, at_minus_one = value_at_pm1(a, n)
            closed = family_values_at_pm1(family, n, W, ctx)
            poly = explicit_poly(family, n, W, ctx)
            assert at_one == pytest.approx(closed[0], rel=1e-12, abs=1e-14)
            assert at_minus_one == pytest.approx(closed[1], rel=1e-12, abs=1e-14)
            assert poly(1.0) == pytest.approx(at_one, rel=1e-9, abs=1e-12)
            assert poly(-1.0) == pytest.approx(at_minus_one, rel=1e-9, abs=1e-12)


class TestReflectedFamily:
    """Tests for (-1)^n Phi_n(-z)."""

    def test_involution(self, ctx):
        """Applying the reflection twice gives the original polynomial."""
        poly = explicit_poly("cn", 5, W, ctx)
        assert np.array_equal(reflect_sign(reflect_sign(poly)).coeffs, poly.coeffs)

    def test_reflected_reflections(self, ctx):
        """Szego from (-1)^(n+1) a_n builds the reflected polynomials."""
        a = reflections("cn", 8, W, ctx)
        ra = reflected_reflections(a)
        for n in range(9):
            diff = np.max(np.abs(szego_build(ra, n).coeffs - reflect_sign(szego_build(a, n)).coeffs))
            assert diff < 1e-14

    def test_reflected_moments(self, ctx):
        """Levinson on (-1)^n c_n gives the reflected parameters."""
        c = reflected_moments(moments("dn", 6, W, ctx))
        result = levinson_reflections(c, 6)
        expected = reflected_reflections(reflections("dn", 6, W, ctx))
        assert np.max(np.abs(result.reflections.values - expected.values)) < 1e-9


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
