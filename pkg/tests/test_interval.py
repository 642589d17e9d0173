"""Tests for the Delsarte-Genin transform, the P/Q split and interval orthogonality."""

import csv
import sys
from pathlib import Path

import numpy as np
import pytest
from numpy.polynomial import Chebyshev

# Add project root to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.circle import (
    MonicCirclePolynomial,
    ReflectionSequence,
    explicit_family,
    explicit_poly,
    family_measure,
    h_n_family,
    moments,
    reflections,
    szego_family,
    truncation_for_tail,
)
from src.elliptic import make_context
from src.interval import (
    askey_wilson_limit_check,
    askey_wilson_weight,
    chebyshev_T_table,
    chebyshev_expansion,
    chebyshev_to_monomial,
    dgt,
    dgt_family,
    explicit_cn_split_coeffs,
    explicit_dn_split_coeffs,
    hyperbolic_split_coeffs,
    interval_gram,
    interval_moments,
    kappa,
    kappa_from_norms,
    p_cn_chebyshev,
    recurrence_polys,
    recurrence_table,
    split_PQ_recurrences,
    split_polys,
    symmetric_recurrence_residual,
    v_coeffs,
    write_recurrence_table,
)
from src.utils.error_handlers import DegenerateTransformError, DomainError

W = 0.31


@pytest.fixture
def ctx():
    """Context for k = 0.6."""
    return make_context(0.6)


@pytest.fixture
def random_reflections():
    """Twelve reflection parameters drawn inside (-0.9, 0.9)."""
    rng = np.random.default_rng(7)
    return ReflectionSequence(rng.uniform(-0.9, 0.9, 12))


def _pad(a: np.ndarray, size: int) -> np.ndarray:
    out = np.zeros(size)
    out[: a.size] = a
    return out


def _max_diff(p: Chebyshev, q: Chebyshev) -> float:
    size = max(len(p.coef), len(q.coef))
    return float(np.max(np.abs(_pad(p.coef, size) - _pad(q.coef, size))))


class TestChebyshevTable:
    """Tests for the exact integer T table."""

    def test_known_rows(self):
        """T_2 = 2x^2 - 1, T_4 = 8x^4 - 8x^2 + 1."""
        table = chebyshev_T_table()
        assert table[2] == (-1, 0, 2)
        assert table[4] == (1, 0, -8, 0, 8)

    def test_to_monomial(self):
        """T_3 + 2 T_0 in monomials."""
        assert chebyshev_to_monomial([2.0, 0.0, 0.0, 1.0]).tolist() == [2.0, -3.0, 0.0, 4.0]

    def test_degree_limit(self):
        """Degrees past the table are rejected."""
        with pytest.raises(DomainError):
            chebyshev_to_monomial(np.ones(42))


class TestTransform:
    """Tests for S_n = DGT(Phi_n)."""

    def test_low_degrees(self):
        """S_0 = 1 and S_1 = x for any a_0."""
        s0 = dgt(MonicCirclePolynomial([1.0]), -1.0)
        s1 = dgt(MonicCirclePolynomial([-0.4, 1.0]), 0.4)
        assert s0.cheb.coef.tolist() == [1.0]
        assert np.allclose(s1.coeffs, [0.0, 1.0])

    def test_monic_and_parity(self, ctx):
        """S_n is monic with parity (-1)^n."""
        a = reflections("cn", 10, W, ctx)
        for n, s in enumerate(dgt_family(explicit_family("cn", 10, W, ctx), a)):
            coeffs = s.coeffs
            assert coeffs[-1] == pytest.approx(1.0, abs=1e-10)
            if n > 0:
                assert np.max(np.abs(coeffs[(n + 1) % 2::2])) < 1e-12

    def test_degenerate(self):
        """a_(n-1) = 1 cannot be normalized."""
        with pytest.raises(DegenerateTransformError):
            dgt(MonicCirclePolynomial([-1.0, 1.0]), 1.0)

    @pytest.mark.parametrize("family", ["cn", "dn"])
    def test_symmetric_recurrence(self, ctx, family):
        """S_(n+1) + v_n S_(n-1) = x S_n."""
        a = reflections(family, 12, W, ctx)
        S = dgt_family(explicit_family(family, 12, W, ctx), a)
        assert symmetric_recurrence_residual(S, v_coeffs(a)) < 1e-11

    def test_first_v(self, random_reflections):
        """v_1 = (1 + a_0)/2."""
        v = v_coeffs(random_reflections)
        assert v.v[0] == 0.0
        assert v.v[1] == pytest.approx((1.0 + random_reflections[0]) / 2.0)

    def test_v_needs_reflections(self, random_reflections):
        """N cannot exceed the number of reflections."""
        with pytest.raises(DomainError):
            v_coeffs(random_reflections, 13)

    def test_kappa_from_norms(self, ctx):
        """kappa_n = v_1..v_n equals 2^(1-2n) h_n / (1 - a_(n-1))."""
        a = reflections("dn", 10, W, ctx)
        h = [h_n_family("dn", n, W, ctx) for n in range(11)]
        assert np.allclose(kappa(v_coeffs(a)), kappa_from_norms(h, a), rtol=1e-10, atol=0.0)


class TestSplit:
    """Tests for the P/Q split and its recurrences."""

    def test_routes_agree(self, random_reflections):
        """Direct and v-composed coefficients coincide."""
        direct_P, direct_Q = split_PQ_recurrences(random_reflections, "direct")
        v_P, v_Q = split_PQ_recurrences(random_reflections, "v")
        for direct, composed in ((direct_P, v_P), (direct_Q, v_Q)):
            assert np.max(np.abs(direct.u - composed.u)) < 1e-12
            assert np.max(np.abs(direct.b - composed.b)) < 1e-12

    def test_unknown_route(self, random_reflections):
        """Only 'direct' and 'v' exist."""
        with pytest.raises(DomainError):
            split_PQ_recurrences(random_reflections, "moments")

    def test_zero_reflections(self):
        """a = 0 gives Chebyshev data: u_1^P = 1/2, u = 1/4 after, b^Q_0 = 1/2, other b = 0."""
        a = ReflectionSequence(np.zeros(10))
        P, Q = split_PQ_recurrences(a)
        assert P.u[1] == pytest.approx(0.5)
        assert np.allclose(P.u[2:], 0.25)
        assert np.allclose(Q.u[1:], 0.25)
        assert np.allclose(P.b, 0.0)
        assert Q.b[0] == pytest.approx(0.5)
        assert np.allclose(Q.b[1:], 0.0)
        assert np.allclose(v_coeffs(a).v[2:], 0.25)

    def test_recurrences_build_split(self, random_reflections):
        """Polynomials from (u, b) equal the P and Q taken from S_2n, S_2n+1."""
        a = random_reflections
        L = len(a) // 2
        P, Q = split_polys(szego_family(a, 2 * L), a)
        P_rec, Q_rec = split_PQ_recurrences(a)
        from_P = recurrence_polys(P_rec, L)
        from_Q = recurrence_polys(Q_rec, L - 1)
        for built, split in zip(from_P, P):
            assert _max_diff(built, split) < 1e-11
        for built, split in zip(from_Q, Q):
            assert _max_diff(built, split) < 1e-11

    def test_chebyshev_expansion(self, ctx):
        """The coefficient formula for P_n matches the split."""
        a = reflections("cn", 12, W, ctx)
        phis = explicit_family("cn", 12, W, ctx)
        P, _ = split_polys(phis, a)
        for n in range(7):
            a_prev = -1.0 if n == 0 else a[2 * n - 1]
            assert _max_diff(chebyshev_expansion(phis[2 * n], a_prev), P[n]) < 1e-11

    def test_p_cn_chebyshev(self, ctx):
        """The elliptic form of P_4 equals the expansion of Phi_8."""
        a = reflections("cn", 8, W, ctx)
        expected = chebyshev_expansion(explicit_poly("cn", 8, W, ctx), a[7])
        assert _max_diff(p_cn_chebyshev(4, W, ctx), expected) < 1e-11

    def test_expansion_needs_even_degree(self, ctx):
        """Odd degrees are rejected."""
        with pytest.raises(DomainError):
            chebyshev_expansion(explicit_poly("cn", 3, W, ctx), 0.1)

    @pytest.mark.parametrize("family, explicit", [("cn", explicit_cn_split_coeffs), ("dn", explicit_dn_split_coeffs)])
    def test_explicit_coefficients(self, ctx, family, explicit):
        """Elliptic forms of u_n, b_n equal the reflection-parameter forms."""
        P, _ = split_PQ_recurrences(reflections(family, 12, W, ctx))
        for n in range(6):
            u, b = explicit(n, W, ctx)
            assert b == pytest.approx(P.b[n], abs=1e-13)
            if n >= 1:
                assert u == pytest.approx(P.u[n], abs=1e-13)


class TestIntervalOrthogonality:
    """Tests for moments and Gram checks on [-1, 1]."""

    def test_low_moments(self, ctx):
        """M_0 = 1, M_1 = 0, M_2 = (1 + c_1)/2."""
        c = moments("cn", 4, W, ctx)
        M = interval_moments(c, 4)
        assert M[0] == pytest.approx(1.0)
        assert M[1] == 0.0 and M[3] == 0.0
        assert M[2] == pytest.approx((1.0 + c.at(1)) / 2.0)

    def test_moments_match_measure(self, ctx):
        """M_n equals the symmetrized measure sum at x = cos(theta/2)."""
        m = family_measure("dn", W, ctx, truncation_for_tail(1e-15, ctx, "dn"))
        M = interval_moments(moments("dn", 5, W, ctx), 10)
        x = np.cos(m.angles / 2.0)
        for n in range(11):
            direct = np.dot(m.weights, (x ** n + (-x) ** n) / 2.0)
            assert M[n] == pytest.approx(direct, abs=1e-12)

    def test_moments_need_data(self, ctx):
        """M_10 needs c_0..c_5."""
        with pytest.raises(DomainError):
            interval_moments(moments("cn", 4, W, ctx), 10)

    @pytest.mark.parametrize("family", ["cn", "dn"])
    def test_gram(self, ctx, family):
        """S, P and Q are orthogonal with the predicted norms."""
        a = reflections(family, 12, W, ctx)
        m = family_measure(family, W, ctx, truncation_for_tail(1e-15, ctx, family))
        report = interval_gram(explicit_family(family, 12, W, ctx), a, m)
        assert report.max_error < 1e-9

    def test_gram_needs_two(self, ctx):
        """A single polynomial is not enough."""
        m = family_measure("cn", W, ctx, 10)
        with pytest.raises(DomainError):
            interval_gram(explicit_family("cn", 0, W, ctx), reflections("cn", 2, W, ctx), m)


class TestAskeyWilson:
    """Tests for the k -> 1 limit on [-1, 1]."""

    @pytest.mark.parametrize("w", [0.3, 0.8])
    def test_limit(self, w):
        """q-closed forms match and the weight is a constant multiple of dn."""
        report = askey_wilson_limit_check(w)
        assert report.u_residual < 1e-12
        assert report.b_residual < 1e-12
        assert report.ratio_spread < 1e-9
        assert report.ratio_min == pytest.approx(report.expected_ratio, rel=1e-9)

    def test_elliptic_coefficients_reach_limit(self):
        """At k = 1 - 1e-8 and q = exp(-2w) near 0.45 the cn-family u_n, b_n take the q-closed values."""
        w = 0.4
        ctx = make_context(1.0 - 1e-8)
        P, _ = split_PQ_recurrences(reflections("cn", 18, w, ctx))
        for n in range(1, 9):
            u, b = hyperbolic_split_coeffs(n, w)
            assert P.u[n] == pytest.approx(u, abs=1e-6)
            assert P.b[n] == pytest.approx(b, abs=1e-6)

    def test_weight_symmetry(self):
        """w(x) w(-x) = 1 for the product weight."""
        x = np.linspace(-0.9, 0.9, 7)
        assert np.allclose(askey_wilson_weight(x, 0.3) * askey_wilson_weight(-x, 0.3), 1.0)

    def test_weight_nome(self):
        """q outside (0, 1) is rejected."""
        with pytest.raises(DomainError):
            askey_wilson_weight(0.1, 1.2)


class TestRecurrenceTable:
    """Tests for the recurrence export."""

    def test_rows(self, ctx):
        """Rows carry v and kappa for every n and P data while it lasts."""
        rows = recurrence_table(reflections("cn", 10, W, ctx))
        assert len(rows) == 11
        assert rows[0]["H"] == 1.0 and rows[0]["kappa"] == 1.0
        assert "u" in rows[4] and "u" not in rows[5]

    def test_csv(self, ctx, tmp_path):
        """CSV header is the fixed column order."""
        path = tmp_path / "dgt.csv"
        write_recurrence_table(recurrence_table(reflections("cn", 6, W, ctx)), path)
        with open(path, newline="") as f:
            header = next(csv.reader(f))
        assert header == ["n", "v", "kappa", "u", "b", "H"]


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
