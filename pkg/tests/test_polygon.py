"""Tests for the finite polygon case w = KM/N."""

import csv
import logging
import sys
from pathlib import Path

import numpy as np
import pytest

# Add project root to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.elliptic import make_context
from src.limits import (
    F_ROUTES,
    build_polygon_case,
    finite_gram_check,
    finite_moment_check,
    ramanujan_F,
    residue_weights,
    S_weights,
    write_polygon,
)
from src.utils.error_handlers import DomainError


@pytest.fixture
def ctx():
    """Context for k = 0.6."""
    return make_context(0.6)


@pytest.fixture
def case(ctx):
    """The hexagon case N = 3."""
    return build_polygon_case(3, ctx)


class TestRamanujanF:
    """Tests for the bilateral sum F(alpha; q)."""

    @pytest.mark.parametrize("alpha", [0.0, 0.17, -0.4, 0.5])
    def test_routes_agree(self, alpha):
        """Direct, product, dn and Poisson routes give the same value."""
        values = [ramanujan_F(alpha, 0.3, route) for route in F_ROUTES]
        assert max(values) - min(values) < 1e-12

    def test_periodic(self):
        """F(alpha + 1) = F(alpha)."""
        assert ramanujan_F(1.17, 0.2) == pytest.approx(ramanujan_F(0.17, 0.2), rel=1e-13)

    def test_bad_route(self):
        """Unknown routes are rejected."""
        with pytest.raises(DomainError):
            ramanujan_F(0.1, 0.3, "taylor")

    def test_bad_nome(self):
        """q must lie in (0, 1)."""
        with pytest.raises(DomainError):
            ramanujan_F(0.1, 1.0)


class TestPolygonCase:
    """Tests for the finite cn system."""

    def test_closure(self, case):
        """Phi_2N = z^2N + 1."""
        assert case.closure_residual < 1e-10
        assert case.reflections[-1] == -1.0
        assert case.reflections.finite

    def test_points(self, case):
        """2N points on the regular 2N-gon."""
        assert len(case.weights) == 6
        z = np.exp(1j * case.angles)
        assert np.max(np.abs(z ** 6 + 1.0)) < 1e-12

    def test_mass(self, case):
        """The weights sum to c_0 = 1."""
        assert case.weights.sum() == pytest.approx(1.0, abs=1e-12)

    def test_weight_routes_agree(self, ctx):
        """Direct-sum, product and dn weights coincide."""
        weights = [build_polygon_case(4, ctx, route=r).weights for r in ("direct", "product", "dn")]
        assert np.max(np.abs(weights[0] - weights[1])) < 1e-12
        assert np.max(np.abs(weights[0] - weights[2])) < 1e-12

    def test_S_dn_route(self, ctx):
        """S(j;N) by the order-2N transformation matches the direct sum."""
        for j in (-1, 0, 1, 2):
            assert S_weights(j, 2, ctx, "dn") == pytest.approx(S_weights(j, 2, ctx, "direct"), rel=1e-11)

    def test_residue_weights(self, case):
        """Weights from the residue formula equal the sum formula."""
        assert np.max(np.abs(residue_weights(case) - case.weights)) < 1e-10

    def test_moments(self, case):
        """sum rho_j z_j^n = cn(wn) for n < 2N."""
        for n in range(6):
            assert finite_moment_check(case, n) < 1e-11

    def test_moment_index_range(self, case):
        """n = 2N is outside the checked range."""
        with pytest.raises(DomainError):
            finite_moment_check(case, 6)

    def test_gram(self, case):
        """Phi_0..Phi_(2N-1) are orthogonal with norms h_n."""
        result = finite_gram_check(case)
        assert result.max_offdiag < 1e-10
        assert result.max_diag_error < 1e-10

    def test_experimental_M(self, ctx, caplog):
        """M != 1 logs a warning and falls back to direct sums."""
        with caplog.at_level(logging.WARNING):
            case = build_polygon_case(2, ctx, M=3)
        assert case.experimental
        assert case.route == "direct"
        assert "experimental" in caplog.text

    @pytest.mark.parametrize("N, M", [(0, 1), (3, 2), (3, 3)])
    def test_invalid_parameters(self, ctx, N, M):
        """N must be positive, M odd and co-prime with N."""
        with pytest.raises(DomainError):
            build_polygon_case(N, ctx, M=M)


class TestExport:
    """Tests for the polygon export."""

    def test_csv(self, case, tmp_path):
        """One row per point with both route residuals small."""
        path = tmp_path / "polygon.csv"
        write_polygon(case, path)
        with open(path, newline="") as f:
            rows = list(csv.DictReader(f))
        assert len(rows) == 6
        assert max(float(r["product_residual"]) for r in rows) < 1e-12
        assert max(float(r["dn_residual"]) for r in rows) < 1e-12


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
