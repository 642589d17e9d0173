"""Tests for the discrete orthogonality measures and Gram checks."""

import csv
import json
import sys
from pathlib import Path

import numpy as np
import pytest

# Add project root to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.circle import (
    cn_measure,
    density_report,
    dn_measure,
    explicit_family,
    family_measure,
    gram_check,
    h_n_family,
    moment_from_measure,
    moments,
    reflect_sign,
    truncation_for_tail,
    write_measure,
)
from src.elliptic import make_context
from src.limits import k0_degenerate_measure
from src.utils.error_handlers import DomainError

W = 0.31


@pytest.fixture
def ctx():
    """Context for k = 0.6."""
    return make_context(0.6)


class TestTruncation:
    """Tests for the certified truncation level."""

    @pytest.mark.parametrize("family", ["cn", "dn"])
    def test_tail_below_eps(self, ctx, family):
        """The chosen S has tail bound below eps, S - 1 does not."""
        S = truncation_for_tail(1e-12, ctx, family)
        assert family_measure(family, W, ctx, S).tail_bound <= 1e-12
        if S > 1:
            assert family_measure(family, W, ctx, S - 1).tail_bound > 1e-12

    def test_bad_truncation(self, ctx):
        """S = 0 is rejected."""
        with pytest.raises(DomainError):
            cn_measure(W, ctx, 0)


class TestMeasures:
    """Tests for the cn and dn point measures."""

    def test_point_counts(self, ctx):
        """cn has 2S points, dn has 2S + 1."""
        assert len(cn_measure(W, ctx, 10)) == 20
        assert len(dn_measure(W, ctx, 10)) == 21

    def test_angles_reduced(self, ctx):
        """Angles lie in [0, 2 pi)."""
        m = cn_measure(W, ctx, 30)
        assert np.all(m.angles >= 0.0) and np.all(m.angles < 2.0 * np.pi)

    @pytest.mark.parametrize("family", ["cn", "dn"])
    def test_mass_is_one(self, ctx, family):
        """Total mass is c_0 = 1 up to the tail."""
        m = family_measure(family, W, ctx, truncation_for_tail(1e-14, ctx, family))
        assert abs(m.total_mass - 1.0) <= m.tail_bound + 1e-14

    @pytest.mark.parametrize("family", ["cn", "dn"])
    def test_moments(self, ctx, family):
        """sum rho_s z_s^n reproduces c_n within the tail bound."""
        m = family_measure(family, W, ctx, truncation_for_tail(1e-14, ctx, family))
        c = moments(family, 12, W, ctx)
        for n in range(13):
            value = moment_from_measure(m, n)
            assert abs(value.real - c.at(n)) <= m.tail_bound + 1e-13
            assert abs(value.imag) <= m.tail_bound + 1e-13

    def test_reflected_measure_moments(self, ctx):
        """Shifting the points by pi multiplies c_n by (-1)^n."""
        S = truncation_for_tail(1e-14, ctx, "cn")
        m = family_measure("cn", W, ctx, S, reflected=True)
        c = moments("cn", 6, W, ctx)
        for n in range(7):
            assert moment_from_measure(m, n).real == pytest.approx((-1) ** n * c.at(n), abs=1e-12)

    def test_points_distinct(self, ctx):
        """At a non-lattice w no two points coincide."""
        m = dn_measure(W, ctx, 15)
        report = density_report(m)
        assert report.distinct == len(m)
        assert report.min_gap > 0.0

    @pytest.mark.parametrize("S", [5, 50, 500])
    def test_lattice_step_has_ten_points(self, ctx, S):
        """At w = K/5 the cn points fold onto ten angles pi/5 apart."""
        report = density_report(cn_measure(ctx.big_K / 5.0, ctx, S))
        assert report.distinct == 10
        assert report.min_gap == pytest.approx(np.pi / 5.0, rel=1e-9)
        assert report.max_gap == pytest.approx(np.pi / 5.0, rel=1e-9)

    def test_gaps_close_as_truncation_grows(self, ctx):
        """Doubling S never widens the smallest gap at a generic w."""
        reports = [density_report(cn_measure(W, ctx, S)) for S in (100, 200, 400)]
        assert [r.distinct for r in reports] == [200, 400, 800]
        assert reports[0].min_gap >= reports[1].min_gap >= reports[2].min_gap
        assert reports[2].min_gap < reports[0].min_gap

    def test_k0_degenerate(self):
        """k = 0 leaves two half masses for cn and a unit mass at 1 for dn."""
        cn = k0_degenerate_measure("cn", W)
        assert cn.total_mass == pytest.approx(1.0)
        assert np.allclose(cn.weights, [0.5, 0.5])
        dn = k0_degenerate_measure("dn", W)
        assert dn.angles.tolist() == [0.0]


class TestGram:
    """Tests for orthogonality on the measures."""

    @pytest.mark.parametrize("family", ["cn", "dn"])
    def test_orthogonality(self, ctx, family):
        """Gram matrix of Phi_0..Phi_10 is diagonal with entries h_n."""
        m = family_measure(family, W, ctx, truncation_for_tail(1e-15, ctx, family))
        polys = explicit_family(family, 10, W, ctx)
        h = [h_n_family(family, n, W, ctx) for n in range(11)]
        result = gram_check(m, polys, h)
        assert result.max_offdiag < 1e-9
        assert result.max_diag_error < 1e-9

    def test_reflected_family(self, ctx):
        """The reflected-sign polynomials are orthogonal on the reflected measure."""
        m = family_measure("cn", W, ctx, truncation_for_tail(1e-15, ctx, "cn"), reflected=True)
        polys = [reflect_sign(p) for p in explicit_family("cn", 8, W, ctx)]
        h = [h_n_family("cn", n, W, ctx) for n in range(9)]
        result = gram_check(m, polys, h)
        assert result.max_offdiag < 1e-9
        assert result.max_diag_error < 1e-9

    def test_gram_without_norms(self, ctx):
        """Without h the diagonal error is not computed."""
        result = gram_check(cn_measure(W, ctx, 20), explicit_family("cn", 3, W, ctx))
        assert result.max_diag_error is None
        assert result.matrix.shape == (4, 4)


class TestExport:
    """Tests for writing measures."""

    def test_csv(self, ctx, tmp_path):
        """CSV has the s, angle, weight header and one row per point."""
        path = tmp_path / "measure.csv"
        write_measure(cn_measure(W, ctx, 5), path)
        with open(path, newline="") as f:
            rows = list(csv.reader(f))
        assert rows[0] == ["s", "angle", "weight"]
        assert len(rows) == 11

    def test_json(self, ctx, tmp_path):
        """JSON carries schema, truncation and tail bound."""
        path = tmp_path / "measure.json"
        write_measure(dn_measure(W, ctx, 4), path, fmt="json")
        document = json.loads(path.read_text())
        assert document["schema"] == 1
        assert document["trunc"] == 4
        assert len(document["rows"]) == 9


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
