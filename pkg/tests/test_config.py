"""Tests for environment configuration, run configuration and shared utilities."""

import json
import sys
from pathlib import Path

import pytest

# Add project root to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.cli.run_config import GOLDEN_CONJUGATE, RunConfig
from src.config import Config
from src.main import build_parser
from src.utils.error_handlers import (
    ConfigError,
    DomainError,
    command_error_wrapper,
    safe_execute,
)
from src.utils.export import render_rows
from src.verify import CheckResult, VerifyReport


def _run_config(*flags: str, command: str = "table") -> RunConfig:
    return RunConfig.from_args(build_parser().parse_args([command, *flags]))


class TestEnvironmentConfig:
    """Tests for Config.validate."""

    def test_defaults_valid(self):
        """Shipped defaults pass validation."""
        assert Config.is_valid()

    def test_invalid_values_named(self, monkeypatch):
        """Bad settings are reported by variable name."""
        monkeypatch.setattr(Config, "DEFAULT_K", 1.2)
        monkeypatch.setattr(Config, "QUADRATURE_NODES", None)
        monkeypatch.setattr(Config, "LOG_LEVEL", "LOUD")
        invalid = Config.validate()
        assert {"ELLIPUC_DEFAULT_K", "ELLIPUC_QUADRATURE_NODES", "ELLIPUC_LOG_LEVEL"} <= set(invalid)


class TestRunConfig:
    """Tests for RunConfig.from_args."""

    def test_defaults(self):
        """cn family, k from the environment, CSV output."""
        run = _run_config()
        assert run.family == "cn"
        assert run.k == Config.DEFAULT_K
        assert run.fmt == "csv"
        assert run.n_max == 12

    def test_verify_defaults_to_json(self):
        """verify writes JSON unless told otherwise."""
        assert _run_config(command="verify").fmt == "json"

    def test_magnus_default_w(self):
        """The Magnus family steps by the golden conjugate."""
        run = _run_config("--family", "magnus")
        assert run.w == GOLDEN_CONJUGATE
        assert run.w_value == pytest.approx(0.6180339887498949)

    def test_profile_implies_family(self):
        """Passing --profile selects the profile family."""
        assert _run_config("--profile", "p.json").family == "profile"

    def test_all_bad_fields_listed(self):
        """Every invalid field is named at once."""
        with pytest.raises(ConfigError) as info:
            _run_config("--k", "0", "--nmax", "0", "--tol", "-1", "--polygon-N", "0")
        assert {"k", "nmax", "tol", "polygon-N"} <= set(info.value.fields)

    def test_summary(self):
        """The summary omits output path and exact w, and k for non-elliptic families."""
        summary = _run_config("--family", "hyperbolic", "--out", "x.csv").summary()
        assert "out" not in summary and "w_exact" not in summary and "k" not in summary
        json.dumps(summary)

    def test_context_needs_elliptic_family(self):
        """The hyperbolic family has no modulus."""
        with pytest.raises(DomainError):
            _run_config("--family", "hyperbolic").context()


class TestErrorHandlers:
    """Tests for the error decorators."""

    def test_wrapper_maps_toolkit_errors(self, capsys):
        """Toolkit errors exit with 2 and print the user message."""
        @command_error_wrapper
        def failing() -> int:
            raise DomainError("k = 2")

        assert failing() == 2
        assert "k = 2" in capsys.readouterr().err

    def test_wrapper_maps_unexpected_errors(self):
        """Anything else exits with 1."""
        @command_error_wrapper
        def broken() -> int:
            raise RuntimeError("boom")

        assert broken() == 1

    def test_safe_execute(self):
        """Errors turn into the default or the on_error result."""
        @safe_execute(default=-1)
        def plain():
            raise ValueError("x")

        @safe_execute(on_error=lambda e: type(e).__name__)
        def named():
            raise KeyError("x")

        assert plain() == -1
        assert named() == "KeyError"


class TestReports:
    """Tests for exports and the verify report."""

    def test_render_csv_missing_cells(self):
        """Missing keys become empty cells."""
        text = render_rows([{"a": 1}, {"a": 2, "b": 0.5}], ("a", "b"))
        assert text.splitlines() == ["a,b", "1,", "2,0.5"]

    def test_render_unknown_format(self):
        """Only csv and json are rendered."""
        with pytest.raises(ValueError):
            render_rows([], ("a",), "xml")

    def test_report(self):
        """A failed or raised check fails the report."""
        report = VerifyReport(family="cn")
        report.add(CheckResult.from_residual("ok", 1e-12, 1e-9))
        assert report.passed
        report.add(CheckResult.from_error("bad", 1e-9, DomainError("n")))
        assert not report.passed
        assert [c.name for c in report.failed] == ["bad"]
        document = json.loads(report.render("json"))
        assert document["schema"] == 1
        assert document["checks"][1]["residual"] is None


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
