import numpy as np
import pytest
from page_curvature.commands import COMMANDS, pattern_residual, run_command
from page_curvature.errors import ConfigError
from page_curvature.report import RunConfig
from page_curvature.scan import ScanConfig


def make_config(metric: str, a: float | None = None, **scan) -> RunConfig:
    settings = dict(grid=3, sphere_points=16, refine_iterations=2, conformal_points=1, random_samples=5,
                    transport_grid=4)
    settings.update(scan)
    return RunConfig(metric=metric, a=a, scan=ScanConfig(**settings))


def check_names(report) -> list[str]:
    return [check.name for check in report.checks]


class TestCheckEinstein:
    def test_flat_torus_passes(self):
        """Test that the flat torus passes every asserted Einstein check."""
        report = run_command("check-einstein", make_config("t4"))
        assert report.passed
        assert {"einstein_residual", "scalar_spread", "structure_residual"} <= set(check_names(report))

    def test_off_root_page_fails(self):
        """Test that a Page metric away from the Einstein root fails the residual check."""
        report = run_command("check-einstein", make_config("page", a=0.5))
        assert not report.passed
        failed = [check.name for check in report.checks if not check.passed and check.kind == "assert"]
        assert "einstein_residual" in failed

    def test_page_notes(self):
        """Test that Page runs record the root and the vierbein mismatch."""
        report = run_command("check-einstein", make_config("page", a=0.5))
        assert report.results["page_root"] == pytest.approx(0.2817, abs=1e-4)
        assert "printed_vierbein_mismatch" in check_names(report)
        assert len(report.notes) == 3
        assert any("C sin²r/(4V)" in note for note in report.notes)


class TestBisectionalCommands:
    def test_fubini_study_positive(self):
        """Test that CP² passes the positive bisectional check."""
        report = run_command("scan-bisec", make_config("fs"))
        assert report.passed
        assert "bisectional_positive" in check_names(report)
        assert "einstein_identity" in check_names(report)

    def test_flat_torus_orthogonal_vanishes(self):
        """Test that the flat torus has identically zero orthogonal bisectional curvature."""
        report = run_command("scan-ortho-bisec", make_config("t4"))
        assert report.passed
        assert "orthogonal_bisectional_vanishes" in check_names(report)


class TestWeylSpectrum:
    def test_pattern_residual(self):
        """Test the relative distance from the (−λ/2, −λ/2, λ) pattern."""
        assert pattern_residual(np.array([-2.0, -2.0, 4.0])) == 0.0
        assert pattern_residual(np.array([-1.0, -3.0, 4.0])) == pytest.approx(0.25)
        assert np.isnan(pattern_residual(np.zeros(3)))

    def test_round_sphere(self):
        """Test that a non-Hermitian entry only records pattern data."""
        report = run_command("weyl-spectrum", make_config("s4"))
        assert report.passed
        assert all(check.kind == "record" for check in report.checks)
        assert len(report.tables) == 4

    def test_fubini_study(self):
        """Test the Weyl pattern, complex structure and Kähler identity on CP²."""
        report = run_command("weyl-spectrum", make_config("fs", random_samples=20))
        assert report.passed
        names = check_names(report)
        assert {"wplus_pattern", "complex_structure", "kahler_identity", "holomorphic_sectional_constant"} <= set(
            names
        )


class TestCheckEstimates:
    def test_flat_torus_unevaluable(self):
        """Test that a vanishing W⁺ is reported as a failed check, not raised."""
        report = run_command("check-estimates", make_config("t4"))
        assert not report.passed
        assert check_names(report) == ["weyl_estimates_evaluable"]
        assert "NonPositiveEigenvalueError" in report.checks[0].detail


class TestNormalBundle:
    def test_flat_torus(self):
        """Test the flat control: zero curvature, trivial holonomy."""
        report = run_command("normal-bundle", make_config("t4", holonomy_steps=8))
        assert report.passed
        assert "point_loop_trivial" in check_names(report)

    def test_fubini_study(self):
        """Test closed form and Stokes checks on the curved CP² fibers."""
        report = run_command("normal-bundle", make_config("fs"))
        assert report.passed
        flatness = next(check for check in report.checks if check.name == "normal_flatness")
        assert not flatness.passed
        assert "orbit_torus_normal_curvature" in check_names(report)


class TestWeitzenbockCommand:
    def test_flat_torus(self):
        """Test the Weitzenböck check on the flat torus."""
        report = run_command("weitzenbock", make_config("t4"))
        assert report.passed
        assert len(report.results["weitzenbock"]) == 3


class TestRunCommand:
    def test_unknown_command(self):
        """Test that an unknown command raises ConfigError."""
        with pytest.raises(ConfigError) as excinfo:
            run_command("scan-everything", make_config("t4"))
        assert "Unknown command" in str(excinfo.value)

    def test_commands_listed(self):
        """Test the registered subcommands."""
        assert set(COMMANDS) == {
            "check-einstein",
            "scan-bisec",
            "scan-ortho-bisec",
            "weyl-spectrum",
            "check-estimates",
            "normal-bundle",
            "weitzenbock",
            "report-all",
        }

    def test_report_all_merges(self):
        """Test that report-all prefixes sub-command checks and fails with any of them."""
        report = run_command("report-all", make_config("t4", holonomy_steps=8))
        assert not report.passed
        assert "check-estimates/weyl_estimates_evaluable" in check_names(report)
        assert "check-einstein/einstein_residual" in check_names(report)

    def test_report_all_page_root(self):
        """Test that every sub-command passes on the Einstein Page metric."""
        report = run_command("report-all", make_config("page", random_samples=20))
        failed = [check.name for check in report.checks if check.kind == "assert" and not check.passed]
        assert failed == []
        assert report.passed
        prefixes = {name.split("/")[0] for name in check_names(report)}
        assert prefixes == set(COMMANDS) - {"report-all"}
        assert "check-estimates/second_estimate_violated" in check_names(report)
        assert "weyl-spectrum/kahler_identity_violated" in check_names(report)
