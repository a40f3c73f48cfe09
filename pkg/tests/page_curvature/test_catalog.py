import numpy as np
import pytest
from page_curvature.catalog import (
    STANDARD_OMEGA,
    PageParams,
    conformal_coframe,
    euler_embedding,
    hopf_project,
    metric_from_name,
    page_metric,
    page_profile,
    page_root,
    page_sigma_metric,
    printed_vierbein_mismatch,
    quartic,
    round_s2xs2,
    round_s4,
    scale_coframe,
    sigma_forms,
)
from page_curvature.engine import curvature_at, einstein_residual
from page_curvature.errors import ConfigError, ParameterRangeError
from page_curvature.hermitian import ComplexStructureData, holomorphic_sectional, random_unit_vectors


@pytest.fixture
def angles():
    return np.array([1.1, 0.4, 2.3])


class TestPageRoot:
    def test_root_value(self):
        """Test that the Einstein parameter is about 0.2817."""
        assert round(page_root(), 4) == 0.2817

    def test_root_solves_quartic(self):
        """Test |quartic(root)| < 1e-14."""
        assert abs(quartic(page_root())) < 1e-14

    def test_params_range(self):
        """Test that a outside (0, 1) raises ParameterRangeError."""
        for a in (0.0, 1.0, -0.3):
            with pytest.raises(ParameterRangeError) as excinfo:
                PageParams(a)
            assert "0 < a < 1" in str(excinfo.value)

    def test_is_einstein_flag(self):
        """Test that only the root is flagged as Einstein."""
        assert PageParams.einstein().is_einstein
        assert not PageParams(0.5).is_einstein


class TestPageProfile:
    def test_v_at_equator(self):
        """Test V(π/2) = 1/(3 − a²)."""
        a = page_root()
        assert page_profile(a, np.pi / 2).V == pytest.approx(1 / (3 - a**2), abs=1e-15)

    def test_derivatives(self):
        """Test V′ and f′ against central differences."""
        a, r, h = 0.4, 1.2, 1e-6
        prof = page_profile(a, r)
        dV = (page_profile(a, r + h).V - page_profile(a, r - h).V) / (2 * h)
        df = (page_profile(a, r + h).f - page_profile(a, r - h).f) / (2 * h)
        assert prof.dV == pytest.approx(dV, abs=1e-8)
        assert prof.df == pytest.approx(df, abs=1e-8)


class TestSigmaForms:
    def test_exterior_derivative_identity(self, angles):
        """Test dσ₁ = 2σ₂∧σ₃."""
        sigma = sigma_forms()
        np.testing.assert_allclose(sigma.exterior(1, angles), 2 * sigma.wedge(2, 3, angles), atol=1e-12)

    def test_cyclic_identities(self, angles):
        """Test dσ₂ = 2σ₃∧σ₁ and dσ₃ = 2σ₁∧σ₂."""
        sigma = sigma_forms()
        np.testing.assert_allclose(sigma.exterior(2, angles), 2 * sigma.wedge(3, 1, angles), atol=1e-12)
        np.testing.assert_allclose(sigma.exterior(3, angles), 2 * sigma.wedge(1, 2, angles), atol=1e-12)

    def test_base_metric(self, angles):
        """Test σ₁² + σ₂² = (dθ² + sin²θ dφ²)/4."""
        expected = np.diag([0.25, 0.25 * np.sin(angles[0]) ** 2, 0.0])
        np.testing.assert_allclose(sigma_forms().base_metric(angles), expected, atol=1e-12)

    def test_sigma3_on_equator(self):
        """Test σ₃ = dψ/2 at θ = π/2."""
        np.testing.assert_allclose(sigma_forms().coefficients(np.array([np.pi / 2, 0.3, 0.9]))[2], [0, 0, 0.5],
                                   atol=1e-15)


class TestHopf:
    def test_projection_ignores_psi(self):
        """Test that changing ψ does not change the image."""
        assert hopf_project(0.7, 0.1, 1.9) == hopf_project(0.7, 3.0, 1.9)

    def test_projection_value(self):
        """Test h(π/2, 0, 0) = (0, π/2)."""
        assert hopf_project(np.pi / 2, 0.0, 0.0) == (0.0, np.pi / 2)

    def test_embedding_on_unit_sphere(self):
        """Test that Euler angles land on the unit S³ and ψ moves along the Hopf circle."""
        p = euler_embedding(1.0, 0.5, 0.2)
        q = euler_embedding(1.0, 0.5, 1.7)
        assert np.linalg.norm(p) == pytest.approx(1.0)
        z_p, z_q = p[0] + 1j * p[1], q[0] + 1j * q[1]
        w_p, w_q = p[2] + 1j * p[3], q[2] + 1j * q[3]
        assert z_q * w_p == pytest.approx(z_p * w_q)


class TestPageMetric:
    def test_coframe_matches_sigma_metric(self):
        """Test Σ eⁱ⊗eⁱ against the expanded coordinate metric at 1000 random points."""
        p = PageParams.einstein()
        cf = page_metric(p)
        rng = np.random.default_rng(3)
        for x in cf.chart.random_points(1000, rng):
            np.testing.assert_allclose(cf.metric(x), page_sigma_metric(p, x), atol=1e-12)

    def test_expanded_metric_at_equator(self):
        """Test the coordinate metric at r = θ = π/2 against V, f and C written out by hand."""
        a = page_root()
        V = 1 / (3 - a**2)
        f = 4 / (3 + 6 * a**2 - a**4)
        C = (2 / (3 + a**2)) ** 2
        expected = np.diag([V, f / 4, f / 4, C / (16 * V)])
        x = np.array([np.pi / 2, np.pi / 2, 0.7, 1.9])
        np.testing.assert_allclose(page_sigma_metric(PageParams(a), x), expected, atol=1e-15)
        np.testing.assert_allclose(page_metric(PageParams(a)).metric(x), expected, atol=1e-15)

    def test_sigma3_coefficient(self):
        """Test f(σ₁²+σ₂²) + (C sin²r/(4V)) σ₃² with dσ₁ = 2σ₂∧σ₃ forms."""
        p = PageParams(0.4)
        x = np.array([1.1, 0.8, 0.3, 2.0])
        prof = page_profile(p.a, x[0])
        s = sigma_forms().coefficients(x[1:])
        expected = np.zeros((4, 4))
        expected[0, 0] = prof.V
        expected[1:, 1:] = prof.f * sigma_forms().base_metric(x[1:])
        expected[1:, 1:] += prof.C * np.sin(x[0]) ** 2 / (4 * prof.V) * np.outer(s[2], s[2])
        np.testing.assert_allclose(page_metric(p).metric(x), expected, atol=1e-14)

    def test_einstein_at_root(self):
        """Test that the coframe at the quartic root is Einstein away from the bolts."""
        cf = page_metric(PageParams.einstein())
        for x in cf.chart.random_points(5, np.random.default_rng(8), pad=0.1):
            assert einstein_residual(curvature_at(cf, x)) < 1e-6

    def test_not_einstein_off_root(self):
        """Test a large Einstein residual at a = 0.5."""
        pc = curvature_at(page_metric(PageParams(0.5)), [1.0, 1.0, 0.0, 0.0])
        assert einstein_residual(pc) > 1e-3

    def test_coframe_partials(self):
        """Test the analytic coframe partials against central differences."""
        cf = page_metric(PageParams(0.3))
        x, h = np.array([1.0, 0.8, 0.3, 2.0]), 1e-6
        for nu in range(4):
            step = np.zeros(4)
            step[nu] = h
            numeric = (cf.coeff(x + step) - cf.coeff(x - step)) / (2 * h)
            np.testing.assert_allclose(cf.dcoeff(x)[:, :, nu], numeric, atol=1e-8)

    def test_printed_vierbein_differs(self):
        """Test that the vierbein without the cosθ dφ leg does not reproduce the metric."""
        assert printed_vierbein_mismatch(PageParams.einstein(), np.array([np.pi / 2, np.pi / 3, 0.0, 0.0])) > 1e-3


class TestOtherMetrics:
    def test_fubini_study_holomorphic_sectional(self):
        """Test holomorphic sectional curvature ≡ 4 on Fubini–Study."""
        entry = metric_from_name("fubini-study")
        pc = curvature_at(entry.coframe, [0.9, 1.2, 0.3, 0.1])
        cs = ComplexStructureData.from_omega(STANDARD_OMEGA)
        for U in random_unit_vectors(np.random.default_rng(0), 20):
            assert holomorphic_sectional(pc, cs, U) == pytest.approx(4.0, abs=1e-6)

    def test_product_of_equal_spheres_is_einstein(self):
        """Test that S²×S² with equal radii is Einstein and unequal radii is not."""
        x = [1.0, 0.5, 2.0, 1.0]
        assert einstein_residual(curvature_at(round_s2xs2(1.0, 1.0), x)) < 1e-7
        assert einstein_residual(curvature_at(round_s2xs2(1.0, 2.0), x)) > 0.1

    def test_negative_radius(self):
        """Test that non-positive radii raise ParameterRangeError."""
        with pytest.raises(ParameterRangeError) as excinfo:
            round_s4(-1.0)
        assert "Radius must be positive" in str(excinfo.value)

    def test_scale_coframe(self):
        """Test that scaling the metric by 4 divides the scalar curvature by 4."""
        pc = curvature_at(scale_coframe(round_s4(), 4.0), [1.0, 1.0, 0.0, 0.0])
        assert pc.scalar == pytest.approx(3.0, abs=1e-6)

    def test_constant_conformal_factor(self):
        """Test that a constant conformal factor agrees with scale_coframe."""
        cf = conformal_coframe(round_s4(), lambda x: 4.0, lambda x: np.zeros(4))
        x = np.array([1.0, 1.0, 0.5, 0.5])
        np.testing.assert_allclose(cf.coeff(x), scale_coframe(round_s4(), 4.0).coeff(x))
        np.testing.assert_allclose(cf.dcoeff(x), scale_coframe(round_s4(), 4.0).dcoeff(x))


class TestMetricFromName:
    def test_page_default_is_root(self):
        """Test that the bare selector resolves to the Einstein Page metric."""
        entry = metric_from_name("page")
        assert entry.einstein
        assert entry.parameters["a"] == page_root()
        assert entry.hermitian and not entry.kahler

    def test_page_with_parameter(self):
        """Test the page(a=…) selector and the override argument."""
        assert metric_from_name("page(a=0.5)").parameters["a"] == 0.5
        assert metric_from_name("page(0.4)").parameters["a"] == 0.4
        assert metric_from_name("page(a=0.5)", a=0.3).parameters["a"] == 0.3

    def test_sphere_and_product_selectors(self):
        """Test s4(2) and s2xs2(1,2)."""
        assert metric_from_name("s4(2)").name == "s4(r=2)"
        entry = metric_from_name("s2xs2(1,2)")
        assert entry.kahler and not entry.einstein

    def test_aliases(self):
        """Test that FS and CP2 aliases resolve to Fubini–Study."""
        assert metric_from_name("FS").name == "fubini-study"
        assert metric_from_name("cp2").canonical_omega is not None

    def test_unknown_metric(self):
        """Test that an unknown name raises ConfigError."""
        with pytest.raises(ConfigError) as excinfo:
            metric_from_name("hyperbolic")
        assert "Unknown metric" in str(excinfo.value)

    def test_bad_parameter(self):
        """Test that a malformed parameter raises ConfigError."""
        with pytest.raises(ConfigError) as excinfo:
            metric_from_name("page(b=0.5)")
        assert "Unknown parameter" in str(excinfo.value)
        with pytest.raises(ConfigError) as excinfo:
            metric_from_name("page(a=abc)")
        assert "not a number" in str(excinfo.value)

    def test_parameter_out_of_range(self):
        """Test that page(a=1.5) raises ParameterRangeError."""
        with pytest.raises(ParameterRangeError):
            metric_from_name("page(a=1.5)")

    def test_a_only_for_page(self):
        """Test that the a override is rejected for other metrics."""
        with pytest.raises(ConfigError) as excinfo:
            metric_from_name("t4", a=0.3)
        assert "only applies to the Page family" in str(excinfo.value)
