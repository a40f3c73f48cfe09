import numpy as np
import pytest
from page_curvature.catalog import PageParams, flat_t4, fubini_study, page_metric, round_s4
from page_curvature.errors import UnsupportedFieldError
from page_curvature.weitzenbock import (
    FormField,
    codifferential,
    constant_field,
    hodge_laplacian,
    polynomial_field,
    sine_field,
    standard_test_fields,
    weitzenbock_residual,
    weitzenbock_sides,
)


@pytest.fixture
def torus():
    return flat_t4()


class TestFormFields:
    def test_polynomial_partials(self):
        """Test the analytic partials of a monomial component."""
        field = polynomial_field((0, 1), (2, 1, 0, 0))
        x = np.array([1.0, 2.0, 3.0, 4.0])
        assert field.value(x)[0, 1] == 2.0
        assert field.value(x)[1, 0] == -2.0
        np.testing.assert_allclose(field.d1(x)[0, 1], [4.0, 1.0, 0.0, 0.0])
        np.testing.assert_allclose(
            field.d2(x)[0, 1],
            [[4.0, 2.0, 0.0, 0.0], [2.0, 0.0, 0.0, 0.0], [0.0] * 4, [0.0] * 4],
        )

    def test_sum_of_fields(self):
        """Test that adding fields adds values and partials."""
        total = sine_field((0, 1), 1) + constant_field((0, 1), 2.0)
        x = np.array([0.0, 0.5, 0.0, 0.0])
        assert total.value(x)[0, 1] == pytest.approx(np.sin(0.5) + 2.0)
        assert total.d1(x)[0, 1, 1] == pytest.approx(np.cos(0.5))
        assert "+" in total.name

    def test_sum_drops_missing_partials(self):
        """Test that a sum with a bare field has no partials."""
        bare = FormField("bare", value=lambda x: np.zeros((4, 4)))
        total = bare + constant_field((0, 1))
        assert total.d1 is None
        assert total.d2 is None


class TestHodgeSide:
    def test_constant_form_is_coclosed(self, torus):
        """Test that a constant form on the flat torus has vanishing codifferential."""
        alpha = codifferential(torus, constant_field((0, 1), 3.0), np.array([1.0, 2.0, 3.0, 4.0]))
        np.testing.assert_array_equal(alpha, np.zeros(4))

    def test_flat_laplacian(self, torus):
        """Test that Δ sin(x₁) dx⁰∧dx¹ = sin(x₁) dx⁰∧dx¹ on the flat torus."""
        x = np.array([0.3, 1.1, 2.0, 4.0])
        lap = hodge_laplacian(torus, sine_field((0, 1), 1), x)
        assert lap[0, 1] == pytest.approx(np.sin(1.1), abs=1e-8)
        assert lap[1, 0] == pytest.approx(-np.sin(1.1), abs=1e-8)
        lap[[0, 1], [1, 0]] = 0.0
        assert np.max(np.abs(lap)) < 1e-8


class TestWeitzenbock:
    def test_flat_sine_field(self, torus):
        """Test the identity on the flat torus for a trigonometric field."""
        assert weitzenbock_residual(torus, sine_field((0, 2), 3, frequency=2.0), [0.4, 1.0, 2.0, 3.0]) < 1e-6

    def test_flat_constant_field(self, torus):
        """Test that a constant field gives an exactly vanishing residual."""
        assert weitzenbock_residual(torus, constant_field((1, 3), 2.0), [0.4, 1.0, 2.0, 3.0]) < 1e-12

    def test_round_sphere(self):
        """Test the identity on S⁴, where W = 0 and s/3 = 4."""
        field = polynomial_field((0, 1), (2, 1, 0, 0)) + polynomial_field((2, 3), (1, 0, 0, 0), 0.5)
        assert weitzenbock_residual(round_s4(), field, [1.0, 1.2, 0.7, 2.0]) < 1e-5

    @pytest.mark.parametrize("x", [[0.7, 1.1, 0.5, 2.0], [1.2, 2.0, 4.0, 9.0]])
    def test_fubini_study(self, x):
        """Test the identity on CP² for the standard polynomial fields."""
        for field in standard_test_fields(fubini_study()):
            assert weitzenbock_residual(fubini_study(), field, x) < 1e-5

    def test_page(self):
        """Test the identity on the Einstein Page metric."""
        cf = page_metric(PageParams.einstein())
        for field in standard_test_fields(cf):
            assert weitzenbock_residual(cf, field, [1.3, 1.0, 2.0, 3.0]) < 1e-5

    def test_sides_are_nonzero(self):
        """Test that the check compares nontrivial quantities."""
        field = standard_test_fields(fubini_study())[0]
        hodge, rough = weitzenbock_sides(fubini_study(), field, [0.7, 1.1, 0.5, 2.0])
        assert np.linalg.norm(hodge) > 1e-2
        assert hodge.shape == rough.shape == (6,)

    def test_field_without_partials(self, torus):
        """Test that a bare field raises UnsupportedFieldError."""
        bare = FormField("bare", value=lambda x: np.zeros((4, 4)))
        with pytest.raises(UnsupportedFieldError) as excinfo:
            weitzenbock_residual(torus, bare, [0.0, 0.0, 0.0, 0.0])
        assert "lacks analytic first and second partials" in str(excinfo.value)

    def test_standard_fields_by_chart(self, torus):
        """Test that periodic charts get trigonometric fields."""
        assert len(standard_test_fields(torus)) == 3
        assert len(standard_test_fields(fubini_study())) == 2
