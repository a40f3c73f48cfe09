import numpy as np
import pytest
from page_curvature.errors import CurvatureError, DegeneratePlaneError
from page_curvature.forms import (
    BLOCK_BASIS,
    OperatorOnForms,
    asd_coords,
    asd_form,
    form_to_matrix,
    from_block,
    hodge_star,
    matrix_to_form,
    plane_to_forms,
    sd_asd_split,
    sd_form,
    to_block,
    wedge,
    wedge_top,
)

E = np.eye(4)


@pytest.fixture
def rng():
    return np.random.default_rng(7)


@pytest.fixture
def standard_omega():
    return wedge(E[0], E[1]) + wedge(E[2], E[3])


class TestWedge:
    def test_wedge_basis(self):
        """Test that e0 ∧ e1 is the first basis form."""
        np.testing.assert_array_equal(wedge(E[0], E[1]), [1, 0, 0, 0, 0, 0])

    def test_wedge_ordering_of_second_triple(self):
        """Test that e3 ∧ e1 and e1 ∧ e2 land in the last two slots with positive sign."""
        np.testing.assert_array_equal(wedge(E[3], E[1]), [0, 0, 0, 0, 1, 0])
        np.testing.assert_array_equal(wedge(E[1], E[2]), [0, 0, 0, 0, 0, 1])

    def test_wedge_self_vanishes(self, rng):
        """Test that v ∧ v is the zero form."""
        v = rng.normal(size=4)
        np.testing.assert_allclose(wedge(v, v), np.zeros(6), atol=1e-15)

    def test_wedge_antisymmetric_and_bilinear(self, rng):
        """Test antisymmetry and linearity in the first slot on random vectors."""
        u, v, w = rng.normal(size=(3, 4))
        np.testing.assert_allclose(wedge(v, w), -wedge(w, v), atol=1e-13)
        np.testing.assert_allclose(wedge(2 * u + v, w), 2 * wedge(u, w) + wedge(v, w), atol=1e-13)

    def test_wedge_norm_matches_gram_determinant(self, rng):
        """Test |v∧w|² = |v|²|w|² − ⟨v,w⟩²."""
        for _ in range(20):
            v, w = rng.normal(size=(2, 4))
            gram = np.dot(v, v) * np.dot(w, w) - np.dot(v, w) ** 2
            assert abs(np.dot(wedge(v, w), wedge(v, w)) - gram) < 1e-12


class TestHodgeStar:
    def test_hodge_star_on_basis(self):
        """Test *(e0∧e1) = e2∧e3."""
        np.testing.assert_array_equal(hodge_star(wedge(E[0], E[1])), wedge(E[2], E[3]))

    def test_hodge_star_involution(self, rng):
        """Test that the Hodge star squares to the identity."""
        phi = rng.normal(size=6)
        np.testing.assert_allclose(hodge_star(hodge_star(phi)), phi, atol=1e-14)

    def test_block_basis_eigenforms(self):
        """Test that σ⁺ rows are self-dual and σ⁻ rows anti-self-dual."""
        for row in BLOCK_BASIS[:3]:
            np.testing.assert_allclose(hodge_star(row), row, atol=1e-15)
        for row in BLOCK_BASIS[3:]:
            np.testing.assert_allclose(hodge_star(row), -row, atol=1e-15)

    def test_block_basis_orthonormal(self):
        """Test that the block basis is orthonormal."""
        np.testing.assert_allclose(BLOCK_BASIS @ BLOCK_BASIS.T, np.eye(6), atol=1e-15)

    def test_wedge_top_of_volume_forms(self):
        """Test (e0∧e1)∧(e2∧e3) = dvol."""
        assert wedge_top(wedge(E[0], E[1]), wedge(E[2], E[3])) == 1.0


class TestSdAsdSplit:
    def test_split_basis_form(self):
        """Test the split of e0∧e1 into (e0∧e1 ± e2∧e3)/2."""
        sd, asd = sd_asd_split(wedge(E[0], E[1]))
        np.testing.assert_allclose(sd, [0.5, 0, 0, 0.5, 0, 0])
        np.testing.assert_allclose(asd, [0.5, 0, 0, -0.5, 0, 0])

    def test_split_pure_asd(self):
        """Test that σ⁻₂ has no self-dual part."""
        sd, asd = sd_asd_split(BLOCK_BASIS[4])
        np.testing.assert_allclose(sd, np.zeros(6), atol=1e-15)
        np.testing.assert_allclose(asd, BLOCK_BASIS[4], atol=1e-15)

    def test_split_orthogonal_and_idempotent(self, rng):
        """Test |φ|² = |sd|² + |asd|² and that splitting again changes nothing."""
        phi = rng.normal(size=6)
        sd, asd = sd_asd_split(phi)
        assert abs(phi @ phi - sd @ sd - asd @ asd) < 1e-13
        np.testing.assert_allclose(sd_asd_split(sd)[0], sd, atol=1e-15)
        np.testing.assert_allclose(sd_asd_split(asd)[1], asd, atol=1e-15)


class TestPlaneToForms:
    def test_coordinate_plane(self):
        """Test that both parts of e0∧e1 have norm 1/√2 and α is along σ⁺₁."""
        alpha, beta = plane_to_forms(E[0], E[1])
        assert abs(np.linalg.norm(alpha) - 1 / np.sqrt(2)) < 1e-12
        assert abs(np.linalg.norm(beta) - 1 / np.sqrt(2)) < 1e-12
        np.testing.assert_allclose(to_block(alpha), [1 / np.sqrt(2), 0, 0, 0, 0, 0], atol=1e-15)

    def test_complex_line_has_sd_part_omega_over_two(self, standard_omega):
        """Test that a J-invariant plane has self-dual part ω/2."""
        J = form_to_matrix(standard_omega).T
        X = np.array([0.3, -0.5, 0.7, 0.1])
        alpha, _ = plane_to_forms(X, J @ X)
        np.testing.assert_allclose(alpha, standard_omega / 2, atol=1e-12)

    def test_depends_only_on_oriented_span(self):
        """Test that (e0, e0 + e1) gives the same forms as (e0, e1)."""
        expected = plane_to_forms(E[0], E[1])
        actual = plane_to_forms(E[0], E[0] + E[1])
        for a, b in zip(expected, actual):
            np.testing.assert_allclose(a, b, atol=1e-12)

    def test_random_planes_have_half_norms(self, rng):
        """Test the 1/√2 norms on random planes."""
        for _ in range(50):
            alpha, beta = plane_to_forms(*rng.normal(size=(2, 4)))
            assert abs(np.linalg.norm(alpha) - 1 / np.sqrt(2)) < 1e-12
            assert abs(np.linalg.norm(beta) - 1 / np.sqrt(2)) < 1e-12

    def test_degenerate_plane(self):
        """Test that parallel vectors raise DegeneratePlaneError."""
        with pytest.raises(DegeneratePlaneError) as excinfo:
            plane_to_forms(E[0], 2 * E[0])
        assert "do not span a plane" in str(excinfo.value)


class TestConversions:
    def test_block_coordinates(self, rng):
        """Test that sd_form and asd_form invert to_block on each half."""
        c = rng.normal(size=3)
        np.testing.assert_allclose(to_block(sd_form(c)), np.concatenate([c, np.zeros(3)]), atol=1e-14)
        np.testing.assert_allclose(asd_coords(asd_form(c)), c, atol=1e-14)
        np.testing.assert_allclose(from_block(to_block(asd_form(c))), asd_form(c), atol=1e-14)

    def test_form_matrix_correspondence(self, rng):
        """Test that form_to_matrix is antisymmetric and matrix_to_form inverts it."""
        phi = rng.normal(size=6)
        A = form_to_matrix(phi)
        np.testing.assert_array_equal(A, -A.T)
        np.testing.assert_array_equal(matrix_to_form(A), phi)


class TestOperatorOnForms:
    def test_rejects_asymmetric_matrix(self):
        """Test that a non-symmetric matrix raises CurvatureError."""
        M = np.zeros((6, 6))
        M[0, 1] = 1.0
        with pytest.raises(CurvatureError) as excinfo:
            OperatorOnForms(M)
        assert "not symmetric" in str(excinfo.value)

    def test_blocks_and_pairing(self):
        """Test the block accessors and that the identity operator pairs like the inner product."""
        M = np.diag([1.0, 2.0, 3.0, 4.0, 5.0, 6.0])
        op = OperatorOnForms(M)
        np.testing.assert_array_equal(op.plus_block, np.diag([1.0, 2.0, 3.0]))
        np.testing.assert_array_equal(op.minus_block, np.diag([4.0, 5.0, 6.0]))
        np.testing.assert_array_equal(op.cross_block, np.zeros((3, 3)))
        identity = OperatorOnForms(np.eye(6))
        phi, psi = np.arange(6.0), np.ones(6)
        assert abs(identity.pair(phi, psi) - phi @ psi) < 1e-13

    def test_frame_matrix_round_trip(self, rng):
        """Test that from_frame_matrix and frame_matrix are inverse."""
        A = rng.normal(size=(6, 6))
        A = A + A.T
        np.testing.assert_allclose(OperatorOnForms.from_frame_matrix(A).frame_matrix, A, atol=1e-13)
