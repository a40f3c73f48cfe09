"""
Exterior algebra and Hodge theory on one oriented 4-dimensional inner-product space.

All 2-forms are 6-component vectors in the orthonormal basis

    (e⁰∧e¹, e⁰∧e², e⁰∧e³, e²∧e³, e³∧e¹, e¹∧e²)

with orientation dvol = e⁰∧e¹∧e²∧e³. The self-dual and anti-self-dual bases are
σ±ᵢ = (e⁰∧eⁱ ± *(e⁰∧eⁱ))/√2, and operators on forms are stored in the
(σ⁺, σ⁻) block basis so that W⁺ + s/12 sits in the upper-left 3×3 block.

Classes:
    OperatorOnForms: Symmetric 6×6 operator on Λ² in the block basis.
"""

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from page_curvature.errors import CurvatureError, DegeneratePlaneError

Vec4 = NDArray[np.float64]
TwoForm = NDArray[np.float64]

# Index pairs of the ordered 2-form basis
BASIS_PAIRS: tuple[tuple[int, int], ...] = ((0, 1), (0, 2), (0, 3), (2, 3), (3, 1), (1, 2))

DEGENERACY_THRESHOLD = 1e-10
SYMMETRY_TOLERANCE = 1e-12

# *(e⁰∧eⁱ) = the i-th entry of the second triple and vice versa
HODGE = np.block([[np.zeros((3, 3)), np.eye(3)], [np.eye(3), np.zeros((3, 3))]])

# Rows are σ⁺₁, σ⁺₂, σ⁺₃, σ⁻₁, σ⁻₂, σ⁻₃ written in the component basis
BLOCK_BASIS = np.block([[np.eye(3), np.eye(3)], [np.eye(3), -np.eye(3)]]) / np.sqrt(2.0)


def wedge(v: Vec4, w: Vec4) -> TwoForm:
    """Exterior product of two covectors, as components in the ordered basis."""
    v = np.asarray(v, dtype=float)
    w = np.asarray(w, dtype=float)
    return np.array([v[i] * w[j] - v[j] * w[i] for i, j in BASIS_PAIRS])


def hodge_star(phi: TwoForm) -> TwoForm:
    """Hodge star on 2-forms; an involution with eigenspaces span(σ⁺) and span(σ⁻)."""
    return HODGE @ np.asarray(phi, dtype=float)


def sd_asd_split(phi: TwoForm) -> tuple[TwoForm, TwoForm]:
    """
    Split a 2-form into its self-dual and anti-self-dual parts.

    Args:
        phi: 6-component 2-form

    Returns:
        (sd, asd) with phi = sd + asd, *sd = sd and *asd = -asd
    """
    phi = np.asarray(phi, dtype=float)
    star = hodge_star(phi)
    return (phi + star) / 2.0, (phi - star) / 2.0


def plane_to_forms(X: Vec4, Y: Vec4) -> tuple[TwoForm, TwoForm]:
    """
    Map an oriented 2-plane to the SD/ASD parts of its unit 2-vector.

    Args:
        X: First spanning vector
        Y: Second spanning vector

    Returns:
        (alpha, beta), the self-dual and anti-self-dual parts of X∧Y/|X∧Y|;
        both have norm 1/√2.

    Raises:
        DegeneratePlaneError: If |X∧Y| < 1e-10
    """
    xi = wedge(X, Y)
    norm = np.linalg.norm(xi)
    if norm < DEGENERACY_THRESHOLD:
        raise DegeneratePlaneError(f"Vectors X={X} and Y={Y} do not span a plane (|X∧Y|={norm:.3e})")
    return sd_asd_split(xi / norm)


def wedge_top(phi: TwoForm, psi: TwoForm) -> float:
    """Coefficient of dvol in phi∧psi, i.e. ⟨phi, *psi⟩."""
    return float(np.dot(phi, hodge_star(psi)))


def to_block(phi: TwoForm) -> NDArray[np.float64]:
    """Coordinates of a 2-form in the (σ⁺, σ⁻) basis."""
    return BLOCK_BASIS @ np.asarray(phi, dtype=float)


def from_block(coords: NDArray[np.float64]) -> TwoForm:
    return BLOCK_BASIS.T @ np.asarray(coords, dtype=float)


def sd_form(coords: NDArray[np.float64]) -> TwoForm:
    """Self-dual 2-form Σ cᵢ σ⁺ᵢ."""
    return from_block(np.concatenate([coords, np.zeros(3)]))


def asd_form(coords: NDArray[np.float64]) -> TwoForm:
    """Anti-self-dual 2-form Σ cᵢ σ⁻ᵢ."""
    return from_block(np.concatenate([np.zeros(3), coords]))


def asd_coords(phi: TwoForm) -> NDArray[np.float64]:
    return to_block(phi)[3:]


def form_to_matrix(phi: TwoForm) -> NDArray[np.float64]:
    """Antisymmetric 4×4 matrix A with A[i, j] = phi(eᵢ, eⱼ)."""
    A = np.zeros((4, 4))
    for k, (i, j) in enumerate(BASIS_PAIRS):
        A[i, j] = phi[k]
        A[j, i] = -phi[k]
    return A


def matrix_to_form(A: NDArray[np.float64]) -> TwoForm:
    return np.array([A[i, j] for i, j in BASIS_PAIRS])


@dataclass(frozen=True)
class OperatorOnForms:
    """Symmetric operator on Λ², stored in the (σ⁺, σ⁻) block basis."""

    matrix: NDArray[np.float64]

    def __post_init__(self):
        asymmetry = np.linalg.norm(self.matrix - self.matrix.T)
        if asymmetry > SYMMETRY_TOLERANCE * max(1.0, np.linalg.norm(self.matrix)):
            raise CurvatureError(f"Operator on forms is not symmetric (‖A − Aᵀ‖={asymmetry:.3e})")

    @classmethod
    def from_frame_matrix(cls, frame_matrix: NDArray[np.float64]) -> "OperatorOnForms":
        """Build from a matrix written in the ordered component basis."""
        return cls(BLOCK_BASIS @ frame_matrix @ BLOCK_BASIS.T)

    @property
    def frame_matrix(self) -> NDArray[np.float64]:
        return BLOCK_BASIS.T @ self.matrix @ BLOCK_BASIS

    @property
    def plus_block(self) -> NDArray[np.float64]:
        return self.matrix[:3, :3]

    @property
    def minus_block(self) -> NDArray[np.float64]:
        return self.matrix[3:, 3:]

    @property
    def cross_block(self) -> NDArray[np.float64]:
        """Block mapping Λ²₋ into Λ²₊."""
        return self.matrix[:3, 3:]

    def apply(self, phi: TwoForm) -> TwoForm:
        return self.frame_matrix @ phi

    def pair(self, phi: TwoForm, psi: TwoForm) -> float:
        """⟨A phi, psi⟩ for component-basis 2-forms."""
        return float(phi @ self.frame_matrix @ psi)
