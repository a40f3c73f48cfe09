"""
Hermitian structure recovered from W⁺, and curvatures of complex lines and planes.

A complex line through a unit vector X corresponds to the 2-form
X∧JX = ω/2 + φ with φ anti-self-dual and |φ| = 1/√2, so the bisectional curvature
is the pairing ⟨R(ω/2 + φ), ω/2 + ψ⟩.

Classes:
    ComplexStructureData: Kähler form ω and the almost-complex structure J
    ComplexLineForm: Anti-self-dual part of a complex line
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np
from numpy.typing import NDArray

from page_curvature.engine import PointCurvature
from page_curvature.errors import (
    CurvatureError,
    DegeneratePlaneError,
    DegenerateWeylError,
    NonUnitVectorError,
)
from page_curvature.forms import (
    DEGENERACY_THRESHOLD,
    TwoForm,
    Vec4,
    asd_coords,
    asd_form,
    form_to_matrix,
    hodge_star,
    plane_to_forms,
    sd_asd_split,
    sd_form,
    to_block,
    wedge,
    wedge_top,
)

EIGEN_GAP = 1e-8
UNIT_TOLERANCE = 1e-10
HALF_NORM = 1.0 / np.sqrt(2.0)


@dataclass(frozen=True)
class ComplexStructureData:
    """ω(·,·) = g(J·,·), self-dual with |ω| = √2."""

    omega: TwoForm
    J: NDArray[np.float64]

    @classmethod
    def from_omega(cls, omega: TwoForm) -> "ComplexStructureData":
        # J e_i = Σ_k ω(e_i, e_k) e_k
        return cls(omega=np.asarray(omega, dtype=float), J=form_to_matrix(omega).T)

    def negated(self) -> "ComplexStructureData":
        return ComplexStructureData(omega=-self.omega, J=-self.J)

    def invariant_residuals(self) -> dict[str, float]:
        """Deviations from J² = −Id, metric compatibility, ω = g(J·,·) and ω∧ω = 2 dvol."""
        identity = np.eye(4)
        return {
            "j_squared": float(np.max(np.abs(self.J @ self.J + identity))),
            "metric_compatibility": float(np.max(np.abs(self.J.T @ self.J - identity))),
            "omega_compatibility": float(np.max(np.abs(form_to_matrix(self.omega) - self.J.T))),
            "orientation": abs(wedge_top(self.omega, self.omega) - 2.0),
        }


@dataclass(frozen=True)
class ComplexLineForm:
    """Anti-self-dual form φ with |φ| = 1/√2."""

    phi: TwoForm

    def __post_init__(self):
        if np.max(np.abs(hodge_star(self.phi) + self.phi)) > UNIT_TOLERANCE:
            raise CurvatureError(f"Complex-line form {self.phi} is not anti-self-dual")
        if abs(np.linalg.norm(self.phi) - HALF_NORM) > UNIT_TOLERANCE:
            raise CurvatureError(f"Complex-line form has norm {np.linalg.norm(self.phi):.12f}, expected 1/√2")

    @classmethod
    def from_asd_coords(cls, coords: NDArray[np.float64]) -> "ComplexLineForm":
        """Rescale a nonzero Λ²₋ coordinate vector onto the radius-1/√2 sphere."""
        coords = np.asarray(coords, dtype=float)
        return cls(asd_form(HALF_NORM * coords / np.linalg.norm(coords)))

    @classmethod
    def from_vector(cls, cs: ComplexStructureData, X: Vec4) -> "ComplexLineForm":
        """φ such that X∧JX = ω/2 + φ for the unit vector along X."""
        X = np.asarray(X, dtype=float)
        X = X / np.linalg.norm(X)
        _, asd = sd_asd_split(wedge(X, cs.J @ X))
        return cls(asd)

    @property
    def coords(self) -> NDArray[np.float64]:
        return asd_coords(self.phi)


def recover_J(pc: PointCurvature, gap: float = EIGEN_GAP) -> ComplexStructureData:
    """
    Read the Hermitian structure off the top eigenvector of W⁺.

    The frame is orthonormal, so the metric at the point is the identity and
    does not need to be passed in.

    Args:
        pc: Curvature at the point
        gap: Minimal separation between the two largest eigenvalues of W⁺

    Returns:
        ComplexStructureData with ω = √2 × the unit top eigenvector

    Raises:
        DegenerateWeylError: If the top eigenvalue of W⁺ is not simple
    """
    values, vectors = np.linalg.eigh(pc.wplus)
    if values[2] - values[1] <= gap:
        raise DegenerateWeylError(
            f"Top eigenvalue of W⁺ is not simple at x={pc.point} (eigenvalues {values})"
        )
    v = vectors[:, 2]
    # ω∧ω = 2 dvol holds for both signs; fix the sign by the first sizeable σ⁺ component
    for component in v:
        if abs(component) > 1e-6:
            if component < 0:
                v = -v
            break
    return ComplexStructureData.from_omega(np.sqrt(2.0) * sd_form(v))


def structure_at(pc: PointCurvature, canonical_omega: Optional[TwoForm] = None) -> ComplexStructureData:
    """recover_J, falling back to a supplied Kähler form where W⁺ is degenerate."""
    try:
        return recover_J(pc)
    except DegenerateWeylError:
        if canonical_omega is None:
            raise
        return ComplexStructureData.from_omega(canonical_omega)


def _require_unit(*vectors: Vec4) -> None:
    for v in vectors:
        norm = np.linalg.norm(v)
        if abs(norm - 1.0) > UNIT_TOLERANCE:
            raise NonUnitVectorError(f"Expected a unit vector, got {v} with norm {norm:.12f}")


def bisectional(pc: PointCurvature, cs: ComplexStructureData, phi: ComplexLineForm, psi: ComplexLineForm) -> float:
    """H = ⟨R(ω/2 + φ), ω/2 + ψ⟩."""
    return pc.operator.pair(cs.omega / 2 + phi.phi, cs.omega / 2 + psi.phi)


def bisectional_direct(pc: PointCurvature, cs: ComplexStructureData, X: Vec4, Y: Vec4) -> float:
    """
    H(X, Y) = Rm(X, JX, Y, JY) evaluated on the Riemann tensor.

    Raises:
        NonUnitVectorError: If X or Y is not a unit vector
    """
    X = np.asarray(X, dtype=float)
    Y = np.asarray(Y, dtype=float)
    _require_unit(X, Y)
    return pc.operator.pair(wedge(X, cs.J @ X), wedge(Y, cs.J @ Y))


def holomorphic_sectional(pc: PointCurvature, cs: ComplexStructureData, U: Vec4) -> float:
    return bisectional_direct(pc, cs, U, U)


def curvature_pairing(pc: PointCurvature, X: Vec4, Y: Vec4) -> float:
    """Rm(X, Y, X, Y) without normalization by |X∧Y|²."""
    xi = wedge(X, Y)
    return pc.operator.pair(xi, xi)


def kahler_bisec_identity_residual(pc: PointCurvature, cs: ComplexStructureData, X: Vec4, Y: Vec4) -> float:
    """
    |H(X, Y) − Rm(X, Y, X, Y) − Rm(X, JY, X, JY)|, which vanishes on Kähler metrics.

    Raises:
        NonUnitVectorError: If X or Y is not a unit vector
        DegeneratePlaneError: If X∧Y or X∧JY vanishes
    """
    X = np.asarray(X, dtype=float)
    Y = np.asarray(Y, dtype=float)
    _require_unit(X, Y)
    JY = cs.J @ Y
    for first, second in ((X, Y), (X, JY)):
        if np.linalg.norm(wedge(first, second)) < DEGENERACY_THRESHOLD:
            raise DegeneratePlaneError(f"Vectors {first} and {second} do not span a plane")
    H = bisectional_direct(pc, cs, X, Y)
    return abs(H - curvature_pairing(pc, X, Y) - curvature_pairing(pc, X, JY))


def sectional(pc: PointCurvature, X: Vec4, Y: Vec4) -> float:
    """
    Sectional curvature ⟨R(α + β), α + β⟩ of the plane spanned by X and Y.

    Raises:
        DegeneratePlaneError: If X and Y are (nearly) parallel
    """
    alpha, beta = plane_to_forms(X, Y)
    xi = alpha + beta
    return pc.operator.pair(xi, xi)


def random_unit_vectors(rng: np.random.Generator, count: int) -> NDArray[np.float64]:
    vectors = rng.normal(size=(count, 4))
    return vectors / np.linalg.norm(vectors, axis=1, keepdims=True)


def orthogonal_partner(cs: ComplexStructureData, X: Vec4, rng: np.random.Generator) -> Vec4:
    """A random unit vector perpendicular to X and JX."""
    X = np.asarray(X, dtype=float)
    basis = np.stack([X, cs.J @ X])
    Y = rng.normal(size=4)
    Y -= basis.T @ (basis @ Y)
    return Y / np.linalg.norm(Y)


def einstein_bisectional(
    pc: PointCurvature, cs: ComplexStructureData, phi_coords: NDArray[np.float64], psi_coords: NDArray[np.float64]
) -> float:
    """
    ¼⟨(W⁺ + s/12)ω, ω⟩ + ⟨(W⁻ + s/12)φ, ψ⟩, which equals H(φ, ψ) when r̊ = 0.

    For ψ = −φ and ω the top eigenvector of W⁺ this is λ₊/2 − ⟨W⁻φ, φ⟩.
    """
    s_part = pc.scalar / 12.0
    omega_plus = to_block(cs.omega)[:3]
    first = 0.25 * omega_plus @ (pc.wplus + s_part * np.eye(3)) @ omega_plus
    return float(first + phi_coords @ (pc.wminus + s_part * np.eye(3)) @ psi_coords)
