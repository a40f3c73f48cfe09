"""
Curvature engine: Cartan structure equations on an orthonormal coframe.

A metric is described by a coframe field e^i = e^i_μ dx^μ on a rectangular chart,
with analytic first partials of the coefficients. The Levi-Civita connection is
solved in closed form from the anholonomy coefficients; the curvature 2-forms
Ωⁱⱼ = dωⁱⱼ + ωⁱₖ∧ωᵏⱼ use central differences of the connection with one
Richardson step.

Classes:
    Chart: Rectangular coordinate domain with interior margins
    CoframeField: Coframe coefficients and their analytic partials on a chart
    ConnectionAtPoint: Connection 1-form coefficients at one point
    PointCurvature: Curvature operator and its irreducible pieces at one point
"""

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from numpy.typing import NDArray

from page_curvature.errors import ParameterRangeError, SingularCoframeError, StepTooLargeError
from page_curvature.forms import BASIS_PAIRS, HODGE, OperatorOnForms
from page_curvature.logging import logger

DEFAULT_FD_STEP = 1e-4
SINGULAR_THRESHOLD = 1e-10


@dataclass(frozen=True)
class Chart:
    """Rectangular coordinate domain; periodic coordinates have no boundary."""

    names: tuple[str, ...]
    lower: tuple[float, ...]
    upper: tuple[float, ...]
    margins: tuple[float, ...]
    periodic: tuple[bool, ...] = (False, False, False, False)

    def __post_init__(self):
        sizes = {len(self.names), len(self.lower), len(self.upper), len(self.margins), len(self.periodic)}
        if len(sizes) != 1:
            raise ParameterRangeError(f"Chart fields have inconsistent lengths: {sizes}")
        for name, lo, hi, m in zip(self.names, self.lower, self.upper, self.margins):
            if m < 0:
                raise ParameterRangeError(f"Negative margin {m} for coordinate {name}")
            if lo + m >= hi - m:
                raise ParameterRangeError(f"Coordinate {name} has empty interior [{lo}+{m}, {hi}-{m}]")

    @property
    def dim(self) -> int:
        return len(self.names)

    @property
    def interior_lower(self) -> NDArray[np.float64]:
        return np.array(self.lower) + np.array(self.margins)

    @property
    def interior_upper(self) -> NDArray[np.float64]:
        return np.array(self.upper) - np.array(self.margins)

    def with_margin(self, margin: float) -> "Chart":
        """Replace every nonzero margin by `margin`."""
        margins = tuple(margin if m > 0 else 0.0 for m in self.margins)
        return Chart(self.names, self.lower, self.upper, margins, self.periodic)

    def distance_to_boundary(self, x: Sequence[float]) -> float:
        """Distance from x to the nearest non-periodic edge of the raw domain."""
        distances = [
            min(xi - lo, hi - xi)
            for xi, lo, hi, per in zip(x, self.lower, self.upper, self.periodic)
            if not per
        ]
        return min(distances) if distances else np.inf

    def contains(self, x: Sequence[float]) -> bool:
        """Whether x lies in the margin-shrunk interior (periodic coordinates always do)."""
        lo, hi = self.interior_lower, self.interior_upper
        return all(per or (l <= xi <= h) for xi, l, h, per in zip(x, lo, hi, self.periodic))

    def clip(self, x: NDArray[np.float64]) -> NDArray[np.float64]:
        clipped = np.array(x, dtype=float)
        for k, per in enumerate(self.periodic):
            if not per:
                clipped[k] = np.clip(clipped[k], self.interior_lower[k], self.interior_upper[k])
        return clipped

    def axes(self, n: int) -> list[NDArray[np.float64]]:
        """Grid axes: n points per coordinate, without the duplicated endpoint on periodic ones."""
        axes = []
        for lo, hi, per, l_int, h_int in zip(
            self.lower, self.upper, self.periodic, self.interior_lower, self.interior_upper
        ):
            if per:
                axes.append(np.linspace(lo, hi, n, endpoint=False))
            else:
                axes.append(np.linspace(l_int, h_int, n))
        return axes

    def grid(self, n: int) -> NDArray[np.float64]:
        """All grid points, row order lexicographic by grid index."""
        mesh = np.meshgrid(*self.axes(n), indexing="ij")
        return np.stack(mesh, axis=-1).reshape(-1, self.dim)

    def random_points(self, count: int, rng: np.random.Generator, pad: float = 0.0) -> NDArray[np.float64]:
        lo = self.interior_lower + pad * ~np.array(self.periodic)
        hi = self.interior_upper - pad * ~np.array(self.periodic)
        return rng.uniform(lo, hi, size=(count, self.dim))


@dataclass(frozen=True)
class CoframeField:
    """
    Orthonormal coframe e^i = e^i_μ dx^μ on a chart.

    `coeff(x)` returns the 4×4 matrix with row i the covector e^i, and
    `dcoeff(x)` the array d[i, μ, ν] = ∂_ν e^i_μ.
    """

    name: str
    chart: Chart
    coeff: Callable[[NDArray[np.float64]], NDArray[np.float64]]
    dcoeff: Callable[[NDArray[np.float64]], NDArray[np.float64]]

    def metric(self, x: Sequence[float]) -> NDArray[np.float64]:
        """Metric tensor in the coordinate basis, Σᵢ eⁱ⊗eⁱ."""
        E = self.coeff(np.asarray(x, dtype=float))
        return E.T @ E

    def with_chart(self, chart: Chart) -> "CoframeField":
        return CoframeField(self.name, chart, self.coeff, self.dcoeff)


@dataclass(frozen=True)
class ConnectionAtPoint:
    """
    Connection 1-forms ωᵢⱼ = w[i, j, k] eᵏ at one point.

    Also keeps the coframe data the coefficients were solved from.
    """

    point: NDArray[np.float64]
    w: NDArray[np.float64]
    coframe: NDArray[np.float64]
    inverse: NDArray[np.float64]
    anholonomy: NDArray[np.float64]

    @property
    def coordinate_form(self) -> NDArray[np.float64]:
        """Coordinate components W[i, j, μ] with ωᵢⱼ = W[i, j, μ] dx^μ."""
        return np.einsum("ijk,km->ijm", self.w, self.coframe)


@dataclass(frozen=True)
class PointCurvature:
    """Curvature data at one chart point, all in orthonormal frame components."""

    point: NDArray[np.float64]
    operator: OperatorOnForms
    ricci: NDArray[np.float64]
    scalar: float
    wplus: NDArray[np.float64]
    wminus: NDArray[np.float64]
    rr: NDArray[np.float64]
    fd_error: float = 0.0
    asymmetry: float = 0.0
    bianchi_defect: float = 0.0

    @property
    def riemann(self) -> NDArray[np.float64]:
        """Rm[i, j, k, l] in frame components."""
        return riemann_from_frame_matrix(self.operator.frame_matrix)

    def reconstruction_error(self) -> float:
        """Distance between the operator and the block matrix rebuilt from W±, r̊ and s."""
        s_block = self.scalar / 12.0 * np.eye(3)
        rebuilt = np.block([[self.wplus + s_block, self.rr], [self.rr.T, self.wminus + s_block]])
        return float(np.max(np.abs(rebuilt - self.operator.matrix)))


def coframe_and_inverse(cf: CoframeField, x: NDArray[np.float64]) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    E = cf.coeff(x)
    det = np.linalg.det(E)
    if abs(det) < SINGULAR_THRESHOLD:
        raise SingularCoframeError(f"Coframe of {cf.name} is singular at x={x} (|det e|={abs(det):.3e})")
    return E, np.linalg.inv(E)


def anholonomy(cf: CoframeField, x: NDArray[np.float64], E_inv: NDArray[np.float64]) -> NDArray[np.float64]:
    """D[i, a, b] = deⁱ(e_a, e_b) from the analytic partials."""
    dE = cf.dcoeff(x)
    # (deⁱ)_{μν} = ∂_μ e^i_ν − ∂_ν e^i_μ
    exterior = np.transpose(dE, (0, 2, 1)) - dE
    return np.einsum("imn,ma,nb->iab", exterior, E_inv, E_inv)


def connection_at(cf: CoframeField, x: Sequence[float]) -> ConnectionAtPoint:
    """
    Solve the first structure equation deⁱ = −ωⁱⱼ∧eʲ at x.

    Args:
        cf: Coframe field
        x: Chart point

    Returns:
        The torsion-free metric connection in frame components

    Raises:
        SingularCoframeError: If |det e(x)| < 1e-10
    """
    x = np.asarray(x, dtype=float)
    E, E_inv = coframe_and_inverse(cf, x)
    D = anholonomy(cf, x, E_inv)
    # w[i, a, b] = (D[i, a, b] + D[a, b, i] − D[b, i, a]) / 2
    w = 0.5 * (D + np.transpose(D, (2, 0, 1)) - np.transpose(D, (1, 2, 0)))
    w = 0.5 * (w - np.transpose(w, (1, 0, 2)))
    return ConnectionAtPoint(point=x, w=w, coframe=E, inverse=E_inv, anholonomy=D)


def structure_residual(cf: CoframeField, x: Sequence[float]) -> float:
    """Max |deⁱ + ωⁱⱼ∧eʲ| over frame components at x."""
    conn = connection_at(cf, x)
    torsion = conn.anholonomy - (conn.w - np.transpose(conn.w, (0, 2, 1)))
    return float(np.max(np.abs(torsion)))


def richardson_partials(
    func: Callable[[NDArray[np.float64]], NDArray[np.float64]],
    x: NDArray[np.float64],
    h: float,
) -> tuple[NDArray[np.float64], float]:
    """
    Partial derivatives of an array-valued function by central differences.

    One Richardson step combines the steps h and h/2, cancelling the h² term.

    Args:
        func: Function of the chart point returning an array
        x: Point of evaluation
        h: Largest coordinate offset used

    Returns:
        (partials, err): partials[..., ν] = ∂_ν func(x) and the largest
        difference between the extrapolated and the h/2 estimates
    """
    x = np.asarray(x, dtype=float)
    columns = []
    err = 0.0
    for nu in range(x.size):
        step = np.zeros_like(x)
        step[nu] = 1.0
        coarse = (func(x + h * step) - func(x - h * step)) / (2.0 * h)
        fine = (func(x + 0.5 * h * step) - func(x - 0.5 * h * step)) / h
        extrapolated = (4.0 * fine - coarse) / 3.0
        err = max(err, float(np.max(np.abs(extrapolated - fine))))
        columns.append(extrapolated)
    return np.stack(columns, axis=-1), err


def riemann_from_frame_matrix(frame_matrix: NDArray[np.float64]) -> NDArray[np.float64]:
    """Rm[i, j, k, l] from the operator on the ordered 2-form basis."""
    Rm = np.zeros((4, 4, 4, 4))
    for I, (i, j) in enumerate(BASIS_PAIRS):
        for J, (k, l) in enumerate(BASIS_PAIRS):
            value = frame_matrix[I, J]
            Rm[i, j, k, l] = value
            Rm[j, i, k, l] = -value
            Rm[i, j, l, k] = -value
            Rm[j, i, l, k] = value
    return Rm


def curvature_at(cf: CoframeField, x: Sequence[float], fd_step: float = DEFAULT_FD_STEP) -> PointCurvature:
    """
    Curvature operator and its decomposition at x.

    Args:
        cf: Coframe field
        x: Chart point, at least fd_step away from non-periodic chart edges
        fd_step: Coordinate step for differentiating the connection

    Returns:
        PointCurvature with R, Ricci, s, W⁺, W⁻ and the r̊ block

    Raises:
        StepTooLargeError: If the difference stencil leaves the chart
        SingularCoframeError: If the coframe degenerates on the stencil
    """
    x = np.asarray(x, dtype=float)
    if fd_step <= 0:
        raise StepTooLargeError(f"Finite-difference step must be positive, got {fd_step}")
    if fd_step > cf.chart.distance_to_boundary(x):
        raise StepTooLargeError(
            f"fd_step={fd_step} exceeds the distance {cf.chart.distance_to_boundary(x):.3e} "
            f"to the boundary of {cf.name} at x={x}"
        )

    conn = connection_at(cf, x)
    w, E_inv = conn.w, conn.inverse

    # dW[i, j, μ, ν] = ∂_ν W[i, j, μ]
    dW, err = richardson_partials(lambda y: connection_at(cf, y).coordinate_form, x, fd_step)
    d_omega = np.transpose(dW, (0, 1, 3, 2)) - dW
    d_omega = np.einsum("ijmn,ma,nb->ijab", d_omega, E_inv, E_inv)
    quadratic = np.einsum("ika,kjb->ijab", w, w)
    Omega = d_omega + quadratic - np.transpose(quadratic, (0, 1, 3, 2))

    R6 = np.array([[Omega[i, j, a, b] for a, b in BASIS_PAIRS] for i, j in BASIS_PAIRS])
    asymmetry = float(np.max(np.abs(R6 - R6.T)))
    R6 = 0.5 * (R6 + R6.T)
    # First Bianchi identity: no component along the Hodge star
    bianchi = float(np.trace(R6 @ HODGE) / 6.0)
    R6 = R6 - bianchi * HODGE

    op = OperatorOnForms.from_frame_matrix(R6)
    Rm = riemann_from_frame_matrix(R6)
    ricci = np.einsum("ijik->jk", Rm)
    scalar = float(np.trace(ricci))
    s_block = scalar / 12.0 * np.eye(3)
    fd_error = err * float(np.max(np.abs(E_inv))) ** 2

    if fd_error > 1e-6:
        logger.warning(f"Richardson error estimate {fd_error:.3e} for {cf.name} at x={x}")

    return PointCurvature(
        point=x,
        operator=op,
        ricci=ricci,
        scalar=scalar,
        wplus=op.plus_block - s_block,
        wminus=op.minus_block - s_block,
        rr=op.cross_block,
        fd_error=fd_error,
        asymmetry=asymmetry,
        bianchi_defect=abs(bianchi),
    )


def einstein_residual(pc: PointCurvature) -> float:
    """max(‖r̊‖_F, max |Ric − (s/4) Id|)."""
    traceless = pc.ricci - pc.scalar / 4.0 * np.eye(4)
    return float(max(np.linalg.norm(pc.rr), np.max(np.abs(traceless))))
