"""
Coordinate surfaces of a 4-manifold, their normal connection and normal holonomy.

A surface is cut out of the chart by freezing two coordinates; two frame
indices span its normal bundle. The normal connection is the restriction of
the ambient ω_ab (a, b normal) to the free coordinate directions, so the
normal bundle is an SO(2) bundle whose curvature is the exterior derivative of
a single 1-form and whose transport is a rotation.

Classes:
    CoordinateSurface: Two free coordinates, a base point and a normal frame pair
    TransportIntegrator: Fixed-step RK4 transport of normal vectors along polygons
    HolonomyResult: Rotation angle of the normal holonomy around a loop
"""

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from numpy.typing import NDArray

from page_curvature.engine import (
    DEFAULT_FD_STEP,
    Chart,
    CoframeField,
    connection_at,
    richardson_partials,
)
from page_curvature.errors import ChartDegeneracyError, StepCountError, StepTooLargeError
from page_curvature.logging import logger

NORMAL_TOLERANCE = 1e-12
HOLONOMY_TOLERANCE = 1e-6
DEFAULT_STEPS = 64


@dataclass(frozen=True)
class CoordinateSurface:
    """
    The surface {x : x_k = base_k for k not in `free`} with normal frame (e_n0, e_n1).

    Surface coordinates u = (x_free0, x_free1) range over `chart`.
    """

    name: str
    coframe: CoframeField
    base: tuple[float, ...]
    free: tuple[int, int]
    normal: tuple[int, int]
    chart: Chart

    @property
    def tangent(self) -> tuple[int, ...]:
        return tuple(i for i in range(4) if i not in self.normal)

    def point(self, u: Sequence[float]) -> NDArray[np.float64]:
        x = np.array(self.base, dtype=float)
        x[list(self.free)] = u
        return x

    def normal_leakage(self, u: Sequence[float]) -> float:
        """Largest e^a(∂_k) over normal a and free k; zero when the normal pair is normal."""
        E = self.coframe.coeff(self.point(u))
        return float(np.max(np.abs(E[np.ix_(self.normal, self.free)])))

    def check_point(self, u: Sequence[float]) -> NDArray[np.float64]:
        x = self.point(u)
        if not self.coframe.chart.contains(x):
            raise ChartDegeneracyError(f"Point x={x} of {self.name} lies outside the chart interior")
        leakage = self.normal_leakage(u)
        if leakage > NORMAL_TOLERANCE:
            raise ChartDegeneracyError(
                f"Frame vectors {self.normal} are not normal to {self.name} at x={x} (leakage {leakage:.3e})"
            )
        return x


def coordinate_surface(
    cf: CoframeField,
    base: Sequence[float],
    free: tuple[int, int],
    normal: tuple[int, int],
    name: str = "",
) -> CoordinateSurface:
    """
    Freeze the coordinates outside `free` at their values in `base`.

    Raises:
        ChartDegeneracyError: If the frozen coordinates are not interior or the
            normal pair is not normal to the surface at the base point
    """
    chart = cf.chart
    sub_chart = Chart(
        names=tuple(chart.names[k] for k in free),
        lower=tuple(chart.lower[k] for k in free),
        upper=tuple(chart.upper[k] for k in free),
        margins=tuple(chart.margins[k] for k in free),
        periodic=tuple(chart.periodic[k] for k in free),
    )
    surface = CoordinateSurface(
        name=name or f"surface{free} of {cf.name}",
        coframe=cf,
        base=tuple(float(v) for v in base),
        free=free,
        normal=normal,
        chart=sub_chart,
    )
    u0 = 0.5 * (sub_chart.interior_lower + sub_chart.interior_upper)
    surface.check_point(u0)
    return surface


def fiber_surface(cf: CoframeField, theta0: float, phi0: float) -> CoordinateSurface:
    """The sphere θ = θ₀, φ = φ₀ swept by (r, ψ); e⁰, e¹ are tangent and e², e³ normal."""
    base = (0.0, theta0, phi0, 0.0)
    return coordinate_surface(cf, base, free=(0, 3), normal=(2, 3), name=f"fiber(θ={theta0:.6g}, φ={phi0:.6g})")


def orbit_torus(cf: CoframeField, r0: float, theta0: float) -> CoordinateSurface:
    """The torus r = r₀, θ = θ₀ swept by (φ, ψ); e¹, e² are tangent and e⁰, e³ normal."""
    base = (r0, theta0, 0.0, 0.0)
    return coordinate_surface(cf, base, free=(2, 3), normal=(0, 3), name=f"torus(r={r0:.6g}, θ={theta0:.6g})")


def normal_connection(surface: CoordinateSurface, u: Sequence[float]) -> NDArray[np.float64]:
    """
    Coefficients (A_0, A_1) of ω_{n0 n1} restricted to the surface, ω̃ = A_0 du⁰ + A_1 du¹.

    Raises:
        ChartDegeneracyError: If the point is outside the chart or the normal pair leaks
    """
    x = surface.check_point(u)
    W = connection_at(surface.coframe, x).coordinate_form
    a, b = surface.normal
    return W[a, b, list(surface.free)]


def tangential_normal_legs(surface: CoordinateSurface, u: Sequence[float]) -> float:
    """max |ω_{t0 t1}(e_n)| over normal n: the tangent rotation form evaluated on normal vectors."""
    x = surface.check_point(u)
    w = connection_at(surface.coframe, x).w
    t0, t1 = surface.tangent
    return float(np.max(np.abs(w[t0, t1, list(surface.normal)])))


def normal_curvature(surface: CoordinateSurface, u: Sequence[float], fd_step: float = DEFAULT_FD_STEP) -> float:
    """
    du⁰∧du¹ coefficient ∂_0 A_1 − ∂_1 A_0 of the normal curvature.

    Raises:
        StepTooLargeError: If the difference stencil leaves the surface chart
        ChartDegeneracyError: As in normal_connection
    """
    u = np.asarray(u, dtype=float)
    if fd_step <= 0 or fd_step > surface.chart.distance_to_boundary(u):
        raise StepTooLargeError(f"fd_step={fd_step} does not fit inside {surface.name} at u={u}")
    partials, _ = richardson_partials(lambda v: normal_connection(surface, v), u, fd_step)
    return float(partials[1, 0] - partials[0, 1])


def fiber_curvature_closed_form(cf: CoframeField, x: Sequence[float]) -> float:
    """
    −d/dt (B²/(2D²)) for a U(2)-invariant coframe, read off the analytic partials.

    On a fiber sphere ω₂₃ restricts to −(B²/(2D²)) dψ, so this is its normal curvature.
    """
    x = np.asarray(x, dtype=float)
    E, dE = cf.coeff(x), cf.dcoeff(x)
    B, dB = E[1, 3], dE[1, 3, 0]
    D, dD = E[3, 1], dE[3, 1, 0]
    return float(-(B * dB / D**2 - B**2 * dD / D**3))


def rectangle_loop(lower: Sequence[float], upper: Sequence[float]) -> NDArray[np.float64]:
    """Counter-clockwise rectangle in surface coordinates."""
    (a0, b0), (a1, b1) = lower, upper
    return np.array([[a0, b0], [a1, b0], [a1, b1], [a0, b1]], dtype=float)


def wrap_angle(angle: float) -> float:
    """Representative of the angle in (−π, π]."""
    wrapped = float(np.mod(angle + np.pi, 2 * np.pi) - np.pi)
    return np.pi if wrapped == -np.pi else wrapped


@dataclass
class HolonomyResult:
    angle: float
    winding: float
    steps: int
    error: float

    def to_dict(self) -> dict[str, float]:
        return {"angle": self.angle, "winding": self.winding, "steps": self.steps, "error": self.error}


class TransportIntegrator:
    """
    Classical RK4 for v' = A(γ)·γ'·(−v₂, v₁) on each straight segment of a polygon.

    The state also carries the accumulated rotation ∫ω̃, which is the unwrapped
    holonomy angle.
    """

    __slots__ = ("surface", "steps")

    def __init__(self, surface: CoordinateSurface, steps: int = DEFAULT_STEPS):
        if steps < 1:
            raise StepCountError(f"{self.__class__.__name__}: step count must be positive, got {steps}")
        self.surface = surface
        self.steps = steps

    def _rate(self, u: NDArray[np.float64], velocity: NDArray[np.float64]) -> float:
        return float(normal_connection(self.surface, u) @ velocity)

    def segment(self, start: NDArray[np.float64], end: NDArray[np.float64], state: NDArray[np.float64]):
        velocity = end - start
        if not np.any(velocity):
            return state
        dt = 1.0 / self.steps

        def f(t, y):
            rate = self._rate(start + t * velocity, velocity)
            return np.array([-rate * y[1], rate * y[0], rate])

        y = state.copy()
        for k in range(self.steps):
            t = k * dt
            k1 = f(t, y)
            k2 = f(t + dt / 2, y + dt / 2 * k1)
            k3 = f(t + dt / 2, y + dt / 2 * k2)
            k4 = f(t + dt, y + dt * k3)
            y = y + dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        return y

    def transport(self, vertices: NDArray[np.float64], closed: bool = True) -> NDArray[np.float64]:
        """Final state (v₁, v₂, ∫ω̃) after transporting (1, 0) along the polygon."""
        vertices = np.asarray(vertices, dtype=float)
        path = np.vstack([vertices, vertices[:1]]) if closed else vertices
        state = np.array([1.0, 0.0, 0.0])
        for start, end in zip(path[:-1], path[1:]):
            state = self.segment(start, end, state)
        return state


def holonomy_loop(
    surface: CoordinateSurface,
    loop: NDArray[np.float64],
    steps: int = DEFAULT_STEPS,
    tolerance: float = HOLONOMY_TOLERANCE,
) -> HolonomyResult:
    """
    Rotation of the normal bundle after parallel transport around a closed polygon.

    Args:
        surface: Surface carrying the loop
        loop: (n, 2) polygon vertices in surface coordinates; the last joins the first
        steps: RK4 steps per polygon edge
        tolerance: Accepted disagreement between the steps and 2·steps runs

    Returns:
        HolonomyResult with the angle in (−π, π]

    Raises:
        StepCountError: If the ODE error estimate exceeds the tolerance
    """
    loop = np.asarray(loop, dtype=float)
    coarse = TransportIntegrator(surface, steps).transport(loop)
    fine = TransportIntegrator(surface, 2 * steps).transport(loop)
    angle = wrap_angle(np.arctan2(fine[1], fine[0]))
    error = abs(wrap_angle(np.arctan2(fine[1], fine[0]) - np.arctan2(coarse[1], coarse[0])))
    error = max(error, abs(fine[2] - coarse[2]))
    logger.debug(f"Holonomy on {surface.name}: angle {angle:.3e}, {steps} steps/edge, error {error:.2e}")
    if error > tolerance:
        raise StepCountError(
            f"Holonomy error estimate {error:.3e} exceeds {tolerance:g} with {steps} steps per edge on {surface.name}"
        )
    return HolonomyResult(angle=angle, winding=float(fine[2]), steps=steps, error=float(error))


def enclosed_curvature(
    surface: CoordinateSurface,
    lower: Sequence[float],
    upper: Sequence[float],
    nodes: int = 12,
    fd_step: float = DEFAULT_FD_STEP,
) -> float:
    """Gauss–Legendre integral of the normal curvature over a coordinate rectangle."""
    x, w = np.polynomial.legendre.leggauss(nodes)
    (a0, b0), (a1, b1) = lower, upper
    u0 = 0.5 * (a1 - a0) * x + 0.5 * (a1 + a0)
    u1 = 0.5 * (b1 - b0) * x + 0.5 * (b1 + b0)
    total = 0.0
    for i, p in enumerate(u0):
        for j, q in enumerate(u1):
            total += w[i] * w[j] * normal_curvature(surface, (p, q), fd_step)
    return float(total * 0.25 * (a1 - a0) * (b1 - b0))


def parallel_section_defect(
    surface: CoordinateSurface,
    lower: Sequence[float],
    upper: Sequence[float],
    n: int = 32,
    steps: int = 8,
) -> float:
    """
    Path dependence of a normal frame transported over an n×n grid.

    The frame at each node is obtained from the base node once along the
    spanning tree "first row, then columns" and once along "first column, then
    rows"; the result is the largest distance between the two transported unit
    vectors.
    """
    if n < 2:
        raise StepCountError(f"Transport grid needs at least 2 nodes per side, got {n}")
    integrator = TransportIntegrator(surface, steps)
    u0 = np.linspace(lower[0], upper[0], n)
    u1 = np.linspace(lower[1], upper[1], n)

    def edge(start, end):
        return integrator.transport(np.array([start, end]), closed=False)[2]

    # along_0[i, j]: rotation from node (i, j) to (i+1, j); along_1[i, j]: (i, j) to (i, j+1)
    along_0 = np.array([[edge((u0[i], u1[j]), (u0[i + 1], u1[j])) for j in range(n)] for i in range(n - 1)])
    along_1 = np.array([[edge((u0[i], u1[j]), (u0[i], u1[j + 1])) for j in range(n - 1)] for i in range(n)])

    first_row = np.concatenate([[0.0], np.cumsum(along_0[:, 0])])
    first_col = np.concatenate([[0.0], np.cumsum(along_1[0, :])])
    row_first = first_row[:, None] + np.hstack([np.zeros((n, 1)), np.cumsum(along_1, axis=1)])
    col_first = first_col[None, :] + np.vstack([np.zeros((1, n)), np.cumsum(along_0, axis=0)])
    defect = float(np.max(np.abs(2 * np.sin((row_first - col_first) / 2))))
    logger.debug(f"Parallel-section defect on {surface.name} over a {n}x{n} grid: {defect:.3e}")
    return defect
