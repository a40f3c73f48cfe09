"""
Grid-plus-refinement scans of curvature functionals and the conformal Kähler estimates.

Bisectional curvature is searched over (chart point × φ) where φ runs over a
spherical-Fibonacci sample of the radius-1/√2 sphere in Λ²₋; for fixed point
and φ the minimizing ψ is found in closed form, since the pairing is linear in ψ.
The best grid candidate is then refined by coordinate descent with shrinking
steps.

Classes:
    ScanConfig: Resolutions, steps and seed of a scan
    ScanReport: Extrema, locations, error estimates and per-point fields
    ConformalKahlerData: The Kähler metric g̃ = s̃²·g conformal to a Hermitian metric g
    EstimateReport: Signs and locations of the two Weyl-curvature estimates
"""

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from functools import lru_cache
from typing import Any, Callable, Iterable, Optional

import numpy as np
from numpy.typing import NDArray

from page_curvature.catalog import CatalogEntry, conformal_coframe
from page_curvature.engine import (
    CoframeField,
    PointCurvature,
    curvature_at,
    einstein_residual,
    richardson_partials,
    structure_residual,
)
from page_curvature.errors import (
    ConfigError,
    NonPositiveEigenvalueError,
    SingularCoframeError,
    StepTooLargeError,
)
from page_curvature.forms import BLOCK_BASIS
from page_curvature.hermitian import HALF_NORM, ComplexStructureData, structure_at
from page_curvature.logging import logger

ASD_ROWS = BLOCK_BASIS[3:]
CONFORMAL_STEP = 1e-2
CONFORMAL_FD_STEP = 1e-3
POINT_CACHE_SIZE = 4096


@dataclass
class ScanConfig:
    """Resolution and reproducibility settings shared by all scans."""

    grid: int = 6
    sphere_points: int = 64
    refine_iterations: int = 12
    fd_step: float = 1e-4
    margin: float = 0.05
    seed: int = 0
    workers: int = 1
    random_samples: int = 200
    conformal_points: int = 4
    transport_grid: int = 32
    holonomy_steps: int = 64
    check_grid_stability: bool = False

    def validate(self) -> bool:
        if self.grid < 2 or self.sphere_points < 2:
            raise ConfigError(f"Resolutions must be at least 2 (grid={self.grid}, sphere_points={self.sphere_points})")
        if self.refine_iterations < 0:
            raise ConfigError(f"refine_iterations must be non-negative, got {self.refine_iterations}")
        if self.fd_step <= 0:
            raise ConfigError(f"fd_step must be positive, got {self.fd_step}")
        if self.margin < self.fd_step:
            raise ConfigError(f"margin ({self.margin}) must be at least fd_step ({self.fd_step})")
        if self.workers < 1:
            raise ConfigError(f"workers must be at least 1, got {self.workers}")
        if self.random_samples < 1 or self.conformal_points < 1:
            raise ConfigError("random_samples and conformal_points must be positive")
        if self.transport_grid < 2 or self.holonomy_steps < 1:
            raise ConfigError(
                f"transport_grid must be at least 2 and holonomy_steps positive "
                f"(got {self.transport_grid}, {self.holonomy_steps})"
            )
        return True

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "ScanConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"Unknown scan keys: {sorted(unknown)}")
        return cls(**data)

    def doubled(self) -> "ScanConfig":
        return ScanConfig(**{**self.to_dict(), "grid": 2 * self.grid, "sphere_points": 2 * self.sphere_points,
                             "check_grid_stability": False})


@dataclass
class ScanReport:
    """Outcome of one scan; `fields` hold per-grid-point values aligned with `points`."""

    functional: str
    metric: str
    minimum: float
    maximum: float
    argmin: dict[str, Any]
    argmax: dict[str, Any]
    error_estimate: float
    refinement_delta: float = 0.0
    statistics: dict[str, float] = field(default_factory=dict)
    extra: dict[str, Any] = field(default_factory=dict)
    config: dict[str, Any] = field(default_factory=dict)
    wall_clock: float = 0.0
    coordinate_names: tuple[str, ...] = ()
    points: Optional[NDArray[np.float64]] = field(default=None, repr=False)
    fields: dict[str, NDArray[np.float64]] = field(default_factory=dict, repr=False)

    def to_dict(self) -> dict[str, Any]:
        """JSON-ready summary; per-point fields go to CSV instead."""
        return {
            "functional": self.functional,
            "metric": self.metric,
            "minimum": self.minimum,
            "maximum": self.maximum,
            "argmin": self.argmin,
            "argmax": self.argmax,
            "error_estimate": self.error_estimate,
            "refinement_delta": self.refinement_delta,
            "statistics": self.statistics,
            "extra": self.extra,
            "config": self.config,
            "timing": {"wall_clock": self.wall_clock},
        }


def fibonacci_sphere(count: int) -> NDArray[np.float64]:
    """Spherical-Fibonacci unit vectors in ℝ³."""
    k = np.arange(count) + 0.5
    z = 1.0 - 2.0 * k / count
    radius = np.sqrt(1.0 - z**2)
    angle = np.pi * (3.0 - np.sqrt(5.0)) * k
    return np.stack([radius * np.cos(angle), radius * np.sin(angle), z], axis=1)


def scan_coframe(entry: CatalogEntry, cfg: ScanConfig) -> CoframeField:
    cf = entry.coframe
    return cf.with_chart(cf.chart.with_margin(cfg.margin))


def parallel_map(func: Callable[[Any], Any], items: Iterable[Any], workers: int) -> list[Any]:
    """Ordered map; results keep the input order, so reductions stay deterministic."""
    if workers <= 1:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items))


def guarded(func: Callable[[NDArray[np.float64]], Any]) -> Callable[[NDArray[np.float64]], Any]:
    """Chart failures at a single point are skipped; everything else propagates."""

    def wrapper(x):
        try:
            return func(x)
        except (SingularCoframeError, StepTooLargeError) as e:
            logger.warning(f"Skipping grid point x={x}: {e}")
            return None

    return wrapper


def location_of(point: NDArray[np.float64], names: tuple[str, ...]) -> dict[str, float]:
    return {name: float(value) for name, value in zip(names, point)}


def _summary(values: NDArray[np.float64]) -> dict[str, float]:
    finite = values[np.isfinite(values)]
    return {
        "count": int(finite.size),
        "mean": float(np.mean(finite)),
        "std": float(np.std(finite)),
        "skipped_points": int(values.size - finite.size),
    }


# -- bisectional scans -------------------------------------------------------------


def min_over_psi(
    pc: PointCurvature, cs: ComplexStructureData, phi_coords: NDArray[np.float64]
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """
    Minimize ⟨R(ω/2 + φ), ω/2 + ψ⟩ over |ψ| = 1/√2 for a batch of φ.

    Args:
        pc: Curvature at the point
        cs: Complex structure at the point
        phi_coords: (n, 3) Λ²₋ coordinates of φ, each of norm 1/√2

    Returns:
        (values, psi_coords): the minima and the minimizing ψ coordinates
    """
    M = pc.operator.frame_matrix
    half_omega = cs.omega / 2
    lines = half_omega + phi_coords @ ASD_ROWS
    base = lines @ M @ half_omega
    linear = (lines @ M) @ ASD_ROWS.T
    norms = np.linalg.norm(linear, axis=1)
    psi = np.where(
        norms[:, None] > 1e-300,
        -HALF_NORM * linear / np.maximum(norms, 1e-300)[:, None],
        -phi_coords,
    )
    return base - HALF_NORM * norms, psi


def orthogonal_values(
    pc: PointCurvature, cs: ComplexStructureData, phi_coords: NDArray[np.float64]
) -> NDArray[np.float64]:
    """H(φ, −φ) for a batch of φ, the orthogonal bisectional curvature."""
    M = pc.operator.frame_matrix
    half_omega = cs.omega / 2
    phis = phi_coords @ ASD_ROWS
    return np.einsum("ni,ij,nj->n", half_omega + phis, M, half_omega - phis)


def holomorphic_values(
    pc: PointCurvature, cs: ComplexStructureData, phi_coords: NDArray[np.float64]
) -> NDArray[np.float64]:
    M = pc.operator.frame_matrix
    lines = cs.omega / 2 + phi_coords @ ASD_ROWS
    return np.einsum("ni,ij,nj->n", lines, M, lines)


def _tangent_basis(v: NDArray[np.float64]) -> NDArray[np.float64]:
    """Two unit vectors spanning the tangent plane of the sphere at v."""
    _, _, vt = np.linalg.svd(v.reshape(1, 3))
    return vt[1:]


class _BisectionalObjective:
    """Objective over (chart point, φ) with curvature cached per point in a bounded LRU."""

    def __init__(self, entry: CatalogEntry, cf: CoframeField, orthogonal: bool, fd_step: float,
                 cache_size: int = POINT_CACHE_SIZE):
        self.entry = entry
        self.cf = cf
        self.orthogonal = orthogonal
        self.fd_step = fd_step
        # lru_cache keeps its bookkeeping consistent under concurrent callers
        self._point_data = lru_cache(maxsize=cache_size)(self._compute)

    def _compute(self, key: tuple[float, ...]) -> tuple[PointCurvature, ComplexStructureData]:
        pc = curvature_at(self.cf, np.array(key[:-1]), key[-1])
        return pc, structure_at(pc, self.entry.canonical_omega)

    def point_data(self, x: NDArray[np.float64], fd_step: Optional[float] = None):
        step = fd_step or self.fd_step
        return self._point_data(tuple(np.round(x, 15)) + (step,))

    def cache_info(self):
        return self._point_data.cache_info()

    def batch(self, pc, cs, phi_coords):
        if self.orthogonal:
            values = orthogonal_values(pc, cs, phi_coords)
            return values, -phi_coords
        return min_over_psi(pc, cs, phi_coords)

    def __call__(self, x, phi_coords, fd_step: Optional[float] = None):
        pc, cs = self.point_data(x, fd_step)
        values, psi = self.batch(pc, cs, phi_coords.reshape(1, 3))
        return float(values[0]), psi[0]


def _refine(
    objective: _BisectionalObjective,
    x0: NDArray[np.float64],
    phi0: NDArray[np.float64],
    value0: float,
    steps: NDArray[np.float64],
    angle_step: float,
    iterations: int,
) -> tuple[NDArray[np.float64], NDArray[np.float64], float, list[float]]:
    """Coordinate descent over the chart point and φ; only strict improvements are taken."""
    chart = objective.cf.chart
    x, phi, best = x0.copy(), phi0.copy(), value0
    history = [best]
    steps = steps.copy()
    for iteration in range(iterations):
        for k in range(x.size):
            for sign in (1.0, -1.0):
                trial = x.copy()
                trial[k] += sign * steps[k]
                trial = chart.clip(trial)
                try:
                    value, _ = objective(trial, phi)
                except (SingularCoframeError, StepTooLargeError):
                    continue
                if value < best:
                    x, best = trial, value
        for direction in _tangent_basis(phi):
            for sign in (1.0, -1.0):
                trial_phi = phi + sign * angle_step * HALF_NORM * direction
                trial_phi *= HALF_NORM / np.linalg.norm(trial_phi)
                value, _ = objective(x, trial_phi)
                if value < best:
                    phi, best = trial_phi, value
        history.append(best)
        logger.debug(f"Refinement iteration {iteration}: objective {best:.12g}")
        steps = steps / 2
        angle_step /= 2
    return x, phi, best, history


def _bisectional_scan(entry: CatalogEntry, cfg: ScanConfig, orthogonal: bool) -> ScanReport:
    cfg.validate()
    start = time.perf_counter()
    functional = "orthogonal_bisectional" if orthogonal else "bisectional"
    cf = scan_coframe(entry, cfg)
    chart = cf.chart
    objective = _BisectionalObjective(entry, cf, orthogonal, cfg.fd_step)
    phi_samples = HALF_NORM * fibonacci_sphere(cfg.sphere_points)
    points = chart.grid(cfg.grid)
    logger.info(f"Scanning {functional} of {entry.name}: {len(points)} points x {cfg.sphere_points} directions")

    def evaluate(x):
        pc, cs = objective.point_data(x)
        values, psi = objective.batch(pc, cs, phi_samples)
        best = int(np.argmin(values))
        worst = int(np.argmax(values))
        holo = holomorphic_values(pc, cs, phi_samples)
        return values[best], best, psi[best], values[worst], worst, float(np.min(holo))

    results = parallel_map(guarded(evaluate), points, cfg.workers)
    minima = np.array([r[0] if r else np.nan for r in results])
    maxima = np.array([r[3] if r else np.nan for r in results])
    holomorphic = np.array([r[5] if r else np.nan for r in results])
    if np.all(np.isnan(minima)):
        raise StepTooLargeError(f"No grid point of {entry.name} could be evaluated")

    # nanargmin returns the lowest linear index among ties
    i_min = int(np.nanargmin(minima))
    i_max = int(np.nanargmax(maxima))
    grid_min = float(minima[i_min])
    phi0 = phi_samples[results[i_min][1]]

    lo, hi = chart.interior_lower, chart.interior_upper
    spacing = np.where(np.array(chart.periodic), (np.array(chart.upper) - np.array(chart.lower)) / cfg.grid,
                       (hi - lo) / (cfg.grid - 1))
    angle_step = np.sqrt(4 * np.pi / cfg.sphere_points) / 2
    x_best, phi_best, refined, history = _refine(
        objective, points[i_min], phi0, grid_min, spacing / 2, angle_step, cfg.refine_iterations
    )
    _, psi_best = objective(x_best, phi_best)

    coarse, _ = objective(x_best, phi_best, fd_step=2 * cfg.fd_step)
    pc, _ = objective.point_data(x_best)
    error = abs(refined - coarse) + pc.fd_error

    report = ScanReport(
        functional=functional,
        metric=entry.name,
        minimum=refined,
        maximum=float(maxima[i_max]),
        argmin={
            "point": location_of(x_best, chart.names),
            "phi": [float(c) for c in phi_best],
            "psi": [float(c) for c in psi_best],
            "grid_index": i_min,
        },
        argmax={"point": location_of(points[i_max], chart.names), "grid_index": i_max},
        error_estimate=float(error),
        refinement_delta=float(grid_min - refined),
        statistics=_summary(minima),
        extra={
            "grid_minimum": grid_min,
            "refinement_history": [float(v) for v in history],
            "holomorphic_sectional_min": float(np.nanmin(holomorphic)),
            "holomorphic_sectional_max": float(np.nanmax(holomorphic)),
        },
        config=cfg.to_dict(),
        coordinate_names=chart.names,
        points=points,
        fields={functional: minima, "holomorphic_sectional": holomorphic},
    )

    if cfg.check_grid_stability:
        finer = _bisectional_scan(entry, cfg.doubled(), orthogonal)
        change = abs(finer.minimum - refined) / max(abs(refined), 1e-300)
        report.extra["doubled_resolution_minimum"] = finer.minimum
        report.extra["doubled_resolution_relative_change"] = float(change)

    report.wall_clock = time.perf_counter() - start
    logger.info(
        f"{functional} of {entry.name}: min {refined:.10g} (error {error:.2e}) at {report.argmin['point']}"
    )
    return report


def scan_bisectional(entry: CatalogEntry, cfg: ScanConfig) -> ScanReport:
    """
    Minimize the bisectional curvature over chart points and pairs of complex lines.

    Raises:
        DegenerateWeylError: If W⁺ is degenerate and no canonical Kähler form is known
    """
    return _bisectional_scan(entry, cfg, orthogonal=False)


def scan_orthogonal_bisectional(entry: CatalogEntry, cfg: ScanConfig) -> ScanReport:
    """Same search restricted to ψ = −φ, i.e. X perpendicular to Y and JY."""
    return _bisectional_scan(entry, cfg, orthogonal=True)


# -- Einstein sweep -----------------------------------------------------------------


def scan_einstein(entry: CatalogEntry, cfg: ScanConfig) -> ScanReport:
    """Maximal Einstein residual over the grid, with scalar-curvature statistics."""
    cfg.validate()
    start = time.perf_counter()
    cf = scan_coframe(entry, cfg)
    points = cf.chart.grid(cfg.grid)
    logger.info(f"Einstein sweep of {entry.name} over {len(points)} points")

    def evaluate(x):
        pc = curvature_at(cf, x, cfg.fd_step)
        return (
            einstein_residual(pc),
            pc.scalar,
            pc.fd_error,
            pc.reconstruction_error(),
            pc.bianchi_defect,
            structure_residual(cf, x),
        )

    results = parallel_map(guarded(evaluate), points, cfg.workers)
    table = np.array([r if r else (np.nan,) * 6 for r in results])
    residual, scalar = table[:, 0], table[:, 1]
    if np.all(np.isnan(residual)):
        raise StepTooLargeError(f"No grid point of {entry.name} could be evaluated")
    i_max = int(np.nanargmax(residual))
    i_min = int(np.nanargmin(residual))
    s_stats = _summary(scalar)
    spread = s_stats["std"] / abs(s_stats["mean"]) if abs(s_stats["mean"]) > 1e-12 else 0.0

    report = ScanReport(
        functional="einstein_residual",
        metric=entry.name,
        minimum=float(residual[i_min]),
        maximum=float(residual[i_max]),
        argmin={"point": location_of(points[i_min], cf.chart.names), "grid_index": i_min},
        argmax={"point": location_of(points[i_max], cf.chart.names), "grid_index": i_max},
        error_estimate=float(np.nanmax(table[:, 2])),
        statistics=_summary(residual),
        extra={
            "scalar_mean": s_stats["mean"],
            "scalar_std": s_stats["std"],
            "scalar_spread": float(spread),
            "einstein_constant": s_stats["mean"] / 4.0,
            "max_reconstruction_error": float(np.nanmax(table[:, 3])),
            "max_bianchi_defect": float(np.nanmax(table[:, 4])),
            "max_structure_residual": float(np.nanmax(table[:, 5])),
        },
        config=cfg.to_dict(),
        coordinate_names=cf.chart.names,
        points=points,
        fields={"einstein_residual": residual, "scalar_curvature": scalar},
    )
    report.wall_clock = time.perf_counter() - start
    logger.info(f"Einstein sweep of {entry.name}: max residual {report.maximum:.3e}, s spread {spread:.3e}")
    return report


# -- conformal Kähler data and the estimates ------------------------------------------


def top_wplus_eigenvalue(pc: PointCurvature) -> float:
    return float(np.linalg.eigvalsh(pc.wplus)[-1])


@dataclass
class ConformalKahlerData:
    """
    The metric g̃ = u·g with u = (6λ₊(W⁺_g))^{2/3}, so that s̃ = (6λ₊)^{1/3}.

    `kahler` is the coframe descriptor of g̃, with the partials of u taken by
    central differences of λ₊.
    """

    base: CoframeField
    kahler: CoframeField
    fd_step: float
    conformal_step: float = CONFORMAL_STEP

    def top_eigenvalue(self, x: NDArray[np.float64]) -> float:
        return _top_eigenvalue(self.base, tuple(float(v) for v in x), self.fd_step)

    def factor(self, x: NDArray[np.float64]) -> float:
        return (6.0 * self.top_eigenvalue(x)) ** (2.0 / 3.0)

    def s_tilde(self, x: NDArray[np.float64]) -> float:
        return (6.0 * self.top_eigenvalue(x)) ** (1.0 / 3.0)

    def consistency_residual(self, x: NDArray[np.float64], fd_step: float = CONFORMAL_FD_STEP) -> float:
        """Relative gap between 6λ₊(W̃⁺) computed from the g̃ descriptor and s̃."""
        pc = curvature_at(self.kahler, x, fd_step)
        s = self.s_tilde(x)
        return abs(6.0 * top_wplus_eigenvalue(pc) - s) / s

    def kahler_scalar_residual(self, x: NDArray[np.float64], fd_step: float = CONFORMAL_FD_STEP) -> float:
        """Relative gap between the scalar curvature of g̃ and s̃."""
        pc = curvature_at(self.kahler, x, fd_step)
        s = self.s_tilde(x)
        return abs(pc.scalar - s) / s


@lru_cache(maxsize=65536)
def _top_eigenvalue(cf: CoframeField, x: tuple[float, ...], fd_step: float) -> float:
    pc = curvature_at(cf, np.array(x), fd_step)
    value = top_wplus_eigenvalue(pc)
    if value <= 0:
        raise NonPositiveEigenvalueError(f"Top eigenvalue of W⁺ is {value:.3e} ≤ 0 at x={x} on {cf.name}")
    return value


def conformal_kahler(entry: CatalogEntry, cfg: ScanConfig) -> ConformalKahlerData:
    """
    Rescale g to the Kähler metric g̃ = s̃²·g.

    Raises:
        NonPositiveEigenvalueError: When evaluated where λ₊(W⁺_g) ≤ 0
    """
    base = scan_coframe(entry, cfg)
    data = ConformalKahlerData(base=base, kahler=base, fd_step=cfg.fd_step)

    def du(x):
        partials, _ = richardson_partials(lambda y: np.array(data.factor(y)), x, data.conformal_step)
        return partials

    data.kahler = conformal_coframe(base, data.factor, du, name=f"kahler({entry.name})")
    return data


@dataclass
class EstimateReport:
    """Maxima of λ(W̃₋) − s̃/6 and ⟨W̃₋φ,φ⟩ − s̃/12 over the grid."""

    metric: str
    first_max: float
    first_argmax: dict[str, float]
    second_max: float
    second_argmax: dict[str, float]
    s_tilde_min: float
    s_tilde_max: float
    conformal_residual: float
    kahler_scalar_residual: float
    config: dict[str, Any] = field(default_factory=dict)
    wall_clock: float = 0.0
    coordinate_names: tuple[str, ...] = ()
    points: Optional[NDArray[np.float64]] = field(default=None, repr=False)
    fields: dict[str, NDArray[np.float64]] = field(default_factory=dict, repr=False)

    @property
    def first_holds(self) -> bool:
        return self.first_max < 0

    @property
    def second_holds(self) -> bool:
        return self.second_max < 0

    def to_dict(self) -> dict[str, Any]:
        return {
            "functional": "weyl_estimates",
            "metric": self.metric,
            "first_estimate": {"max": self.first_max, "argmax": self.first_argmax, "holds": self.first_holds},
            "second_estimate": {"max": self.second_max, "argmax": self.second_argmax, "holds": self.second_holds},
            "s_tilde": {"min": self.s_tilde_min, "max": self.s_tilde_max},
            "conformal_residual": self.conformal_residual,
            "kahler_scalar_residual": self.kahler_scalar_residual,
            "config": self.config,
            "timing": {"wall_clock": self.wall_clock},
        }


def check_estimates(entry: CatalogEntry, cfg: ScanConfig) -> EstimateReport:
    """
    Evaluate both estimates on the conformal Kähler data over the grid.

    The maximum of ⟨W̃₋φ,φ⟩ over |φ| = 1/√2 is λ_max(W̃₋)/2.
    """
    cfg.validate()
    start = time.perf_counter()
    data = conformal_kahler(entry, cfg)
    cf = data.base
    points = cf.chart.grid(cfg.grid)
    logger.info(f"Checking Weyl estimates of {entry.name} over {len(points)} points")

    def evaluate(x):
        pc = curvature_at(cf, x, cfg.fd_step)
        lam = top_wplus_eigenvalue(pc)
        if lam <= 0:
            raise NonPositiveEigenvalueError(f"Top eigenvalue of W⁺ is {lam:.3e} ≤ 0 at x={x}")
        u = (6.0 * lam) ** (2.0 / 3.0)
        s_tilde = (6.0 * lam) ** (1.0 / 3.0)
        top_minus = float(np.linalg.eigvalsh(pc.wminus)[-1]) / u
        return top_minus - s_tilde / 6.0, top_minus / 2.0 - s_tilde / 12.0, s_tilde

    results = parallel_map(guarded(evaluate), points, cfg.workers)
    table = np.array([r if r else (np.nan,) * 3 for r in results])
    first, second, s_tilde = table[:, 0], table[:, 1], table[:, 2]
    if np.all(np.isnan(first)):
        raise StepTooLargeError(f"No grid point of {entry.name} could be evaluated")
    i_first, i_second = int(np.nanargmax(first)), int(np.nanargmax(second))

    # the g̃ curvature nests three difference quotients, so only a few points are checked
    rng = np.random.default_rng(cfg.seed)
    pad = CONFORMAL_STEP + CONFORMAL_FD_STEP
    samples = cf.chart.random_points(cfg.conformal_points, rng, pad=pad)
    conformal = max(data.consistency_residual(x) for x in samples)
    scalar = max(data.kahler_scalar_residual(x) for x in samples)

    report = EstimateReport(
        metric=entry.name,
        first_max=float(first[i_first]),
        first_argmax=location_of(points[i_first], cf.chart.names),
        second_max=float(second[i_second]),
        second_argmax=location_of(points[i_second], cf.chart.names),
        s_tilde_min=float(np.nanmin(s_tilde)),
        s_tilde_max=float(np.nanmax(s_tilde)),
        conformal_residual=float(conformal),
        kahler_scalar_residual=float(scalar),
        config=cfg.to_dict(),
        coordinate_names=cf.chart.names,
        points=points,
        fields={"first_estimate": first, "second_estimate": second, "s_tilde": s_tilde},
    )
    report.wall_clock = time.perf_counter() - start
    logger.info(
        f"Estimates on {entry.name}: first max {report.first_max:.4g}, second max {report.second_max:.4g}, "
        f"conformal residual {conformal:.2e}"
    )
    return report
