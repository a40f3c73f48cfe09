"""
One runner per command-line subcommand; each turns a RunConfig into a RunReport.

Runners never raise for geometric failures: a check that cannot be evaluated
is reported as a failed asserted check carrying the error message. Only
ConfigError escapes.
"""

from typing import Callable

import numpy as np

from page_curvature.catalog import (
    EULER_NAMES,
    CatalogEntry,
    PageParams,
    page_root,
    printed_vierbein_mismatch,
)
from page_curvature.engine import curvature_at
from page_curvature.errors import ConfigError, CurvatureError, DegeneratePlaneError
from page_curvature.forms import plane_to_forms
from page_curvature.hermitian import (
    einstein_bisectional,
    holomorphic_sectional,
    kahler_bisec_identity_residual,
    random_unit_vectors,
    sectional,
    structure_at,
)
from page_curvature.logging import log_stage, logger
from page_curvature.report import FieldTable, RunConfig, RunReport
from page_curvature.scan import (
    ScanReport,
    check_estimates,
    guarded,
    location_of,
    orthogonal_values,
    min_over_psi,
    parallel_map,
    scan_bisectional,
    scan_coframe,
    scan_einstein,
    scan_orthogonal_bisectional,
)
from page_curvature.submanifolds import (
    CoordinateSurface,
    coordinate_surface,
    enclosed_curvature,
    fiber_curvature_closed_form,
    fiber_surface,
    holonomy_loop,
    normal_curvature,
    orbit_torus,
    parallel_section_defect,
    rectangle_loop,
    tangential_normal_legs,
    wrap_angle,
)
from page_curvature.weitzenbock import standard_test_fields, weitzenbock_residual

ZERO_TOLERANCE = 1e-6
PATTERN_FLOOR = 1e-8
KAHLER_POINTS = 5


def _new_report(command: str, entry: CatalogEntry, cfg: RunConfig) -> RunReport:
    return RunReport(command=command, metric=entry.name, config=cfg.to_dict())


def _unevaluable(report: RunReport, name: str, error: CurvatureError) -> RunReport:
    logger.error(f"{report.command}: {name} could not be evaluated: {error}")
    report.require(f"{name}_evaluable", False, detail=f"{type(error).__name__}: {error}")
    return report


def _point_of(location: dict[str, float]) -> np.ndarray:
    return np.array(list(location.values()), dtype=float)


# -- check-einstein ------------------------------------------------------------------


def _page_notes(report: RunReport, entry: CatalogEntry) -> None:
    a = entry.parameters["a"]
    root = page_root()
    report.results["page_root"] = root
    report.record("page_parameter_is_root", abs(a - root) < 1e-12, a, 1e-12, detail=f"root of the quartic: {root:.15g}")
    x = np.array([np.pi / 2, np.pi / 3, 0.0, 0.0])
    mismatch = printed_vierbein_mismatch(PageParams(a), x)
    report.record("printed_vierbein_mismatch", mismatch < 1e-12, mismatch, 1e-12, location_of(x, entry.coframe.chart.names))
    report.notes.append(
        f"The vierbein (U dr, (D sin r/2U) dψ, (h/2) sinθ (dψ + dφ), (h/2) dθ) differs from the σ-form metric "
        f"by {mismatch:.3e}; the coframe e¹ = (√C sin r/(4√V))(dψ + cosθ dφ), e² = (√f/2) sinθ dφ, "
        f"e³ = (√f/2) dθ is used instead."
    )
    report.notes.append(
        "σ-forms are normalized by dσ₁ = 2σ₂∧σ₃, half of the unnormalized left-invariant forms; "
        "the σ₃² coefficient is therefore C sin²r/(4V), and C sin²r/V in this normalization is not Einstein."
    )
    report.notes.append(
        "Connection forms are taken from the structure-equation solution; closed-form expressions "
        "such as (U cot r − U̇)e¹ are treated as qualitative references only."
    )


def run_check_einstein(cfg: RunConfig) -> RunReport:
    entry = cfg.entry()
    report = _new_report("check-einstein", entry, cfg)
    tol = cfg.tolerances
    try:
        scan = scan_einstein(entry, cfg.scan)
    except CurvatureError as e:
        return _unevaluable(report, "einstein_residual", e)
    report.results["einstein"] = scan.to_dict()
    report.add_tables(scan)

    report.require("einstein_residual", scan.maximum < tol.einstein, scan.maximum, tol.einstein, scan.argmax["point"])
    spread = scan.extra["scalar_spread"]
    report.require("scalar_spread", spread < tol.scalar_spread, spread, tol.scalar_spread)
    structure = scan.extra["max_structure_residual"]
    report.require("structure_residual", structure < tol.structure, structure, tol.structure)
    report.record("reconstruction_error", scan.extra["max_reconstruction_error"] < 1e-10,
                  scan.extra["max_reconstruction_error"], 1e-10)
    report.record("bianchi_defect", True, scan.extra["max_bianchi_defect"])
    report.record("skipped_points", scan.statistics["skipped_points"] == 0, scan.statistics["skipped_points"])
    if "a" in entry.parameters:
        _page_notes(report, entry)
    return report


# -- scan-bisec / scan-ortho-bisec --------------------------------------------------


def _sign_checks(report: RunReport, scan: ScanReport, sign: str | None, noise_ratio: float) -> None:
    name = scan.functional
    noise = noise_ratio * scan.error_estimate
    location = scan.argmin["point"]
    detail = f"error estimate {scan.error_estimate:.3e}"
    if sign == "negative":
        passed = scan.minimum < 0 and abs(scan.minimum) > noise
        report.require(f"{name}_negative", passed, scan.minimum, noise, location, detail)
    elif sign == "positive":
        passed = scan.minimum > 0 and scan.minimum > noise
        report.require(f"{name}_positive", passed, scan.minimum, noise, location, detail)
    elif sign == "nonnegative":
        report.require(f"{name}_minimum_zero", abs(scan.minimum) <= ZERO_TOLERANCE, scan.minimum, ZERO_TOLERANCE,
                       location, detail)
    elif sign == "zero":
        extent = max(abs(scan.minimum), abs(scan.maximum))
        report.require(f"{name}_vanishes", extent <= ZERO_TOLERANCE, extent, ZERO_TOLERANCE, location, detail)
    else:
        report.record(f"{name}_minimum", True, scan.minimum, None, location, detail)


def _identity_check(report: RunReport, entry: CatalogEntry, cfg: RunConfig, scan: ScanReport) -> None:
    """Compare the minimizer's value with the Einstein closed form."""
    cf = scan_coframe(entry, cfg.scan)
    x = _point_of(scan.argmin["point"])
    pc = curvature_at(cf, x, cfg.scan.fd_step)
    cs = structure_at(pc, entry.canonical_omega)
    phi = np.array(scan.argmin["phi"])
    psi = np.array(scan.argmin["psi"])
    if scan.functional == "orthogonal_bisectional":
        direct = float(orthogonal_values(pc, cs, phi.reshape(1, 3))[0])
    else:
        direct = float(min_over_psi(pc, cs, phi.reshape(1, 3))[0][0])
    identity = einstein_bisectional(pc, cs, phi, psi)
    gap = abs(direct - identity)
    report.record("einstein_identity", gap < 1e-8, gap, 1e-8, scan.argmin["point"],
                  f"direct {direct:.12g}, block formula {identity:.12g}")


def _run_bisectional(cfg: RunConfig, orthogonal: bool) -> RunReport:
    entry = cfg.entry()
    command = "scan-ortho-bisec" if orthogonal else "scan-bisec"
    report = _new_report(command, entry, cfg)
    functional = "orthogonal_bisectional" if orthogonal else "bisectional"
    try:
        scan = scan_orthogonal_bisectional(entry, cfg.scan) if orthogonal else scan_bisectional(entry, cfg.scan)
    except CurvatureError as e:
        return _unevaluable(report, functional, e)
    report.results[functional] = scan.to_dict()
    report.add_tables(scan)

    sign = entry.orthogonal_sign if orthogonal else entry.bisectional_sign
    _sign_checks(report, scan, sign, cfg.tolerances.noise_ratio)
    if orthogonal and entry.kahler and entry.einstein and sign == "positive":
        spread = scan.maximum - scan.minimum
        report.require("orthogonal_bisectional_constant", spread < ZERO_TOLERANCE, spread, ZERO_TOLERANCE)
    if entry.einstein and entry.hermitian:
        _identity_check(report, entry, cfg, scan)
    report.record("holomorphic_sectional_range", True,
                  [scan.extra["holomorphic_sectional_min"], scan.extra["holomorphic_sectional_max"]])
    report.record("refinement_delta", scan.refinement_delta >= 0, scan.refinement_delta)
    if "doubled_resolution_relative_change" in scan.extra:
        change = scan.extra["doubled_resolution_relative_change"]
        report.record("grid_stability", change < 0.1, change, 0.1)
    return report


def run_scan_bisec(cfg: RunConfig) -> RunReport:
    return _run_bisectional(cfg, orthogonal=False)


def run_scan_ortho_bisec(cfg: RunConfig) -> RunReport:
    return _run_bisectional(cfg, orthogonal=True)


# -- weyl-spectrum --------------------------------------------------------------------


def pattern_residual(values: np.ndarray) -> float:
    """Relative distance of sorted eigenvalues from (−λ/2, −λ/2, λ); NaN when λ vanishes."""
    lam = values[-1]
    if abs(lam) < PATTERN_FLOOR:
        return float("nan")
    return float(max(abs(values[0] + lam / 2), abs(values[1] + lam / 2)) / abs(lam))


def _fubini_study_constants(report: RunReport, pc, cs, rng: np.random.Generator, count: int) -> None:
    holo = np.array([holomorphic_sectional(pc, cs, U) for U in random_unit_vectors(rng, count)])
    report.require("holomorphic_sectional_constant", np.max(np.abs(holo - 4.0)) < ZERO_TOLERANCE,
                   float(np.max(np.abs(holo - 4.0))), ZERO_TOLERANCE)
    sectionals, sd_gaps = [], []
    X = random_unit_vectors(rng, count)
    Y = random_unit_vectors(rng, count)
    for i, (x, y) in enumerate(zip(X, Y)):
        # every other plane is a complex line, so the maximal value is sampled too
        y = cs.J @ x if i % 2 else y
        try:
            K = sectional(pc, x, y)
        except DegeneratePlaneError:
            continue
        sectionals.append(K)
        if K > 4.0 - ZERO_TOLERANCE:
            alpha, _ = plane_to_forms(x, y)
            sd_gaps.append(float(np.max(np.abs(alpha - cs.omega / 2))))
    low, high = float(min(sectionals)), float(max(sectionals))
    report.require("sectional_range", low > 1 - ZERO_TOLERANCE and high < 4 + ZERO_TOLERANCE, [low, high],
                   ZERO_TOLERANCE, detail="expected within [1, 4]")
    gap = max(sd_gaps) if sd_gaps else 0.0
    report.require("maximal_planes_complex", gap < 1e-5, gap, 1e-5, detail=f"{len(sd_gaps)} maximal planes")


def run_weyl_spectrum(cfg: RunConfig) -> RunReport:
    entry = cfg.entry()
    report = _new_report("weyl-spectrum", entry, cfg)
    tol = cfg.tolerances
    cf = scan_coframe(entry, cfg.scan)
    points = cf.chart.grid(cfg.scan.grid)

    def evaluate(x):
        pc = curvature_at(cf, x, cfg.scan.fd_step)
        return np.linalg.eigvalsh(pc.wplus), np.linalg.eigvalsh(pc.wminus)

    results = parallel_map(guarded(evaluate), points, cfg.scan.workers)
    nan3 = np.full(3, np.nan)
    plus = np.array([r[0] if r else nan3 for r in results])
    minus = np.array([r[1] if r else nan3 for r in results])
    plus_pattern = np.array([pattern_residual(v) if r else np.nan for v, r in zip(plus, results)])
    minus_pattern = np.array([pattern_residual(v) if r else np.nan for v, r in zip(minus, results)])
    report.tables += [
        FieldTable("wplus_top", cf.chart.names, points, plus[:, 2]),
        FieldTable("wminus_top", cf.chart.names, points, minus[:, 2]),
        FieldTable("wplus_pattern", cf.chart.names, points, plus_pattern),
        FieldTable("wminus_pattern", cf.chart.names, points, minus_pattern),
    ]
    report.results["spectrum"] = {
        "wplus_top": {"min": float(np.nanmin(plus[:, 2])), "max": float(np.nanmax(plus[:, 2]))},
        "wminus_top": {"min": float(np.nanmin(minus[:, 2])), "max": float(np.nanmax(minus[:, 2]))},
    }

    if entry.hermitian and not np.any(np.isnan(plus_pattern)):
        worst = int(np.nanargmax(plus_pattern))
        report.require("wplus_pattern", plus_pattern[worst] < tol.weyl_pattern, float(plus_pattern[worst]),
                       tol.weyl_pattern, location_of(points[worst], cf.chart.names))
        lowest = int(np.nanargmin(plus[:, 2]))
        report.require("wplus_top_positive", plus[lowest, 2] > 0, float(plus[lowest, 2]), None,
                       location_of(points[lowest], cf.chart.names))
    else:
        report.record("wplus_pattern", True, None, detail="W⁺ vanishes or the metric is not Hermitian")
    if not np.all(np.isnan(minus_pattern)):
        worst = int(np.nanargmax(minus_pattern))
        report.record("wminus_pattern", minus_pattern[worst] < tol.weyl_pattern, float(minus_pattern[worst]),
                      tol.weyl_pattern, location_of(points[worst], cf.chart.names))

    if not entry.hermitian:
        return report
    rng = np.random.default_rng(cfg.scan.seed)
    samples = cf.chart.random_points(KAHLER_POINTS, rng, pad=cfg.scan.fd_step)
    j_worst, identity_worst, identity_where = 0.0, 0.0, None
    try:
        for k, x in enumerate(samples):
            pc = curvature_at(cf, x, cfg.scan.fd_step)
            cs = structure_at(pc, entry.canonical_omega)
            residuals = cs.invariant_residuals()
            j_worst = max(j_worst, residuals["j_squared"], residuals["metric_compatibility"])
            for X, Y in zip(random_unit_vectors(rng, cfg.scan.random_samples),
                            random_unit_vectors(rng, cfg.scan.random_samples)):
                try:
                    value = kahler_bisec_identity_residual(pc, cs, X, Y)
                except DegeneratePlaneError:
                    continue
                if value >= identity_worst:
                    identity_worst = value
                    identity_where = {**location_of(x, cf.chart.names), "X": X.tolist(), "Y": Y.tolist()}
            if entry.name == "fubini-study" and k == 0:
                _fubini_study_constants(report, pc, cs, rng, cfg.scan.random_samples)
    except CurvatureError as e:
        return _unevaluable(report, "complex_structure", e)

    report.require("complex_structure", j_worst < tol.complex_structure, j_worst, tol.complex_structure)
    if entry.kahler:
        report.require("kahler_identity", identity_worst < tol.kahler_identity, identity_worst,
                       tol.kahler_identity, identity_where)
    else:
        report.require("kahler_identity_violated", identity_worst > tol.kahler_violation, identity_worst,
                       tol.kahler_violation, identity_where)
    return report


# -- check-estimates ------------------------------------------------------------------


def run_check_estimates(cfg: RunConfig) -> RunReport:
    entry = cfg.entry()
    report = _new_report("check-estimates", entry, cfg)
    tol = cfg.tolerances
    try:
        estimates = check_estimates(entry, cfg.scan)
    except CurvatureError as e:
        return _unevaluable(report, "weyl_estimates", e)
    report.results["estimates"] = estimates.to_dict()
    report.add_tables(estimates)

    report.require("conformal_consistency", estimates.conformal_residual < tol.conformal,
                   estimates.conformal_residual, tol.conformal)
    report.record("kahler_scalar_consistency", estimates.kahler_scalar_residual < tol.conformal,
                  estimates.kahler_scalar_residual, tol.conformal)
    if entry.kahler and entry.bisectional_sign == "positive":
        report.require("first_estimate_holds", estimates.first_holds, estimates.first_max, None,
                       estimates.first_argmax)
        report.require("second_estimate_holds", estimates.second_holds, estimates.second_max, None,
                       estimates.second_argmax)
    elif entry.hermitian and not entry.kahler and entry.einstein:
        report.record("first_estimate_holds", estimates.first_holds, estimates.first_max, None, estimates.first_argmax)
        report.require("second_estimate_violated", estimates.second_max >= 0, estimates.second_max, None,
                       estimates.second_argmax)
    else:
        report.record("first_estimate_holds", estimates.first_holds, estimates.first_max, None, estimates.first_argmax)
        report.record("second_estimate_holds", estimates.second_holds, estimates.second_max, None,
                      estimates.second_argmax)
    varies = estimates.s_tilde_max - estimates.s_tilde_min
    report.record("s_tilde_range", estimates.s_tilde_min > 0, [estimates.s_tilde_min, estimates.s_tilde_max],
                  detail=f"variation {varies:.3e}")
    return report


# -- normal-bundle --------------------------------------------------------------------


def _surfaces(entry: CatalogEntry, cf) -> tuple[list[CoordinateSurface], Callable]:
    """Surfaces to examine and the closed-form normal curvature on them."""
    if cf.chart.names[1:] == EULER_NAMES:
        low, high = cf.chart.interior_lower[1], cf.chart.interior_upper[1]
        angles = [(np.pi / 2, 0.0), (np.pi / 3, 1.0), (2 * np.pi / 3, 2.0), (low + 0.01, 3.0), (high - 0.01, 4.0)]
        surfaces = [fiber_surface(cf, theta, phi) for theta, phi in angles]
        return surfaces, lambda surface, u: fiber_curvature_closed_form(cf, surface.point(u))
    middle = 0.5 * (cf.chart.interior_lower + cf.chart.interior_upper)
    surfaces = [
        coordinate_surface(cf, middle + shift, free=(0, 1), normal=(2, 3), name=f"factor surface {k}")
        for k, shift in enumerate((0.0, 0.3, -0.4))
    ]
    return surfaces, lambda surface, u: 0.0


def _loops(surface: CoordinateSurface) -> list[tuple[np.ndarray, np.ndarray]]:
    """Three nested rectangles centred in the first coordinate, anchored at the chart's lower second coordinate."""
    lo, hi = surface.chart.interior_lower, surface.chart.interior_upper
    centre, width = 0.5 * (lo[0] + hi[0]), hi[0] - lo[0]
    period = surface.chart.upper[1] - surface.chart.lower[1]
    loops = []
    for half, span in ((0.25, 0.5), (0.15, 0.25), (0.05, 0.125)):
        lower = np.array([centre - half * width, lo[1]])
        upper = np.array([centre + half * width, lo[1] + span * period])
        loops.append((lower, upper))
    return loops


def run_normal_bundle(cfg: RunConfig) -> RunReport:
    entry = cfg.entry()
    report = _new_report("normal-bundle", entry, cfg)
    tol = cfg.tolerances
    cf = scan_coframe(entry, cfg.scan)
    rng = np.random.default_rng(cfg.scan.seed)
    count = min(cfg.scan.random_samples, 100)
    fd = cfg.scan.fd_step

    try:
        surfaces, closed_form = _surfaces(entry, cf)
        rows, values = [], []
        worst_gap, worst_curv, worst_legs = 0.0, 0.0, 0.0
        curv_where = None
        for index, surface in enumerate(surfaces):
            for u in surface.chart.random_points(count, rng, pad=2 * fd):
                kappa = normal_curvature(surface, u, fd)
                worst_gap = max(worst_gap, abs(kappa - closed_form(surface, u)))
                worst_legs = max(worst_legs, tangential_normal_legs(surface, u))
                if abs(kappa) >= worst_curv:
                    worst_curv = abs(kappa)
                    curv_where = {"surface": surface.name, **location_of(u, surface.chart.names)}
                rows.append([index, *u])
                values.append(kappa)
    except CurvatureError as e:
        return _unevaluable(report, "normal_curvature", e)

    names = ("surface_index",) + surfaces[0].chart.names
    report.tables.append(FieldTable("normal_curvature", names, np.array(rows), np.array(values)))
    report.require("normal_curvature_closed_form", worst_gap < tol.normal_curvature, worst_gap, tol.normal_curvature)
    report.require("normal_legs_vanish", worst_legs < tol.structure, worst_legs, tol.structure)
    report.record("normal_flatness", worst_curv < tol.normal_curvature, worst_curv, tol.normal_curvature, curv_where)

    surface = surfaces[0]
    loop_rows, angles = [], []
    try:
        worst_stokes, worst_angle = 0.0, 0.0
        for k, (lower, upper) in enumerate(_loops(surface)):
            result = holonomy_loop(surface, rectangle_loop(lower, upper), cfg.scan.holonomy_steps, tol.holonomy)
            enclosed = enclosed_curvature(surface, lower, upper, fd_step=fd)
            worst_stokes = max(worst_stokes, abs(wrap_angle(result.angle - enclosed)))
            worst_angle = max(worst_angle, abs(result.angle))
            report.results[f"holonomy_loop_{k}"] = {**result.to_dict(), "enclosed_curvature": enclosed,
                                                    "lower": lower.tolist(), "upper": upper.tolist()}
            loop_rows.append([k, *lower, *upper])
            angles.append(result.angle)

        lower, upper = _loops(surface)[0]
        middle = 0.5 * (lower[1] + upper[1])
        whole = holonomy_loop(surface, rectangle_loop(lower, upper), cfg.scan.holonomy_steps, tol.holonomy)
        first = holonomy_loop(surface, rectangle_loop(lower, (upper[0], middle)), cfg.scan.holonomy_steps, tol.holonomy)
        second = holonomy_loop(surface, rectangle_loop((lower[0], middle), upper), cfg.scan.holonomy_steps,
                               tol.holonomy)
        additivity = abs(wrap_angle(whole.angle - first.angle - second.angle))
        point_loop = holonomy_loop(surface, np.array([lower]), cfg.scan.holonomy_steps, tol.holonomy)
        defect = parallel_section_defect(surface, lower, upper, cfg.scan.transport_grid)
    except CurvatureError as e:
        return _unevaluable(report, "holonomy", e)

    report.tables.append(
        FieldTable("holonomy", ("loop_index", "lower0", "lower1", "upper0", "upper1"), np.array(loop_rows),
                   np.array(angles))
    )
    report.require("holonomy_matches_enclosed_curvature", worst_stokes < tol.holonomy, worst_stokes, tol.holonomy,
                   {"surface": surface.name})
    report.require("holonomy_additive", additivity < tol.holonomy, additivity, tol.holonomy)
    report.require("point_loop_trivial", point_loop.angle == 0.0, point_loop.angle, 0.0)
    report.record("holonomy_trivial", worst_angle < tol.holonomy, worst_angle, tol.holonomy, {"surface": surface.name})
    report.record("parallel_section_defect", defect < tol.parallel_defect, defect, tol.parallel_defect,
                  {"surface": surface.name, "grid": cfg.scan.transport_grid})

    if cf.chart.names[1:] == EULER_NAMES:
        try:
            middle_r = 0.5 * (cf.chart.interior_lower[0] + cf.chart.interior_upper[0])
            torus = orbit_torus(cf, middle_r, np.pi / 2)
            torus_values = [normal_curvature(torus, u, fd) for u in torus.chart.random_points(8, rng)]
            report.record("orbit_torus_normal_curvature", True, float(np.max(np.abs(torus_values))),
                          location={"surface": torus.name})
        except CurvatureError as e:
            report.record("orbit_torus_normal_curvature", False, detail=str(e))
    return report


# -- weitzenbock ------------------------------------------------------------------------


def run_weitzenbock(cfg: RunConfig) -> RunReport:
    entry = cfg.entry()
    report = _new_report("weitzenbock", entry, cfg)
    tol = cfg.tolerances
    cf = scan_coframe(entry, cfg.scan)
    rng = np.random.default_rng(cfg.scan.seed)
    points = cf.chart.random_points(cfg.scan.conformal_points, rng, pad=2 * cfg.scan.fd_step)
    worst, where = 0.0, None
    residuals = {}
    try:
        for field in standard_test_fields(cf):
            values = [weitzenbock_residual(cf, field, x, cfg.scan.fd_step) for x in points]
            residuals[field.name] = max(values)
            k = int(np.argmax(values))
            if values[k] >= worst:
                worst, where = values[k], {"field": field.name, **location_of(points[k], cf.chart.names)}
    except CurvatureError as e:
        return _unevaluable(report, "weitzenbock_residual", e)
    report.results["weitzenbock"] = residuals
    report.require("weitzenbock_residual", worst < tol.weitzenbock, worst, tol.weitzenbock, where)
    return report


# -- report-all -------------------------------------------------------------------------


def run_report_all(cfg: RunConfig) -> RunReport:
    entry = cfg.entry()
    report = _new_report("report-all", entry, cfg)
    for name, runner in COMMANDS.items():
        if name == "report-all":
            continue
        with log_stage(f"report-all/{name}"):
            sub = runner(cfg)
        report.merge(sub)
        logger.info(f"report-all: {name} passed: {sub.passed}")
    return report


COMMANDS: dict[str, Callable[[RunConfig], RunReport]] = {
    "check-einstein": run_check_einstein,
    "scan-bisec": run_scan_bisec,
    "scan-ortho-bisec": run_scan_ortho_bisec,
    "weyl-spectrum": run_weyl_spectrum,
    "check-estimates": run_check_estimates,
    "normal-bundle": run_normal_bundle,
    "weitzenbock": run_weitzenbock,
    "report-all": run_report_all,
}


def run_command(command: str, cfg: RunConfig) -> RunReport:
    """
    Run one subcommand.

    Raises:
        ConfigError: If the command is unknown or the configuration is invalid
    """
    if command not in COMMANDS:
        raise ConfigError(f"Unknown command '{command}', expected one of {sorted(COMMANDS)}")
    return COMMANDS[command](cfg)
