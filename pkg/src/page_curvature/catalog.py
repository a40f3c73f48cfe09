"""
Closed-form coframe descriptors for the test metrics.

The Page family, Fubini–Study and the round S⁴ share the U(2)-invariant shape

    e⁰ = A(t) dt,  e¹ = B(t)(dψ + cosθ dφ),  e² = D(t) sinθ dφ,  e³ = D(t) dθ

on the Euler-angle chart (t, θ, φ, ψ); flat T⁴ and the round S²×S² use product
charts. Catalog entries are addressable by name ("page", "page(a=0.3)",
"fubini-study", "s4(2)", "t4", "s2xs2(1,1)").

Classes:
    PageParams: Shape parameter of the Page family
    PageProfile: Radial functions V, f and C of the Page metric at one r
    SigmaForms: Left-invariant Euler-angle 1-forms with analytic partials
    CatalogEntry: Coframe descriptor plus the structural facts tests rely on
"""

import re
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from numpy.typing import NDArray
from scipy.optimize import brentq, newton

from page_curvature.engine import Chart, CoframeField
from page_curvature.errors import ConfigError, ParameterRangeError
from page_curvature.forms import TwoForm, wedge
from page_curvature.logging import logger

DEFAULT_MARGIN = 0.05
EULER_NAMES = ("theta", "phi", "psi")

# (A, A', B, B', D, D') as functions of the radial coordinate
RadialProfile = Callable[[float], tuple[float, float, float, float, float, float]]


def quartic(a: float) -> float:
    """a⁴ + 4a³ − 6a² + 12a − 3; its root in (0, 1) makes the Page metric Einstein."""
    return a**4 + 4 * a**3 - 6 * a**2 + 12 * a - 3


def _quartic_prime(a: float) -> float:
    return 4 * a**3 + 12 * a**2 - 12 * a + 12


def page_root() -> float:
    """The unique root of the quartic in (0, 1): bracketed bisection, then a Newton polish."""
    bracketed = brentq(quartic, 0.0, 1.0, xtol=1e-15, rtol=4 * np.finfo(float).eps)
    return float(newton(quartic, bracketed, fprime=_quartic_prime, tol=1e-15, maxiter=50))


@dataclass(frozen=True)
class PageParams:
    a: float

    def __post_init__(self):
        if not 0.0 < self.a < 1.0:
            raise ParameterRangeError(f"Page parameter must satisfy 0 < a < 1, got a={self.a}")

    @classmethod
    def einstein(cls) -> "PageParams":
        return cls(page_root())

    @property
    def is_einstein(self) -> bool:
        return abs(self.a - page_root()) < 1e-12


@dataclass(frozen=True)
class PageProfile:
    V: float
    dV: float
    f: float
    df: float
    C: float


def page_profile(a: float, r: float) -> PageProfile:
    """
    Radial functions of the Page metric

        g = V dr² + f (σ₁² + σ₂²) + (C sin²r / (4V)) σ₃²

    Args:
        a: Shape parameter
        r: Radial coordinate in [0, π]

    Returns:
        V, V′, f, f′ and the constant C
    """
    cos2 = np.cos(r) ** 2
    sin_cos = np.sin(r) * np.cos(r)
    num = 1.0 - a**2 * cos2
    den = 3.0 - a**2 - a**2 * (1.0 + a**2) * cos2
    d_num = 2.0 * a**2 * sin_cos
    d_den = 2.0 * a**2 * (1.0 + a**2) * sin_cos
    k = 4.0 / (3.0 + 6.0 * a**2 - a**4)
    return PageProfile(
        V=num / den,
        dV=(d_num * den - num * d_den) / den**2,
        f=k * num,
        df=k * d_num,
        C=(2.0 / (3.0 + a**2)) ** 2,
    )


@dataclass(frozen=True)
class SigmaForms:
    """
    Euler-angle 1-forms on (θ, φ, ψ):

        σ₁ = (sinψ dθ − sinθ cosψ dφ)/2
        σ₂ = (−cosψ dθ − sinθ sinψ dφ)/2
        σ₃ = (dψ + cosθ dφ)/2
    """

    def coefficients(self, angles: NDArray[np.float64]) -> NDArray[np.float64]:
        """Row k holds σ_{k+1} in the (dθ, dφ, dψ) basis."""
        theta, _, psi = angles
        return 0.5 * np.array(
            [
                [np.sin(psi), -np.sin(theta) * np.cos(psi), 0.0],
                [-np.cos(psi), -np.sin(theta) * np.sin(psi), 0.0],
                [0.0, np.cos(theta), 1.0],
            ]
        )

    def partials(self, angles: NDArray[np.float64]) -> NDArray[np.float64]:
        """d[k, μ, ν] = ∂_ν of the dx^μ coefficient of σ_{k+1}."""
        theta, _, psi = angles
        d = np.zeros((3, 3, 3))
        d[0, 1, 0] = -np.cos(theta) * np.cos(psi)
        d[0, 0, 2] = np.cos(psi)
        d[0, 1, 2] = np.sin(theta) * np.sin(psi)
        d[1, 1, 0] = -np.cos(theta) * np.sin(psi)
        d[1, 0, 2] = np.sin(psi)
        d[1, 1, 2] = -np.sin(theta) * np.cos(psi)
        d[2, 1, 0] = -np.sin(theta)
        return 0.5 * d

    def exterior(self, k: int, angles: NDArray[np.float64]) -> NDArray[np.float64]:
        """Antisymmetric components (dσ_k)_{μν} = ∂_μ σ_ν − ∂_ν σ_μ, for k in 1..3."""
        d = self.partials(angles)[k - 1]
        return d.T - d

    def wedge(self, j: int, k: int, angles: NDArray[np.float64]) -> NDArray[np.float64]:
        """Antisymmetric components of σ_j ∧ σ_k."""
        s = self.coefficients(angles)
        return np.outer(s[j - 1], s[k - 1]) - np.outer(s[k - 1], s[j - 1])

    def base_metric(self, angles: NDArray[np.float64]) -> NDArray[np.float64]:
        """σ₁² + σ₂² as a symmetric tensor on (θ, φ, ψ)."""
        s = self.coefficients(angles)
        return np.outer(s[0], s[0]) + np.outer(s[1], s[1])


def sigma_forms() -> SigmaForms:
    return SigmaForms()


def hopf_project(theta: float, psi: float, phi: float) -> tuple[float, float]:
    """Hopf projection h(θ, ψ, φ) = (−φ, θ) onto S²; independent of ψ."""
    return (-phi, theta)


def euler_embedding(theta: float, phi: float, psi: float) -> NDArray[np.float64]:
    """Point of the unit S³ ⊂ ℂ² = ℝ⁴ with Euler angles (θ, φ, ψ)."""
    z1 = np.cos(theta / 2) * np.exp(0.5j * (psi + phi))
    z2 = np.sin(theta / 2) * np.exp(0.5j * (psi - phi))
    return np.array([z1.real, z1.imag, z2.real, z2.imag])


def euler_chart(radial: str, upper: float, margin: float) -> Chart:
    return Chart(
        names=(radial,) + EULER_NAMES,
        lower=(0.0, 0.0, 0.0, 0.0),
        upper=(upper, np.pi, 2 * np.pi, 4 * np.pi),
        margins=(margin, margin, 0.0, 0.0),
        periodic=(False, False, True, True),
    )


def u2_invariant_coframe(name: str, chart: Chart, profile: RadialProfile) -> CoframeField:
    """
    Coframe e⁰ = A dt, e¹ = B (dψ + cosθ dφ), e² = D sinθ dφ, e³ = D dθ.

    Args:
        name: Label of the metric
        chart: Euler-angle chart (t, θ, φ, ψ)
        profile: t ↦ (A, A′, B, B′, D, D′)
    """

    def coeff(x):
        t, theta = x[0], x[1]
        A, _, B, _, D, _ = profile(t)
        return np.array(
            [
                [A, 0.0, 0.0, 0.0],
                [0.0, 0.0, B * np.cos(theta), B],
                [0.0, 0.0, D * np.sin(theta), 0.0],
                [0.0, D, 0.0, 0.0],
            ]
        )

    def dcoeff(x):
        t, theta = x[0], x[1]
        _, dA, B, dB, D, dD = profile(t)
        d = np.zeros((4, 4, 4))
        d[0, 0, 0] = dA
        d[1, 2, 0] = dB * np.cos(theta)
        d[1, 2, 1] = -B * np.sin(theta)
        d[1, 3, 0] = dB
        d[2, 2, 0] = dD * np.sin(theta)
        d[2, 2, 1] = D * np.cos(theta)
        d[3, 1, 0] = dD
        return d

    return CoframeField(name=name, chart=chart, coeff=coeff, dcoeff=dcoeff)


def page_metric(p: PageParams, margin: float = DEFAULT_MARGIN) -> CoframeField:
    """
    Page-family coframe on (r, θ, φ, ψ) ∈ [0,π]×[0,π]×[0,2π]×[0,4π].

    e⁰ = √V dr, e¹ = (√C sin r / (4√V))(dψ + cosθ dφ), e² = (√f/2) sinθ dφ, e³ = (√f/2) dθ

    With dσ₁ = 2σ₂∧σ₃ the σ-forms are half of the unnormalized left-invariant
    forms, so the σ₃² coefficient is C sin²r / (4V) and e¹ = (√C sin r / √V) σ₃ / 2.
    """
    a = p.a

    def profile(r):
        prof = page_profile(a, r)
        sqrt_V, sqrt_C, sqrt_f = np.sqrt(prof.V), np.sqrt(prof.C), np.sqrt(prof.f)
        B = sqrt_C * np.sin(r) / (4 * sqrt_V)
        dB = 0.25 * sqrt_C * (np.cos(r) / sqrt_V - np.sin(r) * prof.dV / (2 * prof.V * sqrt_V))
        return (
            sqrt_V,
            prof.dV / (2 * sqrt_V),
            B,
            dB,
            sqrt_f / 2,
            prof.df / (4 * sqrt_f),
        )

    return u2_invariant_coframe(f"page(a={a:.12g})", euler_chart("r", np.pi, margin), profile)


def page_sigma_metric(p: PageParams, x: NDArray[np.float64]) -> NDArray[np.float64]:
    """
    The Page metric written out in coordinates,

        V dr² + (f/4)(dθ² + sin²θ dφ²) + (C sin²r / (16V))(dψ + cosθ dφ)²

    which is f(σ₁²+σ₂²) + (C sin²r/(4V)) σ₃² with the σ-forms of `SigmaForms`.
    """
    r, theta = x[0], x[1]
    prof = page_profile(p.a, r)
    base = prof.f / 4
    fiber = prof.C * np.sin(r) ** 2 / (16 * prof.V)
    g = np.zeros((4, 4))
    g[0, 0] = prof.V
    g[1, 1] = base
    g[2, 2] = base * np.sin(theta) ** 2 + fiber * np.cos(theta) ** 2
    g[3, 3] = fiber
    g[2, 3] = g[3, 2] = fiber * np.cos(theta)
    return g


def printed_vierbein_mismatch(p: PageParams, x: NDArray[np.float64]) -> float:
    """
    Largest deviation between the σ-form metric and the vierbein
    {U dr, (D sin r / 2U) dψ, (h/2) sinθ (dψ + dφ), (h/2) dθ}, U = √V, D = √C, h = √f.
    """
    r, theta = x[0], x[1]
    prof = page_profile(p.a, r)
    U, D, h = np.sqrt(prof.V), np.sqrt(prof.C), np.sqrt(prof.f)
    E = np.array(
        [
            [U, 0.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, D * np.sin(r) / (2 * U)],
            [0.0, 0.0, h / 2 * np.sin(theta), h / 2 * np.sin(theta)],
            [0.0, h / 2, 0.0, 0.0],
        ]
    )
    return float(np.max(np.abs(E.T @ E - page_sigma_metric(p, x))))


def fubini_study(margin: float = DEFAULT_MARGIN) -> CoframeField:
    """CP² with holomorphic sectional curvature 4: dt² + sin²t (σ₁²+σ₂²) + sin²t cos²t σ₃²."""

    def profile(t):
        return (1.0, 0.0, np.sin(2 * t) / 4, np.cos(2 * t) / 2, np.sin(t) / 2, np.cos(t) / 2)

    return u2_invariant_coframe("fubini-study", euler_chart("t", np.pi / 2, margin), profile)


def round_s4(radius: float = 1.0, margin: float = DEFAULT_MARGIN) -> CoframeField:
    """Round S⁴ of the given radius in polar coordinates about a pole."""
    if radius <= 0:
        raise ParameterRangeError(f"Radius must be positive, got {radius}")

    def profile(t):
        half = radius / 2
        return (radius, 0.0, half * np.sin(t), half * np.cos(t), half * np.sin(t), half * np.cos(t))

    return u2_invariant_coframe(f"s4(r={radius:g})", euler_chart("t", np.pi, margin), profile)


def flat_t4() -> CoframeField:
    chart = Chart(
        names=("x0", "x1", "x2", "x3"),
        lower=(0.0,) * 4,
        upper=(2 * np.pi,) * 4,
        margins=(0.0,) * 4,
        periodic=(True,) * 4,
    )
    return CoframeField(
        name="t4",
        chart=chart,
        coeff=lambda x: np.eye(4),
        dcoeff=lambda x: np.zeros((4, 4, 4)),
    )


def round_s2xs2(r1: float = 1.0, r2: float = 1.0, margin: float = DEFAULT_MARGIN) -> CoframeField:
    """Product of round 2-spheres with coframe (r₁dθ₁, r₁ sinθ₁ dφ₁, r₂dθ₂, r₂ sinθ₂ dφ₂)."""
    if r1 <= 0 or r2 <= 0:
        raise ParameterRangeError(f"Radii must be positive, got r1={r1}, r2={r2}")
    chart = Chart(
        names=("theta1", "phi1", "theta2", "phi2"),
        lower=(0.0,) * 4,
        upper=(np.pi, 2 * np.pi, np.pi, 2 * np.pi),
        margins=(margin, 0.0, margin, 0.0),
        periodic=(False, True, False, True),
    )

    def coeff(x):
        return np.diag([r1, r1 * np.sin(x[0]), r2, r2 * np.sin(x[2])])

    def dcoeff(x):
        d = np.zeros((4, 4, 4))
        d[1, 1, 0] = r1 * np.cos(x[0])
        d[3, 3, 2] = r2 * np.cos(x[2])
        return d

    return CoframeField(name=f"s2xs2(r1={r1:g},r2={r2:g})", chart=chart, coeff=coeff, dcoeff=dcoeff)


def scale_coframe(cf: CoframeField, c: float) -> CoframeField:
    """Descriptor of the metric c·g."""
    if c <= 0:
        raise ParameterRangeError(f"Scale factor must be positive, got {c}")
    root = np.sqrt(c)
    return CoframeField(
        name=f"{c:g}*{cf.name}",
        chart=cf.chart,
        coeff=lambda x: root * cf.coeff(x),
        dcoeff=lambda x: root * cf.dcoeff(x),
    )


def conformal_coframe(
    cf: CoframeField,
    u: Callable[[NDArray[np.float64]], float],
    du: Callable[[NDArray[np.float64]], NDArray[np.float64]],
    name: Optional[str] = None,
) -> CoframeField:
    """
    Descriptor of the metric u·g, with coframe √u·eⁱ.

    Args:
        cf: Coframe of g
        u: Positive conformal factor
        du: Coordinate gradient of u
        name: Optional label
    """

    def coeff(x):
        return np.sqrt(u(x)) * cf.coeff(x)

    def dcoeff(x):
        root = np.sqrt(u(x))
        d_root = du(x) / (2 * root)
        return root * cf.dcoeff(x) + np.einsum("im,n->imn", cf.coeff(x), d_root)

    return CoframeField(name=name or f"u*{cf.name}", chart=cf.chart, coeff=coeff, dcoeff=dcoeff)


# e⁰∧e¹ + e²∧e³: Kähler form of the product, Fubini–Study and flat entries
STANDARD_OMEGA: TwoForm = wedge([1, 0, 0, 0], [0, 1, 0, 0]) + wedge([0, 0, 1, 0], [0, 0, 0, 1])


@dataclass(frozen=True)
class CatalogEntry:
    """A catalog metric together with the structural facts the checks rely on."""

    name: str
    coframe: CoframeField
    hermitian: bool
    kahler: bool
    einstein: bool
    canonical_omega: Optional[TwoForm] = None
    # Expected sign of the bisectional minimum: "negative", "positive", "nonnegative" or "zero"
    bisectional_sign: Optional[str] = None
    orthogonal_sign: Optional[str] = None
    parameters: dict[str, float] = field(default_factory=dict)


_NAME_PATTERN = re.compile(r"^\s*([a-z0-9\-]+)\s*(?:\((.*)\))?\s*$")


def _parse_arguments(text: Optional[str], keys: tuple[str, ...]) -> dict[str, float]:
    values: dict[str, float] = {}
    if not text or not text.strip():
        return values
    for position, item in enumerate(text.split(",")):
        item = item.strip()
        if "=" in item:
            key, raw = (part.strip() for part in item.split("=", 1))
        elif position < len(keys):
            key, raw = keys[position], item
        else:
            raise ConfigError(f"Too many positional arguments in '{text}'")
        if key not in keys:
            raise ConfigError(f"Unknown parameter '{key}', expected one of {keys}")
        try:
            values[key] = float(raw)
        except ValueError as e:
            raise ConfigError(f"Parameter '{key}' is not a number: '{raw}'") from e
    return values


def metric_from_name(name: str, a: Optional[float] = None, margin: float = DEFAULT_MARGIN) -> CatalogEntry:
    """
    Resolve a catalog selector.

    Args:
        name: Selector such as "page", "page(a=0.5)", "fubini-study", "s4(2)", "t4", "s2xs2(1,1)"
        a: Page parameter overriding the selector's own (None keeps the Einstein root)
        margin: Chart margin around coordinate singularities

    Returns:
        The catalog entry

    Raises:
        ConfigError: If the selector is malformed or names no catalog metric
        ParameterRangeError: If a parameter is out of range
    """
    match = _NAME_PATTERN.match(name.lower())
    if not match:
        raise ConfigError(f"Malformed metric selector '{name}'")
    key, args = match.group(1), match.group(2)

    if key == "page":
        params = _parse_arguments(args, ("a",))
        value = a if a is not None else params.get("a", page_root())
        p = PageParams(value)
        einstein = p.is_einstein
        logger.debug(f"Resolved Page metric with a={p.a:.15g} (Einstein root: {einstein})")
        return CatalogEntry(
            name=f"page(a={p.a:.12g})",
            coframe=page_metric(p, margin),
            hermitian=True,
            kahler=False,
            einstein=einstein,
            bisectional_sign="negative",
            orthogonal_sign="negative",
            parameters={"a": p.a},
        )
    if a is not None:
        raise ConfigError(f"Parameter a only applies to the Page family, not '{name}'")
    if key in ("fubini-study", "fs", "cp2"):
        _parse_arguments(args, ())
        return CatalogEntry(
            name="fubini-study",
            coframe=fubini_study(margin),
            hermitian=True,
            kahler=True,
            einstein=True,
            canonical_omega=STANDARD_OMEGA,
            bisectional_sign="positive",
            orthogonal_sign="positive",
        )
    if key == "s4":
        params = _parse_arguments(args, ("r",))
        return CatalogEntry(
            name=f"s4(r={params.get('r', 1.0):g})",
            coframe=round_s4(params.get("r", 1.0), margin),
            hermitian=False,
            kahler=False,
            einstein=True,
        )
    if key == "t4":
        _parse_arguments(args, ())
        return CatalogEntry(
            name="t4",
            coframe=flat_t4(),
            hermitian=True,
            kahler=True,
            einstein=True,
            canonical_omega=STANDARD_OMEGA,
            bisectional_sign="zero",
            orthogonal_sign="zero",
        )
    if key == "s2xs2":
        params = _parse_arguments(args, ("r1", "r2"))
        r1, r2 = params.get("r1", 1.0), params.get("r2", 1.0)
        return CatalogEntry(
            name=f"s2xs2(r1={r1:g},r2={r2:g})",
            coframe=round_s2xs2(r1, r2, margin),
            hermitian=True,
            kahler=True,
            einstein=abs(r1 - r2) < 1e-12,
            canonical_omega=STANDARD_OMEGA,
            bisectional_sign="nonnegative",
            orthogonal_sign="nonnegative",
        )
    raise ConfigError(f"Unknown metric '{name}'; expected page, fubini-study, s4, t4 or s2xs2")
