"""
Two independent assemblies of the Laplacian on 2-forms, compared through the
Weitzenböck formula (d + d*)² = ∇*∇ − 2W + s/3.

The Hodge side works in coordinates: δd uses the analytic second partials of
the field and the analytic first partials of the coframe, dδ differentiates
the coordinate codifferential numerically. The rough side works in the
orthonormal frame with the connection of the curvature engine.

Classes:
    FormField: Coordinate 2-form field with analytic partials
"""

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np
from numpy.typing import NDArray

from page_curvature.engine import (
    DEFAULT_FD_STEP,
    CoframeField,
    coframe_and_inverse,
    connection_at,
    curvature_at,
    richardson_partials,
)
from page_curvature.errors import UnsupportedFieldError
from page_curvature.forms import BLOCK_BASIS, matrix_to_form

Array = NDArray[np.float64]


@dataclass(frozen=True)
class FormField:
    """
    φ = ½ φ_μν dx^μ∧dx^ν given by antisymmetric 4×4 component matrices.

    `d1(x)[μ, ν, ρ] = ∂_ρ φ_μν` and `d2(x)[μ, ν, ρ, σ] = ∂_σ∂_ρ φ_μν`.
    """

    name: str
    value: Callable[[Array], Array]
    d1: Optional[Callable[[Array], Array]] = None
    d2: Optional[Callable[[Array], Array]] = None

    def __add__(self, other: "FormField") -> "FormField":
        def combine(f, g):
            if f is None or g is None:
                return None
            return lambda x: f(x) + g(x)

        return FormField(
            name=f"{self.name}+{other.name}",
            value=lambda x: self.value(x) + other.value(x),
            d1=combine(self.d1, other.d1),
            d2=combine(self.d2, other.d2),
        )


def _component_field(name: str, pair: tuple[int, int], f, df, ddf) -> FormField:
    """Field whose only nonzero components are φ_μν = f(x) = −φ_νμ."""
    mu, nu = pair

    def value(x):
        A = np.zeros((4, 4))
        A[mu, nu], A[nu, mu] = f(x), -f(x)
        return A

    def d1(x):
        A = np.zeros((4, 4, 4))
        A[mu, nu], A[nu, mu] = df(x), -df(x)
        return A

    def d2(x):
        A = np.zeros((4, 4, 4, 4))
        A[mu, nu], A[nu, mu] = ddf(x), -ddf(x)
        return A

    return FormField(name=name, value=value, d1=d1, d2=d2)


def constant_field(pair: tuple[int, int], c: float = 1.0) -> FormField:
    return _component_field(
        f"{c:g}dx{pair[0]}^dx{pair[1]}",
        pair,
        lambda x: c,
        lambda x: np.zeros(4),
        lambda x: np.zeros((4, 4)),
    )


def sine_field(pair: tuple[int, int], coordinate: int, frequency: float = 1.0) -> FormField:
    """φ_μν = sin(k x_coordinate)."""
    k = frequency

    def df(x):
        g = np.zeros(4)
        g[coordinate] = k * np.cos(k * x[coordinate])
        return g

    def ddf(x):
        h = np.zeros((4, 4))
        h[coordinate, coordinate] = -(k**2) * np.sin(k * x[coordinate])
        return h

    return _component_field(
        f"sin({k:g}x{coordinate})dx{pair[0]}^dx{pair[1]}", pair, lambda x: np.sin(k * x[coordinate]), df, ddf
    )


def polynomial_field(pair: tuple[int, int], exponents: Sequence[int], c: float = 1.0) -> FormField:
    """φ_μν = c Π x_k^{p_k} for non-negative integer exponents."""
    p = np.array(exponents, dtype=int)

    def monomial(x, powers):
        if np.any(powers < 0):
            return 0.0
        return float(np.prod(np.asarray(x, dtype=float) ** powers))

    def f(x):
        return c * monomial(x, p)

    def df(x):
        g = np.zeros(4)
        for k in range(4):
            q = p.copy()
            q[k] -= 1
            g[k] = c * p[k] * monomial(x, q)
        return g

    def ddf(x):
        h = np.zeros((4, 4))
        for k in range(4):
            for l in range(4):
                q = p.copy()
                q[k] -= 1
                factor = p[k]
                factor *= q[l]
                q[l] -= 1
                h[k, l] = c * factor * monomial(x, q)
        return h

    label = "*".join(f"x{k}^{e}" for k, e in enumerate(p) if e)
    return _component_field(f"{c:g}{label or '1'}dx{pair[0]}^dx{pair[1]}", pair, f, df, ddf)


def _metric_data(cf: CoframeField, x: Array) -> tuple[Array, Array, Array, Array]:
    """g, g⁻¹, ∂_σ g⁻¹ (last index σ) and ∂_σ ln √det g."""
    E = cf.coeff(x)
    dE = cf.dcoeff(x)
    g = E.T @ E
    dg = np.einsum("ims,in->mns", dE, E) + np.einsum("im,ins->mns", E, dE)
    G = np.linalg.inv(g)
    dG = -np.einsum("ma,abs,bn->mns", G, dg, G)
    dlog = 0.5 * np.einsum("ab,bas->s", G, dg)
    return g, G, dG, dlog


def _require_partials(field: FormField) -> None:
    if field.d1 is None or field.d2 is None:
        raise UnsupportedFieldError(f"Form field {field.name} lacks analytic first and second partials")


def codifferential(cf: CoframeField, field: FormField, x: Array) -> Array:
    """Coordinate components of δφ, (δφ)^ν = −(1/√g) ∂_μ(√g φ^{μν})."""
    _require_partials(field)
    g, G, dG, dlog = _metric_data(cf, x)
    phi, dphi = field.value(x), field.d1(x)
    raised = np.einsum("am,bn,mn->ab", G, G, phi)
    # ∂_a of φ^{ab}, summed over a
    div = (
        np.einsum("ama,bn,mn->b", dG, G, phi)
        + np.einsum("am,bna,mn->b", G, dG, phi)
        + np.einsum("am,bn,mna->b", G, G, dphi)
    )
    upper = -(div + np.einsum("a,ab->b", dlog, raised))
    return g @ upper


def hodge_laplacian(cf: CoframeField, field: FormField, x: Sequence[float], fd_step: float = DEFAULT_FD_STEP) -> Array:
    """Coordinate components of (dδ + δd)φ at x."""
    _require_partials(field)
    x = np.asarray(x, dtype=float)
    g, G, dG, dlog = _metric_data(cf, x)
    dphi, ddphi = field.d1(x), field.d2(x)

    # F_μνρ = ∂_μ φ_νρ + ∂_ν φ_ρμ + ∂_ρ φ_μν, with ∂_σ F from the second partials
    F = np.einsum("nrm->mnr", dphi) + np.einsum("rmn->mnr", dphi) + dphi
    dF = (
        np.einsum("nrms->mnrs", ddphi)
        + np.einsum("rmns->mnrs", ddphi)
        + ddphi
    )
    raised = np.einsum("am,bn,cr,mnr->abc", G, G, G, F)
    div = (
        np.einsum("ama,bn,cr,mnr->bc", dG, G, G, F)
        + np.einsum("am,bna,cr,mnr->bc", G, dG, G, F)
        + np.einsum("am,bn,cra,mnr->bc", G, G, dG, F)
        + np.einsum("am,bn,cr,mnra->bc", G, G, G, dF)
    )
    delta_d_upper = -(div + np.einsum("a,abc->bc", dlog, raised))
    delta_d = g @ delta_d_upper @ g.T

    partials, _ = richardson_partials(lambda y: codifferential(cf, field, y), x, fd_step)
    # (dα)_μν = ∂_μ α_ν − ∂_ν α_μ with partials[ν, μ] = ∂_μ α_ν
    d_delta = partials.T - partials
    return d_delta + delta_d


def _frame_components(cf: CoframeField, field: FormField, y: Array) -> tuple[Array, Array, Array]:
    """φ_ab, the frame derivative T[c, a, b] = (∇_{e_c} φ)_ab, and the connection at y."""
    E, E_inv = coframe_and_inverse(cf, y)
    dE = cf.dcoeff(y)
    phi = field.value(y)
    dphi = field.d1(y)
    dE_inv = -np.einsum("mi,ins,nb->mbs", E_inv, dE, E_inv)
    frame = E_inv.T @ phi @ E_inv
    d_frame = (
        np.einsum("mas,mn,nb->abs", dE_inv, phi, E_inv)
        + np.einsum("ma,mns,nb->abs", E_inv, dphi, E_inv)
        + np.einsum("ma,mn,nbs->abs", E_inv, phi, dE_inv)
    )
    w = connection_at(cf, y).w
    T = (
        np.einsum("sc,abs->cab", E_inv, d_frame)
        - np.einsum("kac,kb->cab", w, frame)
        - np.einsum("kbc,ak->cab", w, frame)
    )
    return frame, T, w


def rough_laplacian(cf: CoframeField, field: FormField, x: Sequence[float], fd_step: float = DEFAULT_FD_STEP) -> Array:
    """Frame components of ∇*∇φ = −Σ_c ∇²φ(e_c, e_c)."""
    _require_partials(field)
    x = np.asarray(x, dtype=float)
    _, E_inv = coframe_and_inverse(cf, x)
    _, T, w = _frame_components(cf, field, x)
    dT, _ = richardson_partials(lambda y: _frame_components(cf, field, y)[1], x, fd_step)
    along = np.einsum("mc,cabm->cab", E_inv, dT)
    hess = (
        np.einsum("cab->ab", along)
        - np.einsum("kcc,kab->ab", w, T)
        - np.einsum("kac,ckb->ab", w, T)
        - np.einsum("kbc,cak->ab", w, T)
    )
    return -hess


def weitzenbock_sides(
    cf: CoframeField, field: FormField, x: Sequence[float], fd_step: float = DEFAULT_FD_STEP
) -> tuple[Array, Array]:
    """
    Both sides of the Weitzenböck formula as 6-component frame 2-forms.

    Returns:
        ((d + d*)²φ, ∇*∇φ − 2Wφ + (s/3)φ)
    """
    x = np.asarray(x, dtype=float)
    _require_partials(field)
    _, E_inv = coframe_and_inverse(cf, x)
    hodge = matrix_to_form(E_inv.T @ hodge_laplacian(cf, field, x, fd_step) @ E_inv)

    pc = curvature_at(cf, x, fd_step)
    frame, _, _ = _frame_components(cf, field, x)
    phi = matrix_to_form(frame)
    weyl = np.zeros((6, 6))
    weyl[:3, :3], weyl[3:, 3:] = pc.wplus, pc.wminus
    weyl_frame = BLOCK_BASIS.T @ weyl @ BLOCK_BASIS
    rough = matrix_to_form(rough_laplacian(cf, field, x, fd_step))
    return hodge, rough - 2.0 * weyl_frame @ phi + pc.scalar / 3.0 * phi


def weitzenbock_residual(
    cf: CoframeField, field: FormField, x: Sequence[float], fd_step: float = DEFAULT_FD_STEP
) -> float:
    """
    ‖(d + d*)²φ − (∇*∇φ − 2Wφ + (s/3)φ)‖ at x, in frame components.

    Raises:
        UnsupportedFieldError: If the field lacks analytic partials
        StepTooLargeError: If the difference stencils leave the chart
    """
    hodge, rough = weitzenbock_sides(cf, field, x, fd_step)
    return float(np.linalg.norm(hodge - rough))


def standard_test_fields(cf: CoframeField) -> list[FormField]:
    """Trigonometric fields on fully periodic charts, polynomial ones elsewhere."""
    if all(cf.chart.periodic):
        return [
            sine_field((0, 1), 1),
            sine_field((2, 3), 0) + sine_field((0, 2), 3, frequency=2.0),
            constant_field((1, 3), 2.0),
        ]
    return [
        polynomial_field((0, 1), (2, 1, 0, 0)) + polynomial_field((2, 3), (1, 0, 0, 0), 0.5),
        polynomial_field((1, 2), (0, 1, 1, 0)) + sine_field((0, 3), 0),
    ]
