"""The pseudo-spherical Gauss map and its Laplacian by two independent routes.

The Gauss map of an n-dimensional submanifold of the unit pseudo-sphere is
the grade-(n+1) multivector field

    nu(u) = x ^ e_1 ^ ... ^ e_n,

a map into the wedge space of the ambient signature.  Its Laplacian can be
evaluated two ways:

  * closed form from curvature data (``laplacian_from_curvature``):

        Delta nu = ||hhat||^2 nu + n Hhat ^ e_1 ^ ... ^ e_n
                   - n sum_k x ^ ... ^ (D_{e_k} Hhat at slot k) ^ ... ^ e_n
                   + sum_{j != k} sum_{r < s} eps_r eps_s RD[r,s,j,k]
                         x ^ ... ^ (e_r at slot j) ^ ... ^ (e_s at slot k) ^ ...

  * numerically (``laplace_beltrami_numeric``) as the chart Laplacian

        Delta f = -(1/sqrt|det g|) d_i (sqrt|det g| g^{ij} d_j f)

    applied componentwise, with every metric coefficient exact from chart
    partials and only the field itself finite-differenced.

The sign is the geometer's positive Laplacian; it is pinned by the flat
torus eigenvalue +2 rather than by convention tables.  |det g| makes the
same code serve Lorentzian charts.

Agreement of the two routes is the core correctness oracle of the package:
it exercises frames, curvature, connection, and sign conventions at once.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .curvature import (
    GeometryReport,
    mean_curvature,
    normal_curvature,
    normal_derivative_mean,
    second_fundamental_form,
    squared_norm_h,
)
from .fd import fd_partial
from .immersion import AdaptedFrame, Immersion, adapted_frame, induced_metric
from .multivector import Multivector, WedgeSpace, wedge

__all__ = [
    "NotHypersurface",
    "MultivectorField",
    "wedge_space",
    "gauss_map",
    "gauss_map_field",
    "gauss_map_derivative",
    "laplacian_from_curvature",
    "chart_laplacian",
    "laplace_beltrami_numeric",
    "companion_field",
    "laplacian_companion",
    "bilaplacian_numeric",
]


class NotHypersurface(ValueError):
    """The operation needs codimension one inside the sphere (m = n + 2)."""


def wedge_space(imm: Immersion) -> WedgeSpace:
    return WedgeSpace(imm.signature, imm.n + 1)


@dataclass
class MultivectorField:
    """A grade-(n+1) multivector field over the chart domain."""

    imm: Immersion
    evaluator: object  # u -> Multivector
    label: str = ""

    def __call__(self, u) -> Multivector:
        return self.evaluator(u)

    def coeffs(self, u) -> np.ndarray:
        return self.evaluator(u).coeffs


def gauss_map(imm: Immersion, u, frame: AdaptedFrame | None = None) -> Multivector:
    """nu = x ^ e_1 ^ ... ^ e_n with the chart-order oriented tangent frame."""
    if frame is None:
        frame = adapted_frame(imm, u)
    return wedge(wedge_space(imm), [frame.x, *frame.tangents])


def gauss_map_field(imm: Immersion) -> MultivectorField:
    return MultivectorField(imm, lambda u: gauss_map(imm, u), label="gauss_map")


def gauss_map_derivative(imm: Immersion, u, i: int) -> Multivector:
    """Directional derivative e_i(nu) assembled from curvature data.

    Equals sum_k sum_r eps_r h^r_{ik} x ^ e_1 ^ ... ^ (e_r at slot k) ^ ...
    with r over sphere normals; cross-checked in tests against finite
    differences of the Gauss map field.
    """
    frame = adapted_frame(imm, u)
    h = second_fundamental_form(imm, u, frame)
    space = wedge_space(imm)
    base = [frame.x, *frame.tangents]
    out = space.zero()
    for k in range(imm.n):
        for r in range(frame.nnormals):
            coef = frame.eps_normal[r] * h[r, i, k]
            if coef == 0.0:
                continue
            vecs = list(base)
            vecs[k + 1] = frame.normals[r]
            out = out + coef * wedge(space, vecs)
    return out


def _assemble_laplacian(
    imm: Immersion,
    frame: AdaptedFrame,
    hsq: float,
    Hhat: np.ndarray,
    DH: np.ndarray,
    RD: np.ndarray,
) -> Multivector:
    space = wedge_space(imm)
    n = imm.n
    base = [frame.x, *frame.tangents]
    out = hsq * wedge(space, base)
    out = out + n * wedge(space, [Hhat, *frame.tangents])
    for k in range(n):
        vecs = list(base)
        vecs[k + 1] = DH[k]
        out = out - n * wedge(space, vecs)
    nn = frame.nnormals
    for r in range(nn):
        for s in range(r + 1, nn):
            sign_rs = frame.eps_normal[r] * frame.eps_normal[s]
            for j in range(n):
                for k in range(n):
                    if j == k:
                        continue
                    coef = sign_rs * RD[r, s, j, k]
                    if coef == 0.0:
                        continue
                    vecs = list(base)
                    vecs[j + 1] = frame.normals[r]
                    vecs[k + 1] = frame.normals[s]
                    out = out + coef * wedge(space, vecs)
    return out


def laplacian_from_curvature(
    imm: Immersion,
    u=None,
    report: GeometryReport | None = None,
    fd_step: float = 1e-4,
) -> Multivector:
    """Closed-form Laplacian of the Gauss map from curvature data.

    Pass a precomputed GeometryReport to reuse its frame and tensors;
    otherwise the minimal inputs are computed at ``u``.
    """
    if report is not None:
        return _assemble_laplacian(
            imm,
            report.frame,
            report.hsq_sphere,
            report.Hhat,
            report.DHhat,
            report.RD,
        )
    if u is None:
        raise ValueError("need either a point or a GeometryReport")
    frame = adapted_frame(imm, u)
    h = second_fundamental_form(imm, u, frame)
    _, Hhat, _ = mean_curvature(frame, h)
    DH = normal_derivative_mean(imm, u, frame, step=fd_step)
    RD = normal_curvature(frame, h)
    hsq = squared_norm_h(frame, h, spherical=True)
    return _assemble_laplacian(imm, frame, hsq, Hhat, DH, RD)


def chart_laplacian(imm: Immersion, fn, u, step: float = 1e-3, levels: int = 1):
    """Geometer's Laplacian of an array-valued field on the chart domain.

    Expands to -(g^{ij} d2_{ij} f + b^j d_j f) with

        b^j = sum_i d_i(g^{ij}) + g^{ij} d_i(log sqrt|det g|),

    all metric coefficients exact from chart partials; only ``fn`` is
    finite-differenced (central, one Richardson level by default).
    """
    u = np.asarray(u, dtype=float)
    n = imm.n
    g = induced_metric(imm, u)
    ginv = np.linalg.inv(g)
    J = imm.partial_rows(u)
    eps = imm.signature.eps

    D2 = {}
    for a in range(n):
        for b in range(a, n):
            vec = imm.partial(u, (a, b))
            D2[a, b] = vec
            D2[b, a] = vec
    dg = np.zeros((n, n, n))
    for k in range(n):
        for i in range(n):
            for j in range(n):
                dg[k, i, j] = float(
                    D2[min(k, i), max(k, i)] @ (eps * J[j])
                    + J[i] @ (eps * D2[min(k, j), max(k, j)])
                )
    dginv = [-ginv @ dg[k] @ ginv for k in range(n)]
    dlog = [0.5 * float(np.trace(ginv @ dg[k])) for k in range(n)]
    bvec = np.zeros(n)
    for j in range(n):
        bvec[j] = sum(dginv[i][i, j] for i in range(n)) + sum(
            ginv[i, j] * dlog[i] for i in range(n)
        )

    acc = None
    for i in range(n):
        for j in range(i, n):
            coef = ginv[i, j] * (1.0 if i == j else 2.0)
            if coef == 0.0:
                continue
            term = coef * fd_partial(fn, u, (i, j), h=step, levels=levels)
            acc = term if acc is None else acc + term
    for j in range(n):
        if bvec[j] == 0.0:
            continue
        acc = acc + bvec[j] * fd_partial(fn, u, (j,), h=step, levels=levels)
    return -acc


def laplace_beltrami_numeric(
    field: MultivectorField, u, step: float = 1e-3, levels: int = 1
) -> Multivector:
    """Numeric Laplacian of a multivector field, as a Multivector."""
    imm = field.imm
    coeffs = chart_laplacian(imm, field.coeffs, u, step=step, levels=levels)
    return Multivector(wedge_space(imm), coeffs)


def companion_field(imm: Immersion) -> MultivectorField:
    """For sphere hypersurfaces: the field e_{n+1} ^ e_1 ^ ... ^ e_n."""
    if imm.m != imm.n + 2:
        raise NotHypersurface(
            f"companion field needs m = n + 2, got m={imm.m}, n={imm.n}"
        )

    def ev(u):
        frame = adapted_frame(imm, u)
        return wedge(wedge_space(imm), [frame.normals[0], *frame.tangents])

    return MultivectorField(imm, ev, label="companion")


def laplacian_companion(
    imm: Immersion, u, report: GeometryReport | None = None
) -> Multivector:
    """Closed form Delta(e_{n+1} ^ e_1 ^ ... ^ e_n) = n alpha nu + n ebar."""
    if imm.m != imm.n + 2:
        raise NotHypersurface(
            f"companion Laplacian needs m = n + 2, got m={imm.m}, n={imm.n}"
        )
    if report is not None:
        frame = report.frame
        alpha = report.alpha_hat
    else:
        frame = adapted_frame(imm, u)
        h = second_fundamental_form(imm, u, frame)
        alpha = mean_curvature(frame, h)[2]
    space = wedge_space(imm)
    nu = wedge(space, [frame.x, *frame.tangents])
    ebar = wedge(space, [frame.normals[0], *frame.tangents])
    return imm.n * alpha * nu + imm.n * ebar


def bilaplacian_numeric(
    imm: Immersion,
    u,
    step: float = 5e-3,
    inner_fd_step: float = 1e-4,
    levels: int = 1,
) -> Multivector:
    """Delta^2 nu: numeric Laplacian applied to the closed-form Delta nu field.

    The inner field uses exact curvature data (plus the small-step normal
    derivative of Hhat), so no chart derivatives beyond order four are
    consumed; the outer step is coarser to keep roundoff amplification in
    check.
    """

    def fn(v):
        return laplacian_from_curvature(imm, v, fd_step=inner_fd_step).coeffs

    coeffs = chart_laplacian(imm, fn, u, step=step, levels=levels)
    return Multivector(wedge_space(imm), coeffs)
