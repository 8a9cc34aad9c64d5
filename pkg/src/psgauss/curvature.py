"""Second fundamental form and curvature data of pseudo-spherical immersions.

Conventions, with e_1..e_n the tangent frame, e_{n+1}..e_{m-1} the sphere
normals and x the last normal direction:

    h^r_{ij}   = <second derivative of the chart along (e_i, e_j), e_r>
    tr A_r     = sum_i eps_i h^r_{ii}
    H          = (1/n) sum_r eps_r (tr A_r) e_r       (all normals, x included)
    Hhat       = H + x                                 (sphere normals only)
    ||h||^2    = sum eps_i eps_j eps_r h^r_{ij} h^r_{ji}
    S          = n(n-1) + n^2 <Hhat, Hhat> - ||hhat||^2
    R^D(e_j, e_k; e_r, e_s) = sum_i eps_i (h^r_{ik} h^s_{ij} - h^r_{ij} h^s_{ik})

The position block of h is forced by the sphere constraint:
h^x_{ij} = -eps_i delta_ij, so ambient quantities are index restrictions of
one array rather than separate computations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement

import numpy as np

from .immersion import (
    AdaptedFrame,
    Immersion,
    adapted_frame,
    aligned_frame,
    frame_connection,
)
from .linalg import causal_character

__all__ = [
    "GeometryReport",
    "second_fundamental_form",
    "shape_operator",
    "mean_curvature",
    "squared_norm_h",
    "scalar_curvature",
    "normal_curvature",
    "normal_derivative_mean",
    "codazzi_residual",
    "marginally_trapped",
    "mean_vector",
    "geometry_report",
]


def second_fundamental_form(
    imm: Immersion, u, frame: AdaptedFrame
) -> np.ndarray:
    """Coefficients h[r, i, j]; r runs over sphere normals, then x last.

    Exact given exact chart second partials: the tangential correction from
    differentiating the frame coefficients is killed by the normal
    projection, so only second partials of the chart enter.
    """
    u = np.asarray(u, dtype=float)
    n, m = imm.n, imm.m
    D2 = np.zeros((n, n, m))
    for a, b in combinations_with_replacement(range(n), 2):
        vec = imm.partial(u, (a, b))
        D2[a, b] = vec
        D2[b, a] = vec
    normals = np.vstack([frame.normals, frame.x[None, :]])
    eps_amb = imm.signature.eps
    proj = np.einsum("abm,m,rm->rab", D2, eps_amb, normals)
    C = frame.tangent_coeffs
    h = np.einsum("ia,jb,rab->rij", C, C, proj)
    return 0.5 * (h + np.swapaxes(h, 1, 2))


def shape_operator(frame: AdaptedFrame, h: np.ndarray, r: int) -> np.ndarray:
    """Matrix of A_r in the tangent frame: A_r e_i = sum_j A[i, j] e_j."""
    return h[r] * frame.eps_tangent[None, :]


def mean_curvature(frame: AdaptedFrame, h: np.ndarray):
    """Returns (H, Hhat, alpha_hat); alpha_hat is None unless codim 1 in the sphere."""
    n = frame.tangents.shape[0]
    traces = np.einsum("i,rii->r", frame.eps_tangent, h)
    eps_all = np.concatenate([frame.eps_normal, [1.0]])
    normals = np.vstack([frame.normals, frame.x[None, :]])
    H = (eps_all * traces) @ normals / n
    Hhat = H + frame.x
    alpha_hat = None
    if frame.nnormals == 1:
        alpha_hat = float(traces[0]) / n
    return H, Hhat, alpha_hat


def squared_norm_h(
    frame: AdaptedFrame, h: np.ndarray, spherical: bool = True
) -> float:
    eps_t = frame.eps_tangent
    eps_all = np.concatenate([frame.eps_normal, [1.0]])
    if spherical:
        h = h[:-1]
        eps_all = eps_all[:-1]
    return float(
        np.einsum("r,i,j,rij,rji->", eps_all, eps_t, eps_t, h, h)
    )


def scalar_curvature(imm: Immersion, frame: AdaptedFrame, h: np.ndarray):
    """Returns (S, S_ambient); the two agree identically, kept as a check."""
    n = imm.n
    _, Hhat, _ = mean_curvature(frame, h)
    H = Hhat - frame.x
    hh = imm.signature.inner(Hhat, Hhat)
    S = n * (n - 1) + n * n * hh - squared_norm_h(frame, h, spherical=True)
    S_amb = n * n * imm.signature.inner(H, H) - squared_norm_h(
        frame, h, spherical=False
    )
    return S, S_amb


def normal_curvature(frame: AdaptedFrame, h: np.ndarray) -> np.ndarray:
    """RD[r, s, j, k] over sphere normals; antisymmetric in (r,s) and (j,k)."""
    eps_t = frame.eps_tangent
    hs = h[:-1]
    # sum_i eps_i (h^r_{ik} h^s_{ij} - h^r_{ij} h^s_{ik})
    A = np.einsum("i,rik,sij->rsjk", eps_t, hs, hs)
    return A - np.swapaxes(A, 2, 3)


def mean_vector(imm: Immersion, u) -> np.ndarray:
    """Hhat as a frame-independent ambient vector field."""
    frame = adapted_frame(imm, u)
    h = second_fundamental_form(imm, u, frame)
    return mean_curvature(frame, h)[1]


def normal_derivative_mean(
    imm: Immersion, u, frame: AdaptedFrame, step: float = 1e-4
) -> np.ndarray:
    """DH[k] = covariant derivative of Hhat in the normal bundle along e_k.

    Central differences of the Hhat field; the tangential part is discarded
    by projection onto the sphere normals (the x component vanishes since
    <Hhat, x> = 0 and <Hhat, e_k> = 0 hold identically).
    """
    u = np.asarray(u, dtype=float)
    n = imm.n
    dH = np.zeros((n, imm.m))
    for a in range(n):
        up = np.array(u)
        up[a] += step
        um = np.array(u)
        um[a] -= step
        dH[a] = (mean_vector(imm, up) - mean_vector(imm, um)) / (2 * step)
    eps_amb = imm.signature.eps
    comp = frame.normals @ (eps_amb[:, None] * dH.T)  # comp[r, a] = <dH_a, e_r>
    proj = np.einsum("r,ra,rm->am", frame.eps_normal, comp, frame.normals)
    return frame.tangent_coeffs @ proj


def codazzi_residual(
    imm: Immersion, u, step: float = 1e-4, perturb=None
) -> float:
    """Max violation of the symmetry of the covariant derivative of h.

    The covariant derivative expands as

        h^r_{jk,i} = e_i(h^r_{jk})
                     - sum_l eps_l (h^r_{lk} w_{jl}(e_i) + h^r_{lj} w_{kl}(e_i))
                     + sum_s eps_s h^s_{jk} w_{sr}(e_i)

    and must be fully symmetric under (i,j,k) cycling for any immersion, so
    the residual is a pipeline diagnostic, not a surface property.
    ``perturb=(r, i, j, amount)`` corrupts one coefficient of h at the
    center point to verify the diagnostic actually fires.
    """
    u = np.asarray(u, dtype=float)
    n = imm.n
    center = adapted_frame(imm, u)
    omega = frame_connection(imm, u)
    h0 = second_fundamental_form(imm, u, center)
    if perturb is not None:
        r0, i0, j0, amount = perturb
        h0 = h0.copy()
        h0[r0, i0, j0] += amount
    nr = h0.shape[0]

    dh = np.zeros((n,) + h0.shape)
    for a in range(n):
        up = np.array(u)
        up[a] += step
        um = np.array(u)
        um[a] -= step
        hp = second_fundamental_form(imm, up, aligned_frame(imm, up, center))
        hm = second_fundamental_form(imm, um, aligned_frame(imm, um, center))
        dh[a] = (hp - hm) / (2 * step)
    eh = np.tensordot(center.tangent_coeffs, dh, axes=(1, 0))  # [i, r, j, k]

    eps_t = center.eps_tangent
    eps_nrm = np.concatenate([center.eps_normal, [1.0]])
    F = np.array(eh)  # F[i, r, j, k] accumulates h^r_{jk,i}
    for i in range(n):
        for r in range(nr):
            for j in range(n):
                for k in range(n):
                    val = 0.0
                    for l in range(n):
                        val -= eps_t[l] * (
                            h0[r, l, k] * omega[j, l, i]
                            + h0[r, l, j] * omega[k, l, i]
                        )
                    for s in range(nr):
                        val += eps_nrm[s] * h0[s, j, k] * omega[n + s, n + r, i]
                    F[i, r, j, k] += val
    res = 0.0
    for r in range(nr):
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    # h^r_{ij,k} vs h^r_{jk,i}
                    res = max(res, abs(F[k, r, i, j] - F[i, r, j, k]))
    return res


def marginally_trapped(imm: Immersion, Hhat: np.ndarray, tol: float = 1e-9) -> bool:
    """True iff the sphere mean curvature vector is nonzero and null."""
    return causal_character(imm.signature, Hhat, tol) == "null"


@dataclass
class GeometryReport:
    """Pointwise curvature data consumed by the Gauss map pipeline."""

    u: np.ndarray
    frame: AdaptedFrame
    h: np.ndarray
    H: np.ndarray
    Hhat: np.ndarray
    alpha_hat: float | None
    hsq_sphere: float
    hsq_ambient: float
    S: float
    S_ambient: float
    K: float
    RD: np.ndarray
    omega: np.ndarray | None
    DHhat: np.ndarray
    codazzi: float | None = None

    @property
    def RD_max(self) -> float:
        return float(np.max(np.abs(self.RD))) if self.RD.size else 0.0

    @property
    def DHhat_max(self) -> float:
        return float(np.max(np.abs(self.DHhat)))


def geometry_report(
    imm: Immersion,
    u,
    fd_step: float = 1e-4,
    with_codazzi: bool = False,
    with_connection: bool = True,
) -> GeometryReport:
    u = np.asarray(u, dtype=float)
    frame = adapted_frame(imm, u)
    h = second_fundamental_form(imm, u, frame)
    H, Hhat, alpha_hat = mean_curvature(frame, h)
    hsq_s = squared_norm_h(frame, h, spherical=True)
    hsq_a = squared_norm_h(frame, h, spherical=False)
    S, S_amb = scalar_curvature(imm, frame, h)
    n = imm.n
    K = S / (n * (n - 1)) if n > 1 else 0.0
    RD = normal_curvature(frame, h)
    omega = frame_connection(imm, u, step=fd_step) if with_connection else None
    DH = normal_derivative_mean(imm, u, frame, step=fd_step)
    cod = codazzi_residual(imm, u, step=fd_step) if with_codazzi else None
    return GeometryReport(
        u=u,
        frame=frame,
        h=h,
        H=H,
        Hhat=Hhat,
        alpha_hat=alpha_hat,
        hsq_sphere=hsq_s,
        hsq_ambient=hsq_a,
        S=S,
        S_ambient=S_amb,
        K=K,
        RD=RD,
        omega=omega,
        DHhat=DH,
        codazzi=cod,
    )
