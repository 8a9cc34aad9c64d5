"""Parametrized immersions into pseudo-spheres and their adapted frames.

Charts are maps ``x : U subset R^n -> E^m_s`` landing on the unit
pseudo-sphere ``<x, x> = 1``.  The preferred chart representation is a
:class:`TermChart`: every component is a sum of terms

    coef * f_1(a_1 . u + phase_1) * ... * f_q(a_q . u + phase_q)

with each factor one of sin, cos, sinh, cosh or an integer power of a linear
form.  Such charts have closed-form mixed partials of every order (Leibniz
over factors, each factor depending on a single linear form), which is what
the curvature pipeline consumes.

An adapted frame at a point consists of an orthonormal tangent basis
``e_1..e_n`` (chart order, Gram-Schmidt without sign flips), orthonormal
normals ``e_{n+1}..e_{m-1}`` tangent to the sphere, and the position ``x``
itself as the last normal direction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement, product

import numpy as np

from .fd import fd_partial
from .linalg import NullPivot, Signature, _gs_core, extend_orthonormal

__all__ = [
    "Factor",
    "Term",
    "TermChart",
    "CallableChart",
    "Immersion",
    "AdaptedFrame",
    "DegenerateMetric",
    "induced_metric",
    "metric_index",
    "adapted_frame",
    "frame_connection",
    "differentiate_term_chart",
    "lift_curve_chart",
]


class DegenerateMetric(ValueError):
    """The induced metric is singular at the evaluation point."""


# --- factor/term chart engine -------------------------------------------

_FOUR_CYCLE = {
    "sin": (np.sin, np.cos, lambda t: -np.sin(t), lambda t: -np.cos(t)),
    "cos": (np.cos, lambda t: -np.sin(t), lambda t: -np.cos(t), np.sin),
}
_TWO_CYCLE = {
    "sinh": (np.sinh, np.cosh),
    "cosh": (np.cosh, np.sinh),
}


@dataclass(frozen=True)
class Factor:
    """One factor ``f(a . u + phase)`` of a chart term.

    kind: 'sin', 'cos', 'sinh', 'cosh' or 'poly' (integer power).
    lin:  coefficients of the linear form, one per chart parameter.
    power: exponent, used only when kind == 'poly'.
    """

    kind: str
    lin: tuple
    phase: float = 0.0
    power: int = 1

    def argument(self, u: np.ndarray) -> float:
        return float(np.dot(self.lin, u) + self.phase)

    def derivatives(self, t: float, max_order: int):
        """Values of f, f', ..., f^(max_order) at t (w.r.t. the argument)."""
        if self.kind in _FOUR_CYCLE:
            cyc = _FOUR_CYCLE[self.kind]
            return [float(cyc[d % 4](t)) for d in range(max_order + 1)]
        if self.kind in _TWO_CYCLE:
            cyc = _TWO_CYCLE[self.kind]
            return [float(cyc[d % 2](t)) for d in range(max_order + 1)]
        if self.kind == "poly":
            out = []
            for d in range(max_order + 1):
                coef = 1.0
                for j in range(d):
                    coef *= self.power - j
                if coef == 0.0:
                    out.append(0.0)
                else:
                    out.append(coef * t ** (self.power - d))
            return out
        raise ValueError(f"unknown factor kind {self.kind!r}")


@dataclass(frozen=True)
class Term:
    coef: float
    factors: tuple = ()


@dataclass(frozen=True)
class TermChart:
    """Chart with components given as sums of factored terms."""

    nparams: int
    components: tuple  # tuple of tuples of Term

    @property
    def ncomponents(self) -> int:
        return len(self.components)

    def value(self, u) -> np.ndarray:
        return self.partial(u, ())

    def partial(self, u, axes) -> np.ndarray:
        """Exact mixed partial d^|axes| x / du_axes, any order."""
        u = np.asarray(u, dtype=float)
        d = len(axes)
        out = np.zeros(len(self.components))
        for a, terms in enumerate(self.components):
            acc = 0.0
            for term in terms:
                q = len(term.factors)
                if q == 0:
                    if d == 0:
                        acc += term.coef
                    continue
                tabs = [
                    f.derivatives(f.argument(u), d) for f in term.factors
                ]
                if d == 0:
                    prod_val = term.coef
                    for k in range(q):
                        prod_val *= tabs[k][0]
                    acc += prod_val
                    continue
                # Leibniz over factor assignments: each derivative slot is
                # given to one factor, contributing that factor's linear
                # coefficient along the slot's axis.
                total = 0.0
                for assign in product(range(q), repeat=d):
                    counts = [0] * q
                    lin_prod = 1.0
                    for pos, k in enumerate(assign):
                        counts[k] += 1
                        lin_prod *= term.factors[k].lin[axes[pos]]
                        if lin_prod == 0.0:
                            break
                    if lin_prod == 0.0:
                        continue
                    val = lin_prod
                    for k in range(q):
                        val *= tabs[k][counts[k]]
                    total += val
                acc += term.coef * total
            out[a] = acc
        return out


def differentiate_term_chart(chart: TermChart, axis: int) -> TermChart:
    """Exact derivative of a term chart along one parameter axis."""
    new_components = []
    for terms in chart.components:
        new_terms = []
        for term in terms:
            for k, f in enumerate(term.factors):
                a = f.lin[axis]
                if a == 0.0:
                    continue
                if f.kind == "sin":
                    df, coef = Factor("cos", f.lin, f.phase), a
                elif f.kind == "cos":
                    df, coef = Factor("sin", f.lin, f.phase), -a
                elif f.kind == "sinh":
                    df, coef = Factor("cosh", f.lin, f.phase), a
                elif f.kind == "cosh":
                    df, coef = Factor("sinh", f.lin, f.phase), a
                elif f.kind == "poly":
                    if f.power == 0:
                        continue
                    df = Factor("poly", f.lin, f.phase, f.power - 1)
                    coef = a * f.power
                else:
                    raise ValueError(f.kind)
                factors = term.factors[:k] + (df,) + term.factors[k + 1:]
                factors = tuple(
                    g for g in factors
                    if not (g.kind == "poly" and g.power == 0)
                )
                new_terms.append(Term(term.coef * coef, factors))
        new_components.append(tuple(new_terms))
    return TermChart(chart.nparams, tuple(new_components))


def lift_curve_chart(chart: TermChart, nparams: int, axis: int = 0) -> TermChart:
    """Reinterpret a 1-parameter chart as a chart in ``nparams`` variables."""
    if chart.nparams != 1:
        raise ValueError("lift_curve_chart expects a curve chart")
    new_components = []
    for terms in chart.components:
        new_terms = []
        for term in terms:
            factors = []
            for f in term.factors:
                lin = [0.0] * nparams
                lin[axis] = f.lin[0]
                factors.append(Factor(f.kind, tuple(lin), f.phase, f.power))
            new_terms.append(Term(term.coef, tuple(factors)))
        new_components.append(tuple(new_terms))
    return TermChart(nparams, tuple(new_components))


@dataclass(frozen=True)
class CallableChart:
    """Chart given by a plain callable, exact partials up to ``exact_order``.

    Missing higher orders are synthesized by Richardson-extrapolated central
    differences at step ``fd_step`` (accuracy roughly 1e-8 for smooth O(1)
    charts), applied to the highest available exact derivative.
    """

    nparams: int
    ncomponents: int
    fn: object
    partials_fn: object = None  # callable (u, axes) -> ndarray
    exact_order: int = 0
    fd_step: float = 1e-3

    def value(self, u) -> np.ndarray:
        return np.asarray(self.fn(np.asarray(u, dtype=float)), dtype=float)

    def partial(self, u, axes) -> np.ndarray:
        u = np.asarray(u, dtype=float)
        if len(axes) == 0:
            return self.value(u)
        if self.partials_fn is not None and len(axes) <= self.exact_order:
            return np.asarray(self.partials_fn(u, tuple(axes)), dtype=float)
        k = self.exact_order if self.partials_fn is not None else 0
        exact_axes = tuple(axes[:k])
        fd_axes = tuple(axes[k:])

        def base(v):
            if exact_axes:
                return self.partials_fn(v, exact_axes)
            return self.fn(v)

        return fd_partial(base, u, fd_axes, h=self.fd_step)


# --- immersions -----------------------------------------------------------


@dataclass
class Immersion:
    """Chart of an ``n``-dimensional submanifold of the unit pseudo-sphere.

    t is the declared index of the induced metric (number of timelike
    tangent directions).  ``tangent_seed`` optionally recombines the chart
    partials before orthonormalization (needed when coordinate directions
    are null, as in light-cone style charts).  ``normal_seeds`` are vector
    fields used as the first completion candidates for the normal frame;
    supplying closed-form seeds keeps frames smooth across the domain.
    """

    signature: Signature
    n: int
    t: int
    domain: tuple
    chart: object
    label: str = ""
    tangent_seed: np.ndarray | None = None
    normal_seeds: tuple = ()
    max_order: int = 4
    param_names: tuple = ()

    def __post_init__(self):
        if len(self.domain) != self.n:
            raise ValueError("domain must have one (lo, hi) pair per parameter")
        if self.chart.ncomponents != self.signature.m:
            raise ValueError(
                f"chart has {self.chart.ncomponents} components, ambient "
                f"dimension is {self.signature.m}"
            )
        if self.tangent_seed is not None:
            seed = np.asarray(self.tangent_seed, dtype=float)
            if seed.shape != (self.n, self.n):
                raise ValueError("tangent_seed must be an n x n matrix")
            if abs(np.linalg.det(seed)) < 1e-12:
                raise ValueError("tangent_seed must be invertible")
            self.tangent_seed = seed

    @property
    def m(self) -> int:
        return self.signature.m

    def value(self, u) -> np.ndarray:
        return self.chart.value(u)

    def partial(self, u, axes) -> np.ndarray:
        return self.chart.partial(u, tuple(axes))

    def partial_rows(self, u) -> np.ndarray:
        """First partials as rows: J[i] = d x / d u_i."""
        return np.array([self.partial(u, (i,)) for i in range(self.n)])

    def second_partials(self, u) -> dict:
        """All second partials keyed by sorted axis pairs."""
        return {
            axes: self.partial(u, axes)
            for axes in combinations_with_replacement(range(self.n), 2)
        }

    def seed_vectors(self, u) -> list:
        return [_eval_field(seed, u) for seed in self.normal_seeds]

    def interior_box(self, margin: float) -> list:
        """Domain shrunk on both ends by ``margin`` as a fraction of length."""
        if not 0 <= margin < 0.5:
            raise ValueError("margin must lie in [0, 0.5)")
        box = []
        for lo, hi in self.domain:
            length = hi - lo
            box.append((lo + margin * length, hi - margin * length))
        return box


def _eval_field(seed, u) -> np.ndarray:
    """Evaluate a vector field given as an array, chart, or callable."""
    if isinstance(seed, np.ndarray):
        return seed
    if hasattr(seed, "value"):
        return seed.value(u)
    return np.asarray(seed(u), dtype=float)


def induced_metric(imm: Immersion, u) -> np.ndarray:
    """Pullback metric g_ij = <d_i x, d_j x>; raises on singular g."""
    J = imm.partial_rows(u)
    eps = imm.signature.eps
    g = J @ (eps[None, :] * J).T
    g = 0.5 * (g + g.T)
    if abs(np.linalg.det(g)) < 1e-12:
        raise DegenerateMetric(
            f"induced metric is singular at u={np.asarray(u)} "
            f"(|det g| < 1e-12)"
        )
    return g


def metric_index(g: np.ndarray) -> int:
    """Number of negative eigenvalues of a nondegenerate symmetric matrix."""
    return int(np.sum(np.linalg.eigvalsh(g) < 0))


@dataclass
class AdaptedFrame:
    """Orthonormal frame adapted to the immersion at one point.

    tangents[i] with signs eps_tangent[i]; normals are the sphere-tangent
    normal directions; the position x completes the ambient frame (its sign
    is +1 on the unit pseudo-sphere).  tangent_coeffs expresses the tangent
    frame in chart partials: e_i = sum_j tangent_coeffs[i, j] d_j x.
    """

    u: np.ndarray
    x: np.ndarray
    tangents: np.ndarray
    normals: np.ndarray
    eps_tangent: np.ndarray
    eps_normal: np.ndarray
    tangent_coeffs: np.ndarray

    @property
    def all_vectors(self) -> np.ndarray:
        """Frame rows ordered tangents, sphere normals, x."""
        return np.vstack([self.tangents, self.normals, self.x[None, :]])

    @property
    def all_eps(self) -> np.ndarray:
        return np.concatenate([self.eps_tangent, self.eps_normal, [1.0]])

    @property
    def nnormals(self) -> int:
        return self.normals.shape[0]


def adapted_frame(
    imm: Immersion, u, pivot_tol: float = 1e-9, normal_hint=None
) -> AdaptedFrame:
    """Build the adapted frame at ``u``.

    Tangents come from Gram-Schmidt on the (optionally seeded) chart
    partials; normals from greedy completion over ``normal_hint`` fields,
    then the immersion's normal seeds, then the coordinate basis, skipping
    dependent or null pivots.
    """
    sig = imm.signature
    u = np.asarray(u, dtype=float)
    x = imm.value(u)
    J = imm.partial_rows(u)
    seed = imm.tangent_seed if imm.tangent_seed is not None else np.eye(imm.n)
    W = seed @ J
    try:
        tangents, eps_t, R = _gs_core(sig, list(W), pivot_tol)
    except NullPivot as exc:
        raise NullPivot(
            exc.index,
            f"null tangent pivot at u={u} (index {exc.index}); supply a "
            f"tangent_seed that avoids the null cone",
        ) from exc
    coeffs = R @ seed

    established = list(tangents) + [x]
    eps_established = list(eps_t) + [1.0]
    hints = [_eval_field(hf, u) for hf in (normal_hint or ())]
    candidates = hints + imm.seed_vectors(u) + [
        np.eye(imm.m)[a] for a in range(imm.m)
    ]
    count = imm.m - imm.n - 1
    normals, eps_n = extend_orthonormal(
        sig, established, eps_established, candidates, count, pivot_tol
    )
    return AdaptedFrame(
        u=u,
        x=x,
        tangents=np.array(tangents),
        normals=np.array(normals) if count else np.zeros((0, imm.m)),
        eps_tangent=np.asarray(eps_t, dtype=float),
        eps_normal=np.asarray(eps_n, dtype=float),
        tangent_coeffs=coeffs,
    )


def aligned_frame(imm: Immersion, u, reference: AdaptedFrame) -> AdaptedFrame:
    """Frame at ``u`` with signs matched to a nearby reference frame.

    Within finite-difference stencils the Gram-Schmidt output is smooth
    except for possible overall sign choices on completion pivots; matching
    signs against the stencil center removes that ambiguity.
    """
    fr = adapted_frame(imm, u)
    for i in range(fr.tangents.shape[0]):
        if fr.tangents[i] @ reference.tangents[i] < 0:
            fr.tangents[i] = -fr.tangents[i]
            fr.tangent_coeffs[i] = -fr.tangent_coeffs[i]
    for r in range(fr.normals.shape[0]):
        if fr.normals[r] @ reference.normals[r] < 0:
            fr.normals[r] = -fr.normals[r]
    return fr


def frame_connection(imm: Immersion, u, step: float = 1e-4) -> np.ndarray:
    """Connection forms omega[A, B, i] = <grad_{e_i} e_A, e_B>.

    Frame indices run over tangents, sphere normals, then x.  The frame
    field is differentiated by central differences on a stencil whose
    frames are sign-aligned to the center; omega is antisymmetric in
    (A, B) by metric compatibility.
    """
    u = np.asarray(u, dtype=float)
    center = adapted_frame(imm, u)
    m, n = imm.m, imm.n
    dframe = np.zeros((n, m, m))  # dframe[j, A] = d_j e_A
    for j in range(n):
        up = np.array(u)
        up[j] += step
        um = np.array(u)
        um[j] -= step
        fp = aligned_frame(imm, up, center).all_vectors
        fm = aligned_frame(imm, um, center).all_vectors
        dframe[j] = (fp - fm) / (2 * step)
    C = center.tangent_coeffs
    vecs = center.all_vectors
    eps_amb = imm.signature.eps
    omega = np.zeros((m, m, n))
    for i in range(n):
        # grad along e_i = sum_j C[i, j] d_j
        de = np.tensordot(C[i], dframe, axes=(0, 0))  # (m, m)
        omega[:, :, i] = de @ (eps_amb[:, None] * vecs.T)
    return omega
