"""Indefinite linear algebra on pseudo-Euclidean coordinate space.

A vector is a plain 1-d numpy array of length ``m``.  The metric is carried
by a :class:`Signature` ``(m, s)``: the first ``m - s`` coordinates are
spacelike (+1) and the last ``s`` are timelike (-1), so

    <v, w> = sum_{A <= m-s} v_A w_A - sum_{A > m-s} v_A w_A.

The unit pseudo-sphere of this space is ``{x : <x, x> = 1}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

__all__ = [
    "Signature",
    "DimensionMismatch",
    "NullPivot",
    "causal_character",
    "gram_schmidt_indefinite",
    "extend_orthonormal",
]


class DimensionMismatch(ValueError):
    """A vector's length does not match the signature it is used with."""


class NullPivot(ValueError):
    """Gram-Schmidt hit a pivot whose self inner product is (near) zero.

    Signals a degenerate or null direction; the caller must reorder the
    input or supply seed vectors that avoid the null cone.
    """

    def __init__(self, index: int, message: str):
        super().__init__(message)
        self.index = index


@dataclass(frozen=True)
class Signature:
    """Pseudo-Euclidean signature: ``m`` coordinates, the last ``s`` timelike."""

    m: int
    s: int

    def __post_init__(self):
        if self.m < 1:
            raise ValueError(f"dimension must be positive, got {self.m}")
        if not 0 <= self.s <= self.m:
            raise ValueError(f"index must lie in [0, {self.m}], got {self.s}")

    @cached_property
    def eps(self) -> np.ndarray:
        """Diagonal metric signs, +1 spacelike then -1 timelike."""
        e = np.ones(self.m)
        if self.s:
            e[self.m - self.s:] = -1.0
        e.setflags(write=False)
        return e

    def check_vector(self, v: np.ndarray) -> np.ndarray:
        v = np.asarray(v, dtype=float)
        if v.shape != (self.m,):
            raise DimensionMismatch(
                f"expected a vector of length {self.m}, got shape {v.shape}"
            )
        return v

    def inner(self, v: np.ndarray, w: np.ndarray) -> float:
        """Indefinite inner product <v, w>."""
        v = self.check_vector(v)
        w = self.check_vector(w)
        return float(v @ (self.eps * w))

    def __str__(self) -> str:
        return f"E^{self.m}_{self.s}"


def causal_character(sig: Signature, v: np.ndarray, tol: float = 1e-9) -> str:
    """Classify ``v`` as 'spacelike', 'timelike', 'null' or 'zero'.

    'zero' when the Euclidean norm is below ``tol``; 'null' when the self
    inner product is below ``tol`` relative to the squared Euclidean norm.
    """
    v = sig.check_vector(v)
    n2 = float(v @ v)
    if np.sqrt(n2) < tol:
        return "zero"
    q = sig.inner(v, v)
    if abs(q) < tol * n2:
        return "null"
    return "spacelike" if q > 0 else "timelike"


def _gs_core(sig: Signature, vectors, pivot_tol: float):
    """Indefinite Gram-Schmidt with change-of-basis tracking.

    Returns ``(basis, eps, R)`` with ``basis[i] = sum_j R[i, j] vectors[j]``.
    The first pivot is never sign-flipped and every normalization is by a
    positive scalar, so det(R) > 0: the output is positively oriented
    relative to the input order.
    """
    vecs = [sig.check_vector(v) for v in vectors]
    k = len(vecs)
    basis: list[np.ndarray] = []
    eps: list[float] = []
    R = np.eye(k)
    for i, v in enumerate(vecs):
        w = v.copy()
        row = R[i].copy()
        for j in range(i):
            c = eps[j] * sig.inner(w, basis[j])
            w -= c * basis[j]
            row -= c * R[j]
        q = sig.inner(w, w)
        n2 = float(w @ w)
        if abs(q) <= pivot_tol * n2 or n2 == 0.0:
            raise NullPivot(
                i,
                f"pivot {i} is null or degenerate: <w,w>={q:.3e} "
                f"with |w|^2={n2:.3e}",
            )
        scale = 1.0 / np.sqrt(abs(q))
        basis.append(scale * w)
        eps.append(1.0 if q > 0 else -1.0)
        R[i] = scale * row
    return basis, np.array(eps), R


def gram_schmidt_indefinite(sig: Signature, vectors, pivot_tol: float = 1e-9):
    """Orthonormalize ``vectors`` against the indefinite metric.

    Returns ``(basis, eps)`` where ``<basis[i], basis[j]> = eps[i] delta_ij``
    with ``eps[i] = +-1``.  Pivot order follows the input order; a pivot whose
    self inner product is below ``pivot_tol`` times its squared Euclidean norm
    raises :class:`NullPivot` carrying the offending index.
    """
    basis, eps, _ = _gs_core(sig, vectors, pivot_tol)
    return basis, eps


def extend_orthonormal(
    sig: Signature,
    basis,
    eps,
    candidates,
    count: int,
    pivot_tol: float = 1e-9,
    dep_tol: float = 1e-7,
):
    """Greedily extend an orthonormal system by ``count`` vectors.

    Candidates are projected against the established system in order; a
    candidate whose residual is (numerically) linearly dependent or lies on
    the null cone is skipped and the next one tried.  Raises
    :class:`NullPivot` if the candidates are exhausted first.
    """
    basis = list(basis)
    eps = list(eps)
    added: list[np.ndarray] = []
    added_eps: list[float] = []
    for idx, v in enumerate(candidates):
        if len(added) == count:
            break
        v = sig.check_vector(v)
        w = v.copy()
        for e, s in zip(basis, eps):
            w -= s * sig.inner(w, e) * e
        n2 = float(w @ w)
        vn2 = float(v @ v)
        if n2 <= dep_tol ** 2 * max(1.0, vn2):
            continue  # candidate already spanned
        q = sig.inner(w, w)
        if abs(q) <= pivot_tol * n2:
            continue  # residual is a null direction; try the next candidate
        scale = 1.0 / np.sqrt(abs(q))
        e_new = scale * w
        s_new = 1.0 if q > 0 else -1.0
        basis.append(e_new)
        eps.append(s_new)
        added.append(e_new)
        added_eps.append(s_new)
    if len(added) < count:
        raise NullPivot(
            len(basis),
            f"could not complete an orthonormal system: needed {count} more "
            f"vectors, candidates exhausted (null or dependent pivots)",
        )
    return added, np.array(added_eps)
