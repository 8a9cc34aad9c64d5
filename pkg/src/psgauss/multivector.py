"""Exterior powers of a pseudo-Euclidean space with the induced inner product.

Grade-k multivectors over ``E^m_s`` are stored densely as coefficient arrays
of length ``N = C(m, k)`` against the lexicographically ordered basis
``e_I = e_{i_1} ^ ... ^ e_{i_k}``, ``I = {i_1 < ... < i_k}`` (0-based).

On decomposable elements the induced inner product is the Gram determinant

    <<f_1 ^ ... ^ f_k, g_1 ^ ... ^ g_k>> = det(<f_i, g_j>),

which on the lex basis is diagonal with signs ``eps_{i_1} ... eps_{i_k}``;
the wedge space is itself a pseudo-Euclidean space ``E^N_q``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from math import comb

import numpy as np

from .linalg import Signature

__all__ = [
    "WedgeSpace",
    "Multivector",
    "wedge",
    "mv_inner",
    "decomposable_inner",
    "subset_rank",
]


def subset_rank(m: int, subset) -> int:
    """Lexicographic rank of a sorted subset of range(m).

    Combinatorial number system: the rank is the number of k-subsets that
    precede ``subset`` in lex order, counted by summing, for each position,
    the subsets obtained by lowering that element.
    """
    subset = tuple(subset)
    k = len(subset)
    rank = 0
    prev = -1
    for pos, c in enumerate(subset):
        for j in range(prev + 1, c):
            rank += comb(m - 1 - j, k - 1 - pos)
        prev = c
    return rank


@dataclass(frozen=True)
class WedgeSpace:
    """Grade-``k`` exterior power of the ambient space."""

    ambient: Signature
    grade: int

    def __post_init__(self):
        if not 0 < self.grade <= self.ambient.m:
            raise ValueError(
                f"grade must lie in [1, {self.ambient.m}], got {self.grade}"
            )

    @cached_property
    def subsets(self) -> tuple:
        return tuple(combinations(range(self.ambient.m), self.grade))

    @cached_property
    def dim(self) -> int:
        return comb(self.ambient.m, self.grade)

    @cached_property
    def signs(self) -> np.ndarray:
        """Diagonal signs of the induced metric on the lex basis."""
        eps = self.ambient.eps
        out = np.array([np.prod(eps[list(I)]) for I in self.subsets])
        out.setflags(write=False)
        return out

    @cached_property
    def index(self) -> int:
        """Number of timelike basis multivectors (the q of E^N_q)."""
        return int(np.sum(self.signs < 0))

    def rank_of(self, subset) -> int:
        return subset_rank(self.ambient.m, subset)

    def zero(self) -> "Multivector":
        return Multivector(self, np.zeros(self.dim))

    def __str__(self) -> str:
        return f"Lambda^{self.grade} {self.ambient}"


@dataclass
class Multivector:
    """Dense grade-k multivector: coefficients on the lex subset basis."""

    space: WedgeSpace
    coeffs: np.ndarray

    def __post_init__(self):
        self.coeffs = np.asarray(self.coeffs, dtype=float)
        if self.coeffs.shape != (self.space.dim,):
            raise ValueError(
                f"expected {self.space.dim} coefficients, got shape "
                f"{self.coeffs.shape}"
            )

    def _check_space(self, other: "Multivector"):
        if self.space != other.space:
            raise ValueError("multivectors live in different wedge spaces")

    def __add__(self, other: "Multivector") -> "Multivector":
        self._check_space(other)
        return Multivector(self.space, self.coeffs + other.coeffs)

    def __sub__(self, other: "Multivector") -> "Multivector":
        self._check_space(other)
        return Multivector(self.space, self.coeffs - other.coeffs)

    def __mul__(self, scalar: float) -> "Multivector":
        return Multivector(self.space, self.coeffs * float(scalar))

    __rmul__ = __mul__

    def __neg__(self) -> "Multivector":
        return Multivector(self.space, -self.coeffs)

    def inner(self, other: "Multivector") -> float:
        """Indefinite inner product in the wedge space."""
        self._check_space(other)
        return float(self.coeffs @ (self.space.signs * other.coeffs))

    def norm_euclid(self) -> float:
        return float(np.linalg.norm(self.coeffs))


def wedge(space: WedgeSpace, vectors) -> Multivector:
    """Wedge product of ``grade`` ambient vectors.

    Coefficient on the basis subset ``I`` is the minor determinant of the
    stacked vectors restricted to the coordinates in ``I``.
    """
    arr = np.array([space.ambient.check_vector(v) for v in vectors])
    if arr.shape[0] != space.grade:
        raise ValueError(
            f"need exactly {space.grade} vectors, got {arr.shape[0]}"
        )
    idx = np.array(space.subsets)  # (N, k)
    minors = arr[:, idx]           # (k, N, k)
    minors = np.transpose(minors, (1, 0, 2))
    return Multivector(space, np.linalg.det(minors))


def mv_inner(a: Multivector, b: Multivector) -> float:
    """Induced indefinite inner product of two multivectors."""
    return a.inner(b)


def decomposable_inner(sig: Signature, avecs, bvecs) -> float:
    """Gram-determinant inner product of two decomposable multivectors.

    Reference formula for testing: equals
    ``mv_inner(wedge(space, avecs), wedge(space, bvecs))``.
    """
    gram = np.array([[sig.inner(f, g) for g in bvecs] for f in avecs])
    return float(np.linalg.det(gram))
