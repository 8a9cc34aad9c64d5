import itertools

import numpy as np
import pytest

from psgauss.linalg import Signature
from psgauss.multivector import (
    Multivector,
    WedgeSpace,
    decomposable_inner,
    mv_inner,
    subset_rank,
    wedge,
)


def test_subset_rank_is_lex_position():
    m, k = 5, 3
    subsets = list(itertools.combinations(range(m), k))
    for pos, sub in enumerate(subsets):
        assert subset_rank(m, sub) == pos


def test_wedge_space_dimensions():
    space = WedgeSpace(Signature(5, 1), 3)
    assert space.dim == 10
    assert space.subsets[0] == (0, 1, 2)
    assert space.subsets[-1] == (2, 3, 4)


def test_wedge_antisymmetry():
    sig = Signature(4, 1)
    space = WedgeSpace(sig, 2)
    rng = np.random.default_rng(11)
    a, b = rng.normal(size=(2, 4))
    ab = wedge(space, [a, b])
    ba = wedge(space, [b, a])
    assert np.allclose(ab.coeffs, -ba.coeffs, atol=1e-14)
    aa = wedge(space, [a, a])
    assert aa.norm_euclid() < 1e-14


def test_wedge_multilinearity():
    sig = Signature(5, 2)
    space = WedgeSpace(sig, 3)
    rng = np.random.default_rng(12)
    a, b, c, d = rng.normal(size=(4, 5))
    lhs = wedge(space, [a, 2.0 * b + d, c])
    rhs = 2.0 * wedge(space, [a, b, c]) + wedge(space, [a, d, c])
    assert np.allclose(lhs.coeffs, rhs.coeffs, atol=1e-12)


def test_inner_matches_gram_determinant():
    # the induced metric on decomposables is the Gram determinant of the
    # ambient inner products
    sig = Signature(5, 1)
    space = WedgeSpace(sig, 3)
    rng = np.random.default_rng(13)
    for _ in range(5):
        avecs = rng.normal(size=(3, 5))
        bvecs = rng.normal(size=(3, 5))
        direct = decomposable_inner(sig, avecs, bvecs)
        via_coeffs = mv_inner(wedge(space, avecs), wedge(space, bvecs))
        assert direct == pytest.approx(via_coeffs, abs=1e-10)


def test_basis_multivector_signs():
    sig = Signature(4, 1)
    space = WedgeSpace(sig, 2)
    e = np.eye(4)
    spacelike = wedge(space, [e[0], e[1]])
    assert mv_inner(spacelike, spacelike) == pytest.approx(1.0)
    mixed = wedge(space, [e[0], e[3]])
    assert mv_inner(mixed, mixed) == pytest.approx(-1.0)


def test_arithmetic_and_space_mismatch():
    sig = Signature(4, 0)
    space = WedgeSpace(sig, 2)
    other = WedgeSpace(sig, 3)
    a = Multivector(space, np.arange(6, dtype=float))
    b = Multivector(space, np.ones(6))
    assert np.allclose((a + b - b).coeffs, a.coeffs)
    assert np.allclose((-a).coeffs, -a.coeffs)
    assert np.allclose((3 * a).coeffs, a.coeffs * 3)
    with pytest.raises(ValueError):
        a + Multivector(other, np.zeros(other.dim))


def test_coefficient_length_checked():
    space = WedgeSpace(Signature(4, 0), 2)
    with pytest.raises(ValueError):
        Multivector(space, np.zeros(5))
