import numpy as np
import pytest

from psgauss.linalg import (
    DimensionMismatch,
    NullPivot,
    Signature,
    causal_character,
    extend_orthonormal,
    gram_schmidt_indefinite,
)


def test_signature_eps_layout():
    sig = Signature(5, 2)
    assert sig.eps.tolist() == [1.0, 1.0, 1.0, -1.0, -1.0]
    assert str(sig) == "E^5_2"


def test_signature_rejects_bad_index():
    with pytest.raises(ValueError):
        Signature(3, 4)
    with pytest.raises(ValueError):
        Signature(0, 0)


def test_inner_product_signs():
    sig = Signature(4, 1)
    v = np.array([1.0, 2.0, 0.0, 3.0])
    w = np.array([2.0, 0.0, 1.0, 1.0])
    assert sig.inner(v, w) == pytest.approx(1 * 2 + 0 + 0 - 3 * 1)
    assert sig.inner(v, v) == pytest.approx(1 + 4 - 9)


def test_inner_dimension_check():
    sig = Signature(3, 1)
    with pytest.raises(DimensionMismatch):
        sig.inner(np.ones(3), np.ones(4))


@pytest.mark.parametrize(
    "v, want",
    [
        (np.array([0.0, 0.0, 0.0, 0.0]), "zero"),
        (np.array([1.0, 0.0, 0.0, 1.0]), "null"),
        (np.array([1.0, 0.0, 0.0, 0.0]), "spacelike"),
        (np.array([0.5, 0.0, 0.0, 2.0]), "timelike"),
    ],
)
def test_causal_character(v, want):
    assert causal_character(Signature(4, 1), v) == want


def test_gram_schmidt_riemannian_matches_qr():
    rng = np.random.default_rng(3)
    sig = Signature(4, 0)
    vs = rng.normal(size=(3, 4))
    basis, eps = gram_schmidt_indefinite(sig, vs)
    assert np.all(eps == 1.0)
    G = np.array([[sig.inner(a, b) for b in basis] for a in basis])
    assert np.allclose(G, np.eye(3), atol=1e-12)
    # same span, triangular relation to the input
    for i, b in enumerate(basis):
        coeffs = np.linalg.lstsq(vs[: i + 1].T, b, rcond=None)[0]
        assert np.allclose(vs[: i + 1].T @ coeffs, b, atol=1e-10)


def test_gram_schmidt_lorentzian_eps_and_orthogonality():
    sig = Signature(4, 1)
    vs = [
        np.array([1.0, 0.2, 0.0, 0.1]),
        np.array([0.0, 1.0, 0.3, 0.0]),
        np.array([0.1, 0.0, 0.2, 2.0]),
    ]
    basis, eps = gram_schmidt_indefinite(sig, vs)
    assert eps.tolist() == [1.0, 1.0, -1.0]
    G = np.array([[sig.inner(a, b) for b in basis] for a in basis])
    assert np.allclose(G, np.diag(eps), atol=1e-12)


def test_gram_schmidt_null_pivot():
    sig = Signature(2, 1)
    with pytest.raises(NullPivot) as err:
        gram_schmidt_indefinite(sig, [np.array([1.0, 1.0])])
    assert err.value.index == 0


def test_extend_orthonormal_skips_null_and_dependent():
    sig = Signature(4, 1)
    basis = [np.array([1.0, 0.0, 0.0, 0.0])]
    eps = [1.0]
    candidates = [
        np.array([2.0, 0.0, 0.0, 0.0]),   # dependent, skipped
        np.array([0.0, 1.0, 0.0, 1.0]),   # null residual, skipped
        np.array([0.0, 1.0, 0.0, 0.0]),
        np.array([0.0, 0.0, 0.0, 1.0]),
    ]
    added, added_eps = extend_orthonormal(sig, basis, eps, candidates, 2)
    assert added_eps.tolist() == [1.0, -1.0]
    full = basis + added
    G = np.array([[sig.inner(a, b) for b in full] for a in full])
    assert np.allclose(G, np.diag([1.0, 1.0, -1.0]), atol=1e-12)


def test_extend_orthonormal_exhaustion():
    sig = Signature(3, 0)
    basis = [np.eye(3)[0]]
    with pytest.raises(NullPivot):
        extend_orthonormal(sig, basis, [1.0], [np.eye(3)[0] * 5.0], 1)
