import numpy as np
import pytest

from psgauss.curvature import (
    codazzi_residual,
    geometry_report,
    marginally_trapped,
    mean_curvature,
    normal_curvature,
    normal_derivative_mean,
    scalar_curvature,
    second_fundamental_form,
    shape_operator,
    squared_norm_h,
)
from psgauss.immersion import adapted_frame
from psgauss.catalog import get_entry


def test_position_is_umbilic_normal(skewed_graph, probe_points):
    # the sphere position acts as a unit normal with shape operator -identity,
    # i.e. h^x_ij = -eps_i delta_ij
    imm = skewed_graph
    for u in probe_points:
        frame = adapted_frame(imm, u)
        h = second_fundamental_form(imm, u, frame)
        hx = h[-1]
        want = -np.diag(frame.eps_tangent)
        assert np.allclose(hx, want, atol=1e-10)


def test_second_fundamental_form_symmetric(skewed_graph, veronese,
                                            probe_points):
    for imm in (skewed_graph, veronese):
        for u in probe_points:
            frame = adapted_frame(imm, u)
            h = second_fundamental_form(imm, u, frame)
            assert np.allclose(h, np.transpose(h, (0, 2, 1)), atol=1e-10)


def test_round_sphere_geometry():
    # geodesic 2-sphere inside the 4-sphere: totally geodesic, K = 1
    entry = get_entry("equator_s2_m5s1")
    imm = entry.immersion
    u = np.array([1.0, 2.0])
    r = geometry_report(imm, u)
    assert r.K == pytest.approx(1.0, abs=1e-12)
    assert r.S == pytest.approx(2.0, abs=1e-12)
    assert r.hsq_sphere == pytest.approx(0.0, abs=1e-12)
    assert r.hsq_ambient == pytest.approx(2.0, abs=1e-12)
    assert np.linalg.norm(r.Hhat) < 1e-12


def test_gauss_equation_consistency(skewed_graph, probe_points):
    # S = n(n-1) + n^2 <H^,H^> - |h^|^2 must match the report values
    imm = skewed_graph
    n = imm.n
    for u in probe_points:
        r = geometry_report(imm, u)
        HH = imm.signature.inner(r.Hhat, r.Hhat)
        S_pred = n * (n - 1) + n * n * HH - r.hsq_sphere
        assert r.S == pytest.approx(S_pred, abs=1e-10)
        assert r.K == pytest.approx(r.S / (n * (n - 1)), abs=1e-12)


def test_mean_curvature_trace(veronese, probe_points):
    imm = veronese
    for u in probe_points:
        frame = adapted_frame(imm, u)
        h = second_fundamental_form(imm, u, frame)
        H, Hhat, alpha = mean_curvature(frame, h)
        # traces against the sphere normals vanish for a minimal surface
        assert np.linalg.norm(Hhat) < 1e-10
        # full mean vector keeps the position contribution: H = Hhat - x
        assert np.allclose(H, Hhat - frame.x, atol=1e-10)
        assert alpha is None  # not a hypersurface of the sphere


def test_squared_norms_offset(skewed_graph, probe_points):
    imm = skewed_graph
    for u in probe_points:
        frame = adapted_frame(imm, u)
        h = second_fundamental_form(imm, u, frame)
        full = squared_norm_h(frame, h, spherical=False)
        sphere = squared_norm_h(frame, h, spherical=True)
        assert full - sphere == pytest.approx(imm.n, abs=1e-10)


def test_normal_curvature_veronese(veronese, probe_points):
    # constant curvature of the normal bundle, nonzero
    imm = veronese
    for u in probe_points:
        frame = adapted_frame(imm, u)
        h = second_fundamental_form(imm, u, frame)
        RD = normal_curvature(frame, h)
        assert np.max(np.abs(RD)) == pytest.approx(2.0 / 3.0, abs=1e-10)
        # antisymmetry in both index pairs
        assert np.allclose(RD, -np.transpose(RD, (1, 0, 2, 3)), atol=1e-12)
        assert np.allclose(RD, -np.transpose(RD, (0, 1, 3, 2)), atol=1e-12)


def test_normal_derivative_mean_detects_variation(skewed_graph, veronese):
    u = np.array([0.7, 0.8])
    fr_s = adapted_frame(skewed_graph, u)
    h_s = second_fundamental_form(skewed_graph, u, fr_s)
    DH = normal_derivative_mean(skewed_graph, u, fr_s)
    assert np.max(np.abs(DH)) > 0.1
    DH_v = normal_derivative_mean(veronese, u, adapted_frame(veronese, u))
    assert np.max(np.abs(DH_v)) < 1e-8


def test_codazzi_residual_small(skewed_graph, veronese, probe_points):
    for imm in (skewed_graph, veronese):
        for u in probe_points:
            assert codazzi_residual(imm, u) < 1e-6


def test_codazzi_residual_detects_perturbation(skewed_graph):
    # sanity: the residual is a live check, not identically zero
    u = np.array([0.7, 0.9])
    clean = codazzi_residual(skewed_graph, u)
    bumped = codazzi_residual(skewed_graph, u, perturb=(0, 0, 1, 1e-3))
    assert bumped > max(10 * clean, 1e-5)


def test_marginally_trapped_predicate():
    entry = get_entry("marginally_trapped")
    imm = entry.immersion
    u = np.array([0.4, 1.0])
    r = geometry_report(imm, u)
    assert marginally_trapped(imm, r.Hhat)
    assert np.linalg.norm(r.Hhat) > 0.5
    # a non-null mean vector is not trapped
    imm2 = get_entry("umbilical_cap_de_sitter").immersion
    r2 = geometry_report(imm2, np.array([0.3, 0.6]))
    assert not marginally_trapped(imm2, r2.Hhat)


def test_shape_operator_umbilical():
    entry = get_entry("umbilical_cap_de_sitter")
    imm = entry.immersion
    u = np.array([0.3, 0.6])
    frame = adapted_frame(imm, u)
    h = second_fundamental_form(imm, u, frame)
    A = shape_operator(frame, h, 0)
    off = A - A[0, 0] * np.eye(2)
    assert np.max(np.abs(off)) < 1e-10
