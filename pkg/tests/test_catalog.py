import numpy as np
import pytest

from psgauss.catalog import (
    DomainSingularity,
    all_entries,
    catalog_names,
    chen_flat_surface,
    default_null_curve,
    get_entry,
    null_curve_validator,
    umbilical_hypersurface,
)
from psgauss.curvature import codazzi_residual, geometry_report
from psgauss.immersion import induced_metric, metric_index
from psgauss.linalg import Signature, causal_character


def interior_samples(imm, count=10, seed=13):
    rng = np.random.default_rng(seed)
    box = imm.interior_box(0.1)
    return [
        np.array([lo + rng.random() * (hi - lo) for lo, hi in box])
        for _ in range(count)
    ]


def test_names_sorted_and_unique():
    names = catalog_names()
    assert names == sorted(names)
    assert len(names) == len(set(names)) == 17


def test_unknown_name():
    with pytest.raises(KeyError) as err:
        get_entry("klein_bottle")
    assert "clifford_torus" in str(err.value)


@pytest.mark.parametrize("name", catalog_names())
def test_entry_lies_on_unit_sphere(name):
    entry = get_entry(name)
    imm = entry.immersion
    sig = imm.signature
    for u in interior_samples(imm):
        x = imm.value(u)
        assert abs(sig.inner(x, x) - 1.0) < 1e-10


@pytest.mark.parametrize("name", catalog_names())
def test_entry_metric_index(name):
    imm = get_entry(name).immersion
    for u in interior_samples(imm, count=5):
        assert metric_index(induced_metric(imm, u)) == imm.t


@pytest.mark.parametrize("name", catalog_names())
def test_entry_codazzi(name):
    imm = get_entry(name).immersion
    for u in interior_samples(imm, count=3):
        assert codazzi_residual(imm, u) < 1e-6


@pytest.mark.parametrize("name", catalog_names())
def test_entry_expected_scalars(name):
    entry = get_entry(name)
    imm = entry.immersion
    exp = entry.expected
    for u in interior_samples(imm, count=4, seed=21):
        r = geometry_report(imm, u)
        if "K" in exp:
            assert r.K == pytest.approx(exp["K"].value, abs=1e-8), name
        if "S" in exp:
            assert r.S == pytest.approx(exp["S"].value, abs=1e-8), name
        if "hsq_sphere" in exp:
            assert r.hsq_sphere == pytest.approx(
                exp["hsq_sphere"].value, abs=1e-8
            ), name
        if "alpha_hat_abs" in exp:
            assert abs(r.alpha_hat) == pytest.approx(
                exp["alpha_hat_abs"].value, abs=1e-8
            ), name
        if "RD_sup" in exp:
            assert r.RD_max <= exp["RD_sup"].value + 1e-8, name
        if "Hhat_character" in exp:
            got = causal_character(imm.signature, r.Hhat)
            assert got == exp["Hhat_character"].value, name


def test_all_entries_returns_entries():
    entries = all_entries()
    assert len(entries) == 17
    assert {e.name for e in entries} == set(catalog_names())


def test_null_curve_validator_accepts_default():
    curve = default_null_curve()
    grid = np.linspace(0.4, 2.6, 21)
    v = null_curve_validator(curve, grid)
    assert v["ok"]
    assert v["cone_violation"] < 1e-10
    assert v["speed_violation"] < 1e-10
    assert v["accel_violation"] < 1e-10
    assert v["third_derivative_min"] > 1e-6


def test_null_curve_validator_rejects_non_null():
    from psgauss.immersion import Factor, Term, TermChart
    from psgauss.catalog import NullCurve

    # ordinary circle: tangent is spacelike, not on the light cone
    chart = TermChart(1, (
        (Term(1.0, (Factor("cos", (1.0,)),)),),
        (Term(1.0, (Factor("sin", (1.0,)),)),),
        (Term(0.0, ()),),
        (Term(0.0, ()),),
        (Term(0.0, ()),),
    ))
    curve = NullCurve(chart, Signature(5, 2))
    v = null_curve_validator(curve, np.linspace(0.1, 2.0, 9))
    assert not v["ok"]
    assert v["cone_violation"] > 0.1


def test_chen_flat_domain_singularity():
    with pytest.raises(DomainSingularity):
        chen_flat_surface(domain=((-1.0, 1.0), (-1.0, 1.0)))


def test_umbilical_builder_guards():
    with pytest.raises(ValueError):
        # axis vector must be a signed coordinate direction
        umbilical_hypersurface(
            2, Signature(4, 1), np.array([1.0, 1.0, 0.0, 0.0]), 0.5
        )
    with pytest.raises(ValueError):
        # |<a,a>| must be 1
        umbilical_hypersurface(
            2, Signature(4, 1), 2.0 * np.eye(4)[1], 0.5
        )


def test_umbilical_null_axis_dispatches_to_horosphere():
    a = np.array([1.0, 0.0, 0.0, 1.0])
    entry = umbilical_hypersurface(2, Signature(4, 1), a, 1.0)
    assert entry.expected["verdict"].value == "biharmonic"


def test_expected_sources_are_tagged():
    for entry in all_entries():
        for key, e in entry.expected.items():
            assert e.source in ("literature", "elementary", "derived"), (
                entry.name, key,
            )
