import numpy as np
import pytest

from psgauss.catalog import catalog_names, get_entry
from psgauss.chartio import (
    ChartFormatError,
    dump_chart_text,
    load_chart_file,
    parse_chart_text,
    save_chart_file,
)

MINIMAL = """
label: test_circle_band
ambient: 3 0
params: u v
index: 0
domain: 0.3 2.8 ; 0.0 6.28
component: cos(u)
component: sin(u)*cos(v)
component: sin(u)*sin(v)
"""


def test_parse_minimal():
    imm = parse_chart_text(MINIMAL)
    assert imm.label == "test_circle_band"
    assert str(imm.signature) == "E^3_0"
    assert imm.n == 2 and imm.t == 0
    u = np.array([0.8, 1.1])
    want = np.array(
        [np.cos(0.8), np.sin(0.8) * np.cos(1.1), np.sin(0.8) * np.sin(1.1)]
    )
    assert np.allclose(imm.value(u), want, atol=1e-15)


def test_parse_linear_arguments_and_powers():
    text = """
label: mixed
ambient: 2 0
params: u v
index: 0
domain: 0.2 1.0 ; 0.2 1.0
component: 2.5*sin(0.4*u + 0.3*v + 0.2) + poly3(u - v + 2.0)
component: poly-1(u + v) + cosh(v)
"""
    imm = parse_chart_text(text)
    u = np.array([0.5, 0.7])
    want0 = 2.5 * np.sin(0.4 * 0.5 + 0.3 * 0.7 + 0.2) + (0.5 - 0.7 + 2.0) ** 3
    want1 = 1.0 / (0.5 + 0.7) + np.cosh(0.7)
    assert imm.value(u)[0] == pytest.approx(want0, abs=1e-14)
    assert imm.value(u)[1] == pytest.approx(want1, abs=1e-14)


@pytest.mark.parametrize(
    "mutation",
    [
        ("ambient: 3 0", "ambient: three 0"),
        ("index: 0", "index: q"),
        ("component: cos(u)", "component: tan(u)"),
        ("domain: 0.3 2.8 ; 0.0 6.28", "domain: 0.3 ; 0.0 6.28"),
        ("params: u v", ""),
    ],
)
def test_parse_errors(mutation):
    old, new = mutation
    with pytest.raises(ChartFormatError):
        parse_chart_text(MINIMAL.replace(old, new))


def test_all_catalog_charts_round_trip():
    # serialization must preserve values, derivatives and frame seeds
    rng = np.random.default_rng(5)
    for name in catalog_names():
        imm = get_entry(name).immersion
        imm2 = parse_chart_text(dump_chart_text(imm))
        assert imm2.signature == imm.signature
        assert imm2.t == imm.t and imm2.n == imm.n
        box = imm.interior_box(0.05)
        for _ in range(10):
            u = np.array([lo + rng.random() * (hi - lo) for lo, hi in box])
            assert np.max(np.abs(imm.value(u) - imm2.value(u))) < 1e-12
            for ax in range(imm.n):
                d = np.abs(imm.partial(u, (ax,)) - imm2.partial(u, (ax,)))
                assert np.max(d) < 1e-12
        if imm.tangent_seed is not None:
            assert np.allclose(
                imm2.tangent_seed, np.asarray(imm.tangent_seed, dtype=float)
            )
        assert len(imm2.normal_seeds) == len(imm.normal_seeds)


def test_save_and_load_file(tmp_path):
    imm = get_entry("chen_flat").immersion
    path = tmp_path / "chen.chart"
    save_chart_file(path, imm)
    imm2 = load_chart_file(path)
    u = np.array([0.8, 1.2])
    assert np.allclose(imm2.value(u), imm.value(u), atol=1e-14)
    # second derivatives go through the reciprocal power factor
    assert np.allclose(
        imm2.partial(u, (0, 1)), imm.partial(u, (0, 1)), atol=1e-13
    )
