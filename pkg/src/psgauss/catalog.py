"""Built-in catalog of explicit pseudo-spherical immersions.

Each entry couples a chart with an expected-results record used by the
verification harness.  Expected values carry a source tag:

    literature - stated in the source results the entry reproduces
    elementary - immediate from the definition (e.g. the sphere constraint)
    derived    - worked out independently for this toolkit and frozen here

Families: product tori (Clifford and its Lorentzian analog), a marginally
trapped surface with null parallel mean curvature, flat horospheres cut by
null hyperplanes, totally umbilical hypersurface slices, totally geodesic
equators, and a flat Lorentzian surface ruled over a null curve.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .immersion import (
    Factor,
    Immersion,
    Term,
    TermChart,
    differentiate_term_chart,
    lift_curve_chart,
)
from .linalg import Signature

__all__ = [
    "Expectation",
    "CatalogEntry",
    "NullCurve",
    "DomainSingularity",
    "clifford_torus",
    "clifford_torus_s3",
    "pr_clifford_torus",
    "marginally_trapped_surface",
    "horosphere",
    "umbilical_hypersurface",
    "totally_geodesic_equator",
    "umbilical_sphere_codim2",
    "default_null_curve",
    "null_curve_validator",
    "chen_flat_surface",
    "catalog_names",
    "get_entry",
    "all_entries",
]

TWO_PI = 2.0 * np.pi
R2 = 1.0 / np.sqrt(2.0)


class DomainSingularity(ValueError):
    """The requested domain touches a singular locus of the chart."""


@dataclass(frozen=True)
class Expectation:
    value: object
    source: str  # literature | elementary | derived
    tol: float | None = None


@dataclass
class CatalogEntry:
    name: str
    immersion: Immersion
    expected: dict = field(default_factory=dict)
    notes: str = ""


# --- term-chart building helpers -------------------------------------------


def F(kind, lin, phase=0.0, power=1):
    return Factor(kind, tuple(float(a) for a in lin), float(phase), power)


def T(coef, *factors):
    return Term(float(coef), tuple(factors))


def _chart(nparams, components) -> TermChart:
    return TermChart(nparams, tuple(tuple(c) for c in components))


def _scaled(chart: TermChart, s: float) -> TermChart:
    comps = tuple(
        tuple(Term(t.coef * s, t.factors) for t in comp)
        for comp in chart.components
    )
    return TermChart(chart.nparams, comps)


def _affine_seed(chart: TermChart, const_vec, chart_scale: float) -> TermChart:
    """Seed field const_vec + chart_scale * x(u) as a term chart."""
    comps = []
    for j, comp in enumerate(chart.components):
        terms = []
        if const_vec[j] != 0.0:
            terms.append(Term(float(const_vec[j])))
        terms.extend(Term(t.coef * chart_scale, t.factors) for t in comp)
        comps.append(tuple(terms))
    return TermChart(chart.nparams, tuple(comps))


def _axis(lin_len, i):
    lin = [0.0] * lin_len
    lin[i] = 1.0
    return tuple(lin)


def _sphere_components(nd: int):
    """Nested-angle unit sphere chart in nd parameters, nd+1 components."""
    comps = []
    for k in range(nd + 1):
        factors = [F("sin", _axis(nd, i)) for i in range(min(k, nd))]
        if k < nd:
            factors.append(F("cos", _axis(nd, k)))
        comps.append((Term(1.0, tuple(factors)),))
    return comps


_SPHERE_DOMAIN = {
    2: ((0.4, 2.7), (0.0, TWO_PI)),
    3: ((0.4, 2.7), (0.4, 2.7), (0.0, TWO_PI)),
}

# de Sitter S^2_1 slice chart: (cosh w cos u, cosh w sin u | sinh w),
# parameters (u, w), third component on a timelike slot
_DS_SPACE = lambda: [
    (T(1.0, F("cosh", (0, 1)), F("cos", (1, 0))),),
    (T(1.0, F("cosh", (0, 1)), F("sin", (1, 0))),),
]
_DS_TIME = lambda: (T(1.0, F("sinh", (0, 1))),)
_DS_DOMAIN = ((0.0, TWO_PI), (-1.2, 1.2))

# hyperbolic H^2 chart: (sinh w cos u, sinh w sin u | cosh w), <y,y> = -1
_HYP_SPACE = lambda: [
    (T(1.0, F("sinh", (0, 1)), F("cos", (1, 0))),),
    (T(1.0, F("sinh", (0, 1)), F("sin", (1, 0))),),
]
_HYP_TIME = lambda: (T(1.0, F("cosh", (0, 1))),)
_HYP_DOMAIN = ((0.0, TWO_PI), (0.5, 1.5))


def _coordinate_seeds(m, slots):
    return tuple(np.eye(m)[j] for j in slots)


# --- product tori -----------------------------------------------------------


def clifford_torus() -> CatalogEntry:
    """Product of two circles of radius 1/sqrt(2), padded by a zero timelike
    coordinate so it sits inside the Lorentzian 4-sphere."""
    sig = Signature(5, 1)
    comps = [
        (T(R2, F("cos", (1, 0))),),
        (T(R2, F("sin", (1, 0))),),
        (T(R2, F("cos", (0, 1))),),
        (T(R2, F("sin", (0, 1))),),
        (),
    ]
    chart = _chart(2, comps)
    seed1 = _chart(2, [
        (T(R2, F("cos", (1, 0))),),
        (T(R2, F("sin", (1, 0))),),
        (T(-R2, F("cos", (0, 1))),),
        (T(-R2, F("sin", (0, 1))),),
        (),
    ])
    imm = Immersion(
        signature=sig,
        n=2,
        t=0,
        domain=((0.0, TWO_PI), (0.0, TWO_PI)),
        chart=chart,
        label="clifford_torus",
        normal_seeds=(seed1, np.eye(5)[4]),
    )
    expected = {
        "verdict": Expectation("one_type_through_origin", "literature"),
        "lambda_p": Expectation(2.0, "literature"),       # literature: eigenvalue 2
        "K": Expectation(0.0, "literature"),              # literature: flat
        "Hhat_character": Expectation("zero", "literature"),
        "RD_sup": Expectation(0.0, "literature"),
        "hsq_sphere": Expectation(2.0, "derived"),        # derived: two unit principal curvatures
        "S": Expectation(0.0, "derived"),
    }
    return CatalogEntry("clifford_torus", imm, expected)


def clifford_torus_s3() -> CatalogEntry:
    """Same torus in its minimal ambient, the round 3-sphere in E^4."""
    sig = Signature(4, 0)
    comps = [
        (T(R2, F("cos", (1, 0))),),
        (T(R2, F("sin", (1, 0))),),
        (T(R2, F("cos", (0, 1))),),
        (T(R2, F("sin", (0, 1))),),
    ]
    seed1 = _chart(2, [
        (T(R2, F("cos", (1, 0))),),
        (T(R2, F("sin", (1, 0))),),
        (T(-R2, F("cos", (0, 1))),),
        (T(-R2, F("sin", (0, 1))),),
    ])
    imm = Immersion(
        signature=sig,
        n=2,
        t=0,
        domain=((0.0, TWO_PI), (0.0, TWO_PI)),
        chart=_chart(2, comps),
        label="clifford_torus_s3",
        normal_seeds=(seed1,),
    )
    expected = {
        "verdict": Expectation("one_type_through_origin", "literature"),
        "lambda_p": Expectation(2.0, "literature"),
        "K": Expectation(0.0, "literature"),
        "Hhat_character": Expectation("zero", "literature"),
        "RD_sup": Expectation(0.0, "elementary"),         # elementary: single normal
        "hsq_sphere": Expectation(2.0, "derived"),
        "S": Expectation(0.0, "derived"),
    }
    return CatalogEntry("clifford_torus_s3", imm, expected)


def pr_clifford_torus() -> CatalogEntry:
    """Lorentzian product torus S^1(1/sqrt2) x S^1_1(1/sqrt2) in S^4_1."""
    sig = Signature(5, 1)
    comps = [
        (),
        (T(R2, F("cos", (1, 0))),),
        (T(R2, F("sin", (1, 0))),),
        (T(R2, F("cosh", (0, 1))),),
        (T(R2, F("sinh", (0, 1))),),
    ]
    seed1 = _chart(2, [
        (),
        (T(R2, F("cos", (1, 0))),),
        (T(R2, F("sin", (1, 0))),),
        (T(-R2, F("cosh", (0, 1))),),
        (T(-R2, F("sinh", (0, 1))),),
    ])
    imm = Immersion(
        signature=sig,
        n=2,
        t=1,
        domain=((0.0, TWO_PI), (-1.5, 1.5)),
        chart=_chart(2, comps),
        label="pr_clifford_torus",
        normal_seeds=(seed1, np.eye(5)[0]),
    )
    expected = {
        "verdict": Expectation("one_type_through_origin", "literature"),
        "lambda_p": Expectation(2.0, "literature"),
        "K": Expectation(0.0, "literature"),              # literature: zero Gaussian curvature
        "Hhat_character": Expectation("zero", "literature"),
        "RD_sup": Expectation(0.0, "literature"),         # literature: zero normal curvature
        "hsq_sphere": Expectation(2.0, "derived"),
        "S": Expectation(0.0, "derived"),
    }
    return CatalogEntry("pr_clifford_torus", imm, expected)


# --- marginally trapped surface --------------------------------------------


def marginally_trapped_surface() -> CatalogEntry:
    """Spacelike surface with null, parallel mean curvature vector.

    Chart (1, sin u, cos u cos v, cos u sin v, 1) in E^5_1, away from
    cos u = 0.  Its Gauss map is 1-type with a nonzero constant component.
    """
    sig = Signature(5, 1)
    comps = [
        (T(1.0),),
        (T(1.0, F("sin", (1, 0))),),
        (T(1.0, F("cos", (1, 0)), F("cos", (0, 1))),),
        (T(1.0, F("cos", (1, 0)), F("sin", (0, 1))),),
        (T(1.0),),
    ]
    # spacelike/timelike normal pair: (-1, sin u, cos u cos v, cos u sin v, 0)
    # and (1, sin u, cos u cos v, cos u sin v, 2), both scaled by 1/sqrt(2)
    seed3 = _chart(2, [
        (T(-R2),),
        (T(R2, F("sin", (1, 0))),),
        (T(R2, F("cos", (1, 0)), F("cos", (0, 1))),),
        (T(R2, F("cos", (1, 0)), F("sin", (0, 1))),),
        (),
    ])
    seed4 = _chart(2, [
        (T(R2),),
        (T(R2, F("sin", (1, 0))),),
        (T(R2, F("cos", (1, 0)), F("cos", (0, 1))),),
        (T(R2, F("cos", (1, 0)), F("sin", (0, 1))),),
        (T(2.0 * R2),),
    ])
    imm = Immersion(
        signature=sig,
        n=2,
        t=0,
        domain=((-1.2, 1.2), (0.0, TWO_PI)),
        chart=_chart(2, comps),
        label="marginally_trapped",
        normal_seeds=(seed3, seed4),
    )
    expected = {
        "verdict": Expectation("one_type_with_constant", "literature"),
        "lambda_p": Expectation(2.0, "literature"),
        "K": Expectation(1.0, "literature"),
        "Hhat_character": Expectation("null", "literature"),
        "RD_sup": Expectation(0.0, "literature"),
        "hsq_sphere": Expectation(0.0, "derived"),        # derived: the two shape traces cancel
        "S": Expectation(2.0, "derived"),
        "shape_diag": Expectation(-R2, "literature"),     # literature: both shape operators -I/sqrt2
        "omega12_plus_tan": Expectation(0.0, "literature"),
        "c_constant": Expectation(True, "literature"),
    }
    return CatalogEntry("marginally_trapped", imm, expected)


# --- null-pair (paraboloid) charts ------------------------------------------


def _null_pair(sig: Signature, a: np.ndarray):
    """Deterministic partner b with <a,b> = 1, <b,b> = 0 for null a."""
    mirror = sig.eps * a
    nrm = float(a @ a)
    if nrm < 1e-24:
        raise ValueError("a must be a nonzero null vector")
    return mirror / nrm


def _paraboloid_immersion(n: int, sig: Signature, a, tau: float, label: str):
    """Chart x(w) = ((1 - <w,w>)/(2 tau)) a + tau b + w over the complement
    of the null plane span{a, b}."""
    a = np.asarray(a, dtype=float)
    sig.check_vector(a)
    if abs(sig.inner(a, a)) > 1e-12:
        raise ValueError("a must be null")
    if tau == 0.0:
        raise ValueError("tau must be nonzero")
    b = _null_pair(sig, a)
    m = sig.m
    fvecs = []
    eps_f = []
    for j in range(m):
        v = np.eye(m)[j]
        v = v - sig.inner(v, b) * a - sig.inner(v, a) * b
        for w, ew in zip(fvecs, eps_f):
            v = v - ew * sig.inner(v, w) * w
        q = sig.inner(v, v)
        if abs(q) < 1e-12:
            continue
        fvecs.append(v / np.sqrt(abs(q)))
        eps_f.append(1.0 if q > 0 else -1.0)
    if len(fvecs) != m - 2:
        raise ValueError("could not complete the null pair to a frame")
    if n != m - 2:
        raise ValueError(f"paraboloid chart needs n = m - 2 = {m - 2}")
    comps = []
    for j in range(m):
        terms = []
        c0 = a[j] / (2.0 * tau) + tau * b[j]
        if c0 != 0.0:
            terms.append(Term(float(c0)))
        for i in range(n):
            if a[j] != 0.0:
                terms.append(
                    Term(
                        -eps_f[i] * a[j] / (2.0 * tau),
                        (F("poly", _axis(n, i), power=2),),
                    )
                )
            if fvecs[i][j] != 0.0:
                terms.append(
                    Term(float(fvecs[i][j]), (F("poly", _axis(n, i)),))
                )
        comps.append(tuple(terms))
    chart = _chart(n, comps)
    t = sum(1 for e in eps_f if e < 0)
    seed = _affine_seed(chart, a / tau, -1.0)  # (a - tau x)/tau
    domain = tuple((-0.9, 0.9) for _ in range(n))
    imm = Immersion(
        signature=sig,
        n=n,
        t=t,
        domain=domain,
        chart=chart,
        label=label,
        normal_seeds=(seed,),
    )
    return imm


def horosphere(n: int, ambient: Signature, a, tau: float) -> CatalogEntry:
    """Flat totally umbilical hypersurface cut by a null hyperplane."""
    name = f"horosphere_n{n}"
    imm = _paraboloid_immersion(n, ambient, a, tau, name)
    expected = {
        "verdict": Expectation("biharmonic", "literature"),
        "K": Expectation(0.0, "literature"),              # literature: flat
        "Hhat_character": Expectation("timelike", "derived"),
        "RD_sup": Expectation(0.0, "elementary"),
        "hsq_sphere": Expectation(-float(n), "literature"),
        "alpha_hat_abs": Expectation(1.0, "literature"),
        "S": Expectation(0.0, "derived"),
        "bilaplacian_zero": Expectation(True, "literature"),
    }
    return CatalogEntry(name, imm, expected)


# --- totally umbilical slices ----------------------------------------------


def _slice_chart(sig: Signature, axis: int, beta: float, rho: float, eta: int):
    """Chart beta*a + rho*y with y a unit (eta=+1) or hyperbolic (eta=-1)
    2-surface chart in the coordinates other than ``axis``."""
    m = sig.m
    rest = [j for j in range(m) if j != axis]
    eps_rest = [sig.eps[j] for j in rest]
    n_time = sum(1 for e in eps_rest if e < 0)
    if eta > 0 and n_time == 0:
        y_comps = _sphere_components(2)
        slot_order = rest
        domain = _SPHERE_DOMAIN[2]
        t = 0
    elif eta > 0 and n_time == 1:
        space = [j for j in rest if sig.eps[j] > 0]
        time = [j for j in rest if sig.eps[j] < 0]
        if len(space) != 2:
            raise ValueError("unsupported slice signature")
        y_comps = _DS_SPACE() + [_DS_TIME()]
        slot_order = space + time
        domain = _DS_DOMAIN
        t = 1
    elif eta < 0 and n_time == 1:
        space = [j for j in rest if sig.eps[j] > 0]
        time = [j for j in rest if sig.eps[j] < 0]
        if len(space) != 2:
            raise ValueError("unsupported slice signature")
        y_comps = _HYP_SPACE() + [_HYP_TIME()]
        slot_order = space + time
        domain = _HYP_DOMAIN
        t = 0
    else:
        raise ValueError(
            f"no slice chart for eta={eta} with {n_time} timelike "
            f"complement directions"
        )
    comps = [[] for _ in range(m)]
    if beta != 0.0:
        comps[axis].append(Term(float(beta)))
    for slot, terms in zip(slot_order, y_comps):
        comps[slot].extend(Term(t_.coef * rho, t_.factors) for t_ in terms)
    return _chart(2, comps), domain, t


def umbilical_hypersurface(
    n: int, ambient: Signature, a, tau: float, name: str | None = None
) -> CatalogEntry:
    """Totally umbilical hypersurface slice {<x, a> = tau} of the pseudo-sphere.

    ``a`` must be null (paraboloid chart, delegated to the horosphere
    builder) or a signed coordinate axis with <a,a> = +-1.  The slice has
    constant curvature K = 1 + tau^2/(<a,a> - tau^2) and shape operator
    (tau/sqrt|<a,a> - tau^2|) I.
    """
    a = np.asarray(a, dtype=float)
    sig = ambient
    aa = sig.inner(a, a)
    if abs(aa) < 1e-12:
        return horosphere(n, ambient, a, tau)
    if abs(abs(aa) - 1.0) > 1e-12:
        raise ValueError("<a,a> must be -1, 0 or 1")
    nz = np.flatnonzero(np.abs(a) > 1e-12)
    if len(nz) != 1 or abs(abs(a[nz[0]]) - 1.0) > 1e-12:
        raise ValueError("a must be a signed coordinate axis vector")
    if n != 2:
        raise ValueError("only 2-dimensional slices are built in")
    delta = aa - tau * tau
    if abs(delta) < 1e-9:
        raise ValueError("<a,a> - tau^2 must be nonzero")
    axis = int(nz[0])
    beta = tau / aa * a[axis]  # coefficient on the coordinate axis itself
    rho_sq = delta / aa
    eta = 1 if rho_sq > 0 else -1
    rho = float(np.sqrt(abs(rho_sq)))
    chart, domain, t = _slice_chart(sig, axis, beta, rho, eta)
    scale = 1.0 / np.sqrt(abs(delta))
    seed = _affine_seed(chart, scale * a, -tau * scale)  # (a - tau x)/sqrt|delta|
    if name is None:
        name = f"umbilical_axis{axis}_tau{tau}"
    imm = Immersion(
        signature=sig,
        n=n,
        t=t,
        domain=domain,
        chart=chart,
        label=name,
        normal_seeds=(seed,),
    )
    K = 1.0 + tau * tau / delta                      # literature: curvature of the slice
    lam = n * K                                      # literature: n(1 + eps alpha^2)
    alpha_abs = abs(tau) / np.sqrt(abs(delta))
    hh = tau * tau / delta                           # <Hhat, Hhat> = eps_N alpha^2
    if tau == 0.0:
        verdict, character = "harmonic", "zero"
    else:
        verdict = "one_type_with_constant"
        character = "spacelike" if hh > 0 else "timelike"
    expected = {
        "verdict": Expectation(verdict, "literature"),
        "lambda_p": Expectation(lam, "derived"),
        "K": Expectation(K, "literature"),
        "Hhat_character": Expectation(character, "derived"),
        "RD_sup": Expectation(0.0, "elementary"),
        "hsq_sphere": Expectation(n * hh, "derived"),
        "alpha_hat_abs": Expectation(alpha_abs, "literature"),
        "S": Expectation(n * (n - 1) * K, "derived"),
        "c_constant": Expectation(True, "literature"),
        "decomposition_match": Expectation(True, "literature"),
    }
    return CatalogEntry(name, imm, expected)


# six parameter settings spanning the timelike / spacelike-inside /
# spacelike-outside slice cases, plus both Lorentzian-slice variants
_UMBILICAL_SETTINGS = {
    # name: (ambient, axis vector, tau); derived: lambda values
    "umbilical_cap_de_sitter": (Signature(4, 1), (0, 0, 0, 1.0), 0.5),    # derived: lambda 1.6
    "umbilical_cap_de_sitter_wide": (Signature(4, 1), (0, 0, 0, 1.0), 0.8),  # derived: lambda 50/41
    "umbilical_small_sphere": (Signature(4, 0), (0, 0, 0, 1.0), 0.6),     # derived: lambda 3.125
    "umbilical_hyperbolic_plane": (Signature(4, 1), (0, 0, 1.0, 0), 1.5),  # derived: lambda -1.6
    "umbilical_de_sitter_slice": (Signature(4, 1), (0, 0, 1.0, 0), R2),   # derived: lambda 4
    "umbilical_lorentz_cap": (Signature(4, 2), (0, 0, 0, 1.0), 1.0),      # derived: lambda 1
}


def umbilical_sphere_codim2() -> CatalogEntry:
    """Small sphere S^2(4/3) inside a totally geodesic S^3 of S^4_1.

    Codimension 3 in the ambient: exercises the decomposition identities
    beyond the hypersurface case.  tau = 1/2 about a spacelike axis.
    """
    sig = Signature(5, 1)
    tau = 0.5
    delta = 1.0 - tau * tau
    rho = float(np.sqrt(delta))
    y = _sphere_components(2)
    comps = [[] for _ in range(5)]
    for slot, terms in zip((0, 1, 2), y):
        comps[slot].extend(Term(t_.coef * rho, t_.factors) for t_ in terms)
    comps[3].append(Term(tau))
    chart = _chart(2, comps)
    a = np.array([0.0, 0.0, 0.0, 1.0, 0.0])
    scale = 1.0 / np.sqrt(delta)
    seed1 = _affine_seed(chart, scale * a, -tau * scale)
    imm = Immersion(
        signature=sig,
        n=2,
        t=0,
        domain=_SPHERE_DOMAIN[2],
        chart=chart,
        label="umbilical_sphere_codim2",
        normal_seeds=(seed1, np.eye(5)[4]),
    )
    K = 1.0 + tau * tau / delta  # 4/3
    hh = tau * tau / delta       # 1/3
    expected = {
        "verdict": Expectation("one_type_with_constant", "literature"),
        "lambda_p": Expectation(2.0 * K, "derived"),      # derived: 8/3
        "K": Expectation(K, "literature"),
        "Hhat_character": Expectation("spacelike", "derived"),
        "RD_sup": Expectation(0.0, "derived"),
        "hsq_sphere": Expectation(2.0 * hh, "derived"),
        "S": Expectation(2.0 * K, "derived"),
        "c_constant": Expectation(True, "literature"),
        "decomposition_match": Expectation(True, "literature"),
    }
    return CatalogEntry("umbilical_sphere_codim2", imm, expected)


# --- totally geodesic equators ----------------------------------------------


def totally_geodesic_equator(n: int, t: int, ambient: Signature) -> CatalogEntry:
    """Coordinate great-sphere of dimension n and index t; harmonic Gauss map."""
    if n != 2 or t not in (0, 1):
        raise ValueError("built-in equators cover n = 2, t in {0, 1}")
    sig = ambient
    m = sig.m
    if t == 0:
        if sig.m - sig.s < 3:
            raise ValueError("need 3 spacelike coordinates")
        slots = [0, 1, 2]
        y_comps = _sphere_components(2)
        domain = _SPHERE_DOMAIN[2]
    else:
        if sig.s < 1 or sig.m - sig.s < 2:
            raise ValueError("need 2 spacelike and 1 timelike coordinate")
        slots = [0, 1, m - 1]
        y_comps = _DS_SPACE() + [_DS_TIME()]
        domain = _DS_DOMAIN
    comps = [[] for _ in range(m)]
    for slot, terms in zip(slots, y_comps):
        comps[slot].extend(terms)
    unused = [j for j in range(m) if j not in slots]
    name = f"equator_s2{'1' if t else ''}_m{m}s{sig.s}"
    imm = Immersion(
        signature=sig,
        n=n,
        t=t,
        domain=domain,
        chart=_chart(2, comps),
        label=name,
        normal_seeds=_coordinate_seeds(m, unused),
    )
    expected = {
        "verdict": Expectation("harmonic", "literature"),
        "K": Expectation(1.0, "elementary"),
        "Hhat_character": Expectation("zero", "elementary"),
        "RD_sup": Expectation(0.0, "elementary"),
        "hsq_sphere": Expectation(0.0, "elementary"),     # elementary: totally geodesic
        "S": Expectation(float(n * (n - 1)), "literature"),
    }
    return CatalogEntry(name, imm, expected)


# --- flat Lorentzian surface over a null curve -------------------------------


@dataclass(frozen=True)
class NullCurve:
    """Curve z(u) in the light cone with constant speed 2, cubic-order data."""

    z: TermChart  # one-parameter chart
    ambient: Signature

    def derivative(self, order: int) -> TermChart:
        c = self.z
        for _ in range(order):
            c = differentiate_term_chart(c, 0)
        return c


def default_null_curve() -> NullCurve:
    """sqrt(2) (cos u, sin u, sinh u, cosh u, 0) in E^5_2.

    Constraint check (signs +,+,+,-,-): <z,z> = 2(1 + sinh^2 - cosh^2) = 0,
    <z',z'> = 2(1 + cosh^2 - sinh^2) = 4, <z'',z''> = 2(1 + sinh^2 - cosh^2)
    = 0, z''' = sqrt(2)(sin, -cos, cosh, sinh, 0) never vanishes.
    """
    s2 = float(np.sqrt(2.0))
    comps = [
        (T(s2, F("cos", (1,))),),
        (T(s2, F("sin", (1,))),),
        (T(s2, F("sinh", (1,))),),
        (T(s2, F("cosh", (1,))),),
        (),
    ]
    return NullCurve(z=TermChart(1, tuple(comps)), ambient=Signature(5, 2))


def null_curve_validator(curve: NullCurve, grid) -> dict:
    """Sup-norm violations of the light-cone curve constraints over a grid."""
    sig = curve.ambient
    z0 = curve.z
    z1 = curve.derivative(1)
    z2 = curve.derivative(2)
    z3 = curve.derivative(3)
    cone = speed = accel = 0.0
    jerk_min = np.inf
    for u in grid:
        u = np.atleast_1d(np.asarray(u, dtype=float))
        a = z0.value(u)
        b = z1.value(u)
        c = z2.value(u)
        d = z3.value(u)
        cone = max(cone, abs(sig.inner(a, a)))
        speed = max(speed, abs(sig.inner(b, b) - 4.0))
        accel = max(accel, abs(sig.inner(c, c)))
        jerk_min = min(jerk_min, float(np.linalg.norm(d)))
    ok = cone < 1e-10 and speed < 1e-10 and accel < 1e-10 and jerk_min > 1e-6
    return {
        "cone_violation": cone,
        "speed_violation": speed,
        "accel_violation": accel,
        "third_derivative_min": float(jerk_min),
        "ok": bool(ok),
    }


def chen_flat_surface(
    curve: NullCurve | None = None,
    domain=((0.5, 1.5), (0.5, 1.5)),
) -> CatalogEntry:
    """Flat Lorentzian surface L(u,v) = z(u)/(u+v) - z'(u)/2 over a null curve.

    The ruling direction z(u) is null, so both coordinate directions are
    degenerate and the tangent frame is seeded with u +- v combinations.
    """
    if curve is None:
        curve = default_null_curve()
    diag = null_curve_validator(
        curve, np.linspace(domain[0][0], domain[0][1], 9)
    )
    if not diag["ok"]:
        raise ValueError(f"null curve fails its constraints: {diag}")
    lo = domain[0][0] + domain[1][0]
    hi = domain[0][1] + domain[1][1]
    if lo <= 1e-3 and hi >= -1e-3:
        raise DomainSingularity(
            f"u+v ranges over [{lo}, {hi}] which meets the singular line "
            f"u+v = 0"
        )
    sig = curve.ambient
    zl = lift_curve_chart(curve.z, 2, axis=0)
    z1l = lift_curve_chart(curve.derivative(1), 2, axis=0)
    comps = []
    inv = F("poly", (1.0, 1.0), power=-1)
    for j in range(sig.m):
        terms = [
            Term(t.coef, t.factors + (inv,)) for t in zl.components[j]
        ]
        terms.extend(Term(-0.5 * t.coef, t.factors) for t in z1l.components[j])
        comps.append(tuple(terms))
    chart = TermChart(2, tuple(comps))
    seed3 = _scaled(lift_curve_chart(curve.derivative(3), 2, axis=0), 0.5)
    imm = Immersion(
        signature=sig,
        n=2,
        t=1,
        domain=tuple(domain),
        chart=chart,
        label="chen_flat",
        tangent_seed=np.array([[1.0, -1.0], [1.0, 1.0]]),
        normal_seeds=(seed3, np.eye(sig.m)[sig.m - 1]),
    )
    expected = {
        "verdict": Expectation("harmonic", "literature"),
        "K": Expectation(1.0, "derived"),
        "Hhat_character": Expectation("zero", "literature"),
        "RD_sup": Expectation(0.0, "literature"),
        "hsq_sphere": Expectation(0.0, "derived"),
        "S": Expectation(2.0, "literature"),              # literature: constant scalar curvature 2
    }
    return CatalogEntry("chen_flat", imm, expected)


# --- registry ----------------------------------------------------------------


def _umbilical_builder(name):
    sig, a, tau = _UMBILICAL_SETTINGS[name]
    return lambda: umbilical_hypersurface(2, sig, np.array(a, dtype=float), tau, name)


_BUILDERS = {
    "clifford_torus": clifford_torus,
    "clifford_torus_s3": clifford_torus_s3,
    "pr_clifford_torus": pr_clifford_torus,
    "marginally_trapped": marginally_trapped_surface,
    "horosphere_n2": lambda: horosphere(
        2, Signature(4, 1), np.array([1.0, 0.0, 0.0, 1.0]), 1.0
    ),
    "horosphere_n3": lambda: horosphere(
        3, Signature(5, 1), np.array([1.0, 0.0, 0.0, 0.0, 1.0]), 1.0
    ),
    "umbilical_sphere_codim2": umbilical_sphere_codim2,
    "equator_s2_m5s1": lambda: totally_geodesic_equator(2, 0, Signature(5, 1)),
    "equator_s21_m5s1": lambda: totally_geodesic_equator(2, 1, Signature(5, 1)),
    "equator_s21_m4s1": lambda: totally_geodesic_equator(2, 1, Signature(4, 1)),
    "chen_flat": chen_flat_surface,
}
for _name in _UMBILICAL_SETTINGS:
    _BUILDERS[_name] = _umbilical_builder(_name)


def catalog_names() -> list:
    return sorted(_BUILDERS)


def get_entry(name: str) -> CatalogEntry:
    try:
        builder = _BUILDERS[name]
    except KeyError:
        raise KeyError(
            f"unknown catalog entry {name!r}; known: {', '.join(catalog_names())}"
        ) from None
    return builder()


def all_entries() -> list:
    return [get_entry(name) for name in catalog_names()]
