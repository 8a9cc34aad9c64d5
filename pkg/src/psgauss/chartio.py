"""Text format for charts.

A chart file is line-oriented: header fields, then one ``component:`` line
per ambient coordinate.  Component expressions are sums of terms

    coef * f(2*u - 0.5*v + 1.2) * g(...) * ...

with f, g drawn from sin, cos, sinh, cosh, poly<k> (k-th power of the
linear form) and const (the factor 1).  Arguments are linear in the
declared parameters plus a constant phase.  Example::

    # flat torus, round coordinates
    label: clifford_torus
    ambient: 5 1
    params: u v
    index: 0
    domain: 0 6.283185307179586 ; 0 6.283185307179586
    component: 0.7071067811865476*cos(u)
    component: 0.7071067811865476*sin(u)
    component: 0.7071067811865476*cos(v)
    component: 0.7071067811865476*sin(v)
    component: 0

Optional headers: ``tangent_seed`` (n rows separated by ';') recombines
coordinate directions ahead of orthonormalization, ``normal_seed`` (one per
line, m expressions separated by ';') supplies frame-completion candidates,
``max_order`` declares the derivative order the chart supports.

Serialization uses repr floats, so parse(dump(imm)) reproduces values and
partials exactly.
"""

from __future__ import annotations

import re

import numpy as np

from .immersion import Factor, Immersion, Term, TermChart
from .linalg import Signature

__all__ = [
    "ChartFormatError",
    "parse_chart_text",
    "dump_chart_text",
    "load_chart_file",
    "save_chart_file",
]


class ChartFormatError(ValueError):
    pass


_NUMBER = re.compile(r"^[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?$")


def _split_top(text: str, seps: str) -> list:
    """Split on sign characters at paren depth 0, sign kept with the piece.

    A '+'/'-' is a separator only when it follows a completed operand; this
    keeps scientific-notation exponents ('1e-05') and leading signs intact.
    """
    pieces = []
    depth = 0
    cur = ""
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if depth == 0 and ch in seps:
            j = i - 1
            while j >= 0 and text[j] == " ":
                j -= 1
            if j >= 0:
                p = text[j]
                sci = p in "eE" and j > 0 and (text[j - 1].isdigit() or text[j - 1] == ".")
                powy = text[: j + 1].endswith(("poly", "poly_"))
                if (p.isalnum() or p in ").") and not sci and not powy:
                    pieces.append(cur.strip())
                    cur = ch
                    continue
        cur += ch
    if cur.strip():
        pieces.append(cur.strip())
    return pieces


def _parse_linear(text: str, params: list) -> tuple:
    """Parse 'a*u + b*v + c' into (lin coefficients, phase)."""
    lin = [0.0] * len(params)
    phase = 0.0
    for piece in _split_top(text, "+-"):
        piece = piece.replace(" ", "")
        if piece in ("", "+"):
            continue
        sign = 1.0
        while piece and piece[0] in "+-":
            if piece[0] == "-":
                sign = -sign
            piece = piece[1:]
        if "*" in piece:
            coef_text, _, var = piece.partition("*")
            if var not in params:
                raise ChartFormatError(f"unknown parameter {var!r} in {text!r}")
            lin[params.index(var)] += sign * float(coef_text)
        elif piece in params:
            lin[params.index(piece)] += sign
        elif _NUMBER.match(piece):
            phase += sign * float(piece)
        else:
            raise ChartFormatError(f"cannot parse linear piece {piece!r} in {text!r}")
    return tuple(lin), phase


_FACTOR = re.compile(r"^(sinh|cosh|sin|cos|poly_?(-?\d+))\((.*)\)$")


def _parse_term(text: str, params: list) -> Term:
    coef = 1.0
    factors = []
    for tok in _split_star(text):
        tok = tok.strip()
        if not tok:
            continue
        sign = 1.0
        while tok and tok[0] in "+-":
            if tok[0] == "-":
                sign = -sign
            tok = tok[1:].strip()
        coef *= sign
        if _NUMBER.match(tok):
            coef *= float(tok)
            continue
        if tok == "const":
            continue
        mt = _FACTOR.match(tok)
        if mt is None:
            raise ChartFormatError(f"cannot parse factor {tok!r}")
        name = mt.group(1)
        lin, phase = _parse_linear(mt.group(3), params)
        if name.startswith("poly"):
            factors.append(Factor("poly", lin, phase, int(mt.group(2))))
        else:
            factors.append(Factor(name, lin, phase))
    return Term(coef, tuple(factors))


def _split_star(text: str) -> list:
    pieces = []
    depth = 0
    cur = ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "*" and depth == 0:
            pieces.append(cur)
            cur = ""
        else:
            cur += ch
    pieces.append(cur)
    return pieces


def _parse_component(text: str, params: list) -> tuple:
    terms = []
    for piece in _split_top(text, "+-"):
        term = _parse_term(piece, params)
        if term.coef != 0.0:
            terms.append(term)
    return tuple(terms)


def _parse_rows(text: str, width: int, what: str) -> np.ndarray:
    rows = [r.split() for r in text.split(";")]
    try:
        arr = np.array([[float(v) for v in r] for r in rows])
    except ValueError as exc:
        raise ChartFormatError(f"bad {what} row: {exc}") from exc
    if arr.ndim != 2 or arr.shape[1] != width:
        raise ChartFormatError(f"{what} rows must have {width} entries")
    return arr


def parse_chart_text(text: str) -> Immersion:
    headers = {}
    components = []
    seeds = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition(":")
        if not sep:
            raise ChartFormatError(f"expected 'key: value', got {raw!r}")
        key = key.strip()
        value = value.strip()
        if key == "component":
            components.append(value)
        elif key == "normal_seed":
            seeds.append(value)
        elif key in headers:
            raise ChartFormatError(f"duplicate header {key!r}")
        else:
            headers[key] = value

    for required in ("ambient", "params", "domain"):
        if required not in headers:
            raise ChartFormatError(f"missing header {required!r}")
    try:
        m, s = (int(v) for v in headers["ambient"].split())
    except ValueError as exc:
        raise ChartFormatError("ambient must be 'm s'") from exc
    sig = Signature(m, s)
    params = headers["params"].split()
    n = len(params)
    if len(set(params)) != n or not all(p.isidentifier() for p in params):
        raise ChartFormatError("params must be distinct identifiers")

    pairs = headers["domain"].split(";")
    if len(pairs) != n:
        raise ChartFormatError(f"domain needs {n} 'lo hi' pairs separated by ';'")
    domain = []
    for pair in pairs:
        vals = pair.split()
        if len(vals) != 2:
            raise ChartFormatError(f"bad domain pair {pair!r}")
        lo, hi = float(vals[0]), float(vals[1])
        if not lo < hi:
            raise ChartFormatError("domain pairs need lo < hi")
        domain.append((lo, hi))

    if len(components) != m:
        raise ChartFormatError(f"need {m} component lines, got {len(components)}")
    chart = TermChart(n, tuple(_parse_component(c, params) for c in components))

    tangent_seed = None
    if "tangent_seed" in headers:
        tangent_seed = _parse_rows(headers["tangent_seed"], n, "tangent_seed")
        if tangent_seed.shape[0] != n:
            raise ChartFormatError("tangent_seed must be n x n")

    normal_seeds = []
    for seed_text in seeds:
        exprs = seed_text.split(";")
        if len(exprs) != m:
            raise ChartFormatError(f"normal_seed needs {m} expressions")
        normal_seeds.append(
            TermChart(n, tuple(_parse_component(e, params) for e in exprs))
        )

    try:
        t = int(headers.get("index", "0"))
        max_order = int(headers.get("max_order", "4"))
    except ValueError as exc:
        raise ChartFormatError("index and max_order must be integers") from exc

    return Immersion(
        signature=sig,
        n=n,
        t=t,
        domain=tuple(domain),
        chart=chart,
        label=headers.get("label", ""),
        tangent_seed=tangent_seed,
        normal_seeds=tuple(normal_seeds),
        max_order=max_order,
        param_names=tuple(params),
    )


def _format_linear(lin, phase, params) -> str:
    parts = []
    for coef, name in zip(lin, params):
        if coef == 0.0:
            continue
        if coef == 1.0:
            parts.append(name)
        elif coef == -1.0:
            parts.append(f"-{name}")
        else:
            parts.append(f"{float(coef)!r}*{name}")
    if phase != 0.0 or not parts:
        parts.append(repr(float(phase)))
    out = parts[0]
    for p in parts[1:]:
        out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
    return out


def _format_term(term: Term, params) -> str:
    toks = []
    if term.coef != 1.0 or not term.factors:
        toks.append(repr(float(term.coef)))
    for f in term.factors:
        name = f.kind if f.kind != "poly" else f"poly{f.power}"
        toks.append(f"{name}({_format_linear(f.lin, f.phase, params)})")
    return "*".join(toks)


def _format_component(terms, params) -> str:
    if not terms:
        return "0"
    return " + ".join(_format_term(t, params) for t in terms)


def dump_chart_text(imm: Immersion) -> str:
    if not isinstance(imm.chart, TermChart):
        raise ChartFormatError("only term charts can be serialized")
    params = list(getattr(imm, "param_names", ()) or _default_params(imm.n))
    lines = []
    if imm.label:
        lines.append(f"label: {imm.label}")
    lines.append(f"ambient: {imm.signature.m} {imm.signature.s}")
    lines.append("params: " + " ".join(params))
    lines.append(f"index: {imm.t}")
    if imm.max_order != 4:
        lines.append(f"max_order: {imm.max_order}")
    lines.append(
        "domain: "
        + " ; ".join(f"{float(lo)!r} {float(hi)!r}" for lo, hi in imm.domain)
    )
    if imm.tangent_seed is not None:
        lines.append(
            "tangent_seed: "
            + " ; ".join(
                " ".join(repr(float(v)) for v in row) for row in imm.tangent_seed
            )
        )
    for seed in imm.normal_seeds:
        if isinstance(seed, np.ndarray):
            exprs = [repr(float(v)) for v in seed]
        elif isinstance(seed, TermChart):
            exprs = [_format_component(c, params) for c in seed.components]
        else:
            raise ChartFormatError("cannot serialize callable normal seeds")
        lines.append("normal_seed: " + " ; ".join(exprs))
    for comp in imm.chart.components:
        lines.append("component: " + _format_component(comp, params))
    return "\n".join(lines) + "\n"


def _default_params(n: int) -> list:
    if n <= 4:
        return ["u", "v", "w", "r"][:n]
    return [f"u{i + 1}" for i in range(n)]


def load_chart_file(path) -> Immersion:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_chart_text(fh.read())


def save_chart_file(path, imm: Immersion) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dump_chart_text(imm))
