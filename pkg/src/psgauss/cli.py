"""Command line front end.

Exit codes: 0 all checks pass, 1 at least one check failed, 2 bad
configuration or I/O, 3 numeric degeneracy (singular metric, null frame
pivot, chart singularity inside the domain).
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .catalog import DomainSingularity, catalog_names, get_entry
from .chartio import dump_chart_text
from .immersion import DegenerateMetric
from .linalg import NullPivot
from .report import ConfigError, RunConfig, report_json, run_suite, run_verify

__all__ = ["main", "build_parser"]

_DEGENERACIES = (DegenerateMetric, NullPivot, DomainSingularity,
                 np.linalg.LinAlgError)


def _parse_grid(text: str):
    parts = text.replace("X", "x").replace("×", "x").split("x")
    try:
        counts = tuple(int(p) for p in parts)
    except ValueError:
        raise ConfigError(f"cannot parse grid spec {text!r}, want e.g. 9x9")
    if not counts:
        raise ConfigError("empty grid spec")
    return counts


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="psgauss",
        description="Pseudo-spherical Gauss map diagnostics for "
        "parametrized submanifolds of pseudo-spheres.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_shared(p):
        p.add_argument("--margin", type=float, default=0.1,
                       help="fraction of each domain edge to trim")
        p.add_argument("--tol-analytic", type=float, default=1e-6)
        p.add_argument("--tol-fd", type=float, default=1e-4)
        p.add_argument("--tol-biharmonic", type=float, default=1e-3)
        p.add_argument("--fd-step", type=float, default=1e-3,
                       help="step for the numeric Laplacian route")
        p.add_argument("--seed", type=int, default=7,
                       help="seed for held-out sample points")

    pv = sub.add_parser("verify", help="run all checks on one surface")
    pv.add_argument("surface", help="catalog name or chart file path")
    pv.add_argument("--grid", type=str, default=None, help="e.g. 9x9")
    pv.add_argument("--n", type=int, default=None,
                    help="dimension for surface families, e.g. horosphere")
    pv.add_argument("--out", type=str, default=None,
                    help="write the JSON report here")
    pv.add_argument("--figures", action="store_true",
                    help="also write CSV and PNG files next to --out")
    add_shared(pv)

    ps = sub.add_parser("suite", help="verify every catalog entry")
    ps.add_argument("--out", type=str, default=None,
                    help="directory for per-entry reports")
    add_shared(ps)

    pc = sub.add_parser("catalog", help="inspect the built-in catalog")
    pc.add_argument("action", choices=("list", "show"))
    pc.add_argument("name", nargs="?", default=None)
    return parser


def _fail(code: int, kind: str, message: str) -> int:
    sys.stderr.write(
        json.dumps({"error": kind, "message": message}, sort_keys=True) + "\n"
    )
    return code


def _print_checks(report: dict):
    width = max(len(c["name"]) for c in report["checks"])
    for c in report["checks"]:
        status = "pass" if c["passed"] else "FAIL"
        measured = c["measured"]
        if isinstance(measured, float):
            detail = f"measured={measured:.3e}"
            if c["tol"] is not None:
                detail += f" tol={c['tol']:.1e}"
        else:
            detail = f"measured={measured!r}"
        print(f"  {c['name']:<{width}}  {status}  {detail}")


def _cmd_verify(args) -> int:
    surface = args.surface
    if args.n is not None and surface in ("horosphere",):
        surface = f"horosphere_n{args.n}"
    elif surface == "horosphere":
        surface = "horosphere_n2"
    config = RunConfig(
        surface=surface,
        grid=_parse_grid(args.grid) if args.grid else None,
        margin=args.margin,
        tol_analytic=args.tol_analytic,
        tol_fd=args.tol_fd,
        tol_biharmonic=args.tol_biharmonic,
        fd_step=args.fd_step,
        seed=args.seed,
        out=args.out,
        figures=args.figures,
    )
    report = run_verify(config)
    print(f"{report['surface']}  ambient={report['ambient']}  "
          f"n={report['n']}  verdict={report['spectral']['verdict']}")
    _print_checks(report)
    if not args.out:
        sys.stdout.write(report_json(report))
    print("PASSED" if report["passed"] else "FAILED")
    return 0 if report["passed"] else 1


def _cmd_suite(args) -> int:
    suite = run_suite(
        out_dir=args.out,
        margin=args.margin,
        tol_analytic=args.tol_analytic,
        tol_fd=args.tol_fd,
        tol_biharmonic=args.tol_biharmonic,
        fd_step=args.fd_step,
        seed=args.seed,
    )
    for name, rep in suite["entries"].items():
        n_pass = sum(1 for c in rep["checks"] if c["passed"])
        status = "pass" if rep["passed"] else "FAIL"
        print(f"  {name:<32} {status}  verdict={rep['spectral']['verdict']}"
              f"  checks={n_pass}/{len(rep['checks'])}")
    print("PASSED" if suite["passed"] else "FAILED")
    return 0 if suite["passed"] else 1


def _cmd_catalog(args) -> int:
    if args.action == "list":
        for name in catalog_names():
            entry = get_entry(name)
            imm = entry.immersion
            print(f"  {name:<32} {imm.signature}  n={imm.n}")
        return 0
    if not args.name:
        raise ConfigError("catalog show needs a surface name")
    entry = get_entry(args.name)
    print(dump_chart_text(entry.immersion))
    if entry.expected:
        print("# expected")
        for key, e in sorted(entry.expected.items()):
            print(f"#   {key:<24} {e.value!r}  [{e.source}]")
    if entry.notes:
        print(f"# {entry.notes}")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "suite":
            return _cmd_suite(args)
        return _cmd_catalog(args)
    except ConfigError as exc:
        return _fail(2, "config", str(exc))
    except KeyError as exc:
        return _fail(2, "config", str(exc))
    except OSError as exc:
        return _fail(2, "io", str(exc))
    except _DEGENERACIES as exc:
        return _fail(3, type(exc).__name__, str(exc))


if __name__ == "__main__":
    sys.exit(main())
