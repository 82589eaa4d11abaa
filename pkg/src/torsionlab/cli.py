"""Command-line front end.

Subcommands::

    torsionlab alex      --knot trefoil
    torsionlab torsion   --braid "strands=3; s1 s2^-1 s1 s2^-1" --t 0.5,2 --backend both
    torsionlab symmetry  --pd "PD[X[1,5,2,4],X[3,1,4,6],X[5,3,6,2]]" --t 2,3,5
    torsionlab verify    --suite duality --cases 200 --seed 7

Exit codes: 0 success, 2 usage, 3 parse, 4 numeric non-convergence,
5 invariant failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass
from datetime import datetime, timezone
from typing import Sequence

from . import __version__
from .alexl2 import (NotAdmissibleError, VacuousSymmetryError, complex_torsion_function,
                     monomial_offset, symmetry_report, torsion_function, triple_from_knot)
from .chain import ChainComplexError, torus_complex
from .fkdet import FkConvergenceError, QuadratureSettings
from .knot import (DiagramError, KnotParseError, KnotRecord, alexander_coefficients,
                   get_knot, is_alexander_symmetric, parse_braid, parse_pd)
from .verify import SUITES, run_suite

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_NUMERIC, EXIT_INVARIANT = 0, 2, 3, 4, 5

DEFAULT_GRID = {"torsion": "0.5,1,2,3", "symmetry": "2,3,5"}


class UsageError(Exception):
    pass


@dataclass
class Source:
    label: str
    knot: KnotRecord | None = None
    torus: tuple[int, int] | None = None


# ---------------------------------------------------------------------------
# argument handling
# ---------------------------------------------------------------------------

def _grid(text: str) -> list[float]:
    try:
        vals = [float(v) for v in text.replace(" ", "").split(",") if v]
    except ValueError:
        raise UsageError(f"--t expects a comma-separated list of numbers, got {text!r}") from None
    if not vals:
        raise UsageError("--t is empty")
    if any(not (v > 0 and math.isfinite(v)) for v in vals):
        raise UsageError("t values must be positive")
    return vals


def _source(args) -> Source:
    given = [name for name in ("knot", "braid", "pd", "torus", "file")
             if getattr(args, name, None) is not None]
    if len(given) != 1:
        raise UsageError("give exactly one of --knot, --braid, --pd, --torus, --file")
    if args.knot is not None:
        try:
            return Source(args.knot, knot=get_knot(args.knot))
        except KeyError as exc:
            raise UsageError(exc.args[0]) from None
    if args.torus is not None:
        try:
            a, b = (int(v) for v in args.torus.split(","))
        except ValueError:
            raise UsageError(f"--torus expects two integers a,b, got {args.torus!r}") from None
        return Source(f"torus({a},{b})", torus=(a, b))
    if args.file is not None:
        try:
            with open(args.file, encoding="utf-8") as fh:
                text = fh.read().strip()
        except OSError as exc:
            raise UsageError(f"cannot read {args.file}: {exc.strerror}") from None
        kind = "pd" if text.lstrip().upper().startswith("PD") else "braid"
    else:
        kind = "braid" if args.braid is not None else "pd"
        text = args.braid if args.braid is not None else args.pd
    if kind == "braid":
        return Source(text, knot=KnotRecord(text, braid=parse_braid(text)))
    return Source(text, knot=KnotRecord(text, pd=parse_pd(text)))


def _settings(args) -> QuadratureSettings:
    kw = {}
    if args.quad_nodes is not None:
        kw["nodes"] = args.quad_nodes
    if args.tol is not None:
        kw["tol"] = args.tol
    try:
        return QuadratureSettings(**kw)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("TORSIONLAB_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"TORSIONLAB_SEED must be an integer, got {env!r}") from None


def _fmt(x) -> str:
    return format(x, ".12g") if isinstance(x, float) else str(x)


def _emit(args, payload: dict, table: tuple[list[str], list[list]] | None):
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        header, rows = table
        w.writerow(header)
        for row in rows:
            w.writerow([_fmt(v) for v in row])
        text = buf.getvalue()
    else:
        if not args.reproducible:
            payload = {**payload, "timestamp": datetime.now(timezone.utc).isoformat()}
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_alex(args) -> int:
    src = _source(args)
    if src.knot is None:
        raise UsageError("alex needs a knot input, not --torus")
    delta = src.knot.alexander
    coeffs = alexander_coefficients(delta)
    sym = is_alexander_symmetric(delta)
    payload = {"command": "alex", "input": src.label, "coefficients": coeffs,
               "span": delta.span, "symmetric": sym, "delta_at_1": abs(delta(1.0))}
    rows = [[k, c] for k, c in enumerate(coeffs)]
    _emit(args, payload, (["power", "coefficient"], rows))
    return EXIT_OK


def _functions(args, src: Source, settings):
    backend = args.backend or ("quadrature" if src.torus else "roots")
    if src.torus is not None:
        if backend != "quadrature":
            raise UsageError("--torus only supports the quadrature backend")
        if args.real_scale != 1.0:
            raise UsageError("--real-scale applies to knot inputs only")
        ab = src.torus
        try:
            torus_complex(ab, 1.0)
        except ChainComplexError as exc:
            raise UsageError(str(exc)) from None
        return [complex_torsion_function(lambda t: torus_complex(ab, t), settings, "canonical")]
    if args.real_scale == 0:
        raise UsageError("--real-scale must be nonzero (phi must be nonzero)")
    triple = triple_from_knot(src.knot, args.real_scale)
    names = ["roots", "quadrature"] if backend == "both" else [backend]
    return [torsion_function(triple, b, settings) for b in names]


def cmd_torsion(args) -> int:
    src = _source(args)
    grid = _grid(args.t or DEFAULT_GRID["torsion"])
    settings = _settings(args)
    funcs = _functions(args, src, settings)
    rows, records, failed = [], [], False
    for f in funcs:
        for t in grid:
            rec = {"t": t, "backend": f.backend, "normalization": f.normalization}
            try:
                rec["value"] = f(t)
            except FkConvergenceError as exc:
                failed = True
                rec.update(value=None, nonconverged=True, error=str(exc))
            records.append(rec)
            rows.append([t, "nan" if rec["value"] is None else rec["value"], f.backend,
                         f.normalization])
    payload = {"command": "torsion", "input": src.label, "real_scale": args.real_scale,
               "rows": records}
    if len(funcs) == 2 and not failed:
        usable = [t for t in grid if abs(math.log(t)) > 1e-3]
        if usable:
            m, resid = monomial_offset(funcs[1], funcs[0], usable)
            payload["offset_m"] = m
            payload["offset_residual"] = resid
    _emit(args, payload, (["t", "value", "backend", "normalization"], rows))
    if failed:
        print("error: quadrature did not converge for some rows", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


def cmd_symmetry(args) -> int:
    src = _source(args)
    grid = _grid(args.t or DEFAULT_GRID["symmetry"])
    if len(grid) < 3:
        raise UsageError("symmetry needs at least 3 grid points")
    settings = _settings(args)
    backend = args.backend or ("quadrature" if src.torus else "roots")
    if backend == "both":
        raise UsageError("symmetry takes a single backend")
    if src.torus is not None:
        source = _functions(args, src, settings)[0]
    else:
        if args.real_scale == 0:
            raise UsageError("--real-scale must be nonzero (phi must be nonzero)")
        source = triple_from_knot(src.knot, args.real_scale)
    try:
        rep = symmetry_report(source, grid, backend, settings)
    except VacuousSymmetryError as exc:
        payload = {"command": "symmetry", "input": src.label, "vacuous": True, "message": str(exc)}
        _emit(args, payload, (["t", "exponent"], []))
        return EXIT_OK
    except ValueError as exc:
        if isinstance(exc, NotAdmissibleError):
            raise
        raise UsageError(str(exc)) from None
    payload = {"command": "symmetry", "input": src.label, "vacuous": False,
               "real_scale": args.real_scale, **rep.as_dict(),
               "status": "PASS" if rep.passed else "FAIL"}
    _emit(args, payload, (["t", "exponent"], [list(r) for r in zip(rep.grid, rep.exponents)]))
    return EXIT_OK if rep.passed else EXIT_INVARIANT


def cmd_verify(args) -> int:
    seed = _seed(args)
    names = list(SUITES) if args.suite == "all" else [args.suite]
    results = [run_suite(n, args.cases, seed=seed) for n in names]
    payload = {"command": "verify", "seed": seed, "suites": [r.as_dict() for r in results],
               "status": "PASS" if all(r.ok for r in results) else "FAIL"}
    rows = [[r.suite, item, it.passed, it.total] for r in results for item, it in r.items.items()]
    _emit(args, payload, (["suite", "item", "passed", "total"], rows))
    for r in results:
        for item, it in r.items.items():
            print(f"{r.suite}/{item}: {it.passed}/{it.total} {'PASS' if it.ok else 'FAIL'}",
                  file=sys.stderr)
    bad = [r for r in results if not r.ok]
    if bad:
        print(f"error: invariant failure (seed {seed})", file=sys.stderr)
        print(json.dumps(bad[0].counterexample, sort_keys=True), file=sys.stderr)
        return EXIT_INVARIANT
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--output", "-o", help="write to this file instead of stdout")
    common.add_argument("--reproducible", action="store_true",
                        help="omit the timestamp so JSON output is byte-identical across runs")

    knot = argparse.ArgumentParser(add_help=False)
    knot.add_argument("--knot", help="bundled knot name (trefoil, figure-eight)")
    knot.add_argument("--braid", help='braid word, e.g. "strands=2; s1 s1 s1"')
    knot.add_argument("--pd", help="planar diagram code PD[X[...],...]")
    knot.add_argument("--file", help="UTF-8 file holding a braid word or PD code")

    evalp = argparse.ArgumentParser(add_help=False)
    evalp.add_argument("--torus", metavar="A,B", help="torus complex with phi values (a, b)")
    evalp.add_argument("--t", help="comma-separated t grid")
    evalp.add_argument("--backend", choices=("roots", "quadrature", "both"))
    evalp.add_argument("--quad-nodes", type=int, help="initial quadrature nodes (power of two >= 16)")
    evalp.add_argument("--tol", type=float, help="quadrature log-value tolerance")
    evalp.add_argument("--real-scale", type=float, default=1.0, help="use the class r*phi")

    p = argparse.ArgumentParser(prog="torsionlab",
                                description="Abelian L2-Alexander torsion of knot exteriors.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    a = sub.add_parser("alex", parents=[common, knot], help="Alexander polynomial")
    a.set_defaults(func=cmd_alex, torus=None)
    sub.add_parser("torsion", parents=[common, knot, evalp],
                   help="evaluate tau(t) on a grid").set_defaults(func=cmd_torsion)
    sub.add_parser("symmetry", parents=[common, knot, evalp],
                   help="fit n in tau(1/t) = t^n tau(t)").set_defaults(func=cmd_symmetry)
    v = sub.add_parser("verify", parents=[common], help="randomized invariant suites")
    v.add_argument("--suite", choices=SUITES + ("all",), default="all")
    v.add_argument("--cases", type=int, help="cases per suite (suite default if omitted)")
    v.add_argument("--seed", type=int, help="RNG seed (falls back to $TORSIONLAB_SEED, then 0)")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NotAdmissibleError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (KnotParseError, DiagramError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except FkConvergenceError as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ChainComplexError as exc:
        print(f"invariant failure: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
