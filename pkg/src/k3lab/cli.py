"""Command-line front end: ``k3lab <subcommand> [options]``.

Exit codes: 0 success, 1 a check failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .chambers import FixedLocus, ample_search_2d, nikulin_bound, roots
from .fields import FieldError, FqContext
from .fixtures import FixtureError, load_fixture
from .forms import BinaryForm, d_list, represents, solve_pell_like
from .geometry import count_double_cover, count_hypersurface, count_hypersurface_p3
from .lattice import GramLattice2, LatticeError
from .poly import PolyError
from .report import h2d_table, reproduce_all, verify_example
from .zeta import (
    AmbiguousSign, CountVector, Underdetermined, ZetaError, apply_functional_equation,
    newton_charpoly, picard_upper_bound, traces_from_counts,
)


class UsageError(Exception):
    pass


def _emit(args, data, text_lines):
    if args.format == "json":
        print(json.dumps(data, indent=2, sort_keys=False))
    else:
        for line in text_lines:
            print(line)


def cmd_pell(args):
    sols = solve_pell_like(args.m)
    data = {"m": args.m, "solutions": [{"x": s.x, "y": s.y, "primitive": s.primitive} for s in sols]}
    lines = [f"x^2 - 2y^2 = {args.m}: " + (", ".join(f"({s.x}, {s.y})" for s in sols) or "no solutions")]
    _emit(args, data, lines)
    return 0


def cmd_represent(args):
    F = BinaryForm.from_lattice(GramLattice2.parse(args.gram))
    res = represents(F, args.n, args.bound)
    kind = type(res).__name__
    data = {"gram": args.gram, "n": args.n, "result": kind, **res.as_dict()}
    _emit(args, data, [f"[{args.gram}] n={args.n}: {kind} {res.as_dict()}"])
    return 0


def cmd_dlist(args):
    ds = d_list(args.N)
    _emit(args, {"N": args.N, "d_list": ds}, [" ".join(map(str, ds))])
    return 0


def cmd_ample_search(args):
    if args.d <= 2:
        raise UsageError("d must exceed 2")
    res = ample_search_2d(args.d)
    data = res.as_dict()
    _emit(args, data, [f"d={args.d}: {data}"])
    return 0


def cmd_roots(args):
    L = GramLattice2.parse(args.gram)
    rs = roots(L, args.bound, method=args.method)
    _emit(args, {"gram": args.gram, "roots": [list(r) for r in rs]},
          [" ".join(str(r) for r in rs) or "no roots"])
    return 0


def cmd_nikulin(args):
    b = nikulin_bound(FixedLocus(args.variant, args.pa, args.k))
    _emit(args, {"variant": args.variant, "p_a": args.pa, "k": args.k, "rho_lower_bound": b},
          [f"rho >= {b}"])
    return 0


def cmd_count_points(args):
    fx = load_fixture(args.fixture)
    ctx = FqContext(args.p, args.k)
    model = args.model or ("double-cover" if fx.ambient == "P(1,1,1,3)" else "quartic")
    if model == "double-cover":
        poly = fx.polys.get("sextic") or fx.polys.get("branch")
        if poly is None:
            raise UsageError(f"fixture {args.fixture} has no sextic for the double-cover model")
        N = count_double_cover(poly, ctx, args.workers)
    elif len(fx.equations) == 1 and fx.ring.nvars == 4:
        N = count_hypersurface_p3(fx.equations[0], ctx, args.workers)
    else:
        from .geometry import variety_points
        N = len(variety_points(fx.equations, ctx, args.workers))
    _emit(args, {"p": args.p, "k": args.k, "q": ctx.q, "N": N}, [f"N = {N} over F_{ctx.q}"])
    return 0


def _read_counts(path: str):
    text = Path(path).read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError:
        return [int(t) for t in text.replace(",", " ").split()], None
    if isinstance(data, dict):
        return [int(c) for c in data["counts"]], data.get("p")
    return [int(c) for c in data], None


def cmd_zeta(args):
    counts, p_file = _read_counts(args.counts_file)
    p = args.p or p_file
    if p is None:
        raise UsageError("prime not given")
    traces = traces_from_counts(CountVector(p, tuple(counts)))
    partial = newton_charpoly(traces)
    data = {"p": p, "traces": traces}
    try:
        W = apply_functional_equation(partial, p, sign=args.sign, known_algebraic_rank=args.known_rank)
        data.update(coefficients=list(W.coeffs), free=[], sign=W.sign,
                    picard_upper_bound=picard_upper_bound(W))
    except Underdetermined as exc:
        data.update(coefficients=exc.partial, free=exc.free, sign=args.sign, partial=True)
    except AmbiguousSign:
        data.update(coefficients=partial + [None] * (23 - len(partial)), free=None, sign=None,
                    partial=True, ambiguous_sign=True)
    _emit(args, data, [f"{k}: {v}" for k, v in data.items()])
    return 0


def cmd_verify_example(args):
    fx = load_fixture(args.name)
    checks = verify_example(fx, args.p, args.max_k)
    ok = all(c["status"] == "pass" for c in checks)
    _emit(args, {"name": args.name, "checks": checks, "status": "pass" if ok else "fail"},
          [f"{c['check']}: {c['status']}" for c in checks])
    return 0 if ok else 1


def cmd_h2d_table(args):
    rows = h2d_table(args.N)
    lines = [f"d={r['d']:>4}  h={r['h']}  Q={'yes' if r['q_construction'] else 'no'}"
             + (f"  witness={tuple(r['witness'])}" if "witness" in r else "") for r in rows]
    _emit(args, {"N": args.N, "rows": rows}, lines)
    return 0


def cmd_reproduce_all(args):
    reports = reproduce_all(args.fixtures)
    failed = any(r.status == "fail" for r in reports)
    data = {"claims": [r.to_dict(args.timings) for r in reports],
            "status": "fail" if failed else "pass"}
    lines = [f"{r.status.upper():7} {r.claim_id}" + (f"  ({r.reason})" if r.reason else "") for r in reports]
    _emit(args, data, lines)
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="k3lab", description=__doc__.splitlines()[0])
    ap.add_argument("--format", choices=["json", "text"], default="json")
    # accepted after the subcommand too; SUPPRESS keeps it from clobbering the top-level value
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "text"], default=argparse.SUPPRESS)
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("pell", parents=[common], help="orbit representatives of x^2 - 2y^2 = m")
    s.add_argument("--m", type=int, required=True)
    s.set_defaults(fn=cmd_pell)

    s = sub.add_parser("represent", parents=[common], help="decide representation of n by a lattice form")
    s.add_argument("--gram", required=True, help='"a b c"')
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--bound", type=int, default=100)
    s.set_defaults(fn=cmd_represent)

    s = sub.add_parser("dlist", parents=[common], help="d <= N with 2 a square mod d")
    s.add_argument("--N", type=int, required=True)
    s.set_defaults(fn=cmd_dlist)

    s = sub.add_parser("ample-search", parents=[common], help="primitive ample class of square 2d on [4 0 -2]")
    s.add_argument("--d", type=int, required=True)
    s.set_defaults(fn=cmd_ample_search)

    s = sub.add_parser("roots", parents=[common], help="vectors of square -2")
    s.add_argument("--gram", required=True)
    s.add_argument("--bound", type=int, default=20)
    s.add_argument("--method", choices=["box", "pell"], default="box")
    s.set_defaults(fn=cmd_roots)

    s = sub.add_parser("nikulin", parents=[common], help="Picard-number bound from a fixed locus")
    s.add_argument("--variant", required=True, choices=["symplectic", "nonsymplectic_empty",
                                                         "nonsymplectic_two_elliptic", "nonsymplectic_curves"])
    s.add_argument("--pa", type=int, default=0)
    s.add_argument("--k", type=int, default=0)
    s.set_defaults(fn=cmd_nikulin)

    s = sub.add_parser("count-points", parents=[common], help="count F_q points of a fixture")
    s.add_argument("--fixture", required=True)
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--k", type=int, default=1)
    s.add_argument("--model", choices=["double-cover", "quartic"])
    s.add_argument("--workers", type=int, default=1)
    s.set_defaults(fn=cmd_count_points)

    s = sub.add_parser("zeta", parents=[common], help="Weil polynomial from point counts")
    s.add_argument("--counts-file", required=True)
    s.add_argument("--p", type=int)
    s.add_argument("--known-rank", type=int, default=0)
    s.add_argument("--sign", type=int, choices=[1, -1])
    s.set_defaults(fn=cmd_zeta)

    s = sub.add_parser("verify-example", parents=[common], help="point-level checks of a fixture")
    s.add_argument("--name", required=True)
    s.add_argument("--p", type=int)
    s.add_argument("--max-k", type=int, default=2)
    s.set_defaults(fn=cmd_verify_example)

    s = sub.add_parser("h2d-table", parents=[common], help="minimal Picard numbers h_2d for d <= N")
    s.add_argument("--N", type=int, default=100)
    s.set_defaults(fn=cmd_h2d_table)

    s = sub.add_parser("reproduce-all", parents=[common], help="run every claim")
    s.add_argument("--fixtures", help="fixture directory (default: $K3LAB_FIXTURES or the bundled set)")
    s.add_argument("--timings", action="store_true", help="include runtimes in the JSON output")
    s.set_defaults(fn=cmd_reproduce_all)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except (UsageError, FixtureError, LatticeError, PolyError, FieldError, ZetaError,
            ValueError, OSError) as exc:
        print(f"k3lab: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
