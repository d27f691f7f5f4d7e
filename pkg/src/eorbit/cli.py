"""Command-line entry point ``eorbit``.

Exit status is 0 on success, 1 when the library raises a domain error (its
class name is printed on stderr) and 2 on usage errors.  Algebraic output
uses "p/q" strings; floats are written with 17 significant digits.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from . import efunctions as ef
from . import orbits as ob
from . import transforms as tf
from .errors import EOrbitError
from .rootsystem import build, format_rational, to_fraction
from .symfunc import sym_hermite_eval
from .weylgroup import ChamberConfig, generate

# ---------------------------------------------------------------- formatting


def fmt_float(v: float) -> str:
    if not math.isfinite(v):
        raise ValueError(f"cannot serialize non-finite value {v}")
    return format(v, ".17g")


def dumps(obj) -> str:
    """Deterministic JSON: fixed key order as built, floats at 17 digits."""
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, float):
        return fmt_float(obj)
    if isinstance(obj, (int, str)):
        return json.dumps(obj)
    if isinstance(obj, Fraction):
        return json.dumps(format_rational(obj))
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {dumps(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(dumps(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def rationals(v) -> list:
    return [format_rational(Fraction(c)) for c in v]


def parse_vector(text: str) -> tuple:
    try:
        return tuple(to_fraction(t.strip()) for t in text.split(",") if t.strip())
    except (ValueError, ZeroDivisionError, TypeError):
        raise argparse.ArgumentTypeError(f"not a comma-separated list of rationals: {text!r}") from None


def parse_ints(text: str) -> tuple:
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of integers: {text!r}") from None


def read_rows(path: str) -> list:
    """Numeric CSV rows; a header row of non-numbers is skipped."""
    with open(path, newline="") as fh:
        rows = [r for r in csv.reader(fh) if r and not r[0].lstrip().startswith("#")]
    out = []
    for i, r in enumerate(rows):
        try:
            out.append([to_fraction(c.strip()) for c in r])
        except (ValueError, ZeroDivisionError):
            if i == 0:
                continue
            raise
    return out


def write_text(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="") as fh:
            fh.write(text)


def threads() -> int:
    raw = os.environ.get("EORBIT_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        n = 0
    if n < 1:
        raise SystemExit(_usage_exit(f"EORBIT_THREADS must be a positive integer, got {raw!r}"))
    return n


def _usage_exit(msg: str) -> int:
    sys.stderr.write(f"eorbit: error: {msg}\n")
    return 2


def pmap(fn, items) -> list:
    """Order-preserving map, threaded up to EORBIT_THREADS."""
    n = threads()
    if n == 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


def _csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    for r in rows:
        w.writerow(r)
    return buf.getvalue()


def _cfg(args) -> ChamberConfig:
    return ChamberConfig(split_root=args.split_root) if getattr(args, "split_root", None) else ChamberConfig()


# ---------------------------------------------------------------- commands


def cmd_group(args) -> int:
    g = generate(build(args.diagram))
    if args.json:
        write_text(None, dumps(g.to_dict()) + "\n")
    else:
        write_text(None, f"{args.diagram}: |W| = {len(g)}, |W_e| = {len(g.even)}\n")
    return 0


def cmd_orbit(args) -> int:
    s = build(args.diagram)
    if args.even:
        orb = ob.we_orbit(s, args.weight, _cfg(args))
        out = {"rep": rationals(orb.rep), "kind": orb.kind, "stabilizerOrder": orb.stabilizer_order,
               "points": [rationals(p) for p in orb.points]}
    else:
        pts = ob.w_orbit(s, args.weight)
        out = {"points": [rationals(p) for p in pts]}
    write_text(None, dumps(out) + "\n")
    return 0


def _decomp_json(d) -> str:
    return dumps({"terms": [{"rep": rationals(r), "mult": m} for r, m in d.terms]}) + "\n"


def cmd_product(args) -> int:
    s = build(args.diagram)
    write_text(None, _decomp_json(ob.product_decompose(s, args.lam, args.mu, _cfg(args))))
    return 0


def cmd_branch(args) -> int:
    s = build(args.diagram)
    cfg = _cfg(args)
    if args.roots:
        rule = ob.subsystem_rule(s, json.loads(args.roots), cfg)
    elif args.to:
        rule = ob.branch_rule(s, args.to, cfg)
    else:
        return _usage_exit("branch needs --to or --roots")
    fn = ob.branch_decompose_cosets if args.route == "cosets" else ob.branch_decompose
    write_text(None, _decomp_json(fn(s, args.weight, rule, cfg)))
    return 0


def _points(args, rank: int) -> list:
    pts = []
    if args.points:
        pts.extend(tuple(r[:rank]) for r in read_rows(args.points))
    if getattr(args, "point", None):
        pts.extend(args.point)
    if not pts:
        raise SystemExit(_usage_exit("no evaluation points: give --points FILE or --point x,y,..."))
    return pts


def cmd_eval(args) -> int:
    s = build(args.diagram)
    pts = _points(args, s.rank)
    terms = ef.orbit_terms(s, args.family, args.lam, _cfg(args))
    f = ef.OrbitSum(s, terms)
    values = pmap(f, pts)
    rows = [[format_rational(c) for c in p] + [fmt_float(v.real), fmt_float(v.imag)] for p, v in zip(pts, values)]
    header = [f"x{i + 1}" for i in range(s.rank)] + ["re", "im"]
    write_text(args.out, _csv([header] + rows))
    return 0


def cmd_grid(args) -> int:
    s = build(args.diagram)
    cfg = _cfg(args)
    if args.m is not None:
        grid = tf.grid_tm(s, args.m)
    elif args.M is not None:
        grid = tf.grid_fm(s, args.M, args.even, cfg, with_stabilizers=args.stabilizers)
    else:
        return _usage_exit("grid needs --M or --m")
    pts = grid.points if args.basis == "omega" else grid.coweight_points(s)
    if args.dump_grid_csv:
        write_text(args.dump_grid_csv, _csv([[format_rational(c) for c in p] for p in pts]))
    if args.json:
        out = {"kind": grid.kind, "size": grid.size, "even": grid.even, "basis": args.basis,
               "points": [rationals(p) for p in pts]}
        if grid.stabilizers:
            out["stabilizers"] = list(grid.stabilizers)
        write_text(None, dumps(out) + "\n")
    else:
        for p in pts:
            write_text(None, " ".join(rationals(p)) + "\n")
    return 0


def _read_spectrum(path: str) -> list:
    with open(path) as fh:
        data = json.load(fh)
    return [tuple(to_fraction(c) for c in (item["lambda"] if isinstance(item, dict) else item)) for item in data]


def cmd_dft_analyze(args) -> int:
    s = build(args.diagram)
    cfg = _cfg(args)
    grid = tf.grid_tm(s, args.m)
    exact, approx = {}, {}
    for r in read_rows(args.samples):
        p = tuple(r[: s.rank])
        v = complex(float(r[s.rank]), float(r[s.rank + 1]) if len(r) > s.rank + 1 else 0.0)
        exact[p] = v
        approx[tuple(round(float(c), 9) for c in p)] = v
    values = []
    for p in grid.points:
        if p in exact:
            values.append(exact[p])
        else:
            key = tuple(round(float(c), 9) for c in p)
            if key not in approx:
                return _usage_exit(f"samples file has no value at grid point {rationals(p)}")
            values.append(approx[key])
    spectrum = tf.auto_spectrum(s, args.m, cfg) if args.spectrum == "auto" else _read_spectrum(args.spectrum)
    coeffs = tf.analyze(s, values, spectrum, args.m, cfg, route=args.route)
    out = [{"lambda": rationals(l), "re": a.real, "im": a.imag} for l, a in sorted(coeffs.items())]
    write_text(args.out, dumps(out) + "\n")
    return 0


def cmd_dft_synthesize(args) -> int:
    s = build(args.diagram)
    with open(args.coeffs) as fh:
        data = json.load(fh)
    coeffs = {tuple(to_fraction(c) for c in item["lambda"]): complex(item["re"], item.get("im", 0.0)) for item in data}
    pts = _points(args, s.rank)
    funcs = [(a, ef.E_func(s, l, _cfg(args))) for l, a in sorted(coeffs.items())]

    def value(x):
        terms = [a * f(x) for a, f in funcs]
        return complex(math.fsum(t.real for t in terms), math.fsum(t.imag for t in terms))

    values = pmap(value, pts)
    rows = [[format_rational(c) for c in p] + [fmt_float(v.real), fmt_float(v.imag)] for p, v in zip(pts, values)]
    write_text(args.out, _csv([[f"x{i + 1}" for i in range(s.rank)] + ["re", "im"]] + rows))
    return 0


def cmd_symfunc_hermite(args) -> int:
    if len(args.multi) != args.n:
        return _usage_exit(f"--m needs {args.n} entries")
    pts = []
    if args.points:
        pts.extend(tuple(float(c) for c in r[: args.n]) for r in read_rows(args.points))
    if args.point:
        pts.extend(tuple(float(c) for c in p) for p in args.point)
    if not pts:
        return _usage_exit("no evaluation points: give --points FILE or --point x,y,...")
    if any(len(p) != args.n for p in pts):
        return _usage_exit(f"points need {args.n} coordinates")
    values = pmap(lambda p: sym_hermite_eval(args.multi, p), pts)
    rows = [[fmt_float(c) for c in p] + [fmt_float(v)] for p, v in zip(pts, values)]
    write_text(args.out, _csv([[f"x{i + 1}" for i in range(args.n)] + ["value"]] + rows))
    return 0


def cmd_verify(args) -> int:
    from .verify import SUITES, run

    names = [args.suite] if args.suite else None
    if args.suite and args.suite not in SUITES:
        return _usage_exit(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)}")
    rows = run(names)
    width = max(len(c) for _, c, _, _ in rows)
    for suite, check, ok, detail in rows:
        sys.stdout.write(f"{'PASS' if ok else 'FAIL'}  {suite:<14} {check:<{width}}  {detail}\n")
    return 0 if all(ok for _, _, ok, _ in rows) else 1


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="eorbit",
        description="Root systems, even Weyl group orbits, E-orbit functions and their transforms.",
        epilog="Diagrams are written like A2, C3, G2 or as JSON {\"cartan\": [[2,-1],[-1,2]]}. "
        "Weights are comma-separated rationals in the omega basis, e.g. 1,1/2. "
        "EORBIT_THREADS caps parallel evaluation.",
    )
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, help_, fn):
        sp = sub.add_parser(name, help=help_, description=help_)
        sp.set_defaults(fn=fn)
        return sp

    def split_opt(sp):
        sp.add_argument("--split-root", type=int, metavar="K",
                        help="1-based index of the positive root used for r_alpha (default: first simple root)")

    sp = add("group", "generate the Weyl group", cmd_group)
    sp.add_argument("diagram")
    sp.add_argument("--json", action="store_true", help="emit matrices, determinants and words")

    sp = add("orbit", "list an orbit (W by default, W_e with --even)", cmd_orbit)
    sp.add_argument("diagram")
    sp.add_argument("weight", type=parse_vector)
    sp.add_argument("--even", action="store_true")
    split_opt(sp)

    sp = add("product", "decompose O_e(lam) x O_e(mu) into W_e-orbits", cmd_product)
    sp.add_argument("diagram")
    sp.add_argument("lam", type=parse_vector)
    sp.add_argument("mu", type=parse_vector)
    split_opt(sp)

    sp = add("branch", "restrict O_e(lam) to a subgroup", cmd_branch)
    sp.add_argument("diagram")
    sp.add_argument("weight", type=parse_vector)
    sp.add_argument("--to", help="coordinate-drop target, e.g. B2 for B3")
    sp.add_argument("--roots", help="equal-rank subsystem roots as JSON alpha coordinates")
    sp.add_argument("--route", choices=("projection", "cosets"), default="projection")
    split_opt(sp)

    sp = add("eval", "evaluate an orbit function at points", cmd_eval)
    sp.add_argument("diagram")
    sp.add_argument("--family", choices=ef.FAMILIES, default="E")
    sp.add_argument("--lambda", dest="lam", type=parse_vector, required=True)
    sp.add_argument("--points", help="CSV of omega coordinates")
    sp.add_argument("--point", type=parse_vector, action="append")
    sp.add_argument("--out")
    split_opt(sp)

    sp = add("grid", "list F_M / F^e_M (or T_m with --m)", cmd_grid)
    sp.add_argument("diagram")
    sp.add_argument("--M", type=int)
    sp.add_argument("--m", type=int)
    sp.add_argument("--even", action="store_true")
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--basis", choices=("omega", "coweight"), default="coweight")
    sp.add_argument("--stabilizers", action="store_true", help="include W_e stabilizer orders")
    sp.add_argument("--dump-grid-csv", metavar="PATH")
    split_opt(sp)

    dft = sub.add_parser("dft", help="finite E-orbit transform")
    dsub = dft.add_subparsers(dest="action", required=True, metavar="ACTION")
    sp = dsub.add_parser("analyze", help="coefficients from samples on T_m")
    sp.set_defaults(fn=cmd_dft_analyze)
    sp.add_argument("diagram")
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--samples", required=True, help="CSV: omega coordinates, re, im")
    sp.add_argument("--spectrum", default="auto", help="'auto' or a JSON list of weights")
    sp.add_argument("--route", choices=("torus", "domain"), default="torus")
    sp.add_argument("--out")
    split_opt(sp)
    sp = dsub.add_parser("synthesize", help="values from coefficients")
    sp.set_defaults(fn=cmd_dft_synthesize)
    sp.add_argument("diagram")
    sp.add_argument("--coeffs", required=True)
    sp.add_argument("--points")
    sp.add_argument("--point", type=parse_vector, action="append")
    sp.add_argument("--out")
    split_opt(sp)

    sym = sub.add_parser("symfunc", help="symmetrized function families")
    ssub = sym.add_subparsers(dest="action", required=True, metavar="ACTION")
    sp = ssub.add_parser("hermite", help="even-symmetrized Hermite polynomials")
    sp.set_defaults(fn=cmd_symfunc_hermite)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--m", dest="multi", type=parse_ints, required=True)
    sp.add_argument("--points")
    sp.add_argument("--point", type=parse_vector, action="append")
    sp.add_argument("--out")

    sp = add("verify", "run invariant suites and print a pass/fail table", cmd_verify)
    sp.add_argument("--suite")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        threads()
        return args.fn(args)
    except SystemExit as exc:
        return int(exc.code or 0)
    except EOrbitError as exc:
        sys.stderr.write(f"{type(exc).__name__}: {exc}\n")
        return 1
    except (OSError, json.JSONDecodeError, KeyError, ValueError) as exc:
        return _usage_exit(str(exc))


if __name__ == "__main__":
    sys.exit(main())
