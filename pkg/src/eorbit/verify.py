"""Quick invariant suites behind ``eorbit verify``.

Each suite returns a list of (check, passed, detail) rows.  The suites are
small enough to run in seconds; the test-suite covers the same ground in
more depth.
"""

from __future__ import annotations

import itertools
import math
import random
from typing import Callable

from . import efunctions as ef
from . import orbits as ob
from . import transforms as tf
from .rootsystem import build
from .symfunc import even_stabilizer_order, hermite_eigen_rhs, hermite_family, hermite_fourier, sym_poly_inner
from .weylgroup import generate, preserves_form, split_reflection

Row = tuple


def _groups() -> list:
    rows = []
    for name in ("A1", "A2", "A3", "A4", "B3", "B4", "C2", "C3", "C4", "D4", "G2", "F4"):
        sys = build(name)
        g = generate(sys)
        ok = len(g) == ob.weyl_order(sys) and 2 * len(g.even) == len(g)
        ok = ok and all(preserves_form(sys, e) for e in g.generators)
        rows.append((f"order {name}", ok, f"|W|={len(g)}"))
    return rows


def _orbits() -> list:
    rows = []
    for name in ("A2", "C2", "G2", "A3", "B3", "C3"):
        sys = build(name)
        lam = tuple(range(1, sys.rank + 1))
        full = set(ob.w_orbit(sys, lam))
        a = set(ob.we_orbit(sys, lam).points)
        b = set(ob.we_orbit(sys, split_reflection(sys).apply(lam)).points)
        rows.append((f"W = We u r We {name}", full == a | b and not a & b, f"{len(full)} points"))
    return rows


def _products() -> list:
    rows = []
    for name in ("A2", "C2", "G2"):
        sys = build(name)
        ok = True
        for lam, mu in itertools.product(itertools.product(range(3), repeat=2), repeat=2):
            d = ob.product_decompose(sys, lam, mu)
            size = lambda r: len(ob.we_orbit(sys, r).points)
            ok &= d.total(size) == size(lam) * size(mu)
        rows.append((f"point count {name}", ok, "coords in {0,1,2}"))
    return rows


def _orthogonality() -> list:
    rows = []
    m = 7
    for name in ("A2", "C2", "G2"):
        sys = build(name)
        spec = tf.auto_spectrum(sys, m)
        grid = tf.grid_tm(sys, m)
        funcs = {l: ef.E_func(sys, l) for l in spec}
        vals = {l: [f(x) for x in grid.points] for l, f in funcs.items()}
        worst = 0.0
        for a, b in itertools.product(spec, repeat=2):
            s = sum(u * v.conjugate() for u, v in zip(vals[a], vals[b]))
            want = m ** 2 * len(ob.we_orbit(sys, a).points) if a == b else 0
            worst = max(worst, abs(s - want) / max(1, want))
        rows.append((f"T_7 orthogonality {name}", worst <= 1e-9, f"{len(spec)} weights, err {worst:.1e}"))
    return rows


def _transform() -> list:
    rows = []
    rng = random.Random(7)
    for name in ("A2", "C2"):
        sys = build(name)
        spec = tf.auto_spectrum(sys, 6)
        coeffs = tf.random_coefficients(spec, rng)
        samples = tf.synthesize(sys, coeffs, tf.grid_tm(sys, 6).points)
        got = tf.analyze(sys, samples, spec, 6)
        err = max(abs(got[l] - coeffs[l]) for l in spec)
        rows.append((f"round trip {name}", err <= 1e-10, f"err {err:.1e}"))
    return rows


def _laplacian() -> list:
    rows = []
    rng = random.Random(3)
    for name in ("A2", "C2", "G2", "A3", "B3", "C3"):
        sys = build(name)
        lam = tuple(rng.randint(0, 2) for _ in range(sys.rank))
        x = tuple(rng.uniform(-1, 1) for _ in range(sys.rank))
        r = ef.laplacian_residual(sys, lam, x)
        rows.append((f"Laplacian {name} {lam}", r <= ef.laplacian_tolerance(sys, lam), f"res {r:.1e}"))
    return rows


def _identities() -> list:
    rows = []
    rng = random.Random(11)
    for name in ("A2", "C2", "G2"):
        sys = build(name)
        lam = (2, 1)
        e = ef.E_func(sys, lam)
        worst = 0.0
        for _ in range(10):
            x = tuple(rng.uniform(-1, 1) for _ in range(2))
            for g in generate(sys).even:
                worst = max(worst, abs(e(g.apply(x)) - e(x)))
        rows.append((f"We invariance {name}", worst <= 1e-10, f"err {worst:.1e}"))
    return rows


def _branching() -> list:
    rows = []
    for name in ("A3", "B3", "C3", "D4"):
        sys = build(name)
        rule = ob.coordinate_drop_rule(sys)
        lam = tuple(range(1, sys.rank + 1))
        a = ob.branch_decompose(sys, lam, rule)
        b = ob.branch_decompose_cosets(sys, lam, rule)
        rows.append((f"branch {name} -> {rule.target.name}", a == b, f"{len(a.terms)} terms"))
    return rows


def _symfunc() -> list:
    fam = hermite_family(6)
    ms = [m for m in itertools.product(range(3), repeat=3) if m[0] >= m[1] >= m[2]]
    worst = 0.0
    for a, b in itertools.combinations_with_replacement(ms, 2):
        want = 1 / even_stabilizer_order(a) if a == b else 0.0
        worst = max(worst, abs(sym_poly_inner(fam, a, b) - want))
    herm = max(abs(hermite_fourier(m, x) - hermite_eigen_rhs(m, x)) for m in range(5) for x in (0, 0.5, 1))
    return [("sym-p orthogonality", worst <= 1e-8, f"err {worst:.1e}"),
            ("Hermite eigenrelation", herm <= 1e-6, f"err {herm:.1e}")]


SUITES: dict[str, Callable[[], list]] = {
    "groups": _groups,
    "orbits": _orbits,
    "products": _products,
    "orthogonality": _orthogonality,
    "transform": _transform,
    "laplacian": _laplacian,
    "identities": _identities,
    "branching": _branching,
    "symfunc": _symfunc,
}


def run(names=None) -> list:
    names = names or list(SUITES)
    rows = []
    for n in names:
        for check, ok, detail in SUITES[n]():
            rows.append((n, check, ok, detail))
    return rows
