"""W- and W_e-orbits, products of orbits and branching to subgroups.

Orbits are found by a breadth-first walk over (point, parity) states under
the simple reflections, so no group table is needed.  Products and
branchings are brute force: every point is reduced and counted.
"""

from __future__ import annotations

import math
from collections import Counter, deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .errors import NonIntegralMultiplicity, NotStrictlyDominant, RankMismatch, UnsupportedBranch
from .rootsystem import RootSystem, _assemble, basis_convert, classical, format_rational, weight
from .weylgroup import (
    DEFAULT_CONFIG,
    ChamberConfig,
    GroupElement,
    even_dominant_rep,
    root_reflection,
    split_reflection,
)


def weyl_order(sys: RootSystem) -> int:
    """|W| = n! * prod(marks) * det(M) for a connected diagram."""
    if sys.marks is None:
        return len(w_orbit(sys, tuple(1 for _ in range(sys.rank))))
    from .rootsystem import _det

    return math.factorial(sys.rank) * math.prod(sys.marks) * int(_det(sys.cartan))


def even_order(sys: RootSystem) -> int:
    return weyl_order(sys) // 2


# ---------------------------------------------------------------- integer scaling

def _scale(points: Sequence[Sequence]) -> tuple:
    """Common denominator d and integer copies of the points scaled by d."""
    d = 1
    for p in points:
        for c in p:
            d = math.lcm(d, Fraction(c).denominator)
    return d, [tuple(int(Fraction(c) * d) for c in p) for p in points]


def _unscale(p: Sequence[int], d: int) -> tuple:
    return tuple(Fraction(c, d) for c in p)


def _walk(sys: RootSystem, start: tuple, gens=None) -> dict:
    """Map every point of the W-orbit (or of <gens>) to the set of parities reaching it."""
    n = sys.rank
    cart = sys.cartan
    reached = {start: {0}}
    queue = deque([(start, 0)])
    while queue:
        p, par = queue.popleft()
        if gens is None:
            nbrs = []
            for i in range(n):
                pi = p[i]
                if pi == 0:
                    nbrs.append(p)
                    continue
                row = cart[i]
                nbrs.append(tuple(p[k] - pi * row[k] for k in range(n)))
        else:
            nbrs = [g.apply(p) for g in gens]
        for q in nbrs:
            s = reached.setdefault(q, set())
            if par ^ 1 not in s:
                s.add(par ^ 1)
                queue.append((q, par ^ 1))
    return reached


def _int_even_orbit(sys: RootSystem, p: tuple, gens=None) -> tuple:
    reached = _walk(sys, p, gens)
    return tuple(sorted(q for q, s in reached.items() if 0 in s))


# ---------------------------------------------------------------- orbit types

@dataclass(frozen=True)
class Orbit:
    rep: tuple
    points: tuple
    kind: str  # "first" when rep is dominant, otherwise "second"
    stabilizer_order: int

    def __len__(self) -> int:
        return len(self.points)

    def to_dict(self) -> dict:
        return {
            "rep": [format_rational(c) for c in self.rep],
            "kind": self.kind,
            "stabilizerOrder": self.stabilizer_order,
            "points": [[format_rational(c) for c in p] for p in self.points],
        }


@dataclass(frozen=True)
class SignedOrbit:
    points: tuple  # ((point, sign), ...)

    def part(self, sign: int) -> tuple:
        return tuple(p for p, s in self.points if s == sign)


@dataclass(frozen=True)
class OrbitDecomposition:
    terms: tuple  # ((rep, multiplicity), ...) sorted by rep

    def as_dict(self) -> dict:
        return dict(self.terms)

    def total(self, size) -> int:
        """Sum of multiplicity * size(rep) for a size function."""
        return sum(m * size(rep) for rep, m in self.terms)

    def to_dict(self) -> dict:
        return {"terms": [{"rep": [format_rational(c) for c in r], "mult": m} for r, m in self.terms]}


def _decomposition(counter: dict) -> OrbitDecomposition:
    return OrbitDecomposition(tuple(sorted(counter.items())))


# ---------------------------------------------------------------- orbits

def _checked(sys: RootSystem, lam: Sequence) -> tuple:
    if len(lam) != sys.rank:
        raise RankMismatch(f"{sys.name} weights have {sys.rank} coordinates, got {len(lam)}")
    return weight(lam)


def w_orbit(sys: RootSystem, lam: Sequence) -> tuple:
    """All points of the full W-orbit, sorted."""
    d, (p,) = _scale([_checked(sys, lam)])
    return tuple(sorted(_unscale(q, d) for q in _walk(sys, p)))


@lru_cache(maxsize=4096)
def _we_orbit_cached(sys: RootSystem, lam: tuple, cfg: ChamberConfig) -> Orbit:
    rep = even_dominant_rep(sys, lam, cfg)
    d, (p,) = _scale([rep])
    pts = tuple(_unscale(q, d) for q in _int_even_orbit(sys, p))
    kind = "first" if all(c >= 0 for c in rep) else "second"
    return Orbit(rep, pts, kind, even_order(sys) // len(pts))


def we_orbit(sys: RootSystem, lam: Sequence, cfg: ChamberConfig = DEFAULT_CONFIG) -> Orbit:
    """The W_e-orbit of lam, with its even-dominant representative."""
    return _we_orbit_cached(sys, _checked(sys, lam), cfg)


def we_orbit_by_group(sys: RootSystem, group, lam: Sequence) -> tuple:
    """Orbit points from the explicit even elements of a generated group."""
    lam = _checked(sys, lam)
    return tuple(sorted({g.apply(lam) for g in group.even}))


def signed_orbit(sys: RootSystem, lam: Sequence) -> SignedOrbit:
    """W-orbit of a strictly dominant lam with each point signed by det w."""
    lam = _checked(sys, lam)
    if not all(c > 0 for c in lam):
        raise NotStrictlyDominant(f"{lam} is not strictly dominant")
    d, (p,) = _scale([lam])
    reached = _walk(sys, p)
    pts = []
    for q, s in reached.items():
        (par,) = s  # trivial stabilizer: one parity per point
        pts.append((_unscale(q, d), 1 if par == 0 else -1))
    return SignedOrbit(tuple(sorted(pts)))


# ---------------------------------------------------------------- products

def product_decompose(
    sys: RootSystem, lam: Sequence, mu: Sequence, cfg: ChamberConfig = DEFAULT_CONFIG
) -> OrbitDecomposition:
    """Decompose O_e(lam) (x) O_e(mu) into W_e-orbits by summing all point pairs."""
    a = we_orbit(sys, lam, cfg).points
    b = we_orbit(sys, mu, cfg).points
    d, scaled = _scale(list(a) + list(b))
    ia, ib = scaled[: len(a)], scaled[len(a):]
    n = sys.rank
    counts: Counter = Counter()
    for p in ia:
        for q in ib:
            counts[tuple(p[k] + q[k] for k in range(n))] += 1
    reps: Counter = Counter()
    for s, c in counts.items():
        reps[even_dominant_rep(sys, s, cfg)] += c
    out = {}
    for r, c in reps.items():
        size = len(we_orbit(sys, _unscale(r, d), cfg).points)
        if c % size:
            raise NonIntegralMultiplicity(f"count {c} for {r} not divisible by {size}")
        out[_unscale(r, d)] = c // size
    return _decomposition(out)


# ---------------------------------------------------------------- branching

@dataclass(frozen=True)
class BranchRule:
    """Restriction from W_e to the even part of a reflection subgroup W'.

    ``roots`` are the simple roots of the subsystem (alpha coordinates of
    the big system).  ``kind`` is "drop" for the orthogonal
    coordinate-drop rules and "subsystem" for equal-rank subsystems.
    """

    kind: str
    source: RootSystem
    target: RootSystem
    roots: tuple
    target_cfg: ChamberConfig = DEFAULT_CONFIG

    def project(self, p: Sequence) -> tuple:
        """Image of a big-system omega vector in target omega coordinates."""
        src = self.source
        if self.kind == "drop":
            x = basis_convert(src, p, "omega", "orthogonal")
            x = x[:-1] if src.series == "A" else x[1:]
            return basis_convert(self.target, x, "orthogonal", "omega")
        # <p, beta_j^vee> for each subsystem simple root
        from .rootsystem import scalar_product

        out = []
        for beta in self.roots:
            b = src.root_omega(beta)
            out.append(2 * scalar_product(src, p, b) / scalar_product(src, b, b))
        return tuple(out)

    @property
    def generators(self) -> tuple:
        return tuple(root_reflection(self.source, r) for r in self.roots)


def coordinate_drop_rule(sys: RootSystem, cfg: ChamberConfig = DEFAULT_CONFIG) -> BranchRule:
    """A_n -> A_{n-1} (drop last coordinate); B/C/D_n -> B/C/D_{n-1} (drop first)."""
    s, n = sys.series, sys.rank
    if sys.ortho_roots is None or s not in "ABCD":
        raise UnsupportedBranch(f"no coordinate-drop rule for {sys.name}")
    if (s == "A" and n < 2) or (s in "BC" and n < 3) or (s == "D" and n < 4):
        raise UnsupportedBranch(f"no coordinate-drop rule below {sys.name}")
    target = classical(s, n - 1)
    unit = lambda i: tuple(int(k == i) for k in range(n))
    roots = tuple(unit(i) for i in range(n - 1)) if s == "A" else tuple(unit(i) for i in range(1, n))
    return BranchRule("drop", sys, target, roots, cfg)


def subsystem_rule(sys: RootSystem, roots: Sequence[Sequence[int]], cfg: ChamberConfig = DEFAULT_CONFIG) -> BranchRule:
    """Equal-rank subsystem spanned by the given roots (alpha coordinates)."""
    from .rootsystem import scalar_product

    roots = tuple(tuple(int(c) for c in r) for r in roots)
    if len(roots) != sys.rank:
        raise UnsupportedBranch("an equal-rank subsystem needs exactly rank-many roots")
    all_roots = set(sys.positive_roots) | {tuple(-c for c in r) for r in sys.positive_roots}
    if any(r not in all_roots for r in roots):
        raise UnsupportedBranch("subsystem generators must be roots")
    om = [sys.root_omega(r) for r in roots]
    cartan = []
    for j in range(len(roots)):
        row = []
        for k in range(len(roots)):
            v = 2 * scalar_product(sys, om[j], om[k]) / scalar_product(sys, om[k], om[k])
            if v.denominator != 1:
                raise UnsupportedBranch("roots do not form a subsystem basis")
            row.append(int(v))
        cartan.append(tuple(row))
    try:
        target = _assemble("sub" + str(cartan), None, tuple(cartan))
    except Exception as exc:
        raise UnsupportedBranch(f"roots do not form a subsystem basis: {exc}") from None
    return BranchRule("subsystem", sys, target, roots, cfg)


def branch_rule(sys: RootSystem, target: str, cfg: ChamberConfig = DEFAULT_CONFIG) -> BranchRule:
    """Coordinate-drop rule selected by a target name such as ``"B2"``."""
    rule = coordinate_drop_rule(sys, cfg)
    if rule.target.name != target.strip().upper():
        raise UnsupportedBranch(f"{sys.name} -> {target} is not a supported branching")
    return rule


def branch_decompose(
    sys: RootSystem, lam: Sequence, rule: BranchRule, cfg: ChamberConfig = DEFAULT_CONFIG
) -> OrbitDecomposition:
    """Split O_e(lam) into W'_e-orbits, reported by target representatives.

    Brute force: map every orbit point to the target coordinates, reduce to
    the target even-dominant chamber and divide counts by orbit sizes.
    """
    tgt, tcfg = rule.target, rule.target_cfg
    counts: Counter = Counter()
    for p in we_orbit(sys, lam, cfg).points:
        counts[even_dominant_rep(tgt, rule.project(p), tcfg)] += 1
    out = {}
    for r, c in counts.items():
        size = len(we_orbit(tgt, r, tcfg).points)
        if c % size:
            raise NonIntegralMultiplicity(f"count {c} for {r} not divisible by {size}")
        out[r] = c // size
    return _decomposition(out)


def branch_decompose_cosets(
    sys: RootSystem, lam: Sequence, rule: BranchRule, cfg: ChamberConfig = DEFAULT_CONFIG
) -> OrbitDecomposition:
    """Same decomposition via a partition of O_e(lam) into W'_e-orbits.

    Each block is found by walking the subgroup reflections inside the big
    system; one point per block is mapped to the target.  No division by
    orbit sizes is involved.
    """
    pts = we_orbit(sys, lam, cfg).points
    d, scaled = _scale(pts)
    gens = rule.generators
    seen = set()
    out: Counter = Counter()
    for p in scaled:
        if p in seen:
            continue
        block = _int_even_orbit(sys, p, gens)
        seen.update(block)
        image = rule.project(_unscale(block[0], d))
        out[even_dominant_rep(rule.target, image, rule.target_cfg)] += 1
    return _decomposition(dict(out))
