"""Root systems built from Coxeter-Dynkin diagrams.

Everything here is exact: coordinates are tuples of ``Fraction`` and
matrices are tuples of tuples.  A weight is stored by its coordinates in
the basis of fundamental weights (the omega basis).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import InvalidDiagram, RankMismatch, UnsupportedBasis

Weight = tuple  # tuple[Fraction, ...] in the omega basis
Matrix = tuple  # tuple[tuple[...], ...]

BASES = ("omega", "alpha", "coroot", "coweight", "orthogonal")

_RANK_RANGE = {
    "A": (1, None),
    "B": (3, None),
    "C": (2, None),
    "D": (4, None),
    "E": (6, 8),
    "F": (4, 4),
    "G": (2, 2),
}


def to_fraction(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, str):
        return Fraction(v.strip())
    if isinstance(v, float):
        return Fraction(v).limit_denominator(10**12)
    return Fraction(v)


def weight(coords: Iterable) -> Weight:
    """Coerce a coordinate sequence (ints, strings like "1/2", Fractions) to a Weight."""
    return tuple(to_fraction(c) for c in coords)


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


# ---------------------------------------------------------------- linear algebra

def mat_inverse(m: Sequence[Sequence]) -> Matrix:
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise InvalidDiagram("singular matrix")
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return tuple(tuple(row[n:]) for row in a)


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    cols = list(zip(*b))
    return tuple(tuple(sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in cols) for row in a)


def vec_mat(v: Sequence, m: Sequence[Sequence]) -> tuple:
    """Row vector times matrix."""
    n = len(m[0]) if m else 0
    return tuple(sum((v[i] * m[i][j] for i in range(len(v))), Fraction(0)) for j in range(n))


def _det(m: Sequence[Sequence]) -> Fraction:
    a = [[Fraction(x) for x in row] for row in m]
    n = len(a)
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        for r in range(col + 1, n):
            f = a[r][col] / a[col][col]
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return det


# ---------------------------------------------------------------- diagrams

@dataclass(frozen=True)
class DiagramSpec:
    """Either a series letter with a rank or an explicit Cartan matrix."""

    series: str | None = None
    rank: int | None = None
    cartan: Matrix | None = None

    @property
    def name(self) -> str:
        if self.series is not None:
            return f"{self.series}{self.rank}"
        return "cartan" + json.dumps([list(r) for r in self.cartan], separators=(",", ":"))


def parse_diagram(text: str) -> DiagramSpec:
    """Parse ``"A2"``-style names or a JSON object ``{"cartan": [[...]]}``."""
    text = text.strip()
    if text.startswith("{"):
        try:
            obj = json.loads(text)
            rows = obj["cartan"]
            cartan = tuple(tuple(int(x) for x in row) for row in rows)
        except (ValueError, KeyError, TypeError) as exc:
            raise InvalidDiagram(f"malformed diagram JSON: {exc}") from None
        return DiagramSpec(cartan=cartan)
    m = re.fullmatch(r"([A-Ga-g])\s*(\d+)", text)
    if not m:
        raise InvalidDiagram(f"cannot parse diagram {text!r}")
    series, rank = m.group(1).upper(), int(m.group(2))
    lo, hi = _RANK_RANGE[series]
    if rank < lo or (hi is not None and rank > hi):
        raise InvalidDiagram(f"{series}{rank} is not a valid diagram")
    return DiagramSpec(series=series, rank=rank)


def _classical_simple_roots(series: str, n: int) -> tuple:
    """Simple roots in orthogonal coordinates for A/B/C/D."""
    dim = n + 1 if series == "A" else n

    def e(*pairs):
        v = [Fraction(0)] * dim
        for idx, c in pairs:
            v[idx] += c
        return tuple(v)

    if series == "A":
        return tuple(e((i, 1), (i + 1, -1)) for i in range(n))
    if series in "BC":
        roots = [e((i, 1), (i + 1, -1)) for i in range(n - 1)]
        roots.append(e((n - 1, 1 if series == "B" else 2)))
        return tuple(roots)
    if series == "D":
        roots = [e((i, 1), (i + 1, -1)) for i in range(n - 2)]
        # the pair of fork roots, ordered so that lambda_{n-1} = x_{n-1} + x_n
        roots.append(e((n - 2, 1), (n - 1, 1)))
        roots.append(e((n - 2, 1), (n - 1, -1)))
        return tuple(roots)
    raise UnsupportedBasis(f"no orthogonal chart for series {series}")


def _dot(u, v):
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def _exceptional_cartan(series: str, n: int) -> Matrix:
    if series == "G":
        return ((2, -3), (-1, 2))
    if series == "F":
        return ((2, -1, 0, 0), (-1, 2, -2, 0), (0, -1, 2, -1), (0, 0, -1, 2))
    # E_n: a chain 1..n-1 with node n attached to node 3 (E6, E7) or node 5 (E8)
    edges = [(i, i + 1) for i in range(n - 2)]
    edges.append((2 if n in (6, 7) else 4, n - 1))
    m = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i, j in edges:
        m[i][j] = m[j][i] = -1
    return tuple(tuple(r) for r in m)


def _validate_cartan(m: Matrix) -> None:
    n = len(m)
    if n == 0 or any(len(r) != n for r in m):
        raise InvalidDiagram("Cartan matrix must be square and non-empty")
    for i in range(n):
        if m[i][i] != 2:
            raise InvalidDiagram("Cartan diagonal entries must equal 2")
        for j in range(n):
            if i != j:
                if m[i][j] > 0:
                    raise InvalidDiagram("off-diagonal Cartan entries must be <= 0")
                if (m[i][j] == 0) != (m[j][i] == 0):
                    raise InvalidDiagram("M_ij = 0 must hold iff M_ji = 0")


def _root_norms(m: Matrix) -> tuple:
    """Squared lengths of simple roots, longest root of each component = 2."""
    n = len(m)
    norms: list = [None] * n
    for start in range(n):
        if norms[start] is not None:
            continue
        comp = [start]
        norms[start] = Fraction(1)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if j != i and m[i][j] != 0:
                    # M_ij |a_j|^2 = M_ji |a_i|^2
                    val = norms[i] * Fraction(m[j][i], m[i][j])
                    if norms[j] is None:
                        norms[j] = val
                        comp.append(j)
                        stack.append(j)
                    elif norms[j] != val:
                        raise InvalidDiagram("Cartan matrix is not symmetrizable")
        top = max(norms[k] for k in comp)
        for k in comp:
            norms[k] = norms[k] * 2 / top
    return tuple(norms)


def _components(m: Matrix) -> list:
    n = len(m)
    seen, comps = set(), []
    for s in range(n):
        if s in seen:
            continue
        comp, stack = [], [s]
        seen.add(s)
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in range(n):
                if j not in seen and m[i][j] != 0:
                    seen.add(j)
                    stack.append(j)
        comps.append(sorted(comp))
    return comps


def _positive_roots(m: Matrix, limit: int = 100000) -> tuple:
    n = len(m)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    found = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for beta in frontier:
            for i in range(n):
                pair = sum(beta[j] * m[j][i] for j in range(n))
                if pair == 0:
                    continue
                new = list(beta)
                new[i] -= pair
                new = tuple(new)
                if all(c >= 0 for c in new) and any(new) and new not in found:
                    found.add(new)
                    nxt.append(new)
        if len(found) > limit:
            raise InvalidDiagram("root closure does not terminate; matrix is not of finite type")
        frontier = nxt
    return tuple(sorted(found))


@dataclass(frozen=True, eq=False)
class RootSystem:
    """Static data of a root system; immutable once built.

    Instances are cached by ``build``; equality is identity.
    """

    name: str
    series: str | None
    rank: int
    cartan: Matrix
    cartan_inverse: Matrix
    root_norms: tuple
    quadratic_form: Matrix
    positive_roots: tuple
    marks: tuple | None
    comarks: tuple | None
    ortho_roots: Matrix | None = None

    @property
    def highest_root(self) -> Weight:
        """Highest root in omega coordinates."""
        if self.marks is None:
            raise InvalidDiagram("highest root is undefined for a disconnected diagram")
        return vec_mat([Fraction(x) for x in self.marks], self.cartan)

    def root_omega(self, alpha_coords: Sequence[int]) -> Weight:
        return vec_mat([Fraction(x) for x in alpha_coords], self.cartan)

    def root_norm(self, alpha_coords: Sequence[int]) -> Fraction:
        w = self.root_omega(alpha_coords)
        return scalar_product(self, w, w)

    def to_dict(self) -> dict:
        r = format_rational
        return {
            "name": self.name,
            "rank": self.rank,
            "cartan": [list(row) for row in self.cartan],
            "cartanInverse": [[r(x) for x in row] for row in self.cartan_inverse],
            "rootNorms": [r(x) for x in self.root_norms],
            "quadraticForm": [[r(x) for x in row] for row in self.quadratic_form],
            "positiveRoots": [list(p) for p in self.positive_roots],
            "highestRootMarks": list(self.marks) if self.marks else None,
            "comarks": list(self.comarks) if self.comarks else None,
        }


def _assemble(name, series, cartan, ortho=None) -> RootSystem:
    _validate_cartan(cartan)
    n = len(cartan)
    norms = _root_norms(cartan)
    inv = mat_inverse(cartan)
    half = [x / 2 for x in norms]
    s = tuple(tuple(inv[i][j] * half[j] for j in range(n)) for i in range(n))
    if any(s[i][j] != s[j][i] for i in range(n) for j in range(n)):
        raise InvalidDiagram("quadratic form is not symmetric")
    if any(_det([row[:k] for row in s[:k]]) <= 0 for k in range(1, n + 1)):
        raise InvalidDiagram("Cartan matrix is not of finite type")
    roots = _positive_roots(cartan)
    marks = comarks = None
    if len(_components(cartan)) == 1:
        top = max(roots, key=lambda r: (sum(r), r))
        marks = top
        comarks = tuple(int(mk * nm / 2) for mk, nm in zip(top, norms))
    return RootSystem(name, series, n, cartan, inv, norms, s, roots, marks, comarks, ortho)


@lru_cache(maxsize=None)
def build(spec: DiagramSpec | str) -> RootSystem:
    """Construct all root-system data for a diagram."""
    if isinstance(spec, str):
        spec = parse_diagram(spec)
    if spec.cartan is not None:
        cartan = tuple(tuple(int(x) for x in row) for row in spec.cartan)
        return _assemble(spec.name, None, cartan)
    series, n = spec.series, spec.rank
    if series not in _RANK_RANGE or n is None or n < 1:
        raise InvalidDiagram(f"invalid diagram {series}{n}")
    return _classical_or_exceptional(series, n)


@lru_cache(maxsize=None)
def _classical_or_exceptional(series: str, n: int) -> RootSystem:
    # unrestricted ranks for internal use (B2, D3 appear as branching targets)
    if series in "ABCD":
        if (series, n) in {("B", 1), ("C", 1), ("D", 1), ("D", 2)}:
            raise InvalidDiagram(f"{series}{n} is not a valid diagram")
        ortho = _classical_simple_roots(series, n)
        cartan = tuple(
            tuple(int(2 * _dot(a, b) / _dot(b, b)) for b in ortho) for a in ortho
        )
        return _assemble(f"{series}{n}", series, cartan, ortho)
    return _assemble(f"{series}{n}", series, _exceptional_cartan(series, n))


def classical(series: str, n: int) -> RootSystem:
    """Classical system without the public rank restrictions (e.g. B2, D3)."""
    return _classical_or_exceptional(series, n)


# ---------------------------------------------------------------- metric and bases

def _check_rank(sys: RootSystem, *vs) -> None:
    for v in vs:
        if len(v) != sys.rank:
            raise RankMismatch(f"expected {sys.rank} coordinates, got {len(v)}")


def scalar_product(sys: RootSystem, x: Sequence, y: Sequence):
    """<x, y> for two vectors in omega coordinates."""
    _check_rank(sys, x, y)
    s = sys.quadratic_form
    n = sys.rank
    if all(isinstance(c, (int, Fraction)) for c in (*x, *y)):
        return sum((x[i] * s[i][j] * y[j] for i in range(n) for j in range(n)), Fraction(0))
    sf = [[float(c) for c in row] for row in s]
    return sum(float(x[i]) * sf[i][j] * float(y[j]) for i in range(n) for j in range(n))


def ortho_scale(sys: RootSystem) -> Fraction:
    """Factor k with <x, y> = k * (Euclidean dot of the orthogonal images)."""
    if sys.ortho_roots is None:
        raise UnsupportedBasis(f"no orthogonal chart for {sys.name}")
    return 2 / max(_dot(r, r) for r in sys.ortho_roots)


def _to_omega(sys: RootSystem, v: tuple, frm: str) -> Weight:
    n = sys.rank
    if frm == "omega":
        return v
    if frm == "alpha":
        return vec_mat(v, sys.cartan)
    if frm == "coroot":
        # alpha_j^vee = (2/|alpha_j|^2) alpha_j
        scaled = [v[j] * 2 / sys.root_norms[j] for j in range(n)]
        return vec_mat(scaled, sys.cartan)
    if frm == "coweight":
        return tuple(v[j] * 2 / sys.root_norms[j] for j in range(n))
    if frm == "orthogonal":
        roots = sys.ortho_roots
        return tuple(2 * _dot(v, r) / _dot(r, r) for r in roots)
    raise UnsupportedBasis(f"unknown basis {frm!r}")


def _from_omega(sys: RootSystem, a: Weight, to: str) -> tuple:
    n = sys.rank
    if to == "omega":
        return a
    if to == "alpha":
        return vec_mat(a, sys.cartan_inverse)
    if to == "coroot":
        return vec_mat(a, sys.quadratic_form)
    if to == "coweight":
        return tuple(a[j] * sys.root_norms[j] / 2 for j in range(n))
    if to == "orthogonal":
        return vec_mat(vec_mat(a, sys.cartan_inverse), sys.ortho_roots)
    raise UnsupportedBasis(f"unknown basis {to!r}")


def basis_convert(sys: RootSystem, v: Sequence, frm: str, to: str) -> tuple:
    """Exact change of coordinates between the supported bases.

    Orthogonal coordinates exist for series A, B, C, D only.  For A_n they
    have n+1 entries; any shift is accepted on input and the output always
    sums to zero.
    """
    for b in (frm, to):
        if b not in BASES:
            raise UnsupportedBasis(f"unknown basis {b!r}")
        if b == "orthogonal" and sys.ortho_roots is None:
            raise UnsupportedBasis(f"no orthogonal chart for {sys.name}")
    v = weight(v)
    expected = len(sys.ortho_roots[0]) if frm == "orthogonal" else sys.rank
    if len(v) != expected:
        raise RankMismatch(f"expected {expected} coordinates, got {len(v)}")
    if frm == to and frm != "orthogonal":
        return v
    return _from_omega(sys, _to_omega(sys, v, frm), to)
