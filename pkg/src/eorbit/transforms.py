"""Sampling grids and the finite E-orbit transform.

Two kinds of grids appear here.  ``grid_tm`` is the torus group
T_m = (1/m)Q^vee / Q^vee, on which exponentials of integral weights are
orthogonal whenever their orbits stay distinct modulo mP.  ``grid_fm``
lists the points of (1/M)P^vee in the closed simplex F (or in F u r_alpha F)
by the highest-root marks.

Analysis sums over the whole torus.  The same numbers can be obtained
from one point per W_e-class, weighted by the class size; ``analyze``
exposes that route for cross-checking.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from .efunctions import E_func, OrbitSum, orbit_terms
from .errors import BandLimitExceeded, GridTooLarge, OrbitsNotSeparated
from .orbits import even_order, we_orbit
from .rootsystem import RootSystem, basis_convert, weight
from .weylgroup import DEFAULT_CONFIG, ChamberConfig, affine_reduce, generate, split_reflection

DEFAULT_MAX_POINTS = 1_000_000


@dataclass(frozen=True)
class SampleGrid:
    """Rational points in omega coordinates with their stabilizer orders in W_e."""

    kind: str  # "T" or "F"
    size: int  # m for T_m, M for F_M
    even: bool
    points: tuple
    stabilizers: tuple = field(default=(), compare=False)

    def __len__(self) -> int:
        return len(self.points)

    def coweight_points(self, sys: RootSystem) -> tuple:
        """Points in omega^vee coordinates, the form used in grid listings."""
        return tuple(basis_convert(sys, p, "omega", "coweight") for p in self.points)


# ---------------------------------------------------------------- torus stabilizers

def _in_coroot_lattice(sys: RootSystem, v: Sequence) -> bool:
    return all(Fraction(c).denominator == 1 for c in basis_convert(sys, v, "omega", "coroot"))


def torus_stabilizer(sys: RootSystem, x: Sequence) -> int:
    """#{w in W_e : w x = x mod Q^vee}."""
    x = weight(x)
    count = 0
    for g in generate(sys).even:
        y = g.apply(x)
        if _in_coroot_lattice(sys, tuple(a - b for a, b in zip(y, x))):
            count += 1
    return count


# ---------------------------------------------------------------- grids

def grid_tm(sys: RootSystem, m: int, max_points: int = DEFAULT_MAX_POINTS) -> SampleGrid:
    """All m^n points sum_i (d_i/m) alpha_i^vee, 0 <= d_i < m, in omega coordinates."""
    if m < 1:
        raise ValueError("m must be positive")
    n = sys.rank
    if m ** n > max_points:
        raise GridTooLarge(f"T_{m} has {m ** n} points, cap is {max_points}")
    pts = []
    for d in itertools.product(range(m), repeat=n):
        pts.append(basis_convert(sys, [Fraction(k, m) for k in d], "coroot", "omega"))
    return SampleGrid("T", m, False, tuple(pts))


def grid_fm(
    sys: RootSystem,
    M: int,
    even: bool = False,
    cfg: ChamberConfig = DEFAULT_CONFIG,
    max_points: int = DEFAULT_MAX_POINTS,
    with_stabilizers: bool = False,
) -> SampleGrid:
    """Points (s_1/M) omega_1^vee + ... with s_i >= 0 and sum s_i m_i <= M.

    With ``even`` the r_alpha images are added and duplicates removed.
    Points are sorted and given in omega coordinates.
    """
    if M < 1:
        raise ValueError("M must be positive")
    marks = sys.marks
    if marks is None:
        raise ValueError("grids need a connected diagram")
    n = sys.rank
    found = []

    def rec(i, left, acc):
        if len(found) > max_points:
            raise GridTooLarge(f"F_{M} exceeds the cap of {max_points} points")
        if i == n:
            found.append(tuple(acc))
            return
        for s in range(left // marks[i] + 1):
            rec(i + 1, left - s * marks[i], acc + [s])

    rec(0, M, [])
    pts = {basis_convert(sys, [Fraction(s, M) for s in t], "coweight", "omega") for t in found}
    if even:
        r = split_reflection(sys, cfg)
        pts |= {r.apply(p) for p in pts}
    pts = tuple(sorted(pts))
    stabs = tuple(torus_stabilizer(sys, p) for p in pts) if with_stabilizers else ()
    return SampleGrid("F", M, even, pts, stabs)


def reduce_grid(sys: RootSystem, grid: SampleGrid, cfg: ChamberConfig = DEFAULT_CONFIG) -> dict:
    """Map each even-fundamental-domain point to how many grid points reduce onto it."""
    out: dict = {}
    for p in grid.points:
        q = affine_reduce(sys, p, even=True, cfg=cfg)
        out[q] = out.get(q, 0) + 1
    return dict(sorted(out.items()))


# ---------------------------------------------------------------- inner products

def _fsum_complex(values) -> complex:
    values = list(values)
    return complex(math.fsum(v.real for v in values), math.fsum(v.imag for v in values))


def tm_inner(f: Callable, g: Callable, grid: SampleGrid) -> complex:
    """sum over the grid of f(x) * conj(g(x)), in grid order."""
    return _fsum_complex(f(x) * g(x).conjugate() for x in grid.points)


# ---------------------------------------------------------------- separation

def _congruent(a: Sequence, b: Sequence, m: int) -> bool:
    return all((Fraction(x) - Fraction(y)) % m == 0 for x, y in zip(a, b))


def check_separated(sys: RootSystem, spectrum: Sequence, m: int, cfg: ChamberConfig = DEFAULT_CONFIG) -> None:
    """Raise OrbitsNotSeparated unless all orbit points of the spectrum differ mod mP.

    Collisions inside a single orbit count too, since they break the norm
    of that orbit function on T_m.
    """
    owner = {}
    for lam in spectrum:
        lam = weight(lam)
        for p in we_orbit(sys, lam, cfg).points:
            key = tuple(Fraction(c) % m for c in p)
            if key in owner:
                raise OrbitsNotSeparated(owner[key], lam)
            owner[key] = lam


def is_separated(sys: RootSystem, spectrum: Sequence, m: int, cfg: ChamberConfig = DEFAULT_CONFIG) -> bool:
    try:
        check_separated(sys, spectrum, m, cfg)
    except OrbitsNotSeparated:
        return False
    return True


def candidate_spectrum(sys: RootSystem, M: int, cfg: ChamberConfig = DEFAULT_CONFIG) -> tuple:
    """Xi = {sum s_i omega_i : sum s_i m_i <= M} together with r_alpha Xi."""
    marks = sys.marks
    n = sys.rank
    xs = []
    for s in itertools.product(*(range(M // mk + 1) for mk in marks)):
        if sum(a * b for a, b in zip(s, marks)) <= M:
            xs.append(weight(s))
    r = split_reflection(sys, cfg)
    full = set(xs)
    for x in xs:
        if all(c != 0 for c in x):
            full.add(r.apply(x))
    return tuple(sorted(full, key=lambda v: (sum(abs(c) for c in v), v)))


def auto_spectrum(sys: RootSystem, m: int, cfg: ChamberConfig = DEFAULT_CONFIG) -> tuple:
    """Greedy choice from the candidate set: keep each weight whose orbit stays separated."""
    chosen = []
    owner = set()
    for lam in candidate_spectrum(sys, m, cfg):
        keys = [tuple(Fraction(c) % m for c in p) for p in we_orbit(sys, lam, cfg).points]
        if len(set(keys)) == len(keys) and not owner.intersection(keys):
            chosen.append(lam)
            owner.update(keys)
    return tuple(sorted(chosen))


# ---------------------------------------------------------------- analysis and synthesis

def _values_on(grid: SampleGrid, samples) -> list:
    if isinstance(samples, Mapping):
        return [complex(samples[p]) for p in grid.points]
    if callable(samples):
        return [complex(samples(p)) for p in grid.points]
    values = [complex(v) for v in samples]
    if len(values) != len(grid.points):
        raise ValueError(f"expected {len(grid.points)} samples, got {len(values)}")
    return values


def analyze(
    sys: RootSystem,
    samples,
    spectrum: Sequence,
    m: int,
    cfg: ChamberConfig = DEFAULT_CONFIG,
    route: str = "torus",
) -> dict:
    """Coefficients a_lam = m^-n |O_e(lam)|^-1 sum_{x in T_m} f(x) conj(E_lam(x)).

    ``samples`` is a callable, a mapping from T_m points, or a sequence in
    ``grid_tm`` order.  With ``route="domain"`` the sum runs over one
    point per W_e-class of T_m, weighted by |W_e| / |stabilizer|.
    """
    check_separated(sys, spectrum, m, cfg)
    grid = grid_tm(sys, m)
    values = _values_on(grid, samples)
    n = sys.rank
    if route == "torus":
        pts, weights = grid.points, [1] * len(grid.points)
    elif route == "domain":
        by_point = dict(zip(grid.points, values))
        reps = {}
        for p in grid.points:
            q = affine_reduce(sys, p, even=True, cfg=cfg)
            reps.setdefault(q, p)
        order = even_order(sys)
        pts = tuple(reps.values())
        weights = [order // torus_stabilizer(sys, p) for p in pts]
        values = [by_point[p] for p in pts]
    else:
        raise ValueError(f"unknown route {route!r}")
    out = {}
    for lam in spectrum:
        lam = weight(lam)
        e = E_func(sys, lam, cfg)
        size = len(we_orbit(sys, lam, cfg).points)
        s = _fsum_complex(w * v * e(p).conjugate() for p, v, w in zip(pts, values, weights))
        out[lam] = s / (m ** n * size)
    return out


def synthesize(sys: RootSystem, coeffs: Mapping, xs: Sequence[Sequence], cfg: ChamberConfig = DEFAULT_CONFIG) -> list:
    """f(x) = sum_lam a_lam E_lam(x) at each x (any real point, not only grid points)."""
    funcs = [(complex(a), E_func(sys, lam, cfg)) for lam, a in sorted(coeffs.items())]
    return [_fsum_complex(a * e(tuple(x)) for a, e in funcs) for x in xs]


def plancherel_sides(sys: RootSystem, coeffs: Mapping, m: int, cfg: ChamberConfig = DEFAULT_CONFIG) -> tuple:
    """(sum over T_m of |f|^2, m^n sum |a_lam|^2 |O_e(lam)|) for f synthesized from coeffs."""
    grid = grid_tm(sys, m)
    vals = synthesize(sys, coeffs, grid.points, cfg)
    lhs = math.fsum(abs(v) ** 2 for v in vals)
    rhs = m ** sys.rank * math.fsum(abs(complex(a)) ** 2 * len(we_orbit(sys, lam, cfg).points)
                                    for lam, a in coeffs.items())
    return lhs, rhs


def fourier_series_coeff(
    sys: RootSystem, f: Callable, lam: Sequence, m: int, cfg: ChamberConfig = DEFAULT_CONFIG
) -> complex:
    """c_lam = |W_e|^-1 m^-n sum_{x in T_m} f(x) E-hat_lam(x).

    The torus sum integrates f * E-hat_lam exactly when f is a finite sum of
    conj(E_nu) whose orbits are separated from -O_e(lam) at resolution m;
    then f = sum c_nu conj(E_nu).
    """
    lam = weight(lam)
    if not is_separated(sys, [lam], m, cfg):
        raise BandLimitExceeded(f"orbit of {lam} is not separated by T_{m}")
    grid = grid_tm(sys, m)
    ehat = OrbitSum(sys, orbit_terms(sys, "E-hat", lam, cfg))
    s = _fsum_complex(complex(f(x)) * ehat(x) for x in grid.points)
    return s / (even_order(sys) * m ** sys.rank)


def random_coefficients(spectrum: Sequence, rng: random.Random, scale: float = 1.0) -> dict:
    return {weight(l): complex(rng.uniform(-scale, scale), rng.uniform(-scale, scale)) for l in spectrum}


# ---------------------------------------------------------------- square sampling

def sampling_matrix(sys: RootSystem, points: Sequence, spectrum: Sequence, cfg: ChamberConfig = DEFAULT_CONFIG):
    """Matrix A[i][j] = E_{lam_j}(x_i) as a numpy array."""
    import numpy as np

    funcs = [E_func(sys, lam, cfg) for lam in spectrum]
    return np.array([[e(tuple(p)) for e in funcs] for p in points], dtype=complex)


def solve_square(sys: RootSystem, points: Sequence, values: Sequence, spectrum: Sequence,
                 cfg: ChamberConfig = DEFAULT_CONFIG) -> tuple:
    """Fit coefficients from samples at arbitrary points.

    Returns (coefficients, rank, exact) where ``exact`` is False when the
    sampling matrix is singular or not square and a least-squares solution
    was used instead.
    """
    import numpy as np

    a = sampling_matrix(sys, points, spectrum, cfg)
    rank = int(np.linalg.matrix_rank(a))
    b = np.array([complex(v) for v in values], dtype=complex)
    exact = a.shape[0] == a.shape[1] == rank
    sol = np.linalg.solve(a, b) if exact else np.linalg.lstsq(a, b, rcond=None)[0]
    return {weight(l): complex(c) for l, c in zip(spectrum, sol)}, rank, exact
