"""Orbit functions: E, E-hat, C (phi), C-hat and S, plus Laplacian checks.

All functions take x in omega coordinates.  When both the orbit point and
x are exact the phase <mu, x> is reduced modulo 1 before any rounding, so
values at rational points are as accurate as the trigonometric functions
allow.  Sums use ``math.fsum`` on real and imaginary parts separately, in
the sorted order of the orbit points.
"""

from __future__ import annotations

import cmath
import itertools
import math
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .errors import NotStrictlyDominant, RankTooLarge, UnsupportedSeries
from .orbits import signed_orbit, w_orbit, we_orbit, weyl_order
from .rootsystem import RootSystem, basis_convert, ortho_scale, scalar_product, weight
from .weylgroup import DEFAULT_CONFIG, ChamberConfig

FAMILIES = ("E", "E-hat", "C", "C-hat", "S")
TWO_PI = 2 * math.pi


def _is_exact(v) -> bool:
    return all(isinstance(c, (int, Fraction)) for c in v)


def _unit(phase) -> complex:
    """exp(2 pi i phase), reducing exact phases modulo 1 first."""
    if isinstance(phase, Fraction):
        phase = phase - math.floor(phase)
        # exact quarter turns avoid cos(pi/2) ~ 6e-17 residue
        quarter = phase * 4
        if quarter.denominator == 1:
            return (1, 1j, -1, -1j)[int(quarter)]
    return cmath.exp(1j * TWO_PI * float(phase))


def _coroot_image(sys: RootSystem, x: Sequence) -> tuple:
    """S x, so that <mu, x> = mu . (S x) for every mu."""
    s = sys.quadratic_form
    n = sys.rank
    if _is_exact(x):
        return tuple(sum((s[i][j] * x[j] for j in range(n)), Fraction(0)) for i in range(n))
    return tuple(math.fsum(float(s[i][j]) * float(x[j]) for j in range(n)) for i in range(n))


def _orbit_sum(terms: Iterable, y: tuple) -> complex:
    """fsum of sign * exp(2 pi i mu.y) over (mu, sign) pairs."""
    re, im = [], []
    exact = _is_exact(y)
    for mu, sign in terms:
        if exact:
            phase = sum((Fraction(m) * c for m, c in zip(mu, y)), Fraction(0))
        else:
            phase = math.fsum(float(m) * c for m, c in zip(mu, y))
        z = _unit(phase)
        re.append(sign * z.real)
        im.append(sign * z.imag)
    return complex(math.fsum(re), math.fsum(im))


def orbit_terms(sys: RootSystem, family: str, lam: Sequence, cfg: ChamberConfig = DEFAULT_CONFIG) -> tuple:
    """The (point, coefficient) pairs whose exponentials make up a family member."""
    lam = weight(lam)
    if family == "E":
        return tuple((p, 1) for p in we_orbit(sys, lam, cfg).points)
    if family == "E-hat":
        orb = we_orbit(sys, lam, cfg)
        return tuple((p, orb.stabilizer_order) for p in orb.points)
    if family == "C":
        return tuple((p, 1) for p in w_orbit(sys, lam))
    if family == "C-hat":
        pts = w_orbit(sys, lam)
        stab = weyl_order(sys) // len(pts)
        return tuple((p, stab) for p in pts)
    if family == "S":
        if not all(c > 0 for c in lam):
            raise NotStrictlyDominant(f"S-functions need strictly dominant lambda, got {lam}")
        return signed_orbit(sys, lam).points
    raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")


def evaluate(
    sys: RootSystem, family: str, lam: Sequence, x: Sequence, cfg: ChamberConfig = DEFAULT_CONFIG
) -> complex:
    """Value of the chosen orbit function at x (omega coordinates)."""
    x = tuple(x)
    if len(x) != sys.rank:
        from .errors import RankMismatch

        raise RankMismatch(f"expected {sys.rank} coordinates, got {len(x)}")
    return _orbit_sum(orbit_terms(sys, family, lam, cfg), _coroot_image(sys, x))


def eval_many(
    sys: RootSystem, family: str, lam: Sequence, xs: Iterable[Sequence], cfg: ChamberConfig = DEFAULT_CONFIG
) -> list:
    terms = orbit_terms(sys, family, lam, cfg)
    return [_orbit_sum(terms, _coroot_image(sys, tuple(x))) for x in xs]


def E(sys: RootSystem, lam: Sequence, x: Sequence, cfg: ChamberConfig = DEFAULT_CONFIG) -> complex:
    return evaluate(sys, "E", lam, x, cfg)


class OrbitSum:
    """A fixed combination sum_k c_k exp(2 pi i <mu_k, x>), callable on omega coordinates.

    ``second_difference`` returns the central second difference along
    omega-coordinate directions u and v.  It is computed term by term as
    exp(i phi) (2 cos d - 2) (or its mixed analogue), which is the same
    stencil without the cancellation of subtracting nearby function values.
    """

    def __init__(self, sys: RootSystem, terms: Sequence):
        self.sys = sys
        self.terms = tuple(terms)

    def __call__(self, x: Sequence) -> complex:
        return _orbit_sum(self.terms, _coroot_image(self.sys, tuple(x)))

    def _steps(self, direction: Sequence, h: float) -> list:
        y = _coroot_image(self.sys, tuple(float(c) for c in direction))
        return [TWO_PI * h * math.fsum(float(m) * c for m, c in zip(mu, y)) for mu, _ in self.terms]

    def second_difference(self, x: Sequence, u: Sequence, v: Sequence, h: float) -> complex:
        y = _coroot_image(self.sys, tuple(float(c) for c in x))
        du = self._steps(u, h)
        same = tuple(u) == tuple(v)
        dv = du if same else self._steps(v, h)
        re, im = [], []
        for (mu, c), a, b in zip(self.terms, du, dv):
            z = c * _unit(math.fsum(float(m) * t for m, t in zip(mu, y)))
            if same:
                # f(x+hu) - 2 f(x) + f(x-hu) per exponential
                w = -4 * math.sin(a / 2) ** 2
            else:
                # (f(+,+) - f(+,-) - f(-,+) + f(-,-)) / 4 per exponential
                w = -math.sin(a) * math.sin(b)
            re.append(z.real * w)
            im.append(z.imag * w)
        return complex(math.fsum(re), math.fsum(im)) / (h * h)


def E_func(sys: RootSystem, lam: Sequence, cfg: ChamberConfig = DEFAULT_CONFIG) -> OrbitSum:
    """x -> E_lam(x) with the orbit precomputed."""
    return OrbitSum(sys, orbit_terms(sys, "E", lam, cfg))


# ---------------------------------------------------------------- A_n determinant split

def _perm_sign(p: Sequence[int]) -> int:
    sign, seen = 1, [False] * len(p)
    for i in range(len(p)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def eval_detsplit_An(
    sys: RootSystem, m: Sequence, x: Sequence, part: str = "plus", max_rank: int = 6
) -> complex:
    """Even ("plus") or odd ("minus") half of det(exp(2 pi i m_i x_j)) for A_n.

    ``m`` and ``x`` are orthogonal coordinates with n+1 entries; ``part``
    may also be "full" for the whole determinant.
    """
    if sys.series != "A":
        raise UnsupportedSeries(f"determinant split is defined for series A, not {sys.name}")
    if sys.rank > max_rank:
        raise RankTooLarge(f"rank {sys.rank} exceeds cap {max_rank}")
    n1 = sys.rank + 1
    if len(m) != n1 or len(x) != n1:
        from .errors import RankMismatch

        raise RankMismatch(f"expected {n1} orthogonal coordinates")
    want = {"plus": (1,), "minus": (-1,), "full": (1, -1)}[part]
    entries = [[_unit(Fraction(mi) * Fraction(xj)) if _is_exact((mi, xj)) else _unit(float(mi) * float(xj))
                for xj in x] for mi in m]
    re, im = [], []
    for p in itertools.permutations(range(n1)):
        sgn = _perm_sign(p)
        if sgn not in want:
            continue
        z = complex(sgn if part == "full" else 1)
        for j in range(n1):
            z *= entries[p[j]][j]
        re.append(z.real)
        im.append(z.imag)
    return complex(math.fsum(re), math.fsum(im))


# ---------------------------------------------------------------- Laplacian

def eigenvalue(sys: RootSystem, lam: Sequence) -> float:
    """-4 pi^2 <lam, lam>."""
    return -4 * math.pi ** 2 * float(scalar_product(sys, weight(lam), weight(lam)))


def apply_omega_operator(
    f: Callable, x: Sequence, K: Sequence[Sequence], h: float | None = None
) -> complex:
    """sum_ij K_ij d_i d_j f at x by central differences in omega coordinates.

    For an ``OrbitSum`` the stencil is cancellation free and the default
    step is 1e-6; other callables are differenced directly with 1e-4.
    """
    h = _step(f, h)
    n = len(x)
    x = [float(c) for c in x]
    if isinstance(f, OrbitSum):
        unit = [tuple(float(k == i) for k in range(n)) for i in range(n)]
        return sum(
            float(K[i][j]) * f.second_difference(x, unit[i], unit[j], h)
            for i in range(n) for j in range(n) if K[i][j] != 0
        )

    def at(shift):
        return f(tuple(x[k] + shift.get(k, 0.0) for k in range(n)))

    f0 = at({})
    total = 0j
    for i in range(n):
        for j in range(n):
            kij = float(K[i][j])
            if kij == 0:
                continue
            if i == j:
                d = (at({i: h}) - 2 * f0 + at({i: -h})) / h ** 2
            else:
                d = (at({i: h, j: h}) - at({i: h, j: -h}) - at({i: -h, j: h}) + at({i: -h, j: -h})) / (4 * h * h)
            total += kij * d
    return total


def _step(f, h):
    if h is not None:
        return h
    return 1e-6 if isinstance(f, OrbitSum) else 1e-4


def omega_laplacian_matrix(sys: RootSystem) -> tuple:
    """Inverse of the quadratic form: the Laplacian's coefficients in omega coordinates."""
    from .rootsystem import mat_inverse

    return mat_inverse(sys.quadratic_form)


def _orthogonal_laplacian(sys: RootSystem, f: Callable, x: Sequence, h: float) -> complex:
    """Central-difference Laplacian in the orthogonal chart, rescaled to the true metric."""
    h = _step(f, h)
    y = [float(c) for c in basis_convert(sys, weight(x), "omega", "orthogonal")] if _is_exact(x) \
        else _float_to_orth(sys, x)
    roots = [[float(c) for c in r] for r in sys.ortho_roots]
    norms = [sum(c * c for c in r) for r in roots]

    def g(v):
        # orthogonal -> omega: a_i = 2 v.R_i / R_i.R_i (shift invariant for A_n)
        return f(tuple(2 * math.fsum(a * b for a, b in zip(v, r)) / nr for r, nr in zip(roots, norms)))

    if isinstance(f, OrbitSum):
        total = 0j
        for k in range(len(y)):
            e = [0.0] * len(y)
            e[k] = 1.0
            d = g_dir(e, roots, norms)
            total += f.second_difference(g_dir(y, roots, norms), d, d, h)
        return total / float(ortho_scale(sys))

    g0 = g(y)
    total = 0j
    for k in range(len(y)):
        up = list(y)
        dn = list(y)
        up[k] += h
        dn[k] -= h
        total += (g(up) - 2 * g0 + g(dn)) / h ** 2
    return total / float(ortho_scale(sys))


def g_dir(v, roots, norms) -> tuple:
    return tuple(2 * math.fsum(a * b for a, b in zip(v, r)) / nr for r, nr in zip(roots, norms))


def _float_to_orth(sys: RootSystem, x: Sequence) -> list:
    inv = sys.cartan_inverse
    roots = sys.ortho_roots
    n = sys.rank
    c = [math.fsum(float(x[i]) * float(inv[i][j]) for i in range(n)) for j in range(n)]
    return [math.fsum(c[j] * roots[j][k] for j in range(n)) for k in range(len(roots[0]))]


def laplacian(sys: RootSystem, f: Callable, x: Sequence, h: float | None = None, route: str = "auto") -> complex:
    """Finite-difference Laplacian of f (a function of omega coordinates).

    ``route`` is "orthogonal" (series A-D), "omega" (any series) or "auto",
    which picks the orthogonal chart whenever one exists.
    """
    if route == "auto":
        route = "orthogonal" if sys.ortho_roots is not None else "omega"
    if route == "orthogonal":
        return _orthogonal_laplacian(sys, f, x, h)
    return apply_omega_operator(f, x, omega_laplacian_matrix(sys), h)


def laplacian_residual(
    sys: RootSystem,
    lam: Sequence,
    x: Sequence,
    h: float | None = None,
    route: str = "auto",
    cfg: ChamberConfig = DEFAULT_CONFIG,
) -> float:
    """|Delta_h E_lam(x) + 4 pi^2 <lam,lam> E_lam(x)|."""
    f = E_func(sys, lam, cfg)
    return abs(laplacian(sys, f, x, h, route) - eigenvalue(sys, lam) * f(tuple(x)))


def laplacian_tolerance(sys: RootSystem, lam: Sequence) -> float:
    return 1e-5 * (1 + abs(eigenvalue(sys, lam)))
