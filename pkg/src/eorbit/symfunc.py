"""Even-symmetrized functions of several variables.

Built from one-variable families: products p_{m_1}(x_1)...p_{m_n}(x_n)
summed over even permutations, the symmetrized Hermite polynomials, and the
integral of a separable product against an E-orbit function over the even
fundamental domain.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable, Sequence

from .efunctions import E_func
from .errors import IndexOutOfRange
from .orbits import even_order
from .rootsystem import RootSystem, weight
from .transforms import grid_tm
from .weylgroup import DEFAULT_CONFIG, ChamberConfig, affine_reduce


def hermite(n: int, x: float) -> float:
    """Physicists' Hermite polynomial H_n(x) by the three-term recurrence."""
    if n < 0:
        raise IndexOutOfRange(f"Hermite index must be >= 0, got {n}")
    h0, h1 = 1.0, 2.0 * x
    if n == 0:
        return h0
    for k in range(1, n):
        h0, h1 = h1, 2.0 * x * h1 - 2.0 * k * h0
    return h1


def hermite_normalized(n: int, x: float) -> float:
    """H_n / sqrt(2^n n! sqrt(pi)), orthonormal for the weight exp(-x^2)."""
    return hermite(n, x) / math.sqrt(2.0 ** n * math.factorial(n) * math.sqrt(math.pi))


@dataclass(frozen=True)
class SeparableFamily:
    """A one-variable family u_k(x), optionally with a quadrature for its weight."""

    evaluator: Callable[[int, float], float]
    max_index: int | None = None
    nodes: tuple = ()
    weights: tuple = ()

    def __call__(self, k: int, x: float) -> float:
        if k < 0 or (self.max_index is not None and k > self.max_index):
            raise IndexOutOfRange(f"index {k} outside the family's range")
        return self.evaluator(k, x)

    def with_gauss_rule(self, order: int) -> "SeparableFamily":
        """Attach a Gauss-Hermite rule (exact for polynomial degree < 2*order)."""
        from numpy.polynomial.hermite import hermgauss

        x, w = hermgauss(order)
        return SeparableFamily(self.evaluator, self.max_index, tuple(map(float, x)), tuple(map(float, w)))


def hermite_family(order: int = 16) -> SeparableFamily:
    """Orthonormal Hermite functions with their Gauss rule."""
    return SeparableFamily(hermite_normalized).with_gauss_rule(order)


# ---------------------------------------------------------------- permutations

def even_permutations(n: int) -> list:
    out = []
    for p in itertools.permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])
        if inversions % 2 == 0:
            out.append(p)
    return out


def coset_images(m: Sequence[int]) -> list:
    """Distinct rearrangements of m reached by even permutations, one per coset of its stabilizer."""
    seen = []
    for p in even_permutations(len(m)):
        img = tuple(m[p[i]] for i in range(len(m)))
        if img not in seen:
            seen.append(img)
    return seen


def even_stabilizer_order(m: Sequence[int]) -> int:
    """Number of even permutations fixing the multi-index m."""
    return math.factorial(len(m)) // 2 // len(coset_images(m)) if len(m) > 1 else 1


# ---------------------------------------------------------------- evaluations

def sym_poly_eval(family: SeparableFamily, m: Sequence[int], x: Sequence[float]) -> float:
    """sum over cosets w of S^e_n / S_m of prod_i p_{m_w(i)}(x_i)."""
    if len(m) != len(x) or len(m) < 2:
        raise IndexOutOfRange("need matching multi-index and point of length >= 2")
    terms = []
    for img in coset_images(tuple(m)):
        terms.append(math.prod(family(k, xi) for k, xi in zip(img, x)))
    return math.fsum(terms)


def sym_hermite_eval(m: Sequence[int], lam: Sequence[float]) -> float:
    """Sum over all even permutations w of prod_i H_{m_i}(lam_{w(i)})."""
    if len(m) != len(lam):
        raise IndexOutOfRange("multi-index and point must have the same length")
    n = len(m)
    perms = even_permutations(n) if n > 1 else [(0,)]
    return math.fsum(math.prod(hermite(m[i], lam[p[i]]) for i in range(n)) for p in perms)


def sym_poly_inner(family: SeparableFamily, m: Sequence[int], k: Sequence[int]) -> float:
    """Integral of p^sym_m p^sym_k over the even dominant chamber of S_n.

    The integrand is invariant under even permutations, so the chamber
    integral is the full product-rule integral divided by n!/2.
    """
    if not family.nodes:
        raise ValueError("family has no quadrature rule attached")
    n = len(m)
    nodes, weights = family.nodes, family.weights
    # tabulate one-variable values once
    top = max(max(m), max(k))
    table = [[family(j, x) for x in nodes] for j in range(top + 1)]
    total = []
    for idx in itertools.product(range(len(nodes)), repeat=n):
        w = math.prod(weights[i] for i in idx)
        a = math.fsum(math.prod(table[c][i] for c, i in zip(img, idx)) for img in coset_images(tuple(m)))
        b = math.fsum(math.prod(table[c][i] for c, i in zip(img, idx)) for img in coset_images(tuple(k)))
        total.append(w * a * b)
    return math.fsum(total) / (math.factorial(n) // 2 if n > 1 else 1)


def hermite_fourier(m: int, x: float, half_width: float = 8.0, nodes: int = 400) -> complex:
    """Integral over [-L, L] of exp(2 pi i p x) exp(-pi p^2) H_m(sqrt(2 pi) p) dp by Gauss-Legendre."""
    from numpy.polynomial.legendre import leggauss

    t, w = leggauss(nodes)
    c = math.sqrt(2 * math.pi)
    re, im = [], []
    for ti, wi in zip(t, w):
        p = half_width * float(ti)
        g = float(wi) * half_width * math.exp(-math.pi * p * p) * hermite(m, c * p)
        re.append(g * math.cos(2 * math.pi * p * x))
        im.append(g * math.sin(2 * math.pi * p * x))
    return complex(math.fsum(re), math.fsum(im))


def hermite_eigen_rhs(m: int, x: float) -> complex:
    """i^m exp(-pi x^2) H_m(sqrt(2 pi) x)."""
    return (1j ** m) * math.exp(-math.pi * x * x) * hermite(m, math.sqrt(2 * math.pi) * x)


# ---------------------------------------------------------------- separable symmetrization

def _domain_quadrature(sys, u, indices, lam, m, cfg) -> complex:
    e = E_func(sys, lam, cfg)
    acc_re, acc_im = [], []
    for x in grid_tm(sys, m).points:
        y = affine_reduce(sys, x, even=True, cfg=cfg)
        v = math.prod(u(k, float(c)) for k, c in zip(indices, y)) * e(y)
        acc_re.append(v.real)
        acc_im.append(v.imag)
    scale = even_order(sys) * m ** sys.rank
    return complex(math.fsum(acc_re), math.fsum(acc_im)) / scale


def symmetrize_separable(
    u: SeparableFamily | Callable,
    indices: Sequence[int],
    lam: Sequence,
    sys: RootSystem,
    m: int,
    cfg: ChamberConfig = DEFAULT_CONFIG,
) -> tuple:
    """Approximate the integral of prod_k u_{i_k}(x_k) E_lam(x) over F_e.

    x runs over the even fundamental domain in omega coordinates.  Every
    point of T_m is folded into F_e, so each domain point is weighted by
    its share of the torus; with |T| = 1 the domain has measure 1/|W_e|.
    Returns (value at resolution 2m, |value(2m) - value(m)|).
    """
    if len(indices) != sys.rank:
        raise IndexOutOfRange(f"need {sys.rank} indices, got {len(indices)}")
    lam = weight(lam)
    coarse = _domain_quadrature(sys, u, indices, lam, m, cfg)
    fine = _domain_quadrature(sys, u, indices, lam, 2 * m, cfg)
    return fine, abs(fine - coarse)
