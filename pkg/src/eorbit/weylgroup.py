"""Weyl groups as integer matrices acting on omega coordinates.

Reflections, breadth-first group generation, and reductions of points to
the dominant chamber, the even dominant chamber and the (even) affine
fundamental domains.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .errors import GroupTooLarge, IndexOutOfRange, NonConvergence
from .rootsystem import RootSystem, vec_mat

DEFAULT_MAX_ELEMENTS = 200_000
DEFAULT_MAX_RANK = 8


def _matmul(a, b):
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n)
    )


def apply_matrix(g, x: Sequence) -> tuple:
    n = len(x)
    return tuple(sum(g[k][j] * x[j] for j in range(n)) for k in range(n))


def _identity(n):
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


@dataclass(frozen=True)
class GroupElement:
    """An element of W: integer matrix on omega-coordinate columns.

    ``word`` lists 1-based generator indices; word (i1, ..., ik) stands for
    the product r_i1 r_i2 ... r_ik.
    """

    matrix: tuple
    det: int
    word: tuple = ()

    def apply(self, x: Sequence) -> tuple:
        return apply_matrix(self.matrix, x)

    def __matmul__(self, other: "GroupElement") -> "GroupElement":
        left, right = list(self.word), list(other.word)
        while left and right and left[-1] == right[0]:  # r_i r_i = 1
            left.pop()
            right.pop(0)
        return GroupElement(_matmul(self.matrix, other.matrix), self.det * other.det, tuple(left + right))

    @property
    def is_even(self) -> bool:
        return self.det == 1


def identity(n: int) -> GroupElement:
    return GroupElement(_identity(n), 1, ())


@dataclass(frozen=True)
class ChamberConfig:
    """Choice of the positive root alpha splitting D_+^e = D_+ u r_alpha D_+.

    ``split_root`` indexes ``RootSystem.positive_roots``; ``None`` means the
    first simple root.
    """

    split_root: int | None = None
    max_iterations: int = 100_000
    snap: float = 1e-12


DEFAULT_CONFIG = ChamberConfig()


def reflection_matrix(sys: RootSystem, i: int) -> GroupElement:
    """Simple reflection r_i: (r_i x)_k = x_k - x_i M_ik."""
    n = sys.rank
    if not 1 <= i <= n:
        raise IndexOutOfRange(f"simple root index {i} outside 1..{n}")
    c = i - 1
    m = [[int(r == col) for col in range(n)] for r in range(n)]
    for k in range(n):
        m[k][c] -= sys.cartan[c][k]
    return GroupElement(tuple(tuple(r) for r in m), -1, (i,))


def split_root(sys: RootSystem, cfg: ChamberConfig = DEFAULT_CONFIG) -> tuple:
    """The splitting root in alpha coordinates."""
    if cfg.split_root is None:
        return tuple(int(k == 0) for k in range(sys.rank))
    if not 0 <= cfg.split_root < len(sys.positive_roots):
        raise IndexOutOfRange(f"split root index {cfg.split_root} out of range")
    return sys.positive_roots[cfg.split_root]


def root_reflection(sys: RootSystem, alpha: Sequence[int]) -> GroupElement:
    """Reflection in an arbitrary root given by alpha coordinates.

    The word is u r_i u^-1 where u maps the simple root alpha_i to alpha.
    """
    n = sys.rank
    omega = sys.root_omega(alpha)
    norm = sys.root_norm(alpha)
    # alpha^vee in the coroot basis; <x, alpha^vee> = sum x_j b_j
    b = [Fraction(alpha[j]) * sys.root_norms[j] / norm for j in range(n)]
    m = tuple(
        tuple(int(Fraction(int(k == j)) - omega[k] * b[j]) for j in range(n)) for k in range(n)
    )
    word = _root_word(sys, tuple(alpha))
    return GroupElement(m, -1, word)


@lru_cache(maxsize=None)
def _root_words(sys: RootSystem) -> dict:
    """Map each positive root to a word u with u(alpha_i) = root, plus i."""
    n = sys.rank
    out = {}
    queue = deque()
    for i in range(n):
        r = tuple(int(k == i) for k in range(n))
        out[r] = ((), i + 1)
        queue.append(r)
    while queue:
        beta = queue.popleft()
        u, i = out[beta]
        for j in range(n):
            pair = sum(beta[k] * sys.cartan[k][j] for k in range(n))
            new = list(beta)
            new[j] -= pair
            new = tuple(new)
            if all(c >= 0 for c in new) and any(new) and new not in out:
                out[new] = ((j + 1,) + u, i)
                queue.append(new)
    return out


def _root_word(sys: RootSystem, alpha: tuple) -> tuple:
    u, i = _root_words(sys)[alpha]
    return u + (i,) + tuple(reversed(u))


@lru_cache(maxsize=None)
def split_reflection(sys: RootSystem, cfg: ChamberConfig = DEFAULT_CONFIG) -> GroupElement:
    return root_reflection(sys, split_root(sys, cfg))


@lru_cache(maxsize=None)
def _simple_reflections(sys: RootSystem) -> tuple:
    return tuple(reflection_matrix(sys, i) for i in range(1, sys.rank + 1))


@dataclass(frozen=True)
class WeylGroup:
    system: RootSystem
    elements: tuple
    generators: tuple
    even_indices: tuple

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def even(self) -> tuple:
        return tuple(self.elements[i] for i in self.even_indices)

    def to_dict(self) -> dict:
        return {
            "diagram": self.system.name,
            "order": len(self.elements),
            "evenOrder": len(self.even_indices),
            "elements": [
                {"matrix": [list(r) for r in g.matrix], "det": g.det, "word": list(g.word)}
                for g in self.elements
            ],
        }


def generate(
    sys: RootSystem,
    max_elements: int = DEFAULT_MAX_ELEMENTS,
    max_rank: int = DEFAULT_MAX_RANK,
) -> WeylGroup:
    """Breadth-first closure of the simple reflections.

    Elements are deduplicated by exact matrix equality, so each carries a
    shortest word.
    """
    return _generate(sys, max_elements, max_rank)


@lru_cache(maxsize=32)
def _generate(sys: RootSystem, max_elements: int, max_rank: int) -> WeylGroup:
    if sys.rank > max_rank:
        raise GroupTooLarge(f"rank {sys.rank} exceeds cap {max_rank}")
    gens = tuple(reflection_matrix(sys, i) for i in range(1, sys.rank + 1))
    start = identity(sys.rank)
    seen = {start.matrix: start}
    order = [start]
    queue = deque([start])
    while queue:
        g = queue.popleft()
        for r in gens:
            h = g @ r
            if h.matrix not in seen:
                seen[h.matrix] = h
                order.append(h)
                queue.append(h)
                if len(order) > max_elements:
                    raise GroupTooLarge(f"more than {max_elements} elements")
    even = tuple(i for i, g in enumerate(order) if g.det == 1)
    return WeylGroup(sys, tuple(order), gens, even)


# ---------------------------------------------------------------- chamber reductions

def is_dominant(x: Sequence) -> bool:
    return all(c >= 0 for c in x)


def reduce_to_dominant(sys: RootSystem, x: Sequence) -> tuple:
    """Return (x*, w) with x* dominant and w x = x*.

    Deterministic: the reflection at the smallest index with a negative
    coordinate is applied until none is left.
    """
    x = tuple(x)
    n = sys.rank
    gens = _simple_reflections(sys)
    w = identity(n)
    while True:
        i = next((k for k in range(n) if x[k] < 0), None)
        if i is None:
            return x, w
        x = gens[i].apply(x)
        w = gens[i] @ w


def in_even_dominant(sys: RootSystem, x: Sequence, cfg: ChamberConfig = DEFAULT_CONFIG) -> bool:
    if is_dominant(x):
        return True
    return is_dominant(split_reflection(sys, cfg).apply(x))


def reduce_to_even_dominant(sys: RootSystem, x: Sequence, cfg: ChamberConfig = DEFAULT_CONFIG) -> tuple:
    """Return (x*, w) with x* in D_+ u r_alpha D_+ and w even, w x = x*.

    Points that can be reached inside D_+ by an even element are returned
    there (the D_+ copy of the shared boundary).
    """
    y, w = reduce_to_dominant(sys, x)
    if w.det == 1:
        return y, w
    zero = next((k for k in range(sys.rank) if y[k] == 0), None)
    if zero is not None:
        # r_k fixes y, so r_k w is even and still maps x to y
        return y, reflection_matrix(sys, zero + 1) @ w
    r = split_reflection(sys, cfg)
    return r.apply(y), r @ w


def even_dominant_rep(sys: RootSystem, x: Sequence, cfg: ChamberConfig = DEFAULT_CONFIG) -> tuple:
    """Point-only version of ``reduce_to_even_dominant`` (no group element)."""
    y = list(x)
    n = sys.rank
    cart = sys.cartan
    parity = 0
    while True:
        i = next((k for k in range(n) if y[k] < 0), None)
        if i is None:
            break
        yi = y[i]
        row = cart[i]
        for k in range(n):
            if row[k]:
                y[k] -= yi * row[k]
        parity ^= 1
    if parity and all(c != 0 for c in y):
        return split_reflection(sys, cfg).apply(y)
    return tuple(y)


# ---------------------------------------------------------------- affine reductions

def _is_exact(x) -> bool:
    return all(isinstance(c, (int, Fraction)) for c in x)


def affine_reduce(
    sys: RootSystem,
    x: Sequence,
    even: bool = False,
    cfg: ChamberConfig = DEFAULT_CONFIG,
) -> tuple:
    """Bring x (omega coordinates) into F or, with ``even``, into F u r_alpha F.

    Uses the simple reflections and r_0 y = y - (<y, xi^vee> - 1) xi,
    which combines the reflection in the highest root with a coroot
    translation.  Float inputs are snapped onto walls within ``cfg.snap``.
    """
    exact = _is_exact(x)
    n = sys.rank
    q = sys.comarks
    xi = sys.highest_root
    if exact:
        y = [Fraction(c) for c in x]
        tol = 0
        xi_v = list(xi)
    else:
        y = [float(c) for c in x]
        tol = cfg.snap
        xi_v = [float(c) for c in xi]
    cart = sys.cartan
    parity = 0

    def snap(v):
        if not exact:
            for k in range(n):
                if abs(v[k]) <= tol:
                    v[k] = 0.0

    for _ in range(cfg.max_iterations):
        snap(y)
        i = next((k for k in range(n) if y[k] < 0), None)
        if i is not None:
            yi = y[i]
            for k in range(n):
                y[k] -= yi * cart[i][k]
            parity ^= 1
            continue
        h = sum(y[k] * q[k] for k in range(n))
        if h > 1 + tol:
            for k in range(n):
                y[k] -= (h - 1) * xi_v[k]
            parity ^= 1
            continue
        break
    else:
        raise NonConvergence(f"affine reduction did not converge in {cfg.max_iterations} steps")

    if even and parity:
        on_wall = any(y[k] == 0 for k in range(n)) or abs(sum(y[k] * q[k] for k in range(n)) - 1) <= tol
        if not on_wall:
            r = split_reflection(sys, cfg)
            y = list(r.apply(y))
    return tuple(y)


def in_fundamental_domain(sys: RootSystem, x: Sequence, tol: float = 0.0) -> bool:
    return all(c >= -tol for c in x) and sum(c * q for c, q in zip(x, sys.comarks)) <= 1 + tol


def in_even_fundamental_domain(
    sys: RootSystem, x: Sequence, cfg: ChamberConfig = DEFAULT_CONFIG, tol: float = 0.0
) -> bool:
    if in_fundamental_domain(sys, x, tol):
        return True
    return in_fundamental_domain(sys, split_reflection(sys, cfg).apply(x), tol)


def fundamental_vertices(sys: RootSystem) -> list:
    """Vertices of the simplex F in omega coordinates: 0 and omega_i / q_i."""
    n = sys.rank
    verts = [tuple(Fraction(0) for _ in range(n))]
    for i in range(n):
        verts.append(tuple(Fraction(int(k == i), sys.comarks[i]) for k in range(n)))
    return verts


def preserves_form(sys: RootSystem, g: GroupElement) -> bool:
    """Check g^T S g = S exactly."""
    m = [[Fraction(c) for c in row] for row in g.matrix]
    mt = [list(r) for r in zip(*m)]
    s = sys.quadratic_form
    lhs = _fmatmul(_fmatmul(mt, s), m)
    return all(lhs[i][j] == s[i][j] for i in range(sys.rank) for j in range(sys.rank))


def _fmatmul(a, b):
    n, p, r = len(a), len(b), len(b[0])
    return [[sum((a[i][k] * b[k][j] for k in range(p)), Fraction(0)) for j in range(r)] for i in range(n)]
