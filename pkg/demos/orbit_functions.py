"""
E-orbit functions
=================

E_lam(x) is the sum of exp(2 pi i <mu, x>) over the W_e-orbit of lam.  It
is invariant under the even affine Weyl group and an eigenfunction of the
Laplacian.
"""

import math
import random

from eorbit import E, build, generate, laplacian_residual
from eorbit.efunctions import eigenvalue, evaluate
from eorbit.rootsystem import basis_convert
from eorbit.weylgroup import split_reflection

rng = random.Random(3)
c2 = build("C2")

# On C2 the orbit of (a, 0) gives two cosines.
a, x = 2, (0.31, -0.12)
closed = 2 * math.cos(math.pi * a * (x[0] + x[1])) + 2 * math.cos(math.pi * a * x[1])
print("C2 E_(2,0)(x) =", E(c2, (a, 0), x), " closed form:", closed)

# Invariance: even group elements and coroot translations leave values alone.
lam = (1, 2)
x = tuple(rng.uniform(-1, 1) for _ in range(2))
base = E(c2, lam, x)
worst = max(abs(E(c2, lam, g.apply(x)) - base) for g in generate(c2).even)
shift = basis_convert(c2, (2, -1), "coroot", "omega")
moved = tuple(p + q for p, q in zip(x, shift))
print(f"max change under W_e: {worst:.1e}, under a coroot shift: {abs(E(c2, lam, moved) - base):.1e}")

# The C-function is E_lam + E_{r lam}; the S-function is their difference.
r = split_reflection(c2)
plus, minus = E(c2, lam, x), E(c2, r.apply(lam), x)
print("C - (E + E_r) =", abs(evaluate(c2, "C", lam, x) - plus - minus))
print("S - (E - E_r) =", abs(evaluate(c2, "S", lam, x) - plus + minus))

# A2 functions are complex; C2 and G2 ones are real because -1 is even there.
a2 = build("A2")
print("A2 E_(1,2)(x) =", E(a2, (1, 2), x))
print("G2 E_(1,2)(x) =", E(build("G2"), (1, 2), x))

# Laplacian eigenvalue -4 pi^2 <lam, lam>, checked by finite differences.
for name in ("A2", "C2", "G2", "B3"):
    s = build(name)
    lam = tuple(rng.randint(0, 2) for _ in range(s.rank))
    x = tuple(rng.uniform(-1, 1) for _ in range(s.rank))
    print(f"{name} lam={lam}: eigenvalue {eigenvalue(s, lam):9.3f}, residual {laplacian_residual(s, lam, x):.1e}")
