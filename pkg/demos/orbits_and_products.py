"""
Even Weyl group orbits
======================

Orbits of the even subgroup W_e, how a full W-orbit splits into two of
them, and what a product of two orbits decomposes into.
"""

from eorbit import build, generate, product_decompose, signed_orbit, w_orbit, we_orbit
from eorbit.rootsystem import format_rational


def show(points):
    return "  ".join("(" + ", ".join(format_rational(c) for c in p) + ")" for p in points)


a2 = build("A2")
g = generate(a2)
print("A2:", len(g), "elements,", len(g.even), "of them even")

# A strictly dominant weight has 6 images under W but only 3 under W_e.
lam = (1, 2)
print("W-orbit of", lam, ":", show(w_orbit(a2, lam)))
orb = we_orbit(a2, lam)
print("W_e-orbit      :", show(orb.points), "| kind:", orb.kind)

# The other three points form the orbit of r_1 lam, signed by det w.
so = signed_orbit(a2, lam)
print("sign -1 part   :", show(so.part(-1)))
second = we_orbit(a2, so.part(-1)[0])
print("its representative", show([second.rep]), "is of kind", second.kind)

# A weight on a wall is fixed by a reflection, so both halves coincide.
print("W_e-orbit of (2, 0):", show(we_orbit(a2, (2, 0)).points))

# Products: all sums of points, regrouped into W_e-orbits.
print()
for name, lam, mu in [("A2", (1, 0), (1, 0)), ("A2", (1, 0), (0, 1)), ("C2", (1, 0), (1, 0)), ("G2", (1, 0), (0, 1))]:
    s = build(name)
    dec = product_decompose(s, lam, mu)
    terms = " + ".join(f"{m} O_e{show([rep])}" if m > 1 else f"O_e{show([rep])}" for rep, m in dec.terms)
    size = lambda v: len(we_orbit(s, v))
    print(f"{name}: O_e{lam} x O_e{mu} = {terms}   ({dec.total(size)} points)")
