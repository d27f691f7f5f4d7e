"""
Discrete E-orbit transform
==========================

Sample a finite combination of E-functions on the torus grid T_m, recover
its coefficients, and evaluate the expansion between the grid points.
"""

import random

from eorbit import analyze, build, grid_fm, grid_tm, synthesize
from eorbit.transforms import auto_spectrum, is_separated, plancherel_sides, random_coefficients

s = build("A2")
m = 6

# T_m has m^n points; the fundamental-domain grid is much smaller.
print(f"|T_{m}| = {len(grid_tm(s, m))}, |F_{m}| = {len(grid_fm(s, m))}, |F^e_{m}| = {len(grid_fm(s, m, even=True))}")

# A spectrum whose orbits stay distinct modulo m can be resolved exactly.
spectrum = auto_spectrum(s, m)
print(len(spectrum), "weights resolvable at m =", m, ":", [tuple(map(int, l)) for l in spectrum])
print("adding (6, 0) breaks separation:", not is_separated(s, list(spectrum) + [(6, 0)], m))

coeffs = random_coefficients(spectrum, random.Random(7))
grid = grid_tm(s, m)
samples = synthesize(s, coeffs, grid.points)

recovered = analyze(s, samples, spectrum, m)
print("max coefficient error (torus sum):", max(abs(recovered[l] - coeffs[l]) for l in spectrum))
recovered = analyze(s, samples, spectrum, m, route="domain")
print("max coefficient error (domain sum):", max(abs(recovered[l] - coeffs[l]) for l in spectrum))

lhs, rhs = plancherel_sides(s, coeffs, m)
print(f"Plancherel: {lhs:.12f} vs {rhs:.12f}")

# The expansion is a trigonometric polynomial, so it can be evaluated anywhere.
for x in [(0.1, 0.2), (0.5, 0.25)]:
    print("f", x, "=", synthesize(s, coeffs, [x])[0])
