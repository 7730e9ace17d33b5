#!/usr/bin/env python3
"""Regenerate faddeeva_mpmath.csv: w(z) = exp(-z^2) erfc(-i z) at 50 digits."""
import random

import mpmath as mp

mp.mp.dps = 50
rng = random.Random(20240611)

points = [(0.0, 0.0), (0.0, 1.0), (1.0, 0.0), (0.0, -1.0), (1e-8, 1e-8), (3.0, 0.5), (-3.0, 0.5)]
for re in (-10.0, -5.0, -2.0, -0.5, 0.0, 0.5, 2.0, 5.0, 10.0):
    for im in (-10.0, -3.0, -1.0, -0.1, 0.0, 0.1, 1.0, 3.0, 10.0):
        points.append((re, im))
while len(points) < 400:
    points.append((rng.uniform(-10, 10), rng.uniform(-10, 10)))

with open("faddeeva_mpmath.csv", "w") as f:
    f.write("re,im,w_re,w_im\n")
    for re, im in points:
        z = mp.mpc(re, im)
        w = mp.exp(-z * z) * mp.erfc(-1j * z)
        f.write("%.17g,%.17g,%s,%s\n" % (re, im, mp.nstr(w.real, 20, min_fixed=0, max_fixed=0),
                                          mp.nstr(w.imag, 20, min_fixed=0, max_fixed=0)))
