"""
Moments of a weighted Cantor measure
====================================

The middle-thirds maps x/3 and x/3 + 2/3, chosen with probabilities 1/3 and
2/3, have a stationary measure whose moments are rational.  We compare the
periodic-orbit estimates with the exact values.
"""
from fractions import Fraction

from ifsmeasure import make_context, moments, moments_oracle_affine, render
from ifsmeasure.numeric import to_real
from ifsmeasure.system import affine_system

ifs = affine_system(
    [(Fraction(1, 3), 0), (Fraction(1, 3), Fraction(2, 3))],
    (Fraction(1, 3), Fraction(2, 3)),
    epsilon=Fraction(1, 4),
    precision=make_context(64),
)

exact = moments_oracle_affine(ifs, 6).values

# k = 14 uses periodic orbits of length up to 14
approx = moments(ifs, 6, 14).values

with ifs.precision.activate():
    for n, (g, e) in enumerate(zip(approx, exact)):
        err = abs(g - to_real(e))
        print(f"gamma_{n} = {render(g, 30)}   exact {e}   error {float(err):.1e}")

# %%
# The error shrinks faster than any geometric rate as k grows.
series = moments(ifs, 1, 14).series[0]
with ifs.precision.activate():
    for k, v in enumerate(series.values, 1):
        print(k, f"{float(abs(v - to_real(Fraction(2, 3)))):.2e}")
