"""
Moments for a pair of Moebius maps
==================================

1/(x+2) and 1/(x+4) are not affine, so no closed form is available.  Stable
digits are read off from successive levels k.
"""
from fractions import Fraction

from ifsmeasure import IFSConfig, Moebius, integrate, make_context, render
from ifsmeasure.maps import Polynomial

ifs = IFSConfig(
    (Moebius(0, 1, 1, 2), Moebius(0, 1, 1, 4)),
    (Fraction(1, 2), Fraction(1, 2)),
    epsilon=Fraction(1, 4),
    precision=make_context(90),
)

series = integrate(ifs, Polynomial.monomial(1), 13)
with ifs.precision.activate():
    for k, (v, s) in enumerate(zip(series.values, series.stable_digits), 1):
        print(f"k={k:2d}  {render(v, 72)}  stable {s}")
