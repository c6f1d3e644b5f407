"""
Piecewise integrands and the push-forward check
===============================================

A function that is x on the first cylinder and x^2 on the second is not
analytic on [0, 1], but each piece is.  Stationarity splits the integral into
analytic pieces.  The push-forward average gives an independent, slowly
converging check.
"""
from fractions import Fraction as F

from ifsmeasure import integrate, integrate_piecewise, iterate_oracle, make_context, render
from ifsmeasure.maps import Polynomial
from ifsmeasure.system import affine_system

ifs = affine_system(
    [(F(1, 3), 0), (F(1, 3), F(2, 3))], (F(1, 3), F(2, 3)),
    epsilon=F(1, 4), precision=make_context(64),
)
x, x2 = Polynomial.monomial(1), Polynomial.monomial(2)

value = integrate_piecewise(ifs, 1, {(1,): x, (2,): x2}, 14)
with ifs.precision.activate():
    print("piecewise:", render(value, 40), "  exact 148/243 =", render(F(148, 243), 40))

# %%
# The oracle converges like 3^-n, the estimator like exp(-c k^2).
mu = integrate(ifs, x, 12).last
with ifs.precision.activate():
    for n in (4, 8, 12, 16):
        o = iterate_oracle(ifs, x, n)
        print(f"n={n:2d}  oracle {render(o, 25)}  gap to estimate {float(abs(o - mu)):.1e}")
