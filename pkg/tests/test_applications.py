from fractions import Fraction as F

import gmpy2
import pytest
from gmpy2 import mpfr

from ifsmeasure import (
    FunctionWeights,
    Polynomial,
    integrate,
    integrate_piecewise,
    iterate_oracle,
    lyapunov,
    moments,
    moments_oracle_affine,
    wasserstein,
    wasserstein_oracle_affine,
)
from ifsmeasure.errors import BudgetExceeded, SignConditionError, UnsupportedConfiguration, ValidationError
from ifsmeasure.numeric import to_real
from ifsmeasure.system import affine_system

from conftest import affine_pair, cantor, moebius, sine

X = Polynomial.monomial(1)
HALVES = [(F(1, 2), F(0)), (F(1, 2), F(1, 2))]


def close(x, y, tol=mpfr(10) ** -40):
    return abs(x - y) < tol


def test_integrate_examples():
    ifs = cantor()
    s = integrate(ifs, X, 2)
    with ifs.precision.activate():
        assert close(s.values[1], to_real(F(2, 3)), mpfr(10) ** -60)
        assert all(close(v, mpfr(1), mpfr(10) ** -60) for v in integrate(ifs, Polynomial.constant(1), 6).values)
    m = moebius(64)
    with m.precision.activate():
        got = integrate(m, X, 13).last
        assert close(got, mpfr("0.330469717526485534080138479518406828981534429410127592033533774"))


def test_moments_examples():
    ifs = cantor()
    mv = moments(ifs, 4, 14)
    with ifs.precision.activate():
        for got, want in zip(mv.values, (1, F(2, 3), F(5, 9), F(58, 117), F(799, 1755))):
            assert close(got, to_real(want))
    assert moments(ifs, 0, 14).values == [1]


def test_moment_oracle_examples():
    assert moments_oracle_affine(cantor(), 3).values == [1, F(2, 3), F(5, 9), F(58, 117)]
    assert moments_oracle_affine(affine_system(HALVES, (F(1, 2), F(1, 2))), 2).values == [1, F(1, 2), F(1, 3)]
    maps, p = [(F(1, 3), F(0)), (F(1, 2), F(1, 2))], (F(3, 4), F(1, 4))
    gamma1 = sum(w * t for w, (r, t) in zip(p, maps)) / (1 - sum(w * r for w, (r, t) in zip(p, maps)))
    assert moments_oracle_affine(affine_system(maps, p), 1).values[1] == gamma1


def test_moment_oracle_refuses_nonaffine():
    with pytest.raises(UnsupportedConfiguration):
        moments_oracle_affine(moebius(), 2)


def test_wasserstein_examples():
    ifs = affine_pair()
    with ifs.precision.activate():
        assert close(wasserstein(ifs, 16).value, to_real(F(2, 5)))
    same = ifs.replace(q=ifs.weights)
    assert wasserstein(same, 8).value == 0
    assert wasserstein_oracle_affine(same) == 0


def test_wasserstein_oracle_examples():
    assert wasserstein_oracle_affine(affine_pair()) == F(2, 5)
    lebesgue = affine_system(HALVES, (F(1, 2), F(1, 2)), q=(F(1, 4), F(3, 4)))
    assert wasserstein_oracle_affine(lebesgue) == F(1, 4)


def test_wasserstein_sine_matches_reference():
    ifs = sine(80, p=(F(1, 7), F(6, 7)), q=(F(1, 2), F(1, 2)))
    with ifs.precision.activate():
        got = wasserstein(ifs, 13).value
        want = mpfr("0.2210457542228009986686646648222083279244322327918382321725464966")
        assert close(got, want, mpfr(10) ** -50)


def test_wasserstein_refuses_sign_change():
    ifs = affine_system([(F(1, 4), 0), (F(1, 4), F(3, 8)), (F(1, 4), F(3, 4))],
                       (F(1, 2), F(1, 4), F(1, 4)), q=(F(1, 4), F(1, 2), F(1, 4)))
    # partial sums of p - q: 1/4, 0, 0 never change sign
    assert wasserstein(ifs, 6).sign_condition_ok
    flip = ifs.replace(q=(F(1, 4), F(5, 8), F(1, 8)))
    # partial sums: 1/4, -1/8, 0
    with pytest.raises(SignConditionError):
        wasserstein(flip, 6)


def test_wasserstein_refuses_overlap_and_missing_q():
    with pytest.raises(UnsupportedConfiguration):
        wasserstein(affine_system([(F(1, 2), 0), (F(1, 2), F(1, 4))], (F(1, 2), F(1, 2)),
                                  q=(F(1, 3), F(2, 3))), 4)
    with pytest.raises(ValidationError):
        wasserstein(cantor(), 4)


def test_lyapunov_examples():
    ifs = cantor()
    with ifs.precision.activate():
        log3 = gmpy2.log(mpfr(3))
        assert all(close(v, log3, mpfr(10) ** -60) for v in lyapunov(ifs, 6).values)
    lebesgue = affine_system(HALVES, (F(1, 2), F(1, 2)))
    with lebesgue.precision.activate():
        assert close(lyapunov(lebesgue, 4).last, gmpy2.log(mpfr(2)), mpfr(10) ** -60)
    ifs = sine(64)
    with ifs.precision.activate():
        want = mpfr("1.736720814737319877193356690960513773360205906006376079918")
        assert close(lyapunov(ifs, 14).last, want, mpfr(10) ** -45)


def test_lyapunov_refuses_function_weights():
    fw = FunctionWeights((Polynomial((F(1, 4), F(1, 2))), Polynomial((F(3, 4), F(-1, 2)))))
    with pytest.raises(UnsupportedConfiguration):
        lyapunov(cantor().replace(weights=fw), 4)


def test_piecewise_examples():
    ifs = cantor()
    x2 = Polynomial.monomial(2)
    with ifs.precision.activate():
        got = integrate_piecewise(ifs, 1, {(1,): X, (2,): x2}, 14)
        assert close(got, to_real(F(148, 243)))
        same = integrate_piecewise(ifs, 2, {w: x2 for w in [(1, 1), (1, 2), (2, 1), (2, 2)]}, 14)
        assert close(same, integrate(ifs, x2, 14).last)
        ones = integrate_piecewise(ifs, 1, {(1,): Polynomial.constant(1), (2,): Polynomial.constant(1)}, 4)
        assert close(ones, mpfr(1), mpfr(10) ** -60)


def test_piecewise_needs_every_cylinder():
    with pytest.raises(ValidationError):
        integrate_piecewise(cantor(), 1, {(1,): X}, 4)


def test_oracle_examples():
    ifs = cantor()
    with ifs.precision.activate():
        assert close(iterate_oracle(ifs, X, 1, F(1, 2)), to_real(F(11, 18)), mpfr(10) ** -60)
        assert close(iterate_oracle(moebius(), Polynomial.constant(1), 7), mpfr(1), mpfr(10) ** -60)
        got = iterate_oracle(ifs, X, 14, F(1, 2))
        assert abs(got - to_real(F(2, 3))) <= to_real(F(1, 3) ** 14)


def test_oracle_budget():
    with pytest.raises(BudgetExceeded):
        iterate_oracle(cantor(), X, 12, budget=1000)


FW = FunctionWeights((Polynomial((F(1, 4), F(1, 2))), Polynomial((F(3, 4), F(-1, 2)))))


def test_function_weights_exact_moments():
    # with these weights sum_i p_i(x) phi_i(x) = 1/2 and
    # sum_i p_i(x) phi_i(x)^2 = 1/3 + x/9 - x^2/9, so gamma_1 = 1/2, gamma_2 = 7/20
    ifs = cantor().replace(weights=FW)
    mv = moments(ifs, 2, 14)
    with ifs.precision.activate():
        assert close(mv.values[1], to_real(F(1, 2)))
        assert close(mv.values[2], to_real(F(7, 20)))


def test_function_weights_agree_with_oracle():
    ifs = cantor().replace(weights=FW)
    x2 = Polynomial.monomial(2)
    with ifs.precision.activate():
        for x0 in (F(0), F(1)):
            got = iterate_oracle(ifs, x2, 16, x0)
            assert abs(got - to_real(F(7, 20))) <= to_real(F(1, 9) ** 16)
