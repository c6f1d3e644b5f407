"""Moments, Wasserstein distances, Lyapunov exponents and piecewise integrals.

Each estimator-backed routine has an independent check: exact rational
moment recursions and the closed-form Wasserstein distance for affine
systems, and the push-forward average :func:`iterate_oracle` for anything.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Dict, List, Optional, Sequence

import gmpy2
from gmpy2 import mpfr

from .determinant import EstimateSeries, coeffs_recursive, estimate
from .errors import (
    BudgetExceeded,
    SignConditionError,
    UnsupportedConfiguration,
    ValidationError,
)
from .maps import Affine, Polynomial
from .numeric import to_real
from .observables import CylinderComposed, Lyapunov, Observable, bind_observable
from .orbits import Word, all_words
from .system import ConstantWeights, IFSConfig, _require_monotone, check_nonoverlap
from .traces import compute_traces


@dataclass
class MomentVector:
    order: int
    values: list
    series: List[EstimateSeries] = field(default_factory=list, repr=False)


@dataclass
class WassersteinResult:
    value: mpfr
    sign_condition_ok: bool
    per_k: List[Optional[mpfr]]
    first_moments: tuple = ()


def _label(g: Observable) -> str:
    if isinstance(g, Polynomial):
        return g.to_text()
    if isinstance(g, Lyapunov):
        return "lyapunov"
    return f"cylinder {''.join(map(str, g.word))}"


def integrate_many(
    ifs: IFSConfig, observables: Sequence[Observable], k: int, workers: int = 1
) -> List[EstimateSeries]:
    """Estimator series for several observables sharing one orbit computation."""
    ifs.require_valid()
    tables = compute_traces(ifs, observables, k, workers=workers)
    return [estimate(coeffs_recursive(t), _label(g)) for t, g in zip(tables, observables)]


def integrate(ifs: IFSConfig, g: Observable, k: int, workers: int = 1) -> EstimateSeries:
    """Approximants ``mu_1(g), ..., mu_k(g)`` of the integral of ``g``."""
    return integrate_many(ifs, [g], k, workers)[0]


def moments(ifs: IFSConfig, M: int, k: int, workers: int = 1) -> MomentVector:
    """``gamma_0..gamma_M``; ``gamma_0`` is exactly 1."""
    if M < 0:
        raise ValueError("moment order must be non-negative")
    with ifs.precision.activate():
        one = mpfr(1)
    if M == 0:
        return MomentVector(0, [one])
    series = integrate_many(ifs, [Polynomial.monomial(n) for n in range(1, M + 1)], k, workers)
    return MomentVector(M, [one] + [s.last for s in series], series)


def _affine_exact(ifs: IFSConfig):
    if not all(isinstance(m, Affine) for m in ifs.maps):
        raise UnsupportedConfiguration("the exact oracle needs affine maps")
    if not isinstance(ifs.weights, ConstantWeights):
        raise UnsupportedConfiguration("the exact oracle needs constant rational weights")
    return [(m.ratio, m.offset) for m in ifs.maps]


def moments_oracle_affine(ifs: IFSConfig, M: int) -> MomentVector:
    """Exact moments of an affine system from the stationarity relation.

    ``gamma_n (1 - sum_j p_j r_j^n) = sum_{i<n} C(n,i) gamma_i sum_j p_j r_j^i t_j^(n-i)``.
    """
    maps = _affine_exact(ifs)
    p = ifs.weights.values
    gammas = [Fraction(1)]
    for n in range(1, M + 1):
        num = sum(
            comb(n, i) * gammas[i] * sum(pj * r**i * t ** (n - i) for pj, (r, t) in zip(p, maps))
            for i in range(n)
        )
        gammas.append(num / (1 - sum(pj * r**n for pj, (r, t) in zip(p, maps))))
    return MomentVector(M, gammas)


def sign_condition(p: Sequence, q: Sequence) -> bool:
    """Partial sums of ``p - q`` never change sign."""
    partial, signs = Fraction(0), set()
    for a, b in zip(p, q):
        partial += Fraction(a) - Fraction(b)
        if partial != 0:
            signs.add(partial > 0)
    return len(signs) <= 1


def _wasserstein_preconditions(ifs: IFSConfig) -> None:
    if ifs.q is None:
        raise ValidationError("a second weight vector q is required")
    if not isinstance(ifs.weights, ConstantWeights):
        raise UnsupportedConfiguration("Wasserstein distances need constant weights")
    with ifs.precision.activate():
        signs = _require_monotone(ifs)
    if any(s < 0 for s in signs):
        raise UnsupportedConfiguration("every map must be increasing on [0, 1]")
    if not check_nonoverlap(ifs, 1):
        raise UnsupportedConfiguration("the system overlaps at level 1")
    if not sign_condition(ifs.weights.values, ifs.q.values):
        raise SignConditionError(
            "partial sums of p - q change sign; the first-moment formula does not apply"
        )


def wasserstein(ifs: IFSConfig, k: int, workers: int = 1) -> WassersteinResult:
    """``W_1`` between the stationary measures for weights ``p`` and ``q``."""
    _wasserstein_preconditions(ifs)
    ifs.require_valid()
    sp = integrate(ifs, Polynomial.monomial(1), k, workers)
    if ifs.q == ifs.weights:
        sq = sp
    else:
        sq = integrate(ifs.replace(weights=ifs.q, q=ifs.weights), Polynomial.monomial(1), k, workers)
    with ifs.precision.activate():
        per_k = [None if a is None or b is None else abs(a - b) for a, b in zip(sp.values, sq.values)]
    return WassersteinResult(per_k[-1], True, per_k, (sp.last, sq.last))


def wasserstein_oracle_affine(ifs: IFSConfig) -> Fraction:
    """Closed form ``|sum p t / (1 - sum p r) - sum q t / (1 - sum q r)|``."""
    maps = _affine_exact(ifs)
    _wasserstein_preconditions(ifs)

    def mean(w):
        return sum(wi * t for wi, (r, t) in zip(w, maps)) / (1 - sum(wi * r for wi, (r, t) in zip(w, maps)))

    return abs(mean(ifs.weights.values) - mean(ifs.q.values))


def lyapunov(ifs: IFSConfig, k: int, workers: int = 1) -> EstimateSeries:
    """Lyapunov exponent ``-int sum_i p_i log|phi_i'| dmu``."""
    if not isinstance(ifs.weights, ConstantWeights):
        raise UnsupportedConfiguration("the Lyapunov exponent is defined here for constant weights")
    with ifs.precision.activate():
        for i, m in enumerate(ifs.maps):
            df = m.bind()[1]
            if any(df(mpfr(j) / 64) == 0 for j in range(65)):
                raise ValidationError(f"phi_{i + 1}' vanishes on [0, 1]; log|phi'| is unbounded")
    return integrate(ifs, Lyapunov(ifs), k, workers)


def integrate_piecewise(
    ifs: IFSConfig, K: int, pieces: Dict[Word, Observable], k: int, workers: int = 1
) -> mpfr:
    """Integral of a function given by one observable per level-``K`` cylinder.

    Uses ``int g dmu = sum_w p_w int g o phi_w dmu`` over words of length ``K``.
    """
    if not isinstance(ifs.weights, ConstantWeights):
        raise UnsupportedConfiguration("piecewise integration needs constant weights")
    words = list(all_words(ifs.N, K))
    missing = [w for w in words if w not in pieces]
    if missing:
        raise ValidationError(f"no piece given for cylinder {missing[0]}")
    if not check_nonoverlap(ifs, K):
        raise ValidationError(f"cylinders overlap at level {K}")
    composed = [CylinderComposed(pieces[w], w, ifs) for w in words]
    series = integrate_many(ifs, composed, k, workers)
    p = ifs.weights.values
    with ifs.precision.activate():
        terms = []
        for w, s in zip(words, series):
            if s.last is None:
                raise ArithmeticError(f"estimate unavailable for cylinder {w}")
            weight = Fraction(1)
            for sym in w:
                weight *= p[sym - 1]
            terms.append(to_real(weight) * s.last)
        return gmpy2.fsum(terms)


DEFAULT_ORACLE_BUDGET = 2**25


def iterate_oracle(
    ifs: IFSConfig, g: Observable, n: int, x0=Fraction(1, 2), budget: int = DEFAULT_ORACLE_BUDGET
) -> mpfr:
    """``sum_{|w| = n} p_w(x0) g(phi_w(x0))`` by depth-first traversal.

    Maps are applied innermost first, so each partial image is shared by all
    words with the same suffix.
    """
    if n < 1:
        raise ValueError("depth must be positive")
    if ifs.N**n > budget:
        raise BudgetExceeded(f"{ifs.N}^{n} words exceed the budget of {budget}")
    ifs.require_valid()
    with ifs.precision.activate():
        x = to_real(x0)
        if not 0 <= x <= 1:
            raise ValueError("x0 must lie in [0, 1]")
        fs = [m.bind()[0] for m in ifs.maps]
        h = bind_observable(g)
        ws = ifs.weights.bind()
        constant = isinstance(ifs.weights, ConstantWeights)
        def walk(point, depth):
            if depth == 1:
                if constant:
                    return gmpy2.fsum([w * h(f(point)) for f, w in zip(fs, ws)])
                return gmpy2.fsum([w(point) * h(f(point)) for f, w in zip(fs, ws)])
            if constant:
                return gmpy2.fsum([w * walk(f(point), depth - 1) for f, w in zip(fs, ws)])
            return gmpy2.fsum([w(point) * walk(f(point), depth - 1) for f, w in zip(fs, ws)])

        return walk(x, n)
