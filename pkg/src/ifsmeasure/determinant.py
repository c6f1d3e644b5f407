"""Determinant coefficients and the ratio estimator ``mu_k(g)``.

``a_n`` are the power-series coefficients of ``det(Id - z L_0)`` and
``alpha_n`` those of its derivative in the observable coupling at 0.  From
``log det(Id - z L) = -sum_m tr(L^m) z^m / m`` they satisfy

    n a_n    = -sum_{m=1..n} t_m a_{n-m}
    alpha_n  = -sum_{m=1..n} (tau_m / m) a_{n-m}

with ``a_0 = 1`` and ``alpha_0 = 0``.  The expansion over ordered integer
compositions is kept as :func:`coeffs_direct` for cross-checking.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import factorial
from typing import Iterator, List, Optional, Tuple

import gmpy2
from gmpy2 import mpfr

from .numeric import PrecisionContext, agreeing_digits
from .traces import TraceTable


@dataclass
class CoefficientTable:
    k: int
    a: List[mpfr]
    alpha: List[mpfr]
    context: PrecisionContext


@dataclass
class EstimateSeries:
    """Approximants ``mu_1 .. mu_k``; ``None`` marks an unavailable value."""

    label: str
    values: List[Optional[mpfr]]
    stable_digits: List[int]
    denominators: List[mpfr]

    @property
    def last(self) -> Optional[mpfr]:
        return self.values[-1]

    @property
    def k(self) -> int:
        return len(self.values)


def coeffs_recursive(traces: TraceTable) -> CoefficientTable:
    """``a_0..a_k`` and ``alpha_0..alpha_k`` in O(k^2)."""
    k = traces.k
    context = traces.context
    t, tau = traces.t, traces.tau
    with context.activate():
        a = [mpfr(1)]
        alpha = [mpfr(0)]
        for n in range(1, k + 1):
            s = gmpy2.fsum([t[m - 1] * a[n - m] for m in range(1, n + 1)])
            a.append(-s / n)
            s = gmpy2.fsum([tau[m - 1] / m * a[n - m] for m in range(1, n + 1)])
            alpha.append(-s)
    return CoefficientTable(k, a, alpha, context)


def compositions(n: int) -> Iterator[Tuple[int, ...]]:
    """Ordered tuples of positive integers summing to ``n``."""
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in compositions(n - first):
            yield (first,) + rest


def coeffs_direct(traces: TraceTable, n: int) -> Tuple[mpfr, mpfr]:
    """``(a_n, alpha_n)`` by literal summation over compositions of ``n``."""
    context = traces.context
    if n > traces.k:
        raise ValueError(f"n = {n} exceeds the trace table length {traces.k}")
    with context.activate():
        if n == 0:
            return mpfr(1), mpfr(0)
        t, tau = traces.t, traces.tau
        a_terms, alpha_terms = [], []
        for comp in compositions(n):
            l = len(comp)
            sign = mpfr(-1 if l % 2 else 1) / factorial(l)
            ratios = [t[ni - 1] / ni for ni in comp]
            prod = sign
            for r in ratios:
                prod = prod * r
            a_terms.append(prod)
            for j, nj in enumerate(comp):
                term = sign * (tau[nj - 1] / nj)
                for mm, r in enumerate(ratios):
                    if mm != j:
                        term = term * r
                alpha_terms.append(term)
        return gmpy2.fsum(a_terms), gmpy2.fsum(alpha_terms)


def estimate(coeffs: CoefficientTable, g_label: str = "g") -> EstimateSeries:
    """``mu_j = sum_{n<=j} alpha_n / sum_{n<=j} n a_n`` for ``j = 1..k``.

    A value whose denominator falls below ``10**(guard - digits)`` is reported
    as ``None``; later levels are still computed.
    """
    context = coeffs.context
    with context.activate():
        floor = mpfr(10) ** (context.guard - context.digits)
        values: List[Optional[mpfr]] = []
        stable: List[int] = []
        dens: List[mpfr] = []
        for j in range(1, coeffs.k + 1):
            num = gmpy2.fsum(coeffs.alpha[: j + 1])
            den = gmpy2.fsum([n * coeffs.a[n] for n in range(j + 1)])
            dens.append(den)
            mu = num / den if abs(den) >= floor else None
            prev = values[-1] if values else None
            if mu is None or prev is None:
                stable.append(0)
            else:
                stable.append(agreeing_digits(mu, prev, context.digits))
            values.append(mu)
        return EstimateSeries(g_label, values, stable, dens)
