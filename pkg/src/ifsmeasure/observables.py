"""Integrands: polynomials, the Lyapunov log-derivative, and cylinder compositions."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Union

import gmpy2
from gmpy2 import mpfr

from .errors import DomainError, UnsupportedConfiguration
from .maps import Polynomial, second_derivative_ratio_bound
from .numeric import to_real
from .system import ConstantWeights, IFSConfig


@dataclass(frozen=True)
class Lyapunov:
    """``g(x) = -sum_i p_i log|phi_i'(x)|`` for a system with constant weights."""

    ifs: IFSConfig
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if not isinstance(self.ifs.weights, ConstantWeights):
            raise UnsupportedConfiguration("the Lyapunov observable needs constant weights")

    def bind(self) -> Callable:
        prec = gmpy2.get_context().precision
        if prec in self._cache:
            return self._cache[prec]
        dfs = [m.bind()[1] for m in self.ifs.maps]
        ps = self.ifs.weights.bind()
        log, fsum = gmpy2.log, gmpy2.fsum

        def g(x):
            terms = []
            for p, df in zip(ps, dfs):
                d = df(x)
                if d == 0:
                    raise DomainError(f"phi' vanishes at {x}: condition on log|phi'| violated")
                terms.append(p * log(abs(d)))
            return -fsum(terms)

        self._cache[prec] = g
        return g

    def __getstate__(self):
        state = dict(self.__dict__)
        state["_cache"] = {}
        return state


@dataclass(frozen=True)
class CylinderComposed:
    """``g = inner o phi_word`` for a word of 1-based symbols."""

    inner: "Observable"
    word: tuple
    ifs: IFSConfig
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "word", tuple(self.word))
        if not self.word or any(not 1 <= s <= self.ifs.N for s in self.word):
            raise ValueError(f"invalid cylinder word {self.word}")

    def bind(self) -> Callable:
        prec = gmpy2.get_context().precision
        if prec in self._cache:
            return self._cache[prec]
        fs = [self.ifs.maps[s - 1].bind()[0] for s in reversed(self.word)]
        h = bind_observable(self.inner)

        def g(x):
            for f in fs:
                x = f(x)
            return h(x)

        self._cache[prec] = g
        return g

    def __getstate__(self):
        state = dict(self.__dict__)
        state["_cache"] = {}
        return state


Observable = Union[Polynomial, Lyapunov, CylinderComposed]


def bind_observable(g: Observable) -> Callable:
    if isinstance(g, Polynomial):
        return g.bind()[0]
    return g.bind()


def eval_observable(g: Observable, x) -> mpfr:
    """Value of ``g`` at ``x`` at the active precision."""
    if not isinstance(x, (gmpy2.mpfr, gmpy2.mpc)):
        x = to_real(x)
    return bind_observable(g)(x)


def lipschitz_bound(g: Observable) -> float:
    """Upper bound for the Lipschitz constant of ``g`` on [0, 1]."""
    if isinstance(g, Polynomial):
        return float(g.lipschitz_bound())
    if isinstance(g, Lyapunov):
        ps = g.ifs.weights.values
        return sum(float(p) * second_derivative_ratio_bound(m) for p, m in zip(ps, g.ifs.maps))
    L = float(g.ifs.contraction_bound)
    return lipschitz_bound(g.inner) * L ** len(g.word)


def constant(c=1) -> Polynomial:
    return Polynomial((Fraction(c),))


def monomial(n: int) -> Polynomial:
    return Polynomial.monomial(n)
