"""Closed catalog of contractions and polynomial weight/observable functions.

All parameters are stored exactly (``Fraction``).  Each object can be *bound*
to the active precision, producing a pair of plain closures ``(f, df)`` with
the mpfr constants baked in; the orbit engine calls these in its hot loop.
Binding is cached per binary precision.  The closures accept real ``mpfr`` and
complex ``mpc`` arguments alike.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Tuple, Union

import gmpy2
from gmpy2 import mpfr

from .errors import DomainError
from .numeric import format_exact, pi, to_complex, to_real

Bound = Tuple[Callable, Callable]


def _exact(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x)
    raise TypeError(f"map parameters must be rational, got {type(x).__name__}")


class _Catalog:
    """Shared binding cache; subclasses implement ``_bind``."""

    def bind(self) -> Bound:
        prec = gmpy2.get_context().precision
        cache = self._cache
        if prec not in cache:
            cache[prec] = self._bind()
        return cache[prec]

    def __call__(self, z):
        return self.bind()[0](z)

    def __getstate__(self):
        state = dict(self.__dict__)
        state["_cache"] = {}
        return state

    def derivative(self, z):
        return self.bind()[1](z)


@dataclass(frozen=True, eq=True)
class Affine(_Catalog):
    """``x -> ratio * x + offset``."""

    ratio: Fraction
    offset: Fraction
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "ratio", _exact(self.ratio))
        object.__setattr__(self, "offset", _exact(self.offset))
        if self.ratio == 0:
            raise ValueError("affine ratio must be non-zero")

    def _bind(self) -> Bound:
        r, t = to_real(self.ratio), to_real(self.offset)
        return (lambda z: r * z + t), (lambda z: r)

    def to_text(self) -> str:
        return f"affine {format_exact(self.ratio)} {format_exact(self.offset)}"


@dataclass(frozen=True, eq=True)
class Moebius(_Catalog):
    """``x -> (a x + b) / (c x + d)``."""

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        for name in "abcd":
            object.__setattr__(self, name, _exact(getattr(self, name)))
        if self.a * self.d - self.b * self.c == 0:
            raise ValueError("moebius map is degenerate (ad - bc = 0)")

    def _bind(self) -> Bound:
        a, b, c, d = (to_real(v) for v in (self.a, self.b, self.c, self.d))
        det = to_real(self.a * self.d - self.b * self.c)

        def f(z):
            den = c * z + d
            if den == 0:
                raise DomainError("moebius pole hit: c z + d = 0")
            return (a * z + b) / den

        def df(z):
            den = c * z + d
            if den == 0:
                raise DomainError("moebius pole hit: c z + d = 0")
            return det / (den * den)

        return f, df

    def to_text(self) -> str:
        return "moebius " + " ".join(format_exact(v) for v in (self.a, self.b, self.c, self.d))


@dataclass(frozen=True, eq=True)
class SineAffine(_Catalog):
    """``x -> amplitude * sin(pi x / 4) + offset``."""

    amplitude: Fraction
    offset: Fraction
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "amplitude", _exact(self.amplitude))
        object.__setattr__(self, "offset", _exact(self.offset))
        if self.amplitude == 0:
            raise ValueError("sine amplitude must be non-zero")

    def _bind(self) -> Bound:
        A, B = to_real(self.amplitude), to_real(self.offset)
        q = pi() / 4
        Aq = A * q
        sin, cos = gmpy2.sin, gmpy2.cos
        return (lambda z: A * sin(q * z) + B), (lambda z: Aq * cos(q * z))

    def to_text(self) -> str:
        return f"sineaffine {format_exact(self.amplitude)} {format_exact(self.offset)}"


MapSpec = Union[Affine, Moebius, SineAffine]


@dataclass(frozen=True, eq=True)
class Polynomial(_Catalog):
    """``x -> sum_j coeffs[j] * x**j`` with exact coefficients."""

    coeffs: Tuple[Fraction, ...]
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        coeffs = tuple(_exact(c) for c in self.coeffs)
        if not coeffs:
            coeffs = (Fraction(0),)
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def monomial(cls, n: int, scale=1) -> "Polynomial":
        return cls((0,) * n + (scale,))

    @classmethod
    def constant(cls, c) -> "Polynomial":
        return cls((c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def _bind(self) -> Bound:
        cs = [to_real(c) for c in self.coeffs]
        dcs = [j * c for j, c in enumerate(cs)][1:]

        def horner(coeffs):
            if not coeffs:
                zero = mpfr(0)
                return lambda z: zero
            if len(coeffs) == 1:
                c0 = coeffs[0]
                return lambda z: c0
            rev = coeffs[::-1]

            def f(z):
                acc = rev[0]
                for c in rev[1:]:
                    acc = acc * z + c
                return acc

            return f

        return horner(cs), horner(dcs)

    def exact(self, x: Fraction) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def lipschitz_bound(self) -> Fraction:
        """Upper bound for ``|p'|`` on [0, 1]."""
        return sum((j * abs(c) for j, c in enumerate(self.coeffs)), Fraction(0))

    def to_text(self) -> str:
        return "poly " + " ".join(format_exact(c) for c in self.coeffs)


def eval_map(m: MapSpec, z):
    """``m(z)`` at the active precision (``z`` real or complex)."""
    if isinstance(z, (complex, gmpy2.mpc)):
        return m(to_complex(z))
    return m(z if isinstance(z, gmpy2.mpfr) else to_real(z))


def eval_map_derivative(m: MapSpec, z):
    if isinstance(z, (complex, gmpy2.mpc)):
        return m.derivative(to_complex(z))
    return m.derivative(z if isinstance(z, gmpy2.mpfr) else to_real(z))


def second_derivative_ratio_bound(m: MapSpec) -> float:
    """Upper bound for ``|m''/m'|`` on [0, 1]; the Lipschitz constant of ``log|m'|``."""
    if isinstance(m, Affine):
        return 0.0
    if isinstance(m, SineAffine):
        # |d/dx log cos(pi x/4)| = (pi/4) tan(pi x/4) <= pi/4 on [0, 1]
        return 3.141592653589794 / 4
    c, d = float(m.c), float(m.d)
    low = min(abs(d), abs(c + d))
    if (d > 0) != (c + d > 0) or low == 0:
        raise DomainError("moebius pole inside [0, 1]")
    return 2 * abs(c) / low
