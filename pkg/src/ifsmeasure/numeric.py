"""Arbitrary-precision arithmetic context built on MPFR (through gmpy2).

Every computation in the package runs inside one :class:`PrecisionContext`.
The user-facing unit is decimal digits; internally the context is converted
to a binary precision and activated as a thread-local gmpy2 context, so all
``mpfr``/``mpc`` arithmetic done while it is active uses that precision.
"""
from __future__ import annotations

import math
from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

import gmpy2
from gmpy2 import mpc, mpfr, mpq

from .errors import PrecisionError

MIN_DIGITS = 30
DEFAULT_GUARD = 15

_LOG2_10 = math.log2(10)


@dataclass(frozen=True)
class PrecisionContext:
    """Working precision: ``digits`` trusted digits plus ``guard`` hidden ones."""

    digits: int
    guard: int = DEFAULT_GUARD

    def __post_init__(self):
        if self.digits < MIN_DIGITS:
            raise PrecisionError(
                f"precision too low: {self.digits} digits requested, at least {MIN_DIGITS} required"
            )
        if self.guard < 0:
            raise PrecisionError("guard digits must be non-negative")

    @property
    def working_digits(self) -> int:
        return self.digits + self.guard

    @property
    def bits(self) -> int:
        return math.ceil(self.working_digits * _LOG2_10) + 8

    def tolerance(self, shift: int = 0) -> mpfr:
        """``10**(-(digits - shift))`` as an mpfr at this precision."""
        with self.activate():
            return mpfr(10) ** (shift - self.digits)

    @contextmanager
    def activate(self) -> Iterator["PrecisionContext"]:
        with gmpy2.context(precision=self.bits):
            yield self


def make_context(digits: int, guard: int = DEFAULT_GUARD) -> PrecisionContext:
    """Build a context, rejecting precisions too low for the coefficient sums."""
    if not isinstance(digits, int) or isinstance(digits, bool):
        raise PrecisionError(f"digits must be an integer, got {digits!r}")
    return PrecisionContext(digits, guard)


def to_real(x) -> mpfr:
    """Convert an exact or floating value to an mpfr at the active precision."""
    if isinstance(x, Fraction):
        return mpfr(mpq(x.numerator, x.denominator))
    if isinstance(x, int):
        return mpfr(x)
    if isinstance(x, str):
        q = parse_exact(x)
        return mpfr(mpq(q.numerator, q.denominator))
    if isinstance(x, (gmpy2.mpfr, gmpy2.mpq)):
        return mpfr(x)
    if isinstance(x, float):
        return mpfr(x)
    raise TypeError(f"cannot convert {type(x).__name__} to a real number")


def to_complex(z) -> mpc:
    if isinstance(z, gmpy2.mpc):
        return z
    if isinstance(z, complex):
        return mpc(z)
    return mpc(to_real(z))


def parse_exact(text: str) -> Fraction:
    """Parse ``a/b`` or a decimal literal exactly."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational or decimal literal: {text!r}") from exc


def format_exact(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def pi() -> mpfr:
    return gmpy2.const_pi()


def exact_sum(values) -> mpfr:
    """Correctly rounded sum; the result does not depend on summation order."""
    return gmpy2.fsum(values)


def render(x, digits: int, context: PrecisionContext | None = None) -> str:
    """Positional decimal string of ``x`` rounded to ``digits`` significant digits.

    >>> ctx = make_context(64)
    >>> with ctx.activate():
    ...     render(mpfr(2) / 3, 10, ctx)
    '0.6666666667'
    """
    if digits < 1:
        raise PrecisionError("at least one digit must be rendered")
    if context is not None and digits > context.digits:
        raise PrecisionError(
            f"cannot render {digits} digits from a context carrying {context.digits}"
        )
    if not isinstance(x, gmpy2.mpfr):
        x = to_real(x)
    if not gmpy2.is_finite(x):
        raise PrecisionError(f"cannot render non-finite value {x}")
    if x == 0:
        return "0" if digits == 1 else "0." + "0" * (digits - 1)
    mantissa, exponent, _ = x.digits(10, digits)
    sign = ""
    if mantissa.startswith("-"):
        sign, mantissa = "-", mantissa[1:]
    if exponent <= 0:
        body = "0." + "0" * (-exponent) + mantissa
    elif exponent >= len(mantissa):
        body = mantissa + "0" * (exponent - len(mantissa))
    else:
        body = mantissa[:exponent] + "." + mantissa[exponent:]
    return sign + body


def agreeing_digits(x: mpfr, y: mpfr, cap: int) -> int:
    """Leading significant digits on which ``x`` and ``y`` agree, capped at ``cap``.

    Measured as ``floor(-log10(|x - y| / |x|))`` so that 0.3999... and 0.4000...
    count as close rather than disagreeing at the first digit.
    """
    diff = abs(x - y)
    if diff == 0:
        return cap
    scale = abs(x) if x != 0 else abs(y)
    if scale == 0:
        return 0
    rel = diff / scale
    return max(0, min(cap, int(gmpy2.floor(-gmpy2.log10(rel)))))
