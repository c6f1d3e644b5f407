"""Words, rotation classes and periodic-point data.

Words are tuples of 1-based symbols ``(i_1, ..., i_m)``; the composition
``phi_word = phi_{i_1} o ... o phi_{i_m}`` applies ``i_m`` first.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, List, Tuple

import gmpy2
from gmpy2 import mpfr

from .errors import ConvergenceError
from .system import ConstantWeights, IFSConfig

Word = Tuple[int, ...]


@dataclass(frozen=True)
class CyclicClass:
    representative: Word
    class_size: int


@dataclass(frozen=True)
class PeriodicOrbit:
    """Periodic-point data for one word.

    ``orbit[k]`` is the fixed point of the ``k``-th rotation of ``word``,
    ``deriv`` the derivative of the composite map at its fixed point, and
    ``weight`` the (possibly position-dependent) product of weights.
    """

    word: Word
    z: mpfr
    orbit: Tuple[mpfr, ...]
    deriv: mpfr
    weight: mpfr


def rotate(w: Word, k: int) -> Word:
    """Cyclic shift: ``(i_1..i_m) -> (i_{k+1}..i_m i_1..i_k)``."""
    if not w:
        raise ValueError("words are non-empty")
    k %= len(w)
    return tuple(w[k:]) + tuple(w[:k])


def smallest_period(w: Word) -> int:
    m = len(w)
    for p in range(1, m + 1):
        if m % p == 0 and w == w[:p] * (m // p):
            return p
    return m


def _necklaces(N: int, m: int) -> Iterator[Tuple[Tuple[int, ...], int]]:
    """Fredricksen-Kessler-Maiorana enumeration of 0-based necklaces with their period."""
    a = [0] * m
    yield tuple(a), 1
    while True:
        i = m - 1
        while i >= 0 and a[i] == N - 1:
            i -= 1
        if i < 0:
            return
        a[i] += 1
        for j in range(i + 1, m):
            a[j] = a[j - i - 1]
        if m % (i + 1) == 0:
            yield tuple(a), i + 1


def cyclic_classes(N: int, m: int) -> List[CyclicClass]:
    """Rotation classes of ``{1..N}^m`` in lexicographic order of their least rotation."""
    if N < 2 or m < 1:
        raise ValueError("need N >= 2 and m >= 1")
    return [
        CyclicClass(tuple(s + 1 for s in neck), period) for neck, period in _necklaces(N, m)
    ]


def all_words(N: int, m: int) -> Iterator[Word]:
    return (tuple(s + 1 for s in w) for w in itertools.product(range(N), repeat=m))


class _Engine:
    """Precision-bound view of an IFS used by the hot loops."""

    def __init__(self, ifs: IFSConfig):
        ctx = ifs.precision
        self.ifs = ifs
        self.bits = ctx.bits
        pairs = [m.bind() for m in ifs.maps]
        self.fs = [p[0] for p in pairs]
        self.dfs = [p[1] for p in pairs]
        self.half = mpfr(1) / 2
        self.one = mpfr(1)
        self.zero = mpfr(0)
        self.picard_tol = mpfr(10) ** (-ctx.digits - ctx.guard // 2)
        L = float(ifs.contraction_bound)
        L = min(max(L, 1e-300), 1 - 1e-12)
        self.cap = math.ceil(ctx.working_digits / abs(math.log10(L))) + 50
        self.constant = isinstance(ifs.weights, ConstantWeights)
        self.weights = ifs.weights.bind()


@lru_cache(maxsize=64)
def _engine_for(ifs: IFSConfig, bits: int) -> _Engine:
    return _Engine(ifs)


def engine(ifs: IFSConfig) -> _Engine:
    """Bound engine for ``ifs``; must be called with ``ifs.precision`` active."""
    ifs.require_valid()
    return _engine_for(ifs, gmpy2.get_context().precision)


def _fixed_point(eng: _Engine, w0: Tuple[int, ...]) -> mpfr:
    fs = eng.fs
    rev = w0[::-1]
    z = eng.half
    tol = eng.picard_tol
    for _ in range(eng.cap):
        y = z
        for i in rev:
            y = fs[i](y)
        if abs(y - z) < tol:
            z = y
            break
        z = y
    else:
        raise ConvergenceError(f"fixed-point iteration did not converge for word {w0}")
    # one Newton step on phi_w(z) - z
    dfs = eng.dfs
    u, d = z, eng.one
    for i in rev:
        d *= dfs[i](u)
        u = fs[i](u)
    z = z - (u - z) / (d - 1)
    if z < 0:
        return eng.zero
    if z > 1:
        return eng.one
    return z


def _orbit(eng: _Engine, w0: Tuple[int, ...]) -> PeriodicOrbit:
    z = _fixed_point(eng, w0)
    fs, dfs = eng.fs, eng.dfs
    m = len(w0)
    images = [z] * m
    u, d = z, eng.one
    for k in range(m - 1, 0, -1):
        i = w0[k]
        d *= dfs[i](u)
        u = fs[i](u)
        images[k] = u
    d *= dfs[w0[0]](u)
    ws = eng.weights
    if eng.constant:
        weight = ws[w0[0]]
        for i in w0[1:]:
            weight = weight * ws[i]
    else:
        # p_{i_1}(u_1) p_{i_2}(u_2) ... p_{i_m}(u_0), with u_k the k-th orbit point
        weight = ws[w0[0]](images[1 % m])
        for k in range(1, m):
            weight = weight * ws[w0[k]](images[(k + 1) % m])
    return PeriodicOrbit(tuple(i + 1 for i in w0), z, tuple(images), d, weight)


def _check_word(ifs: IFSConfig, w: Word) -> Tuple[int, ...]:
    if not w:
        raise ValueError("words are non-empty")
    if any(not 1 <= s <= ifs.N for s in w):
        raise ValueError(f"word {w} has symbols outside 1..{ifs.N}")
    return tuple(s - 1 for s in w)


def fixed_point(ifs: IFSConfig, w: Word) -> mpfr:
    """Fixed point of ``phi_w`` in [0, 1] (Picard iteration, then one Newton step)."""
    w0 = _check_word(ifs, w)
    with ifs.precision.activate():
        return _fixed_point(engine(ifs), w0)


def orbit_data(ifs: IFSConfig, w: Word) -> PeriodicOrbit:
    """Fixed point, rotated fixed points, composite derivative and weight of ``w``."""
    w0 = _check_word(ifs, w)
    with ifs.precision.activate():
        return _orbit(engine(ifs), w0)
