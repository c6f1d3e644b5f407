"""Periodic-point trace sums ``t_m`` and observable-weighted traces ``tau_m``.

For a word ``w`` of length ``m`` with periodic-orbit data ``(orbit, deriv,
weight)`` the summands are::

    t_m   += weight / (1 - deriv)
    tau_m += weight * (g(orbit[0]) + ... + g(orbit[m-1])) / (1 - deriv)

Both summands are invariant under rotation of ``w``, so by default each level
is summed over rotation classes weighted by class size.  Per-level sums use an
exactly rounded summation, making results independent of evaluation order and
of the number of worker processes.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import gmpy2
from gmpy2 import mpfr

from .numeric import PrecisionContext, make_context
from .observables import Observable, bind_observable
from .orbits import _orbit, all_words, cyclic_classes, engine
from .system import IFSConfig


@dataclass
class TraceTable:
    k: int
    t: List[mpfr]
    tau: List[mpfr]
    context: PrecisionContext = field(default_factory=lambda: make_context(64))

    def __post_init__(self):
        if len(self.t) != self.k or len(self.tau) != self.k:
            raise ValueError("trace table lengths must equal k")


def _level_terms(ifs: IFSConfig, observables: Sequence[Observable], items):
    """Summands for a batch of ``(word0, multiplicity)`` pairs at one level."""
    with ifs.precision.activate():
        eng = engine(ifs)
        gs = [bind_observable(g) for g in observables]
        t_terms = []
        tau_terms = [[] for _ in gs]
        one = eng.one
        for w0, mult in items:
            orb = _orbit(eng, w0)
            c = orb.weight / (one - orb.deriv)
            if mult != 1:
                c = c * mult
            t_terms.append(c)
            for g, bucket in zip(gs, tau_terms):
                bucket.append(c * gmpy2.fsum([g(x) for x in orb.orbit]))
        return t_terms, tau_terms


def _level_items(ifs: IFSConfig, m: int, use_classes: bool):
    if use_classes:
        return [(tuple(s - 1 for s in c.representative), c.class_size) for c in cyclic_classes(ifs.N, m)]
    return [(tuple(s - 1 for s in w), 1) for w in all_words(ifs.N, m)]


def _chunks(items, n):
    size = max(1, -(-len(items) // n))
    return [items[i:i + size] for i in range(0, len(items), size)]


def level_traces(
    ifs: IFSConfig,
    observables: Sequence[Observable],
    m: int,
    use_classes: bool = True,
    workers: int = 1,
    pool: Optional[ProcessPoolExecutor] = None,
) -> Tuple[mpfr, List[mpfr]]:
    """``(t_m, [tau_m(g) for g in observables])``."""
    if m < 1:
        raise ValueError("trace level must be positive")
    ifs.require_valid()
    items = _level_items(ifs, m, use_classes)
    if pool is not None and workers > 1 and len(items) >= 2 * workers:
        parts = list(pool.map(_level_terms_packed, [(ifs, tuple(observables), ch) for ch in _chunks(items, workers)]))
        t_terms = [x for p in parts for x in p[0]]
        tau_terms = [[x for p in parts for x in p[1][j]] for j in range(len(observables))]
    else:
        t_terms, tau_terms = _level_terms(ifs, observables, items)
    with ifs.precision.activate():
        return gmpy2.fsum(t_terms), [gmpy2.fsum(b) for b in tau_terms]


def _level_terms_packed(args):
    return _level_terms(*args)


def compute_traces(
    ifs: IFSConfig,
    observables: Sequence[Observable],
    k: int,
    use_classes: bool = True,
    workers: int = 1,
) -> List[TraceTable]:
    """Trace tables up to level ``k`` for several observables sharing one orbit pass."""
    if k < 1:
        raise ValueError("k must be positive")
    ts: List[mpfr] = []
    taus: List[List[mpfr]] = [[] for _ in observables]
    pool = ProcessPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        for m in range(1, k + 1):
            t, tau = level_traces(ifs, observables, m, use_classes, workers, pool)
            ts.append(t)
            for bucket, v in zip(taus, tau):
                bucket.append(v)
    finally:
        if pool is not None:
            pool.shutdown()
    return [TraceTable(k, list(ts), tau, ifs.precision) for tau in taus]


def trace_t(ifs: IFSConfig, m: int, use_classes: bool = True) -> mpfr:
    return level_traces(ifs, (), m, use_classes)[0]


def trace_tau(ifs: IFSConfig, g: Observable, m: int, use_classes: bool = True) -> mpfr:
    return level_traces(ifs, (g,), m, use_classes)[1][0]


def trace_table(ifs: IFSConfig, g: Observable, k: int, use_classes: bool = True, workers: int = 1) -> TraceTable:
    return compute_traces(ifs, (g,), k, use_classes, workers)[0]
