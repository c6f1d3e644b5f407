"""Iterated function systems, their weights, and hypothesis screening."""
from __future__ import annotations

import dataclasses
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import List, Optional, Sequence, Tuple, Union

import gmpy2
from gmpy2 import mpc, mpfr

from .errors import DomainError, UnsupportedConfiguration, ValidationError
from .maps import Affine, MapSpec, Moebius, Polynomial, SineAffine
from .numeric import PrecisionContext, make_context, to_real

SCREEN_NOTE = "numerical screen on a sampled boundary, not a proof of complex contraction"


@dataclass(frozen=True)
class ConstantWeights:
    values: Tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(Fraction(v) for v in self.values))

    def __len__(self):
        return len(self.values)

    def bind(self) -> List[mpfr]:
        return [to_real(v) for v in self.values]


@dataclass(frozen=True)
class FunctionWeights:
    """Position-dependent weights ``p_i(x)``, one polynomial per map."""

    functions: Tuple[Polynomial, ...]

    def __post_init__(self):
        object.__setattr__(self, "functions", tuple(self.functions))

    def __len__(self):
        return len(self.functions)

    def bind(self) -> list:
        return [f.bind()[0] for f in self.functions]


WeightSpec = Union[ConstantWeights, FunctionWeights]


def _as_weights(w) -> WeightSpec:
    if isinstance(w, (ConstantWeights, FunctionWeights)):
        return w
    return ConstantWeights(tuple(w))


@dataclass(frozen=True)
class IFSConfig:
    """A system of ``N >= 2`` contractions with weights.

    ``q`` is an optional second probability vector (used for Wasserstein
    distances); ``epsilon`` is the half-width of the complex rectangle
    ``[-eps, 1+eps] x [-eps, eps]`` screened for contraction.
    """

    maps: Tuple[MapSpec, ...]
    weights: WeightSpec
    q: Optional[ConstantWeights] = None
    epsilon: Fraction = Fraction(1, 10)
    precision: PrecisionContext = field(default_factory=lambda: make_context(64))

    def __post_init__(self):
        object.__setattr__(self, "maps", tuple(self.maps))
        object.__setattr__(self, "weights", _as_weights(self.weights))
        if self.q is not None:
            q = _as_weights(self.q)
            if not isinstance(q, ConstantWeights):
                raise ValidationError("second weights q must be a constant vector")
            object.__setattr__(self, "q", q)
        object.__setattr__(self, "epsilon", Fraction(self.epsilon))
        if len(self.maps) < 2:
            raise ValidationError("an iterated function system needs at least two maps")
        if len(self.weights) != len(self.maps):
            raise ValidationError(
                f"weights: expected {len(self.maps)} entries, got {len(self.weights)}"
            )
        if self.q is not None and len(self.q) != len(self.maps):
            raise ValidationError(f"q: expected {len(self.maps)} entries, got {len(self.q)}")
        if self.epsilon <= 0:
            raise ValidationError("epsilon must be positive")

    @property
    def N(self) -> int:
        return len(self.maps)

    @property
    def constant_weights(self) -> bool:
        return isinstance(self.weights, ConstantWeights)

    def replace(self, **changes) -> "IFSConfig":
        return dataclasses.replace(self, **changes)

    def with_precision(self, digits: int) -> "IFSConfig":
        return self.replace(precision=make_context(digits, self.precision.guard))

    @cached_property
    def report(self) -> "ValidationReport":
        return validate(self)

    @cached_property
    def contraction_bound(self) -> mpfr:
        """Validated contraction constant (sup of ``|phi_i'|`` over the screened rectangle)."""
        return self.report.contraction_sup

    def require_valid(self) -> "IFSConfig":
        rep = self.report
        if not rep.ok:
            raise ValidationError("; ".join(rep.messages) or "validation failed")
        return self


@dataclass
class ValidationReport:
    contraction_sup: mpfr
    is_contracting: bool
    nonoverlap_level_checked: Optional[int] = None
    nonoverlap_ok: Optional[bool] = None
    weight_ok: bool = True
    messages: List[str] = field(default_factory=list)
    note: str = SCREEN_NOTE

    @property
    def ok(self) -> bool:
        return (
            self.is_contracting
            and self.weight_ok
            and self.nonoverlap_ok is not False
            and not any(m.startswith("map ") for m in self.messages)
        )


def _rectangle_boundary(eps: mpfr, samples: int):
    corners = [mpc(-eps, -eps), mpc(1 + eps, -eps), mpc(1 + eps, eps), mpc(-eps, eps)]
    for a, b in zip(corners, corners[1:] + corners[:1]):
        for j in range(samples):
            yield a + (b - a) * j / samples


def _map_domain_messages(ifs: IFSConfig, index: int, m: MapSpec) -> List[str]:
    tol = mpfr(10) ** (-ifs.precision.digits)
    out = []
    if isinstance(m, Moebius):
        d0, d1 = m.d, m.c + m.d
        if d0 == 0 or d1 == 0 or (d0 > 0) != (d1 > 0):
            return [f"map {index + 1}: pole of the moebius map lies in [0, 1]"]
    lo, hi = m(mpfr(0)), m(mpfr(1))
    for x, y in (("0", lo), ("1", hi)):
        if y < -tol or y > 1 + tol:
            out.append(f"map {index + 1} leaves [0, 1]: image of {x} is {float(y):.6g}")
    return out


def check_contraction(ifs: IFSConfig, boundary_samples: int = 64) -> ValidationReport:
    """Sample ``|phi_i'|`` on the boundary of the complex rectangle.

    ``phi_i'`` is holomorphic on the rectangle for every catalog map whose
    pole (if any) lies outside it, so by the maximum principle its modulus
    peaks on the boundary.
    """
    if boundary_samples < 64:
        raise ValueError("boundary_samples must be at least 64")
    with ifs.precision.activate():
        eps = to_real(ifs.epsilon)
        messages: List[str] = []
        sup = mpfr(0)
        for i, m in enumerate(ifs.maps):
            messages.extend(_map_domain_messages(ifs, i, m))
            if isinstance(m, Moebius) and m.c != 0:
                pole = -m.d / m.c
                if -ifs.epsilon <= pole <= 1 + ifs.epsilon:
                    messages.append(f"map {i + 1}: pole {pole} inside the screened rectangle")
                    sup = mpfr("inf")
                    continue
            df = m.bind()[1]
            for z in _rectangle_boundary(eps, boundary_samples):
                v = abs(df(z))
                if v > sup:
                    sup = v
        contracting = bool(sup < 1)
        if not contracting:
            messages.append(f"contraction check failed: sup |phi'| = {float(sup):.6g} >= 1")
        return ValidationReport(contraction_sup=sup, is_contracting=contracting, messages=messages)


def largest_passing_epsilon(
    ifs: IFSConfig, candidates: Sequence = ("1/100", "1/20", "1/10", "1/4", "1/2", "1")
) -> Optional[Fraction]:
    """Largest tested rectangle half-width for which the contraction screen passes."""
    best = None
    for c in sorted(Fraction(c) for c in candidates):
        if check_contraction(ifs.replace(epsilon=c)).is_contracting:
            best = c
    return best


def _require_monotone(ifs: IFSConfig, samples: int = 65) -> List[int]:
    signs = []
    for i, m in enumerate(ifs.maps):
        df = m.bind()[1]
        vals = [df(mpfr(j) / (samples - 1)) for j in range(samples)]
        if all(v > 0 for v in vals):
            signs.append(1)
        elif all(v < 0 for v in vals):
            signs.append(-1)
        else:
            raise UnsupportedConfiguration(f"map {i + 1} is not monotone on [0, 1]")
    return signs


def cylinder_intervals(ifs: IFSConfig, level: int) -> List[Tuple[tuple, mpfr, mpfr]]:
    """``(word, left, right)`` for every cylinder ``phi_word([0, 1])`` of the given length."""
    bound = [m.bind()[0] for m in ifs.maps]
    out = []
    for word in itertools.product(range(ifs.N), repeat=level):
        a, b = mpfr(0), mpfr(1)
        for i in reversed(word):
            a, b = bound[i](a), bound[i](b)
        lo, hi = (a, b) if a <= b else (b, a)
        out.append((tuple(i + 1 for i in word), lo, hi))
    return out


def check_nonoverlap(ifs: IFSConfig, level: int = 1) -> bool:
    """True iff the open cylinders of the given length are pairwise disjoint.

    Touching endpoints are allowed.  Requires monotone maps.
    """
    if level < 1:
        raise ValueError("level must be positive")
    with ifs.precision.activate():
        _require_monotone(ifs)
        tol = mpfr(10) ** (-(ifs.precision.digits // 2))
        ivs = sorted(cylinder_intervals(ifs, level), key=lambda t: (t[1], t[2]))
        return all(nxt[1] >= cur[2] - tol for cur, nxt in zip(ivs, ivs[1:]))


def weight_messages(ifs: IFSConfig, samples: int = 65) -> List[str]:
    out = []
    specs = [("p", ifs.weights)] + ([("q", ifs.q)] if ifs.q is not None else [])
    for name, w in specs:
        if isinstance(w, ConstantWeights):
            for i, v in enumerate(w.values):
                if not 0 < v < 1:
                    out.append(f"{name}[{i + 1}] = {v} is not in (0, 1)")
            total = sum(w.values, Fraction(0))
            if total != 1:
                out.append(f"{name} sums to {total}, not 1")
            continue
        for j in range(samples):
            x = Fraction(j, samples - 1)
            vals = [f.exact(x) for f in w.functions]
            for i, v in enumerate(vals):
                if not 0 < v < 1:
                    out.append(f"{name}[{i + 1}]({x}) = {v} is not in (0, 1)")
            if sum(vals, Fraction(0)) != 1:
                out.append(f"{name} weights sum to {sum(vals)} at x = {x}")
            if out:
                break
    return out


def check_weights(ifs: IFSConfig, samples: int = 65) -> bool:
    """Probability-vector test (exact) or sampled test of weight functions."""
    return not weight_messages(ifs, samples)


def validate(
    ifs: IFSConfig,
    boundary_samples: int = 64,
    nonoverlap_level: Optional[int] = None,
    weight_samples: int = 65,
) -> ValidationReport:
    report = check_contraction(ifs, boundary_samples)
    wmsgs = weight_messages(ifs, weight_samples)
    report.weight_ok = not wmsgs
    report.messages.extend(wmsgs)
    if nonoverlap_level is not None:
        report.nonoverlap_level_checked = nonoverlap_level
        try:
            report.nonoverlap_ok = check_nonoverlap(ifs, nonoverlap_level)
        except (UnsupportedConfiguration, DomainError) as exc:
            report.nonoverlap_ok = False
            report.messages.append(str(exc))
        if not report.nonoverlap_ok:
            report.messages.append(f"cylinders overlap at level {nonoverlap_level}")
    return report


def affine_system(pairs, weights, **kw) -> IFSConfig:
    """Convenience constructor: ``pairs`` is a list of ``(ratio, offset)``."""
    return IFSConfig(tuple(Affine(r, t) for r, t in pairs), weights, **kw)


def sine_system(pairs, weights, **kw) -> IFSConfig:
    return IFSConfig(tuple(SineAffine(a, b) for a, b in pairs), weights, **kw)
