"""Line-oriented ``key = value`` run configuration.

Example::

    # middle-thirds system with unequal weights
    map = affine 1/3 0
    map = affine 1/3 2/3
    p = 1/3 2/3
    epsilon = 1/4
    digits = 64
    k = 14
    observable = poly 0 1

Rational literals ``a/b`` are kept exact; decimal literals are converted
exactly to rationals as well.  ``map`` and ``pfun`` (one weight polynomial per
map, replacing ``p``) and ``piece`` may repeat.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .errors import IFSMeasureError, ValidationError
from .maps import Affine, Moebius, Polynomial, SineAffine
from .numeric import format_exact, make_context, parse_exact
from .observables import Lyapunov
from .system import ConstantWeights, FunctionWeights, IFSConfig

REPEATED = {"map", "pfun", "piece"}
SCALAR_INT = {"digits": 64, "k": 12, "M": 4, "K": 1, "n": 12, "print_digits": 40}
KNOWN = REPEATED | set(SCALAR_INT) | {"p", "q", "epsilon", "observable", "x0", "format"}


class ConfigError(IFSMeasureError, ValueError):
    def __init__(self, key: str, message: str):
        super().__init__(f"{key}: {message}")
        self.key = key


@dataclass
class RunConfig:
    system: IFSConfig
    k: int = 12
    digits: int = 64
    observable: str = "poly 0 1"
    M: int = 4
    K: int = 1
    n: int = 12
    x0: Fraction = Fraction(1, 2)
    print_digits: int = 40
    format: str = "plain"
    pieces: Dict[Tuple[int, ...], str] = field(default_factory=dict)

    def build_observable(self, text: Optional[str] = None):
        return parse_observable(text or self.observable, self.system)

    def to_text(self) -> str:
        s = self.system
        lines = [f"map = {m.to_text()}" for m in s.maps]
        if isinstance(s.weights, ConstantWeights):
            lines.append("p = " + " ".join(format_exact(v) for v in s.weights.values))
        else:
            lines += ["pfun = " + " ".join(format_exact(c) for c in f.coeffs) for f in s.weights.functions]
        if s.q is not None:
            lines.append("q = " + " ".join(format_exact(v) for v in s.q.values))
        lines.append(f"epsilon = {format_exact(s.epsilon)}")
        lines.append(f"digits = {s.precision.digits}")
        lines.append(f"k = {self.k}")
        lines.append(f"observable = {self.observable}")
        lines.append(f"M = {self.M}")
        lines.append(f"K = {self.K}")
        lines.append(f"n = {self.n}")
        lines.append(f"x0 = {format_exact(self.x0)}")
        for word, obs in self.pieces.items():
            lines.append(f"piece = {' '.join(map(str, word))} : {obs}")
        return "\n".join(lines) + "\n"


def _fractions(key: str, text: str) -> List[Fraction]:
    try:
        return [parse_exact(tok) for tok in text.split()]
    except ValueError as exc:
        raise ConfigError(key, str(exc)) from None


def parse_map(text: str):
    parts = text.split()
    if not parts:
        raise ConfigError("map", "empty map specification")
    kind, args = parts[0].lower(), _fractions("map", " ".join(parts[1:]))
    expected = {"affine": 2, "moebius": 4, "sineaffine": 2}
    if kind not in expected:
        raise ConfigError("map", f"unknown map family {parts[0]!r} (affine, moebius, sineaffine)")
    if len(args) != expected[kind]:
        raise ConfigError("map", f"{kind} takes {expected[kind]} parameters, got {len(args)}")
    try:
        if kind == "affine":
            return Affine(*args)
        if kind == "moebius":
            return Moebius(*args)
        return SineAffine(*args)
    except ValueError as exc:
        raise ConfigError("map", str(exc)) from None


def parse_observable(text: str, system: IFSConfig):
    """``poly c0 c1 ...``, ``monomial n``, ``const c`` or ``lyapunov``."""
    parts = text.split()
    if not parts:
        raise ConfigError("observable", "empty observable")
    kind = parts[0].lower()
    if kind == "poly":
        return Polynomial(tuple(_fractions("observable", " ".join(parts[1:]))))
    if kind == "monomial" and len(parts) == 2 and parts[1].isdigit():
        return Polynomial.monomial(int(parts[1]))
    if kind == "const" and len(parts) == 2:
        return Polynomial(tuple(_fractions("observable", parts[1])))
    if kind == "lyapunov" and len(parts) == 1:
        try:
            return Lyapunov(system)
        except IFSMeasureError as exc:
            raise ConfigError("observable", str(exc)) from None
    raise ConfigError("observable", f"cannot parse {text!r}")


def parse_config(text: str) -> RunConfig:
    raw: Dict[str, List[str]] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}", "expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in KNOWN:
            raise ConfigError(key, "unknown key")
        if key not in REPEATED and key in raw:
            raise ConfigError(key, "given more than once")
        raw.setdefault(key, []).append(value)

    ints = {}
    for key, default in SCALAR_INT.items():
        if key in raw:
            try:
                ints[key] = int(raw[key][0])
            except ValueError:
                raise ConfigError(key, f"expected an integer, got {raw[key][0]!r}") from None
        else:
            ints[key] = default

    if "map" not in raw:
        raise ConfigError("map", "at least two maps are required")
    maps = tuple(parse_map(v) for v in raw["map"])

    if "p" in raw and "pfun" in raw:
        raise ConfigError("p", "give either p or pfun, not both")
    if "p" in raw:
        weights = ConstantWeights(tuple(_fractions("p", raw["p"][0])))
    elif "pfun" in raw:
        weights = FunctionWeights(tuple(Polynomial(tuple(_fractions("pfun", v))) for v in raw["pfun"]))
    else:
        raise ConfigError("p", "weights are required")
    q = ConstantWeights(tuple(_fractions("q", raw["q"][0]))) if "q" in raw else None
    eps = _fractions("epsilon", raw["epsilon"][0]) if "epsilon" in raw else [Fraction(1, 10)]
    if len(eps) != 1:
        raise ConfigError("epsilon", "expected a single value")

    try:
        ctx = make_context(ints["digits"])
    except IFSMeasureError as exc:
        raise ConfigError("digits", str(exc)) from None
    try:
        system = IFSConfig(maps, weights, q=q, epsilon=eps[0], precision=ctx)
    except ValidationError as exc:
        msg = str(exc)
        key = "q" if msg.startswith("q") else "epsilon" if "epsilon" in msg else "p" if "weights" in msg else "map"
        raise ConfigError(key, msg) from None

    pieces = {}
    for v in raw.get("piece", []):
        if ":" not in v:
            raise ConfigError("piece", "expected 'symbols : observable'")
        word_text, obs = (s.strip() for s in v.split(":", 1))
        try:
            word = tuple(int(s) for s in word_text.replace(",", " ").split())
        except ValueError:
            raise ConfigError("piece", f"bad word {word_text!r}") from None
        parse_observable(obs, system)
        pieces[word] = obs

    x0 = _fractions("x0", raw["x0"][0])[0] if "x0" in raw else Fraction(1, 2)
    fmt = raw.get("format", ["plain"])[0]
    if fmt not in ("plain", "csv"):
        raise ConfigError("format", "expected plain or csv")
    observable = raw.get("observable", ["poly 0 1"])[0]
    parse_observable(observable, system)
    return RunConfig(
        system=system,
        k=ints["k"],
        digits=ints["digits"],
        observable=observable,
        M=ints["M"],
        K=ints["K"],
        n=ints["n"],
        x0=x0,
        print_digits=ints["print_digits"],
        format=fmt,
        pieces=pieces,
    )
