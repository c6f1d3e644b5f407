"""Command-line front end.

Exit status: 0 success, 1 configuration or parse error, 2 the system fails
validation, 3 numeric failure (budget exceeded, vanishing denominator).
"""
from __future__ import annotations

import argparse
import csv
import io
import sys
from typing import List, Optional, Sequence

from .applications import (
    integrate,
    integrate_piecewise,
    iterate_oracle,
    lyapunov,
    moments,
    wasserstein,
)
from .config import ConfigError, RunConfig, parse_config, parse_observable
from .determinant import coeffs_recursive
from .errors import (
    BudgetExceeded,
    ConvergenceError,
    DomainError,
    PrecisionError,
    SignConditionError,
    UnsupportedConfiguration,
    ValidationError,
)
from .numeric import agreeing_digits, render
from .system import check_nonoverlap, validate
from .traces import compute_traces

EXIT_OK, EXIT_CONFIG, EXIT_VALIDATION, EXIT_NUMERIC = 0, 1, 2, 3
COMMANDS = ("validate", "integrate", "moments", "wasserstein", "lyapunov", "piecewise", "oracle", "traces")


class NumericFailure(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="ifsmeasure",
        description="Integrals against stationary measures of iterated function systems.",
    )
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("config", help="path to a key = value configuration file")
    ap.add_argument("--digits", type=int, help="working precision in decimal digits")
    ap.add_argument("--print-digits", type=int, help="significant digits printed (default 40)")
    ap.add_argument("--k", type=int, help="maximal level of the approximation")
    ap.add_argument("--M", type=int, help="highest moment order")
    ap.add_argument("--K", type=int, help="cylinder level for piecewise integrands")
    ap.add_argument("--n", type=int, help="depth of the push-forward oracle")
    ap.add_argument("--observable", help="integrand, e.g. 'poly 0 1' or 'lyapunov'")
    ap.add_argument("--workers", type=int, default=1, help="worker processes (never changes output)")
    ap.add_argument("--format", choices=("plain", "csv"))
    ap.add_argument("--echo", action="store_true", help="validate: print the canonical configuration")
    return ap


def _load(args) -> RunConfig:
    try:
        with open(args.config, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError("config", f"cannot read {args.config}: {exc.strerror}") from None
    cfg = parse_config(text)
    if args.digits is not None:
        try:
            cfg.system = cfg.system.with_precision(args.digits)
        except PrecisionError as exc:
            raise ConfigError("digits", str(exc)) from None
        cfg.digits = args.digits
    for name in ("k", "M", "K", "n", "print_digits", "format", "observable"):
        value = getattr(args, name)
        if value is not None:
            setattr(cfg, name, value)
    if args.observable is not None:
        parse_observable(args.observable, cfg.system)
    if cfg.print_digits > cfg.system.precision.digits:
        raise ConfigError("print_digits", f"cannot exceed the working digits ({cfg.system.precision.digits})")
    for name in ("k", "n", "K", "print_digits"):
        if getattr(cfg, name) < 1:
            raise ConfigError(name, "must be positive")
    if cfg.M < 0:
        raise ConfigError("M", "must be non-negative")
    return cfg


def _table(header: Sequence[str], rows: List[Sequence[str]], fmt: str, out) -> None:
    if fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        return
    for row in rows:
        out.write("  ".join(f"{h}={v}" if i == 0 else str(v) for i, (h, v) in enumerate(zip(header, row))) + "\n")


def _series_rows(series, cfg: RunConfig):
    rows = []
    for k, (v, s) in enumerate(zip(series.values, series.stable_digits), 1):
        rows.append((k, "unavailable" if v is None else render(v, cfg.print_digits), s))
    return rows


def _require_ok(cfg: RunConfig) -> None:
    rep = cfg.system.report
    if not rep.ok:
        raise ValidationError("; ".join(rep.messages))


def _cmd_validate(cfg: RunConfig, args, out) -> int:
    s = cfg.system
    rep = validate(s, nonoverlap_level=None)
    try:
        nonoverlap = check_nonoverlap(s, cfg.K)
    except (UnsupportedConfiguration, DomainError) as exc:
        nonoverlap = None
        rep.messages.append(str(exc))
    with s.precision.activate():
        sup = render(rep.contraction_sup, min(cfg.print_digits, 20)) if rep.contraction_sup != float("inf") else "inf"
    out.write(f"maps = {s.N}\n")
    out.write(f"contraction_sup = {sup}\n")
    out.write(f"is_contracting = {'yes' if rep.is_contracting else 'no'}\n")
    out.write(f"weights_ok = {'yes' if rep.weight_ok else 'no'}\n")
    out.write(f"nonoverlap_level_{cfg.K} = {'n/a' if nonoverlap is None else 'yes' if nonoverlap else 'no'}\n")
    for m in rep.messages:
        out.write(f"message: {m}\n")
    out.write(f"note: {rep.note}\n")
    if args.echo:
        out.write(cfg.to_text())
    return EXIT_OK if rep.ok else EXIT_VALIDATION


def _cmd_integrate(cfg, args, out) -> int:
    _require_ok(cfg)
    series = integrate(cfg.system, cfg.build_observable(), cfg.k, args.workers)
    _table(("k", "value", "stable_digits"), _series_rows(series, cfg), cfg.format, out)
    if series.last is None:
        raise NumericFailure("final approximant unavailable: denominator vanished")
    return EXIT_OK


def _cmd_lyapunov(cfg, args, out) -> int:
    _require_ok(cfg)
    series = lyapunov(cfg.system, cfg.k, args.workers)
    _table(("k", "value", "stable_digits"), _series_rows(series, cfg), cfg.format, out)
    if series.last is None:
        raise NumericFailure("final approximant unavailable: denominator vanished")
    return EXIT_OK


def _cmd_moments(cfg, args, out) -> int:
    _require_ok(cfg)
    mv = moments(cfg.system, cfg.M, cfg.k, args.workers)
    if any(v is None for v in mv.values):
        raise NumericFailure("a moment estimate is unavailable: denominator vanished")
    with cfg.system.precision.activate():
        rows = [(n, render(v, cfg.print_digits)) for n, v in enumerate(mv.values)]
    _table(("n", "value"), rows, cfg.format, out)
    return EXIT_OK


def _cmd_wasserstein(cfg, args, out) -> int:
    _require_ok(cfg)
    res = wasserstein(cfg.system, cfg.k, args.workers)
    rows = []
    prev = None
    with cfg.system.precision.activate():
        for k, v in enumerate(res.per_k, 1):
            stable = 0 if v is None or prev is None else agreeing_digits(v, prev, cfg.system.precision.digits)
            rows.append((k, "unavailable" if v is None else render(v, cfg.print_digits), stable))
            prev = v
    _table(("k", "value", "stable_digits"), rows, cfg.format, out)
    if res.value is None:
        raise NumericFailure("final approximant unavailable: denominator vanished")
    return EXIT_OK


def _cmd_piecewise(cfg, args, out) -> int:
    _require_ok(cfg)
    pieces = {w: parse_observable(text, cfg.system) for w, text in cfg.pieces.items()}
    value = integrate_piecewise(cfg.system, cfg.K, pieces, cfg.k, args.workers)
    with cfg.system.precision.activate():
        _table(("K", "value"), [(cfg.K, render(value, cfg.print_digits))], cfg.format, out)
    return EXIT_OK


def _cmd_oracle(cfg, args, out) -> int:
    _require_ok(cfg)
    value = iterate_oracle(cfg.system, cfg.build_observable(), cfg.n, cfg.x0)
    with cfg.system.precision.activate():
        _table(("n", "value"), [(cfg.n, render(value, cfg.print_digits))], cfg.format, out)
    return EXIT_OK


def _cmd_traces(cfg, args, out) -> int:
    _require_ok(cfg)
    table = compute_traces(cfg.system, [cfg.build_observable()], cfg.k, workers=args.workers)[0]
    coeffs = coeffs_recursive(table)
    p = cfg.print_digits
    with cfg.system.precision.activate():
        rows = [
            (m, render(table.t[m - 1], p), render(table.tau[m - 1], p), render(coeffs.a[m], p), render(coeffs.alpha[m], p))
            for m in range(1, cfg.k + 1)
        ]
    _table(("m", "t", "tau", "a", "alpha"), rows, cfg.format, out)
    return EXIT_OK


HANDLERS = {
    "validate": _cmd_validate,
    "integrate": _cmd_integrate,
    "moments": _cmd_moments,
    "wasserstein": _cmd_wasserstein,
    "lyapunov": _cmd_lyapunov,
    "piecewise": _cmd_piecewise,
    "oracle": _cmd_oracle,
    "traces": _cmd_traces,
}


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    args = build_parser().parse_args(argv)
    try:
        cfg = _load(args)
    except ConfigError as exc:
        err.write(f"config error: {exc}\n")
        return EXIT_CONFIG
    buf = io.StringIO()
    try:
        code = HANDLERS[args.command](cfg, args, buf)
    except (ValidationError, UnsupportedConfiguration, SignConditionError) as exc:
        out.write(buf.getvalue())
        msg = str(exc)
        if not cfg.system.report.is_contracting and "contraction check failed" not in msg:
            msg = "contraction check failed; " + msg
        err.write(f"validation failed: {msg}\n")
        return EXIT_VALIDATION
    except (NumericFailure, BudgetExceeded, ConvergenceError, DomainError, ZeroDivisionError, ArithmeticError) as exc:
        out.write(buf.getvalue())
        err.write(f"numeric failure: {exc}\n")
        return EXIT_NUMERIC
    out.write(buf.getvalue())
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
