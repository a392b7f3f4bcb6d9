"""Command-line front end.

Exit status: 0 on success, 1 on a numerical failure or a failed check,
2 on a usage error (bad flag, out-of-domain parameter, malformed range).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Optional

from .constants import (
    Method,
    available_methods,
    bounds_beta1,
    epsilon_bounds,
    gamma_n,
    sequence_bound,
)
from .eigen import DEFAULT_TOL, cheb_smallest_root
from .errors import ParameterError
from .matrices import FACTORIZATION_MAX, verify_factorization
from .meixner import MeixnerParams
from .verify import (
    ORACLE_MAX_N,
    chain_condition_check,
    extremal_sequence_ratio,
    monotonicity_scan,
    oracle_gamma,
)

MACHINE_DIGITS = 15
TEXT_DIGITS = 6
DEFAULT_BETA_GRID = (0.5, 1.0, 2.0, 4.0, 8.0)

TABLE_FIELDS = ["n", "c", "beta", "lambda_min", "gamma", "method"]


@dataclass
class RunConfig:
    command: str
    c: Optional[list] = None
    beta: Optional[list] = None
    n: Optional[list] = None
    method: Optional[str] = None
    tol: float = DEFAULT_TOL
    output_format: str = "text"
    output_path: Optional[str] = None
    extra: dict = field(default_factory=dict)


class UsageError(ParameterError):
    pass


def parse_range(text: str, integer: bool = False) -> list:
    """Parse ``value`` or ``start:stop:step``.

    ``stop`` is included when the last step lands within half a step of it.
    An empty result (e.g. ``5:1:1``) is a usage error.
    """
    conv = int if integer else float
    parts = text.split(":")
    try:
        if len(parts) == 1:
            return [conv(parts[0])]
        if len(parts) != 3:
            raise ValueError
        start, stop, step = (conv(p) for p in parts)
    except ValueError:
        kind = "integer" if integer else "number"
        raise UsageError(f"malformed range {text!r}: expected {kind} or start:stop:step") from None
    if not step > 0:
        raise UsageError(f"range step must be positive in {text!r}")
    count = math.floor((stop - start) / step + 0.5)
    values = [start + i * step for i in range(count + 1)] if count >= 0 else []
    if not integer:
        values = [round(v, 12) for v in values]
    if not values:
        raise UsageError(f"range {text!r} is empty")
    return values


def _fmt(value, digits):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.{digits}g}"
    return str(value)


def _machine(value):
    if isinstance(value, float) and math.isfinite(value):
        return float(f"{value:.{MACHINE_DIGITS}g}")
    return value


def render(records: list, config: RunConfig, fields: Optional[list] = None) -> str:
    fields = fields or (list(records[0]) if records else [])
    fmt = config.output_format
    if fmt == "json":
        cfg = {k: v for k, v in asdict(config).items() if k != "extra"}
        cfg.update(config.extra)
        payload = {
            "config": cfg,
            "results": [{k: _machine(r[k]) for k in fields} for r in records],
        }
        return json.dumps(payload, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(fields)
        for r in records:
            writer.writerow([_fmt(r[k], MACHINE_DIGITS) for k in fields])
        return buf.getvalue()
    rows = [fields] + [[_fmt(r[k], TEXT_DIGITS) for k in fields] for r in records]
    widths = [max(len(row[i]) for row in rows) for i in range(len(fields))]
    lines = ["  ".join(v.rjust(w) for v, w in zip(row, widths)) for row in rows]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def _emit(text: str, config: RunConfig):
    if config.output_path:
        with open(config.output_path, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _single(values, name):
    if values is None:
        raise UsageError(f"--{name} is required")
    if len(values) != 1:
        raise UsageError(f"--{name} takes a single value for this command")
    return values[0]


def _gamma_record(args):
    c, beta, n, method, tol = args
    return gamma_n(MeixnerParams(c, beta), n, method, tol).as_record()


def cmd_gamma(config: RunConfig) -> int:
    c, beta, n = _single(config.c, "c"), _single(config.beta, "beta"), _single(config.n, "n")
    rec = gamma_n(MeixnerParams(c, beta), n, config.method, config.tol).as_record()
    _emit(render([rec], config, TABLE_FIELDS), config)
    return 0


def cmd_table(config: RunConfig) -> int:
    for name in ("c", "beta", "n"):
        if getattr(config, name) is None:
            raise UsageError(f"--{name} is required")
    grid = [
        (c, b, n, config.method, config.tol)
        for c in config.c
        for b in config.beta
        for n in config.n
    ]
    for c, b, n, _, _ in grid:
        MeixnerParams(c, b)
        if n < 1:
            raise UsageError(f"n must be a positive integer, got {n}")
    jobs = config.extra.get("jobs", 1)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(_gamma_record, grid))  # map keeps grid order
    else:
        records = [_gamma_record(g) for g in grid]
    _emit(render(records, config, TABLE_FIELDS), config)
    return 0


def cmd_bounds(config: RunConfig) -> int:
    c = _single(config.c, "c")
    if config.n is None:
        raise UsageError("--n is required")
    records = [bounds_beta1(c, n).as_record() for n in config.n]
    _emit(render(records, config), config)
    return 0


def cmd_extremal(config: RunConfig) -> int:
    c = _single(config.c, "c")
    if config.n is None:
        raise UsageError("--n is required")
    limit = sequence_bound(MeixnerParams(c, 1.0))
    records = []
    for n in config.n:
        ratio = extremal_sequence_ratio(c, n)
        records.append(
            {
                "n": n,
                "c": c,
                "ratio": ratio,
                "lower": math.sqrt(n / (n + 1)) * limit,
                "limit": limit,
                "gap": limit - ratio,
            }
        )
    _emit(render(records, config), config)
    return 0


def cmd_monotone(config: RunConfig) -> int:
    c, n = _single(config.c, "c"), _single(config.n, "n")
    grid = config.beta or list(DEFAULT_BETA_GRID)
    report = monotonicity_scan(c, n, grid, config.tol)
    _emit(render(list(report.rows()), config), config)
    return 0


def run_checks(c: float, beta: float, n: int, tol: float = DEFAULT_TOL) -> list:
    """All verification checks for one ``(c, beta, n)``; returns ``(name, passed, detail)``."""
    params = MeixnerParams(c, beta)
    if n < 1 or n > ORACLE_MAX_N:
        raise UsageError(f"verify runs the dense oracle and needs 1 <= n <= {ORACLE_MAX_N}, got n={n}")
    checks = []

    def add(name, ok, detail):
        checks.append((name, bool(ok), detail))

    main = gamma_n(params, n, tol=tol)
    g = main.gamma

    oracle = oracle_gamma(params, n)
    rel = abs(oracle.gamma_oracle - g) / g
    add("oracle_agreement", rel < 1e-7, f"gamma={g:.12g} oracle={oracle.gamma_oracle:.12g} rel={rel:.2e}")
    add(
        "gram_psd",
        oracle.asymmetry <= 1e-12 and oracle.min_eigenvalue >= -1e-10,
        f"asymmetry={oracle.asymmetry:.1e} min_eig={oracle.min_eigenvalue:.3e}",
    )

    values = {str(m): gamma_n(params, n, m, tol).gamma for m in available_methods(params)}
    spread = (max(values.values()) - min(values.values())) / g
    add("method_agreement", spread < 1e-9, f"methods={','.join(values)} spread={spread:.2e}")

    ceiling = sequence_bound(params)
    ok = g < ceiling if beta == 1.0 else g < ceiling + 1e-9
    add("sequence_ceiling", ok, f"gamma={g:.12g} ceiling={ceiling:.12g}")

    if n >= 2:
        prev = gamma_n(params, n - 1, tol=tol).gamma
        add("monotone_in_n", prev <= g + 1e-12, f"gamma_{n - 1}={prev:.12g} gamma_{n}={g:.12g}")

    chain = chain_condition_check(params, n)
    add("chain_condition", all(chain), f"{sum(chain)}/{len(chain)} inequalities hold")

    grid = sorted(set(DEFAULT_BETA_GRID) | {beta})
    report = monotonicity_scan(c, n, grid, tol)
    gammas = report.gamma_values
    ok = all(b < a for a, b in zip(gammas, gammas[1:]))
    add("monotone_in_beta", ok, f"beta grid {grid}")

    if n <= FACTORIZATION_MAX:
        fact = verify_factorization(params, n, 1e-9)
        add("factorization", fact.ok, f"discrepancies={fact.discrepancies}")

    if beta == 1.0 and n >= 2:
        b = bounds_beta1(c, n)
        add("sandwich_bounds", b.lower <= g <= b.upper, f"{b.lower:.12g} <= {g:.12g} <= {b.upper:.12g}")
        eps = cheb_smallest_root(n, c, tol).epsilon_n
        lo, hi = epsilon_bounds(n)
        add("epsilon_bracket", lo < eps < hi, f"{lo:.6g} < {eps:.6g} < {hi:.6g}")

    g1 = gamma_n(params, 1, tol=tol).gamma
    closed = (1.0 - c) / math.sqrt(beta * c)
    add("gamma1_closed_form", abs(g1 - closed) <= 1e-12 * closed, f"gamma_1={g1:.15g} closed={closed:.15g}")

    limit = sequence_bound(MeixnerParams(c, 1.0))
    ratio = extremal_sequence_ratio(c, n)
    ok = math.sqrt(n / (n + 1)) * limit < ratio <= limit
    add("sharpness", ok, f"ratio={ratio:.12g} limit={limit:.12g}")
    return checks


def cmd_verify(config: RunConfig) -> int:
    c, beta, n = _single(config.c, "c"), _single(config.beta, "beta"), _single(config.n, "n")
    checks = run_checks(c, beta, n, config.tol)
    if config.output_format == "text":
        text = "".join(f"{'PASS' if ok else 'FAIL'} {name}: {detail}\n" for name, ok, detail in checks)
    else:
        records = [{"check": name, "passed": ok, "detail": detail} for name, ok, detail in checks]
        text = render(records, config, ["check", "passed", "detail"])
    _emit(text, config)
    failed = [name for name, ok, _ in checks if not ok]
    if failed:
        print(f"verification failed: {failed[0]}", file=sys.stderr)
        return 1
    return 0


COMMANDS = {
    "gamma": cmd_gamma,
    "table": cmd_table,
    "bounds": cmd_bounds,
    "verify": cmd_verify,
    "extremal": cmd_extremal,
    "monotone": cmd_monotone,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="meixner-markov",
        description="Sharp constants of the discrete Meixner-weighted Markov-Bernstein inequality.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="output_format", choices=["text", "csv", "json"], default="text")
    common.add_argument("--out", dest="output_path", default=None, help="output file (default: stdout)")
    common.add_argument("--tol", type=float, default=DEFAULT_TOL, help="relative eigenvalue tolerance")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gamma", parents=[common], help="gamma_n(c, beta) for one parameter set")
    p.add_argument("--c", required=True)
    p.add_argument("--beta", required=True)
    p.add_argument("--n", required=True)
    p.add_argument("--method", choices=[m.value for m in Method])

    p = sub.add_parser("table", parents=[common], help="gamma_n over a grid of (c, beta, n)")
    p.add_argument("--c", required=True, help="value or start:stop:step")
    p.add_argument("--beta", default="1", help="value or start:stop:step (default 1)")
    p.add_argument("--n", required=True, help="value or start:stop:step")
    p.add_argument("--method", choices=[m.value for m in Method])
    p.add_argument("--jobs", type=int, default=1, help="worker processes")

    p = sub.add_parser("bounds", parents=[common], help="closed-form two-sided bounds at beta=1")
    p.add_argument("--c", required=True)
    p.add_argument("--n", required=True, help="value or start:stop:step, n >= 2")

    p = sub.add_parser("verify", parents=[common], help="run every numerical check at one parameter set")
    p.add_argument("--c", default="0.5")
    p.add_argument("--beta", default="1")
    p.add_argument("--n", default="6", help=f"1 <= n <= {ORACLE_MAX_N}")

    p = sub.add_parser("extremal", parents=[common], help="ratio for the alternating extremal sequence")
    p.add_argument("--c", required=True)
    p.add_argument("--n", required=True, help="value or start:stop:step")

    p = sub.add_parser("monotone", parents=[common], help="lambda_min and gamma along a beta grid")
    p.add_argument("--c", required=True)
    p.add_argument("--n", required=True)
    p.add_argument("--beta", default=None, help="start:stop:step (default 0.5,1,2,4,8)")
    return parser


def config_from_args(args) -> RunConfig:
    def opt(name, integer=False):
        raw = getattr(args, name, None)
        return None if raw is None else parse_range(raw, integer)

    config = RunConfig(
        command=args.command,
        c=opt("c"),
        beta=opt("beta"),
        n=opt("n", integer=True),
        method=getattr(args, "method", None),
        tol=args.tol,
        output_format=args.output_format,
        output_path=args.output_path,
    )
    if hasattr(args, "jobs"):
        config.extra["jobs"] = max(1, args.jobs)
    return config


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if not args.tol > 0:
            raise UsageError(f"--tol must be positive, got {args.tol}")
        config = config_from_args(args)
        return COMMANDS[config.command](config)
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ArithmeticError, OverflowError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
