"""``nws`` command line: solve, table, dump, residual."""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .hpm import DEFAULT_ORDER, Problem, ProblemError, build_problem, dump_terms, hpm_terms, partial_sums, preset_case
from .oracle import DEFAULT_H, case3_two_fifths_variant, exact_solution, pde_residual
from .reference_tables import TABLE_GRIDS
from .report import build_error_table, render_table
from .scalar import IncompatibleExtensionError, Scalar, as_fraction
from .symexpr import EvaluationRangeError, Expr
from .tseries import ts_eval

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_RANGE = 3

SUBCOMMANDS = ("solve", "table", "dump", "residual")

# config-file key -> argparse dest
CONFIG_KEYS = {
    "case": "case", "lambda": "lam", "order": "order", "x": "x", "t": "t",
    "format": "format", "out": "out", "percent": "percent", "h": "h",
    "k": "k", "a": "a", "b": "b", "q": "q", "ic": "ic", "r": "r", "s": "s",
    "candidate": "candidate",
}
DEFAULTS = {"order": DEFAULT_ORDER, "format": "csv", "percent": False, "h": DEFAULT_H,
            "candidate": "exact"}
CUSTOM_KEYS = ("k", "a", "b", "q", "ic", "r", "s")


class ConfigError(ValueError):
    pass


_NUM = r"(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?(?:/\d+)?"
_SCALAR_TERM = re.compile(
    rf"\s*([+-])?\s*(?:(?:({_NUM})\s*\*\s*)?sqrt\(\s*({_NUM})\s*\)|({_NUM}))\s*"
)


def parse_rational(text: str) -> Fraction:
    try:
        return as_fraction(str(text))
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"not a rational number: {text!r}") from None


def parse_scalar(text: str) -> Scalar:
    """``p/q``, ``c*sqrt(s)``, ``sqrt(s)`` or a sum such as ``1 + 2*sqrt(3)``."""
    pos, total = 0, Scalar(0)
    text = text.strip()
    if not text:
        raise ConfigError("empty scalar")
    while pos < len(text):
        m = _SCALAR_TERM.match(text, pos)
        if not m or m.end() == pos:
            raise ConfigError(f"cannot parse scalar {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        if m.group(4) is not None:
            term = Scalar(Fraction(m.group(4)))
        else:
            coeff = Fraction(m.group(2)) if m.group(2) else Fraction(1)
            term = Scalar.sqrt(Fraction(m.group(3)), coeff)
        total = total + term * sign
        pos = m.end()
    return total


def parse_ic(text: str, r: Fraction | None) -> Expr:
    """``const:<rational>`` or ``kink:amp=<scalar>,numdeg=<j>,beta=<rational>,r=<rational>``."""
    kind, _, body = text.partition(":")
    kind = kind.strip()
    if kind == "const":
        return Expr.constant(parse_scalar(body), r if r is not None else 1)
    if kind == "kink":
        fields = {}
        for item in body.split(","):
            key, eq, value = item.partition("=")
            if not eq:
                raise ConfigError(f"malformed kink field {item!r}")
            fields[key.strip()] = value.strip()
        unknown = set(fields) - {"amp", "numdeg", "beta", "r"}
        if unknown:
            raise ConfigError(f"unknown kink fields: {sorted(unknown)}")
        amp = parse_scalar(fields.get("amp", "1"))
        try:
            numdeg = int(fields.get("numdeg", "0"))
        except ValueError:
            raise ConfigError(f"numdeg must be an integer, got {fields['numdeg']!r}") from None
        if numdeg < 0:
            raise ConfigError("numdeg must be nonnegative")
        beta = parse_rational(fields.get("beta", "0"))
        if beta < 0:
            raise ConfigError("beta must be nonnegative")
        kink_r = parse_rational(fields["r"]) if "r" in fields else r
        if kink_r is None:
            raise ConfigError("kink initial condition needs r")
        if r is not None and kink_r != r:
            raise ConfigError(f"ic r = {kink_r} conflicts with --r {r}")
        return Expr.term(amp, numdeg, beta, kink_r)
    raise ConfigError(f"unknown initial-condition kind {kind!r}; use const: or kink:")


def parse_floats(text: str | Sequence[float]) -> list[float]:
    if not isinstance(text, str):
        return [float(v) for v in text]
    try:
        values = [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise ConfigError(f"not a comma-separated list of numbers: {text!r}") from None
    if not values:
        raise ConfigError("empty grid")
    return values


def read_config(path: str | Path) -> dict[str, str]:
    """``key = value`` lines with ``#`` comments."""
    out = {}
    try:
        lines = Path(path).read_text().splitlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}") from None
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, eq, value = line.partition("=")
        key = key.strip()
        if not eq or key not in CONFIG_KEYS:
            raise ConfigError(f"{path}:{lineno}: bad config line {raw!r}")
        out[CONFIG_KEYS[key]] = value.strip()
    return out


def _truthy(value) -> bool:
    if isinstance(value, bool):
        return value
    return str(value).strip().lower() in {"1", "true", "yes", "on"}


@dataclass
class RunConfig:
    subcommand: str
    case: int | None = None
    lam: Fraction | None = None
    custom: dict = field(default_factory=dict)
    order: int = DEFAULT_ORDER
    xs: list[float] | None = None
    ts: list[float] | None = None
    format: str = "csv"
    out: str | None = None
    percent: bool = False
    h: float = DEFAULT_H
    candidate: str = "exact"

    def problem(self) -> Problem:
        if self.case is not None:
            return preset_case(self.case, self.lam)
        c = self.custom
        r = parse_rational(c["r"]) if c.get("r") is not None else None
        ic = parse_ic(c["ic"], r)
        s = parse_rational(c["s"]) if c.get("s") is not None else _ic_radicand(ic)
        try:
            q = int(c["q"])
        except ValueError:
            raise ConfigError(f"q must be an integer, got {c['q']!r}") from None
        return build_problem(
            parse_rational(c["k"]), parse_rational(c["a"]), parse_rational(c["b"]),
            q, ic, ic.r, s,
        )


def _ic_radicand(ic: Expr) -> Fraction:
    for part in ic.parts:
        for c in part.num:
            if c.surd:
                return c.s
    return Fraction(0)


def resolve_config(args: argparse.Namespace) -> RunConfig:
    values = read_config(args.config) if args.config else {}
    for dest in set(CONFIG_KEYS.values()):
        cli_value = getattr(args, dest, None)
        if cli_value is not None:
            values[dest] = cli_value
    for key, value in DEFAULTS.items():
        values.setdefault(key, value)

    custom = {k: values.get(k) for k in CUSTOM_KEYS}
    has_custom = any(v is not None for v in custom.values())
    case = values.get("case")
    if (case is None) == (not has_custom):
        raise ConfigError("give exactly one of --case or a custom problem (--k --a --b --q --ic)")
    if has_custom:
        missing = [k for k in ("k", "a", "b", "q", "ic") if custom[k] is None]
        if missing:
            raise ConfigError(f"custom problem is missing: {', '.join(missing)}")
    if case is not None:
        try:
            case = int(case)
        except ValueError:
            raise ConfigError(f"case must be 1..4, got {case!r}") from None

    lam = values.get("lam")
    try:
        order = int(values["order"])
        h = float(values["h"])
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    fmt = str(values["format"])
    if fmt not in ("csv", "json"):
        raise ConfigError(f"unknown format {fmt!r}")
    return RunConfig(
        subcommand=args.command,
        case=case,
        lam=parse_rational(lam) if lam is not None else None,
        custom=custom if has_custom else {},
        order=order,
        xs=parse_floats(values["x"]) if values.get("x") is not None else None,
        ts=parse_floats(values["t"]) if values.get("t") is not None else None,
        format=fmt,
        out=values.get("out"),
        percent=_truthy(values["percent"]),
        h=h,
        candidate=str(values["candidate"]),
    )


def _grids(cfg: RunConfig) -> tuple[list[float], list[float]]:
    xs, ts = cfg.xs, cfg.ts
    if cfg.case in TABLE_GRIDS:
        grid = TABLE_GRIDS[cfg.case]
        xs = xs if xs is not None else list(grid["xs"])
        ts = ts if ts is not None else list(grid["ts"])
    if cfg.case == 1 and xs is None:
        xs = [0.0]
    if not xs or not ts:
        raise ConfigError(f"{cfg.subcommand} needs nonempty --x and --t grids")
    return xs, ts


def _rows_out(cfg: RunConfig, columns: Sequence[str], rows: list[dict]) -> bytes:
    if cfg.format == "json":
        return (json.dumps(rows, indent=1) + "\n").encode()
    lines = [",".join(columns)]
    for row in rows:
        lines.append(",".join(
            f"{row[c]:.12g}" if isinstance(row[c], float) else str(row[c]) for c in columns
        ))
    return ("\n".join(lines) + "\n").encode()


def cmd_solve(cfg: RunConfig) -> bytes:
    P = cfg.problem()
    xs, ts = _grids(cfg)
    sums = partial_sums(hpm_terms(P, cfg.order))
    case = P.case if P.case is not None else "custom"
    rows = []
    for t in sorted(ts):
        for x in sorted(xs):
            for n, s in enumerate(sums):
                rows.append({"case": case, "x": float(x), "t": float(t), "n": n,
                             "partial_sum": ts_eval(s, x, t)})
    return _rows_out(cfg, ("case", "x", "t", "n", "partial_sum"), rows)


def cmd_table(cfg: RunConfig) -> bytes:
    P = cfg.problem()
    if P.case is None:
        raise ConfigError("table needs a preset --case (custom problems have no exact solution)")
    xs, ts = _grids(cfg)
    tbl = build_error_table(P, xs, ts, cfg.order)
    return render_table(tbl, cfg.format, percent=cfg.percent)


def cmd_dump(cfg: RunConfig) -> bytes:
    return dump_terms(cfg.problem(), cfg.order).encode()


def cmd_residual(cfg: RunConfig) -> bytes:
    P = cfg.problem()
    xs, ts = _grids(cfg)
    if cfg.candidate == "exact":
        u = exact_solution(P) if P.case is not None else None
        if u is None:
            raise ConfigError("custom problems have no exact solution; use --candidate series")
    elif cfg.candidate == "series":
        s = partial_sums(hpm_terms(P, cfg.order))[-1]
        u = lambda x, t: ts_eval(s, x, t)
    elif cfg.candidate == "two-fifths":
        if P.case != 3:
            raise ConfigError("the two-fifths candidate only applies to case 3")
        u = case3_two_fifths_variant
    else:
        raise ConfigError(f"unknown candidate {cfg.candidate!r}")
    case = P.case if P.case is not None else "custom"
    rows = []
    for t in sorted(ts):
        for x in sorted(xs):
            res = pde_residual(u, P, x, t, cfg.h)
            rows.append({"case": case, "x": float(x), "t": float(t), "h": cfg.h,
                         "residual": res, "abs_residual": abs(res)})
    return _rows_out(cfg, ("case", "x", "t", "h", "residual", "abs_residual"), rows)


COMMANDS = {"solve": cmd_solve, "table": cmd_table, "dump": cmd_dump, "residual": cmd_residual}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nws",
        description="Homotopy perturbation series for u_t = k u_xx + a u - b u^q.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key = value config file; flags override it")
    common.add_argument("--case", type=int, choices=(1, 2, 3, 4), help="benchmark preset")
    common.add_argument("--lambda", dest="lam", help="constant initial value for case 1 (p/q or decimal)")
    common.add_argument("--order", type=int, help=f"series order N (default {DEFAULT_ORDER})")
    common.add_argument("--x", help="comma-separated x grid")
    common.add_argument("--t", help="comma-separated t grid")
    common.add_argument("--format", choices=("csv", "json"))
    common.add_argument("--out", help="write data here instead of standard output")
    common.add_argument("--percent", action="store_const", const=True,
                        help="show relative errors multiplied by 100")
    common.add_argument("--h", type=float, help=f"finite-difference step (default {DEFAULT_H:g})")
    custom = common.add_argument_group("custom problem")
    for name in ("k", "a", "b", "r", "s"):
        custom.add_argument(f"--{name}", help="rational")
    custom.add_argument("--q", help="integer power >= 2")
    custom.add_argument("--ic", help="const:<rational> | kink:amp=..,numdeg=..,beta=..,r=..")
    helps = {
        "solve": "partial sums S_0..S_N on a grid",
        "table": "relative-error table against the exact solution",
        "dump": "symbolic terms v_0..v_N",
        "residual": "finite-difference PDE residual of a candidate solution",
    }
    for name in SUBCOMMANDS:
        p = sub.add_parser(name, parents=[common], help=helps[name])
        if name == "residual":
            p.add_argument("--candidate", choices=("exact", "series", "two-fifths"),
                           help="function to test (default: exact solution)")
    return parser


def _error(exc: Exception) -> None:
    print(f"nws: error: {exc}", file=sys.stderr)


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_VALIDATION
    try:
        cfg = resolve_config(args)
        data = COMMANDS[cfg.subcommand](cfg)
    except EvaluationRangeError as exc:
        _error(exc)
        return EXIT_RANGE
    except (ConfigError, ProblemError, IncompatibleExtensionError, ValueError,
            IndexError, ArithmeticError) as exc:
        _error(exc)
        return EXIT_VALIDATION
    if cfg.out:
        Path(cfg.out).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
