"""Relative-error tables of HPM partial sums against exact solutions."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .hpm import DEFAULT_ORDER, Problem, hpm_terms, partial_sums
from .oracle import exact_solution
from .reference_tables import CASE3_PRINTED_ROWS, PUBLISHED, TABLE_GRIDS
from .tseries import ts_eval

__all__ = [
    "COLUMNS",
    "ErrorTable",
    "Record",
    "build_error_table",
    "case3_label_diff",
    "compare_published",
    "relative_error",
    "render_table",
]

COLUMNS = ("case", "x", "t", "n", "partial_sum", "exact", "rel_error")
SIG_DIGITS = 12


class UndefinedRelativeError(ZeroDivisionError):
    pass


def relative_error(approx: float, exact: float) -> float:
    if exact == 0:
        raise UndefinedRelativeError("undefined relative error: exact value is 0")
    return abs(approx - exact) / abs(exact)


@dataclass(frozen=True)
class Record:
    case: int | str
    x: float
    t: float
    n: int
    partial_sum: float
    exact: float
    rel_error: float

    def as_dict(self) -> dict:
        return {c: getattr(self, c) for c in COLUMNS}


@dataclass
class ErrorTable:
    case: int | str
    params: dict
    xs: list[float]
    ts: list[float]
    order: int
    records: list[Record] = field(default_factory=list)

    def entry(self, t: float, x: float, n: int) -> float:
        for rec in self.records:
            if rec.t == t and rec.x == x and rec.n == n:
                return rec.rel_error
        raise KeyError((t, x, n))

    def as_mapping(self) -> dict[tuple[float, float, int], float]:
        return {(rec.t, rec.x, rec.n): rec.rel_error for rec in self.records}


def build_error_table(
    P: Problem,
    xs: Sequence[float],
    ts: Sequence[float],
    N: int = DEFAULT_ORDER,
    exact: Callable[[float, float], float] | None = None,
) -> ErrorTable:
    """RE of S_0..S_N at every (x, t); case 1 is x-independent and reported at x = 0."""
    if N < 0:
        raise ValueError("order N must be nonnegative")
    if exact is None:
        exact = exact_solution(P)
    if P.case == 1:
        xs = [0.0]
    xs, ts = [float(x) for x in xs], [float(t) for t in ts]
    sums = partial_sums(hpm_terms(P, N))
    case = P.case if P.case is not None else "custom"
    records = []
    for t in sorted(ts):
        for x in sorted(xs):
            u = exact(x, t)
            for n, s in enumerate(sums):
                approx = ts_eval(s, x, t)
                records.append(Record(case, x, t, n, approx, u, relative_error(approx, u)))
    params = {"lam": str(P.lam)} if P.lam is not None else {}
    return ErrorTable(case, params, xs, ts, N, records)


def _fmt(value: float) -> str:
    return f"{value:.{SIG_DIGITS}g}"


def render_table(tbl: ErrorTable, fmt: str = "csv", percent: bool = False) -> bytes:
    """CSV (12 significant digits) or JSON (exact float round trip), rows sorted by (t, x, n)."""
    scale = 100.0 if percent else 1.0
    rows = sorted(tbl.records, key=lambda r: (r.t, r.x, r.n))
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(COLUMNS)
        for r in rows:
            writer.writerow(
                [r.case, _fmt(r.x), _fmt(r.t), r.n, _fmt(r.partial_sum), _fmt(r.exact),
                 _fmt(r.rel_error * scale)]
            )
        return buf.getvalue().encode()
    if fmt == "json":
        out = []
        for r in rows:
            d = r.as_dict()
            d["rel_error"] = r.rel_error * scale
            out.append(d)
        return (json.dumps(out, indent=1) + "\n").encode()
    raise ValueError(f"unknown format {fmt!r}; expected csv or json")


def _sig_diff(ours: float, printed: float) -> float:
    return abs(ours - printed) / abs(printed)


def compare_published(tbl: ErrorTable, rel_tol: float = 5e-6) -> list[dict]:
    """Row-by-row comparison with the published table for ``tbl.case``."""
    published = PUBLISHED[tbl.case]
    out = []
    for key in sorted(published):
        t, x, n = key
        printed = published[key]
        ours = tbl.entry(t, x, n)
        diff = _sig_diff(ours, printed)
        out.append(
            {"t": t, "x": x, "n": n, "computed": ours, "printed": printed,
             "rel_diff": diff, "match": diff <= rel_tol}
        )
    return out


def case3_label_diff(tbl: ErrorTable) -> str:
    """Text report comparing recomputed case 3 values with the printed rows.

    For every printed row the computed value is shown under the printed
    ``(t, S_n)`` label and under the positional reading (six rows per block).
    """
    xs = TABLE_GRIDS[3]["xs"]
    ts = TABLE_GRIDS[3]["ts"]
    lines = ["row printed_label positional_label x printed computed_at_label "
             "computed_positional rel_diff_label rel_diff_positional"]
    for i, (t_lab, n_lab, values) in enumerate(CASE3_PRINTED_ROWS):
        t_pos, n_pos = ts[i // 6], i % 6
        for x, printed in zip(xs, values):
            at_label = tbl.entry(t_lab, x, n_lab)
            at_pos = tbl.entry(t_pos, x, n_pos)
            lines.append(
                f"{i:2d} t={t_lab:g},S{n_lab} t={t_pos:g},S{n_pos} {x:g} "
                f"{printed:.10g} {at_label:.10g} {at_pos:.10g} "
                f"{_sig_diff(at_label, printed):.3g} {_sig_diff(at_pos, printed):.3g}"
            )
    return "\n".join(lines) + "\n"


def significant_digits(ours: float, printed: float) -> float:
    """Number of agreeing significant digits, ``-log10`` of the relative difference."""
    diff = _sig_diff(ours, printed)
    return math.inf if diff == 0 else -math.log10(diff)
