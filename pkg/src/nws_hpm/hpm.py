"""Order-by-order homotopy perturbation recursion for u_t = k u_xx + a u - b u^q.

With the time-independent initial guess ``u0 = u(x, 0)`` and zero integration
constants, collecting powers of the embedding parameter gives

    v_0     = u(x, 0)
    v_{n+1} = integral_0^t ( k d2v_n/dx2 + a v_n - b [v^q]_n ) dt

where ``[v^q]_n`` is the coefficient of ``p**n`` in ``(v_0 + p v_1 + ...)**q``.
"""

from __future__ import annotations

import math
import os
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .scalar import Scalar, as_fraction
from .symexpr import Expr
from .tseries import (
    TSeries,
    ts_add,
    ts_d2dx,
    ts_from_expr,
    ts_integrate_t,
    ts_monomial,
    ts_scale,
)

__all__ = [
    "DEFAULT_ORDER",
    "MAX_ORDER",
    "Problem",
    "ProblemError",
    "build_problem",
    "dump_terms",
    "hpm_terms",
    "max_order",
    "nonlinear_coeff",
    "partial_sum",
    "partial_sums",
    "preset_case",
]

DEFAULT_ORDER = 5
MAX_ORDER = 12

CASE_IDS = (1, 2, 3, 4)


class ProblemError(ValueError):
    pass


def max_order() -> int:
    value = os.environ.get("NWS_MAX_ORDER")
    if value is None:
        return MAX_ORDER
    try:
        cap = int(value)
    except ValueError:
        raise ProblemError(f"NWS_MAX_ORDER must be an integer, got {value!r}") from None
    if cap < 0:
        raise ProblemError("NWS_MAX_ORDER must be nonnegative")
    return cap


@dataclass(frozen=True)
class Problem:
    k: Fraction
    a: Fraction
    b: Fraction
    q: int
    ic: Expr
    r: Fraction
    s: Fraction
    case: int | None = None
    lam: Fraction | None = None


def build_problem(k, a, b, q, ic: Expr, r, s=0, *, case=None, lam=None) -> Problem:
    k, a, b, r, s = (as_fraction(v) for v in (k, a, b, r, s))
    if k <= 0:
        raise ProblemError(f"diffusion coefficient k must be positive, got {k}")
    if not isinstance(q, int) or isinstance(q, bool):
        raise ProblemError(f"q must be an integer, got {q!r}")
    if q < 2:
        raise ProblemError(f"q must be >= 2 (q = {q} gives a linear equation)")
    if r <= 0:
        raise ProblemError(f"r = kappa^2 must be positive, got {r}")
    if s < 0:
        raise ProblemError(f"radicand s must be nonnegative, got {s}")
    if ic.r != r:
        raise ProblemError(f"initial condition has r = {ic.r}, problem has r = {r}")
    for part in ic.parts:
        for c in part.num:
            if c.surd and c.s != s:
                raise ProblemError(
                    f"initial condition uses sqrt({c.s}), problem extension is sqrt({s})"
                )
    return Problem(k, a, b, q, ic, r, s, case, None if lam is None else as_fraction(lam))


def preset_case(case_id: int, lam=None) -> Problem:
    """The four benchmark instances; ``lam`` is the constant initial value of case 1."""
    if case_id == 1:
        if lam is None:
            raise ProblemError("case 1 requires lambda")
        lam = as_fraction(lam)
        return build_problem(1, 2, 3, 2, Expr.constant(lam, 1), 1, 0, case=1, lam=lam)
    if lam is not None:
        raise ProblemError(f"lambda only applies to case 1, not case {case_id}")
    if case_id == 2:
        r = Fraction(1, 6)
        return build_problem(1, 1, 1, 2, Expr.term(1, 0, 2, r), r, 0, case=2)
    if case_id == 3:
        r = Fraction(9, 10)
        return build_problem(1, 1, 1, 4, Expr.term(1, 0, Fraction(2, 3), r), r, 0, case=3)
    if case_id == 4:
        r, s = Fraction(3, 2), Fraction(3, 4)
        ic = Expr.term(Scalar.sqrt(s), 1, 1, r)
        return build_problem(1, 3, 4, 3, ic, r, s, case=4)
    raise ProblemError(f"unknown case id {case_id!r}; expected one of {CASE_IDS}")


def _weight(v: TSeries, index: int) -> Expr:
    if v.degree > index or any(not v[j].is_zero() for j in range(index)):
        raise ValueError(f"v_{index} is not t-homogeneous of degree {index}")
    return v[index]


def _multisets(n: int, q: int, largest: int):
    """Nonincreasing tuples of q nonnegative ints summing to n, parts <= largest."""
    if q == 0:
        if n == 0:
            yield ()
        return
    for first in range(min(n, largest), -1, -1):
        if first * q < n:
            break
        for rest in _multisets(n - first, q - 1, first):
            yield (first,) + rest


def nonlinear_coeff(vs: Sequence[TSeries], n: int, q: int) -> Expr:
    """Weight of ``t**n`` in the ``p**n`` coefficient of ``(sum p**i v_i)**q``.

    Sums over all compositions ``i_1 + ... + i_q = n``, grouped by their
    multiset with the multinomial count as multiplicity.
    """
    if len(vs) <= n:
        raise ValueError(f"need v_0..v_{n}, got {len(vs)} terms")
    weights = [_weight(vs[i], i) for i in range(n + 1)]
    r = weights[0].r
    total = Expr.zero(r)
    for combo in _multisets(n, q, n):
        count = math.factorial(q)
        for mult in Counter(combo).values():
            count //= math.factorial(mult)
        prod = Expr.constant(count, r)
        for i in combo:
            prod = prod * weights[i]
            if prod.is_zero():
                break
        total = total + prod
    return total


def hpm_terms(P: Problem, N: int = DEFAULT_ORDER) -> list[TSeries]:
    """v_0..v_N as t-series of order N."""
    cap = max_order()
    if N < 0:
        raise ProblemError("order N must be nonnegative")
    if N > cap:
        raise ProblemError(f"order {N} exceeds the cap {cap} (set NWS_MAX_ORDER)")
    vs = [ts_from_expr(P.ic, N)]
    for n in range(N):
        v = vs[n]
        nonlinear = ts_monomial(nonlinear_coeff(vs, n, P.q), n, N)
        rhs = ts_add(
            ts_add(ts_scale(P.k, ts_d2dx(v)), ts_scale(P.a, v)),
            ts_scale(-P.b, nonlinear),
        )
        vs.append(ts_integrate_t(rhs))
    return vs


def partial_sum(terms: Sequence[TSeries], n: int) -> TSeries:
    if not 0 <= n < len(terms):
        raise IndexError(f"partial sum index {n} out of range for {len(terms)} terms")
    total = terms[0]
    for v in terms[1 : n + 1]:
        total = total + v
    return total


def partial_sums(terms: Sequence[TSeries]) -> list[TSeries]:
    out = [terms[0]]
    for v in terms[1:]:
        out.append(out[-1] + v)
    return out


def dump_terms(P: Problem, N: int = DEFAULT_ORDER) -> str:
    """Listing of v_0..v_N, one ``t^j/j! : <expr>`` line per nonzero degree."""
    return "\n".join(v.render() for v in hpm_terms(P, N)) + "\n"
