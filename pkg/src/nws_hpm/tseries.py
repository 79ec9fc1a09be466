"""Truncated polynomials in t whose coefficients are :class:`Expr` values.

Coefficients are plain weights of ``t**j``; the factorial normalization
``t**j/j!`` only appears in :meth:`TSeries.render`.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .scalar import Scalar
from .symexpr import Expr, IncompatibleExpressionError

__all__ = [
    "OrderOverflowError",
    "TSeries",
    "ts_add",
    "ts_d2dx",
    "ts_eval",
    "ts_from_expr",
    "ts_integrate_t",
    "ts_mul_trunc",
    "ts_pow_trunc",
    "ts_scale",
]


class OrderOverflowError(ArithmeticError):
    pass


class TSeries:
    __slots__ = ("_coeffs", "_order", "_r")

    def __init__(self, coeffs: Sequence[Expr], order: int, r=None) -> None:
        coeffs = list(coeffs)
        if r is None:
            if not coeffs:
                raise ValueError("r is required for an empty series")
            r = coeffs[0].r
        r = Fraction(r)
        if order < 0:
            raise ValueError("order must be nonnegative")
        for c in coeffs:
            if c.r != r:
                raise IncompatibleExpressionError(f"mismatched r: {c.r} vs {r}")
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        if len(coeffs) > order + 1:
            raise OrderOverflowError(
                f"order overflow: degree {len(coeffs) - 1} exceeds order {order}"
            )
        self._coeffs = tuple(coeffs)
        self._order = order
        self._r = r

    @property
    def coeffs(self) -> tuple[Expr, ...]:
        return self._coeffs

    @property
    def order(self) -> int:
        return self._order

    @property
    def r(self) -> Fraction:
        return self._r

    @property
    def degree(self) -> int:
        """Highest nonzero degree, -1 for the zero series."""
        return len(self._coeffs) - 1

    def __getitem__(self, j: int) -> Expr:
        if 0 <= j < len(self._coeffs):
            return self._coeffs[j]
        return Expr.zero(self._r)

    def is_zero(self) -> bool:
        return not self._coeffs

    def with_order(self, order: int) -> TSeries:
        return TSeries(self._coeffs, order, self._r)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TSeries):
            return NotImplemented
        return self._r == other._r and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash((self._r, self._coeffs))

    def __add__(self, other: TSeries) -> TSeries:
        return ts_add(self, other)

    def __sub__(self, other: TSeries) -> TSeries:
        return ts_add(self, ts_scale(-1, other))

    def __neg__(self) -> TSeries:
        return ts_scale(-1, self)

    def __rmul__(self, c) -> TSeries:
        return ts_scale(c, self)

    def derivative_t(self) -> TSeries:
        return TSeries(
            [self._coeffs[j].scale(j) for j in range(1, len(self._coeffs))],
            self._order,
            self._r,
        )

    def __call__(self, x: float, t: float) -> float:
        return ts_eval(self, x, t)

    def render(self) -> str:
        """One line per nonzero degree, ``t^j/j! : <expr>``."""
        if not self._coeffs:
            return "t^0/0! : 0"
        lines = []
        for j, c in enumerate(self._coeffs):
            if c.is_zero():
                continue
            lines.append(f"t^{j}/{j}! : {c.scale(math.factorial(j))}")
        return "\n".join(lines)

    def __repr__(self) -> str:
        return f"TSeries(order={self._order}, {list(map(str, self._coeffs))})"


def ts_from_expr(e: Expr, order: int = 0) -> TSeries:
    return TSeries([e], order, e.r)


def ts_monomial(e: Expr, degree: int, order: int) -> TSeries:
    return TSeries([Expr.zero(e.r)] * degree + [e], order, e.r)


def _check(s1: TSeries, s2: TSeries) -> None:
    if s1.r != s2.r:
        raise IncompatibleExpressionError(f"mismatched r: {s1.r} vs {s2.r}")


def ts_add(s1: TSeries, s2: TSeries) -> TSeries:
    _check(s1, s2)
    n = max(len(s1.coeffs), len(s2.coeffs))
    return TSeries(
        [s1[j] + s2[j] for j in range(n)], max(s1.order, s2.order), s1.r
    )


def ts_scale(c, s: TSeries) -> TSeries:
    c = Scalar.coerce(c)
    return TSeries([e.scale(c) for e in s.coeffs], s.order, s.r)


def ts_mul_trunc(s1: TSeries, s2: TSeries, N: int) -> TSeries:
    _check(s1, s2)
    top = min(N, s1.degree + s2.degree)
    out = []
    for j in range(top + 1):
        acc = Expr.zero(s1.r)
        for i in range(max(0, j - s2.degree), min(j, s1.degree) + 1):
            a, b = s1[i], s2[j - i]
            if a and b:
                acc = acc + a * b
        out.append(acc)
    return TSeries(out, N, s1.r)


def ts_pow_trunc(s: TSeries, q: int, N: int) -> TSeries:
    if q < 1:
        raise ValueError("q must be a positive integer")
    result = TSeries(s.coeffs[: N + 1], N, s.r)
    for _ in range(q - 1):
        result = ts_mul_trunc(result, s, N)
    return result


def ts_integrate_t(s: TSeries) -> TSeries:
    """Antiderivative in t vanishing at t = 0.

    Raises :class:`OrderOverflowError` if the top allowed coefficient is
    nonzero, since integrating it would exceed the series order.
    """
    if s.degree >= s.order:
        raise OrderOverflowError(
            f"order overflow: integrating degree {s.degree} at order {s.order}"
        )
    zero = Expr.zero(s.r)
    return TSeries(
        [zero] + [c.scale(Fraction(1, j + 1)) for j, c in enumerate(s.coeffs)],
        s.order,
        s.r,
    )


def ts_d2dx(s: TSeries) -> TSeries:
    return TSeries([c.d2dx() for c in s.coeffs], s.order, s.r)


def ts_eval(s: TSeries, x: float, t: float) -> float:
    acc = 0.0
    for c in reversed(s.coeffs):
        acc = acc * t + c(x)
    return acc
