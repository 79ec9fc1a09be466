"""Exact numbers of the form ``rat + surd * sqrt(s)`` with rational ``rat``, ``surd``, ``s``.

A pure rational (``surd == 0``) is stored with ``s == 0`` and combines with
any extension; two irrational values must share the same radicand.
"""

from __future__ import annotations

import math
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Union

__all__ = [
    "IncompatibleExtensionError",
    "Scalar",
    "as_fraction",
    "scalar_add",
    "scalar_mul",
    "scalar_pow",
    "scalar_to_float",
]

Number = Union[int, Fraction, "Scalar"]


class IncompatibleExtensionError(ValueError):
    pass


def as_fraction(value) -> Fraction:
    """Convert int, Fraction, or a ``p/q`` / decimal string to an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, Scalar):
        if value.surd:
            raise ValueError(f"{value} is not rational")
        return value.rat
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def _rational_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


class Scalar:
    """An element of Q(sqrt(s)). Immutable and hashable."""

    __slots__ = ("_rat", "_surd", "_s")

    def __init__(self, rat=0, surd=0, s=0) -> None:
        rat = as_fraction(rat)
        surd = as_fraction(surd)
        s = as_fraction(s)
        if s < 0:
            raise ValueError("radicand must be nonnegative")
        if surd:
            root = _rational_sqrt(s)
            if root is not None:
                rat += surd * root
                surd = Fraction(0)
        if not surd:
            s = Fraction(0)
        object.__setattr__(self, "_rat", rat)
        object.__setattr__(self, "_surd", surd)
        object.__setattr__(self, "_s", s)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    @property
    def rat(self) -> Fraction:
        return self._rat

    @property
    def surd(self) -> Fraction:
        return self._surd

    @property
    def s(self) -> Fraction:
        return self._s

    @classmethod
    def sqrt(cls, s, coeff=1) -> Scalar:
        """``coeff * sqrt(s)``."""
        return cls(0, coeff, s)

    @classmethod
    def coerce(cls, value: Number) -> Scalar:
        if isinstance(value, Scalar):
            return value
        return cls(as_fraction(value))

    def _common_s(self, other: Scalar) -> Fraction:
        if not self._surd:
            return other._s
        if not other._surd or self._s == other._s:
            return self._s
        raise IncompatibleExtensionError(
            f"incompatible extension: sqrt({self._s}) vs sqrt({other._s})"
        )

    def is_rational(self) -> bool:
        return not self._surd

    def __bool__(self) -> bool:
        return bool(self._rat) or bool(self._surd)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return not self._surd and self._rat == other
        if not isinstance(other, Scalar):
            return NotImplemented
        return (self._rat, self._surd, self._s) == (other._rat, other._surd, other._s)

    def __hash__(self) -> int:
        if not self._surd:
            return hash(self._rat)
        return hash((self._rat, self._surd, self._s))

    def __neg__(self) -> Scalar:
        return Scalar(-self._rat, -self._surd, self._s)

    def __add__(self, other: Number) -> Scalar:
        if not isinstance(other, (Scalar, int, Fraction)):
            return NotImplemented
        other = Scalar.coerce(other)
        s = self._common_s(other)
        return Scalar(self._rat + other._rat, self._surd + other._surd, s)

    __radd__ = __add__

    def __sub__(self, other: Number) -> Scalar:
        if not isinstance(other, (Scalar, int, Fraction)):
            return NotImplemented
        return self + (-Scalar.coerce(other))

    def __rsub__(self, other: Number) -> Scalar:
        return (-self) + other

    def __mul__(self, other: Number) -> Scalar:
        if isinstance(other, (int, Fraction)):
            return Scalar(self._rat * other, self._surd * other, self._s)
        if not isinstance(other, Scalar):
            return NotImplemented
        s = self._common_s(other)
        a, b, c, d = self._rat, self._surd, other._rat, other._surd
        return Scalar(a * c + b * d * s, a * d + b * c, s)

    __rmul__ = __mul__

    def conjugate(self) -> Scalar:
        return Scalar(self._rat, -self._surd, self._s)

    def norm(self) -> Fraction:
        """``rat**2 - surd**2 * s``; nonzero for every nonzero element."""
        return self._rat * self._rat - self._surd * self._surd * self._s

    def inverse(self) -> Scalar:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("Scalar has zero norm")
        return Scalar(self._rat / n, -self._surd / n, self._s)

    def __truediv__(self, other: Number) -> Scalar:
        if isinstance(other, (int, Fraction)):
            return Scalar(self._rat / other, self._surd / other, self._s)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self * other.inverse()

    def __pow__(self, n: int) -> Scalar:
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Scalar(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __float__(self) -> float:
        return scalar_to_float(self)

    def __repr__(self) -> str:
        if not self._surd:
            return f"Scalar({str(self._rat)!r})"
        return f"Scalar({str(self._rat)!r}, {str(self._surd)!r}, {str(self._s)!r})"

    def __str__(self) -> str:
        if not self._surd:
            return str(self._rat)
        root = f"sqrt({self._s})"
        surd = root if self._surd == 1 else f"{self._surd}*{root}"
        if self._surd == -1:
            surd = f"-{root}"
        if not self._rat:
            return surd
        sign = "-" if self._surd < 0 else "+"
        mag = abs(self._surd)
        tail = root if mag == 1 else f"{mag}*{root}"
        return f"{self._rat} {sign} {tail}"


def scalar_add(a: Scalar, b: Scalar) -> Scalar:
    return a + b


def scalar_mul(a: Scalar, b: Scalar) -> Scalar:
    return a * b


def scalar_pow(a: Scalar, n: int) -> Scalar:
    return a**n


def _decimal(q: Fraction) -> Decimal:
    return Decimal(q.numerator) / Decimal(q.denominator)


def scalar_to_float(a: Scalar) -> float:
    """Nearest double to the exact value.

    Works in decimal arithmetic and raises the working precision until the
    cancellation between the two parts has been absorbed.
    """
    if not a._surd:
        return float(a._rat)
    # value is never zero here (irrational), so the loop terminates
    prec = 40
    while True:
        with localcontext() as ctx:
            ctx.prec = prec
            rat = _decimal(a._rat)
            irr = _decimal(a._surd) * _decimal(a._s).sqrt()
            value = rat + irr
            scale = max(abs(rat), abs(irr))
            if value != 0 and abs(value) * Decimal(10) ** (prec - 25) > scale:
                return float(value)
        prec *= 2
