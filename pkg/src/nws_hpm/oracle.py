"""Closed-form solutions of the benchmark cases and finite-difference checks.

Nothing here touches the symbolic engine: the exact solutions are coded as
plain formulas, the residual uses difference stencils on any callable, and
Taylor coefficients come from Richardson-extrapolated central differences of
the closed form evaluated in extended precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import mpmath

from .hpm import Problem
from .symexpr import MAX_EXPONENT, EvaluationRangeError

__all__ = [
    "DEFAULT_H",
    "ExactSolution",
    "case3_two_fifths_variant",
    "exact_eval",
    "exact_solution",
    "pde_residual",
    "taylor_coeff_numeric",
]

DEFAULT_H = 1e-3

Evaluator = Callable[[float, float], float]


def _exp(z, backend):
    if backend is math and abs(z) > MAX_EXPONENT:
        raise EvaluationRangeError(f"evaluation range: exponent {float(z):.6g}")
    return backend.exp(z)


def _ratio(p: int, q: int, backend):
    return backend.mpf(p) / q if backend is mpmath else p / q


def _closed_form(case: int, lam, x, t, backend=math, case3_power=None):
    """Shared formula for float (``math``) and extended precision (``mpmath``)."""
    sqrt = backend.sqrt
    if case == 1:
        if lam is None:
            raise ValueError("case 1 requires lambda")
        two_thirds = _ratio(2, 3, backend)
        e2t = _exp(2 * t, backend)
        return (-two_thirds * lam * e2t) / (-two_thirds + lam - lam * e2t)
    if case == 2:
        z = x / sqrt(6) - 5 * t / 6
        return (1 + _exp(z, backend)) ** -2
    if case == 3:
        # 1/2 tanh(-y/2) + 1/2 == 1/(1 + e^y) with y = (3/sqrt10)(x - 7t/sqrt10)
        power = Fraction(2, 3) if case3_power is None else case3_power
        y = 3 / sqrt(10) * (x - 7 * t / sqrt(10))
        return (1 + _exp(y, backend)) ** -_ratio(power.numerator, power.denominator, backend)
    if case == 4:
        amp = sqrt(3) / 2
        # divided through by e^{sqrt6 x}
        z = -sqrt(6) / 2 * x - 9 * t / 2
        return amp / (1 + _exp(z, backend))
    raise ValueError(f"unknown case id {case!r}")


def exact_eval(case: int, params: dict | None, x: float, t: float) -> float:
    """Closed-form exact solution of benchmark ``case`` at (x, t).

    ``params`` carries ``lam`` for case 1 and is otherwise ignored.
    """
    lam = (params or {}).get("lam")
    if lam is not None:
        lam = float(lam)
    return float(_closed_form(case, lam, float(x), float(t)))


def _exact_mp(case: int, params: dict | None, x, t):
    lam = (params or {}).get("lam")
    if lam is not None:
        lam = mpmath.mpf(Fraction(lam).numerator) / Fraction(lam).denominator
    return _closed_form(case, lam, mpmath.mpf(x), mpmath.mpf(t), backend=mpmath)


@dataclass(frozen=True)
class ExactSolution:
    case: int
    params: dict

    def __call__(self, x: float, t: float) -> float:
        return exact_eval(self.case, self.params, x, t)


def exact_solution(P: Problem) -> ExactSolution:
    if P.case is None:
        raise ValueError("no closed-form solution is known for a custom problem")
    return ExactSolution(P.case, {"lam": P.lam} if P.case == 1 else {})


def case3_two_fifths_variant(x: float, t: float) -> float:
    """Case 3 kink with the denominator exponent 2/5 instead of 2/3 (not a solution)."""
    return float(_closed_form(3, None, float(x), float(t), case3_power=Fraction(2, 5)))


def pde_residual(u: Evaluator, P: Problem, x: float, t: float, h: float = DEFAULT_H) -> float:
    """``u_t - k u_xx - a u + b u^q`` at (x, t) by second-order central differences.

    Stencil: ``u_t ~ (u(x,t+h) - u(x,t-h)) / 2h`` and
    ``u_xx ~ (u(x+h,t) - 2u(x,t) + u(x-h,t)) / h^2``, both O(h^2).
    """
    if h <= 0:
        raise ValueError("step h must be positive")
    u0 = u(x, t)
    u_t = (u(x, t + h) - u(x, t - h)) / (2 * h)
    u_xx = (u(x + h, t) - 2 * u0 + u(x - h, t)) / (h * h)
    k, a, b = float(P.k), float(P.a), float(P.b)
    return u_t - k * u_xx - a * u0 + b * u0**P.q


def _central_derivative(f, i: int, h):
    # delta^i f(0) / h^i = f^(i)(0) + O(h^2), even expansion in h
    total = 0
    for j in range(i + 1):
        total += (-1) ** j * math.comb(i, j) * f((mpmath.mpf(i) / 2 - j) * h)
    return total / h**i


def taylor_coeff_numeric(case: int, params: dict | None, x: float, i: int, h: float = DEFAULT_H) -> float:
    """i-th t-derivative of the exact solution at t = 0, divided by i!.

    Central differences with steps h and h/2 combined by one Richardson step;
    evaluated at 60 significant digits so cancellation is harmless.
    """
    if not 0 <= i <= 6:
        raise ValueError("taylor_coeff_numeric supports 0 <= i <= 6")
    with mpmath.workdps(60):
        f = lambda t: _exact_mp(case, params, x, t)
        if i == 0:
            return float(f(mpmath.mpf(0)))
        hh = mpmath.mpf(h)
        coarse = _central_derivative(f, i, hh)
        fine = _central_derivative(f, i, hh / 2)
        deriv = (4 * fine - coarse) / 3
        return float(deriv / math.factorial(i))
