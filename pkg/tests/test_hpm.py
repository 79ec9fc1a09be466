import math
import random
from fractions import Fraction as F

import pytest

from nws_hpm.hpm import (
    ProblemError,
    build_problem,
    dump_terms,
    hpm_terms,
    nonlinear_coeff,
    partial_sum,
    preset_case,
)
from nws_hpm.oracle import taylor_coeff_numeric
from nws_hpm.scalar import Scalar
from nws_hpm.symexpr import Expr
from nws_hpm.tseries import TSeries, ts_pow_trunc

from conftest import preset

A = Scalar.sqrt(F(3, 4))


def test_build_problem_examples():
    P = build_problem(1, 2, 3, 2, Expr.constant(F(1, 10), 1), 1, 0)
    assert (P.k, P.a, P.b, P.q) == (1, 2, 3, 2)
    P3 = build_problem(1, 1, 1, 4, Expr.term(1, 0, F(2, 3), F(9, 10)), F(9, 10), 0)
    assert P3.ic.parts[0].delta == F(2, 3)


@pytest.mark.parametrize(
    "kwargs, message",
    [
        (dict(q=1), "linear"),
        (dict(k=0), "k must be positive"),
        (dict(r=F(1, 2)), "initial condition has r"),
        (dict(r=-1), "r = kappa"),
    ],
)
def test_build_problem_rejects(kwargs, message):
    args = dict(k=1, a=2, b=3, q=2, ic=Expr.constant(1, 1), r=1, s=0)
    args.update(kwargs)
    with pytest.raises(ProblemError, match=message):
        build_problem(**args)


def test_presets():
    P2 = preset_case(2)
    assert (P2.k, P2.a, P2.b, P2.q, P2.r) == (1, 1, 1, 2, F(1, 6))
    assert P2.ic == Expr.term(1, 0, 2, F(1, 6))
    P4 = preset_case(4)
    assert (P4.a, P4.b, P4.q, P4.r, P4.s) == (3, 4, 3, F(3, 2), F(3, 4))
    assert P4.ic == Expr.term(A, 1, 1, F(3, 2))
    # w/(1+w) with w = e^{sqrt6 x/2} equals e^{sqrt6 x}/(e^{sqrt6 x} + e^{sqrt6 x/2})
    x = 0.37
    w = math.exp(math.sqrt(6) / 2 * x)
    assert P4.ic(x) == pytest.approx(
        math.sqrt(0.75) * math.exp(math.sqrt(6) * x) / (math.exp(math.sqrt(6) * x) + w), rel=1e-14
    )
    assert preset_case(1, F(1, 10)).ic == Expr.constant(F(1, 10), 1)


def test_preset_errors():
    with pytest.raises(ProblemError):
        preset_case(1)
    with pytest.raises(ProblemError):
        preset_case(7)
    with pytest.raises(ProblemError):
        preset_case(2, F(1, 10))


def _weights(P, N):
    return [v[i] for i, v in enumerate(hpm_terms(P, N))]


def test_case1_terms():
    w = _weights(preset(1), 3)
    assert [e.parts[0].num[0] for e in w[1:]] == [F(17, 100), F(119, 1000), F(799, 30000)]


def test_case1_matches_lambda_polynomials():
    # v_1..v_3 as polynomials in lambda, evaluated at lambda = 1/10
    lam = F(1, 10)
    expected = [
        lam * (2 - 3 * lam),
        2 * lam * (2 - 3 * lam) * (1 - 3 * lam) / 2,
        2 * lam * (2 - 3 * lam) * (27 * lam**2 - 18 * lam + 2) / 6,
    ]
    got = _weights(preset(1), 3)[1:]
    assert got == [Expr.constant(c, 1) for c in expected]


def test_first_order_terms():
    assert _weights(preset(2), 1)[1] == Expr.term(F(5, 3), 1, 3, F(1, 6))
    assert _weights(preset(3), 1)[1] == Expr.term(F(7, 5), 1, F(5, 3), F(9, 10))
    assert _weights(preset(4), 1)[1] == Expr.term(A * F(9, 2), 1, 2, F(3, 2))


def test_nonlinear_coeff_examples():
    r = F(1, 6)
    v = [Expr.term(1, 0, 2, r), Expr.term(2, 1, 3, r), Expr.from_poly([0, 1, 3], 4, r)]
    vs = [TSeries([Expr.zero(r)] * i + [e], 4, r) for i, e in enumerate(v)]
    assert nonlinear_coeff(vs, 0, 2) == v[0] * v[0]
    assert nonlinear_coeff(vs, 2, 2) == (v[0] * v[2]).scale(2) + v[1] * v[1]
    assert nonlinear_coeff(vs, 2, 3) == (v[0] * v[0] * v[2]).scale(3) + (v[0] * v[1] * v[1]).scale(3)


def test_nonlinear_coeff_rejects_inhomogeneous():
    r = F(1, 6)
    vs = [TSeries([Expr.constant(1, r), Expr.constant(1, r)], 2, r)]
    with pytest.raises(ValueError, match="homogeneous"):
        nonlinear_coeff(vs, 0, 2)


def test_nonlinear_coeff_agrees_with_series_power(case_id):
    P = preset(case_id)
    vs = hpm_terms(P, 6)
    total = vs[0]
    for v in vs[1:]:
        total = total + v
    power = ts_pow_trunc(total, P.q, 6)
    for n in range(7):
        assert nonlinear_coeff(vs, n, P.q) == power[n]


def test_partial_sum():
    vs = hpm_terms(preset(1), 5)
    assert partial_sum(vs, 0) == vs[0]
    s1 = partial_sum(vs, 1)
    assert s1.coeffs == (Expr.constant(F(1, 10), 1), Expr.constant(F(17, 100), 1))
    for n in range(1, 6):
        assert partial_sum(vs, n) - partial_sum(vs, n - 1) == vs[n]
    with pytest.raises(IndexError):
        partial_sum(vs, 6)


def test_t_homogeneity(case_id):
    for i, v in enumerate(hpm_terms(preset(case_id), 8)):
        nonzero = [j for j, c in enumerate(v.coeffs) if not c.is_zero()]
        assert nonzero == [i]


def test_recursion_identity(case_id):
    P = preset(case_id)
    vs = hpm_terms(P, 6)
    for n in range(6):
        rhs = v_n = vs[n][n]
        rhs = v_n.d2dx().scale(P.k) + v_n.scale(P.a) - nonlinear_coeff(vs, n, P.q).scale(P.b)
        assert vs[n + 1].derivative_t()[n] == rhs


def test_closure_on_presets(case_id):
    # the full default cap runs without leaving the expression class
    vs = hpm_terms(preset(case_id), 12)
    assert len(vs) == 13


def test_order_cap(monkeypatch):
    with pytest.raises(ProblemError, match="cap"):
        hpm_terms(preset(2), 13)
    monkeypatch.setenv("NWS_MAX_ORDER", "3")
    with pytest.raises(ProblemError):
        hpm_terms(preset(2), 4)
    assert len(hpm_terms(preset(2), 3)) == 4


def logistic_taylor(lam: F, n: int) -> list[F]:
    """Taylor coefficients of u' = 2u - 3u^2, u(0) = lam, by repeated differentiation.

    d^{m+1}u/dt^{m+1} = D_m'(u) * f(u) with D_1 = f, each D_m a polynomial in u.
    """
    def deriv(p):
        return [j * c for j, c in enumerate(p)][1:]

    def mul(p, q):
        out = [F(0)] * (len(p) + len(q) - 1)
        for i, a in enumerate(p):
            for j, b in enumerate(q):
                out[i + j] += a * b
        return out

    f = [F(0), F(2), F(-3)]
    D = f
    coeffs = [lam]
    for m in range(1, n + 1):
        value = sum(c * lam**j for j, c in enumerate(D))
        coeffs.append(value / math.factorial(m))
        D = mul(deriv(D), f)
    return coeffs


def test_case1_brute_force_oracle():
    rng = random.Random(20240611)
    for _ in range(20):
        lam = F(rng.randint(1, 999), 1000) * F(2, 3)
        P = preset_case(1, lam)
        expected = logistic_taylor(lam, 4)
        got = _weights(P, 4)
        for i in range(1, 5):
            assert got[i] == Expr.constant(expected[i], 1)


@pytest.mark.parametrize("case, xs", [(1, [0.0]), (2, [1.0, 1.5]), (3, [1.0, 1.5]), (4, [0.3, 0.8])])
def test_taylor_match(case, xs):
    vs = hpm_terms(preset(case), 5)
    for x in xs:
        for i in range(6):
            numeric = taylor_coeff_numeric(case, {"lam": F(1, 10)}, x, i)
            assert vs[i][i](x) == pytest.approx(numeric, rel=1e-6)


def test_dump_case2():
    text = dump_terms(preset_case(2), 1)
    assert "t^1/1! : 5/3 * w^1 / (1+w)^3" in text.splitlines()
    assert dump_terms(preset_case(2), 0).splitlines() == ["t^0/0! : 1 * w^0 / (1+w)^2"]


def test_dump_case4_second_order():
    lines = dump_terms(preset_case(4), 2).splitlines()
    assert lines[2] == (
        "t^2/2! : 81/4*sqrt(3/4) * w^1 / (1+w)^3 + -81/4*sqrt(3/4) * w^2 / (1+w)^3"
    )


def test_dump_is_deterministic():
    assert dump_terms(preset_case(3), 4) == dump_terms(preset_case(3), 4)
