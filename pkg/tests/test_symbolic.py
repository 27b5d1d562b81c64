import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from nhtwist.errors import DivergentLimit, UnboundAtom, UndecidedOrder
from nhtwist.symbolic import (
    CPLUS, CMINUS, I, IMAG, ONE_EXPR, T, ZERO, C, Expr, S, Scalar, diff_t, diff_x, eval_numeric,
    format_scalar, from_json_ast, limit_tau_inf, normalize, parse_scalar, sym, t, tau, taylor_atoms,
    to_json_ast, to_latex, to_plain, x, x_atom,
)

from strategies import exprs, scalars

BINDINGS = {"t": 0.7, "x1": 0.3, "x2": -1.1, "x3": 0.9, "b": 0.4}
TAU = 1.7


def num(e):
    return eval_numeric(e, BINDINGS, TAU)


# -- scalars ---------------------------------------------------------------

def test_gaussian_rationals():
    assert I * I == Scalar(-1)
    assert Scalar(Fraction(2, 4)).re == Fraction(1, 2)
    assert Scalar(1, 1) / Scalar(1, 1) == Scalar(1)


@pytest.mark.parametrize("text,value", [
    ("3", Scalar(3)), ("-1/2", Scalar(Fraction(-1, 2))), ("i", Scalar(0, 1)),
    ("2i", Scalar(0, 2)), ("-3i/2", Scalar(0, Fraction(-3, 2))),
])
def test_parse_scalar(text, value):
    assert parse_scalar(text) == value
    assert parse_scalar(format_scalar(value)) == value


@given(scalars, scalars, scalars)
def test_scalar_field_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    if b:
        assert (a / b) * b == a


# -- normalize and ring axioms -----------------------------------------------

def test_normalize_examples():
    x1, x2 = x(1), x(2)
    assert normalize(("-", ("*", x1, x2), ("*", x2, x1))) == ZERO
    assert normalize(("*", ("-", C(1), 1), ("+", C(1), 1))) == C(1) ** 2 - 1
    assert normalize(("*", ("tau", 2), ("tau", -2), T)) == t()


def test_elementary_arithmetic():
    assert t() + (-t()) == ZERO
    assert IMAG * IMAG == Expr.const(-1)
    assert S(1) * S(1) == S(1) ** 2


def test_no_pythagorean_rewriting():
    e = C(-1) ** 2 + S(-1) ** 2
    assert e != ONE_EXPR
    assert abs(num(e) - 1) < 1e-12


@given(exprs(), exprs(), exprs())
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a - a == ZERO


@given(exprs())
def test_normalize_idempotent_and_value_preserving(e):
    once = normalize(e)
    assert normalize(once) == once
    assert abs(num(once) - num(e)) <= 1e-12 * max(1.0, abs(num(e)))


@given(exprs())
def test_canonical_term_order_is_sorted(e):
    keys = [(m.powers, m.tau_power) for m in e.terms]
    assert keys == sorted(keys)


# -- differentiation -----------------------------------------------------------

def test_diff_t_examples():
    assert diff_t(C(-1)) == -(tau(-1) * S(-1))
    assert diff_t(tau() * S(1)) == C(1)
    for eps in (1, -1):
        f = (tau(2) * (C(eps) - 1)).scale(2 * eps)
        assert diff_t(f) == (tau() * S(eps)).scale(2)


def test_diff_x_examples():
    assert diff_x(x(1) * x(2), 1) == x(2)
    assert diff_x(C(1) * x(3), 3) == C(1)
    assert diff_x(t(), 1) == ZERO
    with pytest.raises(IndexError):
        diff_x(x(1), 4, dim=3)


@given(exprs(), st.integers(1, 3))
def test_derivatives_commute(e, i):
    assert diff_x(diff_t(e), i) == diff_t(diff_x(e, i))


@given(exprs(), exprs())
def test_leibniz(a, b):
    assert diff_t(a * b) == diff_t(a) * b + a * diff_t(b)


# -- series and limits ----------------------------------------------------------

def test_taylor_examples():
    assert taylor_atoms(C(1) - 1, 2) == (t() ** 2 * tau(-2)).scale(Fraction(1, 2))
    assert taylor_atoms(S(-1) - tau(-1) * t(), 3) == (t() ** 3 * tau(-3)).scale(Fraction(-1, 6))
    u = S(1) - tau(-1) * t()
    series = taylor_atoms((tau(6) * u ** 2).scale(36), 8)
    assert series == t() ** 6 + (t() ** 8 * tau(-2)).scale(Fraction(1, 10))


@given(exprs(atoms=[T, CPLUS, CMINUS, x_atom(1)], max_terms=3, max_tau=0), st.integers(2, 6))
def test_taylor_accuracy(e, order):
    big = 1e3
    exact = eval_numeric(e, {"t": 1.0, "x1": 0.5}, big)
    approx = eval_numeric(taylor_atoms(e, order), {"t": 1.0, "x1": 0.5}, big)
    scale = max(1.0, sum(abs(complex(c)) for _, c in e.items()))
    assert abs(exact - approx) <= 10 * scale * big ** -(order + 1) + 1e-12 * scale


@pytest.mark.parametrize("eps", [1, -1])
def test_limit_examples(eps):
    assert limit_tau_inf((tau(2) * (C(eps) - 1)).scale(2 * eps)) == t() ** 2
    assert limit_tau_inf((tau(3) * S(eps) - tau(2) * t()).scale(6 * eps)) == t() ** 3
    assert limit_tau_inf(C(eps)) == ONE_EXPR
    assert limit_tau_inf(tau(-1) * S(eps)) == ZERO


def test_limit_errors():
    with pytest.raises(DivergentLimit):
        limit_tau_inf(tau() * C(1))
    with pytest.raises(UndecidedOrder):
        limit_tau_inf(tau(20) * (C(1) - 1), bound=16)


# -- evaluation and rendering ----------------------------------------------------

def test_eval_numeric():
    assert eval_numeric(S(1), {"t": 0.0}, 2.0) == 0
    assert eval_numeric(C(1), {"t": 1.0}, 2.0) == pytest.approx(math.cosh(0.5))
    with pytest.raises(UnboundAtom):
        eval_numeric(x(1), {"t": 1.0}, 2.0)
    with pytest.raises(UnboundAtom):
        eval_numeric(C(1), {"t": 1.0})


def test_eval_high_precision_resolves_cancellation():
    u = S(1) - tau(-1) * t()
    e = (tau(6) * u ** 2).scale(36)
    with mpmath.workdps(60):
        u0 = mpmath.mpf(1) / 30
        want = float(36 * 3 ** 6 * (mpmath.sinh(u0) - u0) ** 2)
    got = eval_numeric(e, {"t": Fraction(1, 10)}, Fraction(3), dps=50)
    assert abs(got - want) <= 1e-14 * want


@given(exprs())
def test_json_ast_round_trip(e):
    assert from_json_ast(to_json_ast(e)) == e


def test_rendering():
    e = (IMAG * sym("beta10_12") * C(-1) ** 2).scale(2)
    assert to_plain(e) == "2i*beta10_12*C-^2"
    assert to_latex(e) == r"2 i \beta_{10}^{12} C_{-}^{2}\left(\frac{t}{\tau}\right)"
    assert to_plain(ZERO) == "0"
