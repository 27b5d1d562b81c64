import pytest
from hypothesis import given, settings, strategies as st

from nhtwist.errors import InvalidInput, TruncationNotDetected
from nhtwist.lie import H, K, P
from nhtwist.rmatrix import TWIST_IDS, RMatrix, wedge
from nhtwist.symbolic import IMAG, ONE_EXPR, ZERO, C, S, sym, t, tau, to_plain, x
from nhtwist.twist import (
    CONSTANT_THETA, LINEAR_THETA, TIME_QUANTUM, UEAElement, classify, context_for,
    default_max_order, make_context, spacetime_table, star_commutator, star_product, star_series,
    twisted_antipode, twisted_coproduct, verify_cocycle, verify_normalization,
)
from nhtwist.uea import antipode0_word, format_tensor

def plain_table(k, sig, d=3):
    return {f"[{a},{b}]": to_plain(v) for (a, b), v in spacetime_table(k, sig, d).entries.items()}


# -- frozen tables ---------------------------------------------------------------

@pytest.mark.parametrize("sig,pm", [("nh+", "+"), ("nh-", "-")])
def test_twist_10_table(sig, pm):
    tab = plain_table(10, sig)
    assert tab["[t,x1]"] == "0"
    assert tab["[x1,x2]"] == f"2i*beta10_12*C{pm}^2"
    assert tab["[x2,x3]"] == f"2i*beta10_23*C{pm}^2"


def test_twist_11_table():
    assert plain_table(11, "nh+")["[x1,x3]"] == "2i*tau*beta11_13*C+*S+"


def test_twist_13_table():
    tab = plain_table(13, "nh+")
    assert tab["[x1,x2]"] == "0"
    assert tab["[x1,x3]"] == "2i*tau*x2*beta13*S+"
    assert tab["[x2,x3]"] == "-2i*tau*x1*beta13*S+"


def test_twist_15_table():
    tab = plain_table(15, "nh-")
    assert tab["[t,x1]"] == "2i*x2*beta15"
    assert tab["[t,x2]"] == "-2i*x1*beta15"
    assert tab["[t,x3]"] == "0"
    assert tab["[x1,x2]"] == "0"


def test_galilei_table():
    assert plain_table(1, "galilei")["[x1,x2]"] == "2i*t^6*beta1_12"
    assert plain_table(4, "galilei")["[x2,x3]"] == "2i*t^4*beta4_23"


def test_table_dimension_two():
    tab = plain_table(10, "nh+", d=2)
    assert list(tab) == ["[t,x1]", "[t,x2]", "[x1,x2]"]


# -- star products ------------------------------------------------------------------

def test_star_examples():
    ctx = make_context(10, "nh+", 3)
    assert star_product(t(), t(), ctx) == t() ** 2
    assert star_product(x(1), x(2), ctx) == x(1) * x(2) + IMAG * sym("beta10_12") * C(1) ** 2
    assert star_product(ONE_EXPR, x(1), ctx) == x(1)
    assert star_product(x(3), ONE_EXPR, ctx) == x(3)


def test_star_with_zero_parameter_is_pointwise():
    ctx = make_context(10, "nh+", 3, {(1, 2): 0})
    f, g = x(1) ** 2 * t(), x(2) * C(1)
    assert star_product(f, g, ctx) == f * g


def test_star_series_orders():
    ctx = make_context(10, "nh-", 2, {(1, 2): 1})
    res = star_series(x(1) ** 2, x(2) ** 2, ctx)
    assert res.terminated
    assert len(res.orders) == 3


def test_truncation_not_detected():
    ctx = make_context(10, "nh+", 2, max_order=2)
    with pytest.raises(TruncationNotDetected):
        star_product(x(1) ** 3, x(2) ** 3, ctx)
    res = star_series(x(1) ** 3, x(2) ** 3, ctx, allow_truncation=True)
    assert not res.terminated


def test_max_order_environment(monkeypatch):
    monkeypatch.setenv("NHTWIST_MAX_ORDER", "5")
    assert default_max_order() == 5
    assert make_context(10, "nh+", 2).max_order == 5
    monkeypatch.setenv("NHTWIST_MAX_ORDER", "zero")
    with pytest.raises(InvalidInput):
        default_max_order()
    monkeypatch.setenv("NHTWIST_MAX_ORDER", "0")
    with pytest.raises(InvalidInput):
        default_max_order()
    monkeypatch.delenv("NHTWIST_MAX_ORDER")
    assert default_max_order() == 8


def test_non_abelian_r_rejected():
    with pytest.raises(InvalidInput):
        ctx = context_for(RMatrix(tuple(wedge(K(1), H))), "nh+", 3)
        ctx.check_abelian()


@settings(max_examples=15)
@given(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2), st.sampled_from([10, 12, 13, 15]))
def test_star_associative(a, b, c, k):
    ctx = make_context(k, "nh+", 3, None)
    f, g, h = x(1) ** a * t(), x(2) ** b, x(3) ** c + x(1)
    assert star_product(star_product(f, g, ctx), h, ctx) == star_product(f, star_product(g, h, ctx), ctx)


@pytest.mark.parametrize("k", TWIST_IDS)
def test_star_jacobi(k):
    ctx = make_context(k, "nh-", 3)
    coords = [t(), x(1), x(2), x(3)]
    for i, a in enumerate(coords):
        for j, b in enumerate(coords[i + 1:], i + 1):
            for c in coords[j + 1:]:
                total = ZERO
                for u, v, w in ((a, b, c), (b, c, a), (c, a, b)):
                    total = total + star_commutator(u, star_commutator(v, w, ctx), ctx)
                assert total == ZERO


# -- Hopf structure ---------------------------------------------------------------------

def test_coproduct_primitive_when_carriers_commute():
    res = twisted_coproduct(P(1), make_context(10, "nh+", 3))
    assert res.exact and res.order == 0
    assert format_tensor(res.value) == "1⊗P1 + P1⊗1"


def test_coproduct_twist_11_energy():
    res = twisted_coproduct(H, make_context(11, "nh+", 2))
    assert res.exact and res.order == 1
    assert format_tensor(res.value) == (
        "1⊗H + (beta11_12)*P1⊗P2 + (-beta11_12)*P2⊗P1 + (tau^-2*beta11_12)*K1⊗K2"
        " + (-tau^-2*beta11_12)*K2⊗K1 + H⊗1")


def test_coproduct_zero_parameter_is_primitive():
    res = twisted_coproduct(H, make_context(11, "nh+", 2, {(1, 2): 0}))
    assert format_tensor(res.value) == "1⊗H + H⊗1"


@pytest.mark.parametrize("k,g", [(11, H), (13, H), (15, P(1)), (10, H)])
def test_antipode_axiom(k, g):
    ctx = make_context(k, "nh+", 3)
    delta = twisted_coproduct(g, ctx).value
    s, u = twisted_antipode(g, ctx)
    assert u == UEAElement.one(ctx.algebra)
    # antipode is S0 for these twists; the Hopf axiom must hold with it
    left = delta.map_slot(0, lambda w: antipode0_word(ctx.algebra, w)).multiply_slots()
    assert not left


def test_antipode_examples():
    s, u = twisted_antipode(P(1), make_context(10, "nh+", 3))
    assert str(s.value) == "(-1)*P1" and s.exact
    s, u = twisted_antipode(P(1), make_context(13, "nh+", 3))
    assert str(s.value) == "(-1)*P1" and s.exact
    assert u == UEAElement.one(make_context(13, "nh+", 3).algebra)


@pytest.mark.parametrize("k", TWIST_IDS)
def test_cocycle_and_normalization(k):
    ctx = make_context(k, "nh+", 3)
    assert not verify_cocycle(ctx, 2)
    assert verify_normalization(ctx, 3)


def test_cocycle_numeric_params_graded():
    ctx = make_context(12, "nh-", 2, {(1, 2): 3})
    assert not verify_cocycle(ctx, 3)


def test_cocycle_fails_for_non_abelian():
    ctx = context_for(RMatrix(tuple(wedge(K(1), H, sym("b")))), "nh+", 2)
    assert verify_cocycle(ctx, 2)


# -- classification -------------------------------------------------------------------

@pytest.mark.parametrize("sig,eps", [("nh+", 1), ("nh-", -1)])
def test_classify_nh(sig, eps):
    c = classify(spacetime_table(10, sig, 3))
    assert c.kind == CONSTANT_THETA and c.time_profile == C(eps) ** 2
    c = classify(spacetime_table(13, sig, 3))
    assert c.kind == LINEAR_THETA and c.time_profile == (tau() * S(eps)).scale(2)
    assert c.coordinate_degree == 1
    assert classify(spacetime_table(15, sig, 3)).kind == TIME_QUANTUM


@pytest.mark.parametrize("k,deg", [(1, 6), (2, 5), (3, 3), (4, 4), (6, 4), (10, 0), (12, 2)])
def test_classify_galilei_degree(k, deg):
    c = classify(spacetime_table(k, "galilei", 3))
    assert c.kind == CONSTANT_THETA
    assert c.spacetime_degree == deg
    assert c.time_profile == t() ** deg


def test_classify_commutative():
    assert classify(spacetime_table(10, "nh+", 3, {(1, 2): 0})).kind == "Commutative"
