import math
import random

import pytest
from hypothesis import given, strategies as st

from nhtwist.diffop import DiffOp
from nhtwist.errors import InvalidInput
from nhtwist.lie import SIGNATURES, F, H, K, M, P, R, build_algebra
from nhtwist.realization import (
    FiniteTransformation, apply_transformation, build_realization, check_flow_consistency,
    profile, realize, verify_homomorphism,
)
from nhtwist.symbolic import IMAG, ONE_EXPR, ZERO, C, S, Expr, limit_tau_inf, sym, t, tau, x

from strategies import exprs


@pytest.mark.parametrize("sig", SIGNATURES)
@pytest.mark.parametrize("d", [1, 2, 3])
def test_homomorphism(sig, d):
    alg = build_algebra(sig, d)
    assert verify_homomorphism(alg, build_realization(sig, d)) == []


def test_homomorphism_detects_wrong_table():
    alg = build_algebra("nh+", 2)
    broken = alg.with_bracket(H, P(1), {})
    bad = verify_homomorphism(broken, build_realization("nh+", 2))
    assert [(a, b) for a, b, _ in bad] == [(P(1), H)]


@pytest.mark.parametrize("eps,sig", [(1, "nh+"), (-1, "nh-")])
def test_realization_examples(eps, sig):
    assert realize(P(1), sig, 3)(x(1)) == IMAG * C(eps)
    assert realize(K(2), sig, 3)(x(2)) == IMAG * tau() * S(eps)
    assert realize(F(1), sig, 3)(x(1) * x(2)) == (IMAG * tau(2) * (C(eps) - 1) * x(2)).scale(2 * eps)
    assert realize(R(3), sig, 3)(x(3)) == (IMAG * (tau(3) * S(eps) - tau(2) * t())).scale(6 * eps)
    assert realize(H, sig, 3)(t()) == IMAG
    assert realize(M(1, 2)[1], sig, 3)(x(1)) == -IMAG * x(2)


@pytest.mark.parametrize("sig", SIGNATURES)
def test_constants_are_annihilated(sig):
    rho = build_realization(sig, 3)
    for g, op in rho.ops.items():
        assert op(ONE_EXPR) == ZERO


@pytest.mark.parametrize("kind,want", [("P", ONE_EXPR), ("K", t()), ("F", t() ** 2), ("R", t() ** 3)])
@pytest.mark.parametrize("sig", ["nh+", "nh-"])
def test_profiles_contract_to_galilei(kind, want, sig):
    assert limit_tau_inf(profile(kind, sig)) == want
    assert profile(kind, "galilei") == want


def test_galilei_realization_is_the_limit():
    for sig in ("nh+", "nh-"):
        rho = build_realization(sig, 3)
        gal = build_realization("galilei", 3)
        for g, op in rho.ops.items():
            assert op.map_coefficients(limit_tau_inf) == gal[g]


@given(exprs(max_terms=3), exprs(max_terms=3), exprs(max_terms=3))
def test_diffop_composition_associative(a, b, c):
    ops = [DiffOp.dt(3, a), DiffOp.dx(3, 1, b), DiffOp.dx(3, 2, c) + DiffOp.multiplication(3, a)]
    p, q, r = ops
    assert (p @ q) @ r == p @ (q @ r)
    f = x(1) * x(2) * t()
    assert (p @ q)(f) == p(q(f))


@pytest.mark.parametrize("sig", SIGNATURES)
@pytest.mark.parametrize("g", [P(1), K(2), F(3), R(1), H])
def test_flows(sig, g):
    assert check_flow_consistency(g, sig, 3)


def test_transformation_time_translation_only():
    tr = FiniteTransformation("nh+", 2, a0=sym("s"))
    assert apply_transformation(tr, [t(), x(1), x(2)]) == (t() + sym("s"), x(1), x(2))


def test_transformation_galilei_c():
    tr = FiniteTransformation("galilei", 1, c=[sym("c1")])
    assert apply_transformation(tr, [t(), x(1)]) == (t(), x(1) + sym("c1") * t() ** 3)


def test_transformation_identity():
    tr = FiniteTransformation("nh-", 3, tau_value=2.0)
    assert apply_transformation(tr, [0.5, 1.0, 2.0, 3.0]) == (0.5, 1.0, 2.0, 3.0)


def test_transformation_numeric_matches_symbolic():
    rng = random.Random(3)
    for sig, eps in (("nh+", 1), ("nh-", -1)):
        a, v, b, c = ([rng.uniform(-1, 1)] for _ in range(4))
        tr = FiniteTransformation(sig, 1, a=a, v=v, b=b, c=c, tau_value=1.5)
        t0, x0 = 0.8, 0.3
        u = t0 / 1.5
        ch, sh = (math.cosh(u), math.sinh(u)) if eps > 0 else (math.cos(u), math.sin(u))
        want = (x0 + a[0] * ch + v[0] * 1.5 * sh + b[0] * eps * 2 * 1.5 ** 2 * (ch - 1)
                + c[0] * eps * 6 * 1.5 ** 3 * (sh - u))
        assert apply_transformation(tr, [t0, x0])[1] == pytest.approx(want, rel=1e-12)


def test_transformation_rotation():
    tr = FiniteTransformation("galilei", 2, rotation=[[0, -1], [1, 0]])
    assert apply_transformation(tr, [0.0, 1.0, 0.0]) == pytest.approx((0.0, 0.0, 1.0))
    with pytest.raises(InvalidInput):
        FiniteTransformation("galilei", 2, rotation=[[1, 0.1], [0, 1]])
    with pytest.raises(InvalidInput):
        FiniteTransformation("galilei", 2, a=[1, 2, 3])
    with pytest.raises(InvalidInput):
        apply_transformation(FiniteTransformation("nh+", 1), [0.1, 0.2])
