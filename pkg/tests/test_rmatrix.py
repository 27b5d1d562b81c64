from fractions import Fraction

import numpy as np
import pytest

from nhtwist.errors import InvalidInput
from nhtwist.lie import SIGNATURES, F, H, K, M, P, R, build_algebra
from nhtwist.rmatrix import (
    TWIST_IDS, RMatrix, abelian_violations, rmatrix_catalog, schouten_bracket, verify_cybe, wedge,
)
from nhtwist.symbolic import Expr, sym

HALF = Fraction(1, 2)


def test_twist_10_symbolic():
    r = rmatrix_catalog(10, 3)
    d = r.as_dict()
    b12 = sym("beta10_12")
    assert d[(P(1), P(2))] == b12
    assert d[(P(2), P(1))] == -b12
    assert len(d) == 6
    assert r.is_antisymmetric()


def test_twist_10_single_parameter():
    r = rmatrix_catalog(10, 3, {(1, 2): 2})
    assert r.as_dict() == {(P(1), P(2)): Expr.const(2), (P(2), P(1)): Expr.const(-2)}


def test_matrix_params_as_array():
    beta = np.array([[0, 1, 0], [-1, 0, 0], [0, 0, 0]])
    assert rmatrix_catalog(12, 3, beta).as_dict() == rmatrix_catalog(12, 3, {(1, 2): 1}).as_dict()


@pytest.mark.parametrize("n,left,right", [(1, R, R), (2, R, F), (3, R, P), (4, K, R),
                                          (6, F, F), (7, F, P), (8, K, F), (11, K, P), (12, K, K)])
def test_matrix_carriers(n, left, right):
    d = rmatrix_catalog(n, 2).as_dict()
    b = sym(f"beta{n}_12")
    assert d[(left(1), right(2))] == b.scale(HALF) * (1 if left != right else 2)


@pytest.mark.parametrize("n,fam", [(5, R), (9, F), (13, K), (14, P)])
def test_rotation_twists(n, fam):
    r = rmatrix_catalog(n, 3)
    m12 = M(1, 2)[1]
    assert r.as_dict() == {(fam(3), m12): sym(f"beta{n}"), (m12, fam(3)): -sym(f"beta{n}")}
    assert r.fixed == (3, 1, 2)


def test_rotation_twist_reversed_indices():
    r = rmatrix_catalog(14, 3, 1, fixed=(3, 2, 1))
    assert r.as_dict()[(P(3), M(1, 2)[1])] == Expr.const(-1)


def test_twist_15():
    r = rmatrix_catalog(15, 3)
    m12 = M(1, 2)[1]
    assert r.as_dict() == {(m12, H): sym("beta15"), (H, m12): -sym("beta15")}


@pytest.mark.parametrize("n", TWIST_IDS)
def test_zero_parameters_give_zero(n):
    params = np.zeros((3, 3)) if n in (1, 2, 3, 4, 6, 7, 8, 10, 11, 12) else 0
    assert rmatrix_catalog(n, 3, params).is_zero()


@pytest.mark.parametrize("args", [
    dict(n=16), dict(n=0), dict(n=5, d=2), dict(n=10, d=1),
    dict(n=5, fixed=(1, 1, 2)), dict(n=5, fixed=(4, 1, 2)), dict(n=15, fixed=(1, 1)),
    dict(n=10, params={(1, 1): 1}), dict(n=10, params={(1, 2): 1, (2, 1): 1}),
    dict(n=10, params={(1, 4): 1}), dict(n=10, params=[[0, 1], [1, 0]]),
])
def test_invalid_catalog_inputs(args):
    args = {"d": 3, **args}
    with pytest.raises(InvalidInput):
        rmatrix_catalog(args.pop("n"), args.pop("d"), **args)


@pytest.mark.parametrize("sig", SIGNATURES)
@pytest.mark.parametrize("n", TWIST_IDS)
def test_cybe_holds(n, sig):
    alg = build_algebra(sig, 3)
    r = rmatrix_catalog(n, 3)
    assert abelian_violations(r, alg) == []
    assert verify_cybe(r, alg)


def test_non_abelian_carrier_fails_cybe():
    alg = build_algebra("nh+", 3)
    r = RMatrix(tuple(wedge(K(1), H, sym("b"))))
    assert abelian_violations(r, alg) == [(K(1), H)]
    assert schouten_bracket(r, alg)
    assert not verify_cybe(r, alg)
