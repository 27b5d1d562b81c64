"""Classical r-matrices: the fifteen Abelian carriers, Schouten bracket, CYBE check.

Parameter conventions
---------------------
Matrix-type twists ``1/2 beta^{kl} A_k ^ B_l`` use antisymmetric formal
symbols; the canonical representative is ``beta{n}_{kl}`` with k < l and
``beta^{lk} = -beta^{kl}``.  Repeated k, l are summed over 1..d.  Scalar
twists use ``beta{n}``.  Fixed indices default to m=3, (k, l)=(1, 2) for
items 5, 9, 13, 14 and (i, j)=(1, 2) for item 15.
"""
from __future__ import annotations

import numbers
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import InvalidInput
from .lie import F, Generator, H, K, LieAlgebra, M, P, R
from .symbolic import ONE_EXPR, Expr, Scalar, sym, to_plain
from .uea import Tensor

# twist id -> (left family, right family) for matrix twists
MATRIX_TWISTS = {
    1: ("R", "R"), 2: ("R", "F"), 3: ("R", "P"), 4: ("K", "R"),
    6: ("F", "F"), 7: ("F", "P"), 8: ("K", "F"),
    10: ("P", "P"), 11: ("K", "P"), 12: ("K", "K"),
}
# twist id -> vector family wedged with M_kl
ROTATION_TWISTS = {5: "R", 9: "F", 13: "K", 14: "P"}
TWIST_IDS = tuple(range(1, 16))
_FAMILY = {"P": P, "K": K, "F": F, "R": R}

DEFAULT_FIXED = (3, 1, 2)
DEFAULT_FIXED_15 = (1, 2)


def beta_name(n: int, k: int | None = None, l: int | None = None) -> str:
    return f"beta{n}" if k is None else f"beta{n}_{k}{l}"


def beta_entry(n: int, k: int, l: int) -> Expr:
    """Symbolic beta_n^{kl} with antisymmetry resolved."""
    if k == l:
        return Expr()
    if k < l:
        return sym(beta_name(n, k, l))
    return -sym(beta_name(n, l, k))


@dataclass(frozen=True)
class RMatrix:
    """sum of c * a (x) b over ``terms``."""

    terms: tuple  # ((Expr, Generator, Generator), ...)
    twist: int | None = None
    fixed: tuple | None = None

    def as_dict(self) -> dict:
        out: dict = {}
        for c, a, b in self.terms:
            out[(a, b)] = out[(a, b)] + c if (a, b) in out else c
        return {k: v for k, v in out.items() if v}

    def carriers(self) -> list[Generator]:
        seen = []
        for _, a, b in self.terms:
            for g in (a, b):
                if g not in seen:
                    seen.append(g)
        return seen

    def is_antisymmetric(self) -> bool:
        d = self.as_dict()
        return all(d.get((b, a), Expr()) == -c for (a, b), c in d.items())

    def is_zero(self) -> bool:
        return not self.as_dict()

    def to_tensor(self, alg: LieAlgebra) -> Tensor:
        out = {}
        for (a, b), c in self.as_dict().items():
            out[((a,), (b,))] = c
        return Tensor(alg, 2, out)

    def scale(self, s) -> "RMatrix":
        s = Expr.coerce(s)
        return RMatrix(tuple((c * s, a, b) for c, a, b in self.terms), self.twist, self.fixed)

    def __str__(self):
        return " + ".join(f"({to_plain(c)})*{a}⊗{b}" for (a, b), c in self.as_dict().items()) or "0"


def wedge(a: Generator, b: Generator, coeff=1, sign_b: int = 1) -> list:
    """coeff * a ^ (sign_b * b) = coeff*sign_b*(a (x) b - b (x) a)."""
    c = Expr.coerce(coeff).scale(sign_b)
    return [(c, a, b), (-c, b, a)]


def _coerce_param(v) -> Expr:
    if isinstance(v, numbers.Integral):
        v = int(v)
    elif isinstance(v, numbers.Real) and not isinstance(v, Fraction):
        v = Fraction(float(v)).limit_denominator(10**12)
    return Expr.coerce(v)


def _is_symbolic(params) -> bool:
    return params is None or (isinstance(params, str) and params == "symbolic")


def _matrix_params(n: int, d: int, params) -> dict:
    """Full antisymmetric parameter matrix {(k, l): Expr} for twist n."""
    if _is_symbolic(params):
        return {(k, l): beta_entry(n, k, l) for k in range(1, d + 1) for l in range(1, d + 1)}
    if isinstance(params, Mapping):
        full: dict = {}
        for key, v in params.items():
            k, l = key
            if not (1 <= k <= d and 1 <= l <= d):
                raise InvalidInput(f"parameter index ({k},{l}) outside 1..{d}")
            full[(k, l)] = _coerce_param(v)
        for (k, l), v in list(full.items()):
            if (l, k) in full:
                if full[(l, k)] != -v:
                    raise InvalidInput(f"beta{n} is not antisymmetric at ({k},{l})")
            else:
                full[(l, k)] = -v
        for k in range(1, d + 1):
            if full.get((k, k), Expr()):
                raise InvalidInput(f"beta{n} has a nonzero diagonal entry at ({k},{k})")
        return {(k, l): full.get((k, l), Expr()) for k in range(1, d + 1) for l in range(1, d + 1)}
    # nested sequence (e.g. numpy array or list of lists), 0-based
    rows = list(params)
    if len(rows) != d or any(len(list(r)) != d for r in rows):
        raise InvalidInput(f"beta{n} must be a {d}x{d} array")
    full = {(k + 1, l + 1): _coerce_param(rows[k][l]) for k in range(d) for l in range(d)}
    for (k, l), v in full.items():
        if full[(l, k)] != -v:
            raise InvalidInput(f"beta{n} is not antisymmetric at ({k},{l})")
    return full


def rmatrix_catalog(n: int, d: int = 3, params=None, fixed: Sequence[int] | None = None) -> RMatrix:
    """The n-th Abelian r-matrix (n = 1..15).

    ``params`` is None/"symbolic", a mapping ``{(k, l): value}`` (missing
    partners are filled antisymmetrically) or a d x d array for matrix twists,
    and a single value for scalar twists.  ``fixed`` is (m, k, l) for items
    5/9/13/14 and (i, j) for item 15.
    """
    if n not in TWIST_IDS:
        raise InvalidInput(f"twist id must be in 1..15, got {n}")
    if d < 1:
        raise InvalidInput("dimension must be >= 1")
    half = Scalar(Fraction(1, 2))
    terms: list = []
    if n in MATRIX_TWISTS:
        if d < 2:
            raise InvalidInput(f"twist {n} needs d >= 2")
        left, right = (_FAMILY[f] for f in MATRIX_TWISTS[n])
        beta = _matrix_params(n, d, params)
        for k in range(1, d + 1):
            for l in range(1, d + 1):
                c = beta[(k, l)].scale(half)
                if c:
                    terms += wedge(left(k), right(l), c)
        return RMatrix(tuple(terms), n, None)
    if _is_symbolic(params):
        coeff = sym(beta_name(n))
    elif isinstance(params, Mapping):
        coeff = _coerce_param(params.get("beta", params.get(beta_name(n), 0)))
    else:
        coeff = _coerce_param(params)
    if n in ROTATION_TWISTS:
        m, k, l = tuple(fixed) if fixed is not None else DEFAULT_FIXED
        if d < 3:
            raise InvalidInput(f"twist {n} needs d >= 3 (fixed indices m != k, l)")
        if len({m, k, l}) != 3:
            raise InvalidInput(f"twist {n} needs distinct fixed indices, got m={m}, k={k}, l={l}")
        if not all(1 <= q <= d for q in (m, k, l)):
            raise InvalidInput(f"fixed indices must lie in 1..{d}")
        s, rot = M(k, l)
        terms = wedge(_FAMILY[ROTATION_TWISTS[n]](m), rot, coeff, s)
        return RMatrix(tuple(terms), n, (m, k, l))
    # n == 15: beta M_ij ^ H
    i, j = tuple(fixed) if fixed is not None else DEFAULT_FIXED_15
    if d < 2:
        raise InvalidInput("twist 15 needs d >= 2")
    if i == j or not (1 <= i <= d and 1 <= j <= d):
        raise InvalidInput(f"twist 15 needs distinct indices in 1..{d}, got ({i},{j})")
    s, rot = M(i, j)
    terms = [(coeff.scale(s), rot, H), (-coeff.scale(s), H, rot)]
    return RMatrix(tuple(terms), 15, (i, j))


def abelian_violations(r: RMatrix, alg: LieAlgebra) -> list[tuple[Generator, Generator]]:
    """Pairs of carriers with nonzero bracket."""
    cs = r.carriers()
    return [(a, b) for n, a in enumerate(cs) for b in cs[n + 1:] if alg.bracket(a, b)]


def schouten_bracket(r: RMatrix, alg: LieAlgebra) -> Tensor:
    """[[r, r]] = [r12, r13 + r23] + [r13, r23] in U(g)^{(x)3}."""
    rt = r.to_tensor(alg)
    r12 = rt.embed((0, 1), 3)
    r13 = rt.embed((0, 2), 3)
    r23 = rt.embed((1, 2), 3)
    return r12.commutator(r13 + r23) + r13.commutator(r23)


def verify_cybe(r: RMatrix, alg: LieAlgebra) -> bool:
    return not schouten_bracket(r, alg)
