"""Abelian Drinfeld twists F = exp(i r): star products, space-time tables,
twisted coproducts and antipodes, cocycle and normalization checks.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from itertools import combinations

from .errors import InvalidInput, TruncationNotDetected
from .lie import Generator, LieAlgebra, build_algebra, canonical_signature, signature_sign
from .realization import Realization, build_realization
from .rmatrix import RMatrix, abelian_violations, rmatrix_catalog
from .symbolic import (
    COORDINATE, I, ONE, PARAM_KIND, TRANSCENDENTAL, ZERO, Expr, Scalar, T_KIND, X_KIND,
    _mul_keys, sym, t, to_plain, x,
)
from .uea import (
    Tensor, UEAElement, antipode0_word, coproduct0_word, counit0_word, primitive_coproduct, tensor_exp,
)

DEFAULT_MAX_ORDER = 8


def default_max_order() -> int:
    raw = os.environ.get("NHTWIST_MAX_ORDER")
    if raw is None:
        return DEFAULT_MAX_ORDER
    try:
        value = int(raw)
    except ValueError:
        raise InvalidInput(f"NHTWIST_MAX_ORDER must be an integer, got {raw!r}") from None
    if value < 1:
        raise InvalidInput("NHTWIST_MAX_ORDER must be >= 1")
    return value


@dataclass
class TwistContext:
    r: RMatrix
    realization: Realization
    algebra: LieAlgebra
    max_order: int = field(default_factory=default_max_order)

    def __post_init__(self):
        if self.max_order < 1:
            raise InvalidInput("max_order must be >= 1")

    @property
    def signature(self) -> str:
        return self.realization.signature

    @property
    def dim(self) -> int:
        return self.realization.dim

    def check_abelian(self) -> None:
        bad = abelian_violations(self.r, self.algebra)
        if bad:
            pairs = ", ".join(f"[{a},{b}]" for a, b in bad)
            raise InvalidInput(f"r-matrix carriers do not commute: {pairs}")


def make_context(k: int, signature: str, d: int = 3, params=None, fixed=None,
                 max_order: int | None = None, abelian_check: bool = True) -> TwistContext:
    sig = canonical_signature(signature)
    alg = build_algebra(sig, d)
    r = rmatrix_catalog(k, d, params, fixed)
    ctx = TwistContext(r, build_realization(sig, d, alg.generators), alg,
                       max_order if max_order is not None else default_max_order())
    if abelian_check:
        ctx.check_abelian()
    return ctx


def context_for(r: RMatrix, signature: str, d: int, max_order: int | None = None) -> TwistContext:
    """Context for an arbitrary (possibly non-catalog) r-matrix; no Abelian check."""
    sig = canonical_signature(signature)
    alg = build_algebra(sig, d)
    return TwistContext(r, build_realization(sig, d, alg.generators), alg,
                        max_order if max_order is not None else default_max_order())


# ---------------------------------------------------------------------------
# star product
#
# F^{-1} (f (x) g) is accumulated order by order.  Because the carriers
# commute, r^{n+1} = r * r^n and the n-th term is obtained from the previous
# one by applying -i/n * sum_a c_a rho(a_a) (x) rho(b_a).  Terms are stored as
# {(keyA, keyB): Scalar} with every parameter and tau factor moved into slot A,
# i.e. as an element of the tensor product over the parameter ring.  Once a
# term is the zero tensor, every later term is the image of zero under a
# linear map, so the series has provably terminated.

def _is_scalar_atom(a) -> bool:
    return a.kind == PARAM_KIND


def _shift_params(key_a, key_b):
    pb, tb = key_b
    moved = tuple(p for p in pb if _is_scalar_atom(p[0]))
    if not moved and not tb:
        return key_a, key_b
    kept = tuple(p for p in pb if not _is_scalar_atom(p[0]))
    return _mul_keys(key_a, (moved, tb)), (kept, 0)


def _normalize_pair_tensor(pairs: dict) -> dict:
    out: dict = {}
    for (ka, kb), s in pairs.items():
        # parameters in slot A too, so the representation is canonical
        ka2, kb2 = _shift_params(ka, kb)
        key = (ka2, kb2)
        out[key] = out[key] + s if key in out else s
    return {k: v for k, v in out.items() if v}


def _tensor_of(f: Expr, g: Expr) -> dict:
    pairs = {}
    for ka, ca in f.items():
        for kb, cb in g.items():
            pairs[(ka, kb)] = ca * cb
    return _normalize_pair_tensor(pairs)


def _omega(pairs: dict) -> Expr:
    out: dict = {}
    for (ka, kb), s in pairs.items():
        k = _mul_keys(ka, kb)
        out[k] = out[k] + s if k in out else s
    return Expr(out)


class _ActionCache:
    def __init__(self, ctx: TwistContext):
        self.ctx = ctx
        self._memo: dict = {}

    def act(self, g: Generator, key) -> Expr:
        memo_key = (g, key)
        hit = self._memo.get(memo_key)
        if hit is None:
            hit = self.ctx.realization[g](Expr({key: ONE}))
            self._memo[memo_key] = hit
        return hit


def _apply_r(pairs: dict, ctx: TwistContext, cache: _ActionCache, factor: Scalar) -> dict:
    out: dict = {}
    for c, a, b in ctx.r.terms:
        cf = c.scale(factor)
        for (ka, kb), s in pairs.items():
            fa = cache.act(a, ka)
            if not fa:
                continue
            gb = cache.act(b, kb)
            if not gb:
                continue
            fa_c = fa * cf
            for ka2, ca in fa_c.items():
                for kb2, cb in gb.items():
                    key = (ka2, kb2)
                    val = s * ca * cb
                    out[key] = out[key] + val if key in out else val
    return _normalize_pair_tensor(out)


@dataclass
class StarResult:
    value: Expr
    orders: list  # omega of each order's term, order 0 first
    terminated: bool


def star_series(f: Expr, g: Expr, ctx: TwistContext, allow_truncation: bool = False) -> StarResult:
    f, g = Expr.coerce(f), Expr.coerce(g)
    cache = _ActionCache(ctx)
    term = _tensor_of(f, g)
    orders = [_omega(term)]
    for n in range(1, ctx.max_order + 1):
        term = _apply_r(term, ctx, cache, Scalar(0, -1) / n)
        if not term:
            total = ZERO
            for e in orders:
                total = total + e
            return StarResult(total, orders, True)
        orders.append(_omega(term))
    if not allow_truncation:
        raise TruncationNotDetected(ctx.max_order)
    total = ZERO
    for e in orders:
        total = total + e
    return StarResult(total, orders, False)


def star_product(f: Expr, g: Expr, ctx: TwistContext) -> Expr:
    """f * g = omega(F^{-1} |> (f (x) g)) with F = exp(i r)."""
    return star_series(f, g, ctx).value


def star_commutator(f: Expr, g: Expr, ctx: TwistContext) -> Expr:
    return star_product(f, g, ctx) - star_product(g, f, ctx)


# ---------------------------------------------------------------------------
# commutator tables


def coordinate_pairs(d: int) -> list[tuple[str, str]]:
    return [("t", f"x{a}") for a in range(1, d + 1)] + \
        [(f"x{a}", f"x{b}") for a, b in combinations(range(1, d + 1), 2)]


def coordinate(name: str) -> Expr:
    return t() if name == "t" else x(int(name[1:]))


@dataclass
class CommutatorTable:
    twist: int
    signature: str
    dim: int
    entries: dict  # (lhs name, rhs name) -> Expr
    fixed: tuple | None = None

    def __getitem__(self, pair) -> Expr:
        a, b = pair
        if a == b:
            return ZERO
        if (a, b) in self.entries:
            return self.entries[(a, b)]
        if (b, a) in self.entries:
            return -self.entries[(b, a)]
        raise KeyError(pair)

    def is_zero(self) -> bool:
        return all(not e for e in self.entries.values())

    def map(self, fn) -> "CommutatorTable":
        return CommutatorTable(self.twist, self.signature, self.dim,
                               {k: fn(v) for k, v in self.entries.items()}, self.fixed)

    def __eq__(self, other):
        return isinstance(other, CommutatorTable) and self.entries == other.entries

    def __str__(self):
        return "\n".join(f"[{a},{b}] = {to_plain(v)}" for (a, b), v in self.entries.items())


def spacetime_table(k: int, signature: str, d: int = 3, params=None, fixed=None,
                    max_order: int | None = None) -> CommutatorTable:
    ctx = make_context(k, signature, d, params, fixed, max_order)
    return table_from_context(ctx, k)


def table_from_context(ctx: TwistContext, k: int | None = None) -> CommutatorTable:
    entries = {}
    for a, b in coordinate_pairs(ctx.dim):
        entries[(a, b)] = star_commutator(coordinate(a), coordinate(b), ctx)
    return CommutatorTable(k if k is not None else (ctx.r.twist or 0), ctx.signature, ctx.dim,
                           entries, ctx.r.fixed)


# ---------------------------------------------------------------------------
# coproduct, antipode, cocycle, normalization


def _r_tensor(ctx: TwistContext) -> Tensor:
    return ctx.r.to_tensor(ctx.algebra)


@dataclass
class SeriesResult:
    value: object
    exact: bool
    order: int  # highest order with a nonzero contribution (or the cut-off)


def twisted_coproduct(g: Generator, ctx: TwistContext, series_order: int = 8) -> SeriesResult:
    """Delta_F(g) = sum_n ad_{ir}^n(Delta_0(g)) / n!."""
    if series_order < 1:
        raise InvalidInput("series_order must be >= 1")
    ir = _r_tensor(ctx).scale(I)
    term = primitive_coproduct(ctx.algebra, g)
    total = term
    last = 0
    for n in range(1, series_order + 1):
        term = ir.commutator(term).scale(Scalar(1) / n)
        if not term:
            return SeriesResult(total, True, last)
        total = total + term
        last = n
    # the next order decides whether the cut-off happened to be exact
    nxt = ir.commutator(term)
    return SeriesResult(total, not nxt, last)


def _grading(ctx: TwistContext) -> tuple[Tensor, bool]:
    """r as a tensor whose parameter degree counts the twist order.

    When r already carries degree-1 symbols they grade the series; numeric
    r-matrices are scaled by a formal symbol ``hbar``.
    """
    rt = _r_tensor(ctx)
    homogeneous = all(
        all(sum(e for a, e in p if a.kind == PARAM_KIND) == 1 for (p, _), _c in c.items())
        for c in rt.terms.values()
    )
    if homogeneous:
        return rt, False
    return rt.scale(sym("hbar")), True


def twist_element(ctx: TwistContext, order: int, inverse: bool = False) -> Tensor:
    rt, _ = _grading(ctx)
    return tensor_exp(rt.scale(Scalar(0, -1) if inverse else I), order)


def _drop_hbar(e: Expr) -> Expr:
    return e.subs({sym("hbar").terms[0].powers[0][0]: 1})


def twisted_antipode(g: Generator, ctx: TwistContext, series_order: int = 3) -> tuple[SeriesResult, UEAElement]:
    """S(g) = u S_0(g) u^{-1} with u = m (id (x) S_0)(F); returns (S(g), u)."""
    alg = ctx.algebra
    rt, graded = _grading(ctx)
    fmat = tensor_exp(rt.scale(I), series_order)
    u = fmat.map_slot(1, lambda w: antipode0_word(alg, w)).multiply_slots()
    u = u.truncate(series_order)
    unit = u.terms.get((), ZERO)
    lowest = unit.truncate_params(0)
    if lowest != 1:
        raise AssertionError("twist element u has order-0 part different from 1")
    w = u - UEAElement.one(alg)
    u_inv = UEAElement.one(alg)
    power = UEAElement.one(alg)
    for k in range(1, series_order + 1):
        power = power.multiply(-w, series_order)
        if not power:
            break
        u_inv = u_inv + power
    s0 = UEAElement.gen(alg, g, -1)
    result = u.multiply(s0, series_order).multiply(u_inv, series_order)
    if graded:
        result = UEAElement(alg, {k: _drop_hbar(v) for k, v in result.terms.items()})
        u = UEAElement(alg, {k: _drop_hbar(v) for k, v in u.terms.items()})
    exact = u == UEAElement.one(alg)
    return SeriesResult(result, exact, series_order), u


def verify_cocycle(ctx: TwistContext, order: int = 3) -> Tensor:
    """F_12 (Delta_0 (x) 1)(F) - F_23 (1 (x) Delta_0)(F), truncated at ``order``."""
    if order < 2:
        raise InvalidInput("cocycle order must be >= 2")
    alg = ctx.algebra
    fmat = twist_element(ctx, order)
    f12 = fmat.embed((0, 1), 3)
    f23 = fmat.embed((1, 2), 3)
    left = f12.multiply(fmat.map_slot(0, lambda w: coproduct0_word(alg, w)), order)
    right = f23.multiply(fmat.map_slot(1, lambda w: coproduct0_word(alg, w)), order)
    return left - right


def verify_normalization(ctx: TwistContext, order: int = 3) -> bool:
    fmat = twist_element(ctx, order)
    one1 = Tensor.one(ctx.algebra, 1)
    left = fmat.map_slot(0, counit0_word)
    right = fmat.map_slot(1, counit0_word)
    return left == one1 and right == one1


# ---------------------------------------------------------------------------
# classification

COMMUTATIVE, CONSTANT_THETA, LINEAR_THETA, TIME_QUANTUM = (
    "Commutative", "ConstantTheta", "LinearTheta", "TimeQuantum")


@dataclass
class NoncommClass:
    kind: str
    time_profile: Expr
    coordinate_degree: int  # degree in spatial coordinates of theta(x)
    spacetime_degree: int | None  # total degree in (t, x) when no C/S atoms remain

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "time_profile": to_plain(self.time_profile),
            "coordinate_degree": self.coordinate_degree,
            "spacetime_degree": self.spacetime_degree,
        }


def _is_matrix_param(atom) -> bool:
    return atom.kind == PARAM_KIND and "_" in atom.name


def _split_entry(e: Expr) -> dict:
    """{(param+x factors): time part} with the time part free of params and x."""
    return e.split_by(lambda a: a.kind in (PARAM_KIND, X_KIND))


def classify(table: CommutatorTable) -> NoncommClass:
    """Noncommutativity type and time profile f with [x_a, x_b] = i f theta_ab(x).

    theta is normalized as beta^{kl}(delta_ak delta_bl - delta_al delta_bk)
    (= 2 beta^{ab}) for matrix parameters and as beta times a unit-coefficient
    linear form for scalar parameters.
    """
    nonzero = {k: v for k, v in table.entries.items() if v}
    if not nonzero:
        return NoncommClass(COMMUTATIVE, ZERO, 0, 0)
    time_quantum = any(a == "t" and v for (a, _), v in nonzero.items())
    x_degree = max(
        sum(n for atom, n in p if atom.kind == X_KIND) for v in nonzero.values() for (p, _), _c in v.items()
    )
    has_atoms = any(atom.kind in TRANSCENDENTAL for v in nonzero.values() for atom in v.atoms())
    st_degree = None if has_atoms else max(
        sum(n for atom, n in p if atom.kind in COORDINATE) for v in nonzero.values() for (p, _), _c in v.items()
    )
    profile = None
    first = nonzero[sorted(nonzero)[0]]
    for key, part in sorted(_split_entry(first).items()):
        weight = 2 if any(_is_matrix_param(a) for a, _ in key) else 1
        # unit coefficient structure: divide by the leading rational of the time part
        profile = part.scale(Scalar(0, -1) / weight)
        break
    # a common time profile must factor every entry
    for v in nonzero.values():
        for key, part in _split_entry(v).items():
            weight = 2 if any(_is_matrix_param(a) for a, _ in key) else 1
            cand = part.scale(Scalar(0, -1) / weight)
            if not _proportional(cand, profile):
                profile = None
                break
        if profile is None:
            break
    if time_quantum:
        kind = TIME_QUANTUM
    elif x_degree == 0:
        kind = CONSTANT_THETA
    else:
        kind = LINEAR_THETA
    return NoncommClass(kind, profile if profile is not None else ZERO, x_degree, st_degree)


def _proportional(a: Expr, b: Expr) -> bool:
    """True if a = q*b for a rational (or Gaussian rational) q."""
    if not a or not b:
        return not a and not b
    ka = sorted(k for k, _ in a.items())
    kb = sorted(k for k, _ in b.items())
    if ka != kb:
        return False
    da, db = dict(a.items()), dict(b.items())
    ratio = da[ka[0]] / db[ka[0]]
    return all(da[k] == db[k] * ratio for k in ka)
