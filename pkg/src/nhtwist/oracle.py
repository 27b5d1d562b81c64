"""Independent numeric oracle for star commutators, built on sympy.

Nothing here reuses the exact engine: the realization, the r-matrices and the
twist series are rebuilt from scratch with sympy's cosh/cos/sinh/sin, the
series for F^{-1} = exp(-i r) is cut at a fixed order instead of being proven
finite, and results are evaluated at random rational points with 50 digits.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import sympy as sp

from .symbolic import PARAM_KIND, eval_numeric

# carriers per twist: matrix twists (left family, right family); rotation
# twists the vector family wedged with M_kl; 15 is M_ij ^ H
_PAIRS = {1: "RR", 2: "RF", 3: "RP", 4: "KR", 6: "FF", 7: "FP", 8: "KF", 10: "PP", 11: "KP", 12: "KK"}
_ROT = {5: "R", 9: "F", 13: "K", 14: "P"}

ORACLE_ORDER = 4
DIGITS = 50
ZERO_FLOOR = 1e-30


@dataclass(frozen=True)
class _Symbols:
    t: sp.Symbol
    tau: sp.Symbol
    xs: tuple


def _symbols(d: int) -> _Symbols:
    return _Symbols(sp.Symbol("t"), sp.Symbol("tau", positive=True),
                    tuple(sp.Symbol(f"x{i}") for i in range(1, d + 1)))


def _profile(family: str, signature: str, s: _Symbols):
    u = s.t / s.tau
    if signature == "galilei":
        return {"P": 1, "K": s.t, "F": s.t ** 2, "R": s.t ** 3}[family]
    e = 1 if signature == "nh+" else -1
    ch, sh = (sp.cosh(u), sp.sinh(u)) if e > 0 else (sp.cos(u), sp.sin(u))
    return {
        "P": ch,
        "K": s.tau * sh,
        "F": e * 2 * s.tau ** 2 * (ch - 1),
        "R": e * 6 * s.tau ** 3 * (sh - u),
    }[family]


def _operator(gen: tuple, signature: str, s: _Symbols):
    """Callable f -> rho(gen) f; gen is (family, i) or ("M", i, j) or ("H",)."""
    kind = gen[0]
    if kind == "H":
        return lambda f: sp.I * sp.diff(f, s.t)
    if kind == "M":
        i, j = gen[1], gen[2]
        xi, xj = s.xs[i - 1], s.xs[j - 1]
        return lambda f: sp.I * (xi * sp.diff(f, xj) - xj * sp.diff(f, xi))
    prof = _profile(kind, signature, s)
    xi = s.xs[gen[1] - 1]
    return lambda f: sp.I * prof * sp.diff(f, xi)


def _r_terms(k: int, d: int, fixed) -> list:
    """[(coefficient, left generator, right generator)] of r with symbolic betas."""
    terms = []
    if k in _PAIRS:
        a, b = _PAIRS[k]
        for p in range(1, d + 1):
            for q in range(1, d + 1):
                if p == q:
                    continue
                lo, hi = min(p, q), max(p, q)
                beta = sp.Symbol(f"beta{k}_{lo}{hi}") * (1 if p < q else -1)
                c = beta / 2
                terms += [(c, (a, p), (b, q)), (-c, (b, q), (a, p))]
        return terms
    beta = sp.Symbol(f"beta{k}")
    if k in _ROT:
        m, kk, ll = fixed or (3, 1, 2)
        rot = ("M", kk, ll)
        vec = (_ROT[k], m)
        return [(beta, vec, rot), (-beta, rot, vec)]
    i, j = fixed or (1, 2)
    rot = ("M", i, j)
    return [(beta, rot, ("H",)), (-beta, ("H",), rot)]


def _star(f, g, ops: list) -> sp.Expr:
    """omega(F^{-1} (f (x) g)) with exp(-i r) cut at ORACLE_ORDER."""
    level = [(sp.Integer(1), f, g)]
    total = f * g
    for n in range(1, ORACLE_ORDER + 1):
        nxt = []
        for c, a_f, b_g in level:
            for coeff, op_a, op_b in ops:
                fa = op_a(a_f)
                if fa == 0:
                    continue
                gb = op_b(b_g)
                if gb == 0:
                    continue
                nxt.append((c * coeff * (-sp.I) / n, fa, gb))
        if not nxt:
            break
        total += sum(c * fa * gb for c, fa, gb in nxt)
        level = nxt
    return total


@lru_cache(maxsize=None)
def oracle_commutator(k: int, signature: str, d: int, lhs: str, rhs: str, fixed=None) -> sp.Expr:
    """Symbolic-in-parameters sympy expression for [lhs, rhs]_star."""
    s = _symbols(d)
    coords = {"t": s.t, **{f"x{i}": s.xs[i - 1] for i in range(1, d + 1)}}
    ops = [(c, _operator(a, signature, s), _operator(b, signature, s)) for c, a, b in _r_terms(k, d, fixed)]
    f, g = coords[lhs], coords[rhs]
    return sp.expand(_star(f, g, ops) - _star(g, f, ops))


def random_point(rng: random.Random, d: int, params: list[str], signature: str) -> dict:
    """Random rational point: t in (0.1, 2), tau in (1, 3), x in (-2, 2), betas in (-1, 1)."""
    def q(lo, hi):
        return Fraction(rng.randint(int(lo * 1000), int(hi * 1000)), 1000)

    pt = {"t": q(0.1, 2)}
    if signature != "galilei":
        pt["tau"] = q(1, 3)
    for i in range(1, d + 1):
        pt[f"x{i}"] = q(-2, 2)
    for name in params:
        pt[name] = q(-1, 1)
    return pt


def _close(a: complex, b: complex, rel: float) -> bool:
    scale = max(abs(a), abs(b))
    if scale < ZERO_FLOOR:
        return True
    return abs(a - b) <= rel * scale


@dataclass
class OracleResult:
    pair: tuple
    points: int
    max_rel_error: float
    ok: bool


def check_entry(table, pair, points: int = 10, rel: float = 1e-10, seed: int = 0) -> OracleResult:
    """Compare a table entry with the oracle at random rational points."""
    expr = oracle_commutator(table.twist, table.signature, table.dim, pair[0], pair[1],
                             tuple(table.fixed) if table.fixed else None)
    entry = table.entries[pair]
    names = sorted({str(sym) for sym in expr.free_symbols if str(sym).startswith("beta")}
                   | {a.name for a in entry.atoms() if a.kind == PARAM_KIND})
    rng = random.Random(f"{seed}:{table.twist}:{table.signature}:{pair}")
    worst = 0.0
    ok = True
    sym_by_name = {str(sym): sym for sym in expr.free_symbols}
    for _ in range(points):
        pt = random_point(rng, table.dim, names, table.signature)
        subs = {sym_by_name[n]: sp.Rational(v.numerator, v.denominator)
                for n, v in pt.items() if n in sym_by_name}
        want = complex(sp.N(expr.subs(subs), DIGITS))
        bindings = {n: v for n, v in pt.items() if n != "tau"}
        got = eval_numeric(entry, bindings, pt.get("tau"), dps=DIGITS)
        scale = max(abs(want), abs(got))
        err = 0.0 if scale < ZERO_FLOOR else abs(want - got) / scale
        worst = max(worst, err)
        ok = ok and _close(want, got, rel)
    return OracleResult(pair, points, worst, ok)


def check_table(table, points: int = 10, rel: float = 1e-10, seed: int = 0) -> list[OracleResult]:
    return [check_entry(table, pair, points, rel, seed) for pair in table.entries]
