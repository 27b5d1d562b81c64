"""Exact canonical-form expressions over the Gaussian rationals.

An :class:`Expr` is a finite sum of monomials.  A monomial carries a
Gaussian-rational coefficient, a map from :class:`Atom` to positive integer
exponents, and a signed power of the cosmological time scale ``tau``.  The
atoms are the time coordinate ``t``, spatial coordinates ``x_i``, formal
parameters, and the four transcendental functions of ``t/tau``::

    C+ = cosh(t/tau)   C- = cos(t/tau)   S+ = sinh(t/tau)   S- = sin(t/tau)

Canonical form: like terms merged, zero coefficients dropped, atoms inside a
monomial sorted by ``(kind, index, name)`` with kinds ordered
``t < x_1 < ... < x_d < parameters (by name) < C+ < C- < S+ < S-``, and
monomials listed in increasing order of ``(powers, tau_power)``.  No
trigonometric identities are applied, so equality is syntactic.

Rendering grammar (plain)::

    expr    := "0" | term (("+" | "-") term)*
    term    := coeff ("*" factor)*  |  factor ("*" factor)*
    factor  := atom ["^" int]
    atom    := "t" | "x" digit+ | "tau" | name | ("C" | "S") ("+" | "-")
    coeff   := rational | rational "i" | "(" rational ("+"|"-") rational "i" ")"
"""
from __future__ import annotations

import cmath
import math
import re
from contextlib import nullcontext as _nullcontext
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, NamedTuple, Union

import mpmath

from .errors import DivergentLimit, UnboundAtom, UndecidedOrder

# ---------------------------------------------------------------------------
# Gaussian rationals


class Scalar:
    """Exact Gaussian rational ``re + i*im``."""

    __slots__ = ("re", "im")

    def __init__(self, re: Union[int, Fraction, str] = 0, im: Union[int, Fraction, str] = 0):
        self.re = re if type(re) is Fraction else Fraction(re)
        self.im = im if type(im) is Fraction else Fraction(im)

    @classmethod
    def coerce(cls, value) -> "Scalar":
        if isinstance(value, Scalar):
            return value
        if isinstance(value, (int, Fraction)):
            return cls(value)
        if isinstance(value, str):
            return parse_scalar(value)
        raise TypeError(f"cannot use {value!r} as an exact scalar")

    def __add__(self, other):
        other = Scalar.coerce(other)
        return Scalar(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = Scalar.coerce(other)
        return Scalar(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return Scalar.coerce(other) - self

    def __mul__(self, other):
        other = Scalar.coerce(other)
        if not self.im and not other.im:
            return Scalar(self.re * other.re)
        return Scalar(self.re * other.re - self.im * other.im, self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = Scalar.coerce(other)
        n = other.re * other.re + other.im * other.im
        if not n:
            raise ZeroDivisionError("division by zero scalar")
        num = self * other.conjugate()
        return Scalar(num.re / n, num.im / n)

    def __neg__(self):
        return Scalar(-self.re, -self.im)

    def conjugate(self) -> "Scalar":
        return Scalar(self.re, -self.im)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return not self.im and self.re == other
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"Scalar({format_scalar(self)})"


I = Scalar(0, 1)
ONE = Scalar(1)


def _frac_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_scalar(s: Scalar) -> str:
    if not s.im:
        return _frac_str(s.re)
    if not s.re:
        if s.im == 1:
            return "i"
        if s.im == -1:
            return "-i"
        if s.im.denominator == 1:
            return f"{s.im.numerator}i"
        return f"{s.im.numerator}i/{s.im.denominator}"
    im = format_scalar(Scalar(0, abs(s.im)))
    return f"({_frac_str(s.re)}{'-' if s.im < 0 else '+'}{im})"


_SCALAR_RE = re.compile(r"^\s*([+-]?)\s*(\d+(?:/\d+)?)?\s*(\*?\s*i)?\s*(?:/\s*(\d+))?\s*$")


def parse_scalar(text: str) -> Scalar:
    """Parse ``3``, ``-1/2``, ``i``, ``2i``, ``-3i/2`` or ``1/2*i``."""
    m = _SCALAR_RE.match(text)
    if not m or (m.group(2) is None and m.group(3) is None):
        raise ValueError(f"not an exact scalar: {text!r}")
    sign, num, imag, den = m.groups()
    q = Fraction(num) if num else Fraction(1)
    if den:
        q /= int(den)
    if sign == "-":
        q = -q
    return Scalar(0, q) if imag else Scalar(q)


# ---------------------------------------------------------------------------
# Atoms

T_KIND, X_KIND, PARAM_KIND, CPLUS_KIND, CMINUS_KIND, SPLUS_KIND, SMINUS_KIND = range(7)
TRANSCENDENTAL = (CPLUS_KIND, CMINUS_KIND, SPLUS_KIND, SMINUS_KIND)
COORDINATE = (T_KIND, X_KIND)


class Atom(NamedTuple):
    kind: int
    index: int = 0
    name: str = ""

    def __str__(self):
        return atom_name(self)


T = Atom(T_KIND, 0, "t")
CPLUS = Atom(CPLUS_KIND, 0, "C+")
CMINUS = Atom(CMINUS_KIND, 0, "C-")
SPLUS = Atom(SPLUS_KIND, 0, "S+")
SMINUS = Atom(SMINUS_KIND, 0, "S-")


def x_atom(i: int) -> Atom:
    if i < 1:
        raise ValueError(f"spatial index must be >= 1, got {i}")
    return Atom(X_KIND, i, f"x{i}")


def param_atom(name: str) -> Atom:
    if not name or name == "tau" or name == "t" or name == "i" or re.fullmatch(r"x\d+|[CS][+-]", name):
        raise ValueError(f"reserved or empty parameter name: {name!r}")
    return Atom(PARAM_KIND, 0, name)


def atom_name(a: Atom) -> str:
    return a.name


def atom_from_name(name: str) -> Atom:
    if name == "t":
        return T
    if name in ("C+", "C-", "S+", "S-"):
        return {"C+": CPLUS, "C-": CMINUS, "S+": SPLUS, "S-": SMINUS}[name]
    m = re.fullmatch(r"x(\d+)", name)
    if m:
        return x_atom(int(m.group(1)))
    return param_atom(name)


# ---------------------------------------------------------------------------
# Expressions

Key = tuple  # (powers: tuple[(Atom, int), ...], tau_power: int)
_UNIT_KEY: Key = ((), 0)


def _mul_keys(k1: Key, k2: Key) -> Key:
    p1, t1 = k1
    p2, t2 = k2
    if not p2:
        return (p1, t1 + t2)
    if not p1:
        return (p2, t1 + t2)
    merged = dict(p1)
    for a, e in p2:
        merged[a] = merged.get(a, 0) + e
    return (tuple(sorted(merged.items())), t1 + t2)


@lru_cache(maxsize=None)
def _key_param_degree(k: Key) -> int:
    return sum(e for a, e in k[0] if a.kind == PARAM_KIND)


class Monomial(NamedTuple):
    coeff: Scalar
    powers: tuple
    tau_power: int


class Expr:
    """Immutable canonical polynomial; see module docstring for the order."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Key, Scalar] | None = None):
        # callers hand over ownership of ``terms``; zero coefficients are dropped
        if terms:
            self._terms = {k: v for k, v in terms.items() if v}
        else:
            self._terms = {}
        self._hash = None

    # -- construction -------------------------------------------------------
    @classmethod
    def const(cls, value) -> "Expr":
        s = Scalar.coerce(value)
        return cls({_UNIT_KEY: s}) if s else ZERO

    @classmethod
    def atom(cls, a: Atom, power: int = 1) -> "Expr":
        if power < 0:
            raise ValueError("atoms take non-negative powers; only tau may be inverted")
        if power == 0:
            return cls.const(1)
        return cls({(((a, power),), 0): ONE})

    @classmethod
    def tau(cls, power: int = 1) -> "Expr":
        return cls({((), power): ONE})

    @classmethod
    def coerce(cls, value) -> "Expr":
        if isinstance(value, Expr):
            return value
        if isinstance(value, Atom):
            return cls.atom(value)
        return cls.const(value)

    # -- inspection ---------------------------------------------------------
    @property
    def terms(self) -> list[Monomial]:
        return [Monomial(c, k[0], k[1]) for k, c in sorted(self._terms.items(), key=lambda kv: kv[0])]

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def atoms(self) -> set[Atom]:
        return {a for (p, _), _c in self._terms.items() for a, _e in p}

    def max_tau_power(self) -> int:
        return max((k[1] for k in self._terms), default=0)

    def param_degree(self) -> int:
        """Highest total degree in parameter atoms over all monomials."""
        return max((_key_param_degree(k) for k in self._terms), default=0)

    def constant_value(self) -> Scalar | None:
        """The scalar if the expression has no atoms and no tau, else None."""
        if not self._terms:
            return Scalar(0)
        if len(self._terms) == 1 and _UNIT_KEY in self._terms:
            return self._terms[_UNIT_KEY]
        return None

    # -- ring operations ----------------------------------------------------
    def __add__(self, other):
        other = Expr.coerce(other)
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for k, c in other._terms.items():
            prev = out.get(k)
            out[k] = c if prev is None else prev + c
        return Expr(out)

    __radd__ = __add__

    def __neg__(self):
        return Expr({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-Expr.coerce(other))

    def __rsub__(self, other):
        return Expr.coerce(other) - self

    def scale(self, s) -> "Expr":
        s = Scalar.coerce(s)
        if not s:
            return ZERO
        return Expr({k: c * s for k, c in self._terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Expr):
            if isinstance(other, Atom):
                other = Expr.atom(other)
            else:
                return self.scale(other)
        if not self._terms or not other._terms:
            return ZERO
        out: dict = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                k = _mul_keys(k1, k2)
                c = c1 * c2
                prev = out.get(k)
                out[k] = c if prev is None else prev + c
        return Expr(out)

    __rmul__ = __mul__

    def mul_truncated(self, other: "Expr", order: int) -> "Expr":
        """``(self * other).truncate_params(order)`` without forming the dropped terms."""
        out: dict = {}
        right = [(k2, c2, _key_param_degree(k2)) for k2, c2 in other._terms.items()]
        for k1, c1 in self._terms.items():
            room = order - _key_param_degree(k1)
            if room < 0:
                continue
            for k2, c2, d2 in right:
                if d2 > room:
                    continue
                k = _mul_keys(k1, k2)
                c = c1 * c2
                prev = out.get(k)
                out[k] = c if prev is None else prev + c
        return Expr(out)

    def min_param_degree(self) -> int:
        return min((_key_param_degree(k) for k in self._terms), default=0)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers of expressions")
        result = ONE_EXPR
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, Expr):
            try:
                other = Expr.coerce(other)
            except TypeError:
                return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self):
        return f"Expr({to_plain(self)})"

    def __str__(self):
        return to_plain(self)

    # -- transformations ----------------------------------------------------
    def subs(self, mapping: Mapping[Atom, object]) -> "Expr":
        """Substitute atoms by expressions (or numbers)."""
        repl = {a: Expr.coerce(v) for a, v in mapping.items()}
        out = ZERO
        for (powers, tp), c in self._terms.items():
            term = Expr({((), tp): c})
            rest = []
            for a, e in powers:
                if a in repl:
                    term = term * repl[a] ** e
                else:
                    rest.append((a, e))
            if rest:
                term = term * Expr({(tuple(rest), 0): ONE})
            out = out + term
        return out

    def truncate_params(self, order: int) -> "Expr":
        """Drop monomials whose parameter degree exceeds ``order``."""
        return Expr({k: c for k, c in self._terms.items() if _key_param_degree(k) <= order})

    def split_by(self, keep) -> dict:
        """Group monomials by the factors for which ``keep(atom)`` is true.

        Returns ``{key_of_kept_factors: Expr_of_remaining_factors}``; tau
        stays with the remainder.
        """
        groups: dict = {}
        for (powers, tp), c in self._terms.items():
            kept = tuple((a, e) for a, e in powers if keep(a))
            rest = tuple((a, e) for a, e in powers if not keep(a))
            groups.setdefault(kept, {})[(rest, tp)] = c
        return {k: Expr(v) for k, v in groups.items()}


ZERO = Expr()
ONE_EXPR = Expr({_UNIT_KEY: ONE})


def const(value) -> Expr:
    return Expr.const(value)


def t() -> Expr:
    return Expr.atom(T)


def x(i: int) -> Expr:
    return Expr.atom(x_atom(i))


def sym(name: str) -> Expr:
    return Expr.atom(param_atom(name))


def tau(power: int = 1) -> Expr:
    return Expr.tau(power)


def C(sign: int) -> Expr:
    """cosh(t/tau) for sign=+1, cos(t/tau) for sign=-1."""
    return Expr.atom(CPLUS if sign > 0 else CMINUS)


def S(sign: int) -> Expr:
    return Expr.atom(SPLUS if sign > 0 else SMINUS)


IMAG = Expr.const(I)


def normalize(e) -> Expr:
    """Canonicalize a raw expression tree.

    Accepts an :class:`Expr`, :class:`Atom`, exact number, or nested tuples
    ``("+", a, b, ...)``, ``("*", a, b, ...)``, ``("-", a)``, ``("^", a, n)``
    and ``("tau", n)``.
    """
    if isinstance(e, tuple) and e and isinstance(e[0], str):
        op, *args = e
        if op == "+":
            out = ZERO
            for a in args:
                out = out + normalize(a)
            return out
        if op == "*":
            out = ONE_EXPR
            for a in args:
                out = out * normalize(a)
            return out
        if op == "-" and len(args) == 1:
            return -normalize(args[0])
        if op == "-" and len(args) == 2:
            return normalize(args[0]) - normalize(args[1])
        if op == "^":
            base, n = args
            return normalize(base) ** n
        if op == "tau":
            return Expr.tau(args[0])
        raise ValueError(f"unknown operator {op!r}")
    return Expr.coerce(e)


# ---------------------------------------------------------------------------
# Differentiation

# d/dt of each transcendental atom is a single monomial: (coeff, new atom), times 1/tau
_DT_RULES = {
    CPLUS: (Scalar(1), SPLUS),
    CMINUS: (Scalar(-1), SMINUS),
    SPLUS: (Scalar(1), CPLUS),
    SMINUS: (Scalar(1), CMINUS),
}


def _diff(e: Expr, target: Atom) -> Expr:
    out: dict = {}
    for (powers, tp), c in e.items():
        for idx, (a, n) in enumerate(powers):
            if a == target:
                new_atom, shift, factor = None, 0, Scalar(n)
            elif target is T and a in _DT_RULES:
                sc, new_atom = _DT_RULES[a]
                shift, factor = -1, sc * n
            else:
                continue
            rest = list(powers)
            if n == 1:
                del rest[idx]
            else:
                rest[idx] = (a, n - 1)
            key = (tuple(rest), tp + shift)
            if new_atom is not None:
                key = _mul_keys(key, (((new_atom, 1),), 0))
            val = c * factor
            prev = out.get(key)
            out[key] = val if prev is None else prev + val
    return Expr(out)


def diff_t(e: Expr) -> Expr:
    """Time derivative; d/dt C± = ±S±/tau and d/dt S± = C±/tau."""
    return _diff(e, T)


def diff_x(e: Expr, i: int, dim: int | None = None) -> Expr:
    if i < 1 or (dim is not None and i > dim):
        raise IndexError(f"spatial index {i} out of range 1..{dim}")
    return _diff(e, x_atom(i))


def diff_param(e: Expr, name: str) -> Expr:
    return _diff(e, param_atom(name))


# ---------------------------------------------------------------------------
# Series in t/tau and the tau -> infinity limit


def _atom_series(a: Atom, order: int) -> dict[int, Fraction]:
    """Coefficients of u^k (u = t/tau) for one transcendental atom, k <= order."""
    plus = a.kind in (CPLUS_KIND, SPLUS_KIND)
    start = 0 if a.kind in (CPLUS_KIND, CMINUS_KIND) else 1
    out = {}
    for k in range(start, order + 1, 2):
        sign = 1 if plus or ((k - start) // 2) % 2 == 0 else -1
        out[k] = Fraction(sign, math.factorial(k))
    return out


def _series_mul(p: dict[int, Fraction], q: dict[int, Fraction], order: int) -> dict[int, Fraction]:
    out: dict[int, Fraction] = {}
    for i, a in p.items():
        for j, b in q.items():
            if i + j <= order:
                out[i + j] = out.get(i + j, 0) + a * b
    return {k: v for k, v in out.items() if v}


def taylor_atoms(e: Expr, order: int) -> Expr:
    """Replace C±, S± by their series in t/tau, truncated at total order ``order``.

    The truncation applies to the combined series order of each monomial, so
    every monomial is reproduced up to O((t/tau)^(order+1)).
    """
    if order < 0:
        raise ValueError("order must be >= 0")
    cache: dict = {}
    out: dict = {}
    for (powers, tp), c in e.items():
        series = {0: Fraction(1)}
        plain = []
        for a, n in powers:
            if a.kind in TRANSCENDENTAL:
                key = (a, n)
                if key not in cache:
                    s = {0: Fraction(1)}
                    for _ in range(n):
                        s = _series_mul(s, _atom_series(a, order), order)
                    cache[key] = s
                series = _series_mul(series, cache[key], order)
            else:
                plain.append((a, n))
        base = (tuple(plain), tp)
        for k, q in series.items():
            key = _mul_keys(base, (((T, k),) if k else (), -k))
            val = c * Scalar(q)
            prev = out.get(key)
            out[key] = val if prev is None else prev + val
    return Expr(out)


def limit_tau_inf(e: Expr, bound: int = 16) -> Expr:
    """Leading tau^0 coefficient of ``e`` as tau -> infinity at fixed t.

    A monomial tau^p * (atoms) contributes to tau^0 only through series order
    k = p, and to positive powers only through k < p, so expanding to order
    max(p) decides every surviving power exactly.
    """
    needed = max(0, e.max_tau_power())
    if needed > bound:
        raise UndecidedOrder(f"limit needs series order {needed} > bound {bound}")
    expanded = taylor_atoms(e, needed)
    divergent = {k: c for k, c in expanded.items() if k[1] > 0}
    if divergent:
        worst = max(k[1] for k in divergent)
        raise DivergentLimit(f"tau^{worst} survives in the limit: {to_plain(Expr(divergent))}")
    return Expr({k: c for k, c in expanded.items() if k[1] == 0})


# ---------------------------------------------------------------------------
# Numeric evaluation

_NUMERIC_FUNCS = {
    CPLUS_KIND: cmath.cosh,
    CMINUS_KIND: cmath.cos,
    SPLUS_KIND: cmath.sinh,
    SMINUS_KIND: cmath.sin,
}


def eval_numeric(e: Expr, bindings: Mapping, tau: complex | float | None = None,
                 dps: int | None = None) -> complex:
    """Evaluate numerically; ``bindings`` keys may be Atoms or atom names.

    ``t`` must be bound whenever a transcendental atom appears; ``tau`` is
    required whenever tau or a transcendental atom appears.  With ``dps`` the
    sum is accumulated in mpmath at that many digits (bindings may then be
    Fractions, kept exact on input) and rounded to a complex float at the end.
    """
    if dps is None:
        conv, funcs = complex, _NUMERIC_FUNCS
    else:
        conv, funcs = _mp_value, _MP_FUNCS
    with (mpmath.workdps(dps) if dps else _nullcontext()):
        vals = {}
        for k, v in bindings.items():
            vals[k if isinstance(k, Atom) else atom_from_name(k)] = conv(v)
        tau_v = None if tau is None else conv(tau)
        total = conv(0)
        for (powers, tp), c in e.items():
            term = conv(c.re) + conv(c.im) * 1j if dps else complex(c)
            if tp:
                if tau_v is None:
                    raise UnboundAtom("tau")
                term *= tau_v ** tp
            for a, n in powers:
                if a.kind in TRANSCENDENTAL:
                    if T not in vals:
                        raise UnboundAtom("t")
                    if tau_v is None:
                        raise UnboundAtom("tau")
                    v = funcs[a.kind](vals[T] / tau_v)
                else:
                    if a not in vals:
                        raise UnboundAtom(a.name)
                    v = vals[a]
                term *= v ** n
            total += term
        return complex(total)


def _mp_value(v):
    if isinstance(v, Fraction):
        return mpmath.mpf(v.numerator) / v.denominator
    if isinstance(v, Scalar):
        return mpmath.mpc(_mp_value(v.re), _mp_value(v.im))
    if isinstance(v, complex):
        return mpmath.mpc(v)
    return mpmath.mpf(v)


_MP_FUNCS = {
    CPLUS_KIND: mpmath.cosh,
    CMINUS_KIND: mpmath.cos,
    SPLUS_KIND: mpmath.sinh,
    SMINUS_KIND: mpmath.sin,
}


# ---------------------------------------------------------------------------
# Rendering

_LATEX_FUNC = {
    CPLUS_KIND: r"C_{+}\left(\frac{t}{\tau}\right)",
    CMINUS_KIND: r"C_{-}\left(\frac{t}{\tau}\right)",
    SPLUS_KIND: r"S_{+}\left(\frac{t}{\tau}\right)",
    SMINUS_KIND: r"S_{-}\left(\frac{t}{\tau}\right)",
}
_BETA_RE = re.compile(r"^beta(\d+)(?:_(\d)(\d))?$")


def _latex_atom(a: Atom) -> str:
    if a.kind == T_KIND:
        return "t"
    if a.kind == X_KIND:
        return f"x_{{{a.index}}}"
    if a.kind in _LATEX_FUNC:
        return _LATEX_FUNC[a.kind]
    m = _BETA_RE.match(a.name)
    if m:
        sup = f"^{{{m.group(2)}{m.group(3)}}}" if m.group(2) else ""
        return rf"\beta_{{{m.group(1)}}}{sup}"
    return a.name


def _render(e: Expr, latex: bool) -> str:
    if not e:
        return "0"
    pieces = []
    for mono in e.terms:
        factors = []
        if mono.tau_power:
            if latex:
                factors.append(r"\tau" if mono.tau_power == 1 else rf"\tau^{{{mono.tau_power}}}")
            else:
                factors.append("tau" if mono.tau_power == 1 else f"tau^{mono.tau_power}")
        for a, n in mono.powers:
            if latex:
                base = _latex_atom(a)
                if n != 1:
                    base = f"{base}^{{{n}}}" if a.kind not in TRANSCENDENTAL else \
                        base.replace(r"\left(", f"^{{{n}}}\\left(", 1)
            else:
                base = a.name if n == 1 else f"{a.name}^{n}"
            factors.append(base)
        c = mono.coeff
        negative = (c.re < 0) if c.re else (c.im < 0)
        mag = -c if negative else c
        body_sep = " " if latex else "*"
        if mag == 1 and factors:
            body = body_sep.join(factors)
        else:
            cs = _latex_scalar(mag) if latex else format_scalar(mag)
            body = body_sep.join([cs] + factors)
        pieces.append(("-" if negative else "+", body))
    out = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


def _latex_scalar(s: Scalar) -> str:
    def q(v: Fraction) -> str:
        if v.denominator == 1:
            return str(v.numerator)
        return rf"\frac{{{v.numerator}}}{{{v.denominator}}}"

    if not s.im:
        return q(s.re)
    if not s.re:
        return "i" if s.im == 1 else f"{q(s.im)} i"
    return rf"\left({q(s.re)} {'-' if s.im < 0 else '+'} {q(abs(s.im))} i\right)"


def to_plain(e: Expr) -> str:
    return _render(e, latex=False)


def to_latex(e: Expr) -> str:
    return _render(e, latex=True)


def to_json_ast(e: Expr) -> dict:
    """JSON-serializable AST; rationals are strings so no floats appear."""
    return {
        "terms": [
            {
                "re": _frac_str(m.coeff.re),
                "im": _frac_str(m.coeff.im),
                "tau": m.tau_power,
                "factors": [[a.name, n] for a, n in m.powers],
            }
            for m in e.terms
        ]
    }


def from_json_ast(doc: dict) -> Expr:
    out: dict = {}
    for term in doc["terms"]:
        powers = tuple(sorted((atom_from_name(name), int(n)) for name, n in term["factors"]))
        out[(powers, int(term["tau"]))] = Scalar(Fraction(term["re"]), Fraction(term["im"]))
    return Expr(out)


def coordinate_degree(e: Expr, atoms: Iterable[int] = COORDINATE) -> int:
    kinds = set(atoms)
    return max((sum(n for a, n in p if a.kind in kinds) for p, _ in e._terms), default=0)
