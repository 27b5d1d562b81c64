"""Structure-constant tables for the doubly enlarged Newton-Hooke and Galilei algebras.

Generators are rotations ``M_ij`` (i<j), boosts ``K_i``, translations ``P_i``,
accelerations ``F_i``, the cubic-in-time generators ``R_i`` and the Hamiltonian
``H``.  Brackets are stored as linear combinations ``{Generator: Expr}`` whose
coefficients involve only Gaussian rationals, ``tau`` and parameters.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Iterable, Mapping

from .errors import InvalidInput
from .symbolic import I, ZERO, Expr, Scalar, param_atom, parse_scalar, to_plain

Combo = dict  # Generator -> Expr


@dataclass(frozen=True)
class Generator:
    kind: str
    i: int = 0
    j: int = 0

    @property
    def name(self) -> str:
        if self.j:
            return f"{self.kind}{self.i}{self.j}"
        if self.i:
            return f"{self.kind}{self.i}"
        return self.kind

    def latex(self) -> str:
        if self.j:
            return f"{self.kind}_{{{self.i}{self.j}}}"
        if self.i:
            return f"{self.kind}_{{{self.i}}}"
        return self.kind

    def __str__(self):
        return self.name

    def __repr__(self):
        return self.name


def P(i):
    return Generator("P", i)


def K(i):
    return Generator("K", i)


def F(i):
    return Generator("F", i)


def R(i):
    return Generator("R", i)


H = Generator("H")


def M(i: int, j: int) -> tuple[int, Generator]:
    """Rotation generator with sign resolution: ``M(2, 1) == (-1, M_12)``."""
    if i == j:
        raise InvalidInput("M_ii is not a generator")
    return (1, Generator("M", i, j)) if i < j else (-1, Generator("M", j, i))


_NAME_RE = re.compile(r"^([A-Za-z]+)_?(\d*)$")


def parse_generator(name: str) -> tuple[int, Generator]:
    """Parse ``P1``, ``K_2``, ``M12``, ``M_21`` (-> -M_12) or ``H``."""
    m = _NAME_RE.match(name.strip())
    if not m:
        raise InvalidInput(f"bad generator name {name!r}")
    kind, digits = m.groups()
    if kind == "M":
        if len(digits) != 2:
            raise InvalidInput(f"rotation generator needs two indices: {name!r}")
        return M(int(digits[0]), int(digits[1]))
    if len(digits) > 1:
        raise InvalidInput(f"only single-digit indices are supported: {name!r}")
    return 1, Generator(kind, int(digits) if digits else 0)


SIGNATURES = ("nh+", "nh-", "galilei")
_SIG_ALIASES = {
    "nh+": "nh+", "nhplus": "nh+", "+": "nh+",
    "nh-": "nh-", "nh−": "nh-", "nhminus": "nh-", "-": "nh-",
    "galilei": "galilei", "g": "galilei",
}


def canonical_signature(sig: str) -> str:
    try:
        return _SIG_ALIASES[sig.strip().lower()]
    except KeyError:
        raise InvalidInput(f"unknown signature {sig!r}; expected one of {SIGNATURES}") from None


def signature_sign(sig: str) -> int:
    """+1 for NH+, -1 for NH-, 0 for Galilei."""
    return {"nh+": 1, "nh-": -1, "galilei": 0}[canonical_signature(sig)]


# ---------------------------------------------------------------------------
# linear combinations of generators


def combo_add(a: Combo, b: Combo) -> Combo:
    out = dict(a)
    for g, c in b.items():
        out[g] = out[g] + c if g in out else c
    return {g: c for g, c in out.items() if c}


def combo_scale(a: Combo, s) -> Combo:
    s = Expr.coerce(s)
    return {g: c * s for g, c in a.items() if c * s}


def combo_str(a: Combo) -> str:
    if not a:
        return "0"
    return " + ".join(f"({to_plain(c)})*{g.name}" for g, c in a.items())


@dataclass(eq=False)
class LieAlgebra:
    dim: int
    signature: str
    generators: tuple
    brackets: dict = field(default_factory=dict)
    _rank: dict = field(default_factory=dict, repr=False)
    # per-instance memo for PBW normal ordering (see uea.normal_order)
    _nf_cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._rank = {g: n for n, g in enumerate(self.generators)}

    def rank(self, g: Generator) -> int:
        return self._rank[g]

    def __contains__(self, g):
        return g in self._rank

    def bracket(self, a: Generator, b: Generator) -> Combo:
        return self.brackets.get((a, b), {})

    def bracket_combo(self, x: Combo, y: Combo) -> Combo:
        out: Combo = {}
        for a, ca in x.items():
            for b, cb in y.items():
                br = self.bracket(a, b)
                if br:
                    out = combo_add(out, combo_scale(br, ca * cb))
        return out

    def nonzero_brackets(self) -> list[tuple[Generator, Generator, Combo]]:
        """Each nonzero bracket once, with the lower-ranked generator first."""
        return [(a, b, c) for (a, b), c in sorted(self.brackets.items(),
                                                  key=lambda kv: (self._rank[kv[0][0]], self._rank[kv[0][1]]))
                if self._rank[a] < self._rank[b]]

    def with_bracket(self, a: Generator, b: Generator, value: Combo) -> "LieAlgebra":
        """Copy with [a, b] replaced (and [b, a] set antisymmetrically)."""
        br = {k: dict(v) for k, v in self.brackets.items()}
        value = {g: c for g, c in value.items() if c}
        for key, val in (((a, b), value), ((b, a), combo_scale(value, -1))):
            if val:
                br[key] = val
            else:
                br.pop(key, None)
        return LieAlgebra(self.dim, self.signature, self.generators, br)

    def map_coefficients(self, fn) -> "LieAlgebra":
        br = {}
        for key, val in self.brackets.items():
            new = {g: fn(c) for g, c in val.items()}
            new = {g: c for g, c in new.items() if c}
            if new:
                br[key] = new
        return LieAlgebra(self.dim, self.signature, self.generators, br)

    def same_table(self, other: "LieAlgebra") -> bool:
        return self.generators == other.generators and self.brackets == other.brackets


def _put(table: dict, a: Generator, b: Generator, value: Combo) -> None:
    value = {g: c for g, c in value.items() if c}
    if not value:
        return
    for key, val in (((a, b), value), ((b, a), combo_scale(value, -1))):
        if key in table and table[key] != val:
            raise AssertionError(f"conflicting entries for [{key[0]}, {key[1]}]")
        table[key] = val


def build_algebra(signature: str, d: int) -> LieAlgebra:
    """Bracket table of the doubly enlarged NH+/NH- algebra or its Galilei contraction."""
    sig = canonical_signature(signature)
    if not isinstance(d, int) or d < 1:
        raise InvalidInput(f"spatial dimension must be a positive integer, got {d!r}")
    eps = signature_sign(sig)
    idx = range(1, d + 1)
    rotations = [M(i, j)[1] for i, j in combinations(idx, 2)]
    gens = tuple([P(i) for i in idx] + [K(i) for i in idx] + [F(i) for i in idx]
                 + [R(i) for i in idx] + rotations + [H])
    iu = Expr.const(I)
    table: dict = {}

    def delta(p, q):
        return 1 if p == q else 0

    def rot(p, q, coeff) -> Combo:
        if p == q or not coeff:
            return {}
        s, g = M(p, q)
        return {g: iu.scale(s * coeff)}

    for m1 in rotations:
        i, j = m1.i, m1.j
        for m2 in rotations:
            k, l = m2.i, m2.j
            val: Combo = {}
            for part in (rot(j, k, delta(i, l)), rot(i, k, -delta(j, l)),
                         rot(i, l, delta(j, k)), rot(j, l, -delta(i, k))):
                val = combo_add(val, part)
            _put(table, m1, m2, val)
        for vec in (K, P, F, R):
            for k in idx:
                val = combo_add({vec(i): iu} if delta(j, k) else {},
                                {vec(j): -iu} if delta(i, k) else {})
                _put(table, m1, vec(k), val)
    for i in idx:
        _put(table, K(i), H, {P(i): -iu})
        _put(table, H, F(i), {K(i): iu.scale(2)})
        _put(table, H, R(i), {F(i): iu.scale(3)})
        if eps:
            _put(table, H, P(i), {K(i): iu.scale(eps) * Expr.tau(-2)})
    return LieAlgebra(d, sig, gens, table)


def verify_jacobi(alg: LieAlgebra) -> list[tuple[Generator, Generator, Generator, Combo]]:
    """Violating triples of the Jacobi identity (empty list means pass).

    Antisymmetry of the stored table is checked too; an asymmetric pair is
    reported as the triple ``(a, b, a)`` with the offending sum.
    """
    bad = []
    for a in alg.generators:
        for b in alg.generators:
            s = combo_add(alg.bracket(a, b), alg.bracket(b, a))
            if s and alg.rank(a) <= alg.rank(b):
                bad.append((a, b, a, s))
    for a, b, c in combinations(alg.generators, 3):
        total: Combo = {}
        for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
            total = combo_add(total, alg.bracket_combo({x: Expr.const(1)}, alg.bracket(y, z)))
        if total:
            bad.append((a, b, c, total))
    return bad


# ---------------------------------------------------------------------------
# algebra definition files
#
#   # comment
#   dim 3
#   signature custom
#   generators P1 P2 P3 K1 K2 K3 H        (PBW order, lowest first)
#   bracket K1 H = -i*P1
#   bracket H P1 = i*tau^-2*K1 + 1/2*beta*K2
#
# Unlisted brackets are zero; each bracket line also fixes the reversed pair.


def _parse_coeff_factor(tok: str) -> Expr:
    tok = tok.strip()
    m = re.fullmatch(r"tau(?:\^\(?(-?\d+)\)?)?", tok)
    if m:
        return Expr.tau(int(m.group(1)) if m.group(1) else 1)
    try:
        return Expr.const(parse_scalar(tok))
    except ValueError:
        pass
    m = re.fullmatch(r"([A-Za-z]\w*)(?:\^(\d+))?", tok)
    if m:
        return Expr.atom(param_atom(m.group(1)), int(m.group(2) or 1))
    raise InvalidInput(f"cannot parse coefficient factor {tok!r}")


def parse_combo(text: str, known: Mapping[str, Generator] | None = None) -> Combo:
    """Parse ``-i*P1 + 1/2*tau^-2*K2`` into a combination of generators."""
    text = text.strip()
    if text == "0":
        return {}
    # split before a sign that follows an operand (so "tau^-2" stays whole)
    parts = re.split(r"(?<=[\w)])(?=[+-])", re.sub(r"\s+", "", text))
    out: Combo = {}
    for part in parts:
        part = part.strip()
        if not part:
            continue
        sign = 1
        while part and part[0] in "+-":
            if part[0] == "-":
                sign = -sign
            part = part[1:].strip()
        factors = [f for f in part.split("*") if f.strip()]
        if not factors:
            raise InvalidInput(f"empty term in {text!r}")
        gname = factors[-1].strip()
        if known is not None and gname in known:
            gsign, gen = 1, known[gname]
        else:
            gsign, gen = parse_generator(gname)
        coeff = Expr.const(sign * gsign)
        for f in factors[:-1]:
            coeff = coeff * _parse_coeff_factor(f)
        out = combo_add(out, {gen: coeff})
    return out


def parse_algebra_text(text: str) -> LieAlgebra:
    dim = None
    signature = "custom"
    gens: list[Generator] = []
    bracket_lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        if head == "dim":
            dim = int(rest)
        elif head == "signature":
            signature = rest.strip()
        elif head == "generators":
            for name in rest.split():
                s, g = parse_generator(name)
                if s != 1:
                    raise InvalidInput(f"line {lineno}: list generators in canonical form")
                gens.append(g)
        elif head == "bracket":
            bracket_lines.append((lineno, rest))
        else:
            raise InvalidInput(f"line {lineno}: unknown directive {head!r}")
    if dim is None or dim < 1:
        raise InvalidInput("algebra file must declare 'dim' >= 1")
    if not gens:
        raise InvalidInput("algebra file must declare 'generators'")
    if len(set(gens)) != len(gens):
        raise InvalidInput("duplicate generator in 'generators'")
    known = {g.name: g for g in gens}
    table: dict = {}
    for lineno, rest in bracket_lines:
        lhs, eq, rhs = rest.partition("=")
        names = lhs.split()
        if not eq or len(names) != 2:
            raise InvalidInput(f"line {lineno}: expected 'bracket A B = ...'")
        sa, a = parse_generator(names[0])
        sb, b = parse_generator(names[1])
        val = combo_scale(parse_combo(rhs, known), sa * sb)
        for g in [a, b, *val]:
            if g not in known.values():
                raise InvalidInput(f"line {lineno}: undeclared generator {g}")
        try:
            _put(table, a, b, val)
        except AssertionError as exc:
            raise InvalidInput(f"line {lineno}: {exc}") from None
    return LieAlgebra(dim, signature, tuple(gens), table)


def load_algebra_file(path: str | Path) -> LieAlgebra:
    return parse_algebra_text(Path(path).read_text())


def _coeff_text(c: Expr) -> str:
    parts = []
    for mono in c.terms:
        factors = []
        if mono.coeff != 1:
            factors.append(to_plain(Expr.const(mono.coeff)))
        if mono.tau_power:
            factors.append(f"tau^{mono.tau_power}")
        for a, n in mono.powers:
            factors.append(a.name if n == 1 else f"{a.name}^{n}")
        parts.append("*".join(factors))
    if len(parts) != 1:
        raise InvalidInput("algebra files support single-monomial coefficients only")
    return parts[0]


def format_algebra_file(alg: LieAlgebra) -> str:
    lines = [f"dim {alg.dim}", f"signature {alg.signature}",
             "generators " + " ".join(g.name for g in alg.generators)]
    for a, b, val in alg.nonzero_brackets():
        terms = []
        for g, c in val.items():
            ct = _coeff_text(c)
            terms.append(f"{ct}*{g.name}" if ct else g.name)
        lines.append(f"bracket {a.name} {b.name} = " + " + ".join(terms))
    return "\n".join(lines) + "\n"
