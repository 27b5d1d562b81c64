"""Printed reference forms of the thirty deformed space-time tables, with errata.

Each :class:`GoldenItem` carries the formula as printed (LaTeX, verbatim
notation), an evaluator for the printed formula where it is well defined, and
for items with known defects the corrected form plus a note.  Entries are
keyed by coordinate pair exactly like :class:`~nhtwist.twist.CommutatorTable`.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .lie import canonical_signature, signature_sign
from .rmatrix import DEFAULT_FIXED, DEFAULT_FIXED_15, beta_entry, beta_name
from .symbolic import IMAG, ONE_EXPR, ZERO, C, Expr, S, sym, t, tau, x
from .twist import coordinate_pairs

Builder = Callable[[str, int, tuple], dict]


def _delta(p, q) -> int:
    return 1 if p == q else 0


def _u(eps: int) -> Expr:
    """S(t/tau) - t/tau."""
    return S(eps) - tau(-1) * t()


def _v(eps: int) -> Expr:
    """C(t/tau) - 1."""
    return C(eps) - 1


def _theta_const(n: int, d: int, a: int, b: int) -> Expr:
    """beta_n^{kl} (delta_ak delta_bl - delta_al delta_bk), summed over k, l."""
    out = ZERO
    for k in range(1, d + 1):
        for l in range(1, d + 1):
            w = _delta(a, k) * _delta(b, l) - _delta(a, l) * _delta(b, k)
            if w:
                out = out + beta_entry(n, k, l).scale(w)
    return out


def _theta_linear(m: int, k: int, l: int, a: int, b: int) -> Expr:
    """delta_ma (x_k delta_bl - x_l delta_bk) - delta_mb (x_k delta_al - x_l delta_ak)."""
    out = ZERO
    if m == a:
        out = out + x(k).scale(_delta(b, l)) - x(l).scale(_delta(b, k))
    if m == b:
        out = out - x(k).scale(_delta(a, l)) + x(l).scale(_delta(a, k))
    return out


def const_theta_table(profile: Callable[[int], Expr], beta_item: int) -> Builder:
    """[t, x_a] = 0, [x_a, x_b] = i f(t) beta^{kl}(delta delta - delta delta)."""

    def build(sig, d, fixed):
        eps = signature_sign(sig)
        f = profile(eps)
        out = {}
        for p, q in coordinate_pairs(d):
            if p == "t":
                out[(p, q)] = ZERO
            else:
                out[(p, q)] = IMAG * f * _theta_const(beta_item, d, int(p[1:]), int(q[1:]))
        return out

    return build


def linear_theta_table(profile: Callable[[int], Expr], beta: str, ik_typo: bool = False) -> Builder:
    """[t, x_a] = 0, [x_a, x_b] = i f(t) beta [delta_ma (...) - delta_mb (...)].

    With ``ik_typo`` the printed last delta has a free index, so entries with
    b = m cannot be evaluated and come back as None.
    """

    def build(sig, d, fixed):
        m, k, l = fixed or DEFAULT_FIXED
        eps = signature_sign(sig)
        f = profile(eps)
        out = {}
        for p, q in coordinate_pairs(d):
            if p == "t":
                out[(p, q)] = ZERO
                continue
            a, b = int(p[1:]), int(q[1:])
            if ik_typo and b == m:
                out[(p, q)] = None
                continue
            out[(p, q)] = IMAG * f * sym(beta) * _theta_linear(m, k, l, a, b)
        return out

    return build


def time_quantum_table(beta: str) -> Builder:
    """[t, x_a] = 2i beta (delta_ia x_j - x_i delta_ja), [x_a, x_b] = 0."""

    def build(sig, d, fixed):
        i, j = fixed or DEFAULT_FIXED_15
        out = {}
        for p, q in coordinate_pairs(d):
            if p == "t":
                a = int(q[1:])
                val = x(j).scale(_delta(i, a)) - x(i).scale(_delta(j, a))
                out[(p, q)] = (IMAG * sym(beta) * val).scale(2)
            else:
                out[(p, q)] = ZERO
        return out

    return build


def spatial_unreadable(builder: Builder) -> Builder:
    """Printed form whose [t, x_a] entries are readable but whose [x_a, x_b]
    entries are not (ill-formed parameter labels)."""

    def build(sig, d, fixed):
        return {p: (v if p[0] == "t" else None) for p, v in builder(sig, d, fixed).items()}

    return build


@dataclass(frozen=True)
class GoldenItem:
    item: int
    family: str  # "nh" or "galilei"
    printed_latex: str
    printed: Builder | None
    corrected: Builder | None = None
    erratum: str | None = None

    @property
    def label(self) -> str:
        return f"{self.family} item {self.item}"

    def expected(self, sig: str, d: int, fixed) -> dict:
        """Form the computed table must equal (corrected where an erratum applies)."""
        return (self.corrected or self.printed)(sig, d, fixed)


def _c(eps, n=1):
    return C(eps) ** n


_DD = r"(\delta_{ak}\delta_{bl} - \delta_{al}\delta_{bk})"
_BR_OK = r"\left[\delta_{ma}(x_k\delta_{bl} - x_{l}\delta_{bk}) - \delta_{mb}(x_k\delta_{al} - x_{l}\delta_{ak})\right]"
_BR_TYPO = r"\left[\delta_{ma}(x_k\delta_{bl} - x_{l}\delta_{bk}) - \delta_{mb}(x_k\delta_{al} - x_{l}\delta_{ik})\right]"
_TQ = r"[t,x_a] = 2i\beta_{15}\left[\delta_{ia}x_j - x_{i}\delta_{ja}\right],\ [x_a,x_b] = 0"

_IK_NOTE = ("printed last delta carries index i instead of a; corrected to delta_ak "
            "as in items 13 and 14")
_HALF_NOTE = ("printed prefactor is half the value produced by the F_i realization "
              "(the analogous R_i item 3 and the rotation item 9 agree with the "
              "computed normalization); the computed value is twice the printed one")

NH_ITEMS = {
    1: GoldenItem(1, "nh", r"[x_a,x_b] = 36i\beta_1^{kl}\tau^6 (S_\pm - t/\tau)^2" + _DD,
                  const_theta_table(lambda e: tau(6) * _u(e) ** 2 * 36, 1)),
    2: GoldenItem(2, "nh", r"[x_a,x_b] = 12i\beta_2^{kl}\tau^5 (S_\pm - t/\tau)(C_\pm - 1)" + _DD,
                  const_theta_table(lambda e: tau(5) * _u(e) * _v(e) * 12, 2)),
    3: GoldenItem(3, "nh", r"[x_a,x_b] = \pm 6i\beta_3^{kl}\tau^3 (S_\pm - t/\tau) C_\pm" + _DD,
                  const_theta_table(lambda e: tau(3) * _u(e) * C(e) * (6 * e), 3)),
    4: GoldenItem(4, "nh", r"[x_a,x_b] = \pm 6i\beta_4^{kl}\tau^4 (S_\pm - t/\tau) S_\pm" + _DD,
                  const_theta_table(lambda e: tau(4) * _u(e) * S(e) * (6 * e), 4)),
    5: GoldenItem(5, "nh", r"[x_a,x_b] = \pm 12i\beta_5\tau^3 (S_\pm - t/\tau)" + _BR_TYPO,
                  linear_theta_table(lambda e: tau(3) * _u(e) * (12 * e), "beta5", ik_typo=True),
                  linear_theta_table(lambda e: tau(3) * _u(e) * (12 * e), "beta5"),
                  _IK_NOTE),
    6: GoldenItem(6, "nh", r"[x_a,x_b] = 4i\beta_6^{kl}\tau^4 (C_\pm - 1)^2" + _DD,
                  const_theta_table(lambda e: tau(4) * _v(e) ** 2 * 4, 6)),
    7: GoldenItem(7, "nh", r"[x_a,x_b] = \pm i\beta_7^{kl}\tau^2 (C_\pm - 1) C_\pm" + _DD,
                  const_theta_table(lambda e: tau(2) * _v(e) * C(e) * e, 7),
                  const_theta_table(lambda e: tau(2) * _v(e) * C(e) * (2 * e), 7),
                  _HALF_NOTE),
    8: GoldenItem(8, "nh", r"[x_a,x_b] = \pm i\beta_8^{kl}\tau^3 (C_\pm - 1) S_\pm" + _DD,
                  const_theta_table(lambda e: tau(3) * _v(e) * S(e) * e, 8),
                  const_theta_table(lambda e: tau(3) * _v(e) * S(e) * (2 * e), 8),
                  _HALF_NOTE),
    9: GoldenItem(9, "nh", r"[x_a,x_b] = \pm 4i\beta_9\tau^2 (C_\pm - 1)" + _BR_TYPO,
                  linear_theta_table(lambda e: tau(2) * _v(e) * (4 * e), "beta9", ik_typo=True),
                  linear_theta_table(lambda e: tau(2) * _v(e) * (4 * e), "beta9"),
                  _IK_NOTE),
    10: GoldenItem(10, "nh", r"[x_a,x_b] = i\beta_{10}^{kl} C_\pm^2" + _DD,
                   const_theta_table(lambda e: C(e) ** 2, 10)),
    11: GoldenItem(11, "nh", r"[x_a,x_b] = i\beta_{11}^{kl}\tau C_\pm S_\pm" + _DD,
                   const_theta_table(lambda e: tau() * C(e) * S(e), 11)),
    12: GoldenItem(12, "nh", r"[x_a,x_b] = i\beta_{12}^{kl}\tau^2 S_\pm^2" + _DD,
                   const_theta_table(lambda e: tau(2) * S(e) ** 2, 12)),
    13: GoldenItem(13, "nh", r"[x_a,x_b] = 2i\beta_{13}\tau S_\pm" + _BR_OK,
                   linear_theta_table(lambda e: (tau() * S(e)).scale(2), "beta13")),
    14: GoldenItem(14, "nh", r"[x_a,x_b] = 2i\beta_{14} C_\pm" + _BR_OK,
                   linear_theta_table(lambda e: C(e).scale(2), "beta14")),
    15: GoldenItem(15, "nh", _TQ, time_quantum_table("beta15")),
}


def _tp(n: int, coeff=1) -> Callable[[int], Expr]:
    return lambda e: (t() ** n).scale(coeff)


_HALF = Fraction(1, 2)

GALILEI_ITEMS = {
    1: GoldenItem(1, "galilei", r"[x_a,x_b] = i\beta_1^{kl} t^6" + _DD, const_theta_table(_tp(6), 1)),
    2: GoldenItem(2, "galilei", r"[x_a,x_b] = i\beta_2^{kl} t^5" + _DD, const_theta_table(_tp(5), 2)),
    3: GoldenItem(3, "galilei", r"[x_a,x_b] = i\beta_3^{kl} t^3" + _DD, const_theta_table(_tp(3), 3)),
    4: GoldenItem(4, "galilei", r"[x_a,x_b] = i\beta_4 t^4" + _DD,
                  spatial_unreadable(const_theta_table(_tp(4), 4)),
                  const_theta_table(_tp(4), 4),
                  "printed parameter lacks the kl superscript; read as beta_4^{kl}"),
    5: GoldenItem(5, "galilei", r"[x_a,x_b] = 2i\beta_5^{kl} t^3" + _BR_OK,
                  spatial_unreadable(linear_theta_table(_tp(3, 2), "beta5")),
                  linear_theta_table(_tp(3, 2), "beta5"),
                  "printed parameter carries a kl superscript although beta_5 is a scalar"),
    6: GoldenItem(6, "galilei", r"[x_a,x_b] = i\beta_6^{kl} t^4" + _DD, const_theta_table(_tp(4), 6)),
    7: GoldenItem(7, "galilei", r"[x_a,x_b] = \frac{i}{2}\beta_2^{kl} t^2" + _DD,
                  const_theta_table(_tp(2, _HALF), 2),
                  const_theta_table(_tp(2), 7),
                  "printed with beta_2 instead of beta_7, and with the halved prefactor "
                  "inherited from nh item 7; the limit of the computed table is i beta_7^{kl} t^2"),
    8: GoldenItem(8, "galilei", r"[x_a,x_b] = \frac{i}{2}\beta_8^{kl} t^3" + _DD,
                  const_theta_table(_tp(3, _HALF), 8),
                  const_theta_table(_tp(3), 8),
                  "halved prefactor inherited from nh item 8; the limit of the computed "
                  "table is i beta_8^{kl} t^3"),
    9: GoldenItem(9, "galilei", r"[x_a,x_b] = 2i\beta_4 t^2" + _BR_OK,
                  linear_theta_table(_tp(2, 2), "beta4"),
                  linear_theta_table(_tp(2, 2), "beta9"),
                  "printed with beta_4 instead of beta_9"),
    10: GoldenItem(10, "galilei", r"[x_a,x_b] = i\beta_{10}^{kl}" + _DD, const_theta_table(_tp(0), 10)),
    11: GoldenItem(11, "galilei", r"[x_a,x_b] = i\beta_{11}^{kl} t" + _DD, const_theta_table(_tp(1), 11)),
    12: GoldenItem(12, "galilei", r"[x_a,x_b] = i\beta_{12}^{kl} t^2" + _DD, const_theta_table(_tp(2), 12)),
    13: GoldenItem(13, "galilei", r"[x_a,x_b] = 2i\beta_{13} t" + _BR_OK, linear_theta_table(_tp(1, 2), "beta13")),
    14: GoldenItem(14, "galilei", r"[x_a,x_b] = 2i\beta_{14}" + _BR_OK, linear_theta_table(_tp(0, 2), "beta14")),
    15: GoldenItem(15, "galilei", _TQ, time_quantum_table("beta15")),
}


def golden_item(k: int, signature: str) -> GoldenItem:
    sig = canonical_signature(signature)
    return (GALILEI_ITEMS if sig == "galilei" else NH_ITEMS)[k]


MATCH, ERRATUM, MISMATCH = "match", "erratum", "mismatch"


@dataclass
class EntryCheck:
    pair: tuple
    status: str
    computed: Expr
    printed: Expr | None
    expected: Expr
    note: str | None = None


def compare_with_golden(table, fixed=None) -> list[EntryCheck]:
    """Classify each computed entry as matching the printed form, matching the
    corrected form of a recorded erratum, or mismatching both.

    Erratum status here is provisional; callers confirm it against the
    numeric oracle (see :mod:`nhtwist.oracle`).
    """
    item = golden_item(table.twist, table.signature)
    fixed = fixed if fixed is not None else table.fixed
    printed = item.printed(table.signature, table.dim, fixed) if item.printed else {}
    expected = item.expected(table.signature, table.dim, fixed)
    out = []
    for pair, value in table.entries.items():
        p = printed.get(pair)
        if p is not None and p == value:
            out.append(EntryCheck(pair, MATCH, value, p, p))
        elif item.erratum and expected[pair] == value:
            out.append(EntryCheck(pair, ERRATUM, value, p, expected[pair], item.erratum))
        else:
            out.append(EntryCheck(pair, MISMATCH, value, p, expected[pair], item.erratum))
    return out
