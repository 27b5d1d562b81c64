"""Linear differential operators in d/dt, d/dx_1 .. d/dx_d with Expr coefficients."""
from __future__ import annotations

from math import comb
from itertools import product
from typing import Mapping

from .symbolic import ZERO, Expr, diff_t, diff_x, to_plain


def _derive(e: Expr, index: tuple[int, ...]) -> Expr:
    # index[0] counts d/dt, index[i] counts d/dx_i
    for _ in range(index[0]):
        e = diff_t(e)
    for i, n in enumerate(index[1:], start=1):
        for _ in range(n):
            e = diff_x(e, i)
    return e


class DiffOp:
    """Sum of ``coeff * d^alpha`` with multi-index alpha over (t, x_1..x_d)."""

    __slots__ = ("dim", "_terms")

    def __init__(self, dim: int, terms: Mapping[tuple[int, ...], Expr] | None = None):
        self.dim = dim
        self._terms = {}
        for idx, c in (terms or {}).items():
            if len(idx) != dim + 1:
                raise ValueError(f"multi-index {idx} does not match dimension {dim}")
            if c:
                self._terms[tuple(idx)] = c

    @classmethod
    def dt(cls, dim: int, coeff=1) -> "DiffOp":
        return cls(dim, {(1,) + (0,) * dim: Expr.coerce(coeff)})

    @classmethod
    def dx(cls, dim: int, i: int, coeff=1) -> "DiffOp":
        if not 1 <= i <= dim:
            raise IndexError(f"spatial index {i} out of range 1..{dim}")
        idx = [0] * (dim + 1)
        idx[i] = 1
        return cls(dim, {tuple(idx): Expr.coerce(coeff)})

    @classmethod
    def multiplication(cls, dim: int, coeff) -> "DiffOp":
        return cls(dim, {(0,) * (dim + 1): Expr.coerce(coeff)})

    @property
    def terms(self) -> list[tuple[Expr, tuple[int, ...]]]:
        return [(c, idx) for idx, c in sorted(self._terms.items(), reverse=True)]

    def order(self) -> int:
        return max((sum(idx) for idx in self._terms), default=0)

    def __call__(self, f: Expr) -> Expr:
        f = Expr.coerce(f)
        out = ZERO
        for idx, c in self._terms.items():
            out = out + c * _derive(f, idx)
        return out

    apply = __call__

    def __add__(self, other: "DiffOp") -> "DiffOp":
        out = dict(self._terms)
        for idx, c in other._terms.items():
            out[idx] = out[idx] + c if idx in out else c
        return DiffOp(self.dim, out)

    def __neg__(self):
        return DiffOp(self.dim, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "DiffOp":
        c = Expr.coerce(c)
        return DiffOp(self.dim, {k: v * c for k, v in self._terms.items()})

    def compose(self, other: "DiffOp") -> "DiffOp":
        """``self o other`` via the general Leibniz rule."""
        out: dict = {}
        for a, ca in self._terms.items():
            for b, cb in other._terms.items():
                for g in product(*(range(n + 1) for n in a)):
                    weight = 1
                    for ai, gi in zip(a, g):
                        weight *= comb(ai, gi)
                    dcb = _derive(cb, g)
                    if not dcb:
                        continue
                    idx = tuple(ai - gi + bi for ai, gi, bi in zip(a, g, b))
                    term = (ca * dcb).scale(weight)
                    out[idx] = out[idx] + term if idx in out else term
        return DiffOp(self.dim, out)

    __matmul__ = compose

    def commutator(self, other: "DiffOp") -> "DiffOp":
        return self.compose(other) - other.compose(self)

    def map_coefficients(self, fn) -> "DiffOp":
        return DiffOp(self.dim, {k: fn(c) for k, c in self._terms.items()})

    def __eq__(self, other):
        return isinstance(other, DiffOp) and self.dim == other.dim and self._terms == other._terms

    def __hash__(self):
        return hash((self.dim, frozenset(self._terms.items())))

    def __bool__(self):
        return bool(self._terms)

    def __repr__(self):
        names = ["dt"] + [f"d{i}" for i in range(1, self.dim + 1)]
        parts = []
        for c, idx in self.terms:
            ds = "".join(f"*{n}" if k == 1 else f"*{n}^{k}" for n, k in zip(names, idx) if k)
            parts.append(f"({to_plain(c)}){ds}")
        return "DiffOp(" + (" + ".join(parts) or "0") + ")"
