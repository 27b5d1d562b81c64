"""Enveloping-algebra arithmetic in a PBW basis, plus tensor powers.

A PBW word is a tuple of generators that is non-decreasing in the algebra's
generator order.  Products are normal-ordered by repeatedly rewriting the
first out-of-order adjacent pair with ``x y = y x + [x, y]``.
"""
from __future__ import annotations

from itertools import product
from math import factorial
from typing import Iterable

from .lie import Generator, LieAlgebra
from .symbolic import ONE, ONE_EXPR, Expr, Scalar, to_plain

Word = tuple


def _acc(out: dict, key, coeff: Expr) -> None:
    prev = out.get(key)
    out[key] = coeff if prev is None else prev + coeff


def _clean(d: dict) -> dict:
    return {k: v for k, v in d.items() if v}


def normal_order(alg: LieAlgebra, word: Word) -> dict:
    """PBW normal form of an arbitrary generator word, memoized per algebra."""
    cache = alg._nf_cache
    hit = cache.get(word)
    if hit is not None:
        return hit
    rank = alg._rank
    for p in range(len(word) - 1):
        a, b = word[p], word[p + 1]
        if rank[a] > rank[b]:
            break
    else:
        result = {word: ONE_EXPR}
        cache[word] = result
        return result
    out: dict = {}
    for w, c in normal_order(alg, word[:p] + (b, a) + word[p + 2:]).items():
        _acc(out, w, c)
    for g, coeff in alg.bracket(a, b).items():
        for w, c in normal_order(alg, word[:p] + (g,) + word[p + 2:]).items():
            _acc(out, w, c * coeff)
    result = _clean(out)
    cache[word] = result
    return result


def _truncate(terms: dict, order: int | None) -> dict:
    if order is None:
        return _clean(terms)
    out = {}
    for k, v in terms.items():
        if v:
            v = v.truncate_params(order)
            if v:
                out[k] = v
    return out


def _word_str(w: Word) -> str:
    return "*".join(g.name for g in w) if w else "1"


class UEAElement:
    """Element of U(g) with Expr coefficients on PBW words."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: LieAlgebra, terms: dict | None = None):
        self.algebra = algebra
        self.terms = _clean(terms or {})

    @classmethod
    def one(cls, alg: LieAlgebra) -> "UEAElement":
        return cls(alg, {(): ONE_EXPR})

    @classmethod
    def gen(cls, alg: LieAlgebra, g: Generator, coeff=1) -> "UEAElement":
        return cls(alg, {(g,): Expr.coerce(coeff)})

    @classmethod
    def word(cls, alg: LieAlgebra, word: Iterable[Generator], coeff=1) -> "UEAElement":
        c = Expr.coerce(coeff)
        return cls(alg, {w: v * c for w, v in normal_order(alg, tuple(word)).items()})

    def __add__(self, other):
        out = dict(self.terms)
        for w, c in other.terms.items():
            _acc(out, w, c)
        return UEAElement(self.algebra, out)

    def __neg__(self):
        return UEAElement(self.algebra, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "UEAElement":
        c = Expr.coerce(c)
        return UEAElement(self.algebra, {w: v * c for w, v in self.terms.items()})

    def multiply(self, other: "UEAElement", order: int | None = None) -> "UEAElement":
        out: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                c = c1 * c2
                if order is not None:
                    c = c.truncate_params(order)
                    if not c:
                        continue
                for w, cw in normal_order(self.algebra, w1 + w2).items():
                    _acc(out, w, c * cw)
        return UEAElement(self.algebra, _truncate(out, order))

    def __mul__(self, other):
        if isinstance(other, UEAElement):
            return self.multiply(other)
        return self.scale(other)

    def truncate(self, order: int) -> "UEAElement":
        return UEAElement(self.algebra, _truncate(self.terms, order))

    def counit(self) -> Expr:
        return self.terms.get((), Expr())

    def __eq__(self, other):
        return isinstance(other, UEAElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"UEAElement({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({to_plain(c)})*{_word_str(w)}" for w, c in
                          sorted(self.terms.items(), key=lambda kv: _word_key(self.algebra, kv[0])))


def pbw_multiply(u: UEAElement, v: UEAElement) -> UEAElement:
    return u.multiply(v)


def _word_key(alg: LieAlgebra, w: Word):
    return (len(w), tuple(alg.rank(g) for g in w))


class Tensor:
    """Element of U(g)^{(x) rank}: ``{(word_1, ..., word_rank): Expr}``."""

    __slots__ = ("algebra", "rank", "terms")

    def __init__(self, algebra: LieAlgebra, rank: int, terms: dict | None = None):
        self.algebra = algebra
        self.rank = rank
        self.terms = _clean(terms or {})

    @classmethod
    def one(cls, alg: LieAlgebra, rank: int) -> "Tensor":
        return cls(alg, rank, {((),) * rank: ONE_EXPR})

    @classmethod
    def simple(cls, alg: LieAlgebra, *words, coeff=1) -> "Tensor":
        """Tensor product of (normal-ordered) words ``w1 (x) w2 (x) ...``."""
        parts = [normal_order(alg, tuple(w)) for w in words]
        c0 = Expr.coerce(coeff)
        out: dict = {}
        for combo in product(*(p.items() for p in parts)):
            c = c0
            for _, cw in combo:
                c = c * cw
            _acc(out, tuple(w for w, _ in combo), c)
        return cls(alg, len(words), out)

    @classmethod
    def from_elements(cls, *elements: UEAElement) -> "Tensor":
        alg = elements[0].algebra
        out: dict = {}
        for combo in product(*(e.terms.items() for e in elements)):
            c = ONE_EXPR
            for _, cw in combo:
                c = c * cw
            _acc(out, tuple(w for w, _ in combo), c)
        return cls(alg, len(elements), out)

    def _check(self, other):
        if other.rank != self.rank:
            raise ValueError(f"rank mismatch {self.rank} vs {other.rank}")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            _acc(out, k, c)
        return Tensor(self.algebra, self.rank, out)

    def __neg__(self):
        return Tensor(self.algebra, self.rank, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "Tensor":
        c = Expr.coerce(c)
        return Tensor(self.algebra, self.rank, {k: v * c for k, v in self.terms.items()})

    def multiply(self, other: "Tensor", order: int | None = None) -> "Tensor":
        """Componentwise product; ``order`` drops terms above that parameter degree."""
        self._check(other)
        alg = self.algebra
        out: dict = {}
        right = [(k2, c2, c2.min_param_degree()) for k2, c2 in other.terms.items()]
        for k1, c1 in self.terms.items():
            room = None if order is None else order - c1.min_param_degree()
            if room is not None and room < 0:
                continue
            for k2, c2, d2 in right:
                if room is None:
                    c = c1 * c2
                elif d2 > room:
                    continue
                else:
                    c = c1.mul_truncated(c2, order)
                    if not c:
                        continue
                parts = [normal_order(alg, w1 + w2) for w1, w2 in zip(k1, k2)]
                for combo in product(*(p.items() for p in parts)):
                    cc = c
                    for _, cw in combo:
                        if cw is not ONE_EXPR:
                            cc = cc * cw
                    _acc(out, tuple(w for w, _ in combo), cc)
        return Tensor(alg, self.rank, _truncate(out, order))

    def __mul__(self, other):
        if isinstance(other, Tensor):
            return self.multiply(other)
        return self.scale(other)

    def commutator(self, other: "Tensor", order: int | None = None) -> "Tensor":
        return self.multiply(other, order) - other.multiply(self, order)

    def truncate(self, order: int) -> "Tensor":
        return Tensor(self.algebra, self.rank, _truncate(self.terms, order))

    def flip(self) -> "Tensor":
        if self.rank != 2:
            raise ValueError("flip is defined on rank-2 tensors")
        return Tensor(self.algebra, 2, {(b, a): c for (a, b), c in self.terms.items()})

    def embed(self, slots: tuple[int, ...], rank: int) -> "Tensor":
        """Place the components into the given slots of a higher tensor power.

        ``r.embed((0, 2), 3)`` is r_13.
        """
        out = {}
        for k, c in self.terms.items():
            key = [()] * rank
            for s, w in zip(slots, k):
                key[s] = w
            out[tuple(key)] = c
        return Tensor(self.algebra, rank, out)

    def map_slot(self, slot: int, fn) -> "Tensor":
        """Apply a linear map ``word -> Tensor`` (rank m) or ``word -> UEAElement`` to one slot."""
        out: dict = {}
        new_rank = None
        for k, c in self.terms.items():
            image = fn(k[slot])
            if isinstance(image, UEAElement):
                image_terms = {(w,): v for w, v in image.terms.items()}
                m = 1
            elif isinstance(image, Tensor):
                image_terms, m = image.terms, image.rank
            else:  # scalar Expr, e.g. the counit
                image_terms, m = ({(): Expr.coerce(image)} if image else {}), 0
            new_rank = self.rank - 1 + m
            for ik, iv in image_terms.items():
                _acc(out, k[:slot] + ik + k[slot + 1:], c * iv)
        if new_rank is None:
            probe = fn(())
            m = probe.rank if isinstance(probe, Tensor) else (1 if isinstance(probe, UEAElement) else 0)
            new_rank = self.rank - 1 + m
        return Tensor(self.algebra, new_rank, out)

    def multiply_slots(self) -> UEAElement:
        """omega: a (x) b (x) ... -> a*b*... in U(g)."""
        out: dict = {}
        for k, c in self.terms.items():
            word = tuple(g for w in k for g in w)
            for w, cw in normal_order(self.algebra, word).items():
                _acc(out, w, c * cw)
        return UEAElement(self.algebra, out)

    def param_degree(self) -> int:
        return max((c.param_degree() for c in self.terms.values()), default=0)

    def __eq__(self, other):
        return isinstance(other, Tensor) and self.rank == other.rank and self.terms == other.terms

    def __hash__(self):
        return hash((self.rank, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"Tensor(rank={self.rank}, {self})"

    def __str__(self):
        return format_tensor(self)


def format_tensor(t: Tensor, latex: bool = False) -> str:
    if not t.terms:
        return "0"
    alg = t.algebra
    sep = r" \otimes " if latex else "⊗"
    pieces = []
    for k, c in sorted(t.terms.items(), key=lambda kv: tuple(_word_key(alg, w) for w in kv[0])):
        if latex:
            comps = [" ".join(g.latex() for g in w) if w else "1" for w in k]
            from .symbolic import to_latex
            cs = to_latex(c)
        else:
            comps = [_word_str(w) for w in k]
            cs = to_plain(c)
        body = sep.join(comps)
        if c == 1:
            pieces.append(body)
        else:
            pieces.append(f"({cs}) {body}" if latex else f"({cs})*{body}")
    return " + ".join(pieces)


# ---------------------------------------------------------------------------
# primitive Hopf structure


def primitive_coproduct(alg: LieAlgebra, g: Generator) -> Tensor:
    """Delta_0(g) = g (x) 1 + 1 (x) g."""
    return Tensor(alg, 2, {((g,), ()): ONE_EXPR, ((), (g,)): ONE_EXPR})


def antipode0(alg: LieAlgebra, g: Generator) -> UEAElement:
    return UEAElement.gen(alg, g, -1)


def counit0(g: Generator | None) -> Scalar:
    """epsilon(generator) = 0, epsilon(1) = 1 (pass None for the unit)."""
    return Scalar(1) if g is None else Scalar(0)


def coproduct0_word(alg: LieAlgebra, word: Word) -> Tensor:
    """Delta_0 extended multiplicatively to a PBW word."""
    result = Tensor.one(alg, 2)
    for g in word:
        result = result.multiply(primitive_coproduct(alg, g))
    return result


def antipode0_word(alg: LieAlgebra, word: Word) -> UEAElement:
    """S_0 as an anti-automorphism: S_0(g1...gn) = (-1)^n gn...g1."""
    return UEAElement.word(alg, tuple(reversed(word)), (-1) ** len(word))


def counit0_word(word: Word) -> Expr:
    return ONE_EXPR if not word else Expr()


def tensor_exp(x: Tensor, order: int) -> Tensor:
    """exp(x) truncated at parameter degree ``order``.

    ``x`` must have zero constant part; terms of parameter degree > order are
    dropped at every step.
    """
    result = Tensor.one(x.algebra, x.rank)
    power = Tensor.one(x.algebra, x.rank)
    for n in range(1, order + 1):
        power = power.multiply(x, order)
        if not power:
            break
        result = result + power.scale(Scalar(1) / factorial(n))
    return result
