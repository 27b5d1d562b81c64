"""Generators as first-order differential operators on functions of (t, x).

With ``eps = +1`` (NH+, hyperbolic) or ``-1`` (NH-, trigonometric)::

    H    -> i d/dt
    P_i  -> i C(t/tau) d_i
    K_i  -> i tau S(t/tau) d_i
    F_i  -> eps 2i tau^2 (C(t/tau) - 1) d_i
    R_i  -> eps 6i tau^3 (S(t/tau) - t/tau) d_i
    M_ij -> i (x_i d_j - x_j d_i)

and for Galilei the tau -> infinity limits i d_i, i t d_i, i t^2 d_i, i t^3 d_i.
The printed action of R_i lacks the derivative; it is taken to act through d_i
like the other vector generators (the only choice that keeps the realization
a Lie algebra homomorphism).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .diffop import DiffOp
from .errors import InvalidInput
from .lie import Generator, LieAlgebra, canonical_signature, signature_sign
from .symbolic import (
    IMAG, ONE_EXPR, ZERO, C, Expr, S, diff_param, param_atom, sym, t, tau, x,
)


def profile(kind: str, signature: str) -> Expr:
    """Time-dependent coefficient multiplying i*d_i for a vector generator."""
    eps = signature_sign(signature)
    if eps == 0:
        return {"P": ONE_EXPR, "K": t(), "F": t() ** 2, "R": t() ** 3}[kind]
    if kind == "P":
        return C(eps)
    if kind == "K":
        return tau() * S(eps)
    if kind == "F":
        return (tau(2) * (C(eps) - 1)).scale(2 * eps)
    if kind == "R":
        return (tau(3) * S(eps) - tau(2) * t()).scale(6 * eps)
    raise InvalidInput(f"no vector profile for generator kind {kind!r}")


def realize(g: Generator, signature: str, d: int) -> DiffOp:
    sig = canonical_signature(signature)
    if g.kind == "H":
        return DiffOp.dt(d, IMAG)
    if g.kind == "M":
        i, j = g.i, g.j
        return DiffOp.dx(d, j, IMAG * x(i)) - DiffOp.dx(d, i, IMAG * x(j))
    if g.kind in ("P", "K", "F", "R"):
        if not 1 <= g.i <= d:
            raise InvalidInput(f"{g} outside dimension {d}")
        return DiffOp.dx(d, g.i, IMAG * profile(g.kind, sig))
    raise InvalidInput(f"no realization for generator {g}")


@dataclass
class Realization:
    signature: str
    dim: int
    ops: dict = field(default_factory=dict)

    def __getitem__(self, g: Generator) -> DiffOp:
        return self.ops[g]

    def act(self, g: Generator, f: Expr) -> Expr:
        return self.ops[g](f)


def build_realization(signature: str, d: int, generators: Sequence[Generator] | None = None) -> Realization:
    sig = canonical_signature(signature)
    if generators is None:
        from .lie import build_algebra
        generators = build_algebra(sig, d).generators
    return Realization(sig, d, {g: realize(g, sig, d) for g in generators})


def verify_homomorphism(alg: LieAlgebra, rho: Realization) -> list[tuple[Generator, Generator, DiffOp]]:
    """Pairs (a, b) with [rho(a), rho(b)] != rho([a, b]), with the difference."""
    bad = []
    gens = alg.generators
    for n, a in enumerate(gens):
        for b in gens[n + 1:]:
            lhs = rho[a].commutator(rho[b])
            rhs = DiffOp(rho.dim)
            for g, c in alg.bracket(a, b).items():
                rhs = rhs + rho[g].scale(c)
            diff = lhs - rhs
            if diff:
                bad.append((a, b, diff))
    return bad


# ---------------------------------------------------------------------------
# finite transformations


@dataclass
class FiniteTransformation:
    """Parameters of a finite symmetry transformation.

    ``a``, ``v``, ``b``, ``c`` are length-d sequences (translations, boosts,
    accelerations, R-parameters); ``rotation`` is a d x d matrix (identity by
    default).  Entries may be numbers or :class:`Expr`.
    """

    signature: str
    dim: int
    a: Sequence = None
    v: Sequence = None
    b: Sequence = None
    c: Sequence = None
    a0: object = 0
    rotation: Sequence | None = None
    tau_value: float | None = None

    def __post_init__(self):
        self.signature = canonical_signature(self.signature)
        for name in ("a", "v", "b", "c"):
            val = getattr(self, name)
            if val is None:
                setattr(self, name, [0] * self.dim)
            elif len(val) != self.dim:
                raise InvalidInput(f"parameter {name} must have length {self.dim}")
        if self.rotation is not None:
            self._check_rotation()

    def _check_rotation(self):
        rot = self.rotation
        if any(isinstance(e, Expr) for row in rot for e in row):
            return
        arr = np.asarray(rot, dtype=float)
        if arr.shape != (self.dim, self.dim):
            raise InvalidInput(f"rotation must be {self.dim}x{self.dim}")
        if not np.allclose(arr @ arr.T, np.eye(self.dim), atol=1e-10, rtol=0):
            raise InvalidInput("rotation matrix is not orthogonal (tolerance 1e-10)")


def apply_transformation(T_: FiniteTransformation, point: Sequence):
    """Map ``(t, x_1, ..., x_d)``.

    Symbolic mode (any Expr among the inputs) returns Exprs; numeric mode
    returns floats and needs ``tau_value`` for NH signatures.
    """
    d = T_.dim
    if len(point) != d + 1:
        raise InvalidInput(f"point must have {d + 1} components (t, x_1..x_d)")
    values = [point[0], *point[1:], *T_.a, *T_.v, *T_.b, *T_.c, T_.a0]
    if T_.rotation is not None:
        values += [e for row in T_.rotation for e in row]
    symbolic = any(isinstance(v, Expr) for v in values)
    if symbolic:
        return _apply_symbolic(T_, [Expr.coerce(p) for p in point])
    return _apply_numeric(T_, [float(p) for p in point])


def _apply_symbolic(T_: FiniteTransformation, point: list[Expr]):
    d, sig = T_.dim, T_.signature
    if point[0] != t():
        raise InvalidInput("symbolic mode expects the time coordinate to be the atom t")
    rot = T_.rotation
    out_x = []
    prof = {k: profile(k, sig) for k in "PKFR"}
    for i in range(d):
        if rot is None:
            xi = point[1 + i]
        else:
            xi = ZERO
            for j in range(d):
                xi = xi + Expr.coerce(rot[i][j]) * point[1 + j]
        xi = (xi + Expr.coerce(T_.a[i]) * prof["P"] + Expr.coerce(T_.v[i]) * prof["K"]
              + Expr.coerce(T_.b[i]) * prof["F"] + Expr.coerce(T_.c[i]) * prof["R"])
        out_x.append(xi)
    return (point[0] + Expr.coerce(T_.a0), *out_x)


def _apply_numeric(T_: FiniteTransformation, point: list[float]):
    d = T_.dim
    eps = signature_sign(T_.signature)
    tt = point[0]
    xs = np.asarray(point[1:], dtype=float)
    rot = np.eye(d) if T_.rotation is None else np.asarray(T_.rotation, dtype=float)
    if eps == 0:
        pa, pk, pf, pr = 1.0, tt, tt ** 2, tt ** 3
    else:
        if T_.tau_value is None:
            raise InvalidInput("numeric NH transformations need tau_value")
        tv = float(T_.tau_value)
        u = tt / tv
        cf, sf = (np.cosh(u), np.sinh(u)) if eps > 0 else (np.cos(u), np.sin(u))
        pa, pk = cf, tv * sf
        pf = eps * 2 * tv ** 2 * (cf - 1)
        pr = eps * 6 * tv ** 3 * (sf - u)
    new_x = (rot @ xs + np.asarray(T_.a, float) * pa + np.asarray(T_.v, float) * pk
             + np.asarray(T_.b, float) * pf + np.asarray(T_.c, float) * pr)
    return (tt + float(T_.a0), *new_x.tolist())


_FLOW_SLOT = {"P": "a", "K": "v", "F": "b", "R": "c"}


def check_flow_consistency(g: Generator, signature: str, d: int) -> bool:
    """d/ds at s=0 of the flow along ``g`` equals -i * realize(g) on coordinates."""
    sig = canonical_signature(signature)
    s = sym("s")
    kwargs: dict = {}
    if g.kind == "H":
        kwargs["a0"] = s
    elif g.kind in _FLOW_SLOT:
        vec = [ZERO] * d
        vec[g.i - 1] = s
        kwargs[_FLOW_SLOT[g.kind]] = vec
    else:
        raise InvalidInput(f"flow check covers P, K, F, R, H; got {g}")
    tr = FiniteTransformation(sig, d, **kwargs)
    image = apply_transformation(tr, [t()] + [x(i) for i in range(1, d + 1)])
    op = realize(g, sig, d)
    coords = [t()] + [x(i) for i in range(1, d + 1)]
    s_atom = param_atom("s")
    for img, coord in zip(image, coords):
        velocity = diff_param(img, "s").subs({s_atom: 0})
        if velocity != (-IMAG) * op(coord):
            return False
    return True
