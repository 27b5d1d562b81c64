"""Exact symbolic toolkit for twisted doubly enlarged Newton-Hooke and Galilei Hopf algebras."""
from __future__ import annotations

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    DivergentLimit, InvalidInput, NHTwistError, TruncationNotDetected, UnboundAtom, UndecidedOrder,
)
from .lie import LieAlgebra, build_algebra, verify_jacobi  # noqa: E402
from .realization import build_realization, realize, verify_homomorphism  # noqa: E402
from .rmatrix import RMatrix, rmatrix_catalog, schouten_bracket, verify_cybe  # noqa: E402
from .symbolic import Expr, Scalar, eval_numeric, limit_tau_inf, normalize, taylor_atoms  # noqa: E402
from .twist import (  # noqa: E402
    CommutatorTable, classify, make_context, spacetime_table, star_commutator, star_product,
    twisted_antipode, twisted_coproduct, verify_cocycle, verify_normalization,
)
from .contraction import contract_algebra, contract_table, two_path_check  # noqa: E402

__all__ = [
    "__version__", "DivergentLimit", "InvalidInput", "NHTwistError", "TruncationNotDetected",
    "UnboundAtom", "UndecidedOrder", "LieAlgebra", "build_algebra", "verify_jacobi",
    "build_realization", "realize", "verify_homomorphism", "RMatrix", "rmatrix_catalog",
    "schouten_bracket", "verify_cybe", "Expr", "Scalar", "eval_numeric", "limit_tau_inf",
    "normalize", "taylor_atoms", "CommutatorTable", "classify", "make_context", "spacetime_table",
    "star_commutator", "star_product", "twisted_antipode", "twisted_coproduct", "verify_cocycle",
    "verify_normalization", "contract_algebra", "contract_table", "two_path_check",
]
