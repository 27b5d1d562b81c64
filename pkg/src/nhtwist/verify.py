"""Verification suites with a machine-readable report.

Each suite is a list of independent checks.  A report is deterministic apart
from its ``run`` block (timestamp and per-check timings).
"""
from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from itertools import combinations

from . import __version__
from .contraction import contract_algebra, two_path_check
from .errors import InvalidInput
from .golden import ERRATUM, MATCH, compare_with_golden
from .lie import F, H, K, LieAlgebra, P, R, build_algebra, combo_str, verify_jacobi
from .oracle import check_table
from .realization import build_realization, check_flow_consistency, verify_homomorphism
from .rmatrix import TWIST_IDS, RMatrix, abelian_violations, rmatrix_catalog, verify_cybe, wedge
from .symbolic import limit_tau_inf, sym, to_plain
from .twist import (
    coordinate, make_context, star_commutator, table_from_context, twisted_antipode,
    twisted_coproduct, verify_cocycle, verify_normalization,
)
from .uea import UEAElement, primitive_coproduct

SCHEMA = "nhtwist.verify/1"
SIGNATURES = ("nh+", "nh-", "galilei")
SUITES = ("jacobi", "homomorphism", "cybe", "cocycle", "star-jacobi", "contraction",
          "golden", "oracle", "zero-deformation")
ALIASES = {"realization": "homomorphism"}


@dataclass
class CheckResult:
    suite: str
    name: str
    ok: bool
    detail: dict = field(default_factory=dict)
    seconds: float = 0.0

    def as_dict(self) -> dict:
        return {"name": self.name, "status": "pass" if self.ok else "fail", "detail": self.detail}


# ---------------------------------------------------------------------------
# individual checks; each returns (ok, detail)


def _triple_str(a, b, c, residual) -> str:
    return f"({a}, {b}, {c}): {combo_str(residual)}"


def check_jacobi(alg: LieAlgebra) -> tuple[bool, dict]:
    bad = verify_jacobi(alg)
    return not bad, {"violations": len(bad), "triples": [_triple_str(*v) for v in bad[:10]]}


def check_homomorphism(alg: LieAlgebra) -> tuple[bool, dict]:
    rho = build_realization(alg.signature, alg.dim, alg.generators)
    bad = verify_homomorphism(alg, rho)
    return not bad, {"violations": len(bad), "pairs": [f"({a}, {b})" for a, b, _ in bad[:10]]}


def check_flows(sig: str, d: int) -> tuple[bool, dict]:
    gens = [H] + [f(i) for f in (P, K, F, R) for i in range(1, d + 1)]
    bad = [str(g) for g in gens if not check_flow_consistency(g, sig, d)]
    return not bad, {"generators": len(gens), "failing": bad}


def check_realization_limit(d: int) -> tuple[bool, dict]:
    """Galilei operators equal the coefficient-wise limit of both NH branches."""
    gal = build_realization("galilei", d)
    bad = []
    for sig in ("nh+", "nh-"):
        nh = build_realization(sig, d)
        for g, op in nh.ops.items():
            if op.map_coefficients(limit_tau_inf) != gal[g]:
                bad.append(f"{sig}:{g}")
    return not bad, {"failing": bad}


def check_cybe(k: int, alg: LieAlgebra) -> tuple[bool, dict]:
    r = rmatrix_catalog(k, alg.dim)
    abelian = not abelian_violations(r, alg)
    cybe = verify_cybe(r, alg)
    return abelian and cybe and r.is_antisymmetric(), {"abelian": abelian, "cybe": cybe}


def check_cybe_negative(alg: LieAlgebra) -> tuple[bool, dict]:
    """K_1 ^ H has non-commuting carriers; its Schouten bracket must not vanish."""
    r = RMatrix(tuple(wedge(K(1), H, sym("beta"))))
    nonzero = not verify_cybe(r, alg)
    return nonzero, {"schouten_nonzero": nonzero}


def check_cocycle(k: int, sig: str, d: int, order: int) -> tuple[bool, dict]:
    ctx = make_context(k, sig, d)
    diff = verify_cocycle(ctx, order)
    norm = verify_normalization(ctx, order)
    return (not diff) and norm, {"order": order, "cocycle_terms": len(diff.terms), "normalization": norm}


def check_star_jacobi(k: int, sig: str, d: int) -> tuple[bool, dict]:
    ctx = make_context(k, sig, d)
    table = table_from_context(ctx, k)
    coords = ["t"] + [f"x{i}" for i in range(1, d + 1)]
    bad = []
    for a, b, c in combinations(coords, 3):
        total = (star_commutator(table[(a, b)], coordinate(c), ctx)
                 + star_commutator(table[(b, c)], coordinate(a), ctx)
                 + star_commutator(table[(c, a)], coordinate(b), ctx))
        if total:
            bad.append(f"({a}, {b}, {c}): {to_plain(total)}")
    return not bad, {"triples": len(list(combinations(coords, 3))), "failing": bad}


def check_contraction(k: int, d: int) -> tuple[bool, dict]:
    rep = two_path_check(k, d)
    statuses = sorted({e.golden_status for rows in rep.entries.values() for e in rows})
    return rep.ok, {"paths_agree": not rep.diffs, "golden": statuses,
                    "diffs": [str(p) for p, _ in rep.diffs]}


def check_contract_algebra(d: int) -> tuple[bool, dict]:
    gal = build_algebra("galilei", d)
    res = {sig: contract_algebra(build_algebra(sig, d)).same_table(gal) for sig in ("nh+", "nh-")}
    return all(res.values()), res


def check_golden(k: int, sig: str, d: int) -> tuple[bool, dict]:
    """Computed table against the printed form; erratum entries must agree with the oracle."""
    ctx = make_context(k, sig, d)
    table = table_from_context(ctx, k)
    checks = compare_with_golden(table)
    errata = [c.pair for c in checks if c.status == ERRATUM]
    oracle_ok = True
    if errata:
        results = {r.pair: r for r in check_table(table)}
        oracle_ok = all(results[p].ok for p in errata)
    ok = all(c.status in (MATCH, ERRATUM) for c in checks) and oracle_ok
    notes = sorted({c.note for c in checks if c.note})
    return ok, {
        "entries": {"[{},{}]".format(*c.pair): c.status for c in checks},
        "errata_confirmed_by_oracle": oracle_ok if errata else None,
        "notes": notes,
    }


def check_oracle(k: int, sig: str, d: int) -> tuple[bool, dict]:
    ctx = make_context(k, sig, d)
    results = check_table(table_from_context(ctx, k))
    return all(r.ok for r in results), {
        "entries": len(results), "points_per_entry": results[0].points if results else 0,
        "failing": ["[{},{}]".format(*r.pair) for r in results if not r.ok],
    }


def check_zero_deformation(k: int, sig: str, d: int) -> tuple[bool, dict]:
    zero = 0 if k in (5, 9, 13, 14, 15) else [[0] * d for _ in range(d)]
    ctx = make_context(k, sig, d, params=zero)
    table = table_from_context(ctx, k)
    alg = ctx.algebra
    coprod_ok = all(twisted_coproduct(g, ctx, 2).value == primitive_coproduct(alg, g) for g in alg.generators)
    anti_ok = all(twisted_antipode(g, ctx, 2)[0].value == UEAElement.gen(alg, g, -1) for g in alg.generators)
    return table.is_zero() and coprod_ok and anti_ok, {
        "table_zero": table.is_zero(), "coproduct_primitive": coprod_ok, "antipode_minus": anti_ok}


# ---------------------------------------------------------------------------
# suite assembly


def _plan(suite: str, d: int, algebra: LieAlgebra | None, cocycle_order: int) -> list[tuple]:
    """[(suite, name, function, args)] for one suite."""
    jobs: list[tuple] = []
    if suite == "jacobi":
        if algebra is not None:
            jobs.append((suite, f"jacobi {algebra.signature} d={algebra.dim} (file)", check_jacobi, (algebra,)))
        else:
            for sig in SIGNATURES:
                for dd in (2, 3, 4):
                    jobs.append((suite, f"jacobi {sig} d={dd}", check_jacobi, (build_algebra(sig, dd),)))
    elif suite == "homomorphism":
        if algebra is not None:
            if algebra.signature not in SIGNATURES:
                raise InvalidInput("homomorphism check needs an nh+, nh- or galilei algebra file")
            jobs.append((suite, f"homomorphism {algebra.signature} d={algebra.dim} (file)",
                         check_homomorphism, (algebra,)))
        else:
            for sig in SIGNATURES:
                jobs.append((suite, f"homomorphism {sig} d={d}", check_homomorphism, (build_algebra(sig, d),)))
        for sig in SIGNATURES:
            jobs.append((suite, f"flows {sig} d={d}", check_flows, (sig, d)))
        jobs.append((suite, f"galilei realization is the limit d={d}", check_realization_limit, (d,)))
    elif suite == "cybe":
        alg = algebra if algebra is not None else build_algebra("nh+", d)
        for k in TWIST_IDS:
            jobs.append((suite, f"cybe twist {k}", check_cybe, (k, alg)))
        jobs.append((suite, "cybe K1^H nonzero (negative control)", check_cybe_negative, (alg,)))
    elif suite == "cocycle":
        for k in TWIST_IDS:
            jobs.append((suite, f"cocycle+normalization twist {k} order {cocycle_order}",
                         check_cocycle, (k, "nh+", d, cocycle_order)))
    elif suite == "star-jacobi":
        for sig in ("nh+", "nh-"):
            for k in TWIST_IDS:
                jobs.append((suite, f"star-jacobi twist {k} {sig}", check_star_jacobi, (k, sig, d)))
    elif suite == "contraction":
        for k in TWIST_IDS:
            jobs.append((suite, f"two-path twist {k}", check_contraction, (k, d)))
        jobs.append((suite, f"contract_algebra d={d}", check_contract_algebra, (d,)))
    elif suite == "golden":
        for sig in SIGNATURES:
            for k in TWIST_IDS:
                jobs.append((suite, f"golden twist {k} {sig}", check_golden, (k, sig, d)))
    elif suite == "oracle":
        for sig in SIGNATURES:
            for k in TWIST_IDS:
                jobs.append((suite, f"oracle twist {k} {sig}", check_oracle, (k, sig, d)))
    elif suite == "zero-deformation":
        for sig in SIGNATURES:
            for k in TWIST_IDS:
                jobs.append((suite, f"zero deformation twist {k} {sig}", check_zero_deformation, (k, sig, d)))
    else:
        raise InvalidInput(f"unknown suite {suite!r}")
    return jobs


def _run_job(job) -> CheckResult:
    suite, name, fn, args = job
    t0 = time.perf_counter()
    try:
        ok, detail = fn(*args)
    except Exception as exc:  # a crashing check is a failing check
        ok, detail = False, {"error": f"{type(exc).__name__}: {exc}"}
    return CheckResult(suite, name, bool(ok), detail, time.perf_counter() - t0)


def resolve_suites(name: str) -> list[str]:
    name = ALIASES.get(name, name)
    if name == "all":
        return list(SUITES)
    if name not in SUITES:
        raise InvalidInput(f"unknown suite {name!r}; choose from all, {', '.join(SUITES)}")
    return [name]


def run_checks(suites: list[str], d: int = 3, algebra: LieAlgebra | None = None,
               cocycle_order: int = 3, jobs: int = 1) -> list[CheckResult]:
    plan = [job for s in suites for job in _plan(s, d, algebra, cocycle_order)]
    if jobs > 1 and algebra is None:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_run_job, plan))
    return [_run_job(job) for job in plan]


def build_report(results: list[CheckResult], timestamp: str | None = None) -> dict:
    suites: dict = {}
    for r in results:
        entry = suites.setdefault(r.suite, {"status": "pass", "checks": []})
        entry["checks"].append(r.as_dict())
        if not r.ok:
            entry["status"] = "fail"
    failed = [r.name for r in results if not r.ok]
    return {
        "schema": SCHEMA,
        "version": __version__,
        "status": "fail" if failed else "pass",
        "summary": {"checks": len(results), "passed": len(results) - len(failed), "failed": len(failed),
                    "failing": failed},
        "suites": suites,
        "run": {
            "timestamp": timestamp or datetime.now(timezone.utc).isoformat(timespec="seconds"),
            "timings": {r.name: round(r.seconds, 4) for r in results},
        },
    }
