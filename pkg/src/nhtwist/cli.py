"""Command-line interface: ``nhtwist {algebra,table,verify,coproduct}``.

Exit codes: 0 pass, 1 verification or golden failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import __version__
from .errors import InvalidInput, NHTwistError, TruncationNotDetected
from .golden import ERRATUM, MATCH, compare_with_golden, golden_item
from .lie import LieAlgebra, build_algebra, canonical_signature, combo_str, load_algebra_file, parse_generator
from .oracle import check_entry
from .rmatrix import MATRIX_TWISTS, beta_name
from .symbolic import Expr, Scalar, from_json_ast, parse_scalar, to_json_ast, to_latex, to_plain
from .twist import classify, make_context, table_from_context, twisted_coproduct
from .uea import format_tensor

TABLE_SCHEMA = "nhtwist.table/1"
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# argument helpers


def _parse_value(text: str) -> Scalar:
    text = text.strip()
    try:
        return Scalar(Fraction(text))  # integers, rationals and exact decimals
    except (ValueError, ZeroDivisionError):
        pass
    try:
        return parse_scalar(text)
    except (ValueError, InvalidInput) as exc:
        raise UsageError(f"cannot parse parameter value {text!r}") from exc


def parse_params(text: str | None, twist: int, d: int):
    """``--params`` string to the form accepted by ``rmatrix_catalog``.

    Matrix twists take ``kl=value`` or ``beta{n}_{kl}=value`` items (missing
    entries are zero, the antisymmetric partner is implied); scalar twists take
    ``beta=value`` or ``beta{n}=value``.
    """
    if text is None or text.strip() in ("", "symbolic"):
        return None
    items = {}
    for chunk in text.split(","):
        if not chunk.strip():
            continue
        if "=" not in chunk:
            raise UsageError(f"parameter item {chunk!r} is not of the form name=value")
        key, value = (s.strip() for s in chunk.split("=", 1))
        items[key] = _parse_value(value)
    if twist in MATRIX_TWISTS:
        out = {}
        prefix = f"beta{twist}_"
        for key, v in items.items():
            idx = key[len(prefix):] if key.startswith(prefix) else key
            if len(idx) != 2 or not idx.isdigit():
                raise UsageError(f"matrix parameter {key!r} must be written kl=value or {prefix}kl=value")
            out[(int(idx[0]), int(idx[1]))] = Expr.const(v)
        return out
    allowed = {"beta", beta_name(twist)}
    for key in items:
        if key not in allowed:
            raise UsageError(f"twist {twist} takes a single parameter (beta=value), got {key!r}")
    return Expr.const(next(iter(items.values()))) if items else Expr()


def parse_fixed(text: str | None):
    if text is None:
        return None
    try:
        return tuple(int(p) for p in text.split(","))
    except ValueError as exc:
        raise UsageError(f"--fixed-indices expects comma-separated integers, got {text!r}") from exc


def _check_dim(d: int) -> None:
    if d < 1:
        raise UsageError("--dim must be >= 1")


def _check_twist(k: int) -> None:
    if not 1 <= k <= 15:
        raise UsageError("--twist must be in 1..15")


def _signature(text: str) -> str:
    try:
        return canonical_signature(text)
    except InvalidInput as exc:
        raise UsageError(str(exc)) from exc


# ---------------------------------------------------------------------------
# table documents


@dataclass
class TableDocument:
    twist: int
    signature: str
    dim: int
    params: object  # "symbolic" or {name: value string}
    fixed_indices: list | None
    relations: list  # [(lhs pair, Expr)]
    classification: dict
    errata: list = field(default_factory=list)
    check: list | None = None
    golden: dict | None = None

    def to_dict(self) -> dict:
        doc = {
            "schema": TABLE_SCHEMA,
            "twist": self.twist,
            "signature": self.signature,
            "dim": self.dim,
            "params": self.params,
            "fixed_indices": self.fixed_indices,
            "relations": [
                {"lhs": list(lhs), "rhs": {"plain": to_plain(e), "latex": to_latex(e), "ast": to_json_ast(e)}}
                for lhs, e in self.relations
            ],
            "classification": self.classification,
            "errata": self.errata,
        }
        if self.check is not None:
            doc["check"] = self.check
        if self.golden is not None:
            doc["golden"] = self.golden
        return doc

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    @classmethod
    def from_dict(cls, doc: dict) -> "TableDocument":
        if doc.get("schema") != TABLE_SCHEMA:
            raise InvalidInput(f"unsupported table schema {doc.get('schema')!r}")
        return cls(
            doc["twist"], doc["signature"], doc["dim"], doc["params"], doc["fixed_indices"],
            [(tuple(r["lhs"]), from_json_ast(r["rhs"]["ast"])) for r in doc["relations"]],
            doc["classification"], doc["errata"], doc.get("check"), doc.get("golden"),
        )

    @classmethod
    def from_json(cls, text: str) -> "TableDocument":
        return cls.from_dict(json.loads(text))

    def to_markdown(self) -> str:
        lines = [f"## Twist {self.twist}, {self.signature}, d = {self.dim}", "",
                 "| relation | value |", "|---|---|"]
        for (a, b), e in self.relations:
            lines.append(f"| [{a}, {b}] | ${to_latex(e)}$ |")
        lines += ["", f"classification: {self.classification['kind']}, "
                      f"time profile ${self.classification['time_profile_latex']}$"]
        if self.check is not None:
            lines += ["", "| relation | golden check |", "|---|---|"]
            lines += [f"| [{c['lhs'][0]}, {c['lhs'][1]}] | {c['status']} |" for c in self.check]
        for note in self.errata:
            lines.append(f"- erratum: {note}")
        return "\n".join(lines) + "\n"

    def to_latex(self) -> str:
        rows = [rf"  [{_coord_latex(a)}, {_coord_latex(b)}]_\star &= {to_latex(e)} \\"
                for (a, b), e in self.relations]
        if rows:
            rows[-1] = rows[-1][:-3]
        return "\\begin{align*}\n" + "\n".join(rows) + "\n\\end{align*}\n"


def _coord_latex(name: str) -> str:
    return "t" if name == "t" else f"x_{{{name[1:]}}}"


def _params_doc(params, twist: int):
    if params is None:
        return "symbolic"
    if isinstance(params, dict):
        return {beta_name(twist, k, l): to_plain(v) for (k, l), v in sorted(params.items())}
    return {beta_name(twist): to_plain(params)}


def build_table_document(k: int, sig: str, d: int, params=None, fixed=None, max_order=None,
                         check_paper: bool = False) -> tuple[TableDocument, bool]:
    """(document, golden_ok).  golden_ok is True when no check was requested."""
    ctx = make_context(k, sig, d, params, fixed, max_order)
    table = table_from_context(ctx, k)
    kind = classify(table)
    cls = kind.as_dict()
    cls["time_profile_latex"] = to_latex(kind.time_profile)
    doc = TableDocument(k, sig, d, _params_doc(params, k), list(table.fixed) if table.fixed else None,
                        list(table.entries.items()), cls)
    ok = True
    if check_paper:
        item = golden_item(k, sig)
        checks = compare_with_golden(table)
        rows = []
        for c in checks:
            status = c.status
            if status == ERRATUM and not check_entry(table, c.pair).ok:
                status = "mismatch"
            ok = ok and status in (MATCH, ERRATUM)
            rows.append({
                "lhs": list(c.pair),
                "status": {MATCH: "matches paper", ERRATUM: "matches oracle, paper has typo"}.get(status, status),
                "printed": None if c.printed is None else to_plain(c.printed),
                "expected": to_plain(c.expected),
            })
        doc.check = rows
        doc.golden = {"item": item.label, "printed_latex": item.printed_latex, "erratum": item.erratum}
        if item.erratum:
            doc.errata.append(f"{item.label}: {item.erratum}")
    return doc, ok


# ---------------------------------------------------------------------------
# subcommands


def _load_algebra(args) -> LieAlgebra:
    if args.algebra_file:
        try:
            return load_algebra_file(args.algebra_file)
        except OSError as exc:
            raise UsageError(f"cannot read algebra file: {exc}") from exc
    _check_dim(args.dim)
    return build_algebra(_signature(args.signature), args.dim)


def _algebra_rows(alg: LieAlgebra) -> list[tuple[str, str]]:
    rows = [(f"[{a},{b}]", combo_str(v)) for a, b, v in alg.nonzero_brackets()]
    # the time-translation / momentum row is always shown, zero or not
    shown = {r[0] for r in rows}
    for g in alg.generators:
        if g.kind == "P":
            key = f"[H,{g}]"
            if key not in shown and f"[{g},H]" not in shown:
                rows.append((key, "0"))
    return rows


def cmd_algebra(args) -> int:
    from .verify import check_homomorphism, check_jacobi, SIGNATURES
    alg = _load_algebra(args)
    rows = _algebra_rows(alg)
    report = None
    ok = True
    if args.verify:
        jac_ok, jac = check_jacobi(alg)
        report = {"jacobi": {"status": "pass" if jac_ok else "fail", **jac}}
        ok = jac_ok
        if alg.signature in SIGNATURES:
            hom_ok, hom = check_homomorphism(alg)
            report["homomorphism"] = {"status": "pass" if hom_ok else "fail", **hom}
            ok = ok and hom_ok
    if args.format == "json":
        doc = {"signature": alg.signature, "dim": alg.dim, "generators": [g.name for g in alg.generators],
               "brackets": [{"lhs": k, "rhs": v} for k, v in rows]}
        if report is not None:
            doc["verify"] = report
        print(json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False))
    else:
        if args.format == "md":
            print(f"## {alg.signature}, d = {alg.dim}\n\n| bracket | value |\n|---|---|")
            for k, v in rows:
                print(f"| {k} | {v} |")
        else:
            print(f"# {alg.signature}, d = {alg.dim}")
            for k, v in rows:
                print(f"{k} = {v}")
        if report is not None:
            for name, r in report.items():
                print(f"{name}: {r['status']} ({r['violations']} violations)")
                for item in r.get("triples", []) + r.get("pairs", []):
                    print(f"  {item}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_table(args) -> int:
    _check_twist(args.twist)
    _check_dim(args.dim)
    sig = _signature(args.signature)
    params = parse_params(args.params, args.twist, args.dim)
    if args.check_paper and params is not None:
        raise UsageError("--check-paper compares symbolic tables; drop --params")
    fixed = parse_fixed(args.fixed_indices)
    doc, ok = build_table_document(args.twist, sig, args.dim, params, fixed, args.order, args.check_paper)
    if args.format == "json":
        sys.stdout.write(doc.to_json())
    elif args.format == "md":
        sys.stdout.write(doc.to_markdown())
    else:
        sys.stdout.write(doc.to_latex())
    if args.check_paper:
        summary = "match" if all(c["status"] == "matches paper" for c in doc.check) else (
            "match (with errata)" if ok else "mismatch")
        print(f"golden check: {summary}", file=sys.stderr)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_verify(args) -> int:
    from .verify import build_report, resolve_suites, run_checks
    if args.jobs < 1:
        raise UsageError("--jobs must be >= 1")
    _check_dim(args.dim)
    algebra = _load_algebra(args) if args.algebra_file else None
    suites = resolve_suites(args.suite)
    results = run_checks(suites, args.dim, algebra, args.order or 3, args.jobs)
    report = build_report(results)
    if args.format == "json":
        text = json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    else:
        lines = [f"{'PASS' if r.ok else 'FAIL'}  {r.name}" for r in results]
        for r in results:
            if not r.ok:
                lines.append(f"  {r.name}: {json.dumps(r.detail, sort_keys=True)}")
        s = report["summary"]
        lines.append(f"{s['passed']}/{s['checks']} checks passed")
        text = "\n".join(lines) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK if report["status"] == "pass" else EXIT_FAIL


def cmd_coproduct(args) -> int:
    _check_twist(args.twist)
    _check_dim(args.dim)
    sig = _signature(args.signature)
    try:
        sign, gen = parse_generator(args.gen)
    except (InvalidInput, ValueError) as exc:
        raise UsageError(str(exc)) from exc
    params = parse_params(args.params, args.twist, args.dim)
    ctx = make_context(args.twist, sig, args.dim, params, parse_fixed(args.fixed_indices))
    if gen not in ctx.algebra:
        raise UsageError(f"generator {args.gen} is not in the {sig} algebra with d = {args.dim}")
    res = twisted_coproduct(gen, ctx, args.order or 8)
    value = res.value.scale(sign)
    status = "exact" if res.order == 0 and res.exact else (
        f"truncated at order {res.order}" if res.exact else f"cut off at order {res.order}, not exact")
    if args.format == "json":
        doc = {"generator": args.gen, "twist": args.twist, "signature": sig, "dim": args.dim,
               "value": format_tensor(value), "latex": format_tensor(value, latex=True),
               "exact": res.exact, "order": res.order}
        print(json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False))
    else:
        print(f"{format_tensor(value, latex=args.format == 'latex')} ({status})")
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="nhtwist", description="Twisted Newton-Hooke and Galilei Hopf algebras.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, twist: bool = True):
        if twist:
            p.add_argument("--twist", type=int, required=True, help="twist id 1..15")
        p.add_argument("--signature", default="nh+", help="nh+, nh- or galilei (default nh+)")
        p.add_argument("--dim", type=int, default=3, help="spatial dimension (default 3)")

    p = sub.add_parser("algebra", help="print a bracket table, optionally verified")
    common(p, twist=False)
    p.add_argument("--verify", action="store_true", help="run the Jacobi and homomorphism checks")
    p.add_argument("--format", choices=("text", "md", "json"), default="text")
    p.add_argument("--algebra-file", help="custom structure-constant file")
    p.set_defaults(func=cmd_algebra)

    p = sub.add_parser("table", help="deformed space-time commutators of one twist")
    common(p)
    p.add_argument("--format", choices=("json", "md", "latex"), default="json")
    p.add_argument("--params", help="numeric parameters, e.g. 12=1/2,13=-1 or beta=2 (default symbolic)")
    p.add_argument("--fixed-indices", help="m,k,l for twists 5/9/13/14, i,j for twist 15")
    p.add_argument("--order", type=int, help="star-product truncation bound (default NHTWIST_MAX_ORDER or 8)")
    p.add_argument("--check-paper", action="store_true", help="compare with the embedded printed forms")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("suite", nargs="?", default="all",
                   help="all, jacobi, homomorphism, cybe, cocycle, star-jacobi, contraction, "
                        "golden, oracle, zero-deformation")
    p.add_argument("--dim", type=int, default=3)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--order", type=int, help="cocycle expansion order (default 3)")
    p.add_argument("--algebra-file", help="check this algebra instead of the built-in ones")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("--output", help="write the report to a file")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("coproduct", help="twisted coproduct of one generator")
    common(p)
    p.add_argument("--gen", required=True, help="generator name, e.g. P1, K2, M12, H")
    p.add_argument("--order", type=int, help="adjoint series bound (default 8)")
    p.add_argument("--params", help="numeric parameters (see table)")
    p.add_argument("--fixed-indices", help="fixed indices (see table)")
    p.add_argument("--format", choices=("text", "latex", "json"), default="text")
    p.set_defaults(func=cmd_coproduct)
    return ap


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "order", None) is not None and args.order < 1:
        parser.error("--order must be >= 1")
    try:
        return args.func(args)
    except (UsageError, InvalidInput) as exc:
        print(f"nhtwist: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except TruncationNotDetected as exc:
        print(f"nhtwist: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except NHTwistError as exc:
        print(f"nhtwist: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
