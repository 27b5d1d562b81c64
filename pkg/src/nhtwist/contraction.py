"""The tau -> infinity contraction of tables and algebras."""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InvalidInput
from .golden import ERRATUM, MATCH, compare_with_golden
from .lie import LieAlgebra
from .symbolic import Expr, limit_tau_inf, taylor_atoms, to_plain
from .twist import CommutatorTable, spacetime_table


def contract_table(table: CommutatorTable) -> CommutatorTable:
    """Entry-wise tau -> infinity limit of an NH+ or NH- table."""
    if table.signature == "galilei":
        raise InvalidInput("contract_table expects an nh+ or nh- table")
    entries = {pair: limit_tau_inf(e) for pair, e in table.entries.items()}
    return CommutatorTable(table.twist, "galilei", table.dim, entries, table.fixed)


def contract_algebra(alg: LieAlgebra) -> LieAlgebra:
    """Limit every structure constant; tau^-n coefficients vanish."""
    if alg.signature == "galilei":
        raise InvalidInput("contract_algebra expects an nh+ or nh- algebra")
    out = alg.map_coefficients(limit_tau_inf)
    return LieAlgebra(out.dim, "galilei", out.generators, out.brackets)


@dataclass
class ContractionEntry:
    pair: tuple
    nh: Expr
    series: Expr
    limit: Expr
    golden_status: str
    note: str | None = None

    def as_dict(self) -> dict:
        return {
            "lhs": list(self.pair),
            "nh": to_plain(self.nh),
            "series": to_plain(self.series),
            "limit": to_plain(self.limit),
            "golden": self.golden_status,
            "note": self.note,
        }


@dataclass
class ContractionReport:
    twist: int
    dim: int
    entries: dict = field(default_factory=dict)  # signature -> [ContractionEntry]
    diffs: list = field(default_factory=list)  # (pair, {path: Expr}) where the paths disagree

    @property
    def ok(self) -> bool:
        return not self.diffs and all(
            e.golden_status in (MATCH, ERRATUM) for rows in self.entries.values() for e in rows)

    def as_dict(self) -> dict:
        return {
            "twist": self.twist,
            "dim": self.dim,
            "ok": self.ok,
            "entries": {sig: [e.as_dict() for e in rows] for sig, rows in sorted(self.entries.items())},
            "diffs": [{"lhs": list(p), "paths": {k: to_plain(v) for k, v in sorted(paths.items())}}
                      for p, paths in self.diffs],
        }


def two_path_check(k: int, d: int = 3, params=None, fixed=None) -> ContractionReport:
    """Compare lim(NH+ table), lim(NH- table) and the table built from the
    Galilei realization; also grade the limits against the printed forms."""
    report = ContractionReport(k, d)
    direct = spacetime_table(k, "galilei", d, params, fixed)
    limits = {}
    for sig in ("nh+", "nh-"):
        nh = spacetime_table(k, sig, d, params, fixed)
        lim = contract_table(nh)
        limits[sig] = lim
        checks = {c.pair: c for c in compare_with_golden(lim)} if params is None else {}
        rows = []
        for pair, e in nh.entries.items():
            series = taylor_atoms(e, max(e.max_tau_power(), 0) + 2)
            chk = checks.get(pair)
            rows.append(ContractionEntry(pair, e, series, lim.entries[pair],
                                         chk.status if chk else "unchecked", chk.note if chk else None))
        report.entries[sig] = rows
    for pair in direct.entries:
        paths = {"nh+": limits["nh+"].entries[pair], "nh-": limits["nh-"].entries[pair],
                 "galilei": direct.entries[pair]}
        if len(set(paths.values())) != 1:
            report.diffs.append((pair, paths))
    return report
