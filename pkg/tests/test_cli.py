import json

import pytest

from nhtwist.cli import TableDocument, build_table_document, main, parse_fixed, parse_params, UsageError
from nhtwist.symbolic import Expr


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def walk(node):
    yield node
    if isinstance(node, dict):
        for v in node.values():
            yield from walk(v)
    elif isinstance(node, list):
        for v in node:
            yield from walk(v)


def test_parse_params():
    from fractions import Fraction
    assert parse_params(None, 10, 3) is None
    p = parse_params("12=1/2,beta10_13=-1", 10, 3)
    assert p == {(1, 2): Expr.const(Fraction(1, 2)), (1, 3): Expr.const(-1)}
    assert parse_params("beta=2", 13, 3) == Expr.const(2)
    for bad in ("12=x", "beta=1", "12"):
        with pytest.raises(UsageError):
            parse_params(bad, 10, 3)
    assert parse_fixed("3,1,2") == (3, 1, 2)


def test_table_json(capsys):
    code, out, _ = run(capsys, "table", "--twist", "10", "--signature", "nh-")
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == "nhtwist.table/1"
    rel = {tuple(r["lhs"]): r["rhs"]["plain"] for r in doc["relations"]}
    assert rel[("x1", "x2")] == "2i*beta10_12*C-^2"
    assert doc["classification"]["kind"] == "ConstantTheta"
    assert not any(isinstance(n, float) for n in walk(doc))


def test_table_json_round_trip():
    doc, ok = build_table_document(13, "nh+", 3, check_paper=True)
    assert ok
    again = TableDocument.from_json(doc.to_json())
    assert again.to_json() == doc.to_json()
    assert again.relations == doc.relations


def test_table_deterministic(capsys):
    a = run(capsys, "table", "--twist", "7", "--signature", "nh+")[1]
    b = run(capsys, "table", "--twist", "7", "--signature", "nh+")[1]
    assert a == b


@pytest.mark.parametrize("k,sig,summary", [(10, "nh-", "match"), (1, "galilei", "match"),
                                            (7, "nh-", "match (with errata)"),
                                            (9, "galilei", "match (with errata)")])
def test_check_golden_forms(capsys, k, sig, summary):
    code, out, err = run(capsys, "table", "--twist", str(k), "--signature", sig, "--check-paper")
    assert code == 0
    assert err.strip() == f"golden check: {summary}"
    statuses = {c["status"] for c in json.loads(out)["check"]}
    assert statuses <= {"matches paper", "matches oracle, paper has typo"}


def test_galilei_item_1_form(capsys):
    _, out, _ = run(capsys, "table", "--twist", "1", "--signature", "galilei")
    rel = {tuple(r["lhs"]): r["rhs"]["plain"] for r in json.loads(out)["relations"]}
    assert rel[("x1", "x2")] == "2i*t^6*beta1_12"


def test_table_formats(capsys):
    _, md, _ = run(capsys, "table", "--twist", "15", "--format", "md")
    assert md.startswith("## Twist 15, nh+, d = 3")
    _, tex, _ = run(capsys, "table", "--twist", "10", "--format", "latex", "--dim", "2")
    assert tex.startswith("\\begin{align*}") and "[x_{1}, x_{2}]_\\star" in tex


def test_table_numeric_params(capsys):
    code, out, _ = run(capsys, "table", "--twist", "12", "--params", "12=1/2", "--dim", "2")
    assert code == 0
    rel = {tuple(r["lhs"]): r["rhs"]["plain"] for r in json.loads(out)["relations"]}
    assert rel[("x1", "x2")] == "i*tau^2*S+^2"


@pytest.mark.parametrize("argv", [
    ["table", "--twist", "5", "--dim", "2"],
    ["table", "--twist", "16"],
    ["table", "--twist", "10", "--signature", "ads"],
    ["table", "--twist", "10", "--params", "12=1", "--check-paper"],
    ["table", "--twist", "10", "--params", "11=1"],
    ["table", "--twist", "10", "--params", "45=1"],
    ["table", "--twist", "13", "--fixed-indices", "1,1,2"],
    ["algebra", "--dim", "0"],
    ["coproduct", "--twist", "10", "--gen", "Q1"],
    ["coproduct", "--twist", "10", "--gen", "P4"],
    ["verify", "nonsense"],
    ["verify", "cybe", "--jobs", "0"],
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert "error" in err


def test_bad_flag_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["table", "--twist", "10", "--order", "0"])
    assert exc.value.code == 2


def test_truncation_exit_code(capsys):
    code, _, err = run(capsys, "table", "--twist", "15", "--order", "1")
    assert code == 1
    assert err


def test_algebra_command(capsys):
    code, out, _ = run(capsys, "algebra", "--signature", "galilei", "--dim", "2", "--verify")
    assert code == 0
    assert "[H,P1] = 0" in out
    assert "jacobi: pass" in out
    code, out, _ = run(capsys, "algebra", "--signature", "nh-", "--format", "json")
    doc = json.loads(out)
    assert {"lhs": "[P1,H]", "rhs": "(i*tau^-2)*K1"} in doc["brackets"]


def test_algebra_file_fault(capsys, tmp_path):
    from nhtwist.lie import build_algebra, format_algebra_file
    text = format_algebra_file(build_algebra("nh+", 3))
    lines = [ln for ln in text.splitlines() if not ln.startswith("bracket F1 H")]
    lines.append("bracket F1 H = -3i*K1")
    path = tmp_path / "broken.alg"
    path.write_text("\n".join(lines) + "\n")
    code, out, _ = run(capsys, "algebra", "--algebra-file", str(path), "--verify")
    assert code == 1
    assert "(F1, M12, H)" in out
    code, _, _ = run(capsys, "verify", "jacobi", "--algebra-file", str(path))
    assert code == 1
    code, _, err = run(capsys, "algebra", "--algebra-file", str(tmp_path / "missing"))
    assert code == 2


def test_coproduct_command(capsys):
    code, out, _ = run(capsys, "coproduct", "--twist", "10", "--gen", "P1")
    assert code == 0 and out.strip() == "1⊗P1 + P1⊗1 (exact)"
    code, out, _ = run(capsys, "coproduct", "--twist", "11", "--gen", "H", "--dim", "2")
    assert out.strip().endswith("(truncated at order 1)")
    code, out, _ = run(capsys, "coproduct", "--twist", "11", "--gen", "H", "--params", "12=0", "--dim", "2")
    assert out.strip() == "1⊗H + H⊗1 (exact)"
    code, out, _ = run(capsys, "coproduct", "--twist", "13", "--gen", "H", "--format", "json")
    doc = json.loads(out)
    assert doc["exact"] is True


def test_verify_json_output(capsys, tmp_path):
    path = tmp_path / "report.json"
    code, out, _ = run(capsys, "verify", "cybe", "--format", "json", "--output", str(path))
    assert code == 0 and out == ""
    doc = json.loads(path.read_text())
    assert doc["status"] == "pass" and doc["summary"]["failed"] == 0
    code, out, _ = run(capsys, "verify", "realization")
    assert code == 0 and out.strip().endswith("checks passed")


def test_version(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
    assert "0.1.0" in capsys.readouterr().out
