import pytest

from nhtwist.errors import InvalidInput
from nhtwist.lie import F, H, K, build_algebra
from nhtwist.symbolic import IMAG
from nhtwist.verify import (
    SCHEMA, SUITES, build_report, check_cybe_negative, check_jacobi, resolve_suites, run_checks,
)


def test_resolve_suites():
    assert resolve_suites("all") == list(SUITES)
    assert resolve_suites("realization") == ["homomorphism"]
    with pytest.raises(InvalidInput):
        resolve_suites("nonsense")


@pytest.mark.parametrize("suite", ["jacobi", "homomorphism", "cybe", "contraction", "zero-deformation"])
def test_fast_suites_pass(suite):
    results = run_checks([suite], d=3)
    assert results
    assert all(r.ok for r in results), [r.name for r in results if not r.ok]


def test_negative_control_passes():
    ok, detail = check_cybe_negative(build_algebra("nh+", 3))
    assert ok
    assert detail


def test_fault_injected_algebra_fails():
    broken = build_algebra("nh+", 3).with_bracket(H, F(1), {K(1): IMAG.scale(3)})
    ok, detail = check_jacobi(broken)
    assert not ok
    assert "(F1, M12, H)" in " ".join(detail["triples"])
    results = run_checks(["jacobi", "homomorphism"], d=3, algebra=broken)
    failing = {r.name for r in results if not r.ok}
    assert "jacobi nh+ d=3 (file)" in failing
    assert "homomorphism nh+ d=3 (file)" in failing


def test_report_layout():
    results = run_checks(["cybe"], d=3)
    report = build_report(results, timestamp="2000-01-01T00:00:00+00:00")
    assert report["schema"] == SCHEMA
    assert report["status"] == "pass"
    assert report["summary"]["checks"] == len(results) == 16
    assert set(report["run"]) == {"timestamp", "timings"}
    assert report["suites"]["cybe"]["status"] == "pass"


def test_crashing_check_is_a_failure():
    from nhtwist.verify import _run_job

    def boom():
        raise RuntimeError("bad")
    r = _run_job(("x", "boom", boom, ()))
    assert not r.ok and "RuntimeError" in r.detail["error"]


def test_parallel_matches_serial():
    serial = build_report(run_checks(["cybe", "contraction"], d=3), timestamp="t")
    parallel = build_report(run_checks(["cybe", "contraction"], d=3, jobs=2), timestamp="t")
    serial.pop("run")
    parallel.pop("run")
    assert serial == parallel
