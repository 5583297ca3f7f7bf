"""Acceptance criteria, one test per criterion.

Each test records a line ``[PASS]``/``[FAIL]`` with its measured numbers;
``conftest.py`` prints the collected lines at the end of the pytest run, and
``python3 tests/test_acceptance.py`` prints them directly.
"""

import time

import pytest

from slice_clifford.hermite import (
    check_commutant, check_kernel, check_laguerre, check_listed_table, check_lowering,
    check_ode, check_oscillator, check_rodrigues, hermite_function,
)
from slice_clifford.inner_product import check_orthogonality, check_selfadjoint
from slice_clifford.exact_scalar import Rational
from slice_clifford.operators import check_osp_relations, check_power_identities
from slice_clifford.oracle_numeric import compare_table, fd_check_d0, fd_sample_points
from slice_clifford.reports import Report

RESULTS: dict[int, str] = {}
TIMES: dict[int, float] = {}

OSP_BUDGET_S = 10.0
SUITE_BUDGET_S = 120.0
ORACLE_TOL = 1e-8
FD_TOL = 1e-8


def record(n: int, title: str, ok: bool, detail: str, seconds: float) -> None:
    TIMES[n] = seconds
    RESULTS[n] = f"[{'PASS' if ok else 'FAIL'}] criterion {n:>2}: {title} ({detail}; {seconds:.2f} s)"


def merged(name: str, reports) -> Report:
    out = Report(name)
    for r in reports:
        out.merge(r, prefix=r.suite)
    return out


def test_c01_osp_relations():
    t = time.perf_counter()
    report = check_osp_relations(8, (0, Rational(1, 4), Rational(1, 2)), dressed=True)
    dt = time.perf_counter() - t
    rel = report.details["relations"]
    ok = report.passed and len(rel) == 10 and all(v["checked"] == 3 * 180 for v in rel.values())
    ok_time = dt < OSP_BUDGET_S
    record(1, "osp(1|2) relations on dressed monomials, degree <= 8", ok and ok_time,
           f"{sum(not v['failures'] for v in rel.values())}/10 relations, {report.checks} checks, "
           f"budget {OSP_BUDGET_S:.0f} s", dt)
    assert ok, report.failures
    assert ok_time, f"osp sweep took {dt:.2f} s"


def test_c02_power_identities():
    t = time.perf_counter()
    report = check_power_identities(4, 6)
    dt = time.perf_counter() - t
    record(2, "power identities, s <= 4, degree <= 6", report.passed,
           f"{report.checks} checks, {report.n_failed} failures", dt)
    assert report.passed, report.failures


def test_c03_kernel():
    t = time.perf_counter()
    parts = [check_kernel(k) for k in range(11)]
    report = merged("kernel", parts)
    dims = [p.details["dimension"] for p in parts]
    dt = time.perf_counter() - t
    ok = report.passed and dims == [4] * 11
    record(3, "dim ker D0 = 4 and kernel inside m_k*S, k <= 10", ok,
           f"dims {dims}, {report.checks} checks", dt)
    assert ok, report.failures


def test_c04_hermite_tables():
    t = time.perf_counter()
    report = merged("tables", [check_listed_table(6), check_laguerre(12, 6)])
    dt = time.perf_counter() - t
    record(4, "listed h_{j,k} (j <= 4) and Laguerre form (j <= 12, k <= 6)", report.passed,
           f"{report.checks} checks, {report.n_failed} failures", dt)
    assert report.passed, report.failures


def test_c05_ode_ladder():
    t = time.perf_counter()
    parts = [check_commutant(6)]
    for j in range(9):
        for k in range(6):
            parts += [check_lowering(j, k), check_ode(j, k)]
    report = merged("ode", parts)
    dt = time.perf_counter() - t
    record(5, "lowering, ODE with C(j,k), shifted recursion, B(j,k), commutant; j <= 8, k <= 5",
           report.passed, f"{report.checks} checks, {report.n_failed} failures", dt)
    assert report.passed, report.failures


def test_c06_rodrigues():
    t = time.perf_counter()
    report = check_rodrigues(6, 4, (2, 4, 8))
    dt = time.perf_counter() - t
    record(6, "Rodrigues formula, lambda in {2,4,8}, j <= 6, k <= 4", report.passed,
           f"{report.checks} checks, {report.n_failed} failures", dt)
    assert report.passed, report.failures


def test_c07_orthogonality():
    t = time.perf_counter()
    report = check_orthogonality(5, 4, (2, 3), range(1, 9))
    dt = time.perf_counter() - t
    norm00 = report.details["diagonal"][2]["0,0"]
    ok = report.passed and norm00 == "4*c*pi^2"
    record(7, "Gram j <= 5, k <= 4, m in {2,3}; beta scan lambda = 1..8", ok,
           f"{report.checks} checks, <psi00,psi00>_(m=2) = {norm00}", dt)
    assert ok, report.failures


def test_c08_oscillator():
    t = time.perf_counter()
    report = merged("oscillator", [check_oscillator(j, k) for j in range(9) for k in range(6)])
    dt = time.perf_counter() - t
    record(8, "oscillator eigenvalue j+k+1, j <= 8, k <= 5", report.passed,
           f"{report.checks} checks, {report.n_failed} failures", dt)
    assert report.passed, report.failures


def test_c09_selfadjoint():
    t = time.perf_counter()
    report = merged("adjoint", [check_selfadjoint(5, 4, m) for m in (2, 3)])
    dt = time.perf_counter() - t
    record(9, "<D0 f,g> = <f,D0 g> and <x f,g> = -<f,x g> over the psi sweep", report.passed,
           f"{report.checks} checks, {report.n_failed} failures", dt)
    assert report.passed, report.failures


def test_c10_oracle():
    t = time.perf_counter()
    rows = compare_table(3, 3, (2, 3), 1.0)
    worst_q = max(r.rel_error for r in rows)
    converged = all(r.converged for r in rows)
    worst_fd = 0.0
    for m in (2, 3):
        pts = fd_sample_points(m)
        assert len(pts) == 5
        for j in range(4):
            for k in range(4):
                f = hermite_function(j, k).value
                worst_fd = max(worst_fd, max(fd_check_d0(f, p) for p in pts))
    dt = time.perf_counter() - t
    ok = worst_q < ORACLE_TOL and converged and worst_fd < FD_TOL
    record(10, "quadrature vs exact (j,k <= 3, m in {2,3}, c=1) and finite-difference D0", ok,
           f"max rel err {worst_q:.2e} over {len(rows)} values, max fd err {worst_fd:.2e} "
           f"at 5 points, tol {ORACLE_TOL:g}", dt)
    assert ok


def test_c99_total_runtime():
    total = sum(TIMES.values())
    if len(TIMES) < 10:
        pytest.skip("runtime budget needs all ten criteria in the same run")
    RESULTS[99] = (f"[{'PASS' if total < SUITE_BUDGET_S else 'FAIL'}] full acceptance runtime "
                   f"{total:.1f} s (budget {SUITE_BUDGET_S:.0f} s)")
    assert total < SUITE_BUDGET_S


if __name__ == "__main__":
    import sys

    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_c")]
    failed = 0
    for fn in tests:
        try:
            fn()
        except (AssertionError, pytest.skip.Exception):
            failed += 1
    for n in sorted(RESULTS):
        print(RESULTS[n])
    sys.exit(1 if failed else 0)
