"""``slice-clifford`` command line: verification suites and table emitters.

Exit status is 0 when every check of the selected suite passed, 1 when any
failed (the report carries witnesses) and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from contextlib import contextmanager
from functools import partial
from typing import Callable, Iterator, Optional, Sequence

from .exact_scalar import Rational, as_rational
from .reports import Report

THREADS_ENV = "SLICE_CLIFFORD_THREADS"
FD_TOL = 1e-8
QUAD_TOL = 1e-8


class Table:
    def __init__(self, columns: Sequence[str], rows: Optional[list] = None):
        self.columns = list(columns)
        self.rows = rows or []

    def add(self, *row) -> None:
        self.rows.append([_cell(v) for v in row])

    def to_json(self) -> dict:
        return {"columns": self.columns, "rows": self.rows}


def _cell(v):
    if isinstance(v, (bool, int, float, str)) or v is None:
        return v
    return str(v)


# --- argument types ----------------------------------------------------------

def _nonneg_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if v < 0:
        raise argparse.ArgumentTypeError("caps must be nonnegative")
    return v


def _m_list(text: str) -> list[int]:
    try:
        values = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma list of integers, got {text!r}")
    if not values or any(v < 1 for v in values):
        raise argparse.ArgumentTypeError("every m must be at least 1")
    return values


def _lambda_list(text: str) -> list[Rational]:
    try:
        values = [as_rational(t.strip()) for t in text.split(",") if t.strip()]
    except (ValueError, TypeError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a comma list of rationals, got {text!r}")
    if not values or any(v <= 0 for v in values):
        raise argparse.ArgumentTypeError("every lambda must be positive")
    return values


def _positive_float(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}")
    if not v > 0:
        raise argparse.ArgumentTypeError("c must be positive")
    return v


# --- parallel fan-out ----------------------------------------------------------

def thread_cap() -> int:
    raw = os.environ.get(THREADS_ENV, "").strip()
    if not raw:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


@contextmanager
def mapper(n_cases: int) -> Iterator[Callable]:
    """Order-preserving map over at most ``SLICE_CLIFFORD_THREADS`` processes."""
    workers = min(thread_cap(), n_cases)
    if workers <= 1:
        yield map
        return
    with ProcessPoolExecutor(max_workers=workers) as pool:
        yield pool.map


# --- suites --------------------------------------------------------------------

def cmd_verify_osp(args) -> tuple[Report, Table]:
    from .operators import check_osp_relations

    report = check_osp_relations(args.degree, (0, Rational(1, 4), Rational(1, 2)), dressed=True)
    table = Table(["relation", "checked", "failures"])
    rel = report.details["relations"]
    for label, entry in rel.items():
        table.add(label, entry["checked"], len(entry["failures"]))
    ok = sum(1 for e in rel.values() if not e["failures"])
    report.details["headline"] = f"{ok}/{len(rel)} relations, {report.checks} checks"
    return report, table


def cmd_verify_powers(args) -> tuple[Report, None]:
    from .operators import check_power_identities

    return check_power_identities(args.smax, args.degree), None


def cmd_verify_hermite(args) -> tuple[Report, Table]:
    from .hermite import verify_hermite

    with mapper(args.kmax + 1) as run:
        report = verify_hermite(j_max=args.jmax, k_max=args.kmax, mapper=run)
    table = Table(["part", "checks", "failures"])
    for name, entry in report.details["parts"].items():
        table.add(name, entry["checks"], entry["failures"])
    return report, table


def cmd_verify_orthogonality(args) -> tuple[Report, Table]:
    from .inner_product import check_orthogonality

    report = check_orthogonality(args.jmax, args.kmax, args.m, args.lambdas)
    table = Table(["m", "j", "k", "norm"])
    for m, diag in report.details["diagonal"].items():
        for jk, value in diag.items():
            j, k = jk.split(",")
            table.add(m, int(j), int(k), value)
    return report, table


def cmd_verify_adjoint(args) -> tuple[Report, Table]:
    report = Report("adjoint", anchor="D0 self-adjoint and x skew-adjoint")
    table = Table(["m", "checks", "failures"])
    job = partial(_adjoint_case, args.jmax, args.kmax, args.degree)
    with mapper(len(args.m)) as run:
        parts = list(run(job, args.m))
    for m, part in zip(args.m, parts):
        report.merge(part, prefix=f"m={m}")
        table.add(m, part.checks, part.n_failed)
    return report, table


def _adjoint_case(j_max: int, k_max: int, degree: int, m: int) -> Report:
    from .inner_product import check_selfadjoint

    return check_selfadjoint(j_max, k_max, m, degree)


def cmd_kernel(args) -> tuple[Report, Table]:
    from .hermite import check_kernel
    from .operators import kernel_basis

    report = check_kernel(args.k)
    table = Table(["vector", "polynomial"])
    for n, v in enumerate(kernel_basis(args.k)):
        table.add(n, v)
    return report, table


def cmd_table_hermite(args) -> tuple[Report, Table]:
    from .hermite import h_from_laguerre, hermite_poly, monogenic

    h = h_from_laguerre(args.j, args.k)
    report = Report("table-hermite", anchor="Laguerre closed form of h_{j,k}")
    generated = hermite_poly(args.j, args.k).poly
    report.check(h * monogenic(args.k) == generated, {"j": args.j, "k": args.k},
                 str(generated), str(h * monogenic(args.k)))
    table = Table(["x0_power", "r_power", "component", "coefficient"])
    names = ("1", "e0", "w", "w*e0")
    for (a, b), coeff in sorted(h.terms().items()):
        for s in range(4):
            if coeff[s]:
                table.add(a, b, names[s], coeff[s])
    report.details = {"j": args.j, "k": args.k, "h": str(h)}
    return report, table


def cmd_gram(args) -> tuple[Report, Table]:
    from .inner_product import gram_matrix

    report = Report("orthogonality", anchor="orthogonality of Clifford-Hermite functions")
    cache: dict = {}
    table = None
    for m in args.m:
        gram = gram_matrix(args.jmax, args.kmax, m, radial_cache=cache)
        if table is None:
            table = Table(["m", "row"] + [f"psi({j},{k})" for j, k in gram.labels])
        for row in gram.labels:
            table.add(m, f"psi({row[0]},{row[1]})", *(gram.cell(row, col) for col in gram.labels))
        report.merge(gram.report, prefix=f"m={m}")
    return report, table


def cmd_beta_scan(args) -> tuple[Report, Table]:
    from .inner_product import beta_scan

    report = Report("beta-scan", anchor="orthogonality forces beta = 4c")
    table = Table(["m", "lambda", "beta", "inner", "closed_form", "zero"])
    for m in args.m:
        rows, part = beta_scan(args.lambdas, m)
        report.merge(part, prefix=f"m={m}")
        for row in rows:
            table.add(m, row.lam, row.beta, row.direct, row.closed_form, row.is_zero)
    return report, table


def cmd_oracle_compare(args) -> tuple[Report, Table]:
    report = Report("oracle", anchor="numeric cross-check of the exact engine")
    table = Table(["m", "f", "g", "blade", "exact", "exact_value", "numeric", "rel_error"])
    job = partial(_oracle_case, args.jmax, args.kmax, args.c)
    with mapper(len(args.m)) as run:
        parts = list(run(job, args.m))
    worst = 0.0
    for m, (rows, fd) in zip(args.m, parts):
        for row in rows:
            worst = max(worst, row.rel_error)
            table.add(m, row.f, row.g, row.component, row.exact, f"{row.exact_value:.12g}", f"{row.numeric:.12g}",
                      f"{row.rel_error:.3e}")
            report.check(row.rel_error < QUAD_TOL and row.converged,
                         {"m": m, "f": row.f, "g": row.g, "blade": row.component, "check": "quadrature"},
                         f"{row.exact_value:.15g}", f"{row.numeric:.15g}")
        for case, err in fd:
            report.check(err < FD_TOL, {"m": m, **case, "check": "finite difference"},
                         f"< {FD_TOL}", err)
    report.details = {"max_rel_error": f"{worst:.3e}", "c": args.c}
    return report, table


def _oracle_case(j_max: int, k_max: int, c_val: float, m: int):
    from .hermite import hermite_function
    from .oracle_numeric import compare_table, fd_check_d0, fd_sample_points

    rows = compare_table(j_max, k_max, (m,), c_val)
    fd = []
    for j in range(j_max + 1):
        for k in range(k_max + 1):
            f = hermite_function(j, k).value
            for n, p in enumerate(fd_sample_points(m, c_val)):
                fd.append(({"psi": [j, k], "point": n}, fd_check_d0(f, p)))
    return rows, fd


# --- output --------------------------------------------------------------------

def render(report: Report, table: Optional[Table], fmt: str) -> str:
    if fmt == "json":
        data = report.to_json()
        if table is not None:
            data["table"] = table.to_json()
        return json.dumps(data, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        if table is not None:
            writer.writerow(table.columns)
            writer.writerows(table.rows)
        else:
            writer.writerow(["suite", "passed", "checks", "failures"])
            writer.writerow([report.suite, report.passed, report.checks, report.n_failed])
        for w in report.failures:
            writer.writerow(["FAILURE", json.dumps(w["case"]), w["expected"], w["got"]])
        return buf.getvalue()
    lines = [headline(report)]
    if table is not None:
        widths = [max(len(str(x)) for x in col) for col in zip(table.columns, *table.rows)]
        for row in [table.columns] + table.rows:
            lines.append("  ".join(str(x).ljust(w) for x, w in zip(row, widths)).rstrip())
    for w in report.failures:
        lines.append(f"FAILURE {json.dumps(w['case'])}: expected {w['expected']}, got {w['got']}")
    return "\n".join(lines) + "\n"


def headline(report: Report) -> str:
    text = report.details.get("headline") if isinstance(report.details, dict) else None
    if not text:
        return report.summary()
    status = "PASS" if report.passed else "FAIL"
    line = f"[{status}] {report.suite}: {text}, {report.n_failed} failures"
    return line + (f" ({report.anchor})" if report.anchor else "")


# --- parser --------------------------------------------------------------------

def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("json", "csv", "text"), default="text")
    p.add_argument("--out", help="write the report here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="slice-clifford",
                                     description="Exact checks for slice Clifford-Hermite functions.")
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run a verification suite")
    vsub = verify.add_subparsers(dest="suite", required=True)
    p = vsub.add_parser("osp", help="osp(1|2) relations on dressed monomials")
    p.add_argument("--degree", type=_nonneg_int, default=8)
    p.set_defaults(func=cmd_verify_osp)
    p = vsub.add_parser("powers", help="D0 and E on powers of x")
    p.add_argument("--degree", type=_nonneg_int, default=6)
    p.add_argument("--smax", type=_nonneg_int, default=4)
    p.set_defaults(func=cmd_verify_powers)
    p = vsub.add_parser("hermite", help="Hermite tables, recursions, ODEs, ladders")
    p.add_argument("--jmax", type=_nonneg_int, default=8)
    p.add_argument("--kmax", type=_nonneg_int, default=5)
    p.set_defaults(func=cmd_verify_hermite)
    p = vsub.add_parser("orthogonality", help="Gram matrices and the beta scan")
    p.add_argument("--jmax", type=_nonneg_int, default=5)
    p.add_argument("--kmax", type=_nonneg_int, default=4)
    p.add_argument("--m", type=_m_list, default=[2, 3])
    p.add_argument("--lambdas", type=_lambda_list, default=[Rational(i) for i in range(1, 9)])
    p.set_defaults(func=cmd_verify_orthogonality)
    p = vsub.add_parser("adjoint", help="adjointness of D0 and x")
    p.add_argument("--jmax", type=_nonneg_int, default=5)
    p.add_argument("--kmax", type=_nonneg_int, default=4)
    p.add_argument("--m", type=_m_list, default=[2, 3])
    p.add_argument("--degree", type=_nonneg_int, default=3,
                   help="maximal degree of the dressed test monomials")
    p.set_defaults(func=cmd_verify_adjoint)
    for p in vsub.choices.values():
        _common(p)

    p = sub.add_parser("kernel", help="kernel of D0 on degree-k polynomials")
    p.add_argument("--k", type=_nonneg_int, required=True)
    p.set_defaults(func=cmd_kernel)
    _common(p)

    table = sub.add_parser("table", help="emit coefficient tables")
    tsub = table.add_subparsers(dest="table", required=True)
    p = tsub.add_parser("hermite", help="coefficients of h_{j,k}")
    p.add_argument("--j", type=_nonneg_int, required=True)
    p.add_argument("--k", type=_nonneg_int, required=True)
    p.set_defaults(func=cmd_table_hermite)
    _common(p)

    p = sub.add_parser("gram", help="Gram matrix of psi_{j,k}")
    p.add_argument("--jmax", type=_nonneg_int, default=3)
    p.add_argument("--kmax", type=_nonneg_int, default=2)
    p.add_argument("--m", type=_m_list, default=[2])
    p.set_defaults(func=cmd_gram)
    _common(p)

    p = sub.add_parser("beta-scan", help="<psi_00, psi_20> as a function of beta")
    p.add_argument("--lambdas", type=_lambda_list, default=[Rational(i) for i in range(1, 9)])
    p.add_argument("--m", type=_m_list, default=[2])
    p.set_defaults(func=cmd_beta_scan)
    _common(p)

    oracle = sub.add_parser("oracle", help="numeric oracle")
    osub = oracle.add_subparsers(dest="oracle", required=True)
    p = osub.add_parser("compare", help="exact inner products against quadrature")
    p.add_argument("--jmax", type=_nonneg_int, default=3)
    p.add_argument("--kmax", type=_nonneg_int, default=3)
    p.add_argument("--m", type=_m_list, default=[2, 3])
    p.add_argument("--c", type=_positive_float, default=1.0)
    p.set_defaults(func=cmd_oracle_compare)
    _common(p)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    report, table = args.func(args)
    text = render(report, table, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(headline(report))
    else:
        sys.stdout.write(text)
    return 0 if report.passed else 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
