"""Command-line front end: ranks, series, stable, growth, verify.

Every command builds a CommandResult holding a JSON payload, a rendered text
table, and a CSV form; `--format` picks which one is printed.  Identical
flags always produce byte-identical output.

Exit codes: 0 on success or a not-applicable check, 1 when a verification
fails or required data is missing, 2 for usage errors (argparse's own
convention, extended to mathematical domain violations).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .errors import (
    DomainError,
    FourfoldError,
    InsufficientStemsData,
    ParseError,
    ResourceLimit,
    ValidationError,
)
from .oracle import koszul_leading_monomial_check, quotient_dims_oracle
from .ranks import (
    PBW_FAIL,
    PBW_NOT_APPLICABLE,
    divisibility_report,
    growth_report,
    homotopy_ranks,
    pbw_identity_check,
)
from .series import free_comm_series, pbw_series, quotient_series, tensor_series
from .stable import bundled_stems_table, load_stems_table, stable_homotopy_finite_pi1

DEFAULT_RANKS_DEGREE = 20
DEFAULT_VERIFY_DEGREE = 8
DEFAULT_GROWTH_PROBE = 60
BUDGET_ENV_VAR = "FOURFOLD_BUDGET"

STATUS_OK = "ok"
STATUS_FAIL = "fail"
STATUS_NOT_APPLICABLE = "not-applicable"


@dataclass
class CommandResult:
    status: str
    payload: dict
    rendered: str
    csv: str = ""
    failing_checks: list = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        return 1 if self.status == STATUS_FAIL else 0


def _align(rows, headers) -> str:
    """Fixed-width text table."""
    table = [list(map(str, headers))] + [list(map(str, r)) for r in rows]
    widths = [max(len(row[i]) for row in table) for i in range(len(headers))]
    lines = []
    for idx, row in enumerate(table):
        lines.append("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())
        if idx == 0:
            lines.append("  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _csv_lines(header: str, rows) -> str:
    return "\n".join([header] + [",".join(map(str, r)) for r in rows]) + "\n"


# -- commands ---------------------------------------------------------------


def cmd_ranks(betti: int, max_degree: int) -> CommandResult:
    table = homotopy_ranks(betti, max_degree)
    classification = "elliptic" if betti <= 2 else "hyperbolic"
    payload = table.to_json_dict()
    payload["classification"] = classification

    rows = [(f"pi_{n + 1}", m) for n, m in enumerate(table.ranks, start=1)]
    rendered = "\n".join(
        [
            f"rational homotopy ranks at b2 = {betti}",
            _align(rows, ("group", "rank")),
            f"growth classification: {classification}",
        ]
    )
    csv = table.to_csv()
    return CommandResult(STATUS_OK, payload, rendered, csv)


def cmd_series(kind: str, betti: int, terms: int, dims_spec: str = "") -> CommandResult:
    if kind == "tensor":
        series = tensor_series({1: betti, 2: betti}, terms)
    elif kind == "quotient":
        series = quotient_series(betti, terms)
    elif kind == "pbw":
        series = pbw_series(homotopy_ranks(betti, terms), terms)
    elif kind == "free-comm":
        dims = _parse_dims(dims_spec) if dims_spec else {1: betti, 2: betti}
        series = free_comm_series(dims, terms)
    else:
        raise DomainError(f"unknown series kind {kind!r}")
    payload = {"kind": kind, "betti": betti}
    payload.update(series.to_json_dict())
    rows = list(enumerate(payload["coefficients"]))
    rendered = "\n".join(
        [
            f"{kind} series at parameter {betti}, truncation order {terms}",
            _align(rows, ("degree", "coefficient")),
        ]
    )
    csv = _csv_lines("degree,coefficient", rows)
    return CommandResult(STATUS_OK, payload, rendered, csv)


def _parse_dims(spec: str) -> dict:
    """--dims '1:2,2:2' -> {1: 2, 2: 2}"""
    out = {}
    for part in spec.split(","):
        deg, sep, mult = part.partition(":")
        if not sep or not deg.strip().isdigit() or not mult.strip().isdigit():
            raise DomainError(f"bad --dims entry {part!r}; expected degree:multiplicity")
        out[int(deg)] = int(mult)
    return out


def cmd_stable(betti: int, n: int, pi1_order: int, stems_file: str = "") -> CommandResult:
    if stems_file:
        stems = load_stems_table(
            Path(stems_file).read_text(), source_note=stems_file
        )
    else:
        stems = bundled_stems_table()
    try:
        group = stable_homotopy_finite_pi1(betti, n, pi1_order, stems)
    except InsufficientStemsData as exc:
        payload = {
            "betti": betti,
            "n": n,
            "pi1_order": pi1_order,
            "error": "insufficient-stems-data",
            "missing_index": exc.index,
            "max_index": exc.max_index,
        }
        rendered = (
            f"FAIL: stem {exc.index} is required but the table ends at "
            f"{exc.max_index}"
        )
        return CommandResult(
            STATUS_FAIL, payload, rendered, failing_checks=["stems-coverage"]
        )
    payload = {
        "betti": betti,
        "n": n,
        "pi1_order": pi1_order,
        "group": group.to_json_dict(),
        "human": str(group),
    }
    rendered = "\n".join(
        [
            f"pi_{n}^s = {group}",
            f"primary decomposition: free rank {group.free_rank}, "
            f"torsion {list(group.torsion)}",
        ]
    )
    csv = _csv_lines(
        "free_rank,torsion",
        [(group.free_rank, ";".join(map(str, group.torsion)))],
    )
    return CommandResult(STATUS_OK, payload, rendered, csv)


def cmd_growth(betti: int, probe: int) -> CommandResult:
    report = growth_report(betti, probe)
    payload = report.to_json_dict()
    lines = [
        f"growth report at b2 = {betti} (probe degree {probe})",
        f"classification: {report.classification}",
    ]
    if report.growth_base is not None:
        lines.append(f"growth base: {report.growth_base}")
        lines.append(f"limit residual at degree {probe}: {report.limit_residual}")
    else:
        lines.append("growth base: none (elliptic)")
    lines.append(f"exponential growth: {'yes' if report.exponential_growth else 'no'}")
    bound_rows = [
        (n, "ok" if ok else "VIOLATED")
        for n, ok in sorted(report.cumulative_bound_ok.items())
    ]
    if bound_rows:
        lines.append("cumulative lower bounds:")
        lines.append(_align(bound_rows, ("n", "bound")))
    rendered = "\n".join(lines)
    csv = _csv_lines("n,cumulative_bound_ok", bound_rows)
    bounds_ok = all(report.cumulative_bound_ok.values())
    status = STATUS_OK if bounds_ok else STATUS_FAIL
    failing = [] if bounds_ok else ["cumulative-bound"]
    if not bounds_ok:
        payload["failing_checks"] = failing
    return CommandResult(status, payload, rendered, csv, failing_checks=failing)


def cmd_verify(betti: int, max_degree: int, budget=None) -> CommandResult:
    checks = {}
    payload = {"betti": betti, "max_degree": max_degree}
    lines = [f"verification at b2 = {betti}, oracle degree {max_degree}"]

    try:
        report = quotient_dims_oracle(betti, max_degree, budget)
    except ResourceLimit as exc:
        payload["error"] = "resource-limit"
        payload["message"] = str(exc)
        payload["failing_checks"] = ["oracle-resource-limit"]
        lines.append(f"resource limit: {exc}")
        lines.append("FAIL")
        return CommandResult(
            STATUS_FAIL,
            payload,
            "\n".join(lines),
            failing_checks=["oracle-resource-limit"],
        )

    checks["oracle-series-match"] = all(report.series_match)
    checks["euler-identity"] = all(report.euler_ok)
    payload["oracle"] = report.to_json_dict()

    koszul_ok, lead = koszul_leading_monomial_check(betti)
    checks["koszul-leading-monomial"] = koszul_ok
    payload["koszul"] = {"ok": koszul_ok, "leading_monomial": str(lead)}

    pbw = pbw_identity_check(betti, max_degree)
    payload["pbw"] = {"status": pbw.status, "first_failure": pbw.first_failure}
    if pbw.status != PBW_NOT_APPLICABLE:
        checks["pbw-identity"] = pbw.status != PBW_FAIL

    if betti >= 2:
        remark = divisibility_report(betti, max(max_degree, 8))
        payload["divisibility_remark"] = {"gating": False, "claims": remark}

    rows = [
        (
            n,
            report.tensor_dims[n],
            report.ideal_dims[n],
            report.quotient_dims[n],
            "ok" if report.series_match[n] else "MISMATCH",
            "ok" if report.euler_ok[n] else "MISMATCH",
        )
        for n in range(max_degree + 1)
    ]
    lines.append(
        _align(rows, ("degree", "tensor", "ideal", "quotient", "series", "euler"))
    )
    lines.append(f"field used: {report.field_used}")
    lines.append(f"koszul leading monomial: {lead} ({'ok' if koszul_ok else 'FAIL'})")
    lines.append(f"pbw identities: {pbw.status}")
    if "divisibility_remark" in payload:
        for claim in payload["divisibility_remark"]["claims"]:
            verdict = "holds" if claim["holds"] else "fails (informational)"
            lines.append(
                f"divisibility by {claim['divisor']} from pi_"
                f"{claim['applies_from_pi']}: {verdict}"
            )

    ok = all(checks.values())
    failing = sorted(name for name, passed in checks.items() if not passed)
    payload["checks"] = checks
    if failing:
        payload["failing_checks"] = failing
    lines.append("PASS" if ok else "FAIL")

    csv = _csv_lines(
        "degree,tensor_dim,ideal_dim,quotient_dim,series_match,euler_ok",
        [
            (
                n,
                report.tensor_dims[n],
                report.ideal_dims[n],
                report.quotient_dims[n],
                report.series_match[n],
                report.euler_ok[n],
            )
            for n in range(max_degree + 1)
        ],
    )
    return CommandResult(
        STATUS_OK if ok else STATUS_FAIL,
        payload,
        "\n".join(lines),
        csv,
        failing_checks=failing,
    )


# -- argument plumbing ------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format",
        choices=("table", "json", "csv"),
        default="table",
        help="output format (default: table)",
    )
    common.add_argument(
        "--stems-file",
        default="",
        metavar="PATH",
        help="stems table file (default: bundled table for indices 0..19)",
    )
    common.add_argument(
        "--budget",
        type=int,
        default=None,
        metavar="COLUMNS",
        help=f"oracle matrix column cap (default 50000; env {BUDGET_ENV_VAR})",
    )

    parser = argparse.ArgumentParser(
        prog="fourfold",
        description=(
            "Exact homotopy invariants of simply connected closed 4-manifolds "
            "from the second Betti number."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ranks", parents=[common], help="rational homotopy ranks")
    p.add_argument("--betti", type=int, required=True, help="second Betti number")
    p.add_argument("--max-degree", type=int, default=DEFAULT_RANKS_DEGREE)

    p = sub.add_parser("series", parents=[common], help="raw series coefficients")
    p.add_argument(
        "--kind",
        choices=("tensor", "quotient", "pbw", "free-comm"),
        required=True,
    )
    p.add_argument("--betti", type=int, required=True)
    p.add_argument("--terms", type=int, default=DEFAULT_RANKS_DEGREE)
    p.add_argument("--dims", default="", help="free-comm generators, e.g. 1:2,2:2")

    p = sub.add_parser("stable", parents=[common], help="stable homotopy groups")
    p.add_argument("--betti", type=int, required=True)
    p.add_argument("--n", type=int, required=True, help="stable index")
    p.add_argument("--pi1-order", type=int, default=1)

    p = sub.add_parser("growth", parents=[common], help="growth classification")
    p.add_argument("--betti", type=int, required=True)
    p.add_argument("--probe", type=int, default=DEFAULT_GROWTH_PROBE)

    p = sub.add_parser("verify", parents=[common], help="full verification suite")
    p.add_argument("--betti", type=int, required=True)
    p.add_argument("--max-degree", type=int, default=DEFAULT_VERIFY_DEGREE)

    return parser


def _resolve_budget(args) -> int | None:
    if args.budget is not None:
        return args.budget
    env = os.environ.get(BUDGET_ENV_VAR, "")
    if env:
        try:
            return int(env)
        except ValueError:
            raise DomainError(f"{BUDGET_ENV_VAR}={env!r} is not an integer") from None
    return None


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "ranks":
            result = cmd_ranks(args.betti, args.max_degree)
        elif args.command == "series":
            result = cmd_series(args.kind, args.betti, args.terms, args.dims)
        elif args.command == "stable":
            result = cmd_stable(args.betti, args.n, args.pi1_order, args.stems_file)
        elif args.command == "growth":
            result = cmd_growth(args.betti, args.probe)
        else:
            result = cmd_verify(args.betti, args.max_degree, _resolve_budget(args))
    except (DomainError, ParseError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FourfoldError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    if args.format == "json":
        print(json.dumps(result.payload, indent=2))
    elif args.format == "csv":
        sys.stdout.write(result.csv if result.csv else result.rendered + "\n")
    else:
        print(result.rendered)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
