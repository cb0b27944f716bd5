"""Command-line front end.

    northcott northcott --dim 2 --ideals "x,y | x^2,y"
    northcott reduction --matrix-N "[[x,y,0],[0,x,y]]" --module "x,y | x,y"
    northcott search --dim 2 --r 2 --trials 200 --seed 1

Every report carries the tool version and the fully resolved job, so a JSON
report is enough to rerun the computation.  Exit status: 0 on success, 2 when
``search`` finds a violation of br_0 - br_1 <= l(F/M), 1 on any error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from dataclasses import asdict, dataclass
from dataclasses import field as dc_field

from . import __version__
from .brim import REPORT_SCHEMA_VERSION, IdealTuple, bf_direct_sum, bp_polynomial, northcott_report
from .dsl import DSLError, parse_ideal_tuple, parse_matrix, parse_polynomial, parse_ring
from .multiplicity import bhatt_polynomial, hs_function, hs_polynomial
from .reesmod import (
    C_MAX,
    GeneratorMatrix,
    bf_general,
    direct_sum_matrix,
    find_minimal_reduction,
    reduction_number,
    sally_length,
    verify_joint_reduction,
    verify_rn1_formula,
    verify_sally_identity,
)
from .search import PROFILES, search

log = logging.getLogger("northcott")

SEARCH_COLUMNS = ["seed", "trial", "tuple", "d", "r", "br0", "br1", "colength_FM", "slack", "flag",
                  "reduction_number"]
EXIT_OK, EXIT_ERROR, EXIT_VIOLATION = 0, 1, 2


@dataclass
class JobSpec:
    """A fully resolved command; its dict form is embedded in every report."""

    command: str
    dim: int = 2
    relations: str = ""
    ideals: str | None = None
    matrix_N: str | None = None
    matrix_M: str | None = None
    n: int = 4
    n_max: int = 16
    s_max: int = 6
    c_max: int = C_MAX
    field: str = "rationals"
    seed: int | None = None
    format: str = "table"
    output: str | None = None
    options: dict = dc_field(default_factory=dict)

    def as_dict(self) -> dict:
        d = asdict(self)
        d.pop("output")
        return d


class Report:
    def __init__(self, job: JobSpec, result: dict, rows: list[dict], columns: list[str]):
        self.job = job
        self.result = result
        self.rows = rows
        self.columns = columns
        self.exit_code = EXIT_OK

    def document(self) -> dict:
        return {"tool": "northcott", "version": __version__, "schema_version": REPORT_SCHEMA_VERSION,
                "job": self.job.as_dict(), "result": self.result}

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return json.dumps(self.document(), sort_keys=True, indent=2) + "\n"
        if fmt == "csv":
            buf = io.StringIO()
            writer = csv.DictWriter(buf, fieldnames=self.columns, extrasaction="ignore", lineterminator="\n")
            writer.writeheader()
            for row in self.rows:
                writer.writerow({k: _cell(row.get(k)) for k in self.columns})
            return buf.getvalue()
        return _table(self.rows, self.columns)


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (list, tuple)):
        return " ".join(str(x) for x in v)
    return str(v)


def _table(rows: list[dict], columns: list[str]) -> str:
    cells = [[_cell(r.get(c)) for c in columns] for r in rows]
    widths = [max([len(c)] + [len(row[i]) for row in cells]) for i, c in enumerate(columns)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    lines += ["  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip() for row in cells]
    return "\n".join(lines) + "\n"


def _prime(job: JobSpec) -> int | None:
    if job.field in ("rationals", "QQ", "Q"):
        return None
    try:
        p = int(job.field)
    except ValueError:
        raise ValueError(f"--field must be 'rationals' or a prime, not {job.field!r}") from None
    if p < 2 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
        raise ValueError(f"--field {p} is not a prime")
    return p


def _ring(job: JobSpec):
    return parse_ring(job.dim, job.relations)


def _tuple(job: JobSpec, flag: str = "--ideals") -> IdealTuple:
    if not job.ideals:
        raise ValueError(f"{flag} is required for '{job.command}'")
    return IdealTuple(tuple(parse_ideal_tuple(job.ideals, _ring(job))))


def _module(job: JobSpec) -> GeneratorMatrix:
    """M from --matrix-M, or the direct sum given by --ideals / --module."""
    p = _prime(job)
    if job.matrix_M:
        return parse_matrix(job.matrix_M, _ring(job), p=p)
    return direct_sum_matrix(_tuple(job, "--module"), p=p)


def _reduction(job: JobSpec, M: GeneratorMatrix) -> tuple[GeneratorMatrix, dict]:
    """N from --matrix-N, otherwise a seeded random minimal reduction of M."""
    if job.matrix_N:
        return parse_matrix(job.matrix_N, _ring(job), p=_prime(job)), {"source": "given"}
    if job.seed is None:
        job.seed = 0
    N, red, attempt = find_minimal_reduction(M, job.seed, field=job.field, s_max=job.s_max)
    return N, {"source": "random", "seed": job.seed, "attempt": attempt, "reduction_number": red}


def cmd_hs(job: JobSpec) -> Report:
    T = _tuple(job)
    rows, result = [], {"ideals": str(T), "summands": []}
    for I in T:
        P, diag = hs_polynomial(I, n_max=job.n_max)
        values = [hs_function(I, n) for n in range(1, job.n + 1)]
        result["summands"].append({"ideal": str(I), "e": list(P.coeffs), "polynomial": str(P),
                                   "values": values, "diagnostics": diag.as_dict()})
        rows.append({"ideal": str(I), "e": list(P.coeffs), "values": values,
                     "stable_from": diag.window_start})
    return Report(job, result, rows, ["ideal", "e", "values", "stable_from"])


def cmd_bhatt(job: JobSpec) -> Report:
    T = _tuple(job)
    poly, diag = bhatt_polynomial(T.ideals)
    coeffs = {",".join(map(str, a)): e for a, e in sorted(poly.coeffs.items())}
    E = [poly.total(i) for i in range(poly.maxdeg + 1)]
    rows = [{"alpha": a, "e": e, "top": sum(map(int, a.split(","))) == poly.maxdeg} for a, e in coeffs.items()]
    result = {"ideals": str(T), "coefficients": coeffs, "E": E, "diagnostics": diag.as_dict()}
    return Report(job, result, rows, ["alpha", "e", "top"])


def cmd_bf(job: JobSpec) -> Report:
    method = job.options.get("method", "auto")
    rows = []
    if job.matrix_M or method == "linear":
        A = _module(job)
        values = [bf_general(A, n, c_max=job.c_max) for n in range(1, job.n + 1)]
        used = "linear"
    else:
        T = _tuple(job)
        values = [bf_direct_sum(T, n) for n in range(1, job.n + 1)]
        used = "lattice"
    rows = [{"n": n, "BF": v} for n, v in enumerate(values, 1)]
    return Report(job, {"values": values, "method": used}, rows, ["n", "BF"])


def cmd_northcott(job: JobSpec) -> Report:
    T = _tuple(job)
    N = parse_matrix(job.matrix_N, _ring(job), p=_prime(job)) if job.matrix_N else None
    rep = northcott_report(T, with_reduction=N, s_max=job.s_max, n_max=job.n_max)
    doc = rep.as_dict()
    doc["ideals"] = str(T)
    row = {"ideals": str(T), "d": rep.d, "r": rep.r, "br0": rep.br0, "br1": rep.br1,
           "colength_FM": rep.colength_FM, "slack": rep.slack, "inequality_holds": rep.inequality_holds,
           "equality": rep.equality}
    if rep.reduction_evidence:
        row["reduction_number"] = rep.reduction_evidence["reduction_number"]
    report = Report(job, doc, [row], list(row))
    for w in rep.warnings:
        log.warning(w)
    return report


def cmd_reduction(job: JobSpec) -> Report:
    M = _module(job)
    if not job.matrix_N:
        raise ValueError("--matrix-N is required for 'reduction'")
    N = parse_matrix(job.matrix_N, _ring(job), p=_prime(job))
    red = reduction_number(N, M, job.s_max, c_max=job.c_max)
    result = {"N": N.to_strings(), "M": M.to_strings(), "reduction_number": red, "s_max": job.s_max}
    row = {"N": str(N), "reduction_number": "none <= s_max" if red is None else red}
    return Report(job, result, [row], ["N", "reduction_number"])


def cmd_sally(job: JobSpec) -> Report:
    M = _module(job)
    N, info = _reduction(job, M)
    values = [sally_length(M, N, n, c_max=job.c_max) for n in range(job.n + 1)]
    result = {"N": N.to_strings(), "reduction": info, "values": values}
    rows = [{"n": n, "sally_length": v} for n, v in enumerate(values)]
    return Report(job, result, rows, ["n", "sally_length"])


def cmd_verify(job: JobSpec) -> Report:
    identity = job.options.get("identity", "sally")
    if identity == "joint":
        T = _tuple(job)
        if T.r != 2:
            raise ValueError("the joint reduction check needs exactly two ideals 'I | J'")
        ring = _ring(job)
        a = parse_polynomial(job.options.get("a") or "", ring)
        b = parse_polynomial(job.options.get("b") or "", ring)
        ok = verify_joint_reduction(a, b, T[0], T[1])
        row = {"a": a.to_string(ring), "b": b.to_string(ring), "ideals": str(T), "holds": ok}
        return Report(job, {"identity": "joint", "holds": ok, **row}, [row], list(row))
    M = _module(job)
    N, info = _reduction(job, M)
    rows = []
    if identity == "sally":
        T = _tuple(job)
        br0 = bp_polynomial(T, n_max=job.n_max)[0][0]
        for n in range(1, job.n + 1):
            lhs, rhs, ok = verify_sally_identity(T, N, n, br0=br0)
            rows.append({"n": n, "lhs": lhs, "rhs": rhs, "equal": ok})
        columns = ["n", "lhs", "rhs", "equal"]
    elif identity == "rn1":
        for n in range(job.n + 1):
            rows.append({"n": n, "holds": verify_rn1_formula(M, N, n, c_max=job.c_max)})
        columns = ["n", "holds"]
    else:
        raise ValueError(f"unknown identity {identity!r}")
    result = {"identity": identity, "N": N.to_strings(), "reduction": info, "rows": rows,
              "all_hold": all(r.get("equal", r.get("holds")) for r in rows)}
    return Report(job, result, rows, columns)


def cmd_search(job: JobSpec) -> Report:
    if job.seed is None:
        job.seed = 0
    opts = job.options
    res = search(job.dim, opts.get("r", 2), opts.get("trials", 100), job.seed, profile=opts.get("profile", "random"),
                 max_power=opts.get("max_power", 5), extra=opts.get("extra", 3), n_max=job.n_max,
                 reduction=opts.get("reduction", False), s_max=job.s_max)
    rows = [rec.as_dict() for rec in res.records]
    result = {"records": rows, "failures": res.failures, "violations": len(res.violations),
              "equalities": len(res.equalities), "trials": opts.get("trials", 100)}
    report = Report(job, result, rows, SEARCH_COLUMNS)
    if res.violations:
        report.exit_code = EXIT_VIOLATION
    return report


HANDLERS = {
    "hs": cmd_hs, "bhatt": cmd_bhatt, "bf": cmd_bf, "northcott": cmd_northcott, "reduction": cmd_reduction,
    "sally": cmd_sally, "verify": cmd_verify, "search": cmd_search,
}


def run(job: JobSpec) -> Report:
    if job.command not in HANDLERS:
        raise ValueError(f"unknown command {job.command!r}")
    return HANDLERS[job.command](job)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--dim", type=int, default=2, help="number of variables (default 2)")
    common.add_argument("--relations", default="", help='monomial relations Q, e.g. "x^2"')
    common.add_argument("--n", type=int, default=4, help="largest degree to tabulate (default 4)")
    common.add_argument("--n-max", type=int, default=16, help="sampling bound for fits (default 16)")
    common.add_argument("--s-max", type=int, default=6, help="largest reduction number tried (default 6)")
    common.add_argument("--c-max", type=int, default=C_MAX, help=f"truncation cap (default {C_MAX})")
    common.add_argument("--field", default="rationals", help="'rationals' or a prime such as 32003")
    common.add_argument("--seed", type=int, default=None, help="seed for random choices (default 0 when used)")
    common.add_argument("--format", choices=("table", "json", "csv"), default="table")
    common.add_argument("--output", default=None, help="write the report here instead of stdout")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="northcott", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=f"northcott {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def ideals(p, required=True, name="--ideals"):
        p.add_argument(name, dest="ideals", required=required, help='ideals separated by |, e.g. "x,y | x^2,y"')

    p = sub.add_parser("hs", parents=[common], help="Hilbert-Samuel coefficients of each ideal")
    ideals(p)
    p = sub.add_parser("bhatt", parents=[common], help="Bhattacharya polynomial of an ideal tuple")
    ideals(p)
    p = sub.add_parser("bf", parents=[common], help="Buchsbaum-Rim function values")
    ideals(p, required=False)
    p.add_argument("--matrix-M", dest="matrix_M")
    p.add_argument("--method", choices=("auto", "lattice", "linear"), default="auto")
    p = sub.add_parser("northcott", parents=[common], help="br_0 - br_1 against l(F/M)")
    ideals(p)
    p.add_argument("--matrix-N", dest="matrix_N")
    for name, helptext in (("reduction", "reduction number of N in M"), ("sally", "Sally module lengths")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("--module", "--ideals", dest="ideals")
        p.add_argument("--matrix-M", dest="matrix_M")
        p.add_argument("--matrix-N", dest="matrix_N")
    p = sub.add_parser("verify", parents=[common], help="check a length identity")
    p.add_argument("--identity", choices=("sally", "rn1", "joint"), default="sally")
    p.add_argument("--module", "--ideals", dest="ideals")
    p.add_argument("--matrix-M", dest="matrix_M")
    p.add_argument("--matrix-N", dest="matrix_N")
    p.add_argument("--a")
    p.add_argument("--b")
    p = sub.add_parser("search", parents=[common], help="random sweep for the inequality")
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--profile", choices=PROFILES, default="random")
    p.add_argument("--max-power", type=int, default=5)
    p.add_argument("--extra", type=int, default=3)
    p.add_argument("--reduction", action="store_true", help="also compute a random minimal reduction")
    return parser


_OPTION_KEYS = ("method", "identity", "a", "b", "r", "trials", "profile", "max_power", "extra", "reduction")


def job_from_args(ns: argparse.Namespace) -> JobSpec:
    opts = {k: getattr(ns, k) for k in _OPTION_KEYS if getattr(ns, k, None) is not None}
    return JobSpec(command=ns.command, dim=ns.dim, relations=ns.relations, ideals=getattr(ns, "ideals", None),
                   matrix_N=getattr(ns, "matrix_N", None), matrix_M=getattr(ns, "matrix_M", None), n=ns.n,
                   n_max=ns.n_max, s_max=ns.s_max, c_max=ns.c_max, field=ns.field, seed=ns.seed,
                   format=ns.format, output=ns.output, options=opts)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_ERROR
    logging.basicConfig(level=logging.DEBUG if ns.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    job = job_from_args(ns)
    try:
        report = run(job)
        text = report.render(job.format)
    except DSLError as err:
        print(f"parse error: {err}", file=sys.stderr)
        return EXIT_ERROR
    except Exception as err:
        print(f"error: {type(err).__name__}: {err}", file=sys.stderr)
        if ns.verbose:
            raise
        return EXIT_ERROR
    if job.output:
        with open(job.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return report.exit_code
