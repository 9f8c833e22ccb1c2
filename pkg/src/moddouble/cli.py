"""Command-line entry point.

Exit codes: 0 when every identity (and every negative control) behaves as
expected, 1 when any does not, 2 for usage or configuration errors.
"""
from __future__ import annotations

import argparse
import sys


from . import chevalley, qdilog, suites
from .report import SuiteReport, dumps, numeric_record, write_atomic
from .scalar import format_complex, parse_complex


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _complex_arg(text: str) -> complex:
    try:
        return parse_complex(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(str(exc)) from None


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--degree", type=int, default=None,
                   help="truncation degree for degree-aware suites (per-suite default if omitted)")
    p.add_argument("--report", metavar="PATH", help="also write the JSON report to PATH")
    p.add_argument("--format", choices=("json", "text"), default="text")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="moddouble", description="Verify identities of the modular double "
                     "of U_q(sl2) and evaluate the noncompact quantum dilogarithm.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("verify-all", help="run every suite, negative controls included")
    _common(p)
    p.add_argument("--jobs", type=int, default=1, help="worker processes for independent suites")

    p = sub.add_parser("verify", help="run one suite")
    _common(p)
    p.add_argument("--suite", required=True, choices=list(suites.SUITES))

    p = sub.add_parser("eval-psi", help="evaluate psi(p) by both branches")
    _common(p)
    p.add_argument("--b", required=True, type=str)
    p.add_argument("--p", required=True, type=str)

    p = sub.add_parser("central-charge", help="1 + 6 (b + 1/b)^2 and its *-structure case")
    _common(p)
    p.add_argument("--b", required=True, type=str)

    p = sub.add_parser("conventions-report", help="adopted conventions and deciding computations")
    _common(p)

    p = sub.add_parser("oracle-check", help="random homomorphism checks against clock-shift matrices")
    _common(p)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--trials", type=int, default=100)
    return parser


# ---------------------------------------------------------------------------

def _conventions_summary(reports: list[SuiteReport]) -> dict:
    out = {
        "relation_direction": "w_n w_(n+1) = q^-2 w_(n+1) w_n",
        "cartan_prefactor": "K = q w2 w3, K' = q w4 w1",
        "four_factor_order": suites.rmat._order_str(suites.rmat.ADOPTED_ORDER),
        "psi_kernel": "exp(-i p xi/pi)",
        "flagged_discrepancies": [
            "relation direction q^2 -> q^-2",
            "Cartan prefactor q^-1 -> q",
            "stated Casimir expression is not central",
            "four-factor order reversed",
            "Cartan exponent pi/(2i) -> i/(2 pi)",
            "listed coproducts do not intertwine; K<->K' mirror selected",
            "psi kernel sign exp(+ipxi/pi) -> exp(-ipxi/pi)",
            "dual shift factor uses q~^-1",
            "central charge at b = exp(i pi/4) is 13",
        ],
    }
    for r in reports:
        if r.suite == "intertwining" and "selected" in r.info:
            out["selected_twist_k"] = r.info["selected"]["k"]
            out["selected_coproduct"] = r.info["selected"]["convention"]
    return out


def _suite_text(rep: SuiteReport) -> list[str]:
    lines = [f"[{'PASS' if rep.ok else 'FAIL'}] {rep.suite}"]
    for r in rep.records:
        tag = "ok" if r.ok else "BAD"
        ctl = " (control, must fail)" if r.expect == "nonzero" else ""
        bound = f" N={r.degree}" if r.degree is not None else (
            f" tol={r.tolerance:.3g}" if r.tolerance is not None else "")
        res = r.residual if len(r.residual) <= 90 else r.residual[:87] + "..."
        lines.append(f"  {tag:3} {r.identity}{ctl}{bound}: {res}")
    return lines


def _emit(doc: dict, text_lines: list[str], args) -> None:
    payload = dumps(doc)
    if args.report:
        write_atomic(args.report, payload)
    if args.format == "json":
        sys.stdout.write(payload)
    else:
        sys.stdout.write("\n".join(text_lines) + "\n")


def _verify(args, names, jobs=1) -> int:
    try:
        reports = suites.run_all(names, args.degree, jobs=jobs)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    ok = all(r.ok for r in reports)
    doc = {"ok": ok, "suites": [r.as_dict() for r in reports],
           "conventions": _conventions_summary(reports)}
    lines = [ln for r in reports for ln in _suite_text(r)]
    lines.append(f"{'ALL PASS' if ok else 'FAILURES'}: {sum(r.ok for r in reports)}/{len(reports)} suites")
    _emit(doc, lines, args)
    return 0 if ok else 1


def _eval_psi(args) -> int:
    b = _complex_arg(args.b)
    p = _complex_arg(args.p)
    try:
        vi = qdilog.psi_integral(p, b=b)
    except (qdilog.DecayError, qdilog.QuadratureError) as exc:
        vi, ierr = None, str(exc)
    else:
        ierr = None
    try:
        vp = qdilog.psi_product(p, b)
    except qdilog.ProductInvalid as exc:
        vp, perr = None, str(exc)
    else:
        perr = None
    if vi is None and vp is None:
        raise UsageError(f"psi undefined at b={args.b}, p={args.p}: {ierr}; {perr}")
    value = vi if vi is not None else vp
    doc = {"b": format_complex(b), "p": format_complex(p), "value": format_complex(value)}
    ok = True
    if vi is not None and vp is not None:
        rel = abs(vi - vp) / abs(vp)
        rec = numeric_record("psi:integral=product", "both branches agree", rel, 1e-8)
        doc.update(integral=format_complex(vi), product=format_complex(vp), relative_difference=
                   f"{rel:.17g}", agree=rec.passed)
        ok = rec.passed
    else:
        doc["branch"] = "integral" if vi is not None else "product"
        doc["unavailable"] = ierr or perr
    lines = [f"psi({doc['p']}) at b={doc['b']} = {doc['value']}"]
    if "agree" in doc:
        lines.append(f"integral vs product relative difference {doc['relative_difference']} "
                     f"({'agree' if ok else 'DISAGREE'})")
    else:
        lines.append(f"only the {doc['branch']} branch applies: {doc['unavailable']}")
    _emit(doc, lines, args)
    return 0 if ok else 1


def _central_charge(args) -> int:
    b = _complex_arg(args.b)
    if b == 0:
        raise UsageError("b must be nonzero")
    case = chevalley.star_classify(b)
    c = case.central_charge
    shown = f"{c.real:.17g}" if c.imag == 0 else format_complex(c)
    doc = {"b": format_complex(b), "central_charge": shown, "case": case.label}
    _emit(doc, [f"central charge {shown} ({case.label})"], args)
    return 0


def _conventions(args) -> int:
    doc = suites.conventions_report()
    sel = doc["coproduct"]["selected"]
    lines = [
        f"relation direction: {doc['relation_direction']['adopted']} "
        f"(stated {doc['relation_direction']['stated']})",
        f"Cartan prefactor: {doc['cartan_prefactor']['adopted']} "
        f"(stated {doc['cartan_prefactor']['stated']})",
        f"Casimir: {doc['casimir']['derived_chevalley_form']}",
        f"four-factor order: {doc['four_factor_order']['adopted']}",
        f"Cartan exponent twist k: {doc['cartan_exponent']['gamma_q']['twist_k']}",
        f"coproduct: {sel['convention']} (De = {sel['De']}, Df = {sel['Df']}), k = {sel['k']}",
        f"psi kernel: {doc['psi_kernel']['adopted']} (stated {doc['psi_kernel']['stated']})",
        f"central charge at b = {format_complex(doc['central_charge_example']['b'])}: "
        f"{format_complex(doc['central_charge_example']['central_charge'])}",
    ]
    _emit(doc, lines, args)
    return 0


def _oracle_check(args) -> int:
    if args.dim < 2:
        raise UsageError("--dim must be >= 2")
    if args.trials < 1:
        raise UsageError("--trials must be >= 1")
    rep = suites._oracle(dims=(args.dim,), trials=args.trials)
    doc = {"ok": rep.ok, "suites": [rep.as_dict()]}
    _emit(doc, _suite_text(rep), args)
    return 0 if rep.ok else 1


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.degree is not None and args.degree < 0:
            raise UsageError(f"impossible degree {args.degree}")
        if args.command == "verify-all":
            return _verify(args, None, jobs=max(1, args.jobs))
        if args.command == "verify":
            return _verify(args, [args.suite])
        if args.command == "eval-psi":
            return _eval_psi(args)
        if args.command == "central-charge":
            return _central_charge(args)
        if args.command == "conventions-report":
            return _conventions(args)
        return _oracle_check(args)
    except UsageError as exc:
        print(f"moddouble: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"moddouble: cannot write report: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())
