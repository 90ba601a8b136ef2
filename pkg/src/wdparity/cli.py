"""Command-line driver: local epsilon signs, formulary tables, global parity
reports, datum-file validation and the seeded randomized property suites.

Every subcommand exits 0 exactly when all computed identities and validations
pass; parse and usage problems exit 2.
"""

import argparse
import json
import sys
from dataclasses import fields as dataclass_fields

from .corpus import selfcheck
from .datum import DatumError, FormularyInput, LocalInput, parse
from .eps import eps_sign, panchishkin_eps, reduction_identity_checks
from .errors import WDParityError
from .numerology import euler_tate_check, formulary
from .parity import (
    AwayPlace,
    GlobalPointDatum,
    _matrices_ramified,
    modified_invariants,
    validate_away_place,
    validate_datum,
    validate_pst_datum,
)
from .report import IdentityCheck, IdentityReport


def _report_record(report: IdentityReport):
    return [
        {"name": it.name, "lhs": it.lhs, "rhs": it.rhs, "ok": it.ok}
        for it in report.items
    ]


def run_eps_local(obj):
    if not isinstance(obj, LocalInput):
        raise DatumError("eps-local needs a datum file of kind local")
    warnings = []
    direct = eps_sign(obj.rep, obj.pairing)
    lines = [f"place {obj.name}: eps = {direct}"]
    record = {"place": obj.name, "eps": direct}
    ok = True
    if obj.pst is None:
        warnings.append("no Panchishkin block: only the direct sign is computed")
        return ok, lines, record, warnings
    pan = panchishkin_eps(obj.pst)
    agree = pan == direct
    lines.append(f"place {obj.name}: panchishkin eps = {pan}")
    lines.append(f"[{'ok' if agree else 'FAIL'}] sign routes agree: "
                 f"{direct} vs {pan}")
    record["panchishkin_eps"] = pan
    record["routes_agree"] = agree
    ok = ok and agree
    try:
        report = reduction_identity_checks(obj.rep, obj.pairing, obj.pst.split)
    except WDParityError as exc:
        warnings.append(f"identity report skipped: {exc}")
    else:
        lines.append("identity report:")
        lines.extend("  " + line for line in report.lines())
        record["identities"] = _report_record(report)
        ok = ok and report.ok
    return ok, lines, record, warnings


def run_formulary(obj):
    if not isinstance(obj, FormularyInput):
        raise DatumError("formulary needs a datum file of kind numerology")
    out = formulary(obj.numerology, obj.numerology_dual)
    table = {f.name: getattr(out, f.name) for f in dataclass_fields(out)}
    lines = [f"{name} = {value}" for name, value in table.items()]
    report = euler_tate_check(out, obj.numerology)
    lines.append("checks:")
    lines.extend("  " + line for line in report.lines())
    record = {"table": table, "checks": _report_record(report)}
    return report.ok, lines, record, []


def run_global(obj):
    if not isinstance(obj, GlobalPointDatum):
        raise DatumError("global needs a datum file of kind global")
    warnings = []
    report = modified_invariants(obj)
    lines = [f"place {name}: eps = {sign}" for name, sign in report.place_signs]
    lines.append(f"eps_inf = {report.eps_inf}")
    lines.append(f"eps = {report.eps}")
    lines.append(f"sum h0(D^-) = {report.sum_h0}")
    lines.append(f"eps~ = {report.eps_tilde}")
    record = {
        "place_signs": dict(report.place_signs),
        "eps_inf": report.eps_inf,
        "eps": report.eps,
        "sum_h0": report.sum_h0,
        "eps_tilde": report.eps_tilde,
    }
    if report.h1f is None:
        warnings.append("h1f not supplied: Selmer-dependent fields omitted")
    else:
        lines.append(f"h1f = {report.h1f}")
        lines.append(f"h1f~ = {report.h1f_tilde}")
        lines.append(f"invariant = {report.invariant}")
        record["h1f"] = report.h1f
        record["h1f_tilde"] = report.h1f_tilde
        record["invariant"] = report.invariant
    log = validate_datum(obj)
    lines.append("validation:")
    lines.extend("  " + line for line in log.lines())
    record["validation"] = _report_record(log)
    return log.ok, lines, record, warnings


def run_verify(obj):
    if isinstance(obj, GlobalPointDatum):
        report = validate_datum(obj)
    elif isinstance(obj, LocalInput):
        if obj.pst is None:
            place = AwayPlace(obj.name, obj.rep, obj.pairing,
                              _matrices_ramified(obj.rep))
            report = validate_away_place(place)
        else:
            report = validate_pst_datum(obj.name, obj.pst)
    else:
        try:
            out = formulary(obj.numerology, obj.numerology_dual)
        except WDParityError as exc:
            report = IdentityReport((IdentityCheck(
                name="formulary consistency", lhs=str(exc), rhs="", ok=False),))
        else:
            report = euler_tate_check(out, obj.numerology)
    return report.ok, report.lines(), {"checks": _report_record(report)}, []


def run_selfcheck(seed, cases):
    lines = []
    suites = []
    ok = True
    for suite in selfcheck(seed, cases):
        total = suite.passed + suite.failed
        lines.append(f"{suite.name}: {suite.passed}/{total} passed")
        lines.extend("  " + failure for failure in suite.failures)
        suites.append({
            "suite": suite.name,
            "passed": suite.passed,
            "failed": suite.failed,
            "failures": list(suite.failures),
        })
        ok = ok and suite.ok
    return ok, lines, {"seed": seed, "cases": cases, "suites": suites}, []


def _parser():
    parser = argparse.ArgumentParser(
        prog="wdparity",
        description="Local epsilon signs, cohomology formulary tables and "
                    "global parity reports for symplectic Weil-Deligne data.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--output", choices=("text", "record"), default="text",
                        help="human-readable text or one JSON record")
        sp.add_argument("--strict", action="store_true",
                        help="treat warnings as failures")

    sp = sub.add_parser(
        "eps-local", help="local sign by both routes plus the identity report")
    sp.add_argument("file")
    common(sp)
    sp = sub.add_parser(
        "formulary", help="cohomology dimension table for a numerology pair")
    sp.add_argument("file")
    common(sp)
    sp = sub.add_parser(
        "global", help="parity report for a global point datum")
    sp.add_argument("file")
    common(sp)
    sp = sub.add_parser("verify", help="validation log only")
    sp.add_argument("file")
    common(sp)
    sp = sub.add_parser(
        "selfcheck", help="seed-deterministic randomized property suites")
    sp.add_argument("--seed", type=int, default=0,
                    help="random seed (default 0)")
    sp.add_argument("--cases", type=int, default=100,
                    help="cases per suite (default 100)")
    common(sp)
    return parser


_RUNNERS = {
    "eps-local": run_eps_local,
    "formulary": run_formulary,
    "global": run_global,
    "verify": run_verify,
}


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        if args.command == "selfcheck":
            ok, lines, record, warnings = run_selfcheck(args.seed, args.cases)
        else:
            ok, lines, record, warnings = _RUNNERS[args.command](parse(args.file))
    except DatumError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except WDParityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.strict and warnings:
        ok = False
    record["ok"] = ok
    record["warnings"] = list(warnings)
    if args.output == "record":
        print(json.dumps(record, indent=2, sort_keys=True))
    else:
        for line in lines:
            print(line)
        for warning in warnings:
            print(f"warning: {warning}")
        print(f"status: {'ok' if ok else 'FAIL'}")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
