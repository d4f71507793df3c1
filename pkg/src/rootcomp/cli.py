"""Command line: check, verify, orbitdim, disjoint, mult and battery.

Exit codes: 0 success, 1 a claim failed, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import battery as bt
from . import lr, orbitdim
from .points import ConditionsViolated
from .typea import check_root_component_conditions

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _fmt_value(v):
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_fmt_value(x) for x in v) + "]"
    return str(v)


def render_text(rec: dict) -> str:
    head = f"{rec['command']} {rec['case']}: {'OK' if rec['ok'] else 'FAIL'}"
    lines = [head]
    for k, v in rec.items():
        if k in ("command", "case", "ok", "claims", "trace"):
            continue
        lines.append(f"  {k} = {_fmt_value(v)}")
    for c in rec.get("claims", []):
        mark = "ok" if c["ok"] else "MISMATCH"
        lines.append(f"  [{mark}] {c['claim']}: got {_fmt_value(c['got'])}, expected {_fmt_value(c['expected'])} ({c['basis']})")
    for step in rec.get("trace", []):
        i, j = step["entry"]
        fi, fj = step["forced_by"]
        lines.append(f"  step g[{i},{j}] {step['old']} -> {step['new']} from h[{fi},{fj}]")
    return "\n".join(lines)


def emit(records, fmt: str, out=None) -> None:
    out = out or sys.stdout
    for rec in records:
        if fmt == "json-lines":
            out.write(json.dumps(rec, sort_keys=True) + "\n")
        else:
            out.write(render_text(rec) + "\n")


def _record(command: str, spec: bt.CaseSpec, claims, **extra) -> dict:
    rec = {"command": command, "case": spec.to_line()}
    rec.update(extra)
    rec["claims"] = [c.as_record() for c in claims]
    rec["ok"] = all(c.ok for c in claims)
    return rec


def cmd_check(spec: bt.CaseSpec, args) -> dict:
    rep = check_root_component_conditions(spec.lam, spec.mu, spec.beta, spec.N)
    return _record("check", spec, bt.claims_check(spec), nu=str(rep.shifted), witnesses=rep.witnesses)


def _conditions_or_fail(command: str, spec: bt.CaseSpec):
    claims = bt.claims_check(spec)
    if all(c.ok for c in claims):
        return None
    return _record(command, spec, claims)


def cmd_verify(spec: bt.CaseSpec, args) -> dict:
    failed = _conditions_or_fail("verify", spec)
    if failed:
        return failed
    claims = bt.claims_verify(spec)
    points = [c.name.split("[")[1].rstrip("]") for c in claims if c.name.startswith("member[")]
    return _record("verify", spec, claims, points=points, nu=str(bt.nu_of(spec)))


def cmd_orbitdim(spec: bt.CaseSpec, args) -> dict:
    failed = _conditions_or_fail("orbitdim", spec)
    if failed:
        return failed
    M = args.truncation_override
    closed = orbitdim.closed_form_orbit_dim(spec.lam, spec.mu, spec.beta, spec.N)
    extra = {"closed_form": closed}
    if M is None:
        extra["truncation"] = orbitdim.truncation_bound(spec.lam, spec.mu, spec.beta, spec.N)
    else:
        extra["truncation"] = M
    if not spec.is_family:
        extra["V/W_closed_form"] = orbitdim.closed_form_quotient_dim(spec.mu, spec.beta, spec.N)
    try:
        claims = bt.claims_orbitdim(spec, M)
    except orbitdim.UnstableTruncation as e:
        raise UsageError(str(e)) from None
    return _record("orbitdim", spec, claims, **extra)


def cmd_disjoint(spec: bt.CaseSpec, args) -> dict:
    if spec.is_family:
        raise UsageError("disjoint compares xi with xi~; drop --a")
    failed = _conditions_or_fail("disjoint", spec)
    if failed:
        return failed
    claims, cert = bt.claims_disjoint(spec)
    rec = _record("disjoint", spec, claims, verdict=cert.verdict, det_bound=cert.det_bound,
                  permutation=cert.permutation, rule=cert.rule, note=cert.note)
    rec["bounds"] = cert.bounds
    rec["trace"] = cert.steps
    return rec


def cmd_mult(spec: bt.CaseSpec, args) -> dict:
    rep = check_root_component_conditions(spec.lam, spec.mu, spec.beta, spec.N)
    nu = bt.nu_of(spec)
    m = lr.root_component_multiplicity(spec.lam, spec.mu, spec.beta, spec.N, check=False)
    claims = bt.claims_mult(spec) if rep.ok else bt.claims_check(spec)
    return _record("mult", spec, claims, nu=str(nu), multiplicity=m, conditions_ok=rep.ok)


COMMANDS = {
    "check": cmd_check,
    "verify": cmd_verify,
    "orbitdim": cmd_orbitdim,
    "disjoint": cmd_disjoint,
    "mult": cmd_mult,
}


def _run_one(spec_line: str, truncation):
    spec = bt.parse_case_line(spec_line)
    rec = bt.run_case(spec, truncation)
    rec["command"] = "battery-case"
    return rec


def cmd_battery(args) -> list:
    if args.file is None:
        text = bt.shipped_battery_text()
    else:
        try:
            text = Path(args.file).read_text()
        except OSError as e:
            raise UsageError(f"cannot read {args.file}: {e}") from None
    cases = bt.read_cases(text)
    cases.sort(key=lambda c: c.key)
    lines = [c.to_line() for c in cases]
    M = args.truncation_override
    if args.jobs > 1 and len(lines) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            recs = list(pool.map(_run_one, lines, [M] * len(lines)))
    else:
        recs = [_run_one(line, M) for line in lines]
    passed = sum(r["ok"] for r in recs)
    summary = {"command": "battery", "case": args.file or "<shipped>", "cases": len(recs),
               "passed": passed, "failed": len(recs) - passed, "ok": passed == len(recs)}
    return recs + [summary]


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rootcomp", description="Root components in cyclic convolution varieties.")
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        s = sub.add_parser(name)
        bt.add_case_arguments(s, with_expectations=True)
        s.add_argument("--format", choices=["text", "json-lines"], default="text")
        s.add_argument("--truncation-override", type=int, metavar="M")
    s = sub.add_parser("battery")
    s.add_argument("file", nargs="?", help="case file; the shipped battery when omitted")
    s.add_argument("--format", choices=["text", "json-lines"], default="text")
    s.add_argument("--truncation-override", type=int, metavar="M")
    s.add_argument("--jobs", type=int, default=1)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        if args.command == "battery":
            records = cmd_battery(args)
        else:
            spec = bt.spec_from_namespace(args)
            records = [COMMANDS[args.command](spec, args)]
    except (bt.CaseError, UsageError, ConditionsViolated) as e:
        print(f"rootcomp: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    emit(records, args.format, out)
    return EXIT_OK if all(r["ok"] for r in records) else EXIT_MISMATCH


def main_exit():
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
