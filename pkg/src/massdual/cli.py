"""Command line entry point.

Subcommands load scenario files, run the engines, and emit reports as text
or JSON.  Exit codes: 0 success, 1 check failure (verify and the duality
verdict), 2 input or usage error, 3 divergent mass.

JSON documents may be wrapped as {"kind": ..., "payload": ..., "metadata":
...}; the payload is what the engines read.  Identical inputs produce
byte-identical JSON output (keys sorted, forms canonical).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .duality import duality_report
from .errors import DivergentSeries, MassdualError
from .grouprep import group_from_json
from .massengine import (
    MassPair,
    TameScenario,
    bhargava_masses,
    builtin_profile,
    hilbert_counts,
    kedlaya_masses,
    profile_from_json,
    profile_total_masses,
    tame_involution_check,
    tame_total_masses,
)
from .qsym import ClassFunction, cf_dual, is_infinite
from .stringy import (
    builtin_resolution,
    gm_duality_check,
    poincare_check,
    resolution_from_json,
    stringy_count,
)
from .verify import SUITES, run_suite

BUILTIN_PROFILES = ("quad_char0_sigma", "quad_char2_sigma", "quad_char2_upsilon")


def _emit(obj: dict, report: str) -> None:
    if report == "json":
        print(json.dumps(obj, indent=2, sort_keys=True))
        return
    for key, val in obj.items():
        if isinstance(val, dict) and {"modulus", "root_order", "classes"} <= set(val):
            body = ClassFunction.from_json(val).render()
            if "\n" in body:
                print(f"{key}:")
                for line in body.split("\n"):
                    print(f"  {line}")
            else:
                print(f"{key} = {body}")
        else:
            print(f"{key} = {val}")


class _StdinCache:
    """Read stdin at most once so `--mv - --mw -` sees one document."""

    def __init__(self):
        self.text = None

    def read(self, path: str) -> str:
        if path == "-":
            if self.text is None:
                self.text = sys.stdin.read()
            return self.text
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()


def _payload(doc: dict, kind: str) -> dict:
    """Unwrap a scenario file; a bare payload is accepted as-is."""
    if isinstance(doc, dict) and "kind" in doc and "payload" in doc:
        if doc["kind"] != kind:
            raise ValueError(f"scenario file has kind {doc['kind']!r}, expected {kind!r}")
        return doc["payload"]
    return doc


def _mass_json(m) -> object:
    return "infinite" if is_infinite(m) else m.to_json()


def _eval_masses(masses: MassPair, spec: list, out: dict) -> None:
    q0 = Fraction(spec[0])
    r0 = int(spec[1])
    for key, m in (("mass_v", masses.mass_v), ("mass_w", masses.mass_w)):
        val = m.eval(q0, r0)
        out[f"{key}({q0},{r0})"] = str(val)


def _divergent(report: str, reason: str) -> int:
    _emit({"divergent": True, "reason": reason}, report)
    return 3


def _cmd_tame(args) -> int:
    cache = _StdinCache()
    doc = json.loads(cache.read(args.group))
    group, rep = group_from_json(_payload(doc, "tame"))
    scenario = TameScenario(group, rep, args.q)
    masses = tame_total_masses(scenario, threads=args.threads)
    out = {"mass_v": _mass_json(masses.mass_v), "mass_w": _mass_json(masses.mass_w)}
    code = 0
    if args.check_involution:
        ok = tame_involution_check(scenario)
        out["involution"] = ok
        if not ok:
            code = 1
    if args.eval:
        _eval_masses(masses, args.eval, out)
    _emit(out, args.report)
    return code


def _cmd_profile(args) -> int:
    if args.file:
        cache = _StdinCache()
        doc = json.loads(cache.read(args.file))
        profile = profile_from_json(_payload(doc, "profile"))
    else:
        profile = builtin_profile(args.builtin, n=args.n, m=args.m)
    try:
        masses = profile_total_masses(profile)
    except DivergentSeries as exc:
        return _divergent(args.report, str(exc))
    if not masses.is_finite:
        return _divergent(args.report, "a geometric family has ratio exponent >= 0")
    out = {"mass_v": _mass_json(masses.mass_v), "mass_w": _mass_json(masses.mass_w)}
    if args.eval:
        _eval_masses(masses, args.eval, out)
    _emit(out, args.report)
    return 0


def _cmd_formula(args) -> int:
    if args.which == "hilbert":
        counts = hilbert_counts(args.n)
        out = {
            "hilb_plane": counts.hilb_plane.to_json(),
            "fiber": counts.fiber.to_json(),
        }
        _emit(out, args.report)
        return 0
    masses = bhargava_masses(args.n) if args.which == "bhargava" else kedlaya_masses(args.n)
    out = {
        "mass_v": _mass_json(masses.mass_v),
        "mass_w": _mass_json(masses.mass_w),
        "strong": cf_dual(masses.mass_w) == masses.mass_v,
    }
    if args.eval:
        _eval_masses(masses, args.eval, out)
    _emit(out, args.report)
    return 0


def _cmd_stringy(args) -> int:
    if args.builtin:
        fixtures = builtin_resolution(args.builtin)
    else:
        cache = _StdinCache()
        doc = json.loads(cache.read(args.file))
        payload = _payload(doc, "stringy")
        if "total" in payload or "origin" in payload:
            fixtures = {
                role: resolution_from_json(payload[role])
                for role in ("total", "origin")
                if role in payload
            }
        else:
            fixtures = {"total": resolution_from_json(payload)}
    counts = {}
    for role, data in fixtures.items():
        value = stringy_count(data)
        if is_infinite(value):
            return _divergent(
                args.report, f"{role}: a met exceptional divisor has multiplicity <= -1"
            )
        counts[role] = value
    out = {f"count_{role}": cf.to_json() for role, cf in counts.items()}
    code = 0
    if args.check_poincare:
        if args.d is None:
            raise ValueError("--check-poincare needs --d")
        ok = poincare_check(counts["total"], args.d)
        out["poincare"] = ok
        code = max(code, 0 if ok else 1)
    if args.check_gm:
        if args.d is None:
            raise ValueError("--check-gm needs --d")
        if "origin" not in counts:
            raise ValueError("--check-gm needs both total and origin counts")
        ok = gm_duality_check(counts["total"], counts["origin"], args.d)
        out["gm"] = ok
        code = max(code, 0 if ok else 1)
    _emit(out, args.report)
    return code


def _one_mass(doc: dict, field: str):
    """A mass from either a bare ClassFunction document or a MassPair one."""
    if field in doc:
        doc = doc[field]
    if doc == "infinite":
        return None
    return ClassFunction.from_json(doc)


def _cmd_duality(args) -> int:
    cache = _StdinCache()
    mv = _one_mass(json.loads(cache.read(args.mv)), "mass_v")
    mw = _one_mass(json.loads(cache.read(args.mw)), "mass_w")
    if mv is None or mw is None:
        return _divergent(args.report, "duality verdicts need finite masses")
    report = duality_report(MassPair(mv, mw), args.d)
    _emit(report.to_json(), args.report)
    return 0 if report.weak else 1


def _cmd_verify(args) -> int:
    results = run_suite(args.suite)
    if args.report == "json":
        out = {
            "suite": args.suite,
            "results": [
                {"name": r.name, "passed": r.passed, "detail": r.detail} for r in results
            ],
        }
        print(json.dumps(out, indent=2, sort_keys=True))
    else:
        width = max(len(r.name) for r in results)
        for r in results:
            status = "PASS" if r.passed else "FAIL"
            print(f"{status}  {r.name:<{width}}  {r.detail}")
    return 0 if all(r.passed for r in results) else 1


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="massdual",
        description="Exact total masses, stringy counts, and duality verdicts.",
        epilog="GML_PRECISION sets significant digits for decimal evaluation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_report(p):
        p.add_argument("--report", choices=("text", "json"), default="text")

    def add_eval(p):
        p.add_argument(
            "--eval",
            nargs=2,
            metavar=("Q0", "R0"),
            help="also evaluate the masses at q = Q0 (rational), r = R0",
        )

    p = sub.add_parser("tame", help="enumerate a tame scenario from a group file")
    p.add_argument("--group", required=True, help="group+representation JSON, or -")
    p.add_argument("--q", required=True, type=int, help="residue field size")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--check-involution", action="store_true")
    add_report(p)
    add_eval(p)
    p.set_defaults(func=_cmd_tame)

    p = sub.add_parser("profile", help="total masses of a ramification profile")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--builtin", choices=BUILTIN_PROFILES)
    src.add_argument("--file", help="profile JSON, or -")
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument(
        "--q-symbolic",
        action="store_true",
        help="emit masses symbolically in q (the default and only mode)",
    )
    add_report(p)
    add_eval(p)
    p.set_defaults(func=_cmd_profile)

    p = sub.add_parser("formula", help="closed-form mass and count families")
    p.add_argument("which", choices=("bhargava", "kedlaya", "hilbert"))
    p.add_argument("--n", required=True, type=int)
    add_report(p)
    add_eval(p)
    p.set_defaults(func=_cmd_formula)

    p = sub.add_parser("stringy", help="stringy point count of resolution data")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--file", help="resolution JSON, or -")
    src.add_argument("--builtin", choices=("a1_cone",))
    p.add_argument("--d", type=int, help="dimension for the duality checks")
    p.add_argument("--check-poincare", action="store_true")
    p.add_argument("--check-gm", action="store_true")
    add_report(p)
    p.set_defaults(func=_cmd_stringy)

    p = sub.add_parser("duality", help="strong/weak duality verdicts for a mass pair")
    p.add_argument("--mv", required=True, help="mass_v JSON file, or -")
    p.add_argument("--mw", required=True, help="mass_w JSON file, or -")
    p.add_argument("--d", required=True, type=int)
    add_report(p)
    p.set_defaults(func=_cmd_duality)

    p = sub.add_parser("verify", help="run the bundled acceptance fixtures")
    p.add_argument("--suite", choices=sorted(SUITES), default="all")
    add_report(p)
    p.set_defaults(func=_cmd_verify)

    return parser


def run(argv=None) -> int:
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except MassdualError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, KeyError, TypeError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
