"""Command-line entry point.

Exit status: 0 for success or a positive verdict, 2 for a definite negative
verdict (not Lie-Hopf, failed axiom), 1 for unusable input.
"""
from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from . import __version__
from .catalog import DEFAULT_DEGREE, PRESETS, binomial, desuspension_obstruction, preset
from .errors import LieHopfError
from .hopf import HopfPresentation, is_primitive, verify_hopf_axioms, verify_multiplicativity
from .koszul import build_dga, coalgebra_from_ring, cohomology, cup_structure
from .primitivize import ChangeOfBasis, check_certificate, lie_hopf_decision
from .qsymm import Composition, deconcatenation, overlapping_shuffle, pairing
from . import serialize as ser

EXIT_OK, EXIT_INPUT, EXIT_NEGATIVE = 0, 1, 2


class InputError(Exception):
    pass


def _read(path: str) -> dict:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return ser.loads(text)


def _load_presentation(args) -> HopfPresentation:
    if args.preset and args.input:
        raise InputError("give either an input file or --preset, not both")
    if args.preset:
        return preset(args.preset, args.degree)
    if not args.input:
        raise InputError("an input file or --preset is required")
    p = ser.presentation_from_dict(_read(args.input))
    if args.degree is not None:
        p = p.with_truncation(args.degree)
    return p


def _report(command: str, verdict: str, started: float, **payload) -> dict:
    doc = {"format": ser.REPORT_FORMAT, "command": command, "verdict": verdict}
    doc.update(payload)
    doc["timing_seconds"] = round(time.perf_counter() - started, 6)
    doc["version"] = __version__
    return doc


def _decision_payload(p: HopfPresentation):
    out = lie_hopf_decision(p)
    if isinstance(out, ChangeOfBasis):
        return "is_lie_hopf", {"change_of_basis": ser.change_to_dict(out)}, out
    return "not_lie_hopf", {"certificate": ser.certificate_to_dict(out)}, out


# human-readable rendering


def _human_decision(verdict: str, result, lines: list[str]):
    if verdict == "is_lie_hopf":
        lines.append("verdict: is_lie_hopf")
        lines.append("primitive generators:")
        for g in result.presentation.alphabet:
            lines.append(f"  {g.id}' = {result.new_generator(g.id)}")
    else:
        lines.append("verdict: not_lie_hopf")
        lines.append(f"obstruction at generator {result.generator} (degree {result.degree}):")
        for eq in result.system.describe():
            lines.append(f"  {eq}")
        w = result.witness
        lines.append(f"  witness: functional {list(w.functional)}, {w.g} must divide {w.r}")


def _emit(args, doc: dict, lines: list[str]):
    if args.format == "structured":
        sys.stdout.write(ser.dumps(doc))
    else:
        sys.stdout.write("\n".join(lines) + "\n")


# subcommands


def cmd_decide(args) -> int:
    started = time.perf_counter()
    p = _load_presentation(args)
    verdict, payload, result = _decision_payload(p)
    doc = _report("decide", verdict, started, presentation=ser.presentation_to_dict(p), **payload)
    lines = []
    _human_decision(verdict, result, lines)
    _emit(args, doc, lines)
    return EXIT_OK if verdict == "is_lie_hopf" else EXIT_NEGATIVE


def cmd_verify(args) -> int:
    started = time.perf_counter()
    p = _load_presentation(args)
    reports = verify_hopf_axioms(p, args.degree)
    reports.append(verify_multiplicativity(p, samples=args.samples, seed=args.seed))
    ok = all(reports)
    doc = _report("verify", "pass" if ok else "fail", started, checks=[r.as_dict() for r in reports])
    lines = []
    for r in reports:
        where = f" at {r.element} (degree {r.degree})" if not r.passed else f" through degree {r.degree}"
        lines.append(f"{r.check}: {'pass' if r.passed else 'FAIL'}{where}")
    _emit(args, doc, lines)
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_moment_angle(args) -> int:
    started = time.perf_counter()
    k = ser.complex_from_dict(_read(args.input))
    dga = build_dga(k)
    h = cohomology(dga, args.max_degree)
    table = [
        {"degree": d, "rank": h.rank(d), "torsion": h.torsion(d),
         "classes": [{"label": c.label, "representative": str(c.representative)} for c in h.classes(d)]}
        for d in range(args.max_degree + 1)
    ]
    lines = [f"ranks: {tuple(h.ranks())}"]
    for row in table:
        if row["torsion"]:
            lines.append(f"  H^{row['degree']} torsion {row['torsion']}")
        for c in row["classes"]:
            lines.append(f"  {c['label']} = [{c['representative']}]")
    payload = {"cohomology": table}
    if not h.torsion_free():
        doc = _report("moment-angle", "fail", started, decide={"status": "aborted", "reason": "torsion in cohomology"}, **payload)
        lines.append("decide: aborted, cohomology has torsion so the homology coalgebra is not free")
        _emit(args, doc, lines)
        return EXIT_INPUT
    constants = cup_structure(h)
    products = [
        {"left": x, "right": y, "product": {z: str(c) for z, c in prod.items()}}
        for (x, y), prod in constants.items() if prod and not x.startswith("h0_") and not y.startswith("h0_")
    ]
    for e in products:
        lines.append(f"  {e['left']}·{e['right']} = " + " + ".join(f"{c}*{z}" for z, c in e["product"].items()))
    p = coalgebra_from_ring(h, constants)
    verdict, decision, result = _decision_payload(p)
    lines.append("decide on the dual coalgebra:")
    _human_decision(verdict, result, lines)
    doc = _report("moment-angle", verdict, started, products=products,
                  presentation=ser.presentation_to_dict(p), **payload, **decision)
    _emit(args, doc, lines)
    return EXIT_OK if verdict == "is_lie_hopf" else EXIT_NEGATIVE


def _composition(text: str) -> Composition:
    body = text.strip().strip("()")
    if not body:
        return Composition()
    try:
        return Composition(int(x) for x in body.split(","))
    except ValueError as exc:
        raise InputError(f"malformed composition {text!r}: {exc}") from None


def _nsymm_word(text: str) -> tuple[int, ...]:
    t = text.strip()
    if t.upper().startswith("Z"):
        parts = [x for x in t.upper().split("Z") if x]
        return tuple(_composition(",".join(parts)))
    return tuple(_composition(t))


def cmd_qsymm(args) -> int:
    started = time.perf_counter()
    if args.operation == "product":
        if len(args.operands) != 2:
            raise InputError("product takes two compositions")
        a, b = (_composition(x) for x in args.operands)
        prod = overlapping_shuffle(a, b)
        result = [{"composition": list(c), "coeff": str(v)} for c, v in prod.items()]
        lines = [f"M{a!r} * M{b!r} = {prod}"]
    elif args.operation == "coproduct":
        if len(args.operands) != 1:
            raise InputError("coproduct takes one composition")
        a = _composition(args.operands[0])
        splits = deconcatenation(a)
        result = [{"left": list(l), "right": list(r)} for l, r in splits]
        lines = [f"Δ M{a!r} = " + " + ".join(f"M{l!r}⊗M{r!r}" for l, r in splits)]
    else:
        if len(args.operands) != 2:
            raise InputError("pair takes an NSymm word and a composition")
        z = _nsymm_word(args.operands[0])
        a = _composition(args.operands[1])
        value = pairing(z, a)
        result = str(value)
        lines = [f"<Z{''.join(f'Z{i}' for i in z)[1:]}, M{a!r}> = {value}"]
    doc = _report("qsymm", "pass", started, operation=args.operation, result=result)
    _emit(args, doc, lines)
    return EXIT_OK


def cmd_obstruction(args) -> int:
    started = time.perf_counter()
    if args.n < 1:
        raise InputError("--n must be >= 1")
    entries, lines = [], []
    target = binomial(2 * args.n)
    for n in range(1, args.n + 1):
        ob = desuspension_obstruction(n, 2 * args.n)
        prim = is_primitive(target, ob.a_xi)
        entries.append({
            "n": n,
            "a_xi": ser.element_to_dict(ob.a_xi),
            "obstruction": ser.element_to_dict(ob.obstruction),
            "primitive": prim,
        })
        lines.append(f"a+xi{n} = {ob.a_xi}")
        lines.append(f"  w{n} - a+xi{n} = {ob.obstruction}")
    doc = _report("obstruction", "pass", started, elements=entries)
    _emit(args, doc, lines)
    return EXIT_OK


def cmd_preset(args) -> int:
    started = time.perf_counter()
    if args.action == "list":
        names = list(PRESETS)
        doc = _report("preset", "pass", started, presets=[{"name": n, "default_degree": DEFAULT_DEGREE[n]} for n in names])
        _emit(args, doc, [f"{n} (default degree {DEFAULT_DEGREE[n]})" for n in names])
        return EXIT_OK
    if not args.name:
        raise InputError("preset emit needs a preset name")
    p = preset(args.name, args.degree)
    sys.stdout.write(ser.dumps(ser.presentation_to_dict(p)))
    return EXIT_OK


def cmd_check(args) -> int:
    """Re-verify a structured decide report offline."""
    started = time.perf_counter()
    doc = _read(args.report)
    if not isinstance(doc.get("presentation"), dict):
        raise InputError("report does not embed a presentation")
    p = ser.presentation_from_dict(doc["presentation"])
    if "certificate" in doc:
        cert = ser.certificate_from_dict(doc["certificate"], p.alphabet)
        ok = check_certificate(cert, p)
        what = "certificate"
    elif "change_of_basis" in doc:
        change = ser.change_from_dict(doc["change_of_basis"], p)
        ok = all(is_primitive(p, w) for w in change.new_generators().values())
        what = "change of basis"
    else:
        raise InputError("report has neither a certificate nor a change of basis")
    out = _report("check", "pass" if ok else "fail", started, checked=what)
    _emit(args, out, [f"{what}: {'valid' if ok else 'INVALID'}"])
    return EXIT_OK if ok else EXIT_NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="liehopf", description="Decide whether a presented Hopf algebra is primitively generated over the integers.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["human", "structured"], default="human")
    sub = parser.add_subparsers(dest="command", required=True)

    def presentation_args(sp):
        sp.add_argument("input", nargs="?", help="presentation document (JSON), or - for stdin")
        sp.add_argument("--preset", choices=sorted(PRESETS))
        sp.add_argument("-d", "--degree", type=int, help="truncation degree")

    sp = sub.add_parser("decide", parents=[common], help="decide the Lie-Hopf question")
    presentation_args(sp)
    sp.set_defaults(func=cmd_decide)

    sp = sub.add_parser("verify", parents=[common], help="check the Hopf axioms")
    presentation_args(sp)
    sp.add_argument("--seed", type=int, default=0, help="seed for sampled multiplicativity checks")
    sp.add_argument("--samples", type=int, default=20)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("moment-angle", parents=[common], help="cohomology and decision for a moment-angle complex")
    sp.add_argument("input", help="complex document (JSON)")
    sp.add_argument("--max-degree", type=int, required=True)
    sp.set_defaults(func=cmd_moment_angle)

    sp = sub.add_parser("qsymm", parents=[common], help="quasi-symmetric function operations")
    sp.add_argument("operation", choices=["product", "coproduct", "pair"])
    sp.add_argument("operands", nargs="+", help="compositions as comma lists, e.g. 3,1 or (3,1)")
    sp.set_defaults(func=cmd_qsymm)

    sp = sub.add_parser("obstruction", parents=[common], help="desuspension obstructions")
    sp.add_argument("--n", type=int, required=True)
    sp.set_defaults(func=cmd_obstruction)

    sp = sub.add_parser("preset", parents=[common], help="list or emit built-in presentations")
    sp.add_argument("action", choices=["list", "emit"])
    sp.add_argument("name", nargs="?")
    sp.add_argument("-d", "--degree", type=int)
    sp.set_defaults(func=cmd_preset)

    sp = sub.add_parser("check", parents=[common], help="re-verify a structured decide report")
    sp.add_argument("report")
    sp.set_defaults(func=cmd_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, LieHopfError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
