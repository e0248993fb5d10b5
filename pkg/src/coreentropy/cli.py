"""Command-line front end.

    coreentropy <group> <command> FILE [options]

Reports go to stdout as JSON (default) or a plain table. Exit status: 0 on
success, 1 on a domain or validation failure, 2 on parse or I/O failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import jsonio
from .errors import CoreEntropyError, ValidationFailed
from .hubbard import (
    cycle_decomposition,
    forest_entropy,
    mu,
    poly_continuity_verdict,
    ppf_continuity_verdict,
    validate_forest,
)
from .markov import DEFAULT_TOLERANCE, EntropyValue, entropy
from .newton import (
    cubic_verdict,
    extended_graph_entropy,
    multiplier_check,
    newton_continuity_verdict,
    newton_core_entropy,
    validate_newton,
)
from .portrait import ClassStructure, CriticalMarking, Side, check_marking_properties, portrait_report
from .render import portrait_svg
from .scan import scan_continuity
from .thurston import transition_graph

EXIT_OK, EXIT_DOMAIN, EXIT_IO = 0, 1, 2


class UsageError(Exception):
    pass


def num(x: float) -> float:
    """12 significant digits."""
    return float(f"{x:.12g}")


def entropy_fields(name: str, v: EntropyValue) -> dict:
    return {name: num(v.value), f"{name}_bracket": [v.lower, v.upper]}


def _witness(w) -> list | None:
    if w is None:
        return None
    return [{"vertex": c, "block": b.to_strings()} for c, b in w]


def _portrait(doc: dict):
    p = jsonio.portrait_from_json(doc, validate=False)
    return p.portrait if isinstance(p, CriticalMarking) else p, p


# -- subcommands ----------------------------------------------------------------

def cmd_portrait_validate(doc: dict, args) -> tuple[dict, int]:
    portrait, obj = _portrait(doc)
    report = portrait_report(portrait.degree, portrait.blocks)
    out: dict = {"valid": not report, "report": report}
    if not report and isinstance(obj, CriticalMarking):
        props = check_marking_properties(obj)
        out["properties"] = props
    return out, EXIT_OK if not report else EXIT_DOMAIN


def _valid_portrait(doc: dict):
    p = jsonio.portrait_from_json(doc)
    return p.portrait if isinstance(p, CriticalMarking) else p


def cmd_portrait_classes(doc: dict, args) -> tuple[dict, int]:
    cs = ClassStructure(_valid_portrait(doc))
    rows = [
        {"index": c.index, "intervals": [[str(s), str(e)] for s, e in c.intervals], "length": str(c.length)}
        for c in cs.classes
    ]
    return {"classes": rows}, EXIT_OK


def cmd_portrait_itinerary(doc: dict, args) -> tuple[dict, int]:
    from .circle import Angle

    if not args.angle:
        raise UsageError("portrait itinerary needs --angle p/q")
    try:
        t = Angle.parse(args.angle)
    except (ValueError, ZeroDivisionError) as exc:
        raise jsonio.ParseError(f"bad angle {args.angle!r}: {exc}") from None
    it = ClassStructure(_valid_portrait(doc)).itinerary(t, Side(args.side))
    return {"angle": str(t), "side": args.side, "preperiod": it.preperiod, "period": it.period,
            "digits": list(it.digits)}, EXIT_OK


def cmd_entropy_thurston(doc: dict, args) -> tuple[dict, int]:
    g = transition_graph(_valid_portrait(doc))
    h = entropy(g.transition) if g.pairs else EntropyValue.zero()
    return {**entropy_fields("entropy", h), "lower": h.lower, "upper": h.upper, "pairs": len(g.pairs)}, EXIT_OK


def cmd_entropy_tree(doc: dict, args) -> tuple[dict, int]:
    f = validate_forest(jsonio.forest_from_json(doc))
    dec = cycle_decomposition(f)
    out = entropy_fields("entropy", forest_entropy(f))
    out["cycles"] = [
        {"components": list(c.components), "period": c.period, "entropy": num(c.entropy.value)} for c in dec.cycles
    ]
    return out, EXIT_OK


def cmd_entropy_newton(doc: dict, args) -> tuple[dict, int]:
    spec = validate_newton(jsonio.newton_from_json(doc))
    out = entropy_fields("entropy", newton_core_entropy(spec))
    if spec.extended_graph is not None:
        g = extended_graph_entropy(spec, args.tolerance)
        out["extended_graph"] = {
            **entropy_fields("full", g.full), **entropy_fields("forest", g.forest), "well_defined": g.well_defined,
        }
    if spec.roots is not None:
        m = multiplier_check(spec.roots, spec.multiplicities)
        out["multipliers"] = {
            "roots": [num(r["deviation"]) for r in m["roots"]],
            "infinity": num(m["infinity"]["deviation"]),
            "passed": m["passed"],
        }
    return out, EXIT_OK


def cmd_poly_mu(doc: dict, args) -> tuple[dict, int]:
    f = validate_forest(jsonio.forest_from_json(doc))
    r = mu(f)
    return {**entropy_fields("mu", r.entropy), "witness": _witness(r.witness),
            "notes": list(r.forest.ends.notes)}, EXIT_OK


def _verdict_doc(v) -> dict:
    return {"verdict": v.verdict.value, **entropy_fields("h", v.h), **entropy_fields("mu", v.mu),
            "witness": _witness(v.witness)}


def cmd_poly_verdict(doc: dict, args) -> tuple[dict, int]:
    if "renormalizations" in doc:  # partially postcritically-finite polynomial
        comps = [(c["period"], jsonio.model_from_json(c["model_kind"], c["model"])) for c in doc["renormalizations"]]
        v = ppf_continuity_verdict(comps, args.tolerance)
        return {**_verdict_doc(v), "details": v.details}, EXIT_OK
    f = validate_forest(jsonio.forest_from_json(doc))
    return _verdict_doc(poly_continuity_verdict(f, args.tolerance)), EXIT_OK


def cmd_newton_verdict(doc: dict, args) -> tuple[dict, int]:
    spec = validate_newton(jsonio.newton_from_json(doc))
    v = cubic_verdict(spec) if args.cubic else newton_continuity_verdict(spec, args.tolerance)
    rows = [{k: (num(x) if isinstance(x, float) else x) for k, x in r.items()} for r in v.per_component]
    best_mu = [r["mu"] for i, r in enumerate(v.per_component) if i in v.maximal_components and r["mu"] is not None]
    return {
        "verdict": v.verdict.value,
        **entropy_fields("h", v.h),
        "mu": num(max(best_mu)) if best_mu else (0.0 if not v.maximal_components else None),
        "maximal_components": list(v.maximal_components),
        "per_component": rows,
    }, EXIT_OK


def _frac(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def cmd_scan_continuity(doc: dict, args) -> tuple[dict, int]:
    spec = jsonio.scan_from_json(doc)
    if args.tolerance_given:
        spec = type(spec)(**{**spec.__dict__, "tolerance": args.tolerance})
    res = scan_continuity(spec, workers=args.workers)
    rows = [
        {"n": r.n, "theta": str(r.theta), "distance": _frac(r.distance), "entropy": num(r.entropy), "gap": num(r.gap)}
        for r in res.rows
    ]
    return {
        "target_entropy": num(res.target_entropy),
        "rows": rows,
        "final_gap": num(res.final_gap),
        "converged": res.converged,
        "tail_non_increasing": res.tail_non_increasing(),
        "distance_matching": "blockwise after canonical sort",
    }, EXIT_OK


def cmd_render_portrait(doc: dict, args) -> tuple[dict, int]:
    svg = portrait_svg(_valid_portrait(doc))
    if args.output:
        Path(args.output).write_text(svg, encoding="utf-8")
        return {"svg_path": args.output}, EXIT_OK
    return {"svg": svg}, EXIT_OK


COMMANDS = {
    ("portrait", "validate"): cmd_portrait_validate,
    ("portrait", "classes"): cmd_portrait_classes,
    ("portrait", "itinerary"): cmd_portrait_itinerary,
    ("entropy", "thurston"): cmd_entropy_thurston,
    ("entropy", "tree"): cmd_entropy_tree,
    ("entropy", "newton"): cmd_entropy_newton,
    ("poly", "mu"): cmd_poly_mu,
    ("poly", "verdict"): cmd_poly_verdict,
    ("newton", "verdict"): cmd_newton_verdict,
    ("scan", "continuity"): cmd_scan_continuity,
    ("render", "portrait"): cmd_render_portrait,
}


# -- plumbing -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="coreentropy", description="Core entropy of polynomials and Newton maps.")
    groups = parser.add_subparsers(dest="group", required=True)
    subs: dict[str, argparse._SubParsersAction] = {}
    for group, name in COMMANDS:
        if group not in subs:
            subs[group] = groups.add_parser(group).add_subparsers(dest="command", required=True)
        p = subs[group].add_parser(name)
        p.add_argument("file", help="input JSON file")
        p.add_argument("-o", "--output", help="write the report (or SVG) here instead of stdout")
        p.add_argument("--tolerance", type=float, default=None)
        fmt = p.add_mutually_exclusive_group()
        fmt.add_argument("--json", dest="fmt", action="store_const", const="json", default="json")
        fmt.add_argument("--table", dest="fmt", action="store_const", const="table")
        if (group, name) == ("portrait", "itinerary"):
            p.add_argument("--angle", required=True)
            p.add_argument("--side", choices=[s.value for s in Side], default="right")
        if (group, name) == ("newton", "verdict"):
            p.add_argument("--cubic", action="store_true", help="apply the cubic criterion")
        if (group, name) == ("scan", "continuity"):
            p.add_argument("--workers", type=int, default=1)
    return parser


def _table(report: dict) -> str:
    lines = []
    rows = report.get("rows")
    for k, v in report.items():
        if k != "rows":
            lines.append(f"{k}\t{json.dumps(v, sort_keys=True)}")
    if rows:
        cols = list(rows[0])
        lines.append("\t".join(cols))
        lines.extend("\t".join(str(r[c]) for c in cols) for r in rows)
    return "\n".join(lines) + "\n"


def render_report(report: dict, fmt: str) -> str:
    if fmt == "table":
        return _table(report)
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def _run(argv: list[str] | None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = EXIT_IO if exc.code else EXIT_OK
        return {"status": code, "error": "usage"}, code, None
    args.tolerance_given = args.tolerance is not None
    if args.tolerance is None:
        args.tolerance = DEFAULT_TOLERANCE
    report: dict = {"command": f"{args.group} {args.command}", "inputs": {"file": args.file}}
    if args.tolerance_given:
        report["inputs"]["tolerance"] = args.tolerance
    try:
        doc = jsonio.load(args.file)
        result, status = COMMANDS[(args.group, args.command)](doc, args)
        report.update(result)
    except (OSError, jsonio.ParseError, UsageError, KeyError, TypeError) as exc:
        report.update(error=str(exc), kind=type(exc).__name__)
        status = EXIT_IO
    except ValidationFailed as exc:
        report.update(error=str(exc), kind=type(exc).__name__, report=exc.report)
        status = EXIT_DOMAIN
    except (CoreEntropyError, ValueError) as exc:
        report.update(error=str(exc), kind=type(exc).__name__)
        status = EXIT_DOMAIN
    report["status"] = status
    return report, status, args


def dispatch(argv: list[str] | None = None) -> tuple[dict, int]:
    """Run one subcommand; returns the report and the exit status."""
    report, status, _ = _run(argv)
    return report, status


def main(argv: list[str] | None = None) -> int:
    report, status, args = _run(argv)
    if args is None:
        return status
    rendering = (args.group, args.command) == ("render", "portrait")
    if rendering and status == EXIT_OK and not args.output:
        sys.stdout.write(report["svg"])
        return status
    text = render_report(report, args.fmt)
    if args.output and not rendering:
        try:
            Path(args.output).write_text(text, encoding="utf-8")
        except OSError as exc:
            sys.stderr.write(f"cannot write {args.output}: {exc}\n")
            return EXIT_IO
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
