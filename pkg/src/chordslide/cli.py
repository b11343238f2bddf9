"""
Command line entry point.

Every command writes one JSON document (schema 1) to stdout, except
``render`` which writes the diagram text.  Exit status: 0 on success, 1 on
invalid input (error record on stderr), 2 when a diagnostic contradicts a
claim the algorithms rely on (StuckDomain, MultiArcDiscrepancy).
"""

from __future__ import annotations

import argparse
import json
import sys

from .chords import FORMATS, render, to_chord_diagram
from .corpus import PRNG, random_walk
from .domain import (PolygonDomain, domain_from_json, domain_to_json, mapping_class_from_json,
                     standard_domain, validate)
from .errors import ChordSlideError, Finding, InputError, InvalidDomain, UsageError
from .moves import path_to_json
from .reduction import factorize_mapping_class, nielsen_to_json, reduce
from .relations import find_loops, loop_census
from .triangulation import (fan_triangulate, flip_path_from_json, flips_to_cs, greedy_extract,
                            triangulation_from_json, triangulation_to_json)
from .words import GenusContext

SCHEMA = 1


def _header(command: str, seed=None) -> dict:
    return {"schema": SCHEMA, "command": command, "seed": seed}


def _read_json(path):
    try:
        if path is None or path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise InputError("cannot read %s: %s" % (path, exc.strerror)) from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError("invalid JSON in %s: %s" % (path or "stdin", exc)) from exc


def _unwrap(doc, key):
    """Accept a bare record or an output document carrying it under ``key``."""
    if isinstance(doc, dict) and key in doc and isinstance(doc[key], dict):
        return doc[key]
    return doc


def _load_domain(args) -> PolygonDomain:
    if args.domain == "standard":
        if args.genus is None:
            raise UsageError("--domain standard needs --genus")
        return standard_domain(GenusContext(args.genus))
    if args.domain is not None:
        raise UsageError("--domain only accepts 'standard'")
    doc = _unwrap(_read_json(args.path), "domain")
    if not isinstance(doc, dict):
        raise InputError("expected a domain record")
    P = domain_from_json(doc)
    if args.genus is not None and args.genus != P.g:
        raise InputError("domain has genus %d but --genus %d was given" % (P.g, args.genus))
    return P


def _genus(value: str) -> int:
    try:
        g = int(value)
        GenusContext(g)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    return g


def _nonneg(value: str) -> int:
    n = int(value)
    if n < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return n


# commands -----------------------------------------------------------------

def cmd_reduce(args):
    P = _load_domain(args)

    def emit(step):
        if args.trace:
            args.stderr.write(json.dumps({"move": str(step.move), "rationale": step.rationale,
                                         "length": step.length_after,
                                         "energy_sign": step.energy_sign}) + "\n")

    trace = reduce(P, on_step=emit)
    out = _header("reduce")
    out.update(trace.to_json(with_nielsen=args.nielsen))
    return out


def cmd_factorize(args):
    doc = _read_json(args.map)
    if isinstance(doc, dict) and "genus" not in doc and args.genus is not None:
        doc = {"genus": args.genus, "images": doc.get("images", doc)}
    phi = mapping_class_from_json(doc)
    if args.genus is not None and args.genus != phi.ctx.g:
        raise InputError("map has genus %d but --genus %d was given" % (phi.ctx.g, args.genus))
    path, steps, total = factorize_mapping_class(phi)
    names = phi.ctx.generator_names
    basis = [phi.ctx.format(w) for w in standard_domain(phi.ctx).cg_set()]
    out = _header("factorize")
    out.update({
        "genus": phi.ctx.g,
        "path": path_to_json(path),
        "length": len(path),
        "nielsen": [nielsen_to_json(phi.ctx, st) for st in steps],
        "basis": basis,
        "composed": total.describe(basis),
        "images": {name: phi.ctx.format(phi.images[name]) for name in names},
    })
    return out


def cmd_random_walk(args):
    P = _load_domain(args) if (args.path or args.domain) else standard_domain(GenusContext(args.genus))
    Q, path = random_walk(P, args.steps, args.seed)
    out = _header("random-walk", args.seed)
    out.update({"prng": PRNG, "steps": args.steps, "domain": domain_to_json(Q),
                "path": path_to_json(path)})
    return out


def cmd_verify(args):
    out = _header("verify")
    if args.relations:
        if args.genus is None:
            raise UsageError("verify --relations needs --genus")
        P = standard_domain(GenusContext(args.genus))
        loops = find_loops(P, args.max_loop)
        out.update({"genus": args.genus, "max_loop": args.max_loop, "census": loop_census(loops)})
        return out
    doc = _unwrap(_read_json(args.path), "domain") if args.domain is None else None
    if doc is not None:
        P = domain_from_json(doc, validate_input=False)
    else:
        P = _load_domain(args)
    report = validate(P)
    out.update({"valid": report.ok, "violations": report.violations})
    if not report.ok:
        raise InvalidDomain(report.violations)
    return out


def cmd_triangulate(args):
    P = _load_domain(args)
    out = _header("triangulate")
    out["triangulation"] = triangulation_to_json(fan_triangulate(P))
    return out


def cmd_extract(args):
    T = triangulation_from_json(_unwrap(_read_json(args.path), "triangulation"))
    out = _header("extract")
    out["domain"] = domain_to_json(greedy_extract(T))
    return out


def cmd_translate_flips(args):
    doc = _unwrap(_read_json(args.path), "flip_path")
    path = flip_path_from_json(doc)
    stats = {}
    cs = flips_to_cs(path, stats)
    out = _header("translate-flips")
    out.update({"path": path_to_json(cs), "length": len(cs), "replacements": stats,
                "final": domain_to_json(cs.final())})
    return out


def cmd_render(args):
    if not args.format:
        raise UsageError("--format must be one of %s" % ", ".join(FORMATS))
    P = _load_domain(args)
    return render(to_chord_diagram(P), args.format)


COMMANDS = {
    "reduce": cmd_reduce,
    "factorize": cmd_factorize,
    "random-walk": cmd_random_walk,
    "verify": cmd_verify,
    "triangulate": cmd_triangulate,
    "extract": cmd_extract,
    "translate-flips": cmd_translate_flips,
    "render": cmd_render,
}


class _Parser(argparse.ArgumentParser):
    """Usage errors become UsageError records instead of argparse's text."""

    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="chordslide", description=__doc__.strip().splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def domain_input(p):
        p.add_argument("path", nargs="?", help="domain JSON file ('-' or omitted: stdin)")
        p.add_argument("--domain", choices=["standard"], help="use the standard domain instead of a file")
        p.add_argument("--genus", type=_genus)

    p = sub.add_parser("reduce", help="reduce a polygon domain to the standard one")
    domain_input(p)
    p.add_argument("--trace", action="store_true", help="per-step JSON lines on stderr")
    p.add_argument("--no-nielsen", dest="nielsen", action="store_false",
                   help="omit the Nielsen substitutions from the output")

    p = sub.add_parser("factorize", help="factor a mapping class into triangle moves")
    p.add_argument("--map", required=True, help="JSON with generator images")
    p.add_argument("--genus", type=_genus)

    p = sub.add_parser("random-walk", help="seeded random walk of triangle moves")
    domain_input(p)
    p.add_argument("--steps", type=_nonneg, default=50)
    p.add_argument("--seed", type=_nonneg, default=0)

    p = sub.add_parser("verify", help="validate a domain or run the relation census")
    domain_input(p)
    p.add_argument("--relations", action="store_true")
    p.add_argument("--max-loop", type=_nonneg, default=4)

    p = sub.add_parser("triangulate", help="fan triangulation of a domain")
    domain_input(p)

    p = sub.add_parser("extract", help="greedy polygon domain of a triangulation")
    p.add_argument("path", nargs="?")

    p = sub.add_parser("translate-flips", help="turn a flip path into triangle moves")
    p.add_argument("path", nargs="?")

    p = sub.add_parser("render", help="draw the chord diagram of a domain")
    domain_input(p)
    p.add_argument("--format", default="ascii", help="one of %s" % ", ".join(FORMATS))
    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        stderr.write(json.dumps(exc.record()) + "\n")
        return 1
    except SystemExit as exc:      # --help
        return 1 if exc.code else 0
    args.stderr = stderr
    if args.command == "random-walk" and args.genus is None and not (args.path or args.domain):
        args.genus = 1
    try:
        result = COMMANDS[args.command](args)
    except Finding as exc:
        stderr.write(json.dumps(exc.record()) + "\n")
        return 2
    except (ChordSlideError, ValueError) as exc:
        record = exc.record() if isinstance(exc, ChordSlideError) else {"error": "InputError", "message": str(exc)}
        stderr.write(json.dumps(record) + "\n")
        return 1
    if isinstance(result, str):
        stdout.write(result)
    else:
        stdout.write(json.dumps(result, indent=2) + "\n")
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
