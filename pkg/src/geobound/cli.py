"""Command-line entry point: ``geobound COMMAND ...``.

Exit status: 0 for pass / Inconclusive, 1 for fail / ObstructionViolated,
2 for usage or input errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from collections import Counter

from . import constructions, cusps
from .fileformat import FormatError, dump, load
from .triangulation import (InvalidTriangulation, OrientationAssignment,
                            check_valence, euler_characteristic, face_vector,
                            isomorphism, orient, ridge_cycles, validate,
                            vertex_links)

OK, FAIL, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="geobound", description=__doc__.splitlines()[0])
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--epsilon", type=float, default=None,
                   help="tolerance for decimal (float) cusp moduli")
    sub = p.add_subparsers(dest="command", required=True)
    for name in ("validate", "analyze", "cycles", "links"):
        sub.add_parser(name).add_argument("file")
    iso = sub.add_parser("iso")
    iso.add_argument("file1")
    iso.add_argument("file2")
    b = sub.add_parser("builtin")
    b.add_argument("name", choices=constructions.NAMES)
    b.add_argument("--emit", metavar="FILE")
    sub.add_parser("verify-paper")
    cusp = sub.add_parser("cusp")
    cusp.add_argument("action", choices=("classify", "obstruct"))
    cusp.add_argument("moduli", nargs="+", metavar="MODULUS")
    d = sub.add_parser("obstruct-degree")
    d.add_argument("num_cusps", type=int)
    d.add_argument("degree", type=int)
    sub.add_parser("obstruct-twist").add_argument("m", type=int)
    e = sub.add_parser("obstruct-euler")
    e.add_argument("n", type=int)
    e.add_argument("chi", type=int)
    return p


def _split_globals(argv: list[str]) -> list[str]:
    """Move global flags to the front and shield signed moduli from option parsing."""
    front, rest, i = [], [], 0
    while i < len(argv):
        a = argv[i]
        if a == "--json":
            front.append(a)
        elif a == "--epsilon" and i + 1 < len(argv):
            front += [a, argv[i + 1]]
            i += 1
        elif a.startswith("--epsilon="):
            front.append(a)
        else:
            rest.append(a)
        i += 1
    if len(rest) >= 2 and rest[0] == "cusp" and "--" not in rest:
        rest = rest[:2] + ["--"] + rest[2:]
    return front + rest


# ---------------------------------------------------------------------------
# text rendering

def _tuple(t) -> str:
    return "(" + ",".join(map(str, t)) + ")"


def _emit(data: dict, lines: list[str], as_json: bool) -> None:
    if as_json:
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        print("\n".join(lines))


def _verdict(v: cusps.Verdict, as_json: bool, extra: dict | None = None) -> int:
    data = dict(v.to_dict(), **(extra or {}))
    record = "verdict=%s rule=%r" % (v.tag.value, v.rule)
    _emit(data, [record, v.reason], as_json)
    return FAIL if v.violated else OK


# ---------------------------------------------------------------------------
# commands

def cmd_validate(args) -> int:
    rep = validate(load(args.file))
    lines = ["valid: %s" % ("yes" if rep.valid else "no"),
             "dimension %d, %d simplices, %d gluings, %d free facets"
             % (rep.dimension, rep.simplex_count, rep.gluing_count, len(rep.free_facets))]
    lines += ["error: %s" % e for e in rep.errors]
    lines += ["free facet: simplex %d %s" % (s, _tuple(f)) for s, f in rep.free_facets]
    lines += ["note: %s" % n for n in rep.notes]
    _emit(rep.to_dict(), lines, args.json)
    return OK if rep.valid else FAIL


def cmd_analyze(args) -> int:
    T = load(args.file)
    rep = validate(T)
    if not rep.valid:
        return cmd_validate(args)
    o = orient(T)
    data = {"validation": rep.to_dict(), "face_vector": face_vector(T)}
    if isinstance(o, OrientationAssignment):
        data["orientable"], data["signs"] = True, list(o.signs)
    else:
        data["orientable"], data["witness"] = False, list(o.witness)
    lines = ["dimension %d, %d simplices, %s" % (T.dimension, T.simplex_count,
                                                "closed" if rep.closed else "partial"),
             "orientable: %s" % ("yes, signs %s" % list(o.signs)
                                 if data["orientable"] else "no, witness gluings %s" % list(o.witness)),
             "face classes by dimension: %s" % data["face_vector"]]
    if rep.closed:
        chi = euler_characteristic(T)
        traces = ridge_cycles(T)
        lengths = sorted(Counter(t.length for t in traces).items())
        data["euler_characteristic"] = chi
        data["cycle_lengths"] = {str(k): v for k, v in lengths}
        data["nontrivial_return_maps"] = sum(not t.trivial for t in traces)
        lines += ["euler characteristic: %d" % chi,
                  "ridge cycle lengths: %s" % ", ".join("%d x%d" % kv for kv in lengths),
                  "nontrivial return maps: %d" % data["nontrivial_return_maps"]]
    if T.dimension >= 2:
        sizes = [l.link.simplex_count for l in vertex_links(T)]
        data["link_sizes"] = sizes
        lines.append("vertex link sizes: %s" % sizes)
    _emit(data, lines, args.json)
    return OK


def cmd_cycles(args) -> int:
    T = load(args.file)
    traces = ridge_cycles(T)
    lines = []
    for t in traces:
        walk = " -> ".join("%d:%s" % (s, _tuple(r)) for s, r in t.steps)
        lines.append("length %d, return map %s%s: %s" % (
            t.length, _tuple(t.return_map), " (trivial)" if t.trivial else "", walk))
    _emit({"cycles": [t.to_dict() for t in traces]}, lines, args.json)
    return OK


def cmd_links(args) -> int:
    T = load(args.file)
    out, lines = [], []
    for i, l in enumerate(vertex_links(T)):
        rep = validate(l.link)
        out.append({"vertex_class": [list(m) for m in l.vertex_class],
                    "simplices": l.link.simplex_count,
                    "closed": rep.closed,
                    "gluings": [str(g) for g in l.link.gluings]})
        lines.append("vertex class %d: %d incidences, link %s with %d simplices" % (
            i, len(l.vertex_class), "closed" if rep.closed else "partial",
            l.link.simplex_count))
        lines += ["  " + str(g) for g in l.link.gluings]
    _emit({"links": out}, lines, args.json)
    return OK


def cmd_iso(args) -> int:
    iso = isomorphism(load(args.file1), load(args.file2))
    if iso is None:
        _emit({"isomorphic": False}, ["not isomorphic"], args.json)
        return FAIL
    lines = ["isomorphic"]
    for s, (t, rho) in enumerate(zip(iso.simplex_bijection, iso.vertex_relabelings)):
        lines.append("simplex %d -> %d, labels %s -> %s" % (
            s, t, _tuple(range(1, len(rho) + 1)), _tuple(rho)))
    _emit({"isomorphic": True, "witness": iso.to_dict()}, lines, args.json)
    return OK


def cmd_builtin(args) -> int:
    named = constructions.builtin(args.name)
    T = named.data
    if args.emit:
        dump(T, args.emit)
    lines = ["%s: dimension %d, %d simplices, %d gluings%s" % (
        named.name, T.dimension, T.simplex_count, len(T.gluings),
        ", partial" if T.partial else "")]
    lines += [str(g) for g in T.gluings]
    _emit({"name": named.name, "dimension": T.dimension, "simplices": T.simplex_count,
           "partial": T.partial, "gluings": [str(g) for g in T.gluings]}, lines, args.json)
    return OK


def cmd_verify_paper(args) -> int:
    rep = constructions.verify_paper_T()
    lines = ["[%s] %d. %s: %s" % ("PASS" if c.passed else "FAIL", c.number, c.name, c.detail)
             for c in rep.checks]
    lines.append("result: %s" % ("all checks passed" if rep.passed else "FAILED"))
    lines.append(rep.narrative)
    _emit(rep.to_dict(), lines, args.json)
    return OK if rep.passed else FAIL


def cmd_cusp(args) -> int:
    moduli = [cusps.parse_modulus(m, args.epsilon) for m in args.moduli]
    if args.action == "classify":
        rows, lines = [], []
        for text, z in zip(args.moduli, moduli):
            w, word = cusps.reduce_modulus(z)
            c = cusps.classify_shape(z)
            row = {"input": text, "reduced": str(w), "word": cusps.format_word(word),
                   "class": c.value}
            if c is not cusps.ShapeClass.AMBIGUOUS:
                row["involution"] = cusps.admits_involution(c)
            rows.append(row)
            lines.append("%s -> %s via %s: %s" % (text, w, row["word"], c.value))
        _emit({"cusps": rows}, lines, args.json)
        return OK
    return _verdict(cusps.pairing_obstruction_3d(moduli), args.json)


def cmd_obstruct_degree(args) -> int:
    if args.num_cusps < 1 or args.degree < 1:
        raise UsageError("cusp count and degree must be positive")
    return _verdict(cusps.trace_field_obstruction(args.num_cusps, args.degree), args.json)


def cmd_obstruct_twist(args) -> int:
    return _verdict(cusps.twist_knot_verdict(args.m), args.json)


def cmd_obstruct_euler(args) -> int:
    return _verdict(cusps.euler_parity_obstruction(args.n, args.chi), args.json)


COMMANDS = {
    "validate": cmd_validate, "analyze": cmd_analyze, "cycles": cmd_cycles,
    "links": cmd_links, "iso": cmd_iso, "builtin": cmd_builtin,
    "verify-paper": cmd_verify_paper, "cusp": cmd_cusp,
    "obstruct-degree": cmd_obstruct_degree, "obstruct-twist": cmd_obstruct_twist,
    "obstruct-euler": cmd_obstruct_euler,
}


def run(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = _parser().parse_args(_split_globals(argv))
    except SystemExit as exc:
        return USAGE if exc.code else OK
    try:
        return COMMANDS[args.command](args)
    except (UsageError, FormatError, InvalidTriangulation, ValueError, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return USAGE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
