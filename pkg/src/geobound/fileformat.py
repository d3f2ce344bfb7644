"""
Plain-text interchange format for triangulations.

Canonical form::

    dimension 3
    simplices 2
    partial false
    0 (1,2,3) 1 (3,2,1)
    0 (1,2,4) 1 (1,4,2)
    ...

Header lines may come in any order but must precede the gluing records.
Blank lines and ``#`` comments are ignored on input.  Simplex indices are
0-based, vertex labels 1-based.
"""
from __future__ import annotations

import re

from .triangulation import FacetGluing, Triangulation

_GLUING = re.compile(r"^(\d+)\s*\(([^)]*)\)\s+(\d+)\s*\(([^)]*)\)$")
_HEADER_KEYS = ("dimension", "simplices", "partial")


class FormatError(ValueError):
    pass


def serialize(T: Triangulation) -> str:
    lines = ["dimension %d" % T.dimension,
             "simplices %d" % T.simplex_count,
             "partial %s" % ("true" if T.partial else "false")]
    lines.extend(str(g) for g in T.gluings)
    return "\n".join(lines) + "\n"


def _labels(text: str, lineno: int) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",")) if text.strip() else ()
    except ValueError:
        raise FormatError("line %d: bad vertex tuple (%s)" % (lineno, text)) from None


def parse(text: str) -> Triangulation:
    header: dict[str, str] = {}
    gluings = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        word = line.split()[0]
        if word in _HEADER_KEYS:
            if gluings:
                raise FormatError("line %d: header after gluing records" % lineno)
            parts = line.split()
            if len(parts) != 2:
                raise FormatError("line %d: expected '%s VALUE'" % (lineno, word))
            if word in header:
                raise FormatError("line %d: duplicate header '%s'" % (lineno, word))
            header[word] = parts[1]
            continue
        m = _GLUING.match(line)
        if not m:
            raise FormatError("line %d: cannot parse %r" % (lineno, raw))
        gluings.append(FacetGluing(int(m.group(1)), _labels(m.group(2), lineno),
                                   int(m.group(3)), _labels(m.group(4), lineno)))
    for key in ("dimension", "simplices"):
        if key not in header:
            raise FormatError("missing header '%s'" % key)
    try:
        dimension = int(header["dimension"])
        simplices = int(header["simplices"])
    except ValueError:
        raise FormatError("dimension and simplices must be integers") from None
    flag = header.get("partial", "false").lower()
    if flag not in ("true", "false"):
        raise FormatError("partial must be 'true' or 'false', got %r" % flag)
    return Triangulation(dimension, simplices, tuple(gluings), flag == "true")


def load(path) -> Triangulation:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def dump(T: Triangulation, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(serialize(T))
