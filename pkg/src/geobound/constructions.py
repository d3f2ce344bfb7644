"""
The two-tetrahedron census triangulations, their cones, and the closed
4-dimensional triangulation obtained by gluing three cones together, with
a self-contained verification of its combinatorial properties.

Simplex 0 is tetrahedron A (resp. 4-simplex A'), simplex 1 is B (resp. B').
In the assembled triangulation the blocks X, Y, Z occupy simplices
(0, 1), (2, 3), (4, 5).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .triangulation import (BlockGluing, CycleTrace, Triangulation, assemble,
                            check_valence, face_classes, isomorphism, orient,
                            OrientationAssignment, perm_sign, ridge_cycles,
                            validate, vertex_links)

FIG8_TABLE = (
    (0, (1, 2, 3), 1, (3, 2, 1)),
    (0, (1, 2, 4), 1, (1, 4, 2)),
    (0, (1, 3, 4), 1, (3, 4, 2)),
    (0, (2, 3, 4), 1, (4, 1, 3)),
)

SIBLING_TABLE = (
    (0, (1, 2, 3), 1, (4, 1, 2)),
    (0, (1, 2, 4), 1, (3, 4, 1)),
    (0, (1, 3, 4), 1, (1, 3, 2)),
    (0, (2, 3, 4), 1, (2, 4, 3)),
)

# Written out by hand, not generated by cone(); tests check the two agree.
CONE_FIG8_TABLE = (
    (0, (1, 2, 3, 5), 1, (3, 2, 1, 5)),
    (0, (1, 2, 4, 5), 1, (1, 4, 2, 5)),
    (0, (1, 3, 4, 5), 1, (3, 4, 2, 5)),
    (0, (2, 3, 4, 5), 1, (4, 1, 3, 5)),
)

CONE_SIBLING_TABLE = (
    (0, (1, 2, 3, 5), 1, (4, 1, 2, 5)),
    (0, (1, 2, 4, 5), 1, (3, 4, 1, 5)),
    (0, (1, 3, 4, 5), 1, (1, 3, 2, 5)),
    (0, (2, 3, 4, 5), 1, (2, 4, 3, 5)),
)

FREE_FACET = (1, 2, 3, 4)

# Images of (1,2,3,4) under the maps gluing facet A of one block to facet B
# of the next: X -> Y, Y -> Z, Z -> X.
SIGMA_XY = (3, 1, 4, 2)
SIGMA_YZ = (3, 4, 2, 1)
SIGMA_ZX = (2, 4, 1, 3)

# Ridge cycles avoiding the apex label, as (block, simplex, ordered ridge).
PAPER_CYCLES = (
    (("X", "A", (1, 2, 3)), ("Y", "B", (3, 1, 4)), ("Y", "A", (4, 3, 2)),
     ("Z", "B", (1, 2, 4)), ("Z", "A", (2, 3, 1)), ("X", "B", (4, 1, 2))),
    (("X", "A", (1, 2, 4)), ("Y", "B", (3, 1, 2)), ("Y", "A", (1, 3, 2)),
     ("Z", "B", (3, 2, 4)), ("Z", "A", (4, 2, 3)), ("X", "B", (3, 4, 1))),
    (("X", "A", (1, 3, 4)), ("Y", "B", (3, 4, 2)), ("Y", "A", (1, 3, 4)),
     ("Z", "B", (3, 2, 1)), ("Z", "A", (3, 4, 1)), ("X", "B", (1, 3, 2))),
    (("X", "A", (2, 3, 4)), ("Y", "B", (1, 4, 2)), ("Y", "A", (1, 2, 4)),
     ("Z", "B", (3, 4, 1)), ("Z", "A", (1, 2, 4)), ("X", "B", (2, 4, 3))),
)

RECTIFIED_CELL_VOLUME = Fraction(2, 9)  # ideal rectified 5-cell, in units of pi^2

NAMES = ("fig8", "sibling", "coneY", "coneXZ", "paperT")


@dataclass(frozen=True)
class NamedTriangulation:
    name: str
    data: Triangulation


def block_instructions(sigmas=(SIGMA_XY, SIGMA_YZ, SIGMA_ZX)) -> list[BlockGluing]:
    """Glue facet A of block i to facet B of block i+1 (cyclically) by sigmas[i]."""
    nblocks = len(sigmas)
    out = []
    for i, sigma in enumerate(sigmas):
        j = (i + 1) % nblocks if nblocks > 1 else i
        out.append(BlockGluing(i, 0, FREE_FACET, j, 1, tuple(sigma)))
    return out


def paper_blocks() -> list[Triangulation]:
    xz = builtin("coneXZ").data
    return [xz, builtin("coneY").data, xz]


def builtin(name: str) -> NamedTriangulation:
    if name == "fig8":
        data = Triangulation(3, 2, FIG8_TABLE)
    elif name == "sibling":
        data = Triangulation(3, 2, SIBLING_TABLE)
    elif name == "coneY":
        data = Triangulation(4, 2, CONE_FIG8_TABLE, partial=True)
    elif name == "coneXZ":
        data = Triangulation(4, 2, CONE_SIBLING_TABLE, partial=True)
    elif name == "paperT":
        data = assemble(paper_blocks(), block_instructions())
    else:
        raise ValueError("unknown triangulation %r; valid names: %s" % (name, ", ".join(NAMES)))
    return NamedTriangulation(name, data)


def _pi2(c: Fraction) -> str:
    return "%s*pi^2" % c


@dataclass(frozen=True)
class VolumeBound:
    simplex_count_2k: int
    rectified_cell_volume: Fraction
    bound: Fraction
    witness_volume: Fraction

    def to_dict(self) -> dict:
        return {"simplex_count_2k": self.simplex_count_2k,
                "rectified_cell_volume": _pi2(self.rectified_cell_volume),
                "bound": _pi2(self.bound),
                "witness_volume": _pi2(self.witness_volume)}


def volume_bound(two_k: int) -> VolumeBound:
    """Volume data for a 6-valent orientable triangulation with 2k top simplices.

    All volumes are rational multiples of pi^2.
    """
    if two_k < 1:
        raise ValueError("simplex count must be positive")
    return VolumeBound(two_k, RECTIFIED_CELL_VOLUME,
                       Fraction(4, 3) * Fraction(two_k, 3),
                       two_k * RECTIFIED_CELL_VOLUME)


def embedding_volume_bound(T: Triangulation) -> VolumeBound:
    if T.dimension != 4:
        raise ValueError("volume bound needs a 4-dimensional triangulation, got %d" % T.dimension)
    report = validate(T)
    if not report.valid:
        raise ValueError("volume bound needs a valid triangulation: " + "; ".join(report.errors))
    if report.free_facets:
        raise ValueError("volume bound needs a closed triangulation")
    if not isinstance(orient(T), OrientationAssignment):
        raise ValueError("volume bound needs an orientable triangulation")
    if not check_valence(T, 6).passed:
        raise ValueError("volume bound needs 6-valence with trivial return maps")
    return volume_bound(T.simplex_count)


# ---------------------------------------------------------------------------
# verification

@dataclass
class Check:
    number: int
    name: str
    passed: bool
    detail: str

    def to_dict(self) -> dict:
        return {"check": self.number, "name": self.name,
                "passed": self.passed, "detail": self.detail}


NARRATIVE = (
    "Not computed here: the boundary of the 4-manifold W built from this "
    "triangulation is K + L + L + O (figure-eight complement, two sibling "
    "copies, a 24-tetrahedron census manifold).  K and O double-cover "
    "non-orientable manifolds, so quotienting those two boundary components "
    "and gluing the two L components gives a 4-manifold of volume "
    "4/3*pi^2 containing the sibling as a totally geodesic hypersurface."
)


@dataclass
class PaperReport:
    checks: list[Check]
    narrative: str = NARRATIVE
    links: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {"passed": self.passed,
                "checks": [c.to_dict() for c in self.checks],
                "links": self.links,
                "narrative": self.narrative}


def _incidence(name: tuple[str, str], block_names: str) -> int:
    block, side = name
    return 2 * block_names.index(block) + "AB".index(side)


def _matches_listed(trace: CycleTrace, listed, block_names: str) -> bool:
    """Compare a computed trace to a listed cycle, up to rotation of the start."""
    want = [(_incidence((b, s), block_names), tuple(r)) for b, s, r in listed]
    steps = list(trace.steps)
    starts = [i for i, (s, r) in enumerate(steps)
              if s == want[0][0] and set(r) == set(want[0][1])]
    if not starts or len(steps) != len(want):
        return False
    i = starts[0]
    steps = steps[i:] + steps[:i]
    # re-express positions so the rotated start reads like the listed one
    pos = [steps[0][1].index(x) for x in want[0][1]]
    steps = [(s, tuple(r[p] for p in pos)) for s, r in steps]
    return steps == want


def _run(checks: list[Check], number: int, name: str, fn) -> None:
    try:
        passed, detail = fn()
    except Exception as exc:  # every check must report, never abort the run
        passed, detail = False, "%s: %s" % (type(exc).__name__, exc)
    checks.append(Check(number, name, bool(passed), detail))


def verify_paper_T(blocks=None, sigmas=(SIGMA_XY, SIGMA_YZ, SIGMA_ZX),
                   block_names: str = "XYZ") -> PaperReport:
    """Rebuild the assembled triangulation and check each claimed property."""
    if blocks is None:
        blocks = paper_blocks()
    checks: list[Check] = []
    state: dict = {}

    def build():
        T = assemble(blocks, block_instructions(sigmas))
        state["T"] = T
        rep = validate(T)
        ok = (rep.valid and not rep.free_facets and T.dimension == 4
              and T.simplex_count == 6 and len(T.gluings) == 15)
        return ok, ("dimension %d, %d simplices, %d gluings, %d free facets, valid=%s"
                    % (T.dimension, T.simplex_count, len(T.gluings),
                       len(rep.free_facets), rep.valid))

    def orientable():
        T = state["T"]
        o = orient(T)
        parities = [perm_sign(s) for s in sigmas]
        ok = isinstance(o, OrientationAssignment) and all(p == -1 for p in parities)
        desc = ("signs %s" % list(o.signs)) if isinstance(o, OrientationAssignment) \
            else "not orientable, witness gluings %s" % list(o.witness)
        return ok, "%s; sigma parities %s" % (desc, parities)

    def valence():
        rep = check_valence(state["T"], 6)
        return rep.passed, "%d ridge cycles, lengths %s, %d offending" % (
            len(rep.lengths), sorted(rep.lengths), len(rep.offending))

    def listed_cycles():
        traces = ridge_cycles(state["T"])
        found = [any(_matches_listed(t, cyc, block_names) for t in traces)
                 for cyc in PAPER_CYCLES]
        return all(found), "listed cycles matched: %s" % found

    def links():
        T = state["T"]
        ls = vertex_links(T)
        state["links"] = ls
        sizes = sorted(l.link.simplex_count for l in ls)
        return len(ls) == 4 and sizes == [2, 2, 2, 24], \
            "%d vertex classes, link sizes %s" % (len(ls), sizes)

    def link_isos():
        ls = state["links"]
        fig8, sib = builtin("fig8").data, builtin("sibling").data
        n_sib = n_fig = 0
        for l in ls:
            is_sib = isomorphism(l.link, sib) is not None
            is_fig = isomorphism(l.link, fig8) is not None
            n_sib += is_sib
            n_fig += is_fig
            info = {"vertex_class": [list(m) for m in l.vertex_class],
                    "simplices": l.link.simplex_count,
                    "closed": validate(l.link).closed,
                    "orientable": isinstance(orient(l.link), OrientationAssignment),
                    "vertex_classes": len(face_classes(l.link, 0)),
                    "isomorphic_to": "sibling" if is_sib else "fig8" if is_fig else None}
            report.links.append(info)
        return n_sib == 2 and n_fig == 1, \
            "%d links isomorphic to sibling, %d to fig8" % (n_sib, n_fig)

    def volume():
        vb = embedding_volume_bound(state["T"])
        return vb.witness_volume == Fraction(4, 3), \
            "volume of W = %s, bound %s" % (_pi2(vb.witness_volume), _pi2(vb.bound))

    report = PaperReport(checks)
    _run(checks, 1, "valid closed 4-triangulation, 6 simplices, 15 gluings", build)
    _run(checks, 2, "orientable; gluing maps between blocks are odd", orientable)
    _run(checks, 3, "all 2-face cycles have length 6 and trivial return map", valence)
    _run(checks, 4, "apex-free cycles match the listed sequences", listed_cycles)
    _run(checks, 5, "4 vertex classes with links of sizes 2, 2, 2, 24", links)
    _run(checks, 6, "two links are sibling triangulations, one is figure-eight", link_isos)
    _run(checks, 7, "volume of W is 4/3*pi^2", volume)
    return report
