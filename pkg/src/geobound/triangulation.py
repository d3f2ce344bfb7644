"""
Facet-pairing triangulations of arbitrary dimension.

A triangulation is a finite set of n-simplices, each carrying the vertex
labels 1..n+1, together with simplicial pairings between facets.  A facet
is named by the label it omits.  A gluing records an ordered vertex
correspondence ``from_vertices[k] -> to_vertices[k]`` between two facets;
its unique extension to the whole simplex sends the omitted label of the
source facet to the omitted label of the target facet.

Internally a full vertex bijection is a tuple ``perm`` of length n+1 with
``perm[l - 1]`` the image of label ``l``.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from scipy.cluster.hierarchy import DisjointSet

Perm = tuple[int, ...]


class InvalidTriangulation(ValueError):
    """Raised when an operation receives data that fails validation."""

    def __init__(self, message: str, report: "ValidationReport | None" = None):
        super().__init__(message)
        self.report = report


class NotClosed(ValueError):
    pass


@dataclass(frozen=True)
class FacetGluing:
    from_simplex: int
    from_vertices: tuple[int, ...]
    to_simplex: int
    to_vertices: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "from_vertices", tuple(self.from_vertices))
        object.__setattr__(self, "to_vertices", tuple(self.to_vertices))

    def inverse(self) -> "FacetGluing":
        return FacetGluing(self.to_simplex, self.to_vertices,
                           self.from_simplex, self.from_vertices)

    def __str__(self):
        return "%d %s %d %s" % (self.from_simplex, _fmt_tuple(self.from_vertices),
                                self.to_simplex, _fmt_tuple(self.to_vertices))


@dataclass(frozen=True)
class Triangulation:
    dimension: int
    simplex_count: int
    gluings: tuple[FacetGluing, ...] = ()
    partial: bool = False

    def __post_init__(self):
        gl = tuple(g if isinstance(g, FacetGluing) else FacetGluing(*g)
                   for g in self.gluings)
        object.__setattr__(self, "gluings", gl)

    @property
    def labels(self) -> tuple[int, ...]:
        return tuple(range(1, self.dimension + 2))

    def __len__(self):
        return self.simplex_count


def _fmt_tuple(t: Iterable[int]) -> str:
    return "(" + ",".join(str(x) for x in t) + ")"


# ---------------------------------------------------------------------------
# permutations

def perm_sign(perm: Sequence[int]) -> int:
    """Sign of a permutation of 1..m given as its image tuple."""
    seen = [False] * len(perm)
    sign = 1
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j] - 1
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def perm_inverse(perm: Perm) -> Perm:
    inv = [0] * len(perm)
    for i, img in enumerate(perm):
        inv[img - 1] = i + 1
    return tuple(inv)


def perm_compose(outer: Perm, inner: Perm) -> Perm:
    """outer after inner."""
    return tuple(outer[x - 1] for x in inner)


def _tuple_error(vertices, n: int, field_name: str) -> str | None:
    try:
        vs = tuple(vertices)
    except TypeError:
        return "%s is not a sequence" % field_name
    if len(vs) != n:
        return "%s=%s has length %d, expected %d" % (field_name, _fmt_tuple(vs), len(vs), n)
    if not all(isinstance(v, int) and 1 <= v <= n + 1 for v in vs):
        return "%s=%s has labels outside 1..%d" % (field_name, _fmt_tuple(vs), n + 1)
    if len(set(vs)) != n:
        return "%s=%s has repeated labels" % (field_name, _fmt_tuple(vs))
    return None


def _omitted(vertices: Sequence[int], n: int) -> int:
    return (set(range(1, n + 2)) - set(vertices)).pop()


def extend_gluing(g: FacetGluing, n: int) -> Perm:
    """Extend a facet correspondence to the full vertex bijection.

    The omitted label of the source facet is sent to the omitted label of
    the target facet.  Returns ``perm`` with ``perm[l - 1]`` the image of l.
    """
    for name in ("from_vertices", "to_vertices"):
        err = _tuple_error(getattr(g, name), n, name)
        if err:
            raise ValueError(err)
    perm = [0] * (n + 1)
    for a, b in zip(g.from_vertices, g.to_vertices):
        perm[a - 1] = b
    perm[_omitted(g.from_vertices, n) - 1] = _omitted(g.to_vertices, n)
    return tuple(perm)


# ---------------------------------------------------------------------------
# validation

@dataclass
class ValidationReport:
    valid: bool
    dimension: int
    simplex_count: int
    gluing_count: int
    errors: list[str] = field(default_factory=list)
    free_facets: list[tuple[int, tuple[int, ...]]] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def closed(self) -> bool:
        return self.valid and not self.free_facets

    def to_dict(self) -> dict:
        return {
            "valid": self.valid,
            "closed": self.closed,
            "dimension": self.dimension,
            "simplex_count": self.simplex_count,
            "gluing_count": self.gluing_count,
            "errors": list(self.errors),
            "free_facets": [[s, list(f)] for s, f in self.free_facets],
            "notes": list(self.notes),
        }


def validate(T: Triangulation) -> ValidationReport:
    """Check every structural invariant of T and report all defects."""
    n, count = T.dimension, T.simplex_count
    report = ValidationReport(False, n, count, len(T.gluings))
    errors = report.errors
    if not isinstance(n, int) or n < 1:
        errors.append("dimension must be an integer >= 1, got %r" % (n,))
        return report
    if not isinstance(count, int) or count < 1:
        errors.append("simplex_count must be a positive integer, got %r" % (count,))
        return report

    uses: dict[tuple[int, int], int] = {}
    for idx, g in enumerate(T.gluings):
        bad = False
        for name in ("from_simplex", "to_simplex"):
            s = getattr(g, name)
            if not isinstance(s, int) or not 0 <= s < count:
                errors.append("gluing %d: %s=%r out of range 0..%d" % (idx, name, s, count - 1))
                bad = True
        for name in ("from_vertices", "to_vertices"):
            err = _tuple_error(getattr(g, name), n, name)
            if err:
                errors.append("malformed vertex tuple in gluing %d: %s" % (idx, err))
                bad = True
        if bad:
            continue
        u = _omitted(g.from_vertices, n)
        w = _omitted(g.to_vertices, n)
        if (g.from_simplex, u) == (g.to_simplex, w):
            if g.from_vertices == g.to_vertices:
                errors.append("gluing %d: identity self-gluing of facet %s of simplex %d"
                              % (idx, _fmt_tuple(sorted(g.from_vertices)), g.from_simplex))
            else:
                errors.append("gluing %d: facet %s of simplex %d is glued to itself"
                              % (idx, _fmt_tuple(sorted(g.from_vertices)), g.from_simplex))
            continue
        for key in ((g.from_simplex, u), (g.to_simplex, w)):
            uses[key] = uses.get(key, 0) + 1

    labels = range(1, n + 2)
    for s in range(count):
        for u in reversed(labels):
            facet = tuple(l for l in labels if l != u)
            c = uses.get((s, u), 0)
            if c == 0:
                report.free_facets.append((s, facet))
            elif c > 1:
                errors.append("facet %s of simplex %d is double-glued (%d times)"
                              % (_fmt_tuple(facet), s, c))
    if not T.partial:
        for s, facet in report.free_facets:
            errors.append("facet %s of simplex %d is unglued" % (_fmt_tuple(facet), s))
    if count % 2:
        report.notes.append("odd simplex count %d" % count)
    report.valid = not errors
    return report


def _require(T: Triangulation, closed: bool = False) -> ValidationReport:
    report = validate(T)
    if not report.valid:
        raise InvalidTriangulation("invalid triangulation: " + "; ".join(report.errors), report)
    if closed and report.free_facets:
        raise NotClosed("operation requires a closed triangulation; %d free facets"
                        % len(report.free_facets))
    return report


@lru_cache(maxsize=256)
def _facet_table(T: Triangulation):
    """table[s][u-1] = (target simplex, perm, gluing index) or None."""
    _require(T)
    n = T.dimension
    table = [[None] * (n + 1) for _ in range(T.simplex_count)]
    for idx, g in enumerate(T.gluings):
        perm = extend_gluing(g, n)
        inv = perm_inverse(perm)
        u = _omitted(g.from_vertices, n)
        w = perm[u - 1]
        table[g.from_simplex][u - 1] = (g.to_simplex, perm, idx)
        table[g.to_simplex][w - 1] = (g.from_simplex, inv, idx)
    return table


def gluing_key(T: Triangulation, g: FacetGluing):
    """Orientation-free identity of a gluing: equal for g and g.inverse()."""
    n = T.dimension
    fwd = (g.from_simplex, _omitted(g.from_vertices, n), extend_gluing(g, n))
    ginv = g.inverse()
    bwd = (ginv.from_simplex, _omitted(ginv.from_vertices, n), extend_gluing(ginv, n))
    return min(fwd, bwd)


def gluing_set(T: Triangulation) -> frozenset:
    return frozenset(gluing_key(T, g) for g in T.gluings)


# ---------------------------------------------------------------------------
# orientation

@dataclass(frozen=True)
class OrientationAssignment:
    signs: tuple[int, ...]


@dataclass(frozen=True)
class NotOrientable:
    """Witness: indices of gluings forming a closed walk with inconsistent parity."""
    witness: tuple[int, ...]


def gluing_parity(T: Triangulation, g: FacetGluing) -> int:
    return perm_sign(extend_gluing(g, T.dimension))


def orient(T: Triangulation) -> OrientationAssignment | NotOrientable:
    """Choose signs so that every gluing reverses orientation.

    Gluing g between simplices i, j is orientation-reversing when
    ``sign[i] * sign[j] * parity(g) == -1``.  The least simplex of each
    connected component receives +1.
    """
    _require(T)
    table = _facet_table(T)
    count = T.simplex_count
    signs = [0] * count
    parent: list[tuple[int, int] | None] = [None] * count  # (prev simplex, gluing idx)
    depth = [0] * count
    for root in range(count):
        if signs[root]:
            continue
        signs[root] = 1
        queue = deque([root])
        while queue:
            s = queue.popleft()
            for entry in table[s]:
                if entry is None:
                    continue
                t, perm, idx = entry
                want = -signs[s] * perm_sign(perm)
                if not signs[t]:
                    signs[t] = want
                    parent[t] = (s, idx)
                    depth[t] = depth[s] + 1
                    queue.append(t)
                elif signs[t] != want:
                    return NotOrientable(_witness(parent, depth, s, t, idx))
    return OrientationAssignment(tuple(signs))


def _witness(parent, depth, a, b, idx):
    left, right = [], []
    while depth[a] > depth[b]:
        left.append(parent[a][1]); a = parent[a][0]
    while depth[b] > depth[a]:
        right.append(parent[b][1]); b = parent[b][0]
    while a != b:
        left.append(parent[a][1]); a = parent[a][0]
        right.append(parent[b][1]); b = parent[b][0]
    return tuple(left + [idx] + right[::-1])


def is_orientable(T: Triangulation) -> bool:
    return isinstance(orient(T), OrientationAssignment)


# ---------------------------------------------------------------------------
# face classes

@dataclass(frozen=True)
class FaceClassPartition:
    k: int
    classes: tuple[tuple[tuple[int, tuple[int, ...]], ...], ...]

    def __len__(self):
        return len(self.classes)

    def sizes(self) -> list[int]:
        return [len(c) for c in self.classes]


def face_incidences(T: Triangulation, k: int) -> list[tuple[int, tuple[int, ...]]]:
    return [(s, f) for s in range(T.simplex_count)
            for f in itertools.combinations(T.labels, k + 1)]


def face_classes(T: Triangulation, k: int) -> FaceClassPartition:
    """Partition the (simplex, k-face) incidences into classes under gluings."""
    if not isinstance(k, int) or not 0 <= k <= T.dimension:
        raise ValueError("face dimension k=%r out of range 0..%d" % (k, T.dimension))
    _require(T)
    table = _facet_table(T)
    incidences = face_incidences(T, k)
    dsu = DisjointSet(incidences)
    for s in range(T.simplex_count):
        for u, entry in enumerate(table[s], start=1):
            if entry is None:
                continue
            t, perm, _ = entry
            facet = [l for l in T.labels if l != u]
            for f in itertools.combinations(facet, k + 1):
                dsu.merge((s, f), (t, tuple(sorted(perm[l - 1] for l in f))))
    classes = sorted(tuple(sorted(c)) for c in dsu.subsets())
    return FaceClassPartition(k, tuple(classes))


def face_vector(T: Triangulation) -> list[int]:
    return [len(face_classes(T, k)) for k in range(T.dimension + 1)]


def euler_characteristic(T: Triangulation) -> int:
    _require(T, closed=True)
    return sum((-1) ** k * c for k, c in enumerate(face_vector(T)))


# ---------------------------------------------------------------------------
# ridge cycles

@dataclass(frozen=True)
class CycleTrace:
    ridge: tuple[int, tuple[int, ...]]
    steps: tuple[tuple[int, tuple[int, ...]], ...]
    return_map: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.steps)

    @property
    def trivial(self) -> bool:
        return self.return_map == self.ridge[1]

    def to_dict(self) -> dict:
        return {"ridge": [self.ridge[0], list(self.ridge[1])],
                "steps": [[s, list(r)] for s, r in self.steps],
                "length": self.length,
                "return_map": list(self.return_map),
                "trivial": self.trivial}


def trace_ridge(T: Triangulation, simplex: int, ridge: Sequence[int],
                exit_label: int | None = None) -> CycleTrace:
    """Walk around the ridge ``ridge`` of ``simplex`` until the cycle closes.

    ``exit_label`` names the first facet crossed by the label it omits; by
    default the lexicographically smaller of the two facets, i.e. the one
    omitting the larger missing label.
    """
    _require(T, closed=True)
    table = _facet_table(T)
    ridge = tuple(ridge)
    missing = [l for l in T.labels if l not in ridge]
    if len(missing) != 2 or len(set(ridge)) != len(ridge):
        raise ValueError("%s is not a ridge of a %d-simplex" % (_fmt_tuple(ridge), T.dimension))
    if exit_label is None:
        exit_label = max(missing)
    elif exit_label not in missing:
        raise ValueError("label %d does not name a facet containing the ridge" % exit_label)
    start = (simplex, frozenset(ridge))
    s, r, u = simplex, ridge, exit_label
    steps = []
    while True:
        steps.append((s, r))
        other = next(l for l in T.labels if l not in r and l != u)
        t, perm, _ = table[s][u - 1]
        s, r, u = t, tuple(perm[l - 1] for l in r), perm[other - 1]
        if (s, frozenset(r)) == start:
            return CycleTrace((simplex, ridge), tuple(steps), r)


def ridge_cycles(T: Triangulation) -> list[CycleTrace]:
    """One trace per class of codimension-2 faces, in canonical form.

    Each trace starts at the least (simplex, sorted ridge) incidence of its
    class and leaves through the lexicographically smaller facet.
    """
    _require(T, closed=True)
    if T.dimension < 2:
        return []
    seen = set()
    traces = []
    for s, ridge in face_incidences(T, T.dimension - 2):
        if (s, ridge) in seen:
            continue
        trace = trace_ridge(T, s, ridge)
        seen.update((t, tuple(sorted(r))) for t, r in trace.steps)
        traces.append(trace)
    return traces


@dataclass
class ValenceReport:
    passed: bool
    required: int
    offending: list[CycleTrace]
    lengths: list[int]

    def to_dict(self) -> dict:
        return {"passed": self.passed, "required": self.required,
                "lengths": self.lengths,
                "offending": [t.to_dict() for t in self.offending]}


def check_valence(T: Triangulation, required: int) -> ValenceReport:
    """Every ridge cycle must have the required length and trivial return map."""
    traces = ridge_cycles(T)
    bad = [t for t in traces if t.length != required or not t.trivial]
    return ValenceReport(not bad, required, bad, [t.length for t in traces])


# ---------------------------------------------------------------------------
# vertex links

@dataclass(frozen=True)
class VertexLink:
    vertex_class: tuple[tuple[int, int], ...]
    link: Triangulation


def vertex_links(T: Triangulation) -> list[VertexLink]:
    """Link of every vertex class as an (n-1)-dimensional triangulation.

    Link simplex i corresponds to the i-th (simplex, label) incidence of the
    class; its labels are the surrounding simplex's other labels renumbered
    in increasing order to 1..n.
    """
    _require(T)
    n = T.dimension
    if n < 2:
        raise ValueError("vertex links need dimension >= 2")
    table = _facet_table(T)
    out = []
    for cls in face_classes(T, 0).classes:
        members = [(s, f[0]) for s, f in cls]
        index = {m: i for i, m in enumerate(members)}
        gluings = []
        partial = False
        for (s, v), i in index.items():
            rest = [l for l in T.labels if l != v]
            local = {l: j + 1 for j, l in enumerate(rest)}
            for u in reversed(rest):
                entry = table[s][u - 1]
                if entry is None:
                    partial = True
                    continue
                t, perm, _ = entry
                v2, u2 = perm[v - 1], perm[u - 1]
                j = index[(t, v2)]
                if (j, u2) < (i, u) or (j == i and u2 == u):
                    continue
                rest2 = [l for l in T.labels if l != v2]
                local2 = {l: k + 1 for k, l in enumerate(rest2)}
                face = [l for l in rest if l != u]
                gluings.append(FacetGluing(i, tuple(local[l] for l in face),
                                           j, tuple(local2[perm[l - 1]] for l in face)))
        link = Triangulation(n - 1, len(members), tuple(gluings), partial)
        out.append(VertexLink(tuple(members), link))
    return out


# ---------------------------------------------------------------------------
# relabelling and isomorphism

@dataclass(frozen=True)
class Isomorphism:
    simplex_bijection: tuple[int, ...]
    vertex_relabelings: tuple[Perm, ...]

    def to_dict(self) -> dict:
        return {"simplex_bijection": list(self.simplex_bijection),
                "vertex_relabelings": [list(p) for p in self.vertex_relabelings]}


def relabel(T: Triangulation, simplex_map: Sequence[int],
            vertex_maps: Sequence[Sequence[int]]) -> Triangulation:
    """Push T through a simplex bijection and per-simplex label bijections."""
    gluings = []
    for g in T.gluings:
        a, b = g.from_simplex, g.to_simplex
        ra, rb = vertex_maps[a], vertex_maps[b]
        gluings.append(FacetGluing(simplex_map[a], tuple(ra[v - 1] for v in g.from_vertices),
                                   simplex_map[b], tuple(rb[v - 1] for v in g.to_vertices)))
    return Triangulation(T.dimension, T.simplex_count, tuple(gluings), T.partial)


def apply_isomorphism(T: Triangulation, iso: Isomorphism) -> Triangulation:
    return relabel(T, iso.simplex_bijection, iso.vertex_relabelings)


def isomorphism(T1: Triangulation, T2: Triangulation) -> Isomorphism | None:
    """Search for a combinatorial isomorphism T1 -> T2.

    Each component of T1 is anchored at its least unmapped simplex and tried
    against every free target simplex (in index order) with every vertex
    relabelling (in lexicographic order); the rest of the component is then
    forced by the gluings.  Returns the first witness found.
    """
    if T1.dimension != T2.dimension:
        raise ValueError("dimension mismatch: %d vs %d" % (T1.dimension, T2.dimension))
    _require(T1)
    _require(T2)
    if T1.simplex_count != T2.simplex_count or len(T1.gluings) != len(T2.gluings):
        return None
    t1, t2 = _facet_table(T1), _facet_table(T2)
    count = T1.simplex_count
    relabelings = list(itertools.permutations(T1.labels))

    def propagate(smap, vmap, used, anchor):
        queue = deque([anchor])
        while queue:
            s = queue.popleft()
            t, rho = smap[s], vmap[s]
            for u, entry in enumerate(t1[s], start=1):
                target = t2[t][rho[u - 1] - 1]
                if entry is None or target is None:
                    if entry is not target:
                        return False
                    continue
                s2, phi, _ = entry
                t_next, psi, _ = target
                rho2 = perm_compose(psi, perm_compose(rho, perm_inverse(phi)))
                if smap[s2] is not None:
                    if smap[s2] != t_next or vmap[s2] != rho2:
                        return False
                elif t_next in used:
                    return False
                else:
                    smap[s2], vmap[s2] = t_next, rho2
                    used.add(t_next)
                    queue.append(s2)
        return True

    def search(smap, vmap, used):
        try:
            anchor = smap.index(None)
        except ValueError:
            return Isomorphism(tuple(smap), tuple(vmap))
        for t in range(count):
            if t in used:
                continue
            for rho in relabelings:
                sm, vm, us = list(smap), list(vmap), set(used)
                sm[anchor], vm[anchor] = t, rho
                us.add(t)
                if propagate(sm, vm, us, anchor):
                    found = search(sm, vm, us)
                    if found is not None:
                        return found
        return None

    return search([None] * count, [None] * count, set())


# ---------------------------------------------------------------------------
# constructions

def cone(T: Triangulation) -> Triangulation:
    """Cone over T; the apex gets label n+2 and the base facets become free."""
    _require(T)
    apex = T.dimension + 2
    gluings = tuple(FacetGluing(g.from_simplex, g.from_vertices + (apex,),
                                g.to_simplex, g.to_vertices + (apex,))
                    for g in T.gluings)
    return Triangulation(T.dimension + 1, T.simplex_count, gluings, partial=True)


@dataclass(frozen=True)
class BlockGluing:
    """Glue facet ``vertices_a`` of simplex ``simplex_a`` in block ``block_a``
    to facet ``vertices_b`` of ``simplex_b`` in ``block_b``, position by position."""
    block_a: int
    simplex_a: int
    vertices_a: tuple[int, ...]
    block_b: int
    simplex_b: int
    vertices_b: tuple[int, ...]


def assemble(blocks: Sequence[Triangulation],
             instructions: Sequence[BlockGluing]) -> Triangulation:
    """Disjoint union of blocks, re-indexed block by block, plus new gluings."""
    if not blocks:
        raise ValueError("assemble needs at least one block")
    n = blocks[0].dimension
    if any(b.dimension != n for b in blocks):
        raise ValueError("blocks have differing dimensions")
    offsets, free, gluings, total = [], set(), [], 0
    for b in blocks:
        report = _require(b)
        offsets.append(total)
        free.update((total + s, frozenset(f)) for s, f in report.free_facets)
        gluings.extend(FacetGluing(g.from_simplex + total, g.from_vertices,
                                   g.to_simplex + total, g.to_vertices) for g in b.gluings)
        total += b.simplex_count
    for ins in instructions:
        sides = []
        for blk, simp, verts in ((ins.block_a, ins.simplex_a, ins.vertices_a),
                                 (ins.block_b, ins.simplex_b, ins.vertices_b)):
            if not 0 <= blk < len(blocks) or not 0 <= simp < blocks[blk].simplex_count:
                raise ValueError("instruction references missing simplex %d of block %d"
                                 % (simp, blk))
            err = _tuple_error(verts, n, "vertices")
            if err:
                raise ValueError("correspondence is not a bijection of facet labels: " + err)
            key = (offsets[blk] + simp, frozenset(verts))
            if key not in free:
                raise ValueError("facet %s of simplex %d in block %d is not free"
                                 % (_fmt_tuple(sorted(verts)), simp, blk))
            sides.append(key)
        if sides[0] == sides[1]:
            raise ValueError("instruction glues facet %s of simplex %d to itself"
                             % (_fmt_tuple(sorted(ins.vertices_a)), ins.simplex_a))
        free.difference_update(sides)
        gluings.append(FacetGluing(sides[0][0], tuple(ins.vertices_a),
                                   sides[1][0], tuple(ins.vertices_b)))
    return Triangulation(n, total, tuple(gluings), partial=bool(free))


def double_simplex(n: int) -> Triangulation:
    """Two n-simplices glued along every facet by the identity correspondence."""
    labels = range(1, n + 2)
    gluings = []
    for u in reversed(labels):
        facet = tuple(l for l in labels if l != u)
        gluings.append(FacetGluing(0, facet, 1, facet))
    return Triangulation(n, 2, tuple(gluings))


def single_simplex(n: int) -> Triangulation:
    return Triangulation(n, 1, (), partial=True)
