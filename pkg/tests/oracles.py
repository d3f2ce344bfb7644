"""
Brute-force reference implementations used only by the tests.

Nothing here calls into the package's algorithms beyond reading the raw
gluing records, so agreement with the package is meaningful.
"""
import itertools
import random
from fractions import Fraction

from geobound.triangulation import FacetGluing, Triangulation


def full_map(g, n):
    """Facet correspondence extended by matching the two missing labels."""
    labels = set(range(1, n + 2))
    m = dict(zip(g.from_vertices, g.to_vertices))
    (a,) = labels - set(g.from_vertices)
    (b,) = labels - set(g.to_vertices)
    m[a] = b
    return m


def inversions_sign(m):
    keys = sorted(m)
    vals = [m[k] for k in keys]
    inv = sum(1 for i in range(len(vals)) for j in range(i + 1, len(vals)) if vals[i] > vals[j])
    return -1 if inv % 2 else 1


def closure_classes(T, k):
    """Face classes via Warshall transitive closure of the gluing adjacency."""
    n = T.dimension
    nodes = [(s, frozenset(f)) for s in range(T.simplex_count)
             for f in itertools.combinations(range(1, n + 2), k + 1)]
    index = {v: i for i, v in enumerate(nodes)}
    size = len(nodes)
    reach = [[i == j for j in range(size)] for i in range(size)]
    for g in T.gluings:
        m = full_map(g, n)
        for f in itertools.combinations(g.from_vertices, k + 1):
            a = index[(g.from_simplex, frozenset(f))]
            b = index[(g.to_simplex, frozenset(m[x] for x in f))]
            reach[a][b] = reach[b][a] = True
    for mid in range(size):
        row_mid = reach[mid]
        for i in range(size):
            if reach[i][mid]:
                ri = reach[i]
                for j in range(size):
                    if row_mid[j]:
                        ri[j] = True
    classes = {frozenset(nodes[j] for j in range(size) if reach[i][j]) for i in range(size)}
    return sorted(sorted((s, tuple(sorted(f))) for s, f in c) for c in classes)


def brute_orientable(T):
    """Any sign vector making every gluing orientation-reversing?"""
    parities = [(g.from_simplex, g.to_simplex, inversions_sign(full_map(g, T.dimension)))
                for g in T.gluings]
    for signs in itertools.product((1, -1), repeat=T.simplex_count):
        if all(signs[a] * signs[b] * p == -1 for a, b, p in parities):
            return True
    return False


def constraints_satisfiable(T, gluing_indices):
    gl = [T.gluings[i] for i in gluing_indices]
    simplices = sorted({g.from_simplex for g in gl} | {g.to_simplex for g in gl})
    for signs in itertools.product((1, -1), repeat=len(simplices)):
        s = dict(zip(simplices, signs))
        if all(s[g.from_simplex] * s[g.to_simplex] * inversions_sign(full_map(g, T.dimension)) == -1
               for g in gl):
            return True
    return False


def gluing_identities(T):
    """Set of unordered facet identifications; each keyed by the smaller of
    its two directed views (simplex, missing label, partner, full map)."""
    out = set()
    n = T.dimension
    labels = set(range(1, n + 2))
    for g in T.gluings:
        m = full_map(g, n)
        (a,) = labels - set(g.from_vertices)
        (b,) = labels - set(g.to_vertices)
        fwd = (g.from_simplex, a, g.to_simplex, tuple(sorted(m.items())))
        inv = {v: k for k, v in m.items()}
        bwd = (g.to_simplex, b, g.from_simplex, tuple(sorted(inv.items())))
        out.add(min(fwd, bwd))
    return out


def brute_isomorphic(T1, T2):
    """Try every simplex bijection with every per-simplex relabelling."""
    if (T1.dimension, T1.simplex_count, len(T1.gluings)) != \
            (T2.dimension, T2.simplex_count, len(T2.gluings)):
        return False
    target = gluing_identities(T2)
    labels = range(1, T1.dimension + 2)
    perms = list(itertools.permutations(labels))
    for smap in itertools.permutations(range(T1.simplex_count)):
        for vmaps in itertools.product(perms, repeat=T1.simplex_count):
            if gluing_identities(push(T1, smap, vmaps)) == target:
                return True
    return False


def push(T, smap, vmaps):
    gl = []
    for g in T.gluings:
        ra, rb = vmaps[g.from_simplex], vmaps[g.to_simplex]
        gl.append(FacetGluing(smap[g.from_simplex], tuple(ra[v - 1] for v in g.from_vertices),
                              smap[g.to_simplex], tuple(rb[v - 1] for v in g.to_vertices)))
    return Triangulation(T.dimension, T.simplex_count, tuple(gl), T.partial)


def random_relabel(T, rng):
    smap = list(range(T.simplex_count))
    rng.shuffle(smap)
    vmaps = []
    for _ in range(T.simplex_count):
        p = list(range(1, T.dimension + 2))
        rng.shuffle(p)
        vmaps.append(tuple(p))
    return push(T, smap, vmaps), smap, vmaps


def random_closed(rng, n, count):
    """A random closed triangulation: random perfect matching of facets."""
    facets = [(s, u) for s in range(count) for u in range(1, n + 2)]
    rng.shuffle(facets)
    gl = []
    labels = list(range(1, n + 2))
    for (s, u), (t, w) in zip(facets[::2], facets[1::2]):
        src = [l for l in labels if l != u]
        dst = [l for l in labels if l != w]
        rng.shuffle(dst)
        gl.append(FacetGluing(s, tuple(src), t, tuple(dst)))
    return Triangulation(n, count, tuple(gl))


def mutate(T, rng):
    """Scramble the correspondence of one gluing; the result stays valid."""
    gl = list(T.gluings)
    i = rng.randrange(len(gl))
    g = gl[i]
    dst = list(g.to_vertices)
    rng.shuffle(dst)
    gl[i] = FacetGluing(g.from_simplex, g.from_vertices, g.to_simplex, tuple(dst))
    return Triangulation(T.dimension, T.simplex_count, tuple(gl), T.partial)


# ---------------------------------------------------------------------------
# SL(2,Z)

def sl2z_matrices(bound):
    for a, b, c, d in itertools.product(range(-bound, bound + 1), repeat=4):
        if a * d - b * c == 1:
            yield a, b, c, d


def in_canonical_domain(re_, im_):
    """Fundamental domain with the canonical boundary convention."""
    n2 = re_ * re_ + im_ * im_
    half = Fraction(1, 2)
    if n2 < 1 or re_ < -half or re_ > half:
        return False
    if re_ == -half:
        return False
    if n2 == 1 and re_ < 0:
        return False
    return True


def mobius(m, re_, im_):
    """(a z + b)/(c z + d) on coordinates; returns (re, im)."""
    a, b, c, d = m
    # numerator (a z + b)(c conj(z) + d), denominator |c z + d|^2
    den = (c * re_ + d) * (c * re_ + d) + (c * im_) * (c * im_)
    num_re = (a * re_ + b) * (c * re_ + d) + a * c * im_ * im_
    num_im = im_ * (a * d - b * c)
    return num_re / den, num_im / den
