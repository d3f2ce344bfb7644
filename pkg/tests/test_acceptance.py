"""
Acceptance suite.  Each test prints one ``PASS``/``FAIL`` line; run with
``pytest tests/test_acceptance.py -s`` to see them.
"""
import random
import time
from fractions import Fraction

from geobound.constructions import (CONE_FIG8_TABLE, CONE_SIBLING_TABLE, builtin,
                                    verify_paper_T)
from geobound.cusps import (Modulus, ShapeClass, VerdictTag, apply_word, classify_shape,
                            euler_parity_obstruction, pairing_obstruction_3d,
                            reduce_modulus, trace_field_obstruction, twist_knot_verdict,
                            unoriented_form)
from geobound.quadratic import QuadraticReal
from geobound.triangulation import (OrientationAssignment, Triangulation, cone,
                                    face_classes, isomorphism, orient, validate,
                                    vertex_links)

import oracles


def report(number, ok, detail):
    print("%s criterion %d: %s" % ("PASS" if ok else "FAIL", number, detail))
    assert ok, detail


def test_criterion_1_reference_triangulation():
    start = time.perf_counter()
    rep = verify_paper_T()
    elapsed = time.perf_counter() - start
    failed = [c.number for c in rep.checks if not c.passed]
    ok = len(rep.checks) == 7 and not failed and elapsed < 5
    report(1, ok, "%d/7 checks passed in %.2fs%s" % (
        7 - len(failed), elapsed, "; failed %s" % failed if failed else ""))


def test_criterion_2_cone_identity():
    pairs = [("fig8", CONE_FIG8_TABLE), ("sibling", CONE_SIBLING_TABLE)]
    bad = [name for name, table in pairs
           if cone(builtin(name).data) != Triangulation(4, 2, table, partial=True)]
    report(2, not bad, "cone tables reproduced exactly" if not bad else "mismatch: %s" % bad)


def test_criterion_3_sibling_obstruction():
    omega = Modulus(QuadraticReal(Fraction(-1, 2)), QuadraticReal(0, Fraction(1, 2), 3))
    cls = classify_shape(omega)
    tag = pairing_obstruction_3d([omega]).tag
    ok = cls is ShapeClass.RHOMBIC and tag is VerdictTag.OBSTRUCTION_VIOLATED
    report(3, ok, "omega is %s, verdict %s" % (cls.value, tag.value))


def _random_modulus(rng):
    d = rng.choice([2, 3, 5, 6, 7, 10, 11, 13])

    def frac(lo, hi):
        return Fraction(rng.randint(lo, hi), rng.randint(1, 12))

    re_ = QuadraticReal(frac(-60, 60), frac(-6, 6), d)
    im_ = QuadraticReal(frac(1, 60), 0, d)
    if rng.random() < 0.5:
        # irrational imaginary part kept positive: p + q sqrt(d) with p > |q| sqrt(d)
        q = frac(-3, 3)
        im_ = QuadraticReal(abs(q) * 4 * d + frac(1, 10), q, d)
    return Modulus(re_, im_)


def _random_word(rng):
    gens = [("T", 1), ("T", -1), ("S", 1), ("T", 3), ("T", -2)]
    return tuple(rng.choice(gens) for _ in range(rng.randint(0, 20)))


def test_criterion_4_sl2z_properties():
    rng = random.Random(4)
    failures = 0
    start = time.perf_counter()
    for _ in range(1000):
        z = _random_modulus(rng)
        word = _random_word(rng)
        wz = apply_word(z, word)
        r, _ = reduce_modulus(z)
        checks = (
            reduce_modulus(wz)[0] == r,
            reduce_modulus(r) == (r, ()),
            classify_shape(wz) is classify_shape(z),
            unoriented_form(z.mirror()) == unoriented_form(z),
            classify_shape(z.mirror()) is classify_shape(z),
        )
        failures += not all(checks)
    elapsed = time.perf_counter() - start
    report(4, failures == 0 and elapsed < 10,
           "1000 moduli x random words, %d failures, %.2fs" % (failures, elapsed))


def _corpus():
    rng = random.Random(5)
    base = [builtin(name).data for name in ("fig8", "sibling", "coneY", "coneXZ", "paperT")]
    base += [cone(builtin("fig8").data), cone(builtin("sibling").data)]
    base += [oracles.random_closed(rng, 3, 2) for _ in range(4)]
    base += [oracles.random_closed(rng, 3, 4) for _ in range(4)]
    base += [oracles.random_closed(rng, 2, 6) for _ in range(4)]
    base += [oracles.random_closed(rng, 4, 2) for _ in range(4)]
    parents = [T for T in base if T.gluings]
    mutants = [oracles.mutate(rng.choice(parents), rng) for _ in range(100)]
    return base, mutants


def test_criterion_5_oracle_equivalence():
    base, mutants = _corpus()
    corpus = [T for T in base + mutants if T.simplex_count <= 6]
    mismatches = 0
    non_orientable = 0
    for T in corpus:
        assert validate(T).valid
        for k in range(T.dimension + 1):
            got = sorted(sorted(c) for c in face_classes(T, k).classes)
            mismatches += got != oracles.closure_classes(T, k)
        o = orient(T)
        if isinstance(o, OrientationAssignment):
            mismatches += not oracles.brute_orientable(T)
        else:
            non_orientable += 1
            mismatches += oracles.brute_orientable(T)
            mismatches += oracles.constraints_satisfiable(T, o.witness)
    report(5, mismatches == 0 and len(mutants) == 100,
           "%d triangulations (%d mutations, %d non-orientable), %d mismatches"
           % (len(corpus), len(mutants), non_orientable, mismatches))


def test_criterion_6_degree_parity_table():
    V = VerdictTag
    table = [
        ("trace_field(1, 3)", trace_field_obstruction(1, 3), V.OBSTRUCTION_VIOLATED),
        ("trace_field(1, 5)", trace_field_obstruction(1, 5), V.OBSTRUCTION_VIOLATED),
        ("trace_field(1, 7)", trace_field_obstruction(1, 7), V.OBSTRUCTION_VIOLATED),
        ("twist(3)", twist_knot_verdict(3), V.OBSTRUCTION_VIOLATED),
        ("twist(2)", twist_knot_verdict(2), V.INCONCLUSIVE),
        ("euler(2, -1)", euler_parity_obstruction(2, -1), V.OBSTRUCTION_VIOLATED),
        ("euler(4, 1)", euler_parity_obstruction(4, 1), V.OBSTRUCTION_VIOLATED),
        ("euler(4, -1)", euler_parity_obstruction(4, -1), V.OBSTRUCTION_VIOLATED),
    ]
    wrong = [name for name, v, want in table if v.tag is not want]
    report(6, not wrong, "%d/%d rows match%s" % (
        len(table) - len(wrong), len(table), "; wrong %s" % wrong if wrong else ""))


def test_criterion_7_link_invariants():
    links = [l.link for l in vertex_links(builtin("paperT").data)]
    big = [L for L in links if L.simplex_count == 24]
    small = [L for L in links if L.simplex_count == 2]
    problems = []
    if len(big) != 1 or len(small) != 3:
        problems.append("link sizes %s" % sorted(L.simplex_count for L in links))
    for L in big:
        if not validate(L).closed:
            problems.append("24-link not closed")
        if not isinstance(orient(L), OrientationAssignment):
            problems.append("24-link not orientable")
        for S in small:
            if isomorphism(L, S) is not None:
                problems.append("24-link isomorphic to a 2-simplex link")
    for S in small:
        if len(face_classes(S, 0).classes) != 1:
            problems.append("2-simplex link with several vertex classes")
        if not isinstance(orient(S), OrientationAssignment):
            problems.append("2-simplex link not orientable")
    big_vertices = len(face_classes(big[0], 0).classes) if big else None
    report(7, not problems,
           "24-link closed, orientable, %s vertex classes, distinct from the 2-simplex links"
           % big_vertices if not problems else "; ".join(problems))
