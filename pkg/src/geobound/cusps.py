"""
Flat-torus shapes and the cusp obstructions to bounding geometrically.

A torus shape is a point z of the upper half-plane modulo SL(2,Z).  Exact
moduli have both coordinates in one real quadratic field, which is closed
under the generators T: z -> z+1 and S: z -> -1/z.  A float variant exists
for inputs outside that class; it refuses to classify points lying within
its tolerance of a classification curve.
"""
from __future__ import annotations

import enum
import math
import re
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Sequence, Union

from .quadratic import QuadraticReal

HALF = Fraction(1, 2)
DEFAULT_EPSILON = 1e-9

Word = tuple[tuple[str, int], ...]


class ShapeClass(enum.Enum):
    RECTANGULAR = "Rectangular"
    RHOMBIC = "Rhombic"
    GENERIC = "Generic"
    AMBIGUOUS = "Ambiguous"


class VerdictTag(enum.Enum):
    OBSTRUCTION_VIOLATED = "ObstructionViolated"
    INCONCLUSIVE = "Inconclusive"
    INAPPLICABLE = "Inapplicable"


@dataclass(frozen=True)
class Verdict:
    tag: VerdictTag
    rule: str
    reason: str

    @property
    def violated(self) -> bool:
        return self.tag is VerdictTag.OBSTRUCTION_VIOLATED

    def to_dict(self) -> dict:
        return {"tag": self.tag.value, "rule": self.rule, "reason": self.reason}


# ---------------------------------------------------------------------------
# moduli

@dataclass(frozen=True)
class Modulus:
    re: QuadraticReal
    im: QuadraticReal

    def __post_init__(self):
        re_, im_ = QuadraticReal._lift(self.re), QuadraticReal._lift(self.im)
        if re_ is None or im_ is None:
            raise TypeError("modulus coordinates must be rational or quadratic")
        re_._common(im_)
        if im_.sign() <= 0:
            raise ValueError("modulus must lie in the upper half-plane, im = %s" % im_)
        object.__setattr__(self, "re", re_)
        object.__setattr__(self, "im", im_)

    def norm2(self) -> QuadraticReal:
        return self.re * self.re + self.im * self.im

    def translate(self, k: int) -> "Modulus":
        return Modulus(self.re + k, self.im)

    def invert(self) -> "Modulus":
        n = self.norm2()
        return Modulus(-self.re / n, self.im / n)

    def mirror(self) -> "Modulus":
        return Modulus(-self.re, self.im)

    def sort_key(self):
        # floats order across different fields; exact parts break ties
        return (float(self.re), float(self.im),
                self.re.d, self.re.p, self.re.q, self.im.d, self.im.p, self.im.q)

    def __str__(self):
        return format_modulus(self.re, self.im)


@dataclass(frozen=True)
class FloatModulus:
    re: float
    im: float
    epsilon: float = DEFAULT_EPSILON

    def __post_init__(self):
        if not self.im > 0:
            raise ValueError("modulus must lie in the upper half-plane, im = %r" % self.im)

    def norm2(self) -> float:
        return self.re * self.re + self.im * self.im

    def translate(self, k: int) -> "FloatModulus":
        return FloatModulus(self.re + k, self.im, self.epsilon)

    def invert(self) -> "FloatModulus":
        n = self.norm2()
        return FloatModulus(-self.re / n, self.im / n, self.epsilon)

    def mirror(self) -> "FloatModulus":
        return FloatModulus(-self.re, self.im, self.epsilon)

    def __str__(self):
        return "%r%s%r*i" % (self.re, "-" if self.im < 0 else "+", abs(self.im))


AnyModulus = Union[Modulus, FloatModulus]


def format_modulus(re_, im_) -> str:
    def wrap(x):
        s = str(x)
        return "(%s)" % s if isinstance(x, QuadraticReal) and x.p and x.q else s
    return "%s+%s*i" % (re_, wrap(im_))


def apply_word(z: AnyModulus, word: Word) -> AnyModulus:
    """Apply generators left to right: the first letter acts first."""
    for gen, exp in word:
        if gen == "T":
            z = z.translate(exp)
        elif gen == "S":
            for _ in range(exp % 2):
                z = z.invert()
        else:
            raise ValueError("unknown generator %r" % gen)
    return z


def word_matrix(word: Word) -> tuple[int, int, int, int]:
    """The SL(2,Z) matrix (a, b, c, d) acting as z -> (az+b)/(cz+d)."""
    a, b, c, d = 1, 0, 0, 1
    for gen, exp in word:
        if gen == "T":
            a, b, c, d = a + exp * c, b + exp * d, c, d
        else:
            for _ in range(exp % 4):
                a, b, c, d = -c, -d, a, b
    return a, b, c, d


def format_word(word: Word) -> str:
    if not word:
        return "1"
    parts = []
    for gen, exp in word:
        parts.append(gen if exp == 1 else "%s^%d" % (gen, exp))
    return " ".join(parts)


def _push(word: list, gen: str, exp: int):
    if word and word[-1][0] == gen:
        exp += word[-1][1]
        word.pop()
        if gen == "S":
            exp %= 2
        if not exp:
            return
    word.append((gen, exp))


def reduce_modulus(z: AnyModulus) -> tuple[AnyModulus, Word]:
    """Move z into the standard fundamental domain.

    Returns the canonical representative and the word carrying z to it.
    Boundary convention: Re = -1/2 is sent to +1/2, and a point of the unit
    arc is sent to the representative with Re >= 0.
    """
    if isinstance(z, FloatModulus):
        return _reduce_float(z)
    word: list = []
    while True:
        k = math.floor(z.re + HALF)
        if k:
            z = z.translate(-k)
            _push(word, "T", -k)
        if z.norm2() < 1:
            z = z.invert()
            _push(word, "S", 1)
            continue
        break
    if z.re == -HALF:
        z = z.translate(1)
        _push(word, "T", 1)
    if z.norm2() == 1 and z.re < 0:
        z = z.invert()
        _push(word, "S", 1)
    return z, tuple(word)


def _reduce_float(z: FloatModulus) -> tuple[FloatModulus, Word]:
    eps = z.epsilon
    word: list = []
    for _ in range(10000):
        k = math.floor(z.re + 0.5)
        if k:
            z = z.translate(-k)
            _push(word, "T", -k)
        if z.norm2() < 1 - eps:
            z = z.invert()
            _push(word, "S", 1)
            continue
        break
    else:
        raise ArithmeticError("float reduction did not converge")
    if abs(z.re + 0.5) <= eps:
        z = z.translate(1)
        _push(word, "T", 1)
    if abs(z.norm2() - 1) <= eps and z.re < 0:
        z = z.invert()
        _push(word, "S", 1)
    return z, tuple(word)


def unoriented_form(z: AnyModulus) -> AnyModulus:
    """Canonical form of the unoriented shape: z and -conj(z) coincide."""
    a, _ = reduce_modulus(z)
    b, _ = reduce_modulus(z.mirror())
    return a if a.re >= b.re else b


# ---------------------------------------------------------------------------
# classification

def _float_curves(z: FloatModulus) -> list[str]:
    eps = z.epsilon
    near = []
    if abs(z.re) <= eps:
        near.append("Re=0")
    if abs(abs(z.re) - 0.5) <= eps:
        near.append("|Re|=1/2")
    if abs(z.norm2() - 1) <= eps:
        near.append("|z|=1")
    return near


def classify_shape(z: AnyModulus) -> ShapeClass:
    """Rectangular on Re=0 (taking precedence at z=i), Rhombic on |z|=1 or
    |Re|=1/2, Generic elsewhere.  Float input within epsilon of one of these
    curves is Ambiguous."""
    w, _ = reduce_modulus(z)
    if isinstance(w, FloatModulus):
        return ShapeClass.AMBIGUOUS if _float_curves(w) else ShapeClass.GENERIC
    if w.re == 0:
        return ShapeClass.RECTANGULAR
    if w.norm2() == 1 or w.re == HALF:
        return ShapeClass.RHOMBIC
    return ShapeClass.GENERIC


def admits_involution(c: ShapeClass) -> bool:
    """Whether a torus of this shape has a free orientation-reversing isometric involution."""
    if c is ShapeClass.AMBIGUOUS:
        raise ValueError("cannot decide involution for an ambiguous shape")
    return c in (ShapeClass.RECTANGULAR, ShapeClass.RHOMBIC)


# ---------------------------------------------------------------------------
# obstructions

MIRROR_NOTE = "cusp shapes compared up to orientation (z ~ -conj(z))"


def _group_float(points: list[FloatModulus]) -> list[list[int]]:
    groups: list[list[int]] = []
    for i, p in enumerate(points):
        for g in groups:
            q = points[g[0]]
            if abs(p.re - q.re) <= p.epsilon and abs(p.im - q.im) <= p.epsilon:
                g.append(i)
                break
        else:
            groups.append([i])
    return groups


def pairing_obstruction_3d(moduli: Sequence[AnyModulus]) -> Verdict:
    """Non-rectangular cusps of a bounding 3-manifold must be isometric in pairs."""
    rule = "non-rectangular cusps pair up"
    if not moduli:
        raise ValueError("at least one cusp modulus is required")
    classes = [classify_shape(z) for z in moduli]
    for z, c in zip(moduli, classes):
        if c is ShapeClass.AMBIGUOUS:
            return Verdict(VerdictTag.INAPPLICABLE, rule,
                           "cusp %s lies within tolerance of a shape boundary; "
                           "use exact input" % z)
    keep = [z for z, c in zip(moduli, classes) if c is not ShapeClass.RECTANGULAR]
    if any(isinstance(z, FloatModulus) for z in keep):
        eps = max(getattr(z, "epsilon", DEFAULT_EPSILON) for z in keep)
        pts = [z if isinstance(z, FloatModulus) else FloatModulus(float(z.re), float(z.im), eps)
               for z in keep]
        forms = [unoriented_form(p) for p in pts]
        odd = [forms[g[0]] for g in _group_float(forms) if len(g) % 2]
        tol = "; float comparison within %g" % eps
    else:
        counts = Counter(unoriented_form(z) for z in keep)
        odd = sorted((z for z, c in counts.items() if c % 2), key=Modulus.sort_key)
        tol = ""
    if odd:
        return Verdict(VerdictTag.OBSTRUCTION_VIOLATED, rule,
                       "unpaired non-rectangular cusp shape(s) %s; does not bound "
                       "geometrically (%s%s)" % (", ".join(map(str, odd)), MIRROR_NOTE, tol))
    return Verdict(VerdictTag.INCONCLUSIVE, rule,
                   "%d non-rectangular cusp(s), all paired (%s%s)"
                   % (len(keep), MIRROR_NOTE, tol))


@dataclass(frozen=True)
class CuspDescriptor:
    label: str
    isometry_class: Hashable
    has_ffor_involution: bool


def descriptor_from_modulus(label: str, z: Modulus) -> CuspDescriptor:
    return CuspDescriptor(label, unoriented_form(z), admits_involution(classify_shape(z)))


def pairing_obstruction_general(cusps: Sequence[CuspDescriptor]) -> Verdict:
    """Cusps without a free orientation-reversing involution must pair up."""
    rule = "cusps without free orientation-reversing involution pair up"
    flag: dict = {}
    for c in cusps:
        if flag.setdefault(c.isometry_class, c.has_ffor_involution) != c.has_ffor_involution:
            raise ValueError("inconsistent descriptors for isometry class %r" % (c.isometry_class,))
    counts = Counter(c.isometry_class for c in cusps if not c.has_ffor_involution)
    odd = [k for k, v in counts.items() if v % 2]
    if odd:
        return Verdict(VerdictTag.OBSTRUCTION_VIOLATED, rule,
                       "odd number of cusps of class %s; does not bound geometrically"
                       % ", ".join(str(k) for k in odd))
    return Verdict(VerdictTag.INCONCLUSIVE, rule,
                   "%d constrained cusp(s), all paired" % sum(counts.values()))


def trace_field_obstruction(num_cusps: int, invariant_trace_field_degree: int) -> Verdict:
    rule = "single cusp and odd invariant trace field degree"
    n, deg = num_cusps, invariant_trace_field_degree
    if n < 1 or deg < 1:
        raise ValueError("cusp count and degree must be positive")
    if deg == 1:
        return Verdict(VerdictTag.INAPPLICABLE, rule,
                       "degree 1 is impossible for a cusped hyperbolic 3-manifold")
    if n == 1 and deg % 2:
        return Verdict(VerdictTag.OBSTRUCTION_VIOLATED, rule,
                       "one cusp and odd degree %d: the cusp cannot be rectangular; "
                       "does not bound geometrically" % deg)
    if n != 1:
        return Verdict(VerdictTag.INCONCLUSIVE, rule, "%d cusps; rule needs exactly one" % n)
    return Verdict(VerdictTag.INCONCLUSIVE, rule, "even degree %d carries no obstruction" % deg)


TWIST_EXCLUDED = (-2, -1, 0, 1)


def twist_knot_degree(m: int) -> int:
    """Invariant trace field degree of the m-twist knot complement, m >= 2."""
    if m < 2:
        raise ValueError("degree formula cro(K_m) - 2 = m holds for m >= 2")
    return m


def twist_knot_verdict(m: int) -> Verdict:
    rule = "twist knot: degree = crossing number - 2"
    if m in TWIST_EXCLUDED:
        raise ValueError("m-twist knot requires m not in {-2, -1, 0, 1}, got %d" % m)
    if m < 0:
        return Verdict(VerdictTag.INAPPLICABLE, rule,
                       "degree formula is only available for m >= 2")
    deg = twist_knot_degree(m)
    v = trace_field_obstruction(1, deg)
    return Verdict(v.tag, rule, "K_%d: degree %d; %s" % (m, deg, v.reason))


def euler_parity_obstruction(dimension_n: int, chi: int) -> Verdict:
    rule = "Euler characteristic of a geometric boundary is even"
    if dimension_n < 2:
        raise ValueError("dimension must be at least 2")
    if dimension_n % 2:
        if chi:
            return Verdict(VerdictTag.INAPPLICABLE, rule,
                           "odd-dimensional cusped hyperbolic manifolds have chi = 0; "
                           "got chi = %d" % chi)
        return Verdict(VerdictTag.INCONCLUSIVE, rule, "odd dimension: no parity information")
    if chi % 2:
        return Verdict(VerdictTag.OBSTRUCTION_VIOLATED, rule,
                       "chi = %d is odd in dimension %d; does not bound geometrically"
                       % (chi, dimension_n))
    return Verdict(VerdictTag.INCONCLUSIVE, rule, "chi = %d is even" % chi)


# ---------------------------------------------------------------------------
# parsing

_TERM = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?P<coef>\d+\.\d*(?:[eE][+-]?\d+)?|\d*\.\d+(?:[eE][+-]?\d+)?|\d+(?:/\d+)?)?
        \s*(?P<sqrt>\*?\s*sqrt\(\s*(?P<rad>\d+)\s*\))?
        \s*(?P<i>\*?\s*i)?\s*""", re.VERBOSE)
_IMAG_GROUP = re.compile(r"^(?P<head>.*?)(?P<sign>[+-]?)\s*(?<!sqrt)\((?P<inner>[^()]*(?:sqrt\(\d+\)[^()]*)*)\)\s*\*\s*i$")


def _terms(text: str):
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos or not (m.group("coef") or m.group("sqrt") or m.group("i")):
            raise ValueError("cannot parse modulus near %r" % text[pos:])
        if out and not m.group("sign"):
            raise ValueError("missing sign between terms near %r" % text[pos:])
        out.append(m)
        pos = m.end()
    if not out:
        raise ValueError("empty modulus")
    return out


def parse_modulus(text: str, epsilon: float | None = None) -> AnyModulus:
    """Parse ``RE+IM*i``; parts are sums of ``p``, ``p/q`` and ``p/q*sqrt(D)``.

    The imaginary part may also be written ``(...)*i``.  Decimal numbers
    select the float variant.
    """
    body = text.strip()
    group_parts = []
    m = _IMAG_GROUP.match(body)
    if m:
        head = m.group("head").strip()
        if head and not m.group("sign"):
            raise ValueError("missing sign before imaginary group in %r" % text)
        group_parts.append((-1 if m.group("sign") == "-" else 1, m.group("inner")))
        body = head
    terms = _terms(body) if body.strip() else []
    real, imag = [], []
    for m in terms:
        (imag if m.group("i") else real).append(m)
    for sign, inner in group_parts:
        for m in _terms(inner):
            if m.group("i"):
                raise ValueError("nested i in %r" % text)
            imag.append((sign, m))
    floating = any("." in ((m[1] if isinstance(m, tuple) else m).group("coef") or "")
                   for m in real + imag)

    def total(ms):
        acc_exact, acc_float = QuadraticReal(0), 0.0
        for item in ms:
            outer, m = item if isinstance(item, tuple) else (1, item)
            sgn = outer * (-1 if m.group("sign") == "-" else 1)
            coef_s = m.group("coef")
            if floating:
                c = float(coef_s) if coef_s else 1.0
                if m.group("rad"):
                    c *= math.sqrt(int(m.group("rad")))
                acc_float += sgn * c
            else:
                c = Fraction(coef_s) if coef_s else Fraction(1)
                term = QuadraticReal(0, c, int(m.group("rad"))) if m.group("rad") \
                    else QuadraticReal(c)
                acc_exact = acc_exact + (term if sgn > 0 else -term)
        return acc_float if floating else acc_exact

    re_, im_ = total(real), total(imag)
    if floating:
        return FloatModulus(float(re_), float(im_),
                            DEFAULT_EPSILON if epsilon is None else epsilon)
    return Modulus(re_, im_)
