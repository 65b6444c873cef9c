"""Exact arithmetic in Q(sqrt 5) and exact planar geometry.

Every coordinate that appears in a pinwheel patch lives in Q(sqrt 5): the
inflation factor is sqrt 5 and the rotation by arctan(1/2) has cosine
2/sqrt 5 and sine 1/sqrt 5.  Working in this field makes every incidence
test decidable, so nothing in the package carries a tolerance.

Values are stored as ``(a + b*sqrt5) / d`` with integers ``a, b, d``,
``d > 0`` and ``gcd(a, b, d) == 1``.  That normal form is unique, which
lets points and motions be hashed and used as dictionary keys.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Sequence

__all__ = [
    "QSqrt5",
    "ExactScalar",
    "ZERO",
    "ONE",
    "SQRT5",
    "Point",
    "Motion",
    "Polygon",
    "Relation",
    "polygon_relation",
    "polygon_predicates",
    "cross",
    "dot",
    "on_segment",
    "strictly_inside_segment",
]

_SQRT5_F = math.sqrt(5.0)


def _normalize(a: int, b: int, d: int) -> tuple[int, int, int]:
    if d == 0:
        raise ZeroDivisionError("zero denominator")
    if d < 0:
        a, b, d = -a, -b, -d
    g = math.gcd(math.gcd(a, b), d)
    if g > 1:
        a //= g
        b //= g
        d //= g
    return a, b, d


def _sign_ab(a: int, b: int) -> int:
    # sign of a + b*sqrt5
    if b == 0:
        return (a > 0) - (a < 0)
    if a == 0:
        return (b > 0) - (b < 0)
    if a > 0 and b > 0:
        return 1
    if a < 0 and b < 0:
        return -1
    # opposite signs: compare a^2 with 5 b^2
    if a * a > 5 * b * b:
        return 1 if a > 0 else -1
    return 1 if b > 0 else -1


@total_ordering
class QSqrt5:
    """An element ``(a + b*sqrt5)/d`` of the field Q(sqrt 5)."""

    __slots__ = ("a", "b", "d", "_hash")

    def __init__(self, a=0, b=0, d: int = 1):
        if isinstance(a, QSqrt5):
            self.a, self.b, self.d = a.a, a.b, a.d
        elif isinstance(a, Fraction) or isinstance(b, Fraction):
            fa, fb = Fraction(a), Fraction(b)
            den = fa.denominator * fb.denominator // math.gcd(fa.denominator, fb.denominator)
            den *= d
            self.a, self.b, self.d = _normalize(
                fa.numerator * (den // (fa.denominator * d)),
                fb.numerator * (den // (fb.denominator * d)),
                den,
            )
        else:
            self.a, self.b, self.d = _normalize(int(a), int(b), int(d))
        self._hash = None

    @classmethod
    def _raw(cls, a: int, b: int, d: int) -> "QSqrt5":
        obj = object.__new__(cls)
        obj.a, obj.b, obj.d = _normalize(a, b, d)
        obj._hash = None
        return obj

    @classmethod
    def coerce(cls, x) -> "QSqrt5":
        if isinstance(x, QSqrt5):
            return x
        if isinstance(x, int):
            return cls._raw(x, 0, 1)
        if isinstance(x, Fraction):
            return cls._raw(x.numerator, 0, x.denominator)
        raise TypeError(f"cannot coerce {type(x).__name__} to QSqrt5")

    # -- components -------------------------------------------------------
    @property
    def rational(self) -> Fraction:
        return Fraction(self.a, self.d)

    @property
    def irrational(self) -> Fraction:
        """Coefficient of sqrt 5."""
        return Fraction(self.b, self.d)

    def key(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.d)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        try:
            o = QSqrt5.coerce(other)
        except TypeError:
            return NotImplemented
        if self.d == o.d:
            return QSqrt5._raw(self.a + o.a, self.b + o.b, self.d)
        return QSqrt5._raw(self.a * o.d + o.a * self.d, self.b * o.d + o.b * self.d, self.d * o.d)

    __radd__ = __add__

    def __neg__(self):
        obj = object.__new__(QSqrt5)
        obj.a, obj.b, obj.d = -self.a, -self.b, self.d
        obj._hash = None
        return obj

    def __sub__(self, other):
        try:
            o = QSqrt5.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return QSqrt5.coerce(other) - self

    def __mul__(self, other):
        try:
            o = QSqrt5.coerce(other)
        except TypeError:
            return NotImplemented
        return QSqrt5._raw(
            self.a * o.a + 5 * self.b * o.b, self.a * o.b + self.b * o.a, self.d * o.d
        )

    __rmul__ = __mul__

    def inverse(self) -> "QSqrt5":
        n = self.a * self.a - 5 * self.b * self.b
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt5)")
        return QSqrt5._raw(self.a * self.d, -self.b * self.d, n)

    def __truediv__(self, other):
        try:
            o = QSqrt5.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return QSqrt5.coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> "QSqrt5":
        """Galois conjugate ``(a - b*sqrt5)/d``."""
        return QSqrt5._raw(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return Fraction(self.a * self.a - 5 * self.b * self.b, self.d * self.d)

    # -- comparison -------------------------------------------------------
    def sign(self) -> int:
        return _sign_ab(self.a, self.b)

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, QSqrt5):
            return self.a == other.a and self.b == other.b and self.d == other.d
        if isinstance(other, (int, Fraction)):
            return self == QSqrt5.coerce(other)
        return NotImplemented

    def __lt__(self, other):
        try:
            o = QSqrt5.coerce(other)
        except TypeError:
            return NotImplemented
        return (self - o).sign() < 0

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.a, self.b, self.d))
        return self._hash

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __float__(self):
        return (self.a + self.b * _SQRT5_F) / self.d

    # -- text -------------------------------------------------------------
    def __repr__(self):
        return f"QSqrt5({self})"

    def __str__(self):
        ra, rb = self.rational, self.irrational
        return f"{ra.numerator}/{ra.denominator}+{rb.numerator}/{rb.denominator}*sqrt5"

    def pretty(self) -> str:
        ra, rb = self.rational, self.irrational
        if rb == 0:
            return str(ra)
        if ra == 0:
            return f"{rb}*sqrt5"
        return f"{ra}{'+' if rb > 0 else '-'}{abs(rb)}*sqrt5"

    _PATTERN = re.compile(r"^\s*(-?\d+)/(\d+)\s*\+\s*(-?\d+)/(\d+)\s*\*\s*sqrt5\s*$")

    @classmethod
    def parse(cls, text: str) -> "QSqrt5":
        """Inverse of ``str``: ``"a_num/a_den+b_num/b_den*sqrt5"``."""
        m = cls._PATTERN.match(text)
        if m is None:
            # plain integers and fractions are accepted too
            try:
                return cls.coerce(Fraction(text.strip()))
            except (ValueError, ZeroDivisionError) as exc:
                raise ValueError(f"malformed Q(sqrt5) literal: {text!r}") from exc
        an, ad, bn, bd = (int(g) for g in m.groups())
        return QSqrt5(Fraction(an, ad), Fraction(bn, bd))


ExactScalar = QSqrt5
ZERO = QSqrt5(0)
ONE = QSqrt5(1)
SQRT5 = QSqrt5(0, 1)


def _q(x) -> QSqrt5:
    return x if isinstance(x, QSqrt5) else QSqrt5.coerce(x)


class Point:
    """A point of the plane with coordinates in Q(sqrt 5)."""

    __slots__ = ("x", "y", "fx", "fy", "_hash")

    def __init__(self, x, y):
        self.x = _q(x)
        self.y = _q(y)
        self.fx = float(self.x)
        self.fy = float(self.y)
        self._hash = None

    def __add__(self, o: "Point") -> "Point":
        return Point(self.x + o.x, self.y + o.y)

    def __sub__(self, o: "Point") -> "Point":
        return Point(self.x - o.x, self.y - o.y)

    def __neg__(self):
        return Point(-self.x, -self.y)

    def scale(self, s) -> "Point":
        s = _q(s)
        return Point(self.x * s, self.y * s)

    def midpoint(self, o: "Point") -> "Point":
        half = QSqrt5(1, 0, 2)
        return Point((self.x + o.x) * half, (self.y + o.y) * half)

    def norm2(self) -> QSqrt5:
        return self.x * self.x + self.y * self.y

    def key(self) -> tuple:
        return (self.x.key(), self.y.key())

    def __eq__(self, o):
        return isinstance(o, Point) and self.x == o.x and self.y == o.y

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.x, self.y))
        return self._hash

    def __lt__(self, o: "Point"):
        return (self.x, self.y) < (o.x, o.y)

    def __repr__(self):
        return f"Point({self.x.pretty()}, {self.y.pretty()})"

    def to_json(self) -> list[str]:
        return [str(self.x), str(self.y)]

    @classmethod
    def from_json(cls, data: Sequence[str]) -> "Point":
        return cls(QSqrt5.parse(str(data[0])), QSqrt5.parse(str(data[1])))


def cross(u: Point, v: Point) -> QSqrt5:
    return u.x * v.y - u.y * v.x


def dot(u: Point, v: Point) -> QSqrt5:
    return u.x * v.x + u.y * v.y


def on_segment(p: Point, a: Point, b: Point) -> bool:
    """True when ``p`` lies on the closed segment ``[a, b]``."""
    # cheap float rejection first; the exact test below is authoritative
    if (p.fx < min(a.fx, b.fx) - 1e-9 or p.fx > max(a.fx, b.fx) + 1e-9
            or p.fy < min(a.fy, b.fy) - 1e-9 or p.fy > max(a.fy, b.fy) + 1e-9):
        return False
    ab = b - a
    ap = p - a
    if not cross(ab, ap).is_zero():
        return False
    t = dot(ap, ab)
    return t.sign() >= 0 and (t - ab.norm2()).sign() <= 0


def strictly_inside_segment(p: Point, a: Point, b: Point) -> bool:
    return on_segment(p, a, b) and p != a and p != b


class Motion:
    """An orientation-preserving rigid motion ``p -> L p + t``.

    ``L`` is the rotation with cosine ``c`` and sine ``s``; reflections are
    never represented (chirality lives in the prototile identity).
    """

    __slots__ = ("c", "s", "tx", "ty", "_key")

    def __init__(self, c, s, tx=0, ty=0, check: bool = True):
        self.c, self.s = _q(c), _q(s)
        self.tx, self.ty = _q(tx), _q(ty)
        if check and (self.c * self.c + self.s * self.s) != ONE:
            raise ValueError("Motion linear part is not a rotation")
        self._key = None

    @classmethod
    def identity(cls) -> "Motion":
        return cls(ONE, ZERO, ZERO, ZERO, check=False)

    @classmethod
    def translation(cls, tx, ty) -> "Motion":
        return cls(ONE, ZERO, tx, ty, check=False)

    @classmethod
    def rotation(cls, c, s, center: Point | None = None) -> "Motion":
        """Rotation with the given cosine/sine about ``center`` (default origin)."""
        m = cls(c, s, ZERO, ZERO)
        if center is None:
            return m
        # p -> R(p - c) + c
        rc = m.apply_linear(center)
        return cls(m.c, m.s, center.x - rc.x, center.y - rc.y, check=False)

    @classmethod
    def half_turn(cls, center: Point) -> "Motion":
        two = QSqrt5(2)
        return cls(-ONE, ZERO, center.x * two, center.y * two, check=False)

    @property
    def linear(self) -> tuple[tuple[QSqrt5, QSqrt5], tuple[QSqrt5, QSqrt5]]:
        return ((self.c, -self.s), (self.s, self.c))

    @property
    def translation_part(self) -> Point:
        return Point(self.tx, self.ty)

    def apply_linear(self, p: Point) -> Point:
        return Point(self.c * p.x - self.s * p.y, self.s * p.x + self.c * p.y)

    def __call__(self, p: Point) -> Point:
        return Point(self.c * p.x - self.s * p.y + self.tx, self.s * p.x + self.c * p.y + self.ty)

    def compose(self, other: "Motion") -> "Motion":
        """``self.compose(other)(p) == self(other(p))``."""
        c = self.c * other.c - self.s * other.s
        s = self.s * other.c + self.c * other.s
        tx = self.c * other.tx - self.s * other.ty + self.tx
        ty = self.s * other.tx + self.c * other.ty + self.ty
        return Motion(c, s, tx, ty, check=False)

    __matmul__ = compose

    def inverse(self) -> "Motion":
        # L^-1 = L^T
        c, s = self.c, -self.s
        tx = -(c * self.tx - s * self.ty)
        ty = -(s * self.tx + c * self.ty)
        return Motion(c, s, tx, ty, check=False)

    def conjugate_by_scale(self, lam) -> "Motion":
        """The motion ``p -> lam * self(p / lam)``."""
        lam = _q(lam)
        return Motion(self.c, self.s, self.tx * lam, self.ty * lam, check=False)

    def key(self) -> tuple:
        if self._key is None:
            self._key = (self.c.key(), self.s.key(), self.tx.key(), self.ty.key())
        return self._key

    def __eq__(self, o):
        return isinstance(o, Motion) and self.key() == o.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return (f"Motion(cos={self.c.pretty()}, sin={self.s.pretty()}, "
                f"t=({self.tx.pretty()}, {self.ty.pretty()}))")

    def to_json(self) -> dict:
        return {"cos": str(self.c), "sin": str(self.s), "t": [str(self.tx), str(self.ty)]}

    @classmethod
    def from_json(cls, data: dict) -> "Motion":
        return cls(
            QSqrt5.parse(data["cos"]),
            QSqrt5.parse(data["sin"]),
            QSqrt5.parse(data["t"][0]),
            QSqrt5.parse(data["t"][1]),
        )


class Relation:
    """Outcome labels of :func:`polygon_relation`."""

    DISJOINT = "interiors-disjoint"
    FULL_EDGE = "share-full-edge"
    CONTACT = "share-vertex"  # touching at points or along part of an edge
    OVERLAP = "overlap"


class Polygon:
    """A simple polygon, vertices listed counterclockwise."""

    __slots__ = ("vertices", "_bbox", "_convex")

    def __init__(self, vertices: Iterable[Point], check: bool = True):
        self.vertices = tuple(vertices)
        self._bbox = None
        self._convex = None
        if check:
            if len(self.vertices) < 3:
                raise ValueError("polygon needs at least three vertices")
            if len(set(self.vertices)) != len(self.vertices):
                raise ValueError("polygon has a repeated vertex")
            if self.signed_area2().sign() <= 0:
                raise ValueError("polygon must be counterclockwise with positive area")

    def __len__(self):
        return len(self.vertices)

    def edges(self) -> list[tuple[Point, Point]]:
        v = self.vertices
        return [(v[i], v[(i + 1) % len(v)]) for i in range(len(v))]

    def signed_area2(self) -> QSqrt5:
        """Twice the signed area (shoelace)."""
        total = ZERO
        for a, b in self.edges():
            total = total + cross(a, b)
        return total

    def area(self) -> QSqrt5:
        return self.signed_area2() * QSqrt5(1, 0, 2)

    def transformed(self, m: Motion) -> "Polygon":
        return Polygon([m(p) for p in self.vertices], check=False)

    def scaled(self, lam) -> "Polygon":
        return Polygon([p.scale(lam) for p in self.vertices], check=False)

    def bbox(self) -> tuple[float, float, float, float]:
        if self._bbox is None:
            xs = [p.fx for p in self.vertices]
            ys = [p.fy for p in self.vertices]
            self._bbox = (min(xs), min(ys), max(xs), max(ys))
        return self._bbox

    def is_convex(self) -> bool:
        if self._convex is None:
            v = self.vertices
            n = len(v)
            self._convex = all(
                cross(v[(i + 1) % n] - v[i], v[(i + 2) % n] - v[(i + 1) % n]).sign() >= 0
                for i in range(n)
            )
        return self._convex

    def is_simple(self) -> bool:
        es = self.edges()
        n = len(es)
        for i in range(n):
            for j in range(i + 1, n):
                if j == i + 1 or (i == 0 and j == n - 1):
                    continue
                if _segments_touch(*es[i], *es[j]):
                    return False
        return True

    def contains_on_boundary(self, p: Point) -> bool:
        return any(on_segment(p, a, b) for a, b in self.edges())

    def contains(self, p: Point) -> int:
        """1 strictly inside, 0 on the boundary, -1 outside."""
        if self.contains_on_boundary(p):
            return 0
        # winding number by exact half-line crossing
        wn = 0
        for a, b in self.edges():
            if a.y <= p.y:
                if b.y > p.y and cross(b - a, p - a).sign() > 0:
                    wn += 1
            elif b.y <= p.y and cross(b - a, p - a).sign() < 0:
                wn -= 1
        return 1 if wn != 0 else -1

    def centroid(self) -> Point:
        """Area centroid."""
        a2 = self.signed_area2()
        cx = cy = ZERO
        for a, b in self.edges():
            w = cross(a, b)
            cx = cx + (a.x + b.x) * w
            cy = cy + (a.y + b.y) * w
        k = (a2 * QSqrt5(3)).inverse()
        return Point(cx * k, cy * k)

    def triangles(self) -> list["Polygon"]:
        """Ear-clipping triangulation (exact)."""
        if self.is_convex():
            v = self.vertices
            return [Polygon((v[0], v[i], v[i + 1]), check=False) for i in range(1, len(v) - 1)]
        verts = list(self.vertices)
        out = []
        while len(verts) > 3:
            n = len(verts)
            for i in range(n):
                a, b, c = verts[i - 1], verts[i], verts[(i + 1) % n]
                if cross(b - a, c - b).sign() <= 0:
                    continue
                tri = Polygon((a, b, c), check=False)
                if any(tri.contains(q) >= 0 for q in verts if q not in (a, b, c)):
                    continue
                out.append(tri)
                del verts[i]
                break
            else:
                raise ValueError("triangulation failed: polygon not simple")
        out.append(Polygon(verts, check=False))
        return out

    def __eq__(self, o):
        return isinstance(o, Polygon) and self.vertices == o.vertices

    def __hash__(self):
        return hash(self.vertices)

    def __repr__(self):
        return f"Polygon({list(self.vertices)!r})"


def _segments_touch(a: Point, b: Point, c: Point, d: Point) -> bool:
    d1 = cross(b - a, c - a).sign()
    d2 = cross(b - a, d - a).sign()
    d3 = cross(d - c, a - c).sign()
    d4 = cross(d - c, b - c).sign()
    if d1 * d2 < 0 and d3 * d4 < 0:
        return True
    return (on_segment(c, a, b) or on_segment(d, a, b)
            or on_segment(a, c, d) or on_segment(b, c, d))


def _convex_interiors_overlap(p: Polygon, q: Polygon) -> bool:
    # separating axis theorem restricted to edge lines; exact
    for poly, other in ((p, q), (q, p)):
        for a, b in poly.edges():
            e = b - a
            if all(cross(e, v - a).sign() <= 0 for v in other.vertices):
                return False
    return True


def interiors_overlap(p: Polygon, q: Polygon) -> bool:
    bp, bq = p.bbox(), q.bbox()
    if bp[2] < bq[0] - 1e-9 or bq[2] < bp[0] - 1e-9 or bp[3] < bq[1] - 1e-9 or bq[3] < bp[1] - 1e-9:
        return False
    if p.is_convex() and q.is_convex():
        return _convex_interiors_overlap(p, q)
    return any(
        _convex_interiors_overlap(s, t) for s in p.triangles() for t in q.triangles()
    )


def polygons_touch(p: Polygon, q: Polygon) -> bool:
    """Closed polygons intersect, assuming their interiors are disjoint."""
    bp, bq = p.bbox(), q.bbox()
    if bp[2] < bq[0] - 1e-9 or bq[2] < bp[0] - 1e-9 or bp[3] < bq[1] - 1e-9 or bq[3] < bp[1] - 1e-9:
        return False
    return (any(q.contains_on_boundary(v) for v in p.vertices)
            or any(p.contains_on_boundary(v) for v in q.vertices))


def polygon_relation(p: Polygon, q: Polygon):
    """Exact relation between two polygons.

    Returns ``(Relation.X, edges)`` where ``edges`` lists ``(i, j)`` pairs of
    edge indices whose closed segments coincide (only for ``FULL_EDGE``).
    """
    for poly in (p, q):
        if poly.signed_area2().is_zero():
            raise ValueError("degenerate polygon")
    if interiors_overlap(p, q):
        return Relation.OVERLAP, []
    if not polygons_touch(p, q):
        return Relation.DISJOINT, []
    shared = []
    for i, (a, b) in enumerate(p.edges()):
        for j, (c, d) in enumerate(q.edges()):
            if (a == c and b == d) or (a == d and b == c):
                shared.append((i, j))
    if shared:
        return Relation.FULL_EDGE, shared
    return Relation.CONTACT, []


polygon_predicates = polygon_relation
