"""Substitution systems, patches and the pinwheel tile families.

A tile is a pair ``(prototile id, Motion)``; its region is the image of the
prototile polygon under the motion.  Prototiles may carry rotational
symmetries (the rectangles of the kite-rectangle system are invariant under
a half turn); tile motions are then stored in a canonical form modulo those
symmetries so that one geometric tile has exactly one representation.

The triangle rule is built from the geometric construction (drop the
altitude onto the hypotenuse, split the larger piece at its edge midpoints)
and is checked by the covering invariant.  The kite-rectangle rule is
derived from it rather than transcribed.
"""
from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .exact import (
    ONE,
    SQRT5,
    ZERO,
    Motion,
    Point,
    Polygon,
    QSqrt5,
    Relation,
    cross,
    dot,
    interiors_overlap,
    on_segment,
    polygon_relation,
    polygons_touch,
)


class TilingError(ValueError):
    pass


@dataclass
class Prototile:
    """A prototile in standard position.

    ``symmetries`` lists the non-identity rotations mapping the tile (and
    its substitution) onto itself.
    """

    id: str
    kind: str
    shape: Polygon
    symmetries: list = field(default_factory=list)

    def frames(self, g: Motion) -> list[Motion]:
        """All motions placing this prototile onto the region ``g(shape)``."""
        return [g] + [g.compose(s) for s in self.symmetries]

    def canonical(self, g: Motion) -> Motion:
        if not self.symmetries:
            return g
        return min(self.frames(g), key=Motion.key)


Tile = tuple  # (prototile id, Motion)


class SubstitutionSystem:
    """Prototiles, an inflation factor and child placements.

    ``rules[p]`` lists ``(child id, motion)`` with the child region lying in
    ``inflation * shape(p)``.
    """

    def __init__(self, prototiles: Sequence[Prototile], inflation: QSqrt5,
                 rules: dict, name: str = "", verify: bool = True,
                 decompositions: Optional[dict] = None):
        self.name = name
        self.prototiles = {p.id: p for p in prototiles}
        self.order = [p.id for p in prototiles]
        self.inflation = inflation
        self.rules = {
            pid: [(c, self.prototiles[c].canonical(m)) for c, m in rules[pid]] for pid in self.order
        }
        self.decompositions = decompositions or {}
        if verify:
            self.verify()

    def proto(self, pid: str) -> Prototile:
        return self.prototiles[pid]

    def region(self, tile: Tile) -> Polygon:
        pid, g = tile
        return self.prototiles[pid].shape.transformed(g)

    def inflate_motion(self, g: Motion) -> Motion:
        lam = self.inflation
        return Motion(g.c, g.s, g.tx * lam, g.ty * lam, check=False)

    def children(self, tile: Tile) -> list[Tile]:
        pid, g = tile
        G = self.inflate_motion(g)
        return [(c, self.prototiles[c].canonical(G.compose(m))) for c, m in self.rules[pid]]

    def canonical_tile(self, tile: Tile) -> Tile:
        return tile[0], self.prototiles[tile[0]].canonical(tile[1])

    def verify(self) -> None:
        """Children tile the inflated prototile exactly."""
        lam2 = self.inflation * self.inflation
        for pid in self.order:
            p = self.prototiles[pid]
            for s in p.symmetries:
                if sorted(v.key() for v in p.shape.transformed(s).vertices) != sorted(
                        v.key() for v in p.shape.vertices):
                    raise TilingError(f"declared symmetry of {pid} does not preserve its shape")
            big = p.shape.scaled(self.inflation)
            kids = [self.region((c, m)) for c, m in self.rules[pid]]
            total = ZERO
            for k in kids:
                total = total + k.area()
            if total != big.area() or big.area() != p.shape.area() * lam2:
                raise TilingError(f"children of {pid} do not cover the inflated tile (area)")
            for k in kids:
                for v in k.vertices:
                    if big.contains(v) < 0:
                        raise TilingError(f"a child of {pid} leaves the inflated tile")
                if big.contains(k.centroid()) < 0:
                    raise TilingError(f"a child of {pid} leaves the inflated tile")
            for i in range(len(kids)):
                for j in range(i + 1, len(kids)):
                    if interiors_overlap(kids[i], kids[j]):
                        raise TilingError(f"children {i} and {j} of {pid} overlap")
            # symmetric prototiles need symmetric rules
            for s in p.symmetries:
                a = sorted((c, m.key()) for c, m in self.children((pid, Motion.identity())))
                b = sorted((c, m.key()) for c, m in self.children((pid, s)))
                if a != b:
                    raise TilingError(f"rule of {pid} is not invariant under its symmetry")

    def count_matrix(self) -> list[list[int]]:
        """Entry (i, j): copies of prototile i among the children of j."""
        idx = {p: i for i, p in enumerate(self.order)}
        M = [[0] * len(self.order) for _ in self.order]
        for j, pid in enumerate(self.order):
            for c, _ in self.rules[pid]:
                M[idx[c]][j] += 1
        return M

    def is_primitive(self, max_power: int = 4) -> bool:
        from .intlin import matmul

        M = self.count_matrix()
        P = M
        for _ in range(max_power):
            if all(x > 0 for row in P for x in row):
                return True
            P = matmul(P, M)
        return False

    # -- JSON --------------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "name": self.name,
            "inflation": str(self.inflation),
            "prototiles": [
                {
                    "id": p.id,
                    "kind": p.kind,
                    "vertices": [v.to_json() for v in p.shape.vertices],
                    "symmetries": [s.to_json() for s in p.symmetries],
                }
                for p in (self.prototiles[i] for i in self.order)
            ],
            "rules": {pid: [{"child": c, "motion": m.to_json()} for c, m in self.rules[pid]]
                      for pid in self.order},
        }

    @classmethod
    def from_json(cls, data: dict) -> "SubstitutionSystem":
        protos = [
            Prototile(
                d["id"],
                d.get("kind", "polygon"),
                Polygon([Point.from_json(v) for v in d["vertices"]]),
                [Motion.from_json(s) for s in d.get("symmetries", [])],
            )
            for d in data["prototiles"]
        ]
        rules = {pid: [(r["child"], Motion.from_json(r["motion"])) for r in lst]
                 for pid, lst in data["rules"].items()}
        return cls(protos, QSqrt5.parse(data["inflation"]), rules, name=data.get("name", ""))

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1)


# -- patches ----------------------------------------------------------------

class Patch:
    """A finite set of tiles of one substitution system."""

    def __init__(self, system: SubstitutionSystem, tiles: Iterable[Tile],
                 center: Optional[int] = None):
        self.system = system
        self.tiles = [system.canonical_tile(t) for t in tiles]
        self.center = center
        self._regions = None
        self._grid = None

    def __len__(self):
        return len(self.tiles)

    def regions(self) -> list[Polygon]:
        if self._regions is None:
            self._regions = [self.system.region(t) for t in self.tiles]
        return self._regions

    def area(self) -> QSqrt5:
        total = ZERO
        for r in self.regions():
            total = total + r.area()
        return total

    # spatial index on float bounding boxes; exact tests decide
    def _index(self):
        if self._grid is None:
            regs = self.regions()
            cell = 2.5
            grid = defaultdict(list)
            for i, r in enumerate(regs):
                x0, y0, x1, y1 = r.bbox()
                for gx in range(int((x0 - 1e-6) // cell), int((x1 + 1e-6) // cell) + 1):
                    for gy in range(int((y0 - 1e-6) // cell), int((y1 + 1e-6) // cell) + 1):
                        grid[(gx, gy)].append(i)
            self._grid = (cell, grid)
        return self._grid

    def near(self, poly: Polygon) -> set[int]:
        cell, grid = self._index()
        x0, y0, x1, y1 = poly.bbox()
        out = set()
        for gx in range(int((x0 - 1e-6) // cell), int((x1 + 1e-6) // cell) + 1):
            for gy in range(int((y0 - 1e-6) // cell), int((y1 + 1e-6) // cell) + 1):
                out.update(grid.get((gx, gy), ()))
        return out

    def touching(self, i: int) -> list[int]:
        """Indices of tiles whose closed regions meet tile ``i`` (excluding i)."""
        regs = self.regions()
        r = regs[i]
        return sorted(j for j in self.near(r) if j != i and polygons_touch(r, regs[j]))

    def touching_region(self, poly: Polygon) -> list[int]:
        regs = self.regions()
        return sorted(j for j in self.near(poly) if polygons_touch(poly, regs[j]))

    def validate(self) -> None:
        regs = self.regions()
        for i in range(len(regs)):
            for j in self.near(regs[i]):
                if j > i and interiors_overlap(regs[i], regs[j]):
                    raise TilingError(f"tiles {i} and {j} overlap")

    def is_surrounded(self, poly: Polygon, exclude: Optional[int] = None) -> bool:
        """True when the patch covers a neighbourhood of the closed region ``poly``.

        ``poly`` is assumed to be a union of patch tiles or interior-disjoint
        from them (the usual situation: a tile of the patch).
        """
        regs = self.regions()
        nearby = [j for j in self.near(poly) if polygons_touch(poly, regs[j])]
        polys = [regs[j] for j in nearby]
        # breakpoints along the boundary of poly
        for a, b in poly.edges():
            pts = {a, b}
            for q in polys:
                for v in q.vertices:
                    if on_segment(v, a, b):
                        pts.add(v)
            d = b - a
            ordered = sorted(pts, key=lambda p: float(dot(p - a, d)))
            # exact ordering for safety
            ordered.sort(key=lambda p: dot(p - a, d))
            checks = list(ordered)
            checks += [ordered[k].midpoint(ordered[k + 1]) for k in range(len(ordered) - 1)]
            for x in checks:
                if not _point_covered(x, polys):
                    return False
        return True

    def to_json(self) -> dict:
        return {"tiles": [{"prototile": p, "motion": m.to_json()} for p, m in self.tiles],
                "center": self.center}


def _sectors_at(x: Point, poly: Polygon) -> Optional[list[tuple[Point, Point]]]:
    """Angular sectors (start, end directions, ccw) of ``poly`` at ``x``.

    ``None`` means ``x`` is in the interior of ``poly`` (full coverage).
    """
    loc = poly.contains(x)
    if loc < 0:
        return []
    if loc > 0:
        return None
    v = poly.vertices
    n = len(v)
    for i in range(n):
        if v[i] == x:
            return [(v[(i + 1) % n] - x, v[i - 1] - x)]
    for i in range(n):
        a, b = v[i], v[(i + 1) % n]
        if on_segment(x, a, b):
            return [(b - a, a - b)]
    return []


def _same_direction(u: Point, w: Point) -> bool:
    return cross(u, w).is_zero() and dot(u, w).sign() > 0


def _point_covered(x: Point, polys: Sequence[Polygon]) -> bool:
    sectors = []
    for q in polys:
        s = _sectors_at(x, q)
        if s is None:
            return True
        sectors.extend(s)
    if not sectors:
        return False
    # non-overlapping sectors cover the full turn iff every end meets a start
    for _, end in sectors:
        if not any(_same_direction(end, st) for st, _ in sectors):
            return False
    return True


def substitute(p: Patch, n: int = 1, system: Optional[SubstitutionSystem] = None) -> Patch:
    """Apply the substitution ``n`` times to every tile of ``p``."""
    s = system or p.system
    tiles = list(p.tiles)
    for _ in range(n):
        tiles = [c for t in tiles for c in s.children(t)]
    return Patch(s, tiles)


def single(system: SubstitutionSystem, pid: str, g: Optional[Motion] = None) -> Patch:
    return Patch(system, [(pid, g or Motion.identity())], center=0)


# -- coronas ----------------------------------------------------------------

def corona(p: Patch, i: int, check: bool = True) -> Patch:
    """Tile ``i`` and every tile meeting it, in the frame of tile ``i``.

    The result is canonical: the central tile sits at the identity motion,
    chosen among its symmetric frames to minimise the sorted tile list.
    """
    s = p.system
    if check and not p.is_surrounded(p.regions()[i]):
        raise TilingError("tile is not interior to the patch; grow the patch")
    nbrs = p.touching(i)
    members = [p.tiles[i]] + [p.tiles[j] for j in nbrs]
    key, frame = corona_key(s, members)
    tiles = [s.canonical_tile((q, frame.compose(g))) for q, g in members]
    tiles = [tiles[0]] + sorted(tiles[1:], key=lambda t: (t[0], t[1].key()))
    out = Patch(s, tiles, center=0)
    out.key = key
    return out


def corona_key(s: SubstitutionSystem, members: Sequence[Tile]) -> tuple:
    """Canonical key of a corona given as ``[center, neighbours...]``.

    Returns ``(key, frame)`` where ``frame`` maps the members into the
    canonical position (center at the identity).
    """
    pid, g = members[0]
    best = None
    for h in s.proto(pid).frames(g):
        f = h.inverse()
        items = sorted((q, s.proto(q).canonical(f.compose(m)).key()) for q, m in members[1:])
        k = (pid, tuple(items))
        if best is None or k < best[0]:
            best = (k, f)
    return best


# -- the pinwheel triangle system -------------------------------------------

TRI_STD = {
    # (A, C, B): A at the end of the long leg, C the right angle
    "TL": (Point(0, 0), Point(2, 0), Point(2, 1)),
    "TR": (Point(2, 0), Point(0, 0), Point(0, 1)),
}


def triangle_chirality(A: Point, C: Point, B: Point) -> str:
    return "TL" if cross(C - A, B - A).sign() > 0 else "TR"


def identify_triangle(A: Point, C: Point, B: Point) -> Tile:
    """Prototile and motion of the 1-2-sqrt5 triangle with corners A, C, B."""
    pid = triangle_chirality(A, C, B)
    sA, sC, _ = TRI_STD[pid]
    d = C - A
    e = sC - sA
    # rotation taking e to d (both length 2)
    n2 = e.norm2()
    c = dot(e, d) / n2
    s = cross(e, d) / n2
    L = Motion(c, s)
    la = L(sA)
    g = Motion(c, s, A.x - la.x, A.y - la.y, check=False)
    if g(TRI_STD[pid][2]) != B:
        raise TilingError("points do not form a 1-2-sqrt5 triangle")
    return pid, g


def triangle_corners(tile: Tile) -> tuple[Point, Point, Point]:
    pid, g = tile
    return tuple(g(p) for p in TRI_STD[pid])


def _triangle_rule(A: Point, C: Point, B: Point) -> list[tuple[Point, Point, Point]]:
    """Five children of the triangle inflated to corners A, C, B.

    F is the foot of the altitude from C; the piece A-F-C is cut at the
    midpoints M1 (of AF), M2 (of FC) and M3 (of AC).
    """
    ab = B - A
    t = dot(C - A, ab) / ab.norm2()
    F = A + ab.scale(t)
    M1, M2, M3 = A.midpoint(F), F.midpoint(C), A.midpoint(C)
    # the middle of the large piece is a 2x1 rectangle cut along F-M3,
    # giving the two children of the parent's own chirality
    return [
        (C, F, B),
        (A, M1, M3),
        (M3, M2, C),
        (F, M1, M3),
        (M3, M2, F),
    ]


def _triangle_polygon(pid: str) -> Polygon:
    A, C, B = TRI_STD[pid]
    if cross(C - A, B - A).sign() > 0:
        return Polygon([A, C, B])
    return Polygon([A, B, C])


def pinwheel_triangle_system() -> SubstitutionSystem:
    """Left and right 1-2-sqrt5 triangles, inflation sqrt5, five children each."""
    protos, rules = [], {}
    for pid, kind in (("TL", "triangle-left"), ("TR", "triangle-right")):
        protos.append(Prototile(pid, kind, _triangle_polygon(pid)))
        A, C, B = (p.scale(SQRT5) for p in TRI_STD[pid])
        rules[pid] = [identify_triangle(*kid) for kid in _triangle_rule(A, C, B)]
    return SubstitutionSystem(protos, SQRT5, rules, name="pinwheel-triangles")


# -- kite-rectangle system --------------------------------------------------

def _kr_decompositions() -> tuple[list[Prototile], dict]:
    half = Motion.half_turn(Point(1, QSqrt5(1, 0, 2)))
    rect = Polygon([Point(0, 0), Point(2, 0), Point(2, 1), Point(0, 1)])
    kite = Polygon([Point(0, 0), Point(2, 0), Point(2, 1), Point(QSqrt5(6, 0, 5), QSqrt5(8, 0, 5))])
    # mirror image of the left triangle across its hypotenuse
    _, kmot = identify_triangle(Point(0, 0), Point(QSqrt5(6, 0, 5), QSqrt5(8, 0, 5)), Point(2, 1))
    protos = [
        Prototile("K", "kite", kite),
        Prototile("L", "rect-left", rect, [half]),
        Prototile("R", "rect-right", rect, [half]),
    ]
    dec = {
        "K": [("TL", Motion.identity()), ("TR", kmot)],
        "L": [("TL", Motion.identity()), ("TL", half)],
        "R": [("TR", Motion.identity()), ("TR", half)],
    }
    return protos, dec


def split_kr(p: Patch, tri: SubstitutionSystem) -> Patch:
    """Replace every kite/rectangle by its two triangles."""
    dec = p.system.decompositions
    tiles = [(q, g.compose(m)) for pid, g in p.tiles for q, m in dec[pid]]
    return Patch(tri, tiles)


@dataclass
class MergeResult:
    patch: Patch
    dropped: int


def merge_hypotenuses(p: Patch, kr: SubstitutionSystem) -> MergeResult:
    """Glue triangles along shared hypotenuses into kites and rectangles.

    Triangles whose hypotenuse is not shared inside the patch are dropped
    and counted.
    """
    by_hyp = defaultdict(list)
    for t in p.tiles:
        A, _, B = triangle_corners(t)
        by_hyp[frozenset((A, B))].append(t)
    out, dropped = [], 0
    for key, ts in by_hyp.items():
        if len(ts) == 1:
            dropped += 1
            continue
        if len(ts) > 2:
            raise TilingError("more than two triangles on one hypotenuse")
        out.append(_merge_pair(ts[0], ts[1], kr))
    out.sort(key=lambda t: (t[0], t[1].key()))
    return MergeResult(Patch(kr, out), dropped)


def _merge_pair(t1: Tile, t2: Tile, kr: SubstitutionSystem) -> Tile:
    want = sorted([(t1[0], t1[1].key()), (t2[0], t2[1].key())])
    for pid in kr.order:
        parts = kr.decompositions[pid]
        for q, m in parts:
            if q != t1[0]:
                continue
            G = t1[1].compose(m.inverse())
            got = sorted((qq, G.compose(mm).key()) for qq, mm in parts)
            if got == want:
                return kr.canonical_tile((pid, G))
    raise TilingError("hypotenuse pair forms neither a kite nor a rectangle")


def derive_kr_system(tri: Optional[SubstitutionSystem] = None) -> SubstitutionSystem:
    """Kite-rectangle substitution: split, substitute the triangles twice, merge."""
    tri = tri or pinwheel_triangle_system()
    protos, dec = _kr_decompositions()
    stub = SubstitutionSystem(protos, SQRT5 * SQRT5, {p.id: [] for p in protos},
                              verify=False, decompositions=dec)
    rules = {}
    for proto in protos:
        pieces = split_kr(single(stub, proto.id), tri)
        twice = substitute(pieces, 2)
        merged = merge_hypotenuses(twice, stub)
        if merged.dropped:
            raise TilingError(f"substituted {proto.id} leaves unmatched hypotenuses")
        rules[proto.id] = list(merged.patch.tiles)
    return SubstitutionSystem(protos, QSqrt5(5), rules, name="pinwheel-kite-rectangle",
                              decompositions=dec)


def power_system(s: SubstitutionSystem, n: int) -> SubstitutionSystem:
    """The system whose one step is ``n`` steps of ``s``."""
    if n < 1:
        raise TilingError("substitution power must be at least 1")
    if n == 1:
        return s
    protos = [s.proto(pid) for pid in s.order]
    rules = {pid: list(substitute(single(s, pid), n).tiles) for pid in s.order}
    return SubstitutionSystem(protos, s.inflation ** n, rules, name=f"{s.name}^{n}",
                              verify=False, decompositions=s.decompositions)


def render_svg(p: Patch, width: int = 800, stroke: float = 0.5) -> str:
    """SVG drawing of a patch, one ``<polygon>`` per tile."""
    regs = p.regions()
    xs = [v.fx for r in regs for v in r.vertices]
    ys = [v.fy for r in regs for v in r.vertices]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    span = max(x1 - x0, y1 - y0) or 1.0
    k = width / span
    height = int(round((y1 - y0) * k)) or 1
    palette = ["#e6b655", "#5f9ea0", "#c8637a", "#8fbc8f", "#9370db", "#d2a679"]
    colour = {pid: palette[i % len(palette)] for i, pid in enumerate(p.system.order)}
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
           f'viewBox="0 0 {width} {height}">']
    for (pid, _), r in zip(p.tiles, regs):
        pts = " ".join(f"{(v.fx - x0) * k:.3f},{(y1 - v.fy) * k:.3f}" for v in r.vertices)
        out.append(f'<polygon points="{pts}" fill="{colour[pid]}" stroke="black" '
                   f'stroke-width="{stroke}" data-tile="{pid}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


# -- toy systems used for sanity checks --------------------------------------

def square_system() -> SubstitutionSystem:
    """Unit square split into four half-size copies (no declared symmetry)."""
    sq = Polygon([Point(0, 0), Point(1, 0), Point(1, 1), Point(0, 1)])
    rules = {"S": [("S", Motion.translation(x, y)) for x in (0, 1) for y in (0, 1)]}
    return SubstitutionSystem([Prototile("S", "square", sq)], QSqrt5(2), rules, name="square")


BUILTIN = {
    "triangle": pinwheel_triangle_system,
    "kr": derive_kr_system,
    "square": square_system,
}
