"""Half-turn symmetric centers of a collared tiling and the hull cohomology.

A symmetric center is a point ``p`` whose star (the collared tiles that
contain ``p``) is carried to itself, labels included, by the rotation by
pi about ``p``.  Either a single symmetric tile has ``p`` as its midpoint,
or two distinct tiles of the star with the same label are swapped by the
rotation; so candidates are the fixed points of half-turns relating two
same-label tiles, plus the midpoints of symmetric tiles.  Candidates are
collected inside substituted collared tiles and substituted touching
pairs (where the star is complete), and the set of star classes is closed
under substitution, which sends the center ``p`` to ``inflation * p``.
A center fixed by substitution sits on supertile boundaries at every
level, so it is only reached through this closure.

The hull cohomology is then assembled from the cohomology of the quotient
by rotations and the number of periodic centers.  This step is a formula
valid only in the regime where the quotient has a single Z_2 of torsion;
anything else is rejected.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from .collar import CollaredSystem
from .exact import Motion, Point, Polygon, QSqrt5
from .tiling import _point_covered
from .limit import LimitGroup

TILE_MIDPOINT = "tile-midpoint"
VERTEX_OF_PATCH = "vertex-of-patch"


class SingularityError(ValueError):
    pass


@dataclass
class SymmetricCenter:
    """One class of symmetric centers; ``tiles`` is its star, centered at the origin."""

    key: tuple
    tiles: list  # [(label, Motion)]
    kind: str
    index: int = -1
    image: Optional[int] = None  # index of the class of the substituted center
    periodic: bool = False
    period: int = 0
    orbit: list = field(default_factory=list)  # class indices visited from this one

    @property
    def labels(self) -> list[str]:
        return sorted(lab for lab, _ in self.tiles)

    def to_json(self) -> dict:
        return {
            "index": self.index,
            "kind": self.kind,
            "labels": self.labels,
            "tiles": [{"label": lab, "motion": m.to_json()} for lab, m in self.tiles],
            "image": self.image,
            "periodic": self.periodic,
            "period": self.period,
            "orbit": list(self.orbit),
        }


def _region(cs: CollaredSystem, lab: str, g: Motion) -> Polygon:
    return cs.base.region((cs.by_label[lab].base, g))


def _rotation_part(g: Motion) -> Motion:
    return Motion(g.c, g.s, 0, 0, check=False)


def _canon(cs: CollaredSystem, tiles: list) -> tuple[tuple, Motion]:
    """Rotation-invariant key of a star centered at the origin."""
    best = None
    for lab, g in tiles:
        for f in cs.by_label[lab].frames(g):
            rinv = _rotation_part(f).inverse()
            key = tuple(sorted((l2, cs.by_label[l2].canonical(rinv.compose(m)).key())
                               for l2, m in tiles))
            if best is None or key < best[0]:
                best = (key, rinv)
    return best


def is_symmetric_star(cs: CollaredSystem, tiles: list, center: Point) -> bool:
    """Exact test: the half-turn about ``center`` permutes the star, labels included."""
    R = Motion.half_turn(center)
    have = {(lab, cs.by_label[lab].canonical(g).key()) for lab, g in tiles}
    for lab, g in tiles:
        if (lab, cs.by_label[lab].canonical(R.compose(g)).key()) not in have:
            return False
    return True


def _star_at(cs: CollaredSystem, tiles: list, regions: list, p: Point) -> list:
    out = []
    for (lab, g), reg in zip(tiles, regions):
        x0, y0, x1, y1 = reg.bbox()
        if x0 - 1e-9 <= p.fx <= x1 + 1e-9 and y0 - 1e-9 <= p.fy <= y1 + 1e-9:
            if reg.contains(p) >= 0:
                out.append((lab, g))
    return out


def _recentered(tiles: list, p: Point) -> list:
    T = Motion.translation(-p.x, -p.y)
    return [(lab, T.compose(g)) for lab, g in tiles]


def collared_patch(cs: CollaredSystem, label: str, level: int,
                   g: Optional[Motion] = None) -> list:
    """Collared tiles of ``sigma^level`` applied to ``label`` placed at ``g``."""
    tiles = [(label, g or Motion.identity())]
    for _ in range(level):
        nxt = []
        for lab, m in tiles:
            nxt.extend(cs.children(lab, m))
        tiles = nxt
    return tiles


def _half_turn_between(cs: CollaredSystem, lab: str, g1: Motion, g2: Motion) -> Optional[Point]:
    """Center of a half-turn taking the tile at g1 onto the tile at g2, if any."""
    for f in cs.by_label[lab].frames(g2):
        h = f.compose(g1.inverse())
        if h.c == -1 and h.s == 0:
            half = QSqrt5(1, 0, 2)
            return Point(h.tx * half, h.ty * half)
    return None


def _candidates(cs: CollaredSystem, tiles: list, regions: list) -> list[Point]:
    """Tile corners, symmetric-tile midpoints and same-label half-turn centers."""
    pts = {}
    for r in regions:
        for v in r.vertices:
            pts[v.key()] = v
    cents = [((r.bbox()[0] + r.bbox()[2]) / 2, (r.bbox()[1] + r.bbox()[3]) / 2) for r in regions]
    by_label = {}
    for i, (lab, _) in enumerate(tiles):
        by_label.setdefault(lab, []).append(i)
    cell = 3.0
    for lab, idx in by_label.items():
        if cs.by_label[lab].symmetries:
            for i in idx:
                c = regions[i].centroid()
                pts[c.key()] = c
        grid = {}
        for i in idx:
            grid.setdefault((math.floor(cents[i][0] / cell), math.floor(cents[i][1] / cell)), []).append(i)
        for i in idx:
            gx, gy = math.floor(cents[i][0] / cell), math.floor(cents[i][1] / cell)
            for dx in (-1, 0, 1):
                for dy in (-1, 0, 1):
                    for j in grid.get((gx + dx, gy + dy), []):
                        if j <= i or math.dist(cents[i], cents[j]) > cell:
                            continue
                        p = _half_turn_between(cs, lab, tiles[i][1], tiles[j][1])
                        if p is not None and regions[i].contains(p) >= 0:
                            pts[p.key()] = p
    return list(pts.values())


class _CenterRegistry:
    def __init__(self, cs: CollaredSystem):
        self.cs = cs
        self.centers = []
        self.by_key = {}

    def add(self, star: list) -> SymmetricCenter:
        """Register a symmetric star centered at the origin."""
        key, rinv = _canon(self.cs, star)
        c = self.by_key.get(key)
        if c is None:
            tiles = sorted(((lab, self.cs.by_label[lab].canonical(rinv.compose(g))) for lab, g in star),
                           key=lambda t: (t[0], t[1].key()))
            kind = TILE_MIDPOINT if len(tiles) == 1 else VERTEX_OF_PATCH
            c = SymmetricCenter(key, tiles, kind, index=len(self.centers))
            self.centers.append(c)
            self.by_key[key] = c
        return c


def substituted_star(cs: CollaredSystem, star: list) -> list:
    """Star of the origin after one substitution of a star centered there."""
    origin = Point(0, 0)
    out = []
    for lab, g in star:
        for c, m in cs.children(lab, g):
            if _region(cs, c, m).contains(origin) >= 0:
                out.append((c, m))
    return out


def _image(reg: _CenterRegistry, c: SymmetricCenter) -> SymmetricCenter:
    star = substituted_star(reg.cs, c.tiles)
    if not is_symmetric_star(reg.cs, star, Point(0, 0)):
        raise SingularityError(f"substitution broke the symmetry of center {c.index}")
    return reg.add(star)


class _StarRegistry:
    """Star classes (up to rigid motion, center at the origin)."""

    def __init__(self, cs: CollaredSystem):
        self.cs = cs
        self.stars = {}  # key -> star
        self.order = []

    def add(self, star: list) -> tuple:
        key, rinv = _canon(self.cs, star)
        if key not in self.stars:
            self.stars[key] = [(lab, self.cs.by_label[lab].canonical(rinv.compose(g)))
                               for lab, g in star]
            self.order.append(key)
        return key

    def scan(self, tiles: list, covered: list[Polygon]) -> None:
        """Register the star of every candidate point whose star is complete."""
        regions = [_region(self.cs, lab, g) for lab, g in tiles]
        for p in _candidates(self.cs, tiles, regions):
            if _point_covered(p, covered):
                self.add(_recentered(_star_at(self.cs, tiles, regions, p), p))


def star_census(cs: CollaredSystem, pairs: Optional[list] = None) -> dict:
    """Every star class at candidate points, closed under substitution at the center.

    Seeds are the points strictly inside a substituted collared tile and
    the points inside a substituted touching pair; every star of the
    tiling is reached from these by substituting at the center.
    """
    from .apx import adjacent_pairs

    reg = _StarRegistry(cs)
    lam = cs.inflation
    for t in cs.tiles:
        reg.scan(collared_patch(cs, t.label, 1), [cs.shape(t.label).scaled(lam)])
    for a, b, h in (pairs if pairs is not None else adjacent_pairs(cs)):
        tiles = collared_patch(cs, a, 1) + collared_patch(cs, b, 1, h)
        outer = [cs.shape(a).scaled(lam), _region(cs, b, h).scaled(lam)]
        reg.scan(tiles, outer)
    done = 0
    while done < len(reg.order):
        reg.add(substituted_star(cs, reg.stars[reg.order[done]]))
        done += 1
    return reg.stars


def find_symmetric_centers(cs: CollaredSystem, pairs: Optional[list] = None) -> list[SymmetricCenter]:
    """All classes of half-turn symmetric centers, with their substitution orbits."""
    stars = star_census(cs, pairs)
    reg = _CenterRegistry(cs)
    origin = Point(0, 0)
    for key, star in stars.items():
        if is_symmetric_star(cs, star, origin):
            reg.add(star)
    done = 0
    while done < len(reg.centers):
        c = reg.centers[done]
        c.image = _image(reg, c).index
        done += 1
    for c in reg.centers:
        c.periodic, c.period, c.orbit = _cycle(reg.centers, c.index)
    return reg.centers


def _cycle(centers: list, start: int) -> tuple[bool, int, list]:
    seen = [start]
    cur = centers[start].image
    while cur not in seen:
        seen.append(cur)
        cur = centers[cur].image
    if cur == start:
        return True, len(seen), seen
    return False, 0, seen


def orbit_periodicity(c: SymmetricCenter, cs: CollaredSystem, max_steps: Optional[int] = None) -> tuple[bool, int]:
    """Iterate substitution on the star of ``c``; periodic iff ``c`` lies on the cycle."""
    reg = _CenterRegistry(cs)
    start = reg.add(c.tiles)
    cur = start
    steps = max_steps or 10 * len(cs) + 10
    order = [start.key]
    for _ in range(steps):
        cur = _image(reg, cur)
        if cur.key == start.key:
            return True, len(order)
        if cur.key in order:
            return False, 0
        order.append(cur.key)
    raise SingularityError("orbit did not close")  # finitely many classes


def count_cone_singularities(centers: list[SymmetricCenter]) -> int:
    return sum(1 for c in centers if c.periodic)


# -- hull assembly ------------------------------------------------------------

@dataclass
class HullCohomology:
    H0: LimitGroup
    H1: LimitGroup
    H2: LimitGroup
    H3: LimitGroup
    E11: LimitGroup
    E20: LimitGroup
    singularities: int

    def groups(self) -> list[LimitGroup]:
        return [self.H0, self.H1, self.H2, self.H3]

    def to_json(self) -> dict:
        out = {f"H{i}": g.to_json() for i, g in enumerate(self.groups())}
        out["E11"] = self.E11.to_json()
        out["E20"] = self.E20.to_json()
        out["singularities"] = self.singularities
        return out


def assemble_hull(h0: LimitGroup, h1: LimitGroup, h2: LimitGroup, c: int) -> HullCohomology:
    """Cohomology of the hull from that of its quotient by rotations.

    Valid only when all three groups are classified (exact or glued),
    ``c >= 1`` and the degree-2 group has torsion exactly Z_2; the general
    case needs the full spectral sequence and is refused.  A glued
    degree-2 group passes its gluing on to the degree-2 and degree-3 terms.
    """
    if not all(g.is_classified for g in (h0, h1, h2)):
        raise SingularityError("hull assembly needs classified limits")
    if c < 1:
        raise SingularityError("hull assembly needs at least one cone singularity")
    if h2.torsion != [2]:
        raise SingularityError(
            f"degree-2 torsion {h2.torsion} is outside the supported regime (exactly Z_2); "
            "the general case needs the full spectral sequence")
    H1 = h0.direct_sum(h1)
    E11 = h1.direct_sum(LimitGroup([], 0, [2] * (c - 1)))
    E20 = h2.torsion_free_part()
    H2 = E11.direct_sum(E20)
    return HullCohomology(h0, H1, H2, h2, E11, E20, c)
