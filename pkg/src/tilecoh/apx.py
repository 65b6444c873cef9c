"""The Anderson-Putnam complex of a collared system and its cohomology.

Faces are the collared tiles in their standard frames.  The boundary of a
face is cut at every point where a tile of its corona has a vertex, which
makes the shared part of two touching tiles a union of whole sub-edges of
both.  Sub-edges and vertices are glued whenever two collared tiles touch
somewhere in the tiling (found by closing the set of touching pairs under
substitution) and whenever a collared tile is symmetric.

If the gluing forces an edge onto itself with reversed direction, every
copy of that edge is cut at its midpoint and the gluing is redone, so the
resulting CW structure is always regular on edges.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from . import intlin as il
from .abgrp import FgAbGroup, GroupHom, subquotient
from .collar import CollaredSystem
from .exact import Motion, Point, Polygon, QSqrt5, dot, on_segment, polygons_touch


class ComplexError(ValueError):
    pass


class _UnionFind:
    """Union-find with a parity bit (orientation) on every element."""

    def __init__(self):
        self.parent = {}
        self.parity = {}

    def add(self, x):
        if x not in self.parent:
            self.parent[x] = x
            self.parity[x] = 0

    def find(self, x):
        path = []
        while self.parent[x] != x:
            path.append(x)
            x = self.parent[x]
        # compress, accumulating parity from the root downwards
        acc = 0
        for y in reversed(path):
            acc ^= self.parity[y]
            self.parity[y] = acc
            self.parent[y] = x
        return x

    def parity_of(self, x) -> int:
        self.find(x)
        return self.parity[x] if self.parent[x] != x else 0

    def union(self, a, b, flip: int = 0) -> bool:
        """Declare ``a == b`` (``flip`` = 1: with reversed orientation).

        Returns False on a parity contradiction.
        """
        ra, rb = self.find(a), self.find(b)
        pa, pb = self.parity_of(a), self.parity_of(b)
        if ra == rb:
            return (pa ^ pb) == flip
        self.parent[rb] = ra
        self.parity[rb] = pa ^ pb ^ flip
        return True


@dataclass
class CWComplex2:
    """A 2-dimensional CW complex with integer coboundary matrices."""

    vertices: list  # representative (face label, boundary index)
    edges: list  # representative (face label, sub-edge index), oriented as in that face
    faces: list  # face labels
    edge_ends: list  # (tail vertex, head vertex)
    face_boundary: list  # per face: attaching word [(edge index, +1/-1), ...], ccw
    delta0: list = field(default_factory=list)
    delta1: list = field(default_factory=list)
    # bookkeeping for the induced map
    points: dict = field(default_factory=dict)  # face -> boundary points (ccw)
    vertex_of: dict = field(default_factory=dict)  # (face, i) -> vertex index
    edge_of: dict = field(default_factory=dict)  # (face, i) -> (edge index, sign)
    subdivided: int = 0
    face_order: list = field(default_factory=list)  # symmetry order of each face

    @property
    def counts(self) -> tuple[int, int, int]:
        return len(self.vertices), len(self.edges), len(self.faces)

    def euler_characteristic(self) -> int:
        v, e, f = self.counts
        return v - e + f

    def to_json(self) -> dict:
        v, e, f = self.counts
        return {
            "vertices": v,
            "edges": e,
            "faces": f,
            "face_labels": list(self.faces),
            "edge_ends": [list(x) for x in self.edge_ends],
            "face_boundary": [[[e_, s] for e_, s in b] for b in self.face_boundary],
            "delta0": self.delta0,
            "delta1": self.delta1,
        }


def _unit_cuts(a: Point, b: Point) -> list[Point]:
    """Points cutting a side of integer length n >= 2 into n unit pieces."""
    n2 = (b - a).norm2()
    if n2.b or n2.d != 1:
        return []
    n = math.isqrt(n2.a)
    if n * n != n2.a or n < 2:
        return []
    d = b - a
    return [a + d.scale(QSqrt5(j, 0, n)) for j in range(1, n)]


def _boundary_points(cs: CollaredSystem, label: str, extra: set,
                     unit_cuts: bool = True) -> list[Point]:
    """Cut points on the boundary of a collared tile, in ccw order."""
    t = cs.by_label[label]
    s = cs.base
    shape = s.proto(t.base).shape
    cands = set()
    for q, m in t.corona[1:]:
        cands.update(s.region((q, m)).vertices)
    if unit_cuts:
        for a, b in shape.edges():
            cands.update(_unit_cuts(a, b))
    cands |= {p for p in extra}
    out = []
    for a, b in shape.edges():
        pts = [p for p in cands if on_segment(p, a, b) and p != b]
        pts.append(a)
        d = b - a
        pts = sorted(set(pts), key=lambda p: dot(p - a, d))
        out.extend(pts)
    return out


def _pair_key(cs: CollaredSystem, a: str, b: str, h: Motion) -> tuple:
    best = None
    ta, tb = cs.by_label[a], cs.by_label[b]
    for x, y, rel, tx, ty in ((a, b, h, ta, tb), (b, a, h.inverse(), tb, ta)):
        for sa in [Motion.identity()] + tx.symmetries:
            sai = sa.inverse()
            for sb in [Motion.identity()] + ty.symmetries:
                m = sai.compose(rel).compose(sb)
                k = (x, y, m.key())
                if best is None or k < best[0]:
                    best = (k, (x, y, m))
    return best


def adjacent_pairs(cs: CollaredSystem) -> list[tuple[str, str, Motion]]:
    """All touching pairs ``(A, B, h)``: A at the identity, B at ``h``.

    Seeds are touching children inside one substituted tile; the set is
    then closed under substitution of pairs.
    """
    s = cs.base
    found = {}
    queue = []

    def add(a, ga, b, gb):
        key, rep = _pair_key(cs, a, b, ga.inverse().compose(gb))
        if key not in found:
            found[key] = rep
            queue.append(rep)

    for t in cs.tiles:
        kids = cs.children(t.label, Motion.identity())
        regs = [s.region((cs.by_label[c].base, m)) for c, m in kids]
        for i in range(len(kids)):
            for j in range(i + 1, len(kids)):
                if polygons_touch(regs[i], regs[j]):
                    add(kids[i][0], kids[i][1], kids[j][0], kids[j][1])
    while queue:
        a, b, h = queue.pop()
        ka = cs.children(a, Motion.identity())
        kb = cs.children(b, h)
        ra = [s.region((cs.by_label[c].base, m)) for c, m in ka]
        rb = [s.region((cs.by_label[c].base, m)) for c, m in kb]
        big_b = s.region((cs.by_label[b].base, h)).scaled(s.inflation)
        big_a = s.proto(cs.by_label[a].base).shape.scaled(s.inflation)
        # only children touching the other parent can touch its children
        near_a = [i for i in range(len(ka)) if polygons_touch(ra[i], big_b)]
        near_b = [j for j in range(len(kb)) if polygons_touch(rb[j], big_a)]
        for i in near_a:
            for j in near_b:
                if polygons_touch(ra[i], rb[j]):
                    add(ka[i][0], ka[i][1], kb[j][0], kb[j][1])
    return sorted(found.values(), key=lambda r: (r[0], r[1], r[2].key()))


def build_complex(cs: CollaredSystem, pairs: Optional[list] = None,
                  max_rounds: int = 10, unit_cuts: bool = True,
                  subdivide_folds: bool = True) -> CWComplex2:
    """Glue the collared tiles into the Anderson-Putnam complex.

    With ``unit_cuts`` every side of integer length ``n >= 2`` is also cut
    into unit pieces, giving every copy of a prototile the same vertex set
    apart from fold midpoints.  With ``subdivide_folds`` off, an edge glued
    to itself with reversed direction raises :class:`ComplexError`.
    """
    if pairs is None:
        pairs = adjacent_pairs(cs)
    extra = {t.label: set() for t in cs.tiles}
    for _ in range(max_rounds):
        result = _glue(cs, pairs, extra, unit_cuts)
        if isinstance(result, CWComplex2):
            result.subdivided = sum(len(v) for v in extra.values())
            return result
        # result lists self-reversed edge classes: cut them at midpoints
        if not subdivide_folds:
            label, a, b = result[0][0]
            raise ComplexError(f"edge {a}-{b} of {label} is glued to itself reversed")
        for members in result:
            for label, a, b in members:
                extra[label].add(a.midpoint(b))
    raise ComplexError("edge orientation conflict persists after subdivision")


def _glue(cs: CollaredSystem, pairs: list, extra: dict, unit_cuts: bool = True):
    s = cs.base
    labels = [t.label for t in cs.tiles]
    pts = {lab: _boundary_points(cs, lab, extra[lab], unit_cuts) for lab in labels}
    index = {lab: {p: i for i, p in enumerate(pts[lab])} for lab in labels}
    uv, ue = _UnionFind(), _UnionFind()
    for lab in labels:
        for i in range(len(pts[lab])):
            uv.add((lab, i))
            ue.add((lab, i))
    bad = set()

    def sub_edge(lab, i):
        P = pts[lab]
        return P[i], P[(i + 1) % len(P)]

    # symmetric collared tiles are glued to themselves
    for t in cs.tiles:
        P, idx = pts[t.label], index[t.label]
        for sym in t.symmetries:
            for i, p in enumerate(P):
                j = idx.get(sym(p))
                if j is None:
                    raise ComplexError(f"symmetry of {t.label} does not preserve its cut points")
                uv.union((t.label, i), (t.label, j))
                if not ue.union((t.label, i), (t.label, j), 0):
                    bad.add((t.label, i))
    # touching pairs
    for a, b, h in pairs:
        Pa, Pb = pts[a], pts[b]
        ib = index[b]
        hinv = h.inverse()
        # b's points brought into a's frame
        mapped = [h(q) for q in Pb]
        where = {q: j for j, q in enumerate(mapped)}
        for i, p in enumerate(Pa):
            j = where.get(p)
            if j is not None:
                uv.union((a, i), (b, j))
        na, nb = len(Pa), len(Pb)
        for i in range(na):
            j0 = where.get(Pa[i])
            j1 = where.get(Pa[(i + 1) % na])
            if j0 is None or j1 is None:
                continue
            # a traverses p->q; b must traverse q->p on a shared edge
            if (j1 + 1) % nb == j0:
                if not ue.union((a, i), (b, j1), 1):
                    bad.add((a, i))
        del hinv, ib
    if bad:
        groups = {}
        for x in bad:
            groups[ue.find(x)] = True
        members_out = []
        for root in groups:
            members = []
            for lab in labels:
                for i in range(len(pts[lab])):
                    if ue.find((lab, i)) == root:
                        p, q = sub_edge(lab, i)
                        members.append((lab, p, q))
            members_out.append(members)
        return members_out
    # assemble cells
    vid, vreps = {}, []
    vertex_of = {}
    for lab in labels:
        for i in range(len(pts[lab])):
            r = uv.find((lab, i))
            if r not in vid:
                vid[r] = len(vreps)
                vreps.append((lab, i))
            vertex_of[(lab, i)] = vid[r]
    eid, ereps = {}, []
    edge_of = {}
    for lab in labels:
        for i in range(len(pts[lab])):
            r = ue.find((lab, i))
            par = ue.parity_of((lab, i))
            if r not in eid:
                eid[r] = (len(ereps), par)
                ereps.append((lab, i))
            k, p0 = eid[r]
            edge_of[(lab, i)] = (k, 1 if par == p0 else -1)
    # edge endpoints from representatives, checked on every member
    ends = []
    for lab, i in ereps:
        n = len(pts[lab])
        ends.append((vertex_of[(lab, i)], vertex_of[(lab, (i + 1) % n)]))
    for (lab, i), (k, sgn) in edge_of.items():
        n = len(pts[lab])
        tail, head = vertex_of[(lab, i)], vertex_of[(lab, (i + 1) % n)]
        if sgn < 0:
            tail, head = head, tail
        if (tail, head) != ends[k]:
            raise ComplexError("inconsistent edge endpoints after gluing")
    V, E, F = len(vreps), len(ereps), len(labels)
    d0 = il.zeros(E, V)
    for k, (tl, hd) in enumerate(ends):
        d0[k][hd] += 1
        d0[k][tl] -= 1
    d1 = il.zeros(F, E)
    fb = []
    for f, lab in enumerate(labels):
        word = [edge_of[(lab, i)] for i in range(len(pts[lab]))]
        # a face with k-fold symmetry is the quotient disk; its attaching
        # map runs once around a fundamental arc of the boundary
        order = 1 + len(cs.by_label[lab].symmetries)
        if len(word) % order:
            raise ComplexError(f"cut points of {lab} are not symmetric")
        word = word[: len(word) // order]
        fb.append(word)
        for k, sgn in word:
            d1[f][k] += sgn
    if not il.is_zero(il.matmul(d1, d0, cols=V)):
        raise ComplexError("coboundary composition is not zero")
    orders = [1 + len(cs.by_label[lab].symmetries) for lab in labels]
    return CWComplex2(vreps, ereps, labels, ends, fb, d0, d1, pts, vertex_of, edge_of,
                      face_order=orders)


# -- cohomology -------------------------------------------------------------

@dataclass
class CohomologyResult:
    H0: FgAbGroup
    H1: FgAbGroup
    H2: FgAbGroup

    def groups(self) -> list[FgAbGroup]:
        return [self.H0, self.H1, self.H2]

    def to_json(self) -> dict:
        return {f"H{i}": g.to_json() for i, g in enumerate(self.groups())}


def cohomology(cw: CWComplex2) -> CohomologyResult:
    V, E, F = cw.counts
    K0 = il.kernel_basis(cw.delta0, V)
    H0 = subquotient(V, K0, il.zeros(V, 0))
    K1 = il.kernel_basis(cw.delta1, E)
    H1 = subquotient(E, K1, cw.delta0)
    H2 = subquotient(F, il.identity(F), cw.delta1)
    return CohomologyResult(H0, H1, H2)


def whole_tile_coordinates(cw: CWComplex2, v) -> list[int]:
    """Values of a 2-cochain on whole tiles.

    A symmetric face is the quotient of its tile, so the tile covers the
    face ``face_order`` times.
    """
    return [x * k for x, k in zip(v, cw.face_order)]


def from_whole_tile_coordinates(cw: CWComplex2, w) -> Optional[list[int]]:
    """Inverse of :func:`whole_tile_coordinates`; None if not integral."""
    out = []
    for x, k in zip(w, cw.face_order):
        if x % k:
            return None
        out.append(x // k)
    return out


def two_face_torsion(cw: CWComplex2, coh: CohomologyResult,
                     coeffs: tuple[int, int] = (1, -2)) -> list[tuple[str, str]]:
    """Face pairs ``(a, b)`` with ``ca*a + cb*b`` (on whole tiles) nonzero torsion in H^2."""
    H = coh.H2
    F = len(cw.faces)
    nf = H.free_rank
    out = []
    for a in range(F):
        for b in range(F):
            if a == b:
                continue
            w = [0] * F
            w[a], w[b] = coeffs
            v = from_whole_tile_coordinates(cw, w)
            if v is None:
                continue
            c = H.coords(v)
            if not any(c[:nf]) and any(c[nf:]):
                out.append((cw.faces[a], cw.faces[b]))
    return out


# -- the substitution-induced cellular map ----------------------------------

@dataclass
class InducedMaps:
    """Chain maps F0, F1, F2 (columns = images of cells) and cohomology maps."""

    F0: list
    F1: list
    F2: list
    A0: Optional[GroupHom] = None
    A1: Optional[GroupHom] = None
    A2: Optional[GroupHom] = None

    def pullbacks(self) -> tuple[list, list, list]:
        return il.transpose(self.F0), il.transpose(self.F1), il.transpose(self.F2)


def cellular_map(cs: CollaredSystem, cw: CWComplex2) -> tuple[list, list, list]:
    """Chain matrices of the cellular map induced by the substitution."""
    s = cs.base
    lam = s.inflation
    V, E, F = cw.counts
    F0 = il.zeros(V, V)
    F1 = il.zeros(E, E)
    F2 = il.zeros(F, F)
    fidx = {lab: f for f, lab in enumerate(cw.faces)}
    vimg, eimg = {}, {}
    for f, lab in enumerate(cw.faces):
        kids = cs.children(lab, Motion.identity())
        # degree onto a child face: each child covers its own quotient disk
        # |Sym(child)| times, and the parent disk is itself a |Sym(parent)|
        # fold quotient
        counts = {}
        for c, _ in kids:
            counts[c] = counts.get(c, 0) + 1
        own = 1 + len(cs.by_label[lab].symmetries)
        for c, n in counts.items():
            deg = n * (1 + len(cs.by_label[c].symmetries))
            if deg % own:
                raise ComplexError(f"children of symmetric tile {lab} are not symmetric")
            F2[fidx[c]][f] += deg // own
        # child cut points in the inflated frame
        kid_pts = [[m(p) for p in cw.points[c]] for c, m in kids]
        lookup = {}
        for k, P in enumerate(kid_pts):
            for j, p in enumerate(P):
                lookup.setdefault(p, (kids[k][0], j))
        P = cw.points[lab]
        n = len(P)
        for i, p in enumerate(P):
            hit = lookup.get(p.scale(lam))
            if hit is None:
                raise ComplexError(f"image of a vertex of {lab} is not a vertex")
            v = cw.vertex_of[(lab, i)]
            w = cw.vertex_of[hit]
            if vimg.setdefault(v, w) != w:
                raise ComplexError("vertex image depends on the representative")
        for i in range(n):
            a, b = P[i].scale(lam), P[(i + 1) % n].scale(lam)
            chain = _edge_chain(a, b, kids, kid_pts, cw)
            e, sgn = cw.edge_of[(lab, i)]
            img = tuple(sorted((k, sgn * x) for k, x in chain.items() if x))
            if eimg.setdefault(e, img) != img:
                raise ComplexError("edge image depends on the representative")
    for v, w in vimg.items():
        F0[w][v] = 1
    for e, img in eimg.items():
        for k, x in img:
            F1[k][e] += x
    return F0, F1, F2


def _edge_chain(a: Point, b: Point, kids, kid_pts, cw: CWComplex2) -> dict:
    """Signed child sub-edges covering the segment a -> b."""
    pieces = {}
    for k, P in enumerate(kid_pts):
        n = len(P)
        for j in range(n):
            p, q = P[j], P[(j + 1) % n]
            if on_segment(p, a, b) and on_segment(q, a, b):
                pieces[p] = (q, kids[k][0], j)
    chain = {}
    cur = a
    while cur != b:
        nxt = pieces.get(cur)
        if nxt is None:
            raise ComplexError("substituted edge is not a walk along child edges")
        q, lab, j = nxt
        e, sgn = cw.edge_of[(lab, j)]
        chain[e] = chain.get(e, 0) + sgn
        cur = q
    return chain


def induced_maps(cs: CollaredSystem, cw: CWComplex2, coh: CohomologyResult) -> InducedMaps:
    F0, F1, F2 = cellular_map(cs, cw)
    P0, P1, P2 = il.transpose(F0), il.transpose(F1), il.transpose(F2)
    V, E, F = cw.counts
    # cochain-map law
    if il.matmul(cw.delta0, P0) != il.matmul(P1, cw.delta0):
        raise ComplexError("pullback does not commute with delta0")
    if il.matmul(cw.delta1, P1) != il.matmul(P2, cw.delta1):
        raise ComplexError("pullback does not commute with delta1")
    out = InducedMaps(F0, F1, F2)
    out.A0 = GroupHom(coh.H0, coh.H0, P0)
    out.A1 = GroupHom(coh.H1, coh.H1, P1)
    out.A2 = GroupHom(coh.H2, coh.H2, P2)
    return out
