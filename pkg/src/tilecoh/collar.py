"""Collared tiles: corona census, induced substitution, border forcing.

A collared tile is a tile together with every tile touching it, taken up
to rigid motion.  If ``T`` has corona ``C`` then every tile meeting a
child of ``T`` is a child of some tile of ``C``, so the coronas of the
children of ``T`` can be read off ``substitute(C)`` directly.  The census
closes the set of coronas under that operation.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .exact import Motion, Polygon, polygons_touch
from .tiling import (
    Patch,
    SubstitutionSystem,
    Tile,
    TilingError,
    corona_key,
    single,
    substitute,
)


class CensusError(TilingError):
    pass


@dataclass
class CollaredTile:
    """One corona class.  ``corona[0]`` is the central tile at the identity."""

    label: str
    base: str
    key: tuple
    corona: list
    symmetries: list = field(default_factory=list)  # non-identity, subset of base symmetries
    children: list = field(default_factory=list)  # (label, Motion)

    def frames(self, g: Motion) -> list[Motion]:
        return [g] + [g.compose(s) for s in self.symmetries]

    def canonical(self, g: Motion) -> Motion:
        if not self.symmetries:
            return g
        return min(self.frames(g), key=Motion.key)


class CollaredSystem:
    """The closed set of collared tiles with their induced substitution."""

    def __init__(self, base: SubstitutionSystem, tiles: list, power: int = 1):
        self.base = base
        self.tiles = tiles
        self.by_label = {t.label: t for t in tiles}
        self.by_key = {t.key: t for t in tiles}
        self.index = {t.label: i for i, t in enumerate(tiles)}
        self.power = power

    def __len__(self):
        return len(self.tiles)

    @property
    def labels(self) -> list[str]:
        return [t.label for t in self.tiles]

    @property
    def inflation(self):
        return self.base.inflation ** self.power

    def family_counts(self) -> dict:
        out = {}
        for t in self.tiles:
            out[t.base] = out.get(t.base, 0) + 1
        return out

    def shape(self, label: str) -> Polygon:
        return self.base.proto(self.by_label[label].base).shape

    def children(self, label: str, g: Optional[Motion] = None) -> list:
        """Collared children of the tile ``label`` placed at ``g``."""
        t = self.by_label[label]
        if g is None:
            return list(t.children)
        G = self.base.inflate_motion(g)
        return [(c, self.by_label[c].canonical(G.compose(m))) for c, m in t.children]

    def to_json(self) -> dict:
        return {
            "system": self.base.name,
            "power": self.power,
            "counts": self.family_counts(),
            "tiles": [
                {
                    "label": t.label,
                    "base": t.base,
                    "symmetric": bool(t.symmetries),
                    "corona": [{"prototile": q, "motion": m.to_json()} for q, m in t.corona],
                    "children": [{"label": c, "motion": m.to_json()} for c, m in t.children],
                }
                for t in self.tiles
            ],
        }


def _class_symmetries(s: SubstitutionSystem, corona: list) -> list[Motion]:
    pid = corona[0][0]
    want = sorted((q, s.proto(q).canonical(m).key()) for q, m in corona)
    out = []
    for sym in s.proto(pid).symmetries:
        got = sorted((q, s.proto(q).canonical(sym.compose(m)).key()) for q, m in corona)
        if got == want:
            out.append(sym)
    return out


class _Registry:
    def __init__(self, system: SubstitutionSystem):
        self.system = system
        self.tiles = []
        self.by_key = {}
        self.counters = {}

    def classify(self, members: list) -> tuple[CollaredTile, Motion]:
        """Class of the corona ``members`` and the motion placing the class there."""
        s = self.system
        key, frame = corona_key(s, members)
        t = self.by_key.get(key)
        if t is None:
            tiles = [s.canonical_tile((q, frame.compose(g))) for q, g in members]
            tiles = [tiles[0]] + sorted(tiles[1:], key=lambda x: (x[0], x[1].key()))
            base = tiles[0][0]
            n = self.counters.get(base, 0) + 1
            self.counters[base] = n
            t = CollaredTile(f"{base}{n}", base, key, tiles, _class_symmetries(s, tiles))
            self.tiles.append(t)
            self.by_key[key] = t
        return t, t.canonical(frame.inverse())


def census(s: SubstitutionSystem, seed_level: int = 2, budget: int = 50,
           check_primitive: bool = True) -> CollaredSystem:
    """All corona classes of the tiling space of ``s`` and their substitution."""
    if check_primitive and not s.is_primitive(4):
        raise CensusError("substitution is not primitive (checked up to power 4)")
    reg = _Registry(s)
    seed = substitute(single(s, s.order[0]), seed_level)
    for i in range(len(seed)):
        reg_i = seed.regions()[i]
        if seed.is_surrounded(reg_i):
            members = [seed.tiles[i]] + [seed.tiles[j] for j in seed.touching(i)]
            reg.classify(members)
    if not reg.tiles:
        raise CensusError("seed patch has no interior tile; raise seed_level")
    done = 0
    rounds = 0
    while done < len(reg.tiles):
        rounds += 1
        if rounds > budget:
            partial = CollaredSystem(s, list(reg.tiles))
            err = CensusError(f"census did not close within {budget} rounds")
            err.partial = partial
            raise err
        end = len(reg.tiles)
        for t in reg.tiles[done:end]:
            _expand(reg, t)
        done = end
    return CollaredSystem(s, reg.tiles)


def _expand(reg: _Registry, t: CollaredTile) -> None:
    s = reg.system
    big = substitute(Patch(s, t.corona), 1)
    nkids = len(s.rules[t.base])
    kids = []
    for i in range(nkids):
        members = [big.tiles[i]] + [big.tiles[j] for j in big.touching(i)]
        cls, g = reg.classify(members)
        kids.append((cls.label, g))
    t.children = kids


def collared_substitution_matrix(cs: CollaredSystem) -> list[list[int]]:
    """Entry (i, j): occurrences of collared tile i among the children of j."""
    n = len(cs)
    M = [[0] * n for _ in range(n)]
    for j, t in enumerate(cs.tiles):
        for c, _ in t.children:
            M[cs.index[c]][j] += 1
    return M


def is_primitive_matrix(M: list, max_power: int = 10) -> bool:
    from .intlin import matmul

    P = M
    for _ in range(max_power):
        if all(x > 0 for row in P for x in row):
            return True
        P = [[min(x, 1) for x in row] for row in matmul(P, M)]
    return all(x > 0 for row in P for x in row)


# -- border forcing ---------------------------------------------------------

def _boundary_layers(patch: Patch, region: Polygon, layers: int) -> list[Tile]:
    """Tiles within ``layers`` touching steps of the boundary of ``region``."""
    regs = patch.regions()
    cur = set(patch.touching_region(region))
    keep = set(cur)
    for _ in range(layers - 1):
        nxt = set()
        for i in cur:
            nxt.update(patch.touching(i))
        cur = nxt - keep
        keep |= nxt
    return [patch.tiles[i] for i in sorted(keep)]


def _ring(s: SubstitutionSystem, corona: list, n: int, layers: int):
    """Patch around ``inflation^n * center`` and the indices of its ring tiles."""
    center = s.region(corona[0])
    tiles = list(corona)
    region = center
    for _ in range(n):
        region = region.scaled(s.inflation)
        patch = substitute(Patch(s, tiles), 1)
        tiles = _boundary_layers(patch, region, layers)
    patch = Patch(s, tiles)
    ring = [i for i in patch.touching_region(region)
            if not _inside(patch.regions()[i], region)]
    return patch, ring, region


def _inside(poly: Polygon, region: Polygon) -> bool:
    return region.contains(poly.centroid()) > 0


def forces_border(system, max_power: int = 3) -> tuple[bool, int]:
    """Does the substitution determine the tiles around a substituted tile?

    For a :class:`CollaredSystem` the collared classes of the ring tiles
    must be determined, i.e. every ring tile is surrounded by descendants
    of the known corona.  For a base system, all coronas of one prototile
    must produce the same ring.  Returns ``(forces, minimal power)``; the
    power is 0 when the answer is negative.
    """
    if isinstance(system, CollaredSystem):
        s = system.base
        for n in range(1, max_power + 1):
            ok = True
            for t in system.tiles:
                patch, ring, _ = _ring(s, t.corona, n, 2)
                if not all(patch.is_surrounded(patch.regions()[i]) for i in ring):
                    ok = False
                    break
            if ok:
                return True, n
        return False, 0
    if isinstance(system, SubstitutionSystem):
        cs = census(system)
        return _base_forces_border(cs, max_power)
    raise TypeError("forces_border expects a SubstitutionSystem or CollaredSystem")


def _base_forces_border(cs: CollaredSystem, max_power: int) -> tuple[bool, int]:
    s = cs.base
    if len(cs) == len(s.order):
        return True, 1
    for n in range(1, max_power + 1):
        rings = {}
        ok = True
        for t in cs.tiles:
            patch, ring, _ = _ring(s, t.corona, n, 1)
            proto = s.proto(t.base)
            variants = []
            for sym in [Motion.identity()] + proto.symmetries:
                inv = sym.inverse()
                variants.append(tuple(sorted(
                    (q, s.proto(q).canonical(inv.compose(m)).key())
                    for q, m in (patch.tiles[i] for i in ring))))
            key = min(variants)
            if rings.setdefault(t.base, key) != key:
                ok = False
                break
        if ok:
            return True, n
    return False, 0


def projects_to_base(cs: CollaredSystem) -> bool:
    """Forgetting collars recovers the base rule (placements coincide)."""
    s = cs.base
    for t in cs.tiles:
        got = sorted((cs.by_label[c].base, s.proto(cs.by_label[c].base).canonical(m).key())
                     for c, m in t.children)
        want = sorted((c, m.key()) for c, m in s.rules[t.base])
        if got != want:
            return False
    return True
