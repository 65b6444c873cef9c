"""Direct limits of finitely generated abelian groups under an endomorphism.

``lim (G, h)`` is computed in two steps.  First the kernel of ``h^N`` is
stabilized; the quotient is realized as the eventual image ``h^N(G)``,
on which ``h`` is injective.  Then the injective map ``B`` is analysed:
coordinates that ``B`` fixes and that nothing else feeds into split off
as ``Z``, the torsion of the image is the torsion of the limit (a bounded
pure subgroup, hence a summand), the remaining free block is split into
integer eigenlattices, and the limit is reported as a sum of
``Z[1/n]``, ``Z^k`` and torsion.

The eigenlattices of the expanding eigenvalues may sit inside their
saturation with an index ``N``.  A prime of ``N`` dividing every expanding
eigenvalue is absorbed by the localizations.  A prime dividing none of them
survives: the expanding part of the limit then contains the split sum with
index ``glue`` and is not isomorphic to it, so the result is marked glued
and records that index.  Whenever the structure is richer than that
(irrational eigenvalues, non-semisimple eigenvalues of size >= 2, primes
dividing only some expanding eigenvalues), the result is marked symbolic
and carries the reduced matrix instead of a decomposition.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import intlin as il
from .abgrp import FgAbGroup, GroupError, GroupHom, hom_matrix_in_basis

EXACT = "exact"
SYMBOLIC = "symbolic"
GLUED = "glued"


def radical(n: int) -> int:
    """Product of the distinct primes dividing ``n``."""
    n = abs(n)
    out = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            out *= p
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out *= n
    return out


def _primes(n: int) -> set[int]:
    n = abs(n)
    out = set()
    p = 2
    while p * p <= n:
        while n % p == 0:
            out.add(p)
            n //= p
        p += 1
    if n > 1:
        out.add(n)
    return out


@dataclass(eq=False)
class LimitGroup:
    """``⊕ Z[1/base]^mult ⊕ Z^free_rank ⊕ ⊕ Z_d`` or a symbolic limit."""

    localized: list = field(default_factory=list)  # [(base, mult)], base >= 2
    free_rank: int = 0
    torsion: list = field(default_factory=list)
    status: str = EXACT
    matrix: Optional[list] = None  # symbolic: the reduced endomorphism
    orders: Optional[list] = None  # symbolic: orders of its generators
    glue: int = 1  # glued: index of the split expanding part in its purification

    def __post_init__(self):
        merged = {}
        for base, mult in self.localized:
            if base < 2 or mult < 0:
                raise ValueError(f"bad localized summand Z[1/{base}]^{mult}")
            if mult:
                merged[base] = merged.get(base, 0) + mult
        self.localized = sorted(merged.items(), key=lambda t: -t[0])
        self.torsion = sorted(d for d in self.torsion if d > 1)

    def _key(self):
        if self.status == SYMBOLIC:
            return (self.status, tuple(map(tuple, self.matrix or [])), tuple(self.orders or []))
        locs = sorted((radical(b), m) for b, m in self.localized)
        merged = {}
        for r, m in locs:
            merged[r] = merged.get(r, 0) + m
        return (tuple(sorted(merged.items())), self.free_rank, tuple(self.torsion), self.glue)

    def __eq__(self, other):
        return isinstance(other, LimitGroup) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    @property
    def is_exact(self) -> bool:
        return self.status == EXACT

    @property
    def is_classified(self) -> bool:
        """Exact or glued: the summands are known."""
        return self.status != SYMBOLIC

    def describe(self) -> str:
        if not self.is_classified:
            return f"lim(B) with B of size {len(self.matrix or [])} (symbolic)"
        parts = []
        for base, mult in self.localized:
            parts.append(f"Z[1/{base}]" + (f"^{mult}" if mult > 1 else ""))
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        tors = {}
        for d in self.torsion:
            tors[d] = tors.get(d, 0) + 1
        for d, k in sorted(tors.items()):
            parts.append(f"Z_{d}" + (f"^{k}" if k > 1 else ""))
        out = " + ".join(parts) if parts else "0"
        if self.glue > 1:
            out += f" (expanding part glued at index {self.glue})"
        return out

    def __repr__(self):
        return f"LimitGroup({self.describe()})"

    def direct_sum(self, other: "LimitGroup") -> "LimitGroup":
        if not (self.is_classified and other.is_classified):
            raise ValueError("direct sums are only formed of classified limits")
        return _make(self.localized + other.localized, self.free_rank + other.free_rank,
                     self.torsion + other.torsion, self.glue * other.glue)

    def torsion_free_part(self) -> "LimitGroup":
        if not self.is_classified:
            raise ValueError("torsion_free_part needs a classified limit")
        return _make(list(self.localized), self.free_rank, [], self.glue)

    @classmethod
    def of_group(cls, g: FgAbGroup) -> "LimitGroup":
        return cls([], g.free_rank, list(g.torsion))

    def to_json(self) -> dict:
        out = {
            "localized": [{"base": b, "mult": m} for b, m in self.localized],
            "free_rank": self.free_rank,
            "torsion": list(self.torsion),
            "status": self.status,
        }
        if self.glue > 1:
            out["glue"] = self.glue
        if not self.is_classified:
            out["matrix"] = self.matrix
            out["orders"] = self.orders
        return out

    @classmethod
    def from_json(cls, d: dict) -> "LimitGroup":
        return cls([(x["base"], x["mult"]) for x in d.get("localized", [])],
                   d.get("free_rank", 0), list(d.get("torsion", [])),
                   d.get("status", EXACT), d.get("matrix"), d.get("orders"), d.get("glue", 1))


def _make(localized, free_rank, torsion, glue=1) -> LimitGroup:
    return LimitGroup(localized, free_rank, torsion, GLUED if glue > 1 else EXACT, glue=glue)


# -- building endomorphisms ---------------------------------------------------

def endomorphism(matrix: il.Matrix, orders: Optional[Sequence[int]] = None) -> GroupHom:
    """The endomorphism of ``⊕ Z_{orders[i]}`` (0 meaning Z) given by ``matrix``.

    Column ``j`` holds the image of generator ``j``.
    """
    n = len(matrix)
    orders = list(orders) if orders is not None else [0] * n
    if len(orders) != n or any(len(r) != n for r in matrix):
        raise GroupError("endomorphism needs a square matrix matching the orders")
    rel = _relations(orders)
    G = FgAbGroup.presented(n, il.from_columns(rel, n) if rel else il.zeros(n, 0))
    if G.orders == orders:
        # keep the caller's generators when they already have canonical shape
        G = G.with_basis([[int(i == j) for j in range(n)] for i in range(n)])
    return GroupHom(G, G, matrix)


# -- step 1: stabilize the kernel ---------------------------------------------

@dataclass
class Reduction:
    """The eventual image of an endomorphism and the map on it."""

    group: FgAbGroup
    map: GroupHom
    power: int  # N with ker h^N = ker h^(N+1)
    matrix: il.Matrix  # the map on the abstract generators of ``group``

    @property
    def orders(self) -> list[int]:
        return list(self.group.orders)


def _relations(orders: Sequence[int]) -> list[list[int]]:
    n = len(orders)
    return [[d * int(i == j) for j in range(n)] for i, d in enumerate(orders) if d]


def _kernel_of_power(P: il.Matrix, orders: Sequence[int]) -> list[list[int]]:
    """Basis of ``{x in Z^n : P x = 0 in ⊕ Z_orders}``."""
    n = len(orders)
    rel = _relations(orders)
    cols = il.columns(P) + rel
    big = il.from_columns(cols, n)
    # x, y with P x + R y = 0; project the kernel onto x
    K = il.kernel_basis(big, len(cols))
    return il.row_basis([v[:n] for v in il.columns(K)], n)


def stabilize_kernel(h: GroupHom) -> Reduction:
    """``G / ker(h^N)`` for the stable N, realized as ``h^N(G)``.

    The generators of the image are taken from the Hermite basis of the
    image lattice when that basis has the right shape, otherwise from the
    Smith normal form.
    """
    G = h.source
    if G.ngens != h.target.ngens:
        raise GroupError("stabilize_kernel needs an endomorphism")
    A = hom_matrix_in_basis(h)
    orders = list(G.orders)
    n = len(orders)
    P = il.identity(n)
    prev = _kernel_of_power(P, orders)
    N = 0
    while True:
        Pn = il.matmul(A, P, cols=n) if n else []
        cur = _kernel_of_power(Pn, orders) if n else []
        if cur == prev:
            break
        P, prev, N = Pn, cur, N + 1
        if N > n + sum(int(math.log2(d)) for d in orders if d) + 1:
            raise GroupError("kernel chain did not stabilize")  # cannot happen
    rel = _relations(orders)
    image_cols = il.columns(P) + rel if n else []
    hnf = il.row_basis(image_cols, n) if n else []
    I = FgAbGroup(n, il.from_columns(image_cols, n) if n else [], il.from_columns(rel, n) if rel else il.zeros(n, 0))
    # preferred basis: Hermite rows that are not relations, free ones first
    cand = [v for v in hnf if not I.is_boundary(v)]
    if len(cand) == I.ngens:
        free = [v for v in cand if _order_in(I, v) == 0]
        tors = sorted((v for v in cand if _order_in(I, v)), key=lambda v: _order_in(I, v))
        try:
            I = I.with_basis(free + tors)
        except GroupError:
            pass
    B = GroupHom(I, I, A)
    return Reduction(I, B, N, hom_matrix_in_basis(B))


def _order_in(G: FgAbGroup, v: Sequence[int]) -> int:
    c = G._canonical_coords(v)
    o = 1
    for x, d in zip(c, G.orders):
        if d == 0:
            if x:
                return 0
        elif x % d:
            o = o * (d // math.gcd(d, x)) // math.gcd(o, d // math.gcd(d, x))
    return o


# -- step 2: classify ---------------------------------------------------------

@dataclass
class Classification:
    """Intermediate data of the classification of an injective endomorphism."""

    limit: LimitGroup
    fixed: list  # indices split off as fixed coordinates
    block: list  # indices of the remaining free block
    block_matrix: il.Matrix  # the map on the remaining free block
    eigenpairs: list  # (eigenvalue, primitive integer eigenvector) on the block
    lattice_index: int = 1  # index of the eigenlattice sum in its saturation


def fixed_coordinates(matrix: il.Matrix, orders: Sequence[int]) -> list[int]:
    """Coordinates ``i`` with row ``i`` and column ``i`` both equal to ``e_i``.

    For a torsion coordinate of order ``d`` the row only has to vanish mod ``d``.
    """
    n = len(orders)
    out = []
    for i in range(n):
        d = orders[i]
        col_ok = all(matrix[r][i] == int(r == i) if (not orders[r]) else
                     (matrix[r][i] - int(r == i)) % orders[r] == 0 for r in range(n))
        row_ok = all((matrix[i][c] - int(c == i)) % d == 0 if d else matrix[i][c] == int(c == i)
                     for c in range(n))
        if col_ok and row_ok:
            out.append(i)
    return out


def _free_block_limit(M: il.Matrix):
    """Limit of an injective map on Z^k.

    Returns ``(localized, free, eigenpairs, index, glue)`` or None.
    """
    k = len(M)
    if k == 0:
        return [], 0, [], 1, 1
    roots = il.integer_roots(il.charpoly(M))
    if sum(m for _, m in roots) != k or any(lam == 0 for lam, _ in roots):
        return None
    pairs = []
    big = []
    for lam, mult in roots:
        shifted = [[M[i][j] - (lam if i == j else 0) for j in range(k)] for i in range(k)]
        E = il.columns(il.kernel_basis(shifted, k))
        pairs.extend((lam, il.primitive(v)) for v in E)
        if abs(lam) >= 2:
            if len(E) != mult:
                return None  # not semisimple on an expanding eigenvalue
            big.append((lam, E))
    vecs = [v for _, E in big for v in E]
    lams = [abs(lam) for lam, E in big for _ in E]
    index = 1
    glue = 1
    if vecs:
        S = il.saturate(vecs, k)
        solver = il.LatticeSolver(il.from_columns(S, k), len(S))
        coords = [solver.solve(v) for v in vecs]
        index = abs(il.det([list(row) for row in zip(*coords)]))
        A = il.from_columns(vecs, k)
        # each saturation vector in eigenvector coordinates
        rat = [il.solve_rational(A, s, len(vecs)) for s in S]
        for p in _primes(index):
            # eigenlattices whose eigenvalue p divides become p-divisible in
            # the limit; only gluing among the others survives
            keep = [i for i, lam in enumerate(lams) if lam % p]
            g = _projected_index(rat, keep)
            while g % p == 0:
                g //= p
                if len(keep) < len(lams):
                    return None  # gluing among only some summands
                glue *= p
    localized = {}
    for lam, E in big:
        localized[abs(lam)] = localized.get(abs(lam), 0) + len(E)
    # the quotient by the saturated eigenlattices carries only eigenvalues
    # +-1, so the induced map there is an automorphism of the remaining free part
    return sorted(localized.items(), key=lambda t: -t[0]), k - len(vecs), pairs, index, glue


def _projected_index(rat: list, keep: list[int]) -> int:
    """Index of ``Z^keep`` in the projection of the rational rows ``rat`` plus ``Z^keep``."""
    if not keep:
        return 1
    D = 1
    for row in rat:
        for i in keep:
            D = D * row[i].denominator // math.gcd(D, row[i].denominator)
    m = len(keep)
    rows = [[int(row[i] * D) for i in keep] for row in rat]
    rows += [[D * int(i == j) for j in range(m)] for i in range(m)]
    basis = il.row_basis(rows, m)
    return D ** m // abs(il.det(basis))


def classify_reduced(matrix: il.Matrix, orders: Sequence[int]) -> Classification:
    """Classify ``lim`` of an injective endomorphism of ``⊕ Z_orders``."""
    n = len(orders)
    fixed = fixed_coordinates(matrix, orders)
    rest = [i for i in range(n) if i not in fixed]
    free = [i for i in rest if not orders[i]]
    tors = [i for i in rest if orders[i]]
    M = [[matrix[i][j] for j in free] for i in free]
    sym = LimitGroup(status=SYMBOLIC, matrix=[list(r) for r in matrix], orders=list(orders))
    res = _free_block_limit(M)
    if res is None:
        return Classification(sym, fixed, free, M, [])
    localized, free_rank, pairs, index, glue = res
    # B is injective, hence bijective on the finite torsion subgroup, so the
    # limit's torsion is that subgroup; being bounded and pure it is a direct
    # summand, and the quotient is the limit of the free block
    fixed_free = sum(1 for i in fixed if not orders[i])
    torsion = [orders[i] for i in fixed if orders[i]] + [orders[i] for i in tors]
    lim = _make(localized, free_rank + fixed_free, torsion, glue)
    return Classification(lim, fixed, free, M, pairs, index)


def classify_limit(B: GroupHom) -> LimitGroup:
    """Limit of an endomorphism; the kernel is stabilized first if needed."""
    red = stabilize_kernel(B)
    return classify_reduced(red.matrix, red.orders).limit


def limit_of(h: GroupHom) -> LimitGroup:
    """``lim (G, h)`` as a :class:`LimitGroup`."""
    return classify_limit(h)


@dataclass
class LimitChain:
    """Every stage of a limit computation, for reports."""

    reduction: Reduction
    classification: Classification

    @property
    def limit(self) -> LimitGroup:
        return self.classification.limit

    def to_json(self) -> dict:
        red, cl = self.reduction, self.classification
        return {
            "kernel_power": red.power,
            "image": red.group.describe(),
            "image_orders": red.orders,
            "reduced_matrix": red.matrix,
            "fixed_coordinates": cl.fixed,
            "block": cl.block,
            "block_matrix": cl.block_matrix,
            "eigenpairs": [[lam, v] for lam, v in cl.eigenpairs],
            "lattice_index": cl.lattice_index,
            "limit": cl.limit.to_json(),
        }


def limit_chain(h: GroupHom) -> LimitChain:
    red = stabilize_kernel(h)
    return LimitChain(red, classify_reduced(red.matrix, red.orders))
