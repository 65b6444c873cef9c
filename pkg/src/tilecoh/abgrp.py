"""Finitely generated abelian groups as subquotients of Z^n.

A group here is ``Z / B`` where ``B ⊆ Z ⊆ Z^n`` are lattices given by
spanning columns (``Z`` the cycles, ``B`` the boundaries).  Abstract
generators come out of a Smith normal form and every one of them carries
an explicit ambient representative, so cohomology classes stay concrete
cocycles throughout.
"""
from __future__ import annotations

from typing import Optional, Sequence

from . import intlin as il


class GroupError(ValueError):
    """Raised on an inconsistent presentation or an ill-defined map."""


class FgAbGroup:
    """``span(cycles) / span(boundaries)`` inside ``Z^ambient_rank``.

    Abstract generators are ordered free ones first, then torsion ones by
    increasing order.  ``orders[i]`` is 0 for a free generator.
    """

    def __init__(self, ambient_rank: int, cycles: il.Matrix, boundaries: il.Matrix):
        n = ambient_rank
        self.ambient_rank = n
        cyc = il.columns(cycles)
        bnd = il.columns(boundaries)
        self.cycle_basis = il.row_basis(cyc, n)  # list of vectors
        k = len(self.cycle_basis)
        C = il.from_columns(self.cycle_basis, n)
        self._csolve = il.LatticeSolver(C, k)
        # boundaries in cycle coordinates
        rel_cols = []
        for b in bnd:
            if not any(b):
                continue
            y = self._csolve.solve(b)
            if y is None:
                raise GroupError("boundary lattice is not contained in the cycle lattice")
            rel_cols.append(y)
        self.boundary_basis = il.row_basis(bnd, n)
        R = il.from_columns(rel_cols, k) if rel_cols else il.zeros(k, 0)
        s = il.smith(R, len(rel_cols))
        diag = [s.D[i][i] if i < len(rel_cols) else 0 for i in range(k)]
        self._U = s.U
        Uinv = il.inverse_unimodular(s.U) if k else []
        free_idx = [i for i in range(k) if diag[i] == 0]
        tors_idx = sorted((i for i in range(k) if diag[i] > 1), key=lambda i: diag[i])
        self._slots = free_idx + tors_idx
        self.orders = [0] * len(free_idx) + [diag[i] for i in tors_idx]
        self.generators = []
        for i in self._slots:
            y = [Uinv[r][i] for r in range(k)]
            self.generators.append(il.matvec(C, y) if k else [0] * n)
        self._override = None

    # -- presentation helpers ----------------------------------------------
    @classmethod
    def presented(cls, n: int, relations: il.Matrix) -> "FgAbGroup":
        """``Z^n`` modulo the column span of ``relations``."""
        return cls(n, il.identity(n), relations)

    @property
    def free_rank(self) -> int:
        return sum(1 for d in self.orders if d == 0)

    @property
    def torsion(self) -> list[int]:
        return [d for d in self.orders if d]

    @property
    def ngens(self) -> int:
        return len(self.orders)

    def invariants(self) -> tuple[int, tuple[int, ...]]:
        return self.free_rank, tuple(self.torsion)

    def is_trivial(self) -> bool:
        return not self.orders

    def isomorphic(self, other: "FgAbGroup") -> bool:
        return self.invariants() == other.invariants()

    def describe(self) -> str:
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        for d in self.torsion:
            parts.append(f"Z_{d}")
        return " + ".join(parts) if parts else "0"

    # -- coordinates -------------------------------------------------------
    def is_cycle(self, v: Sequence[int]) -> bool:
        return self._csolve.contains(v)

    def _canonical_coords(self, v: Sequence[int]) -> list[int]:
        y = self._csolve.solve(v)
        if y is None:
            raise GroupError("vector is not in the cycle lattice")
        u = il.matvec(self._U, y)
        out = []
        for slot, d in zip(self._slots, self.orders):
            x = u[slot]
            out.append(x % d if d else x)
        return out

    def coords(self, v: Sequence[int]) -> list[int]:
        """Coordinates of the class of ``v`` on the abstract generators.

        Torsion coordinates are reduced into ``[0, d)``.
        """
        c = self._canonical_coords(v)
        if self._override is None:
            return c
        return self._override_coords(c)

    def is_boundary(self, v: Sequence[int]) -> bool:
        return not any(self._canonical_coords(v))

    def lift(self, coords: Sequence[int]) -> list[int]:
        """Ambient representative of the element with given coordinates."""
        out = [0] * self.ambient_rank
        for c, g in zip(coords, self.generators):
            if c:
                for i, x in enumerate(g):
                    if x:
                        out[i] += c * x
        return out

    # -- override basis ----------------------------------------------------
    def with_basis(self, vectors: Sequence[Sequence[int]]) -> "FgAbGroup":
        """Same group, abstract generators replaced by the given cocycles.

        The vectors must form a basis of the matching shape: free ones
        first, then torsion ones.  Raises :class:`GroupError` otherwise.
        """
        if len(vectors) != self.ngens:
            raise GroupError(f"expected {self.ngens} basis vectors, got {len(vectors)}")
        G = [self._canonical_coords(v) for v in vectors]  # one row per new generator
        s = self.ngens
        # columns: new generators, then torsion relations of the canonical form
        cols = [list(g) for g in G]
        for i, d in enumerate(self.orders):
            if d:
                cols.append([d * int(i == j) for j in range(s)])
        A = il.from_columns(cols, s)
        solver = il.LatticeSolver(A, len(cols))
        for i in range(s):
            if solver.solve([int(i == j) for j in range(s)]) is None:
                raise GroupError("vectors do not generate the group")
        # kernel projected onto the new generators must be diag(orders)
        K = il.kernel_basis(A, len(cols))
        proj = [v[:s] for v in il.columns(K)]
        want = [[d * int(i == j) for j in range(s)] for i, d in enumerate(self.orders) if d]
        if il.row_basis(proj, s) != il.row_basis(want, s):
            raise GroupError("vectors are not a basis with the expected orders")
        new = object.__new__(FgAbGroup)
        new.__dict__.update(self.__dict__)
        new.generators = [list(v) for v in vectors]
        new._override = solver
        return new

    def _override_coords(self, c: Sequence[int]) -> list[int]:
        x = self._override.solve(list(c))
        if x is None:
            raise GroupError("element not expressible in override basis")
        return [xi % d if d else xi for xi, d in zip(x[: self.ngens], self.orders)]

    # -- export ------------------------------------------------------------
    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": self.torsion,
                "generators": [list(g) for g in self.generators]}

    def __repr__(self):
        return f"FgAbGroup({self.describe()})"


def subquotient(ambient: int, cycles: il.Matrix, boundaries: il.Matrix) -> FgAbGroup:
    """The group ``span(cycles) / span(boundaries)`` with generator cocycles."""
    return FgAbGroup(ambient, cycles, boundaries)


class GroupHom:
    """Homomorphism induced by an ambient integer matrix."""

    def __init__(self, source: FgAbGroup, target: FgAbGroup, matrix: il.Matrix):
        self.source = source
        self.target = target
        self.matrix = matrix
        for v in source.cycle_basis:
            w = il.matvec(matrix, v)
            if not target.is_cycle(w):
                raise GroupError("map does not send cycles to cycles")
        for v in source.boundary_basis:
            w = il.matvec(matrix, v)
            if not target.is_cycle(w) or not target.is_boundary(w):
                raise GroupError("map does not send boundaries to boundaries")

    def __call__(self, coords: Sequence[int]) -> list[int]:
        return self.target.coords(il.matvec(self.matrix, self.source.lift(coords)))

    def on_generators(self) -> il.Matrix:
        """Matrix whose column j holds the image of source generator j."""
        cols = [self.target.coords(il.matvec(self.matrix, g)) for g in self.source.generators]
        return il.from_columns(cols, self.target.ngens)

    def compose(self, other: "GroupHom") -> "GroupHom":
        """``self ∘ other``."""
        return GroupHom(other.source, self.target,
                        il.matmul(self.matrix, other.matrix, cols=other.source.ambient_rank))


def induced_hom(f_ambient: il.Matrix, source: FgAbGroup, target: FgAbGroup) -> GroupHom:
    return GroupHom(source, target, f_ambient)


def hom_matrix_in_basis(h: GroupHom) -> il.Matrix:
    """Square matrix of an endomorphism on the abstract generators."""
    if h.source.ngens != h.target.ngens:
        raise GroupError("hom_matrix_in_basis needs an endomorphism")
    return h.on_generators()
