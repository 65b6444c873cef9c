"""Staged computation from a substitution system to hull cohomology.

Each stage is computed on first use and cached, so a report only pays for
what it asks for.  Wall-clock times are kept apart from the results so
reports stay reproducible.
"""
from __future__ import annotations

import time
from typing import Optional

from . import intlin as il
from .abgrp import GroupHom, hom_matrix_in_basis
from .apx import adjacent_pairs, build_complex, cohomology, induced_maps, two_face_torsion
from .collar import census
from .cone import assemble_hull, find_symmetric_centers
from .limit import LimitGroup, endomorphism, limit_chain
from .tiling import BUILTIN, SubstitutionSystem, power_system


class Pipeline:
    def __init__(self, system: Optional[SubstitutionSystem] = None, power: int = 1,
                 seed_level: int = 2, degree2: Optional[tuple] = None):
        """``degree2`` optionally replaces the computed degree-2 map by
        ``(matrix, orders)`` on its own generators."""
        base = system if system is not None else BUILTIN["kr"]()
        self.system = power_system(base, power)
        self.power = power
        self.seed_level = seed_level
        self.degree2 = degree2
        self.timing = {}
        self._cache = {}

    def _stage(self, name, fn):
        if name not in self._cache:
            t = time.perf_counter()
            self._cache[name] = fn()
            self.timing[name] = round(time.perf_counter() - t, 3)
        return self._cache[name]

    # -- stages ---------------------------------------------------------------
    @property
    def collared(self):
        return self._stage("census", lambda: census(self.system, seed_level=self.seed_level))

    @property
    def pairs(self):
        return self._stage("pairs", lambda: adjacent_pairs(self.collared))

    @property
    def complex(self):
        return self._stage("complex", lambda: build_complex(self.collared, self.pairs))

    @property
    def cohomology(self):
        return self._stage("cohomology", lambda: cohomology(self.complex))

    @property
    def induced(self):
        return self._stage("induced", lambda: induced_maps(self.collared, self.complex,
                                                           self.cohomology))

    def degree2_map(self) -> GroupHom:
        if self.degree2 is not None:
            return endomorphism(*self.degree2)
        return self.induced.A2

    @property
    def limits(self):
        def run():
            im = self.induced
            return [limit_chain(im.A0), limit_chain(im.A1), limit_chain(self.degree2_map())]
        return self._stage("limits", run)

    @property
    def centers(self):
        return self._stage("singularities", lambda: find_symmetric_centers(self.collared,
                                                                           self.pairs))

    @property
    def hull(self):
        def run():
            l0, l1, l2 = (c.limit for c in self.limits)
            c = sum(1 for x in self.centers if x.periodic)
            return assemble_hull(l0, l1, l2, c)
        return self._stage("hull", run)

    # -- reports --------------------------------------------------------------
    def census_report(self) -> dict:
        cs = self.collared
        return {"total": len(cs), "counts": cs.family_counts(), "labels": cs.labels}

    def complex_report(self) -> dict:
        cw = self.complex
        v, e, f = cw.counts
        zero = il.matmul(cw.delta1, cw.delta0, cols=v) == il.zeros(f, v)
        return {"vertices": v, "edges": e, "faces": f, "delta1_delta0_zero": zero,
                "subdivided": cw.subdivided}

    def cohomology_report(self) -> dict:
        co = self.cohomology
        out = {}
        for i, g in enumerate(co.groups()):
            out[f"H{i}"] = {"group": g.describe(), "free_rank": g.free_rank,
                            "torsion": list(g.torsion)}
        gens = co.groups()[1].generators
        out["H1_generator_support"] = [sum(1 for x in g if x) for g in gens]
        out["two_face_torsion"] = [list(p) for p in two_face_torsion(self.complex, co)]
        return out

    def induced_report(self) -> dict:
        im = self.induced
        A = [hom_matrix_in_basis(h) for h in (im.A0, im.A1)]
        A2 = hom_matrix_in_basis(self.degree2_map())
        poly = il.charpoly(A2)
        return {
            "A0_identity": A[0] == il.identity(len(A[0])),
            "A1_identity": A[1] == il.identity(len(A[1])),
            "A2": A2,
            "A2_source": "reference" if self.degree2 is not None else "computed",
            "charpoly": poly,
            "integer_roots": [[r, m] for r, m in il.integer_roots(poly)],
        }

    def limit_report(self) -> dict:
        return {f"H{i}": c.to_json() for i, c in enumerate(self.limits)}

    def singularity_report(self) -> dict:
        cents = self.centers
        return {
            "classes": len(cents),
            "periodic": sum(1 for c in cents if c.periodic),
            "non_periodic": sum(1 for c in cents if not c.periodic),
            "centers": [c.to_json() for c in cents],
        }

    def hull_report(self) -> dict:
        h = self.hull
        out = h.to_json()
        out["describe"] = {f"H{i}": g.describe() for i, g in enumerate(h.groups())}
        return out

    def limit_groups(self) -> list[LimitGroup]:
        return [c.limit for c in self.limits]
