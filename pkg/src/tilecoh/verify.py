"""Checks of a pipeline run against the reference data.

Each check returns a :class:`Check` row; ``run_checks`` collects one row
per numbered criterion.  Rows carry no timing, so two runs give identical
tables.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from . import intlin as il
from .abgrp import FgAbGroup, GroupHom
from .fixtures import expected_group
from .limit import LimitGroup, endomorphism, limit_chain, limit_of
from .pipeline import Pipeline
from .tiling import pinwheel_triangle_system, single, square_system, substitute


@dataclass
class Check:
    criterion: int
    name: str
    expected: str
    observed: str
    passed: bool

    def to_json(self) -> dict:
        return {"criterion": self.criterion, "name": self.name, "expected": self.expected,
                "observed": self.observed, "passed": self.passed}


def center_type(c, cs) -> str:
    """Composition of a center's star by prototile, e.g. ``LLRR``."""
    return "".join(sorted(cs.by_label[lab].base for lab in c.labels))


# period of each periodic center type; a lone rectangle is a midpoint center
PERIODIC_TYPES = {"L": 2, "R": 2, "LL": 2, "RR": 2, "LLRR": 1, "KKKK": 1}


def check_census(p: Pipeline, ref: dict) -> Check:
    want = ref["expected"]["census"]
    got = dict(p.collared.family_counts(), total=len(p.collared))
    return Check(1, "collared census", str(want), str(got), got == want)


def check_complex(p: Pipeline, ref: dict) -> Check:
    want = ref["expected"]["complex"]
    r = p.complex_report()
    got = {k: r[k] for k in ("vertices", "edges", "faces")}
    ok = got == want and r["delta1_delta0_zero"]
    return Check(2, "complex cells, d1 d0 = 0", f"{want}, True",
                 f"{got}, {r['delta1_delta0_zero']}", ok)


def check_cohomology(p: Pipeline, ref: dict) -> Check:
    want = {k: (v[0], list(v[1])) for k, v in ref["expected"]["cohomology"].items()}
    co = p.cohomology
    got = {f"H{i}": (g.free_rank, list(g.torsion)) for i, g in enumerate(co.groups())}
    pairs = p.cohomology_report()["two_face_torsion"]
    return Check(3, "cohomology of the approximant", f"{want}, two-face (1,-2) class",
                 f"{got}, {len(pairs)} two-face classes", got == want and bool(pairs))


def check_induced(p: Pipeline, ref: dict) -> Check:
    r = p.induced_report()
    roots = dict((a, m) for a, m in r["integer_roots"])
    ok = (r["A0_identity"] and r["A1_identity"] and roots.get(25, 0) >= 1
          and roots.get(3, 0) >= 2)
    return Check(4, "induced maps", "A0, A1 identity; roots 25, 3 (x2)",
                 f"A0 {r['A0_identity']}, A1 {r['A1_identity']}, roots {roots}", ok)


def check_limits(p: Pipeline, ref: dict) -> Check:
    want = [LimitGroup([], 1), LimitGroup([], 1), expected_group(ref["expected"]["limit_h2"])]
    got = p.limit_groups()
    return Check(5, "direct limits", "; ".join(g.describe() for g in want),
                 "; ".join(g.describe() for g in got), got == want)


def _same_eigenspaces(M, want_pairs, got_pairs) -> bool:
    """Every listed pair is an eigenpair and both lists span the same eigenspaces."""
    for lam, v in want_pairs:
        if il.matvec(M, v) != [lam * x for x in v]:
            return False
    for lam in {lam for lam, _ in want_pairs}:
        a = [v for l2, v in want_pairs if l2 == lam]
        b = [v for l2, v in got_pairs if l2 == lam]
        if il.rank(a) != len(a) or il.rank(a + b) != il.rank(b) or il.rank(b) != len(a):
            return False
    return True


def check_fixture_chain(ref: dict) -> Check:
    a2 = ref["a2_matrix"]
    chain = limit_chain(endomorphism(a2["matrix"], a2["orders"]))
    red, cl = chain.reduction, chain.classification
    free, tors = ref["expected"]["image_group"]
    image_ok = red.group.free_rank == free and list(red.group.torsion) == tors
    B_ok = red.matrix == ref["b_matrix"]["matrix"]
    M_ok = cl.block_matrix == ref["m_matrix"]["matrix"]
    want_pairs = [(lam, v) for lam, v in ref["m_eigenpairs"]["pairs"]]
    eig_ok = M_ok and _same_eigenspaces(cl.block_matrix, want_pairs, cl.eigenpairs)
    lim_m = limit_of(endomorphism(ref["m_matrix"]["matrix"]))
    lim_ok = lim_m == expected_group(ref["expected"]["limit_m"])
    ok = image_ok and B_ok and M_ok and eig_ok and lim_ok
    return Check(6, "reference matrix chain",
                 f"image Z^{free}+Z_2, B, M, eigenpairs, lim M = "
                 f"{expected_group(ref['expected']['limit_m']).describe()}",
                 f"image {red.group.describe()}, B {B_ok}, M {M_ok}, eigenpairs {eig_ok}, "
                 f"lim M = {lim_m.describe()}", ok)


def check_singularities(p: Pipeline, ref: dict) -> Check:
    want = ref["expected"]["singularities"]
    cs = p.collared
    cents = p.centers
    periodic = [c for c in cents if c.periodic]
    got = {"periodic": len(periodic), "non_periodic": len(cents) - len(periodic)}
    types = sorted((center_type(c, cs), c.period) for c in periodic)
    want_types = sorted(PERIODIC_TYPES.items())
    ok = got == want and types == want_types
    return Check(7, "symmetric centers", f"{want}, periods {want_types}",
                 f"{got}, periods {types}", ok)


def check_hull(p: Pipeline, ref: dict) -> Check:
    want = [expected_group(ref["expected"]["hull"][f"H{i}"]) for i in range(4)]
    got = p.hull.groups()
    return Check(8, "hull cohomology", "; ".join(g.describe() for g in want),
                 "; ".join(g.describe() for g in got), got == want)


def check_properties(samples: int = 500, seed: int = 0) -> Check:
    rng = random.Random(seed)
    bad = []
    for _ in range(samples):
        m, n = rng.randint(1, 4), rng.randint(1, 4)
        A = [[rng.randint(-6, 6) for _ in range(n)] for _ in range(m)]
        S = il.smith(A, n)
        unimod = abs(il.det(S.U)) == 1 and abs(il.det(S.V)) == 1
        if (not unimod or il.matmul(il.matmul(S.U, A, cols=n), S.V, cols=n) != S.D
                or S.invariant_factors != il.invariant_factors_by_minors(A, n)):
            bad.append("smith")
            break
    G = FgAbGroup.presented(3, [[3], [0], [0]])
    if limit_of(GroupHom(G, G, il.identity(3))) != LimitGroup.of_group(G):
        bad.append("identity limit")
    B = [[25, 0, 0], [0, 3, 0], [1, 0, 1]]
    P = [[1, 2, 0], [0, 1, 0], [3, 7, 1]]
    Pinv = il.inverse_unimodular(P)
    if limit_of(endomorphism(B)) != limit_of(endomorphism(il.matmul(il.matmul(P, B), Pinv))):
        bad.append("conjugation")
    sq = Pipeline(square_system())
    torus = [(g.free_rank, list(g.torsion)) for g in sq.cohomology.groups()]
    if len(sq.collared) != 1 or torus != [(1, []), (2, []), (1, [])]:
        bad.append("square torus")
    tri = pinwheel_triangle_system()
    for pid in tri.order:
        base = single(tri, pid).area()
        lam2 = tri.inflation * tri.inflation
        for k in range(1, 6):
            base = base * lam2
            if substitute(single(tri, pid), k).area() != base:
                bad.append("area")
                break
    return Check(9, "property checks", "smith, identity, conjugation, torus, area",
                 "all hold" if not bad else "failed: " + ", ".join(bad), not bad)


def run_checks(p: Pipeline, ref: dict, properties: bool = True) -> list[Check]:
    rows = [check_census(p, ref), check_complex(p, ref), check_cohomology(p, ref),
            check_induced(p, ref), check_limits(p, ref), check_fixture_chain(ref),
            check_singularities(p, ref), check_hull(p, ref)]
    if properties:
        rows.append(check_properties())
    return rows


def format_table(rows: list[Check]) -> str:
    lines = [f"{'#':>2}  {'result':6}  {'check':32}  observed"]
    for r in rows:
        lines.append(f"{r.criterion:>2}  {'PASS' if r.passed else 'FAIL':6}  {r.name:32}  {r.observed}")
        if not r.passed:
            lines.append(f"{'':>2}  {'':6}  {'expected':>32}  {r.expected}")
    return "\n".join(lines)
