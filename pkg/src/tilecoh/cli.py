"""Command-line front end.

Exit codes: 0 success, 1 computation error, 2 input error, 3 verification
failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path
from typing import Optional

from . import intlin as il
from .abgrp import GroupError
from .apx import ComplexError
from .collar import CensusError
from .cone import SingularityError
from .exact import Motion
from .fixtures import FixtureError, load_fixtures
from .pipeline import Pipeline
from .tiling import BUILTIN, Patch, SubstitutionSystem, TilingError, render_svg, single, substitute

OK, COMPUTE_ERROR, INPUT_ERROR, VERIFY_FAILED = 0, 1, 2, 3

COMMANDS = ["collar", "complex", "cohomology", "induced", "limit", "singularities", "hull",
            "render", "export-matrices", "verify-paper"]


class InputError(ValueError):
    pass


# -- system files -------------------------------------------------------------

def _need(d: dict, key: str, where: str, kind=None):
    if not isinstance(d, dict) or key not in d:
        raise InputError(f"missing field '{where}{key}'")
    v = d[key]
    if kind is not None and not isinstance(v, kind):
        raise InputError(f"field '{where}{key}' has the wrong type")
    return v


def parse_system(data: dict) -> SubstitutionSystem:
    """Validate a system description field by field, then build it."""
    _need(data, "inflation", "", str)
    protos = _need(data, "prototiles", "", list)
    rules = _need(data, "rules", "", dict)
    ids = []
    for i, p in enumerate(protos):
        where = f"prototiles[{i}]."
        ids.append(_need(p, "id", where, str))
        verts = _need(p, "vertices", where, list)
        if len(verts) < 3:
            raise InputError(f"field '{where}vertices' needs at least 3 points")
    for pid in ids:
        if pid not in rules:
            raise InputError(f"missing field 'rules.{pid}'")
        for j, r in enumerate(rules[pid]):
            where = f"rules.{pid}[{j}]."
            if _need(r, "child", where, str) not in ids:
                raise InputError(f"field '{where}child' names unknown prototile {r['child']!r}")
            _need(r, "motion", where)
    try:
        return SubstitutionSystem.from_json(data)
    except TilingError as e:
        raise InputError(f"system rejected: {e}") from e
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as e:
        raise InputError(f"malformed system field: {e}") from e


def load_system(spec: Optional[str]) -> Optional[SubstitutionSystem]:
    if spec is None:
        return None
    if spec in BUILTIN:
        return BUILTIN[spec]()
    path = Path(spec)
    if not path.exists():
        raise InputError(f"system file not found: {spec}")
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as e:
        raise InputError(f"system file is not valid JSON: {e}") from e
    return parse_system(data)


# -- output -------------------------------------------------------------------

def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _json(obj) -> str:
    return json.dumps(obj, indent=1, sort_keys=True) + "\n"


def _csv(rows: list, header: Optional[list] = None) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if header:
        w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _flat_csv(d: dict) -> str:
    """Two-column CSV of the scalar leaves of a nested report."""
    rows = []

    def walk(prefix, v):
        if isinstance(v, dict):
            for k in v:
                walk(f"{prefix}.{k}" if prefix else str(k), v[k])
        elif isinstance(v, list) and v and isinstance(v[0], (dict, list)):
            for i, x in enumerate(v):
                walk(f"{prefix}[{i}]", x)
        else:
            rows.append([prefix, json.dumps(v) if isinstance(v, list) else v])

    walk("", d)
    return _csv(rows, ["key", "value"])


def _report(obj: dict, fmt: str) -> str:
    return _json(obj) if fmt == "json" else _flat_csv(obj)


def _star_svg(p: Pipeline, tiles: list) -> str:
    cs = p.collared
    patch = Patch(cs.base, [(cs.by_label[lab].base, g) for lab, g in tiles])
    return render_svg(patch, width=200)


# -- commands -----------------------------------------------------------------

def cmd_collar(p: Pipeline, args) -> int:
    cs = p.collared
    tiles = cs.to_json()["tiles"]
    if args.format == "json":
        _emit(_json(tiles), args.out)
    else:
        rows = [[t["label"], t["base"], int(t["symmetric"]), len(t["corona"]),
                 " ".join(c["label"] for c in t["children"])] for t in tiles]
        _emit(_csv(rows, ["label", "base", "symmetric", "corona_size", "children"]), args.out)
    return OK


def cmd_complex(p: Pipeline, args) -> int:
    out = p.complex_report()
    if args.format == "json":
        out["cells"] = p.complex.to_json()
    _emit(_report(out, args.format), args.out)
    return OK


def cmd_cohomology(p: Pipeline, args) -> int:
    out = p.cohomology_report()
    if args.format == "json":
        out["generators"] = {f"H{i}": [list(g) for g in grp.generators]
                             for i, grp in enumerate(p.cohomology.groups())}
    _emit(_report(out, args.format), args.out)
    return OK


def cmd_induced(p: Pipeline, args) -> int:
    _emit(_report(p.induced_report(), args.format), args.out)
    return OK


def cmd_limit(p: Pipeline, args) -> int:
    out = p.limit_report()
    out["describe"] = {f"H{i}": g.describe() for i, g in enumerate(p.limit_groups())}
    _emit(_report(out, args.format), args.out)
    return OK


def cmd_singularities(p: Pipeline, args) -> int:
    out = p.singularity_report()
    if args.format == "json":
        for c, d in zip(p.centers, out["centers"]):
            d["svg"] = _star_svg(p, c.tiles)
        _emit(_json(out), args.out)
    else:
        rows = [[c.index, c.kind, " ".join(c.labels), c.image, int(c.periodic), c.period]
                for c in p.centers]
        _emit(_csv(rows, ["index", "kind", "labels", "image", "periodic", "period"]), args.out)
    return OK


def cmd_hull(p: Pipeline, args) -> int:
    _emit(_report(p.hull_report(), args.format), args.out)
    return OK


def cmd_render(p: Pipeline, args) -> int:
    s = p.system
    pid = args.prototile or s.order[0]
    if pid not in s.prototiles:
        raise InputError(f"unknown prototile {pid!r}")
    if args.level < 0:
        raise InputError("--level must be non-negative")
    patch = substitute(single(s, pid, Motion.identity()), args.level)
    _emit(render_svg(patch), args.out)
    return OK


def cmd_export(p: Pipeline, args) -> int:
    cw = p.complex
    F0, F1, F2 = p.induced.pullbacks()
    mats = {"delta0": cw.delta0, "delta1": cw.delta1, "pullback0": F0, "pullback1": F1,
            "pullback2": F2, "A2": p.induced_report()["A2"]}
    if args.format == "json":
        _emit(_json(mats), args.out)
        return OK
    if args.out:
        d = Path(args.out)
        d.mkdir(parents=True, exist_ok=True)
        for name, M in mats.items():
            (d / f"{name}.csv").write_text(il.to_csv(M))
    else:
        sys.stdout.write("".join(f"# {name}\n{il.to_csv(M)}" for name, M in mats.items()))
    return OK


def cmd_verify(p: Pipeline, args) -> int:
    from .verify import format_table, run_checks

    ref = load_fixtures()
    rows = run_checks(p, ref)
    table = format_table(rows)
    report = {
        "mode": "reference generators" if args.paper_generators else "computed",
        "checks": [r.to_json() for r in rows],
        "passed": all(r.passed for r in rows),
        "timing": dict(p.timing),
    }
    if args.out:
        Path(args.out).write_text(_json(report))
    sys.stdout.write(table + "\n")
    return OK if report["passed"] else VERIFY_FAILED


HANDLERS = {
    "collar": cmd_collar, "complex": cmd_complex, "cohomology": cmd_cohomology,
    "induced": cmd_induced, "limit": cmd_limit, "singularities": cmd_singularities,
    "hull": cmd_hull, "render": cmd_render, "export-matrices": cmd_export,
    "verify-paper": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="tilecoh", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--system", help="system JSON file or built-in name "
                        f"({', '.join(BUILTIN)}); default: kr")
    common.add_argument("--power", type=int, default=1, help="substitution power")
    common.add_argument("--format", choices=["json", "csv"], default="json")
    common.add_argument("--out", help="output path")
    common.add_argument("--paper-generators", action="store_true",
                        help="use the reference degree-2 matrix on its 19 generators")
    common.add_argument("--seed-level", type=int, default=2, help="census seed level")
    sub = ap.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name, parents=[common])
        if name == "render":
            sp.add_argument("--level", type=int, default=3)
            sp.add_argument("--prototile")
    return ap


def main(argv: Optional[list] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return INPUT_ERROR if e.code else OK
    try:
        system = load_system(args.system)
        if args.power < 1:
            raise InputError("--power must be at least 1")
        if args.seed_level < 1:
            raise InputError("--seed-level must be at least 1")
        degree2 = None
        if args.paper_generators:
            a2 = load_fixtures()["a2_matrix"]
            degree2 = (a2["matrix"], a2["orders"])
        p = Pipeline(system, power=args.power, seed_level=args.seed_level, degree2=degree2)
        return HANDLERS[args.command](p, args)
    except InputError as e:
        print(f"input error: {e}", file=sys.stderr)
        return INPUT_ERROR
    except FixtureError as e:
        print(f"fixture error: {e}", file=sys.stderr)
        return COMPUTE_ERROR
    except (ComplexError, CensusError, SingularityError, GroupError, TilingError) as e:
        print(f"computation error: {e}", file=sys.stderr)
        return COMPUTE_ERROR


if __name__ == "__main__":
    sys.exit(main())
