"""Reference data for the pinwheel computation, shipped with a checksum.

The data file holds the degree-2 induced matrix on 19 generators, the
reduced endomorphisms, eigenpairs, generator vectors and the expected
counts and groups.  It is read only after its SHA-256 digest matches the
recorded one.
"""
from __future__ import annotations

import hashlib
import json
from importlib import resources
from pathlib import Path
from typing import Optional

from .limit import LimitGroup

DATA_FILE = "reference.json"
SUM_FILE = "reference.sha256"


class FixtureError(RuntimeError):
    pass


def _read(name: str) -> bytes:
    return resources.files("tilecoh").joinpath("data", name).read_bytes()


def load_fixtures(path: Optional[Path] = None, checksum: Optional[str] = None) -> dict:
    """Parsed reference data; aborts with :class:`FixtureError` on a digest mismatch."""
    raw = Path(path).read_bytes() if path is not None else _read(DATA_FILE)
    want = checksum if checksum is not None else _read(SUM_FILE).decode().split()[0]
    got = hashlib.sha256(raw).hexdigest()
    if got != want:
        raise FixtureError(f"reference data checksum mismatch: expected {want}, got {got}")
    return json.loads(raw)


def expected_group(d: dict) -> LimitGroup:
    """Expected limit group; ``localized`` may hold ``[base, mult]`` pairs."""
    locs = [(x["base"], x["mult"]) if isinstance(x, dict) else tuple(x)
            for x in d.get("localized", [])]
    return LimitGroup(locs, d.get("free_rank", 0), list(d.get("torsion", [])))
