"""Named input documents shipped with the package, each validated on load."""

from __future__ import annotations

import functools
import json
import os
from pathlib import Path

from .abelian import AbelianQuotient, h1
from .alexander import depth_table
from .covers import cover_from_fibers, validate_rep
from .errors import ConsistencyError, UnknownFixtureError
from .fpgroup import Presentation, Word
from .io import group_from_json, orbicurve_from_json, presentation_from_json, rep_from_json

_PACKAGE_DIR = Path(__file__).with_name("fixtures")


def fixture_dir() -> Path:
    env = os.environ.get("ORBIKIT_FIXTURES")
    return Path(env) if env else _PACKAGE_DIR


def fixture_names() -> list[str]:
    return sorted(p.stem for p in fixture_dir().glob("*.json"))


def _validate(name: str, doc: dict) -> None:
    kind = doc.get("kind")
    if kind == "presentation":
        presentation_from_json(doc)
        if "gate" in doc:
            _gate(name, doc)
    elif kind == "orbicurve":
        orbicurve_from_json(doc)
    elif kind == "rep":
        p = group_from_json(doc["group"])
        if not validate_rep(p, rep_from_json(doc, p)):
            raise ConsistencyError(f"fixture {name}: representation is not a homomorphism")
    elif kind == "fibers":
        cover_from_fibers(doc["target_genus"], doc["target_points"], doc["fibers"], doc["degree"])
    elif kind in ("index-tuples", "quotient"):
        pass
    else:
        raise ConsistencyError(f"fixture {name}: unknown kind {kind!r}")


def _gate(name: str, doc: dict) -> None:
    gate = doc["gate"]
    p = presentation_from_json(doc)
    A = h1(p)
    if A.free_rank != gate["h1_free_rank"] or A.torsion:
        raise ConsistencyError(f"fixture {name}: H1 is {A.describe()}, expected Z^{gate['h1_free_rank']}")
    for n, expected in gate.get("depth_sums", {}).items():
        got = _orbifold_depth_sum(json.dumps(doc, sort_keys=True), int(n))
        if got != expected:
            raise ConsistencyError(f"fixture {name}: depth sum {got} at index {n}, expected {expected}")


@functools.lru_cache(maxsize=None)
def _orbifold_depth_sum(doc_text: str, n: int) -> int:
    doc = json.loads(doc_text)
    q = AbelianQuotient.abelianization(with_meridian_powers(doc, n))
    return sum(d for _, d in depth_table(q))


def with_meridian_powers(doc: dict, n: int) -> Presentation:
    """Presentation of a gated complement document with index ``n`` on every marked meridian."""
    p = presentation_from_json(doc)
    merid = doc.get("orbifold_meridians", list(p.generators))
    return p.with_relators([Word.gen(p.index(g), n) for g in merid])


def fixture(name: str) -> dict:
    """Load and validate a fixture document by name."""
    path = fixture_dir() / f"{name}.json"
    if not path.is_file():
        raise UnknownFixtureError(f"unknown fixture {name!r}; known: {', '.join(fixture_names())}")
    doc = json.loads(path.read_text())
    _validate(name, doc)
    return doc


def ceva_complement() -> Presentation:
    return presentation_from_json(fixture("ceva"))


def ceva_orbifold(n: int) -> Presentation:
    """Ceva complement group with every line meridian raised to the power ``n`` killed."""
    return with_meridian_powers(fixture("ceva"), n)
