"""JSON documents for presentations, orbicurves, representations, quotients and reports."""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .abelian import AbelianQuotient, AbelianStructure, Character
from .covers import CoverReport, PermRep
from .fpgroup import OrbicurveSpec, Presentation, Word, orbicurve_group


class DocumentError(ValueError):
    """A JSON document has the wrong shape."""


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def rational(x: Fraction | int) -> dict:
    x = Fraction(x)
    return {"num": x.numerator, "den": x.denominator}


def word_to_json(w: Word, names) -> list:
    return [[names[g], e] for g, e in w.letters]


def presentation_to_json(p: Presentation) -> dict:
    return {
        "generators": list(p.generators),
        "relators": [word_to_json(r, p.generators) for r in p.relators],
    }


def presentation_from_json(doc: dict) -> Presentation:
    try:
        gens = [str(g) for g in doc["generators"]]
        pos = {g: i for i, g in enumerate(gens)}
        rels = []
        for r in doc.get("relators", []):
            rels.append(Word(tuple((pos[str(n)], int(e)) for n, e in r)))
    except KeyError as exc:
        raise DocumentError(f"presentation refers to unknown key or generator {exc}") from None
    except (TypeError, ValueError) as exc:
        raise DocumentError(f"malformed presentation: {exc}") from None
    return Presentation(tuple(gens), tuple(rels))


def word_from_json(doc: list, p: Presentation) -> Word:
    try:
        return Word(tuple((p.index(str(n)), int(e)) for n, e in doc))
    except (KeyError, TypeError, ValueError) as exc:
        raise DocumentError(f"malformed word {doc!r}: {exc}") from None


def orbicurve_to_json(spec: OrbicurveSpec) -> dict:
    return {"genus": spec.genus, "punctures": spec.punctures, "indices": list(spec.indices)}


def orbicurve_from_json(doc: dict) -> OrbicurveSpec:
    try:
        return OrbicurveSpec(int(doc.get("genus", 0)), int(doc.get("punctures", 0)), tuple(doc.get("indices", ())))
    except (TypeError, ValueError) as exc:
        raise DocumentError(f"malformed orbicurve: {exc}") from None


def is_orbicurve_doc(doc: dict) -> bool:
    return "generators" not in doc and any(k in doc for k in ("genus", "punctures", "indices"))


def group_from_json(doc: dict) -> Presentation:
    """Either a presentation or an orbicurve document."""
    if is_orbicurve_doc(doc):
        return orbicurve_group(orbicurve_from_json(doc))
    if "generators" in doc:
        return presentation_from_json(doc)
    raise DocumentError("expected a presentation or an orbicurve document")


def rep_to_json(rep: PermRep) -> dict:
    return rep.to_json()


def rep_from_json(doc: dict, p: Presentation) -> PermRep:
    try:
        return PermRep.from_images(p, int(doc["degree"]), {k: list(v) for k, v in doc["images"].items()})
    except KeyError as exc:
        raise DocumentError(f"representation document lacks {exc}") from None
    except (TypeError, ValueError) as exc:
        raise DocumentError(f"malformed representation: {exc}") from None


def quotient_from_json(doc: dict | None, p: Presentation) -> AbelianQuotient:
    """``{"abelianization": true}`` (also the default) or ``{"torsion": [...], "images": {...}}``."""
    if doc is None or doc.get("abelianization"):
        return AbelianQuotient.abelianization(p)
    try:
        return AbelianQuotient.from_images(p, [int(e) for e in doc["torsion"]], doc.get("images", {}))
    except KeyError as exc:
        raise DocumentError(f"quotient document lacks {exc}") from None


def quotient_to_json(q: AbelianQuotient) -> dict:
    return {
        "torsion": list(q.target.torsion),
        "images": {g: list(v) for g, v in zip(q.presentation.generators, q.images)},
    }


def abelian_to_json(A: AbelianStructure) -> dict:
    return A.to_json()


def character_to_json(xi: Character) -> dict:
    return {"level": xi.level, "exponents": list(xi.exponents)}


def cover_report_to_json(r: CoverReport) -> dict:
    out = {
        "degree": r.degree,
        "transitive": r.transitive,
        "upstairs_points": [
            {"base_point": u.base_point, "cycle_length": u.cycle_length, "index": u.index}
            for u in r.upstairs_points
        ],
        "genus_upstairs": r.genus_upstairs,
        "euler_orb_upstairs": rational(r.euler_orb_upstairs),
        "flags": dict(r.flags),
    }
    spec = r.upstairs_spec()
    if spec is not None:
        out["upstairs_orbicurve"] = orbicurve_to_json(spec)
    if r.components:
        out["components"] = [cover_report_to_json(c) for c in r.components]
    return out


def loads(text: str, source: str = "<input>") -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{source}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
