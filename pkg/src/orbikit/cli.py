"""Command-line front end.

Every command reads JSON documents (a path, or ``fixture:NAME`` for a
shipped fixture) and writes a text or JSON report.  Exit codes: 0 success,
1 unreadable input, 2 refused precondition, 3 internal consistency failure.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from .abelian import Character, h1
from .alexander import charvar, depth, depth_table, restriction_report
from .covers import DEFAULT_COSET_LIMIT, analyze_cover, cover_from_fibers, reidemeister_schreier, saturation_check
from .errors import ConsistencyError, PreconditionError
from .fixtures import fixture
from .io import (
    DocumentError,
    character_to_json,
    cover_report_to_json,
    dumps,
    group_from_json,
    is_orbicurve_doc,
    loads,
    orbicurve_from_json,
    orbicurve_to_json,
    presentation_to_json,
    quotient_from_json,
    rational,
    rep_from_json,
    word_from_json,
)
from .sakuma import abelian_cover_genus, genus_with_constant, length_count_b1, namba_uniformizing, sakuma_b1

COMMANDS = (
    "group",
    "h1",
    "depth",
    "charvar",
    "cover-analyze",
    "cover-rs",
    "cover-fibers",
    "sakuma",
    "abelian-cover",
    "restriction",
    "saturation",
    "fixture",
)


@dataclass
class JobConfig:
    command: str
    inputs: dict[str, str] = field(default_factory=dict)
    options: dict = field(default_factory=dict)
    format: str = "text"
    jobs: int = 1
    coset_limit: int = DEFAULT_COSET_LIMIT
    out: str | None = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if self.jobs < 1:
            raise ValueError("--jobs must be >= 1")
        if self.format not in ("text", "json"):
            raise ValueError("--format must be text or json")


def read_doc(ref: str):
    if ref.startswith("fixture:"):
        return fixture(ref.split(":", 1)[1])
    path = Path(ref)
    try:
        text = path.read_text()
    except OSError as exc:
        raise DocumentError(f"cannot read {ref}: {exc.strerror}") from None
    return loads(text, ref)


def _optional_doc(cfg: JobConfig, key: str):
    ref = cfg.inputs.get(key)
    return read_doc(ref) if ref else None


def _cmd_group(cfg):
    p = group_from_json(read_doc(cfg.inputs["input"]))
    return presentation_to_json(p), str(p)


def _cmd_h1(cfg):
    A = h1(group_from_json(read_doc(cfg.inputs["input"])))
    return A.to_json(), A.describe()


def _cmd_depth(cfg):
    p = group_from_json(read_doc(cfg.inputs["input"]))
    chi = cfg.options.get("character")
    if chi is not None:
        xi = Character(cfg.options["level"], tuple(chi))
        d = depth(p, xi)
        return {"character": list(xi.exponents), "level": xi.level, "depth": d}, f"depth = {d}"
    q = quotient_from_json(_optional_doc(cfg, "quotient"), p)
    rows = [{"character": list(xi.exponents), "depth": d} for xi, d in depth_table(q, jobs=cfg.jobs)]
    text = "\n".join(f"{r['character']}  depth {r['depth']}" for r in rows)
    return {"level": q.target.exponent, "torsion": list(q.target.torsion), "depths": rows}, text


def _cmd_charvar(cfg):
    p = group_from_json(read_doc(cfg.inputs["input"]))
    q = quotient_from_json(_optional_doc(cfg, "quotient"), p)
    k = cfg.options.get("k", 1)
    chars = charvar(q, k, jobs=cfg.jobs)
    doc = {"k": k, "level": q.target.exponent, "characters": [list(x.exponents) for x in chars]}
    return doc, f"Char_{k}: {len(chars)} nontrivial characters\n" + "\n".join(str(list(x.exponents)) for x in chars)


def _cmd_cover_analyze(cfg):
    spec = orbicurve_from_json(read_doc(cfg.inputs["spec"]))
    from .fpgroup import orbicurve_group

    rep = rep_from_json(read_doc(cfg.inputs["rep"]), orbicurve_group(spec))
    report = analyze_cover(spec, rep)
    doc = cover_report_to_json(report)
    up = report.upstairs_spec()
    text = (
        f"degree {report.degree}, transitive {report.transitive}\n"
        f"upstairs: {up if up else 'disconnected'}\n"
        f"euler_orb upstairs: {report.euler_orb_upstairs}\n"
        f"flags: {', '.join(f'{k}={v}' for k, v in sorted(report.flags.items()))}"
    )
    return doc, text


def _cmd_cover_rs(cfg):
    p = group_from_json(read_doc(cfg.inputs["input"]))
    rep = rep_from_json(read_doc(cfg.inputs["rep"]), p)
    sub = reidemeister_schreier(p, rep, cfg.options.get("basepoint", 1) - 1, cfg.coset_limit)
    A = h1(sub)
    doc = {"presentation": presentation_to_json(sub), "h1": A.to_json()}
    return doc, f"{sub.ngens} generators, {len(sub.relators)} relators; H1 = {A.describe()}"


def _cmd_cover_fibers(cfg):
    doc = read_doc(cfg.inputs["input"])
    r = cover_from_fibers(doc["target_genus"], doc["target_points"], doc["fibers"], doc["degree"])
    out = {
        "degree": r.degree,
        "source": orbicurve_to_json(r.source_spec),
        "euler_orb_source": rational(r.euler_orb_source),
        "euler_orb_target": rational(r.euler_orb_target),
        "multiplicative": r.multiplicative,
    }
    text = f"source {r.source_spec}, chi_orb {r.euler_orb_source} = {r.degree} * {r.euler_orb_target}: {r.multiplicative}"
    return out, text


def _cmd_sakuma(cfg):
    p = group_from_json(read_doc(cfg.inputs["base"]))
    q = quotient_from_json(_optional_doc(cfg, "quotient"), p)
    r = sakuma_b1(q, with_oracle=cfg.options.get("oracle", False), jobs=cfg.jobs, coset_limit=cfg.coset_limit)
    doc = {
        "b1_base": r.b1_base,
        "b1_cover": r.b1_cover,
        "depth_sum": r.depth_sum,
        "oracle_b1": r.oracle_b1,
        "deck_group": q.target.to_json(),
        "depth_table": [{"character": list(x.exponents), "depth": d} for x, d in r.depth_table],
    }
    text = f"b1(base) = {r.b1_base}, sum of depths = {r.depth_sum}, b1(cover) = {r.b1_cover}"
    if r.oracle_b1 is not None:
        text += f", oracle b1 = {r.oracle_b1}"
    r.check()
    return doc, text


def _cmd_abelian_cover(cfg):
    idx = cfg.options["indices"]
    g = abelian_cover_genus(idx)
    doc = {
        "indices": list(idx),
        "namba_uniformizing": namba_uniformizing(idx),
        "degree": g.degree,
        "genus": g.genus,
        "genus_constant_1": rational(genus_with_constant(idx, 1)),
        "length_count_b1": length_count_b1(idx),
    }
    text = f"abelian cover of degree {g.degree}, genus {g.genus}"
    return doc, text


def _cmd_restriction(cfg):
    p_orb = group_from_json(read_doc(cfg.inputs["orbifold"]))
    p_open = group_from_json(read_doc(cfg.inputs["open"]))
    q = quotient_from_json(_optional_doc(cfg, "quotient"), p_orb)
    mdoc = _optional_doc(cfg, "matching")
    matching = None
    if mdoc is not None:
        matching = {k: (v if isinstance(v, str) else word_from_json(v, p_orb)) for k, v in mdoc.items()}
    k = cfg.options.get("k", 1)
    rows = restriction_report(p_orb, p_open, q, k, matching, jobs=cfg.jobs)
    doc = {
        "k": k,
        "rows": [
            {
                "character": list(r.character.exponents),
                "depth_orbifold": r.depth_orbifold,
                "depth_open": r.depth_open,
                "agree": r.agree,
            }
            for r in rows
        ],
    }
    text = "\n".join(
        f"{list(r.character.exponents)}  orbifold {r.depth_orbifold}  open {r.depth_open}  {'agree' if r.agree else 'DIFFER'}"
        for r in rows
    )
    return doc, text


def _cmd_saturation(cfg):
    doc = read_doc(cfg.inputs["input"])
    rep_doc = _optional_doc(cfg, "rep")
    if is_orbicurve_doc(doc):
        spec = orbicurve_from_json(doc)
        from .fpgroup import orbicurve_group

        rep = rep_from_json(rep_doc, orbicurve_group(spec)) if rep_doc else None
        rows = saturation_check(spec, rep)
    else:
        p = group_from_json(doc)
        merid = [word_from_json(m["word"], p) for m in doc["meridians"]]
        rep = rep_from_json(rep_doc, p) if rep_doc else None
        rows = saturation_check(
            p, rep, merid, [m["index"] for m in doc["meridians"]], [m.get("label", f"m{i + 1}") for i, m in enumerate(doc["meridians"])]
        )
    out = [
        {"label": r.label, "declared": r.declared, "order_h1": r.order_h1, "order_rep": r.order_rep, "saturated": r.saturated,
         "certified": r.certified}
        for r in rows
    ]
    text = "\n".join(
        f"{r.label}: declared {r.declared}, H1 order {r.order_h1 or 'inf'}, rep order {r.order_rep or '-'}"
        f"{'' if r.saturated else '  NOT SATURATED'}{'  (certified)' if r.certified else ''}"
        for r in rows
    )
    return {"meridians": out}, text


def _cmd_fixture(cfg):
    doc = fixture(cfg.options["name"])
    return doc, dumps(doc).rstrip()


_DISPATCH = {
    "group": _cmd_group,
    "h1": _cmd_h1,
    "depth": _cmd_depth,
    "charvar": _cmd_charvar,
    "cover-analyze": _cmd_cover_analyze,
    "cover-rs": _cmd_cover_rs,
    "cover-fibers": _cmd_cover_fibers,
    "sakuma": _cmd_sakuma,
    "abelian-cover": _cmd_abelian_cover,
    "restriction": _cmd_restriction,
    "saturation": _cmd_saturation,
    "fixture": _cmd_fixture,
}


def run(cfg: JobConfig) -> tuple[int, str]:
    """Execute one job; returns the exit code and the report (or error message)."""
    try:
        doc, text = _DISPATCH[cfg.command](cfg)
    except PreconditionError as exc:
        return 2, f"refused: {exc}\n"
    except ConsistencyError as exc:
        return 3, f"consistency failure: {exc}\n"
    except DocumentError as exc:
        return 1, f"error: {exc}\n"
    except (KeyError, TypeError, AttributeError, ValueError) as exc:
        # documents with the right JSON syntax but the wrong shape
        return 1, f"error: malformed input document ({type(exc).__name__}: {exc})\n"
    report = dumps(doc) if cfg.format == "json" else text.rstrip() + "\n"
    return 0, report


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", "-o", help="write the report to this file")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for character sweeps")
    common.add_argument("--coset-limit", type=int, default=DEFAULT_COSET_LIMIT)

    parser = _Parser(prog="orbikit", description="Orbifold groups, characteristic varieties and abelian covers.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    for name, help_text in (("group", "print a presentation"), ("h1", "abelianization")):
        sp = sub.add_parser(name, parents=[common], help=help_text)
        sp.add_argument("--input", "-i", required=True)

    sp = sub.add_parser("depth", parents=[common], help="depth of torsion characters")
    sp.add_argument("--input", "-i", required=True)
    sp.add_argument("--quotient", "-q")
    sp.add_argument("--character", type=_int_list, help="per-generator exponents")
    sp.add_argument("--level", type=int)

    sp = sub.add_parser("charvar", parents=[common], help="torsion points of Char_k")
    sp.add_argument("--input", "-i", required=True)
    sp.add_argument("--quotient", "-q")
    sp.add_argument("-k", type=int, default=1)

    cover = sub.add_parser("cover", help="unbranched covers")
    csub = cover.add_subparsers(dest="cover_command", required=True, parser_class=_Parser)
    sp = csub.add_parser("analyze", parents=[common])
    sp.add_argument("--spec", required=True)
    sp.add_argument("--rep", required=True)
    sp = csub.add_parser("rs", parents=[common])
    sp.add_argument("--input", "-i", required=True)
    sp.add_argument("--rep", required=True)
    sp.add_argument("--basepoint", type=int, default=1, help="1-based")
    sp = csub.add_parser("fibers", parents=[common])
    sp.add_argument("--input", "-i", required=True)

    sp = sub.add_parser("sakuma", parents=[common], help="b1 of an abelian cover")
    sp.add_argument("--base", required=True)
    sp.add_argument("--quotient", "-q")
    sp.add_argument("--oracle", action="store_true")

    sp = sub.add_parser("abelian-cover", parents=[common], help="genus of the abelian cover of a sphere orbifold")
    sp.add_argument("--indices", type=_int_list, required=True)

    sp = sub.add_parser("restriction", parents=[common], help="orbifold vs open-complement depths")
    sp.add_argument("--orbifold", required=True)
    sp.add_argument("--open", required=True)
    sp.add_argument("--quotient", "-q")
    sp.add_argument("--matching")
    sp.add_argument("-k", type=int, default=1)

    sp = sub.add_parser("saturation", parents=[common], help="orders of meridians")
    sp.add_argument("--input", "-i", required=True)
    sp.add_argument("--rep")

    sp = sub.add_parser("fixture", parents=[common], help="print a shipped fixture")
    sp.add_argument("name")
    return parser


def config_from_args(ns: argparse.Namespace) -> JobConfig:
    command = ns.command
    if command == "cover":
        command = f"cover-{ns.cover_command}"
    inputs = {}
    for key in ("input", "quotient", "spec", "rep", "base", "orbifold", "open", "matching"):
        val = getattr(ns, key, None)
        if val:
            inputs[key] = val
    options = {}
    for key in ("character", "level", "k", "basepoint", "oracle", "indices", "name"):
        if hasattr(ns, key):
            options[key] = getattr(ns, key)
    if options.get("character") is not None and not options.get("level"):
        raise ValueError("--character requires --level")
    return JobConfig(command, inputs, options, ns.format, ns.jobs, ns.coset_limit, ns.out)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = config_from_args(ns)
    except ValueError as exc:
        parser.error(str(exc))
    code, report = run(cfg)
    stream = sys.stdout if code == 0 else sys.stderr
    if code == 0 and cfg.out:
        Path(cfg.out).write_text(report)
    else:
        stream.write(report)
    return code


if __name__ == "__main__":
    sys.exit(main())
