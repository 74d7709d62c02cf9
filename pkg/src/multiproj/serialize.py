"""Problem-spec parsing and JSON report construction (schema ``multiproj/1``).

Integers are emitted as JSON integers; non-integral rationals as ``"p/q"``
strings.  No floats appear anywhere.  Variable indices in reports are 1-based.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Any, Sequence

import jsonschema

from .chambers import ChamberFan, EmbeddingReport, ModelSummary
from .cones import RationalCone
from .grading import GradedPolyRing, Monomial
from .lattice import FgAbelianGroup, GroupHom, IntegerMatrix
from .proj import ProjData, RayRestriction

SCHEMA_ID = "multiproj/1"


class SpecError(ValueError):
    """Malformed problem description."""


def load_schema(name: str) -> dict:
    return json.loads(resources.files("multiproj").joinpath("schema", name).read_text())


def rational(x) -> int | str:
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_rational(x) -> Fraction:
    if isinstance(x, bool) or isinstance(x, float):
        raise SpecError(f"{x!r} is not an exact rational; use an integer or a 'p/q' string")
    try:
        return Fraction(x)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise SpecError(f"cannot parse rational {x!r}") from exc


# ---------------------------------------------------------------------------
# input


@dataclass(frozen=True)
class ProblemSpec:
    ring: GradedPolyRing
    regrading: GroupHom | None = None
    ample_class: tuple[Fraction, ...] | None = None
    all_gen: bool = False


def _group(obj) -> FgAbelianGroup:
    try:
        return FgAbelianGroup(int(obj["free_rank"]), tuple(obj.get("torsion", [])))
    except ValueError as exc:
        raise SpecError(f"invalid grading group: {exc}") from exc


def _degree(obj, group: FgAbelianGroup) -> tuple[int, ...]:
    if isinstance(obj, dict):
        free = list(obj["free"])
        tors = list(obj.get("torsion", [0] * len(group.torsion)))
        if len(free) != group.free_rank or len(tors) != len(group.torsion):
            raise SpecError(f"degree {obj} does not match grading group {group}")
        return tuple(free + tors)
    if len(obj) != group.ngens:
        raise SpecError(f"degree {obj} must have {group.ngens} coordinates for grading group {group}")
    return tuple(obj)


def parse_spec(doc: dict) -> ProblemSpec:
    try:
        jsonschema.validate(doc, load_schema("input.json"))
    except jsonschema.ValidationError as exc:
        raise SpecError(f"spec does not match {SCHEMA_ID}: {exc.message}") from exc
    names = doc.get("variables")
    try:
        if "fan_rays" in doc:
            ring = GradedPolyRing.from_fan_rays(doc["fan_rays"], names)
        else:
            group = _group(doc["grading_group"])
            degrees = [_degree(d, group) for d in doc["degrees"]]
            if names is not None and len(names) != len(degrees):
                raise SpecError("one degree per variable is required")
            ring = GradedPolyRing.from_degrees(degrees, group, names)
        regrading = None
        if "regrading" in doc:
            rg = doc["regrading"]
            target = _group(rg["target"])
            regrading = GroupHom(ring.group, target, IntegerMatrix.from_rows(rg["matrix"], cols=ring.group.ngens))
    except SpecError:
        raise
    except (ValueError, KeyError, TypeError) as exc:
        raise SpecError(str(exc)) from exc
    ample = None
    if doc.get("ample_class") is not None:
        ample = tuple(parse_rational(a) for a in doc["ample_class"])
        if len(ample) != ring.rank:
            raise SpecError(f"ample_class must have {ring.rank} coordinates")
    return ProblemSpec(ring, regrading, ample, bool(doc.get("all_gen", False)))


def parse_monomial(text: str, k: int) -> Monomial:
    parts = [p.strip() for p in text.split(",")]
    try:
        exps = [int(p) for p in parts]
    except ValueError as exc:
        raise SpecError(
            f"--monomial expects {k} comma-separated nonnegative exponents; "
            "relevance is only decided for monomials, not general polynomials"
        ) from exc
    if len(exps) != k or any(e < 0 for e in exps):
        raise SpecError(f"--monomial expects {k} comma-separated nonnegative exponents")
    return Monomial(exps)


# ---------------------------------------------------------------------------
# output


def group_json(g: FgAbelianGroup) -> dict:
    return {"free_rank": g.free_rank, "torsion": list(g.torsion)}


def ring_json(ring: GradedPolyRing) -> dict:
    return {
        "variables": list(ring.var_names),
        "grading_group": group_json(ring.group),
        "degrees": [list(c) for c in ring.degree_map.hom.matrix.columns()],
    }


def cone_json(c: RationalCone) -> dict:
    return {"rays": [list(r) for r in c.rays], "lineality": [list(l) for l in c.lineality]}


def support_json(s) -> list[int]:
    return [i + 1 for i in sorted(s)]


def monomial_name(s, names: Sequence[str]) -> str:
    return "*".join(names[i] for i in sorted(s)) or "1"


def proj_json(p: ProjData, cliques=None) -> dict:
    names = p.ring.var_names
    charts = []
    for c in p.charts:
        entry = {
            "support": support_json(c.support),
            "monomial": monomial_name(c.support, names),
            "degree_cone": cone_json(c.degree_cone),
            "sigma": cone_json(c.sigma),
        }
        if c.chart_semigroup is not None:
            entry["semigroup"] = [list(u) for u in c.chart_semigroup]
        charts.append(entry)
    out = {
        "schema": SCHEMA_ID,
        "command": "proj",
        "status": "empty" if p.empty else "ok",
        "ring": ring_json(p.ring),
        "M_basis": [list(b) for b in p.M_basis],
        "dimension": p.dimension,
        "charts": charts,
        "separated": p.separated,
        "separation_witness": None if p.separation_witness is None else [support_json(s) for s in p.separation_witness],
    }
    if cliques is not None:
        out["maximal_separated_subcollections"] = [[support_json(s) for s in c] for c in cliques]
    return out


def relevance_json(ring: GradedPolyRing, m: Monomial, degree, cone: RationalCone, relevant: bool) -> dict:
    return {
        "schema": SCHEMA_ID,
        "command": "relevance",
        "ring": ring_json(ring),
        "monomial": m.format(ring.var_names),
        "exponents": list(m.exponents),
        "degree": {"free": list(degree.free), "torsion": list(degree.torsion)},
        "cone": cone_json(cone),
        "relevant": relevant,
    }


def summary_json(s: ModelSummary) -> dict:
    return {
        "dimension": s.dimension,
        "complete": s.complete,
        "simplicial": s.simplicial,
        "separated": s.separated,
        "maximal_cones": s.n_maximal_cones,
        "rays": [list(r) for r in s.rays],
        "variables_used": [j + 1 for j in s.variables_used],
        "contracted": [j + 1 for j in s.contracted],
    }


def chambers_json(cf: ChamberFan, report: EmbeddingReport | None = None) -> dict:
    chambers = []
    for i, c in enumerate(cf.chambers):
        entry = {
            "index": i,
            "cone": cone_json(c.cone),
            "sample_point": list(c.sample_point),
            "relevant_supports": [support_json(s) for s in c.relevant_supports],
            "minimal_supports": [support_json(s) for s in c.minimal_supports],
            "fan": [cone_json(x) for x in c.fan],
            "maximal_cones": [cone_json(x) for x in c.maximal_cones],
        }
        if report is not None:
            entry["model"] = summary_json(report.summaries[i])
        chambers.append(entry)
    out = {
        "schema": SCHEMA_ID,
        "command": "chambers",
        "ring": ring_json(cf.ring),
        "degree_cone": cone_json(cf.degree_cone),
        "M_basis": [list(b) for b in cf.M_basis],
        "chambers": chambers,
        "walls": [{"chambers": [a, b], "cone": cone_json(w)} for a, b, w in cf.walls],
    }
    if report is not None:
        out["embedding"] = {
            "picard_group": group_json(report.picard_group),
            "picard_matches_grading": report.picard_matches_grading,
            "effective_cone": cone_json(report.effective_cone),
            "ample_chamber": report.ample_chamber,
            "all_gen": report.all_gen,
            "conditional": report.conditional,
        }
    return out


def ray_json(rr: RayRestriction) -> dict:
    return {
        "direction": list(rr.direction),
        "generators": [list(g) for g in rr.generators],
        "weights": list(rr.weights),
        "covering_supports": [support_json(s) for s in rr.covering_supports],
        "hypothesis_holds": rr.hypothesis_holds,
        "nonnegative": rr.nonnegative,
    }


def spec_json(ring: GradedPolyRing, extra: dict | None = None) -> dict:
    doc = {"schema": SCHEMA_ID}
    doc.update(ring_json(ring))
    if extra:
        doc.update(extra)
    return doc


def _format(obj: Any, indent: int) -> str:
    pad = "  " * (indent + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(k)}: {_format(v, indent + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + "  " * indent + "}"
    if isinstance(obj, list):
        if all(not isinstance(x, (list, dict)) for x in obj):
            return "[" + ", ".join(json.dumps(x, ensure_ascii=False) for x in obj) + "]"
        items = [pad + _format(x, indent + 1) for x in obj]
        return "[\n" + ",\n".join(items) + "\n" + "  " * indent + "]"
    return json.dumps(obj, ensure_ascii=False)


def dumps(obj: Any) -> str:
    """Deterministic JSON: nested containers indented, scalar arrays inline."""
    return _format(obj, 0) + "\n"


def chamber_dot(cf: ChamberFan) -> str:
    """Chamber adjacency graph in Graphviz DOT syntax."""
    lines = ["graph chambers {"]
    for i, c in enumerate(cf.chambers):
        rays = " ".join("(" + ",".join(map(str, r)) + ")" for r in c.cone.rays)
        lines.append(f'  c{i} [label="C{i}: {rays}"];')
    for a, b, w in cf.walls:
        rays = " ".join("(" + ",".join(map(str, r)) + ")" for r in w.rays) or "0"
        lines.append(f'  c{a} -- c{b} [label="{rays}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def polymake_fan(p: ProjData) -> str:
    """Plain-text ray / cone listing in the style of polymake's fan files.

    ``RAYS`` lists the distinct primitive rays (0-based indices follow the
    listing order); ``CONES`` lists one chart cone per line as a set of ray
    indices, in chart order, followed by the chart monomial as a comment.
    Duplicate cones are kept: they are exactly the non-separated charts.
    """
    rays = sorted({r for c in p.charts for r in c.sigma.rays})
    idx = {r: i for i, r in enumerate(rays)}
    lines = [f"AMBIENT_DIM {len(p.M_basis)}", "", "RAYS"]
    lines += [" ".join(map(str, r)) for r in rays]
    lines += ["", "CONES"]
    for c in p.charts:
        members = " ".join(str(idx[r]) for r in c.sigma.rays)
        lines.append(f"{{{members}}}  # {monomial_name(c.support, p.ring.var_names)}")
    return "\n".join(lines) + "\n"
