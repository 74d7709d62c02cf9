"""``multiproj`` command-line front end.

Exit codes: 0 success (an empty spectrum included), 2 input error,
3 resource limit exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, replace

from .chambers import MAX_RANK, MAX_VARS, WallPointError, embedding_report, enumerate_chambers
from .cones import cone_from_generators, intersect
from .grading import (
    DEFAULT_MAX_VARS,
    LimitExceeded,
    cone_of_monomial,
    degree_of,
    is_relevant,
    regrade,
    relevant_supports,
    support_key,
)
from .proj import DEFAULT_DEGREE_BOUND, DEFAULT_MAX_CHARTS, build_proj, maximal_separated_subcollections, restrict_to_ray
from .serialize import (
    SpecError,
    chamber_dot,
    chambers_json,
    dumps,
    parse_monomial,
    parse_spec,
    polymake_fan,
    proj_json,
    ray_json,
    relevance_json,
    spec_json,
    support_json,
)

EXIT_INPUT = 2
EXIT_LIMIT = 3


@dataclass(frozen=True)
class Limits:
    max_vars: int = DEFAULT_MAX_VARS
    max_charts: int = DEFAULT_MAX_CHARTS
    max_rank: int = MAX_RANK
    max_chamber_vars: int = MAX_VARS
    degree_bound: int = DEFAULT_DEGREE_BOUND

    @classmethod
    def from_env(cls, value: str | None) -> Limits:
        """Parse ``MULTIPROJ_LIMITS``: a JSON object or ``key=value,key=value``."""
        if not value:
            return cls()
        value = value.strip()
        if value.startswith("{"):
            items = json.loads(value)
        else:
            items = dict(part.split("=", 1) for part in value.split(",") if part.strip())
        known = cls.__dataclass_fields__
        kwargs = {}
        for k, v in items.items():
            k = k.strip()
            if k not in known:
                raise SpecError(f"unknown limit {k!r} in MULTIPROJ_LIMITS")
            kwargs[k] = int(v)
        return cls(**kwargs)


def _count(n: int, noun: str) -> str:
    return f"{n} {noun}" if n == 1 else f"{n} {noun}s"


def _brief(p) -> dict:
    return {
        "status": "empty" if p.empty else "ok",
        "dimension": p.dimension,
        "charts": len(p.charts),
        "separated": p.separated,
    }


def cmd_relevance(spec, args, limits) -> tuple[dict, str]:
    if not args.monomial:
        raise SpecError("relevance needs --monomial e1,...,ek")
    ring = spec.ring
    m = parse_monomial(args.monomial, ring.num_vars)
    deg = degree_of(ring, m)
    cone = cone_of_monomial(ring, m)
    rel = is_relevant(ring, m)
    doc = relevance_json(ring, m, deg, cone, rel)
    text = f"{doc['monomial']}: degree {deg}, cone {cone}, relevant={str(rel).lower()}"
    return doc, text


def cmd_proj(spec, args, limits) -> tuple[dict, str]:
    p = build_proj(spec.ring, max_vars=limits.max_vars, semigroups=args.semigroups)
    cliques = maximal_separated_subcollections(p, limits.max_charts) if args.cliques else None
    doc = proj_json(p, cliques)
    if args.ray:
        d = tuple(int(a) for a in args.ray.split(","))
        doc["ray_restriction"] = ray_json(
            restrict_to_ray(spec.ring, d, degree_bound=limits.degree_bound, max_vars=limits.max_vars)
        )
    if args.polymake:
        with open(args.polymake, "w") as fh:
            fh.write(polymake_fan(p))
    if p.empty:
        text = "empty spectrum: no relevant monomial"
    else:
        text = (
            f"{_count(len(p.charts), 'chart')}, dimension {p.dimension}, "
            f"separated={str(p.separated).lower()}"
        )
        if p.separation_witness:
            a, b = p.separation_witness
            text += f" (witness {support_json(a)} / {support_json(b)})"
    return doc, text


def cmd_chambers(spec, args, limits) -> tuple[dict, str]:
    ring = spec.ring
    cf = enumerate_chambers(ring, limits.max_rank, limits.max_chamber_vars)
    report = embedding_report(ring, spec.ample_class, spec.all_gen)
    doc = chambers_json(cf, report)
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(chamber_dot(cf))
    text = f"{_count(len(cf.chambers), 'chamber')}, {_count(len(cf.walls), 'wall')}"
    if report.ample_chamber is not None:
        text += f", ample class in chamber {report.ample_chamber}"
    return doc, text


def _image_cone(delta, cone):
    fm = delta.free_matrix
    return cone_from_generators([fm @ g for g in cone.generators], delta.target.free_rank)


def chamber_refinement(ring, regraded, delta, limits):
    """For each regraded chamber, the original chambers whose image meets it full-dimensionally."""
    try:
        before = enumerate_chambers(ring, limits.max_rank, limits.max_chamber_vars)
        after = enumerate_chambers(regraded, limits.max_rank, limits.max_chamber_vars)
    except (ValueError, LimitExceeded):
        return None
    out = []
    for j, c in enumerate(after.chambers):
        src = [
            i for i, b in enumerate(before.chambers)
            if intersect(_image_cone(delta, b.cone), c.cone).is_full_dimensional()
        ]
        out.append({"chamber": j, "from_chambers": src})
    return out


def cmd_regrade(spec, args, limits) -> tuple[dict, str]:
    if spec.regrading is None:
        raise SpecError("regrade needs a 'regrading' entry in the spec")
    delta = spec.regrading
    if not delta.is_surjective():
        raise SpecError("regrading homomorphism is not surjective; relevance is only preserved under surjective regradings")
    ring = spec.ring
    new = regrade(ring, delta)
    before = relevant_supports(ring, limits.max_vars)
    after = relevant_supports(new, limits.max_vars)
    gained = sorted(set(after) - set(before), key=support_key)
    lost = sorted(set(before) - set(after), key=support_key)
    p0 = build_proj(ring, limits.max_vars)
    p1 = build_proj(new, limits.max_vars)
    refinement = chamber_refinement(ring, new, delta, limits)
    diff = {
        "empty": not gained and not lost and _brief(p0) == _brief(p1),
        "relevant_supports_before": [support_json(s) for s in before],
        "relevant_supports_after": [support_json(s) for s in after],
        "charts_gained": [support_json(s) for s in gained],
        "charts_lost": [support_json(s) for s in lost],
        "proj_before": _brief(p0),
        "proj_after": _brief(p1),
        "chamber_refinement": refinement,
    }
    extra = {}
    if spec.all_gen:
        extra["all_gen"] = True
    doc = {
        "schema": "multiproj/1",
        "command": "regrade",
        "surjective": True,
        "regraded_spec": spec_json(new, extra),
        "diff": diff,
    }
    text = (
        f"relevant supports {len(before)} -> {len(after)}; "
        f"dimension {p0.dimension} -> {p1.dimension}; "
        f"separated {str(p0.separated).lower()} -> {str(p1.separated).lower()}"
    )
    return doc, text


COMMANDS = {
    "relevance": cmd_relevance,
    "proj": cmd_proj,
    "chambers": cmd_chambers,
    "regrade": cmd_regrade,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="multiproj",
        description="Multihomogeneous spectra and chamber decompositions of multigraded polynomial rings.",
    )
    ap.add_argument("command", choices=sorted(COMMANDS))
    ap.add_argument("spec", help="problem description (JSON, schema multiproj/1); '-' reads stdin")
    ap.add_argument("--monomial", help="exponent vector e1,...,ek (relevance)")
    ap.add_argument("--dot", metavar="OUT", help="write the chamber adjacency graph as DOT (chambers)")
    ap.add_argument("--json", metavar="OUT", help="write the JSON report here and print a summary")
    ap.add_argument("--max-vars", type=int, help="override the support-enumeration variable limit")
    ap.add_argument("--cliques", action="store_true", help="include maximal separated subcollections (proj)")
    ap.add_argument("--semigroups", action="store_true", help="include chart semigroup generators (proj)")
    ap.add_argument("--ray", help="restrict to the degree ray d1,...,dr (proj)")
    ap.add_argument("--polymake", metavar="OUT", help="write a polymake-style fan listing (proj)")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        limits = Limits.from_env(os.environ.get("MULTIPROJ_LIMITS"))
        if args.max_vars is not None:
            limits = replace(limits, max_vars=args.max_vars)
        if args.spec == "-":
            doc = json.load(sys.stdin)
        else:
            with open(args.spec) as fh:
                doc = json.load(fh)
        spec = parse_spec(doc)
        report, text = COMMANDS[args.command](spec, args, limits)
    except LimitExceeded as exc:
        print(f"multiproj: limit exceeded: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except WallPointError as exc:
        print(f"multiproj: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (SpecError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"multiproj: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.json:
        with open(args.json, "w") as fh:
            fh.write(dumps(report))
        print(text)
    else:
        sys.stdout.write(dumps(report))
    return 0


if __name__ == "__main__":
    sys.exit(main())
