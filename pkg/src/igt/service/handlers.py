"""Request handlers shared by the HTTP routes and the in-process CLI client."""
from __future__ import annotations

from dataclasses import asdict

from .. import catalog
from ..forbidden import find_pattern
from ..group import build, group_to_dict
from ..igraph import build_intersection_graph, export_dot, export_json
from ..lattice import enumerate_subgroups, lattice_to_dict
from . import schemas


def _lattice(req: schemas.SpecRequest):
    G = build(req.spec, order_bound=req.limits.order_bound)
    return G, enumerate_subgroups(G, subgroup_bound=req.limits.subgroup_bound)


def build_group(req: schemas.SpecRequest) -> schemas.GroupResponse:
    G = build(req.spec, order_bound=req.limits.order_bound)
    return schemas.GroupResponse(**group_to_dict(G))


def lattice(req: schemas.SpecRequest) -> schemas.LatticeResponse:
    _, L = _lattice(req)
    return schemas.LatticeResponse(**lattice_to_dict(L))


def graph(req: schemas.GraphRequest) -> schemas.GraphResponse:
    _, L = _lattice(req)
    g = build_intersection_graph(L)
    content = export_dot(g) if req.format == "dot" else export_json(g)
    return schemas.GraphResponse(format=req.format, content=content)


def check(req: schemas.CheckRequest) -> schemas.CheckResponse:
    G, L = _lattice(req)
    w = find_pattern(build_intersection_graph(L), req.pattern)
    return schemas.CheckResponse(
        spec=G.spec_text,
        pattern=req.pattern,
        found=w is not None,
        witness=None if w is None else w.to_dict(),
    )


def classify(req: schemas.SpecRequest) -> schemas.ClassifyResponse:
    c = catalog.classify(
        req.spec, order_bound=req.limits.order_bound, subgroup_bound=req.limits.subgroup_bound
    )
    data = asdict(c)
    data["spec"] = data.pop("spec_text")
    data["counts_by_order"] = {str(k): v for k, v in c.counts_by_order.items()}
    return schemas.ClassifyResponse(**data)


def verify(req: schemas.VerifyRequest) -> dict:
    corpus = None
    if req.corpus is not None:
        corpus = [catalog.CorpusEntry(e.spec, e.expected, e.note) for e in req.corpus]
    report = catalog.verify_theorem(
        req.max_order,
        corpus,
        jobs=req.jobs,
        extended=req.extended,
        order_bound=req.limits.order_bound,
        subgroup_bound=req.limits.subgroup_bound,
    )
    return report.to_dict()


def match(req: schemas.SpecRequest) -> schemas.MatchResponse:
    G = build(req.spec, order_bound=req.limits.order_bound)
    item = catalog.match_family(G, iso_bound=req.limits.iso_bound)
    return schemas.MatchResponse(spec=G.spec_text, order=G.order, item=item)
