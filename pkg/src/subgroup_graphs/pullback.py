"""Fiber products of immersions over the bouquet, and intersection bounds."""

from __future__ import annotations

from dataclasses import dataclass

from .core_graph import Edge, LabeledGraph, components, core, euler_characteristic, rank, reduced_rank
from .errors import InvalidArgument
from .stallings import GraphMap, is_immersion

#: Below this many vertex pairs the whole product vertex set is materialized.
FULL_PRODUCT_THRESHOLD = 10_000


@dataclass(frozen=True)
class PullbackGraph:
    """``graph`` with vertex ids encoding pairs ``(u, v)`` (``u`` in h, ``v`` in k).

    ``alpha`` projects to k and ``beta`` projects to h.
    """

    graph: LabeledGraph
    pairs: dict
    edge_pairs: dict
    alpha: GraphMap
    beta: GraphMap

    @property
    def base_pair(self):
        return None if self.graph.base is None else self.pairs[self.graph.base]


def fiber_product(h: LabeledGraph, k: LabeledGraph, full: bool = None) -> PullbackGraph:
    """Pullback of the labellings of ``h`` and ``k``.

    Edges are all label-matching pairs.  Vertex pairs touched by no edge are
    isolated and contribute nothing to rank; they are kept only when the
    product is small (or ``full=True``), plus the base pair if both are based.
    """
    if h.alphabet != k.alphabet:
        raise InvalidArgument("fiber product needs a common alphabet")
    if not (is_immersion(h) and is_immersion(k)):
        raise InvalidArgument("fiber product needs immersed graphs")
    hidx = {v: i for i, v in enumerate(h.vertices)}
    kidx = {v: i for i, v in enumerate(k.vertices)}
    nk = len(kidx)

    def pid(u, v):
        return hidx[u] * nk + kidx[v]

    if full is None:
        full = len(hidx) * nk <= FULL_PRODUCT_THRESHOLD
    pairs = {}
    if full:
        for u in h.vertices:
            for v in k.vertices:
                pairs[pid(u, v)] = (u, v)
    k_by_label = {}
    for f in k.edges:
        k_by_label.setdefault(f.label, []).append(f)
    edges = []
    edge_pairs = {}
    ne = len(k.edges)
    kpos = {f.id: i for i, f in enumerate(k.edges)}
    for hpos, e in enumerate(h.edges):
        for f in k_by_label.get(e.label, ()):
            o, t = pid(e.origin, f.origin), pid(e.terminus, f.terminus)
            pairs.setdefault(o, (e.origin, f.origin))
            pairs.setdefault(t, (e.terminus, f.terminus))
            eid = hpos * ne + kpos[f.id]
            edges.append(Edge(eid, o, t, e.label))
            edge_pairs[eid] = (e.id, f.id)
    base = None
    if h.base is not None and k.base is not None:
        base = pid(h.base, k.base)
        pairs.setdefault(base, (h.base, k.base))
    graph = LabeledGraph(h.alphabet, pairs.keys(), edges, base)
    alpha = GraphMap(graph, k, {p: uv[1] for p, uv in pairs.items()},
                     {eid: ef[1] for eid, ef in edge_pairs.items()})
    beta = GraphMap(graph, h, {p: uv[0] for p, uv in pairs.items()},
                    {eid: ef[0] for eid, ef in edge_pairs.items()})
    return PullbackGraph(graph, pairs, edge_pairs, alpha, beta)


def based_component(p: PullbackGraph) -> LabeledGraph:
    """Component of the base pair; represents the intersection of the two subgroups."""
    g = p.graph
    if g.base is None:
        raise InvalidArgument("based_component needs both factors based")
    for comp in components(g):
        if comp.has_vertex(g.base):
            return comp
    raise AssertionError("base pair missing from the fiber product")


def intersection_graph(h: LabeledGraph, k: LabeledGraph) -> LabeledGraph:
    return based_component(fiber_product(h, k))


def intersection_rank(h: LabeledGraph, k: LabeledGraph) -> int:
    return rank(intersection_graph(h, k))


def component_census(p: PullbackGraph) -> list:
    """Ranks of the components of the fiber product that carry nontrivial pi_1."""
    return [rank(c) for c in components(p.graph) if euler_characteristic(c) < 1]


@dataclass(frozen=True)
class BoundReport:
    rank_h: int
    rank_k: int
    rank_intersection: int
    howson_bound: int
    hn_weak_bound: int
    hnc_bound: int
    actual: int  # reduced rank of the core of the based component
    all_satisfied: bool

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def bound_report(h: LabeledGraph, k: LabeledGraph) -> BoundReport:
    """Howson, H. Neumann and Hanna Neumann conjecture bounds on the based intersection.

    The two classical bounds are only asserted when both ranks are positive.
    """
    rh, rk = rank(h), rank(k)
    comp = intersection_graph(h, k)
    ri = rank(comp)
    actual = reduced_rank(core(comp))
    howson = 2 * rh * rk - rh - rk + 1
    hn_weak = 2 * (rh - 1) * (rk - 1) + 1
    hnc = max(0, rh - 1) * max(0, rk - 1)
    ok = actual <= hnc
    if rh >= 1 and rk >= 1:
        ok = ok and ri <= howson and ri <= hn_weak
    return BoundReport(rh, rk, ri, howson, hn_weak, hnc, actual, ok)


def fiber_injectivity_check(p: PullbackGraph) -> bool:
    """Every alpha-fiber meets every beta-fiber in at most one vertex and one edge."""
    seen_v = set()
    for vid in p.graph.vertices:
        key = (p.alpha.vertex_map[vid], p.beta.vertex_map[vid])
        if key in seen_v:
            return False
        seen_v.add(key)
    seen_e = set()
    for e in p.graph.edges:
        key = (p.alpha.edge_map[e.id], p.beta.edge_map[e.id])
        if key in seen_e:
            return False
        seen_e.add(key)
    return True
