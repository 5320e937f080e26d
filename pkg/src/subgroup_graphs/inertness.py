"""Inert vertex sets, highly inert immersions, certificates and refutation search."""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Optional

from .core_graph import (Alphabet, Edge, LabeledGraph, bouquet, components, core, degree,
                         is_connected, rank)
from .enumeration import immersed_core_graphs
from .errors import InvalidArgument, PreconditionViolation
from .pullback import fiber_product, intersection_rank
from .stallings import (GraphMap, build_subgroup_graph, canonical_key, fold_all, is_immersion,
                        is_immersion_map)
from .words import Word

CERTIFIED = "certified_inert"
REFUTED = "refuted"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class InertSetReport:
    subject: frozenset
    overlap_sums: dict  # branching vertex -> sum of link-label overlaps with the others
    verdict: bool


@dataclass(frozen=True)
class InertnessVerdict:
    status: str
    certificate: Optional[str] = None
    witness: Optional[LabeledGraph] = None
    rank_intersection: Optional[int] = None
    rank_witness: Optional[int] = None
    searched: int = 0

    def as_dict(self) -> dict:
        from .io import graph_to_dict

        return {
            "status": self.status,
            "certificate": self.certificate,
            "witness": graph_to_dict(self.witness) if self.witness is not None else None,
            "rank_intersection": self.rank_intersection,
            "rank_witness": self.rank_witness,
            "searched": self.searched,
        }


def link_labels(g: LabeledGraph, v: int) -> Counter:
    """Multiset of ``(label, direction)`` over the link of ``v``."""
    return Counter((label, sign) for _, label, sign, _ in g.ends(v))


def is_inert_set(h: LabeledGraph, S: Iterable[int]) -> InertSetReport:
    S = frozenset(S)
    for v in S:
        if not h.has_vertex(v):
            raise InvalidArgument(f"vertex {v} not in graph")
    star = sorted(v for v in S if degree(h, v) >= 3)
    labels = {v: link_labels(h, v) for v in star}
    sums = {}
    for v in star:
        sums[v] = sum(sum((labels[v] & labels[w]).values()) for w in star if w != v)
    return InertSetReport(S, sums, all(s <= 2 for s in sums.values()))


def labelling_map(h: LabeledGraph) -> GraphMap:
    """The labelling ``h -> B`` as a graph map into the bouquet."""
    b = bouquet(h.alphabet)
    return GraphMap(h, b, {v: 0 for v in h.vertices}, {e.id: e.label for e in h.edges})


def is_highly_inert(m: GraphMap) -> bool:
    if not is_immersion_map(m):
        raise InvalidArgument("is_highly_inert needs an immersion")
    fibers = {}
    for v, w in m.vertex_map.items():
        fibers.setdefault(w, set()).add(v)
    return all(is_inert_set(m.source, S).verdict for S in fibers.values())


def certify_inert(h: LabeledGraph) -> InertnessVerdict:
    """Certified when the labelling is highly inert; otherwise unknown (never 'not inert')."""
    if not is_immersion(h):
        raise InvalidArgument("certify_inert needs an immersed graph")
    if is_inert_set(h, h.vertices).verdict:
        return InertnessVerdict(CERTIFIED, certificate="highly_inert")
    return InertnessVerdict(UNKNOWN)


def fiber_curvature_check(m: GraphMap, w: int) -> bool:
    """``deg(w) - 2 >= sum over the fiber of (deg(v) - 2)`` for an inert fiber."""
    S = m.fiber(w)
    if not is_inert_set(m.source, S).verdict:
        raise PreconditionViolation(f"fiber over {w} is not an inert set")
    return degree(m.target, w) - 2 >= sum(degree(m.source, v) - 2 for v in S)


@lru_cache(maxsize=None)
def _core_pool(alphabet: Alphabet, max_edges: int) -> tuple:
    return tuple(immersed_core_graphs(alphabet, max_edges))


def _path_words(h: LabeledGraph) -> dict:
    """For each vertex, a word read along some path from the base."""
    words = {h.base: ()}
    frontier = [h.base]
    while frontier:
        nxt = []
        for v in frontier:
            for _, label, sign, far in h.ends(v):
                if far not in words:
                    words[far] = words[v] + ((label, sign),)
                    nxt.append(far)
        frontier = nxt
    return words


def _attach_stem(k: LabeledGraph, v: int, letters) -> LabeledGraph:
    """Add a new base vertex joined to ``v`` by a path reading ``letters``; then fold."""
    if not letters:
        return k.with_base(v)
    nv = max(k.vertices) + 1
    ne = max(e.id for e in k.edges) + 1 if k.edges else 0
    vertices = list(k.vertices)
    edges = list(k.edges)
    prev = nv
    vertices.append(nv)
    for i, (label, sign) in enumerate(letters):
        if i == len(letters) - 1:
            nxt = v
        else:
            nxt = nv + 1 + i
            vertices.append(nxt)
        edges.append(Edge(ne + i, prev, nxt, label) if sign == 1 else Edge(ne + i, nxt, prev, label))
        prev = nxt
    return fold_all(LabeledGraph(k.alphabet, vertices, edges, nv))


def _witness_from(h: LabeledGraph, k: LabeledGraph, paths: dict):
    """A based conjugate of ``k`` beating ``rank(k)`` against ``h``, if one exists."""
    rk = rank(k)
    p = fiber_product(h, k)
    for comp in components(p.graph):
        if 1 - (comp.num_vertices - comp.num_edges) <= rk:
            continue
        u, v = p.pairs[min(comp.vertices)]
        if u not in paths:
            continue
        candidate = _attach_stem(k, v, paths[u])
        ri = intersection_rank(h, candidate)
        if ri > rank(candidate):
            return candidate, ri
    return None


def refute_inertness(h: LabeledGraph, budget_edges: int = 8, trials: int = 10_000,
                     seed: int = 0, exhaustive_edges: int = 6) -> InertnessVerdict:
    """Search for ``K`` with ``rank(H n K) > rank(K)``.

    All connected immersed core graphs with at most ``exhaustive_edges`` edges
    are tried first, in order of edge count; every component of the fiber
    product is examined, so all base points (conjugates) of each ``K`` are
    covered.  Then ``trials`` random cores with at most ``budget_edges`` edges
    are sampled.  A returned witness has been re-verified on based graphs.
    """
    if h.base is None or not is_immersion(h) or not is_connected(h):
        raise InvalidArgument("refute_inertness needs a connected based immersed graph")
    if rank(h) <= 1:
        # cyclic subgroups: every intersection has rank <= 1 <= rank(K) or is trivial
        return InertnessVerdict(UNKNOWN)
    if certify_inert(h).status == CERTIFIED:
        return InertnessVerdict(UNKNOWN)
    paths = _path_words(h)
    searched = 0
    for k in _core_pool(h.alphabet, min(exhaustive_edges, budget_edges)):
        searched += 1
        found = _witness_from(h, k, paths)
        if found:
            witness, ri = found
            return InertnessVerdict(REFUTED, witness=witness, rank_intersection=ri,
                                    rank_witness=rank(witness), searched=searched)
    rng = random.Random(seed)
    from .generators import random_core_graph

    seen = set()
    for _ in range(trials):
        k = random_core_graph(rng, h.alphabet, max_edges=budget_edges)
        if k is None or k.num_edges <= exhaustive_edges:
            continue
        key = canonical_key(k.with_base(None))
        if key in seen:
            continue
        seen.add(key)
        searched += 1
        found = _witness_from(h, k, paths)
        if found:
            witness, ri = found
            return InertnessVerdict(REFUTED, witness=witness, rank_intersection=ri,
                                    rank_witness=rank(witness), searched=searched)
    return InertnessVerdict(UNKNOWN, searched=searched)
