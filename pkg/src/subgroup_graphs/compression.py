"""Compressedness by quotient enumeration, placeholder deflation/inflation, transversals."""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Optional, Sequence

from .core_graph import (Arc, DirectedEnd, Edge, LabeledGraph, arcs, is_connected, is_core,
                         rank, reduced_rank)
from .errors import InvalidArgument
from .stallings import GraphMap, canonical_key, fold_with_map, identity_map, is_immersion, is_immersion_map
from .words import Letter, Word

COMPRESSED = "compressed_verified"
NOT_COMPRESSED = "not_compressed"
UNKNOWN = "unknown"

DEFAULT_BUDGET_EDGES = 8


@dataclass(frozen=True)
class QuotientWitness:
    target: LabeledGraph
    map: GraphMap
    mrank_source: int
    mrank_target: int

    def verify(self) -> bool:
        return (is_immersion_map(self.map) and self.map.is_surjective()
                and reduced_rank(self.map.source) == self.mrank_source
                and reduced_rank(self.target) == self.mrank_target
                and self.mrank_source > self.mrank_target)


@dataclass(frozen=True)
class CompressionVerdict:
    status: str
    witness: Optional[QuotientWitness] = None
    budget_edges: int = DEFAULT_BUDGET_EDGES
    quotients_explored: int = 0

    @property
    def note(self) -> str:
        if self.status == COMPRESSED:
            return (f"every quotient explored ({self.quotients_explored}); verified within "
                    f"the {self.budget_edges}-edge budget")
        if self.status == UNKNOWN:
            return f"graph exceeds the {self.budget_edges}-edge budget; not searched"
        return "surjective immersion onto a graph of smaller reduced rank"


def quotients(h: LabeledGraph):
    """Yield ``GraphMap`` ``h -> K`` for every immersed quotient ``K`` of ``h``, up to isomorphism.

    Every surjective label-preserving map out of an immersed graph factors as
    a vertex identification followed by folding, and every vertex partition
    is reached by identifying one pair at a time, so this visits all of them.
    """
    start = identity_map(h)
    seen = {canonical_key(h.with_base(None))}
    queue = deque([start])
    yield start
    while queue:
        m = queue.popleft()
        q = m.target
        for x, y in itertools.combinations(q.vertices, 2):
            step = fold_with_map(q, [(x, y)])
            key = canonical_key(step.target.with_base(None))
            if key in seen:
                continue
            seen.add(key)
            composed = m.then(step)
            queue.append(composed)
            yield composed


def is_compressed(h: LabeledGraph, budget_edges: int = DEFAULT_BUDGET_EDGES) -> CompressionVerdict:
    """Exhaustive search for a quotient of smaller reduced rank.

    The verdict is relative to ``budget_edges``: larger graphs are reported
    ``unknown`` without searching.
    """
    if not is_immersion(h):
        raise InvalidArgument("is_compressed needs an immersed graph")
    if h.num_edges > budget_edges:
        return CompressionVerdict(UNKNOWN, budget_edges=budget_edges)
    h = h.with_base(None)
    mr = reduced_rank(h)
    explored = 0
    for m in quotients(h):
        explored += 1
        mt = reduced_rank(m.target)
        if mt < mr:
            witness = QuotientWitness(m.target, m, mr, mt)
            if not witness.verify():
                raise AssertionError("quotient witness failed re-verification")
            return CompressionVerdict(NOT_COMPRESSED, witness, budget_edges, explored)
    return CompressionVerdict(COMPRESSED, None, budget_edges, explored)


def _oriented_steps(arc: Arc, eid: int) -> tuple:
    """Arc steps re-oriented so that ``eid`` is traversed forward; with the two ends."""
    for s in arc.steps:
        if s.edge == eid:
            forward = s.forward
            break
    else:
        raise InvalidArgument(f"edge {eid} is not in the arc")
    if forward:
        return arc.steps, arc.start, arc.end
    steps = tuple(DirectedEnd(s.edge, not s.forward) for s in reversed(arc.steps))
    return steps, arc.end, arc.start


def arc_word(h: LabeledGraph, arc: Arc, eid: int) -> Word:
    """Word spelled along ``arc`` in the direction that crosses ``eid`` forward."""
    steps, _, _ = _oriented_steps(arc, eid)
    return Word(Letter(h.edge(s.edge).label, 1 if s.forward else -1) for s in steps)


def find_arc(h: LabeledGraph, eid: int) -> Arc:
    for a in arcs(h):
        if eid in a.edge_ids:
            return a
    raise InvalidArgument(f"edge {eid} is not in any arc")


def deflate_many(h: LabeledGraph, choices: Sequence) -> LabeledGraph:
    """Replace each arc ``A_i`` by its edge ``e_i``, for ``choices = [(A_i, e_i), ...]``.

    Needs pairwise distinct labels on the ``e_i`` and none of them appearing
    outside the chosen arcs.  A base vertex interior to an arc moves to that
    arc's starting boundary vertex.
    """
    arc_edges = set()
    for a, e in choices:
        if e not in a.edge_ids:
            raise InvalidArgument(f"edge {e} is not in its arc")
        if arc_edges & set(a.edge_ids):
            raise InvalidArgument("arcs must be distinct")
        arc_edges |= set(a.edge_ids)
    labels = [h.edge(e).label for _, e in choices]
    if len(set(labels)) != len(labels):
        raise InvalidArgument("placeholder edges must carry distinct labels")
    for (a, e), lab in zip(choices, labels):
        clash = sorted(f.id for f in h.edges if f.id not in arc_edges and f.label == lab)
        if clash:
            raise InvalidArgument(
                f"label of edge {e} also appears outside the arc on edges {clash}")
    drop_vertices = set()
    new_edges = []
    base = h.base
    for a, e in choices:
        steps, start, end = _oriented_steps(a, e)
        if start is None:
            # cycle component: collapse to a loop at the edge's origin
            first = h.edge(e).origin
            start = end = first
        interior = _arc_interior(h, a) - {start, end}
        drop_vertices |= interior
        if base in interior:
            base = start
        new_edges.append(Edge(e, start, end, h.edge(e).label))
    vertices = [v for v in h.vertices if v not in drop_vertices]
    edges = [f for f in h.edges if f.id not in arc_edges] + new_edges
    return LabeledGraph(h.alphabet, vertices, edges, base)


def _arc_interior(h: LabeledGraph, a: Arc) -> set:
    vs = set()
    for s in a.steps:
        e = h.edge(s.edge)
        vs.add(e.origin)
        vs.add(e.terminus)
    return vs - set(a.boundary)


def deflate(h: LabeledGraph, arc: Arc, eid: int) -> LabeledGraph:
    return deflate_many(h, [(arc, eid)])


def inflate(hbar: LabeledGraph, eid: int, word: Word) -> LabeledGraph:
    """Replace edge ``eid`` by a subdivided path from its origin to its terminus spelling ``word``.

    The letter of ``word`` that matches the edge's label (first occurrence,
    positive sign) keeps the id ``eid``; no folding is done.
    """
    e = hbar.edge(eid)
    letters = word.letters
    if not letters:
        raise InvalidArgument("cannot inflate an edge to an empty word")
    keep_at = next((i for i, x in enumerate(letters) if x == Letter(e.label, 1)), None)
    if keep_at is None:
        raise InvalidArgument("inflation word must contain the edge's label with positive sign")
    next_v = max(hbar.vertices) + 1
    next_e = max(f.id for f in hbar.edges) + 1
    vertices = list(hbar.vertices)
    edges = [f for f in hbar.edges if f.id != eid]
    prev = e.origin
    for i, (label, sign) in enumerate(letters):
        if i == len(letters) - 1:
            nxt = e.terminus
        else:
            nxt = next_v
            vertices.append(nxt)
            next_v += 1
        if i == keep_at:
            fid = eid
        else:
            fid = next_e
            next_e += 1
        edges.append(Edge(fid, prev, nxt, label) if sign == 1 else Edge(fid, nxt, prev, label))
        prev = nxt
    return LabeledGraph(hbar.alphabet, vertices, edges, hbar.base)


@dataclass(frozen=True)
class Transversal:
    edges: tuple  # one edge id per arc, in arcs() order

    def labels(self, h: LabeledGraph) -> set:
        return {h.edge(e).label for e in self.edges}


def best_transversal(h: LabeledGraph):
    """A transversal of the arcs with the most distinct labels; returns ``(T, count)``.

    The maximum is a bipartite matching between arcs and labels; unmatched
    arcs take their first edge.
    """
    if not is_core(h) or h.num_edges == 0:
        raise InvalidArgument("best_transversal needs a nonempty core graph")
    if not is_immersion(h):
        raise InvalidArgument("best_transversal needs an immersed graph")
    arc_list = arcs(h)
    options = []
    for a in arc_list:
        by_label = {}
        for eid in a.edge_ids:
            by_label.setdefault(h.edge(eid).label, eid)
        options.append(by_label)
    match_label = {}  # label -> arc index

    def augment(i, visited):
        for lab in sorted(options[i]):
            if lab in visited:
                continue
            visited.add(lab)
            if lab not in match_label or augment(match_label[lab], visited):
                match_label[lab] = i
                return True
        return False

    for i in range(len(arc_list)):
        augment(i, set())
    chosen = [a.edge_ids[0] for a in arc_list]
    for lab, i in match_label.items():
        chosen[i] = options[i][lab]
    t = Transversal(tuple(chosen))
    return t, len(t.labels(h))


def brute_force_transversal_count(h: LabeledGraph) -> int:
    """Maximum of ``|labels(T)|`` over all transversals, by enumeration."""
    per_arc = [sorted({h.edge(e).label for e in a.edge_ids}) for a in arcs(h)]
    return max(len(set(choice)) for choice in itertools.product(*per_arc))


def subgraph_union_compressed_check(h: LabeledGraph, parts: Sequence[LabeledGraph],
                                    budget_edges: int = DEFAULT_BUDGET_EDGES) -> bool:
    """Whether the disjoint union of connected subgraphs ``parts`` of ``h`` verifies compressed."""
    used = set()
    vertices, edge_ids = set(), set()
    for p in parts:
        if not is_connected(p) or p.num_vertices == 0:
            raise InvalidArgument("parts must be nonempty connected subgraphs")
        if used & set(p.vertices):
            raise InvalidArgument("parts overlap")
        used |= set(p.vertices)
        for e in p.edges:
            if h.edge(e.id) != e:
                raise InvalidArgument(f"edge {e.id} is not an edge of h")
        for v in p.vertices:
            if not h.has_vertex(v):
                raise InvalidArgument(f"vertex {v} is not a vertex of h")
        vertices |= set(p.vertices)
        edge_ids |= {e.id for e in p.edges}
    union = LabeledGraph(h.alphabet, vertices, [h.edge(e) for e in sorted(edge_ids)])
    return is_compressed(union, budget_edges).status == COMPRESSED
