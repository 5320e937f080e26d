"""Stallings graphs: wedge of generator cycles, folding, membership, canonical forms."""

from __future__ import annotations

import json
import logging
import random
from collections import deque
from dataclasses import dataclass
from typing import Optional, Sequence

from .core_graph import Alphabet, DirectedEnd, Edge, LabeledGraph, components, is_connected
from .errors import InvalidArgument
from .words import Letter, Word

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class GraphMap:
    """Label-preserving morphism ``source -> target`` given on vertices and edges."""

    source: LabeledGraph
    target: LabeledGraph
    vertex_map: dict
    edge_map: dict

    def is_morphism(self) -> bool:
        s, t = self.source, self.target
        if set(self.vertex_map) != set(s.vertices) or set(self.edge_map) != {e.id for e in s.edges}:
            return False
        for e in s.edges:
            if not t.has_vertex(self.vertex_map[e.origin]):
                return False
            try:
                img = t.edge(self.edge_map[e.id])
            except InvalidArgument:
                return False
            if img.label != e.label:
                return False
            if img.origin != self.vertex_map[e.origin] or img.terminus != self.vertex_map[e.terminus]:
                return False
        return True

    def is_surjective(self) -> bool:
        return (set(self.vertex_map.values()) == set(self.target.vertices)
                and set(self.edge_map.values()) == {e.id for e in self.target.edges})

    def fiber(self, w: int) -> set:
        return {v for v, img in self.vertex_map.items() if img == w}

    def then(self, other: "GraphMap") -> "GraphMap":
        """Composition: first ``self``, then ``other``."""
        return GraphMap(self.source, other.target,
                        {v: other.vertex_map[w] for v, w in self.vertex_map.items()},
                        {e: other.edge_map[f] for e, f in self.edge_map.items()})


def identity_map(g: LabeledGraph) -> GraphMap:
    return GraphMap(g, g, {v: v for v in g.vertices}, {e.id: e.id for e in g.edges})


@dataclass(frozen=True)
class FoldEvent:
    edges: tuple  # the admissible pair (e1, e2), e1 < e2
    survivor: int
    vertices: Optional[tuple] = None  # (kept, absorbed) when two vertices were identified


def wedge_of_cycles(gens: Sequence[Word], alphabet: Alphabet) -> LabeledGraph:
    """One subdivided cycle per (freely reduced, nonempty) generator, wedged at vertex 0.

    Edges are numbered consecutively generator by generator, so the edges of
    generator ``i`` are a contiguous id range (see :func:`generator_edge_ranges`).
    """
    vertices = [0]
    edges = []
    for w in gens:
        letters = w.reduced_letters()
        if not letters:
            log.warning("dropping empty generator")
            continue
        for lab, _ in letters:
            if lab >= alphabet.size:
                raise InvalidArgument(f"generator uses label {lab} outside the alphabet")
        prev = 0
        for i, (lab, sign) in enumerate(letters):
            if i == len(letters) - 1:
                nxt = 0
            else:
                nxt = len(vertices)
                vertices.append(nxt)
            eid = len(edges)
            if sign == 1:
                edges.append(Edge(eid, prev, nxt, lab))
            else:
                edges.append(Edge(eid, nxt, prev, lab))
            prev = nxt
    return LabeledGraph(alphabet, vertices, edges, 0)


def generator_edge_ranges(gens: Sequence[Word]) -> list:
    """Edge-id ranges of each generator cycle in :func:`wedge_of_cycles` (None if dropped)."""
    out = []
    start = 0
    for w in gens:
        n = len(w.reduced_letters())
        out.append(range(start, start + n) if n else None)
        start += n
    return out


def _admissible_pairs(g: LabeledGraph):
    by_key = {}
    for e in g.edges:
        by_key.setdefault(("o", e.origin, e.label), []).append(e.id)
        by_key.setdefault(("t", e.terminus, e.label), []).append(e.id)
    pairs = set()
    for ids in by_key.values():
        for i in range(len(ids)):
            for j in range(i + 1, len(ids)):
                pairs.add((min(ids[i], ids[j]), max(ids[i], ids[j])))
    return sorted(pairs)


def fold_pair(g: LabeledGraph, e1: int, e2: int):
    """Identify the admissible pair ``(e1, e2)``; returns ``(graph, FoldEvent, GraphMap)``."""
    a, b = g.edge(e1), g.edge(e2)
    if a.label != b.label or (a.origin != b.origin and a.terminus != b.terminus) or e1 == e2:
        raise InvalidArgument(f"edges {e1}, {e2} are not an admissible pair")
    keep_e, drop_e = (a, b) if a.id < b.id else (b, a)
    if keep_e.origin == drop_e.origin:
        u, w = keep_e.terminus, drop_e.terminus
    else:
        u, w = keep_e.origin, drop_e.origin
    vmap = {v: v for v in g.vertices}
    merged = None
    if u != w:
        kept, gone = min(u, w), max(u, w)
        if g.base == gone:
            kept, gone = gone, kept
        vmap[gone] = kept
        merged = (kept, gone)
    edges = []
    emap = {}
    for e in g.edges:
        if e.id == drop_e.id:
            emap[e.id] = keep_e.id
            continue
        emap[e.id] = e.id
        edges.append(Edge(e.id, vmap[e.origin], vmap[e.terminus], e.label))
    vertices = [v for v in g.vertices if vmap[v] == v]
    base = vmap[g.base] if g.base is not None else None
    folded = LabeledGraph(g.alphabet, vertices, edges, base)
    event = FoldEvent((keep_e.id, drop_e.id), keep_e.id, merged)
    return folded, event, GraphMap(g, folded, vmap, emap)


def fold_step(g: LabeledGraph, rng: random.Random = None):
    """Fold one admissible pair, or return ``None`` if ``g`` is immersed.

    The lowest-id pair is chosen; with ``rng`` a uniformly random pair instead.
    """
    pairs = _admissible_pairs(g)
    if not pairs:
        return None
    e1, e2 = rng.choice(pairs) if rng is not None else pairs[0]
    folded, event, _ = fold_pair(g, e1, e2)
    return folded, event


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y, prefer=None):
        """Merge; the smaller root survives unless ``prefer`` is one of the roots."""
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return rx
        keep, gone = (rx, ry) if rx < ry else (ry, rx)
        if prefer is not None and self.find(prefer) == gone:
            keep, gone = gone, keep
        self.parent[gone] = keep
        return keep


def fold_with_map(g: LabeledGraph, identify: Sequence = ()) -> GraphMap:
    """Identify the vertex pairs in ``identify`` and fold until immersed.

    Returns the quotient morphism; its target is the folded graph.  Surviving
    vertex and edge ids are the smallest of their classes (the base class keeps
    the base vertex id).
    """
    vuf = _UnionFind(g.vertices)
    euf = _UnionFind([e.id for e in g.edges])
    for x, y in identify:
        vuf.union(x, y, prefer=g.base)
    changed = True
    while changed:
        changed = False
        seen = {}
        for e in g.edges:
            if euf.find(e.id) != e.id:
                continue
            o, t = vuf.find(e.origin), vuf.find(e.terminus)
            for key, other_end in (((o, e.label, 1), t), ((t, e.label, -1), o)):
                prev = seen.get(key)
                if prev is None:
                    seen[key] = (e.id, other_end)
                    continue
                pid, pend = prev
                if euf.find(pid) == euf.find(e.id):
                    continue
                euf.union(pid, e.id)
                vuf.union(pend, other_end, prefer=g.base)
                changed = True
                break
    vmap = {v: vuf.find(v) for v in g.vertices}
    emap = {e.id: euf.find(e.id) for e in g.edges}
    vertices = sorted(set(vmap.values()))
    edges = []
    for e in g.edges:
        if emap[e.id] == e.id:
            edges.append(Edge(e.id, vmap[e.origin], vmap[e.terminus], e.label))
    base = vmap[g.base] if g.base is not None else None
    target = LabeledGraph(g.alphabet, vertices, edges, base)
    return GraphMap(g, target, vmap, emap)


def fold_all(g: LabeledGraph) -> LabeledGraph:
    return fold_with_map(g).target


def fold_all_stepwise(g: LabeledGraph, rng: random.Random = None):
    """Fold one pair at a time (see :func:`fold_step`); returns ``(graph, events)``."""
    events = []
    while True:
        step = fold_step(g, rng)
        if step is None:
            return g, events
        g, ev = step
        events.append(ev)


def is_immersion(g: LabeledGraph) -> bool:
    """Whether the labelling ``g -> B`` is locally injective."""
    seen = set()
    for e in g.edges:
        for key in ((e.origin, e.label, 1), (e.terminus, e.label, -1)):
            if key in seen:
                return False
            seen.add(key)
    return True


def is_immersion_map(m: GraphMap) -> bool:
    """Morphism check plus injectivity of every induced link map."""
    if not m.is_morphism():
        return False
    s = m.source
    for v in s.vertices:
        images = set()
        for end, _, _, _ in s.ends(v):
            img = (m.edge_map[end.edge], end.forward)
            if img in images:
                return False
            images.add(img)
    return True


def build_subgroup_graph(gens: Sequence[Word], alphabet: Alphabet) -> LabeledGraph:
    return fold_all(wedge_of_cycles(gens, alphabet))


def _transition_table(g: LabeledGraph) -> dict:
    table = {}
    for e in g.edges:
        table[(e.origin, e.label, 1)] = e.terminus
        table[(e.terminus, e.label, -1)] = e.origin
    return table


def read_word(g: LabeledGraph, w: Word, start: int = None) -> Optional[int]:
    """Vertex reached by reading the reduced ``w`` from ``start`` (default base), or None."""
    table = _transition_table(g)
    v = g.base if start is None else start
    for label, sign in w.reduced_letters():
        v = table.get((v, label, sign))
        if v is None:
            return None
    return v


def accepts(g: LabeledGraph, w: Word) -> bool:
    """Membership of ``w`` in the subgroup represented by the based immersed ``g``."""
    if g.base is None:
        raise InvalidArgument("membership needs a based graph")
    return read_word(g, w) == g.base


class Acceptor:
    """Precomputed transition table for repeated membership queries."""

    def __init__(self, g: LabeledGraph):
        if g.base is None:
            raise InvalidArgument("membership needs a based graph")
        self.base = g.base
        self.table = _transition_table(g)

    def __call__(self, w: Word) -> bool:
        v = self.base
        table = self.table
        for label, sign in w.reduced_letters():
            v = table.get((v, label, sign))
            if v is None:
                return False
        return v == self.base


def _bfs_encoding(g: LabeledGraph, start: int):
    """Renumber the component of ``start`` by breadth-first discovery.

    Ends at each vertex are visited in ``(label, forward-first)`` order, which
    is a total order on the link of an immersed graph.
    """
    order = {start: 0}
    queue = deque([start])
    edge_order = {}
    encoded = []
    while queue:
        v = queue.popleft()
        for end, label, sign, far in sorted(g._ends[v], key=lambda t: (t[1], -t[2])):
            if end.edge in edge_order:
                continue
            if far not in order:
                order[far] = len(order)
                queue.append(far)
            edge_order[end.edge] = len(edge_order)
            e = g.edge(end.edge)
            encoded.append((order[e.origin], order[e.terminus], e.label))
    return len(order), tuple(encoded), order, edge_order


def canonical_form(g: LabeledGraph) -> LabeledGraph:
    """Isomorphism-invariant renumbering of a connected, based, immersed graph."""
    if g.base is None or not is_connected(g) or g.num_vertices == 0:
        raise InvalidArgument("canonical_form needs a connected based graph")
    if not is_immersion(g):
        raise InvalidArgument("canonical_form needs an immersed graph")
    n, encoded, _, _ = _bfs_encoding(g, g.base)
    edges = [Edge(i, o, t, lab) for i, (o, t, lab) in enumerate(encoded)]
    return LabeledGraph(g.alphabet, range(n), edges, 0)


def canonical_bytes(g: LabeledGraph) -> bytes:
    c = canonical_form(g)
    payload = {"alphabet": list(c.alphabet.names), "n": c.num_vertices,
               "edges": [[e.origin, e.terminus, e.label] for e in c.edges]}
    return json.dumps(payload, separators=(",", ":")).encode()


def canonical_key(g: LabeledGraph) -> tuple:
    """Hashable isomorphism invariant of an immersed graph, based or not, possibly disconnected.

    Each component is encoded from its lexicographically least BFS start;
    the component containing the base is encoded from the base and kept first.
    """
    if not is_immersion(g):
        raise InvalidArgument("canonical_key needs an immersed graph")
    based_part = None
    rest = []
    for comp in components(g):
        if g.base is not None and comp.has_vertex(g.base):
            n, enc, _, _ = _bfs_encoding(comp, g.base)
            based_part = (n, enc)
            continue
        best = min(_bfs_encoding(comp, v)[:2] for v in comp.vertices)
        rest.append(best)
    return (g.alphabet.names, based_part, tuple(sorted(rest)))
