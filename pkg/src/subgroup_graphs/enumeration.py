"""Exhaustive enumeration of small immersed graphs, up to isomorphism."""

from __future__ import annotations

from .core_graph import Alphabet, Edge, LabeledGraph, is_core
from .stallings import _bfs_encoding


def _connected_key(g: LabeledGraph):
    return min(_bfs_encoding(g, v)[:2] for v in g.vertices)


def _extensions(g: LabeledGraph):
    n = g.alphabet.size
    used = set()
    for e in g.edges:
        used.add((e.origin, e.label, 1))
        used.add((e.terminus, e.label, -1))
    nv = g.num_vertices
    eid = g.num_edges
    for lab in range(n):
        for x in g.vertices:
            if (x, lab, 1) in used:
                continue
            for y in g.vertices:
                if (y, lab, -1) in used:
                    continue
                yield LabeledGraph(g.alphabet, g.vertices, g.edges + (Edge(eid, x, y, lab),))
            # edge to a fresh vertex, in either direction
            yield LabeledGraph(g.alphabet, g.vertices + (nv,), g.edges + (Edge(eid, x, nv, lab),))
        for y in g.vertices:
            if (y, lab, -1) in used:
                continue
            yield LabeledGraph(g.alphabet, g.vertices + (nv,), g.edges + (Edge(eid, nv, y, lab),))


def connected_immersed_graphs(alphabet: Alphabet, max_edges: int):
    """Yield every connected immersed unbased graph with at most ``max_edges`` edges, once.

    Graphs are grown one edge at a time (every connected graph has an edge
    order with connected prefixes) and deduplicated by canonical key.
    """
    layer = {}
    start = LabeledGraph(alphabet, [0], [])
    layer[_connected_key(start)] = start
    yield start
    for _ in range(max_edges):
        nxt = {}
        for g in layer.values():
            for h in _extensions(g):
                key = _connected_key(h)
                if key not in nxt:
                    nxt[key] = h
        for h in nxt.values():
            yield h
        layer = nxt


def immersed_core_graphs(alphabet: Alphabet, max_edges: int):
    """Connected immersed core graphs (unbased, nonempty) with at most ``max_edges`` edges."""
    for g in connected_immersed_graphs(alphabet, max_edges):
        if g.num_edges and is_core(g):
            yield g
