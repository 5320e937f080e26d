"""Finite labeled directed multigraphs and their structural measurements.

A :class:`LabeledGraph` is a finite graph together with a labelling into the
bouquet of ``n`` circles: every edge carries a label index in ``[0, n)``.
Values are immutable; every operation below returns a new graph.
"""

from __future__ import annotations

import string
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple, Optional

from .errors import InvalidArgument


@dataclass(frozen=True)
class Alphabet:
    names: tuple

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if not names:
            raise InvalidArgument("alphabet must have at least one letter")
        if len(set(names)) != len(names):
            raise InvalidArgument(f"alphabet names must be unique: {names}")
        for name in names:
            if not isinstance(name, str) or not name or not name.isprintable():
                raise InvalidArgument(f"invalid alphabet name: {name!r}")

    @classmethod
    def standard(cls, n: int) -> "Alphabet":
        """``a, b, c, ...`` for ``n <= 26``, otherwise ``x0, x1, ...``."""
        if n <= 26:
            return cls(tuple(string.ascii_lowercase[:n]))
        return cls(tuple(f"x{i}" for i in range(n)))

    @property
    def size(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise InvalidArgument(f"unknown letter {name!r} for alphabet {self.names}") from None

    def __len__(self):
        return len(self.names)


class Edge(NamedTuple):
    id: int
    origin: int
    terminus: int
    label: int


class DirectedEnd(NamedTuple):
    """A length-1 path along ``edge``; ``forward`` means it leaves the edge's origin."""

    edge: int
    forward: bool


@dataclass(frozen=True)
class LabeledGraph:
    alphabet: Alphabet
    vertices: tuple = ()
    edges: tuple = ()
    base: Optional[int] = None

    def __post_init__(self):
        vertices = tuple(sorted(set(self.vertices)))
        edges = tuple(sorted((Edge(*e) for e in self.edges), key=lambda e: e.id))
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "edges", edges)
        vset = set(vertices)
        seen = set()
        for e in edges:
            if e.id in seen:
                raise InvalidArgument(f"duplicate edge id {e.id}")
            seen.add(e.id)
            if e.origin not in vset or e.terminus not in vset:
                raise InvalidArgument(f"edge {e.id} has an endpoint outside the vertex set")
            if not 0 <= e.label < self.alphabet.size:
                raise InvalidArgument(f"edge {e.id} label {e.label} outside alphabet")
        if self.base is not None and self.base not in vset:
            raise InvalidArgument(f"base vertex {self.base} is not a vertex")

    # -- lookup tables, built on first use ---------------------------------

    @cached_property
    def _edge_by_id(self) -> dict:
        return {e.id: e for e in self.edges}

    @cached_property
    def _ends(self) -> dict:
        """vertex -> list of (DirectedEnd, label, sign, far vertex) in edge-id order."""
        ends = {v: [] for v in self.vertices}
        for e in self.edges:
            ends[e.origin].append((DirectedEnd(e.id, True), e.label, 1, e.terminus))
            ends[e.terminus].append((DirectedEnd(e.id, False), e.label, -1, e.origin))
        return ends

    @cached_property
    def _vertex_set(self) -> frozenset:
        return frozenset(self.vertices)

    def edge(self, eid: int) -> Edge:
        try:
            return self._edge_by_id[eid]
        except KeyError:
            raise InvalidArgument(f"unknown edge id {eid}") from None

    def has_vertex(self, v) -> bool:
        return v in self._vertex_set

    def ends(self, v: int) -> list:
        """Directed ends at ``v`` as ``(end, label, sign, far_vertex)`` tuples."""
        if v not in self._vertex_set:
            raise InvalidArgument(f"unknown vertex id {v}")
        return self._ends[v]

    @property
    def is_based(self) -> bool:
        return self.base is not None

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def labels(self) -> set:
        return {e.label for e in self.edges}

    # -- derived graphs ------------------------------------------------------

    def with_base(self, base: Optional[int]) -> "LabeledGraph":
        return LabeledGraph(self.alphabet, self.vertices, self.edges, base)

    def subgraph(self, vertices: Iterable[int], edge_ids: Iterable[int] = None,
                 keep_base: bool = True) -> "LabeledGraph":
        """Induced on ``vertices``; with ``edge_ids`` only those edges are kept.

        Endpoints of kept edges are added to the vertex set.
        """
        vs = set(vertices)
        if edge_ids is None:
            kept = [e for e in self.edges if e.origin in vs and e.terminus in vs]
        else:
            ids = set(edge_ids)
            kept = [e for e in self.edges if e.id in ids]
            for e in kept:
                vs.add(e.origin)
                vs.add(e.terminus)
        base = self.base if keep_base and self.base in vs else None
        return LabeledGraph(self.alphabet, vs, kept, base)

    def without_edges(self, edge_ids: Iterable[int]) -> "LabeledGraph":
        """Remove the (open) edges; all vertices stay."""
        drop = set(edge_ids)
        return LabeledGraph(self.alphabet, self.vertices,
                            [e for e in self.edges if e.id not in drop], self.base)

    def renumbered(self) -> "LabeledGraph":
        """Copy with vertex and edge ids made dense, preserving their relative order."""
        vmap = {v: i for i, v in enumerate(self.vertices)}
        edges = [Edge(i, vmap[e.origin], vmap[e.terminus], e.label)
                 for i, e in enumerate(self.edges)]
        base = vmap[self.base] if self.base is not None else None
        return LabeledGraph(self.alphabet, range(len(vmap)), edges, base)

    def disjoint_union(self, other: "LabeledGraph") -> "LabeledGraph":
        """Union with ``other`` shifted past this graph's ids; keeps this graph's base."""
        if other.alphabet != self.alphabet:
            raise InvalidArgument("alphabet mismatch")
        voff = (max(self.vertices) + 1) if self.vertices else 0
        eoff = (max(e.id for e in self.edges) + 1) if self.edges else 0
        vertices = list(self.vertices) + [v + voff for v in other.vertices]
        edges = list(self.edges) + [Edge(e.id + eoff, e.origin + voff, e.terminus + voff, e.label)
                                    for e in other.edges]
        return LabeledGraph(self.alphabet, vertices, edges, self.base)

    def __repr__(self):
        return (f"LabeledGraph(|V|={self.num_vertices}, |E|={self.num_edges}, "
                f"base={self.base}, alphabet={list(self.alphabet.names)})")


@dataclass(frozen=True)
class Walk:
    start: int
    steps: tuple = field(default=())

    def end(self, g: LabeledGraph) -> int:
        """Follow the steps in ``g``, checking incidence; returns the final vertex."""
        v = self.start
        if not g.has_vertex(v):
            raise InvalidArgument(f"walk starts at unknown vertex {v}")
        for step in self.steps:
            e = g.edge(step.edge)
            head, tail = (e.origin, e.terminus) if step.forward else (e.terminus, e.origin)
            if head != v:
                raise InvalidArgument(f"step along edge {e.id} does not leave vertex {v}")
            v = tail
        return v

    def is_closed(self, g: LabeledGraph) -> bool:
        return self.end(g) == self.start

    def letters(self, g: LabeledGraph) -> list:
        """The (label, sign) sequence read along the walk."""
        self.end(g)
        return [(g.edge(s.edge).label, 1 if s.forward else -1) for s in self.steps]


def bouquet(alphabet: Alphabet) -> LabeledGraph:
    """One vertex, one loop per letter; base at the vertex."""
    edges = [Edge(i, 0, 0, i) for i in range(alphabet.size)]
    return LabeledGraph(alphabet, [0], edges, 0)


def link(g: LabeledGraph, v: int) -> set:
    return {end for end, _, _, _ in g.ends(v)}


def degree(g: LabeledGraph, v: int) -> int:
    return len(g.ends(v))


def curvature_units(g: LabeledGraph, v: int) -> int:
    """Curvature at ``v`` in units of pi: ``2 - deg(v)``."""
    return 2 - degree(g, v)


def euler_characteristic(g: LabeledGraph) -> int:
    return g.num_vertices - g.num_edges


def _component_vertex_sets(g: LabeledGraph) -> list:
    seen = set()
    out = []
    for s in g.vertices:
        if s in seen:
            continue
        comp = [s]
        seen.add(s)
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for _, _, _, w in g._ends[v]:
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    queue.append(w)
        out.append(comp)
    return out


def components(g: LabeledGraph) -> list:
    """Connected components, ordered by smallest vertex id; ids preserved."""
    return [g.subgraph(vs) for vs in _component_vertex_sets(g)]


def is_connected(g: LabeledGraph) -> bool:
    return len(_component_vertex_sets(g)) <= 1


def rank(g: LabeledGraph) -> int:
    """Rank ``1 - chi`` of a connected graph (of pi_1)."""
    if g.num_vertices == 0:
        raise InvalidArgument("rank of the empty graph is undefined")
    if not is_connected(g):
        raise InvalidArgument("rank is defined for connected graphs; use reduced_rank")
    return 1 - euler_characteristic(g)


def reduced_rank(g: LabeledGraph) -> int:
    """Sum over components of ``max(0, -chi)``."""
    total = 0
    for vs in _component_vertex_sets(g):
        vset = set(vs)
        n_edges = sum(1 for e in g.edges if e.origin in vset)
        total += max(0, n_edges - len(vs))
    return total


def is_forest(g: LabeledGraph) -> bool:
    return g.num_edges == g.num_vertices - len(_component_vertex_sets(g))


def core(g: LabeledGraph, based: bool = False) -> LabeledGraph:
    """Iteratively strip vertices of degree <= 1.

    In based mode the base vertex is never removed, so the result is the
    based core (base may keep degree 0 or 1).  In unbased mode tree
    components vanish entirely and the base is dropped if it is removed.
    """
    deg = {v: len(g._ends[v]) for v in g.vertices}
    alive_v = set(g.vertices)
    alive_e = {e.id for e in g.edges}
    keep = g.base if based else None
    queue = deque(v for v in g.vertices if deg[v] <= 1 and v != keep)
    while queue:
        v = queue.popleft()
        if v not in alive_v or deg[v] > 1:
            continue
        alive_v.discard(v)
        for end, _, _, w in g._ends[v]:
            if end.edge in alive_e:
                alive_e.discard(end.edge)
                if w != v:
                    deg[w] -= 1
                    if deg[w] <= 1 and w != keep and w in alive_v:
                        queue.append(w)
    base = g.base if g.base in alive_v else None
    return LabeledGraph(g.alphabet, alive_v, [e for e in g.edges if e.id in alive_e], base)


def is_core(g: LabeledGraph, based: bool = False) -> bool:
    return all(degree(g, v) >= 2 or (based and v == g.base) for v in g.vertices)


def branching_vertices(g: LabeledGraph, subset: Iterable[int] = None) -> set:
    """Vertices of degree >= 3, optionally restricted to ``subset`` (the S* operation)."""
    vs = g.vertices if subset is None else subset
    return {v for v in vs if degree(g, v) >= 3}


@dataclass(frozen=True)
class Arc:
    """A component of ``g - g*``: its edges in traversal order plus boundary vertices.

    ``start``/``end`` are the branching vertices at either side; both are
    ``None`` for a cycle component without branching vertices.
    """

    steps: tuple
    start: Optional[int]
    end: Optional[int]

    @property
    def edge_ids(self) -> tuple:
        return tuple(s.edge for s in self.steps)

    @property
    def boundary(self) -> tuple:
        return () if self.start is None else (self.start, self.end)


def arcs(g: LabeledGraph) -> list:
    if not is_core(g):
        raise InvalidArgument("arcs are only defined on core graphs")
    branching = branching_vertices(g)
    used = set()
    out = []
    for v in sorted(branching):
        for end, _, _, _ in g._ends[v]:
            if end.edge in used:
                continue
            steps = [end]
            used.add(end.edge)
            w = _far(g, end)
            while w not in branching:
                nxt = next(x for x, _, _, _ in g._ends[w] if x.edge not in used)
                steps.append(nxt)
                used.add(nxt.edge)
                w = _far(g, nxt)
            out.append(Arc(tuple(steps), v, w))
    # cycle components carry no branching vertex
    for e in g.edges:
        if e.id in used:
            continue
        first = DirectedEnd(e.id, True)
        steps = [first]
        used.add(e.id)
        w = e.terminus
        while w != e.origin:
            nxt = next(x for x, _, _, _ in g._ends[w] if x.edge not in used)
            steps.append(nxt)
            used.add(nxt.edge)
            w = _far(g, nxt)
        out.append(Arc(tuple(steps), None, None))
    return out


def _far(g: LabeledGraph, end: DirectedEnd) -> int:
    e = g.edge(end.edge)
    return e.terminus if end.forward else e.origin


def gauss_bonnet_check(g: LabeledGraph) -> bool:
    """``2 chi(g) == sum_v (2 - deg v)``, curvature in pi-units."""
    return 2 * euler_characteristic(g) == sum(curvature_units(g, v) for v in g.vertices)
