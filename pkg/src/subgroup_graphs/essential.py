"""Essential edge sets, islands, core components and the exchange construction."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .core_graph import LabeledGraph, components, core, is_connected, is_core, reduced_rank
from .errors import InvalidArgument

#: Graphs with more edges than this are refused by the exhaustive enumerations.
DEFAULT_EDGE_CAP = 14


@dataclass(frozen=True)
class EssentialSet:
    edges: frozenset
    mrank_remaining: int

    def sorted(self) -> list:
        return sorted(self.edges)

    def labels(self, h: LabeledGraph) -> list:
        return [h.edge(e).label for e in sorted(self.edges)]

    def is_injective(self, h: LabeledGraph) -> bool:
        labels = self.labels(h)
        return len(set(labels)) == len(labels)


@dataclass(frozen=True)
class IslandDecomposition:
    islands: tuple
    core_components: dict  # essential edge id -> core of its component in (h - E) + e


def is_essential_by_rank(h: LabeledGraph, E: Iterable[int]) -> bool:
    """``mrank(h - E) == mrank(h) - |E|``."""
    E = set(E)
    return reduced_rank(h.without_edges(E)) == reduced_rank(h) - len(E)


def is_essential_by_trees(h: LabeledGraph, E: Iterable[int]) -> bool:
    """No endpoint of an edge of ``E`` lies in a tree component of ``h - E``."""
    E = set(E)
    parent = {v: v for v in h.vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in h.edges:
        if e.id not in E:
            parent[find(e.origin)] = find(e.terminus)
    nv, ne = {}, {}
    for v in h.vertices:
        r = find(v)
        nv[r] = nv.get(r, 0) + 1
    for e in h.edges:
        if e.id not in E:
            r = find(e.origin)
            ne[r] = ne.get(r, 0) + 1
    for eid in E:
        e = h.edge(eid)
        for v in (e.origin, e.terminus):
            r = find(v)
            if ne.get(r, 0) == nv[r] - 1:
                return False
    return True


def is_essential_set(h: LabeledGraph, E: Iterable[int]) -> bool:
    """Essentiality, computed two independent ways; a disagreement is a bug."""
    E = set(E)
    for eid in E:
        h.edge(eid)
    by_rank = is_essential_by_rank(h, E)
    by_trees = is_essential_by_trees(h, E)
    if by_rank != by_trees:
        raise AssertionError(f"essential-set algorithms disagree on {sorted(E)}")
    return by_rank


def is_maximal_essential(h: LabeledGraph, E: Iterable[int]) -> bool:
    E = set(E)
    return len(E) == reduced_rank(h) and is_essential_set(h, E)


def _check_enumerable(h: LabeledGraph, cap: int):
    if not is_connected(h) or not is_core(h):
        raise InvalidArgument("needs a connected core graph")
    if reduced_rank(h) < 1:
        raise InvalidArgument("needs reduced rank >= 1")
    if h.num_edges > cap:
        raise InvalidArgument(f"{h.num_edges} edges exceeds the enumeration cap of {cap}")


def _search(h: LabeledGraph, injective: bool):
    """Backtracking over edge ids; every subset of an essential set is essential."""
    m = reduced_rank(h)
    candidates = [e.id for e in h.edges if is_essential_by_trees(h, [e.id])]

    def rec(start, chosen, labels):
        if len(chosen) == m:
            yield frozenset(chosen)
            return
        for i in range(start, len(candidates)):
            if len(candidates) - i < m - len(chosen):
                return
            eid = candidates[i]
            lab = h.edge(eid).label
            if injective and lab in labels:
                continue
            chosen.append(eid)
            if is_essential_by_trees(h, chosen):
                yield from rec(i + 1, chosen, labels | {lab})
            chosen.pop()

    yield from rec(0, [], frozenset())


def maximal_essential_sets(h: LabeledGraph, cap: int = DEFAULT_EDGE_CAP) -> list:
    """All maximal essential sets of a connected core graph, in lexicographic edge-id order."""
    _check_enumerable(h, cap)
    out = []
    for E in _search(h, injective=False):
        if not is_maximal_essential(h, E):
            raise AssertionError(f"search produced a non-maximal set {sorted(E)}")
        out.append(EssentialSet(E, 0))
    return out


def injective_maximal_essential(h: LabeledGraph, cap: int = DEFAULT_EDGE_CAP) -> Optional[EssentialSet]:
    """First maximal essential set whose edges carry pairwise distinct labels, or None."""
    _check_enumerable(h, cap)
    for E in _search(h, injective=True):
        if is_maximal_essential(h, E):
            return EssentialSet(E, 0)
    return None


def core_component(h: LabeledGraph, E: Iterable[int], eid: int) -> LabeledGraph:
    """Core of the component of ``(h - E) + e`` containing ``e``."""
    E = set(E)
    g = h.without_edges(E - {eid})
    e = h.edge(eid)
    for comp in components(g):
        if comp.has_vertex(e.origin):
            return core(comp.with_base(None))
    raise AssertionError("edge endpoint missing")


def island_decomposition(h: LabeledGraph, E: Iterable[int]) -> IslandDecomposition:
    E = frozenset(E)
    if not is_maximal_essential(h, E):
        raise InvalidArgument(f"{sorted(E)} is not a maximal essential set")
    islands = tuple(components(h.without_edges(E)))
    cores = {eid: core_component(h, E, eid) for eid in sorted(E)}
    return IslandDecomposition(islands, cores)


def exchange_region(h: LabeledGraph, E: Iterable[int], E1: Iterable[int]) -> LabeledGraph:
    """Union of the components of ``(h - E) + E1`` that contain an edge of ``E1``."""
    E, E1 = set(E), set(E1)
    g = h.without_edges(E - E1)
    keep = [c for c in components(g) if any(e in c._edge_by_id for e in E1)]
    vertices = set()
    edge_ids = set()
    for c in keep:
        vertices |= set(c.vertices)
        edge_ids |= {e.id for e in c.edges}
    return LabeledGraph(h.alphabet, vertices, [h.edge(e) for e in sorted(edge_ids)])


def exchange(h: LabeledGraph, E: Iterable[int], E1: Iterable[int], E1_prime: Iterable[int]) -> EssentialSet:
    """``(E - E1) + E1'`` where ``E1'`` is maximal essential in the region of ``E1``."""
    E, E1, E1p = frozenset(E), frozenset(E1), frozenset(E1_prime)
    if not is_maximal_essential(h, E):
        raise InvalidArgument("E must be maximal essential")
    if not E1 or not E1 <= E:
        raise InvalidArgument("E1 must be a nonempty subset of E")
    region = exchange_region(h, E, E1)
    if not all(e in region._edge_by_id for e in E1p) or not is_maximal_essential(region, E1p):
        raise InvalidArgument("E1' must be a maximal essential set of the region spanned by E1")
    result = (E - E1) | E1p
    if not is_maximal_essential(h, result):
        raise AssertionError(f"exchange produced a non-maximal set {sorted(result)}")
    return EssentialSet(result, 0)
