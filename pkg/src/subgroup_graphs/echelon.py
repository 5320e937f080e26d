"""Echelon form for explicit bases, generalized-echelon certificates, abelianization obstruction."""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Optional, Sequence

from .core_graph import (Alphabet, LabeledGraph, arcs, components, is_connected, is_core, rank,
                         reduced_rank)
from .errors import InvalidArgument
from .essential import DEFAULT_EDGE_CAP, _check_enumerable, _search, is_maximal_essential
from .stallings import Acceptor, fold_with_map, generator_edge_ranges, is_immersion, wedge_of_cycles
from .words import Letter, Word, abelianize

NOT_ECHELON = "not_echelon_by_abelianization"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class EchelonFormCheck:
    is_echelon: bool
    fresh: tuple  # per generator, the labels not seen in earlier generators

    def __bool__(self):
        return self.is_echelon


def check_echelon_form(gens: Sequence[Word], basis: Alphabet = None) -> EchelonFormCheck:
    """Each generator must use a basis letter (either sign) absent from all earlier ones."""
    seen = set()
    fresh = []
    ok = True
    for w in gens:
        letters = {l for l, _ in w.reduced_letters()}
        if basis is not None and any(l >= basis.size for l in letters):
            raise InvalidArgument("generator uses a letter outside the basis")
        new = frozenset(letters - seen)
        if not new:
            ok = False
        fresh.append(new)
        seen |= letters
    return EchelonFormCheck(ok and bool(gens), tuple(fresh))


@dataclass(frozen=True)
class EchelonCertificate:
    essential: tuple  # ordered essential edge ids e_1..e_m
    essential_labels: tuple  # their labels, same order
    arcs: tuple  # edge ids of the arc containing each e_i
    components: tuple  # C_i as LabeledGraph
    prefix_unions: tuple  # edge ids of H_i = C_1 u ... u C_i
    label_order: tuple  # label indices, smallest first

    def as_dict(self, h: LabeledGraph) -> dict:
        names = h.alphabet.names
        return {
            "essential": list(self.essential),
            "essential_labels": [names[h.edge(e).label] for e in self.essential],
            "arcs": [list(a) for a in self.arcs],
            "components": [sorted(e.id for e in c.edges) for c in self.components],
            "prefix_unions": [sorted(p) for p in self.prefix_unions],
            "label_order": [names[l] for l in self.label_order],
        }


def _arc_of_edge(h: LabeledGraph) -> dict:
    out = {}
    for a in arcs(h):
        for e in a.edge_ids:
            out[e] = a
    return out


def certificate_components(h: LabeledGraph, E: Sequence[int]) -> dict:
    """For each ``e_i``: ``(arc A_i, component C_i of h - U_{j != i} A_j containing e_i)``."""
    arc_of = _arc_of_edge(h)
    out = {}
    for ei in E:
        others = [arc_of[ej] for ej in E if ej != ei]
        drop_edges = set()
        drop_vertices = set()
        for a in others:
            drop_edges |= set(a.edge_ids)
            for s in a.steps:
                e = h.edge(s.edge)
                drop_vertices |= {e.origin, e.terminus}
            drop_vertices -= set(a.boundary)
        rest = LabeledGraph(h.alphabet, [v for v in h.vertices if v not in drop_vertices],
                            [e for e in h.edges if e.id not in drop_edges])
        comp = next(c for c in components(rest) if ei in c._edge_by_id)
        out[ei] = (arc_of[ei], comp)
    return out


def label_order_for(essential_labels: Sequence[int], alphabet: Alphabet) -> tuple:
    """Non-essential labels in alphabet order, then the essential labels in the given order."""
    ess = list(essential_labels)
    return tuple([l for l in range(alphabet.size) if l not in ess] + ess)


def _order_essential(h: LabeledGraph, E, comps) -> Optional[list]:
    """Lexicographically least order with no C_j containing the label of a later e_k."""
    labels_of = {e: {f.label for f in comps[e][1].edges} for e in E}
    must_precede = {e: set() for e in E}  # e -> edges that must come after e
    indeg = {e: 0 for e in E}
    for j in E:
        for k in E:
            if k != j and h.edge(k).label in labels_of[j]:
                must_precede[k].add(j)
                indeg[j] += 1
    heap = [e for e in E if indeg[e] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        e = heapq.heappop(heap)
        order.append(e)
        for j in must_precede[e]:
            indeg[j] -= 1
            if indeg[j] == 0:
                heapq.heappush(heap, j)
    return order if len(order) == len(E) else None


def certificate_for(h: LabeledGraph, ordered_edges: Sequence[int]) -> EchelonCertificate:
    """Assemble the certificate data for a given ordered edge set, without checking it."""
    return _build_certificate(h, list(ordered_edges), certificate_components(h, ordered_edges))


def _build_certificate(h: LabeledGraph, order, comps) -> EchelonCertificate:
    prefix = []
    acc = set()
    for e in order:
        acc |= {f.id for f in comps[e][1].edges}
        prefix.append(frozenset(acc))
    return EchelonCertificate(
        essential=tuple(order),
        essential_labels=tuple(h.edge(e).label for e in order),
        arcs=tuple(comps[e][0].edge_ids for e in order),
        components=tuple(comps[e][1] for e in order),
        prefix_unions=tuple(prefix),
        label_order=label_order_for([h.edge(e).label for e in order], h.alphabet),
    )


def verify_certificate(h: LabeledGraph, cert: EchelonCertificate) -> bool:
    """Recheck a certificate from scratch against ``h``."""
    E = list(cert.essential)
    if len(set(E)) != len(E) or not is_maximal_essential(h, E):
        return False
    labels = [h.edge(e).label for e in E]
    if len(set(labels)) != len(labels) or tuple(labels) != tuple(cert.essential_labels):
        return False
    comps = certificate_components(h, E)
    acc = set()
    for i, e in enumerate(E):
        arc, comp = comps[e]
        if tuple(arc.edge_ids) != tuple(cert.arcs[i]):
            return False
        if {f.id for f in comp.edges} != {f.id for f in cert.components[i].edges}:
            return False
        if reduced_rank(comp) != 1:
            return False
        acc |= {f.label for f in comp.edges}
        if acc & set(labels[i + 1:]):
            return False
    return cert.label_order == label_order_for(labels, h.alphabet)


def generalized_echelon_certificate(h: LabeledGraph, cap: int = DEFAULT_EDGE_CAP) -> Optional[EchelonCertificate]:
    """Search injective maximal essential sets for an admissible ordering.

    The ordering constraint (``C_j`` must not see the label of any later
    essential edge) is a precedence relation, so each set needs one
    topological sort instead of a walk over permutations.
    """
    if not is_immersion(h):
        raise InvalidArgument("needs an immersed graph")
    _check_enumerable(h, cap)
    for E in _search(h, injective=True):
        E = sorted(E)
        if not is_maximal_essential(h, E):
            continue
        comps = certificate_components(h, E)
        order = _order_essential(h, E, comps)
        if order is None:
            continue
        cert = _build_certificate(h, order, comps)
        if not verify_certificate(h, cert):
            raise AssertionError("generalized echelon certificate failed re-verification")
        return cert
    return None


def echelon_via_cycles(gens: Sequence[Word], alphabet: Alphabet):
    """Maximal essential set read off an echelon basis; returns ``(graph, edge ids)``.

    For each generator after the first, the first letter carrying a fresh
    label is followed through folding to its edge in the Stallings graph.
    """
    check = check_echelon_form(gens, alphabet)
    if not check:
        raise InvalidArgument("generators are not in echelon form")
    fm = fold_with_map(wedge_of_cycles(gens, alphabet))
    h = fm.target
    E = []
    for i, (w, rng, fresh) in enumerate(zip(gens, generator_edge_ranges(gens), check.fresh)):
        if i == 0:
            continue
        pos = next(p for p, (l, _) in enumerate(w.reduced_letters()) if l in fresh)
        E.append(fm.edge_map[rng.start + pos])
    if reduced_rank(h) != len(E) or not is_maximal_essential(h, E):
        raise AssertionError("fresh-letter edges are not a maximal essential set")
    labels = [h.edge(e).label for e in E]
    if len(set(labels)) != len(labels):
        raise AssertionError("fresh-letter edges are not injectively labelled")
    return h, tuple(E)


def spanning_tree_basis(h: LabeledGraph) -> list:
    """Free basis of pi_1(h, base): one reduced word per edge outside a BFS tree."""
    if h.base is None or not is_connected(h):
        raise InvalidArgument("needs a connected based graph")
    path = {h.base: ()}
    tree_edges = set()
    frontier = [h.base]
    while frontier:
        nxt = []
        for v in frontier:
            for end, label, sign, far in h.ends(v):
                if far not in path:
                    path[far] = path[v] + (Letter(label, sign),)
                    tree_edges.add(end.edge)
                    nxt.append(far)
        frontier = nxt
    basis = []
    for e in h.edges:
        if e.id in tree_edges:
            continue
        w = Word(path[e.origin]) * Word([Letter(e.label, 1)]) * Word(path[e.terminus]).inverse()
        basis.append(Word(w.reduced_letters()))
    return basis


@dataclass(frozen=True)
class NonEchelonResult:
    status: str
    basis: tuple
    images: tuple


def non_echelon_witness(h: LabeledGraph, basis: Sequence[Word] = None) -> NonEchelonResult:
    """``not_echelon`` when ``rank(h) = n`` and every basis word abelianizes to zero."""
    if basis is None:
        basis = spanning_tree_basis(h)
        acc = Acceptor(h)
        if not all(acc(w) for w in basis):
            raise AssertionError("spanning-tree basis word not accepted")
    n = h.alphabet.size
    images = tuple(abelianize(w, n) for w in basis)
    zero = (0,) * n
    if rank(h) == n and all(img == zero for img in images):
        return NonEchelonResult(NOT_ECHELON, tuple(basis), images)
    return NonEchelonResult(INCONCLUSIVE, tuple(basis), images)
