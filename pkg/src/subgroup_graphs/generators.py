"""Seeded random words and graphs for property tests and the harness."""

from __future__ import annotations

import random

from .core_graph import Alphabet, Edge, LabeledGraph, core, is_connected, is_core
from .stallings import build_subgroup_graph
from .words import Letter, Word


def random_reduced_word(rng: random.Random, n: int, length: int) -> Word:
    letters = []
    while len(letters) < length:
        x = Letter(rng.randrange(n), rng.choice((1, -1)))
        if letters and letters[-1] == x.inverse():
            continue
        letters.append(x)
    return Word(letters)


def random_generators(rng: random.Random, n: int, max_gens: int = 4, max_len: int = 6) -> list:
    count = rng.randint(1, max_gens)
    return [random_reduced_word(rng, n, rng.randint(1, max_len)) for _ in range(count)]


def random_subgroup_graph(rng: random.Random, alphabet: Alphabet, max_gens: int = 4,
                          max_len: int = 6) -> LabeledGraph:
    """Fold a random wedge of generator cycles; always immersed and based."""
    return build_subgroup_graph(random_generators(rng, alphabet.size, max_gens, max_len), alphabet)


def _direct_core(rng: random.Random, alphabet: Alphabet, max_edges: int):
    n_edges = rng.randint(1, max_edges)
    n_vertices = rng.randint(1, n_edges)
    out_free = {(v, l) for v in range(n_vertices) for l in range(alphabet.size)}
    in_free = set(out_free)
    edges = []
    for eid in range(n_edges):
        label = rng.randrange(alphabet.size)
        sources = sorted(v for v, l in out_free if l == label)
        targets = sorted(v for v, l in in_free if l == label)
        if not sources or not targets:
            return None
        o, t = rng.choice(sources), rng.choice(targets)
        out_free.discard((o, label))
        in_free.discard((t, label))
        edges.append(Edge(eid, o, t, label))
    g = LabeledGraph(alphabet, range(n_vertices), edges)
    if not is_connected(g) or not is_core(g):
        return None
    return g


def random_core_graph(rng: random.Random, alphabet: Alphabet, max_edges: int = 8,
                      min_rank: int = 1, attempts: int = 200):
    """Connected immersed core graph, based at a random vertex; None if sampling gives up.

    Alternates a direct edge-by-edge sampler (rejecting disconnected or
    non-core draws) with the core of a random folded wedge.
    """
    for i in range(attempts):
        if i % 2 == 0:
            g = _direct_core(rng, alphabet, max_edges)
        else:
            g = core(random_subgroup_graph(rng, alphabet, 4, max(1, max_edges // 2)))
            if not g.num_vertices or g.num_edges > max_edges:
                g = None
        if g is None or 1 - (g.num_vertices - g.num_edges) < min_rank:
            continue
        g = g.renumbered()
        return g.with_base(rng.choice(g.vertices))
    return None
