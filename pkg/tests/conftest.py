import random

import pytest
from hypothesis import strategies as st

from subgroup_graphs.core_graph import Alphabet, Edge, LabeledGraph
from subgroup_graphs.generators import random_core_graph, random_subgroup_graph
from subgroup_graphs.stallings import build_subgroup_graph
from subgroup_graphs.words import parse_word_list

AB = Alphabet(("a", "b"))
ABC = Alphabet(("a", "b", "c"))


def graph(alphabet, edges, vertices=None, base=None):
    """Build a graph from ``(origin, terminus, label_name)`` triples; edge ids follow list order."""
    es = [Edge(i, o, t, alphabet.index(l)) for i, (o, t, l) in enumerate(edges)]
    if vertices is None:
        vertices = sorted({e.origin for e in es} | {e.terminus for e in es} | ({base} if base is not None else set()))
    return LabeledGraph(alphabet, vertices, es, base)


def fold(gens, alphabet=AB):
    return build_subgroup_graph(parse_word_list(gens, alphabet), alphabet)


def figure_eight(base=0):
    return graph(AB, [(0, 0, "a"), (0, 0, "b")], base=base)


def cycle(n, label="a", alphabet=AB):
    return graph(alphabet, [(i, (i + 1) % n, label) for i in range(n)])


def theta():
    return graph(ABC, [(0, 1, "a"), (0, 1, "b"), (0, 1, "c")])


@pytest.fixture
def commutator_pair():
    return fold("abAB,ABab")


@st.composite
def subgroup_graphs(draw, alphabet=AB, max_gens=4, max_len=6):
    seed = draw(st.integers(0, 2**32 - 1))
    return random_subgroup_graph(random.Random(seed), alphabet, max_gens, max_len)


@st.composite
def core_graphs(draw, alphabet=AB, max_edges=8, min_rank=1):
    seed = draw(st.integers(0, 2**32 - 1))
    g = random_core_graph(random.Random(seed), alphabet, max_edges=max_edges, min_rank=min_rank)
    if g is None:
        from hypothesis import reject
        reject()
    return g


@st.composite
def random_graphs(draw, alphabet=AB, max_vertices=6, max_edges=10):
    """Arbitrary (not necessarily immersed or connected) labeled graphs."""
    n = draw(st.integers(0, max_vertices))
    if n == 0:
        return LabeledGraph(alphabet, [], [])
    m = draw(st.integers(0, max_edges))
    edges = [Edge(i, draw(st.integers(0, n - 1)), draw(st.integers(0, n - 1)),
                  draw(st.integers(0, alphabet.size - 1))) for i in range(m)]
    return LabeledGraph(alphabet, range(n), edges)


# one line per acceptance criterion, collected by tests/test_acceptance.py
ACCEPTANCE_LINES = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[n])
