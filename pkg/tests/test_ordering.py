import pytest
from hypothesis import given, settings, strategies as st

from conftest import AB, fold, figure_eight, core_graphs
from subgroup_graphs.core_graph import Alphabet, core, rank
from subgroup_graphs.echelon import EchelonCertificate, certificate_for, generalized_echelon_certificate
from subgroup_graphs.errors import InvalidArgument, InvalidOracle
from subgroup_graphs.ordering import (BRIDGE_AT, NO_MAXIMUM, NOT_MARKED_MAX, LabelOrder, LiftedEdge, LineSpec,
                                      bridge_in_line, certificate_label_order, lex_compare, position_order,
                                      positions_from_word_order,
                                      verify_bridge_certificate)
from subgroup_graphs.words import Word, parse_word

A_LT_B = LabelOrder((0, 1))
B_LT_A = LabelOrder((1, 0))


def shortlex(u: Word, v: Word) -> int:
    """A total order on reduced words, used as a stand-in F-order in tests."""
    ku = (len(u.reduced_letters()), u.reduced_letters())
    kv = (len(v.reduced_letters()), v.reduced_letters())
    return (ku > kv) - (ku < kv)


def line(left, mid, right, marked=None):
    return LineSpec(parse_word(left, AB), parse_word(mid, AB), parse_word(right, AB), marked)


def test_label_order_validation():
    with pytest.raises(InvalidArgument):
        LabelOrder((0, 0))
    assert LabelOrder.from_names(["b", "a"], AB) == B_LT_A
    assert B_LT_A.names(AB) == ["b", "a"]


def test_lex_compare_examples():
    g = parse_word("ab", AB)
    assert lex_compare(LiftedEdge(g, 0), LiftedEdge(g, 1), A_LT_B, shortlex) == -1
    assert lex_compare(LiftedEdge(g, 1), LiftedEdge(g, 1), A_LT_B, shortlex) == 0
    short, long_ = parse_word("a", AB), parse_word("ab", AB)
    assert lex_compare(LiftedEdge(long_, 0), LiftedEdge(short, 0), A_LT_B, shortlex) == shortlex(long_, short)
    # the label dominates the group coordinate
    assert lex_compare(LiftedEdge(long_, 0), LiftedEdge(short, 1), A_LT_B, shortlex) == -1


def test_lex_compare_rejects_bad_oracles():
    u, v = parse_word("a", AB), parse_word("b", AB)
    with pytest.raises(InvalidOracle):
        lex_compare(LiftedEdge(u, 0), LiftedEdge(v, 0), A_LT_B, lambda x, y: 5)
    with pytest.raises(InvalidOracle):
        lex_compare(LiftedEdge(u, 0), LiftedEdge(v, 0), A_LT_B, lambda x, y: 0)


def test_line_validation():
    with pytest.raises(InvalidArgument):
        line("1", "ab", "a")
    with pytest.raises(InvalidArgument):
        line("a", "Ab", "a")
    with pytest.raises(InvalidArgument):
        line("abA", "b", "a")  # left period not cyclically reduced
    assert line("aba", "b", "a").left.format(AB) == "aba"
    with pytest.raises(InvalidArgument):
        line("a", "ab", "a", marked=2)


def test_line_from_dict():
    spec = LineSpec.from_dict({"left": "a", "mid": "abbbab", "marked": 4, "right": "a"}, AB)
    assert spec.marked == 4 and len(spec.mid) == 6
    with pytest.raises(InvalidArgument):
        LineSpec.from_dict({"left": "a"}, AB)


def test_bridge_single_maximum():
    spec = line("a", "aabaa", "a", marked=2)
    res = bridge_in_line(spec, A_LT_B, positions_from_word_order(spec, shortlex))
    assert res.kind == BRIDGE_AT and res.index == 2 and res.is_marked


def test_bridge_on_the_three_b_line():
    spec = line("a", "aaabbabaaa", "a", marked=4)
    ranking = [0, 0, 0, 5, 9, 0, 3, 0, 0, 0]
    res = bridge_in_line(spec, A_LT_B, position_order(ranking))
    assert res.kind == BRIDGE_AT and res.index == 4
    other = bridge_in_line(spec, A_LT_B, position_order([0, 0, 0, 9, 5, 0, 3, 0, 0, 0]))
    assert other.kind == NOT_MARKED_MAX and other.index == 3


def test_bridge_with_max_label_in_tail():
    any_order = position_order(range(20))
    assert bridge_in_line(line("a", "aaab", "b"), A_LT_B, any_order).kind == NO_MAXIMUM
    assert bridge_in_line(line("b", "1", "b"), A_LT_B, any_order).kind == NO_MAXIMUM
    # with b < a the largest label is a, which sits in the tails
    assert bridge_in_line(line("a", "aaabbabaaa", "a", 4), B_LT_A, any_order).kind == NO_MAXIMUM


def test_word_order_adapter_and_tie_rejection():
    spec = line("a", "bab", "a", marked=0)
    res = bridge_in_line(spec, A_LT_B, positions_from_word_order(spec, shortlex))
    # lifts of the two b-edges are 1 and ba; shortlex puts ba above 1
    assert res.index == 2 and res.kind == NOT_MARKED_MAX
    with pytest.raises(InvalidOracle):
        bridge_in_line(spec, A_LT_B, position_order([1, 0, 1]))


def test_certificate_label_order_examples():
    f8 = figure_eight()
    cert = certificate_for(f8, [1])
    assert certificate_label_order(cert, AB).names(AB) == ["a", "b"]
    five = Alphabet.standard(5)
    fake = EchelonCertificate((0, 1, 2, 3), (1, 2, 3, 4), (), (), (), ())
    assert certificate_label_order(fake, five).names(five) == ["a", "b", "c", "d", "e"]
    three = Alphabet.standard(3)
    fake = EchelonCertificate((0,), (2,), (), (), (), ())
    assert certificate_label_order(fake, three).names(three) == ["a", "b", "c"]


def test_verify_bridge_examples(commutator_pair):
    h = core(commutator_pair)
    assert verify_bridge_certificate(h, generalized_echelon_certificate(h))
    h2 = core(fold("aab,bA"))
    assert rank(h2) == 2
    assert verify_bridge_certificate(h2, generalized_echelon_certificate(h2))
    five = Alphabet.standard(5)
    from subgroup_graphs.stallings import build_subgroup_graph
    from subgroup_graphs.words import parse_word_list
    h3 = core(build_subgroup_graph(parse_word_list("ab,a^2cb,ce", five), five))
    good = generalized_echelon_certificate(h3)
    assert verify_bridge_certificate(h3, good)
    assert not verify_bridge_certificate(h3, certificate_for(h3, list(reversed(good.essential))))


reduced = st.lists(st.tuples(st.integers(0, 1), st.sampled_from((1, -1))), max_size=6).map(
    lambda ls: Word(Word(ls).reduced_letters()))
edges = st.tuples(reduced, st.integers(0, 1)).map(lambda t: LiftedEdge(*t))


@given(edges, edges, edges, st.sampled_from([A_LT_B, B_LT_A]))
def test_lex_compare_is_a_total_order(x, y, z, order):
    c = lambda p, q: lex_compare(p, q, order, shortlex)
    assert c(x, y) == -c(y, x)
    assert (c(x, y) == 0) == (x == y)
    if c(x, y) <= 0 and c(y, z) <= 0:
        assert c(x, z) <= 0


letters = st.tuples(st.integers(0, 1), st.sampled_from((1, -1)))


@st.composite
def lines(draw):
    for _ in range(50):
        left = Word(draw(st.lists(letters, min_size=1, max_size=2)))
        right = Word(draw(st.lists(letters, min_size=1, max_size=2)))
        mid = Word(draw(st.lists(letters, min_size=1, max_size=8)))
        try:
            spec = LineSpec(left, mid, right, draw(st.integers(0, len(mid) - 1)))
        except InvalidArgument:
            continue
        return spec
    from hypothesis import reject
    reject()


@settings(max_examples=200, deadline=None)
@given(lines(), st.integers(0, 2), st.integers(0, 2), st.sampled_from([A_LT_B, B_LT_A]), st.randoms())
def test_bridge_invariant_under_rewindowing(spec, lc, rc, order, rnd):
    n = len(spec.mid)
    ranking = rnd.sample(range(100), n)
    base = bridge_in_line(spec, order, position_order(ranking))
    moved = spec.rewindow(lc, rc)
    shift = lc * len(spec.left)
    # the same edges keep their ranks; copied tail edges rank below everything
    new_rank = [-1 - i for i in range(len(moved.mid))]
    for i, r in enumerate(ranking):
        new_rank[i + shift] = r
    res = bridge_in_line(moved, order, position_order(new_rank))
    assert res.kind == base.kind
    if base.index is not None:
        assert res.index == base.index + shift


@settings(max_examples=60, deadline=None)
@given(core_graphs(alphabet=Alphabet.standard(3), max_edges=9, min_rank=2))
def test_every_certificate_passes_the_bridge_check(h):
    cert = generalized_echelon_certificate(h)
    if cert is not None:
        assert verify_bridge_certificate(h, cert)
