import pytest
from hypothesis import given, strategies as st

from conftest import AB, ABC
from subgroup_graphs.core_graph import Alphabet
from subgroup_graphs.errors import WordParseError
from subgroup_graphs.words import (Letter, Word, abelianize, cyclic_reduce, format_word, free_reduce,
                                   is_cyclically_reduced, parse_word, parse_word_list, reduced_words)

A, a_, B, b_ = Letter(0, 1), Letter(0, -1), Letter(1, 1), Letter(1, -1)

words = st.lists(st.tuples(st.integers(0, 2), st.sampled_from((1, -1))), max_size=14).map(Word)


def test_parse_examples():
    assert parse_word("abA", AB).letters == (A, B, a_)
    assert parse_word("a^-1b^-1ab", AB).letters == (a_, b_, A, B)
    with pytest.raises(WordParseError) as exc:
        parse_word("xz", AB)
    assert exc.value.position == 0
    with pytest.raises(WordParseError) as exc:
        parse_word("abz", AB)
    assert "position 2" in str(exc.value)


def test_parse_exponents_and_whitespace():
    assert parse_word("a^2 c b", ABC).letters == (A, A, Letter(2, 1), B)
    assert parse_word("1", AB) == Word()
    assert parse_word("", AB) == Word()


def test_parse_multichar_names():
    alpha = Alphabet(("x1", "x12", "y"))
    assert parse_word("x12x1y^-1", alpha).letters == (Letter(1, 1), Letter(0, 1), Letter(2, -1))
    assert format_word(parse_word("x12^-1", alpha), alpha) == "x12^-1"


def test_parse_word_list():
    gens = parse_word_list("abAB, ABab", AB)
    assert [format_word(w, AB) for w in gens] == ["abAB", "ABab"]


def test_free_reduce_examples():
    assert free_reduce(Word([A, a_])) == Word()
    assert len(free_reduce(Word([A, a_]))) == 0
    w = parse_word("abAB", AB)
    assert free_reduce(w).letters == w.letters
    assert len(free_reduce(parse_word("abBA", AB))) == 0


def test_cyclic_reduce_examples():
    assert cyclic_reduce(parse_word("Aba", AB)).letters == (B,)
    w = parse_word("abAB", AB)
    assert cyclic_reduce(w).letters == w.letters
    # BabAb: strip B..b, then a..A
    assert format_word(cyclic_reduce(parse_word("BabAb", AB)), AB) == "b"


def test_cyclic_reduce_strips_ends():
    # B a b a A b -> free reduces to B a b b; the ends B...b cancel cyclically -> a b
    assert format_word(cyclic_reduce(parse_word("BabaAb", AB)), AB) == "ab"


def test_abelianize_examples():
    assert abelianize(parse_word("aba^-1b^-1", AB), 2) == (0, 0)
    assert abelianize(parse_word("a", AB), 2) == (1, 0)
    assert abelianize(parse_word("aacB", ABC), 3) == (2, -1, 1)


def test_word_equality_is_group_equality():
    assert parse_word("abBa", AB) == parse_word("aa", AB)
    assert hash(parse_word("abBa", AB)) == hash(parse_word("aa", AB))
    assert (parse_word("ab", AB) * parse_word("BA", AB)) == Word()


def test_reduced_words_counts():
    # 1 + 4 + 12 + 36 reduced words over two letters
    assert sum(1 for _ in reduced_words(2, 3)) == 53
    assert all(w.is_reduced() for w in reduced_words(2, 4))


@given(words)
def test_free_reduce_idempotent(w):
    r = free_reduce(w)
    assert free_reduce(r).letters == r.letters
    assert len(r) <= len(w)
    assert abelianize(r, 3) == abelianize(w, 3)
    assert r.is_reduced()


@given(words)
def test_cyclic_reduce_properties(w):
    c = cyclic_reduce(w)
    assert len(c) <= len(free_reduce(w))
    assert is_cyclically_reduced(c)
    # c is conjugate to w: w = u c u^-1 with u the stripped prefix
    r = free_reduce(w).letters
    k = (len(r) - len(c)) // 2
    u = Word(r[:k])
    assert u * c * u.inverse() == w


@given(words)
def test_format_parse_roundtrip(w):
    alpha = Alphabet(("a", "b", "c"))
    assert parse_word(format_word(w, alpha), alpha).letters == w.letters
