"""Label orders, lexicographic comparison of lifted edges, bridges on eventually periodic lines."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .core_graph import Alphabet, LabeledGraph
from .errors import InvalidArgument, InvalidOracle
from .words import Letter, Word, is_cyclically_reduced, parse_word

BRIDGE_AT = "bridge_at"
NOT_MARKED_MAX = "not_marked_max"
NO_MAXIMUM = "no_maximum"

WordOrder = Callable[[Word, Word], int]
PositionOrder = Callable[[int, int], int]


@dataclass(frozen=True)
class LabelOrder:
    """A total order on labels, listed smallest first."""

    order: tuple

    def __post_init__(self):
        if sorted(self.order) != list(range(len(self.order))):
            raise InvalidArgument(f"label order {self.order} is not a permutation")
        object.__setattr__(self, "_rank", {l: i for i, l in enumerate(self.order)})

    @classmethod
    def from_names(cls, names: Sequence[str], alphabet: Alphabet) -> "LabelOrder":
        return cls(tuple(alphabet.index(x) for x in names))

    @classmethod
    def identity(cls, n: int) -> "LabelOrder":
        return cls(tuple(range(n)))

    def rank(self, label: int) -> int:
        return self._rank[label]

    def max(self, labels) -> int:
        return max(labels, key=self.rank)

    def names(self, alphabet: Alphabet) -> list:
        return [alphabet.names[l] for l in self.order]


@dataclass(frozen=True)
class LiftedEdge:
    """An edge of the universal cover: group element and label."""

    word: Word
    label: int

    def __post_init__(self):
        object.__setattr__(self, "word", Word(self.word.reduced_letters()))


def _checked(verdict, a, b) -> int:
    if verdict not in (-1, 0, 1):
        raise InvalidOracle(f"order oracle returned {verdict!r}; expected -1, 0 or 1")
    if (verdict == 0) != (a == b):
        raise InvalidOracle("order oracle is not a total order on these words")
    return verdict


def lex_compare(e1: LiftedEdge, e2: LiftedEdge, d_order: LabelOrder, f_order: WordOrder) -> int:
    """-1, 0 or 1; the label is the major key and ``f_order`` breaks ties."""
    r1, r2 = d_order.rank(e1.label), d_order.rank(e2.label)
    if r1 != r2:
        return -1 if r1 < r2 else 1
    return _checked(f_order(e1.word, e2.word), e1.word, e2.word)


@dataclass(frozen=True)
class LineSpec:
    """A bi-infinite line reading ``...left left mid right right...`` with a marked middle edge."""

    left: Word
    mid: Word
    right: Word
    marked: Optional[int] = None

    def __post_init__(self):
        for name, w in (("left", self.left), ("right", self.right)):
            if not w.letters:
                raise InvalidArgument(f"{name} period must be nonempty")
            if not w.is_reduced() or not is_cyclically_reduced(w):
                raise InvalidArgument(f"{name} period must be cyclically reduced")
        if not self.mid.is_reduced():
            raise InvalidArgument("middle segment must be reduced")
        seam = (self.left.letters[-1],) + tuple(self.mid.letters) + (self.right.letters[0],)
        for x, y in zip(seam, seam[1:]):
            if x == y.inverse():
                raise InvalidArgument("line cancels at a seam")
        if self.marked is not None and not 0 <= self.marked < len(self.mid.letters):
            raise InvalidArgument(f"marked index {self.marked} outside the middle segment")

    @classmethod
    def from_dict(cls, data: dict, alphabet: Alphabet) -> "LineSpec":
        try:
            return cls(parse_word(data["left"], alphabet), parse_word(data.get("mid", "1") or "1", alphabet),
                       parse_word(data["right"], alphabet), data.get("marked"))
        except KeyError as exc:
            raise InvalidArgument(f"line spec missing key {exc}") from None

    def lifted(self, i: int) -> LiftedEdge:
        """Lift of middle edge ``i``, with the vertex before the middle at the identity."""
        prefix = Word(self.mid.letters[:i])
        x = self.mid.letters[i]
        if x.sign == 1:
            return LiftedEdge(prefix, x.label)
        return LiftedEdge(prefix * Word([x]), x.label)

    def rewindow(self, left_copies: int = 0, right_copies: int = 0) -> "LineSpec":
        """Same line with periods moved from the tails into the middle."""
        mid = Word(tuple(self.left.letters) * left_copies + tuple(self.mid.letters)
                   + tuple(self.right.letters) * right_copies)
        marked = None if self.marked is None else self.marked + left_copies * len(self.left.letters)
        return LineSpec(self.left, mid, self.right, marked)


@dataclass(frozen=True)
class BridgeResult:
    kind: str
    index: Optional[int] = None  # winning middle position
    is_marked: bool = False

    def as_dict(self) -> dict:
        return {"kind": self.kind, "index": self.index, "is_marked": self.is_marked}


def bridge_in_line(line: LineSpec, d_order: LabelOrder, f_order: PositionOrder) -> BridgeResult:
    """Largest edge of the line, when it is decided by finitely many comparisons.

    ``f_order(i, j)`` compares the group coordinates of middle edges ``i``
    and ``j``.  If the largest label occurs in a periodic tail there are
    infinitely many candidates and ``no_maximum`` is reported.
    """
    tail_labels = {x.label for x in line.left.letters} | {x.label for x in line.right.letters}
    mid_labels = {x.label for x in line.mid.letters}
    top = d_order.max(tail_labels | mid_labels)
    if top in tail_labels:
        return BridgeResult(NO_MAXIMUM)
    candidates = [i for i, x in enumerate(line.mid.letters) if x.label == top]
    # equal labels: the lifts of distinct positions are distinct group elements
    position_of = {line.lifted(i).word: i for i in candidates}

    def word_order(u: Word, v: Word) -> int:
        return f_order(position_of[u], position_of[v])

    best = candidates[0]
    for i in candidates[1:]:
        if lex_compare(line.lifted(i), line.lifted(best), d_order, word_order) > 0:
            best = i
    kind = BRIDGE_AT if best == line.marked else NOT_MARKED_MAX
    return BridgeResult(kind, best, best == line.marked)


def position_order(ranking: Sequence[int]) -> PositionOrder:
    """Compare middle positions by ``ranking[i]`` (higher is larger); ties are rejected."""

    def cmp(i: int, j: int) -> int:
        if i == j:
            return 0
        if ranking[i] == ranking[j]:
            raise InvalidOracle(f"ranking ties positions {i} and {j}")
        return -1 if ranking[i] < ranking[j] else 1

    return cmp


def positions_from_word_order(line: LineSpec, word_order: WordOrder) -> PositionOrder:
    """Adapt an order on group elements to middle positions of ``line``."""
    return lambda i, j: word_order(line.lifted(i).word, line.lifted(j).word)


def certificate_label_order(cert, alphabet: Alphabet) -> LabelOrder:
    """Non-essential labels first in alphabet order, then essential labels in certificate order."""
    from .echelon import label_order_for

    return LabelOrder(label_order_for(cert.essential_labels, alphabet))


def verify_bridge_certificate(h: LabeledGraph, cert) -> bool:
    """Each essential label is the largest label of its component under the certificate order.

    Components are recomputed from ``h``; the certificate's own copies are
    only compared against them.
    """
    from .echelon import certificate_components, label_order_for

    E = list(cert.essential)
    if len(E) != len(cert.components):
        return False
    labels = [h.edge(e).label for e in E]
    if len(set(labels)) != len(labels):
        return False
    order = LabelOrder(label_order_for(labels, h.alphabet))
    if order.order != tuple(cert.label_order):
        return False
    comps = certificate_components(h, E)
    for i, e in enumerate(E):
        comp = comps[e][1]
        if {f.id for f in comp.edges} != {f.id for f in cert.components[i].edges}:
            return False
        if order.max({f.label for f in comp.edges}) != labels[i]:
            return False
    return True
