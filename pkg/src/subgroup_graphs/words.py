"""Words over an alphabet and its formal inverses."""

from __future__ import annotations

import re
from typing import Iterable, NamedTuple

from .core_graph import Alphabet
from .errors import InvalidArgument, WordParseError


class Letter(NamedTuple):
    label: int
    sign: int

    def inverse(self) -> "Letter":
        return Letter(self.label, -self.sign)


class Word:
    """Immutable letter sequence.  Equality and hashing are on the free reduction."""

    __slots__ = ("letters", "_reduced")

    def __init__(self, letters: Iterable = ()):
        letters = tuple(Letter(int(l), int(s)) for l, s in letters)
        for l, s in letters:
            if s not in (1, -1) or l < 0:
                raise InvalidArgument(f"bad letter ({l}, {s})")
        self.letters = letters
        self._reduced = None

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return Word(self.letters[i])
        return self.letters[i]

    def reduced_letters(self) -> tuple:
        if self._reduced is None:
            self._reduced = _reduce(self.letters)
        return self._reduced

    def __eq__(self, other):
        if not isinstance(other, Word):
            return NotImplemented
        return self.reduced_letters() == other.reduced_letters()

    def __hash__(self):
        return hash(self.reduced_letters())

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word(l.inverse() for l in reversed(self.letters))

    def is_reduced(self) -> bool:
        return len(self.reduced_letters()) == len(self.letters)

    def labels(self) -> set:
        return {l for l, _ in self.letters}

    def format(self, alphabet: Alphabet) -> str:
        return format_word(self, alphabet)

    def __repr__(self):
        return f"Word({list(self.letters)})"


def _reduce(letters) -> tuple:
    out = []
    for x in letters:
        if out and out[-1].label == x.label and out[-1].sign == -x.sign:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


_EXP = re.compile(r"\^(-?\d+)")


def parse_word(text: str, alphabet: Alphabet) -> Word:
    """Parse ``text`` left to right.

    Letters are alphabet names (longest match first).  For single-character
    names the uppercase character is the inverse.  Any letter may carry an
    integer exponent ``^k``, so ``a^-1`` and ``a^2`` are both accepted.
    Whitespace is ignored; ``"1"`` is the empty word.
    """
    if text.strip() == "1":
        return Word()
    names = sorted(enumerate(alphabet.names), key=lambda p: -len(p[1]))
    by_name = {name: i for i, name in enumerate(alphabet.names)}
    upper = {}
    for i, name in enumerate(alphabet.names):
        if len(name) == 1 and name.upper() != name and name.upper() not in by_name:
            upper[name.upper()] = i
    letters = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        label, sign = None, 1
        for i, name in names:
            if text.startswith(name, pos):
                label = i
                pos += len(name)
                break
        else:
            ch = text[pos]
            if ch in upper:
                label, sign = upper[ch], -1
                pos += 1
            else:
                raise WordParseError(f"unknown symbol {ch!r}", pos)
        m = _EXP.match(text, pos)
        power = 1
        if m:
            power = int(m.group(1))
            pos = m.end()
        if power < 0:
            sign, power = -sign, -power
        letters.extend([Letter(label, sign)] * power)
    return Word(letters)


def parse_word_list(text: str, alphabet: Alphabet) -> list:
    """Comma-separated generator list, e.g. ``"abAB,ABab"``."""
    return [parse_word(part, alphabet) for part in text.split(",") if part.strip()]


def format_word(w: Word, alphabet: Alphabet) -> str:
    """Inverse of :func:`parse_word` for the letter sequence (no exponent folding)."""
    if not len(w):
        return "1"
    out = []
    for label, sign in w.letters:
        name = alphabet.names[label]
        if sign == 1:
            out.append(name)
        elif len(name) == 1 and name.upper() != name and name.upper() not in alphabet.names:
            out.append(name.upper())
        else:
            out.append(f"{name}^-1")
    return "".join(out)


def free_reduce(w: Word) -> Word:
    return Word(w.reduced_letters())


def cyclic_reduce(w: Word) -> Word:
    """Strip matching inverse letters from both ends of the free reduction."""
    letters = w.reduced_letters()
    i, j = 0, len(letters) - 1
    while i < j and letters[i] == letters[j].inverse():
        i += 1
        j -= 1
    return Word(letters[i:j + 1])


def is_cyclically_reduced(w: Word) -> bool:
    letters = w.letters
    if not w.is_reduced():
        return False
    return len(letters) < 2 or letters[0] != letters[-1].inverse()


def abelianize(w: Word, n: int) -> tuple:
    """Exponent-sum vector of length ``n``."""
    vec = [0] * n
    for label, sign in w.letters:
        if label >= n:
            raise InvalidArgument(f"label {label} does not fit alphabet of size {n}")
        vec[label] += sign
    return tuple(vec)


def reduced_words(n: int, max_length: int):
    """All reduced words over ``n`` letters up to ``max_length``, shortest first."""
    layer = [()]
    yield Word()
    letters = [Letter(l, s) for l in range(n) for s in (1, -1)]
    for _ in range(max_length):
        nxt = []
        for prefix in layer:
            for x in letters:
                if prefix and prefix[-1] == x.inverse():
                    continue
                nxt.append(prefix + (x,))
        for p in nxt:
            yield Word(p)
        layer = nxt
