"""Exact arithmetic on freely reduced words in a free group of finite rank.

A letter is a nonzero integer: ``+i`` stands for the generator ``x_i``
(``1 <= i <= rank``) and ``-i`` for its inverse.  A :class:`Word` is a freely
reduced sequence of letters together with the ambient rank; a
:class:`CyclicWord` is a cyclically reduced word considered up to rotation.
All values are immutable and all operations are pure, so they can be shared
freely between threads.

Words can be written in two text forms, accepted everywhere a word is parsed:

* compact: lowercase ASCII letters ``a``..``z`` denote ``x1``..``x26`` and
  uppercase ``A``..``Z`` their inverses, e.g. ``aabbA`` is
  ``x1 x1 x2 x2 x1^-1``;
* verbose: whitespace-separated tokens ``x<k>`` and ``x<k>^-1``.

The parser auto-detects the form; anything containing a digit, ``^`` or
whitespace is treated as verbose.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Sequence, Union

__all__ = [
    "Letter",
    "Word",
    "CyclicWord",
    "ParseError",
    "reduce",
    "concat",
    "invert",
    "conjugate",
    "power",
    "commutator",
    "cyclic_reduce",
    "abelianize",
    "in_commutator_subgroup",
    "in_square_times_commutator",
    "cyclic_bigrams",
    "contains_cyclic_subword",
    "parse_word",
    "format_word",
]


class ParseError(ValueError):
    """Malformed word text.  Records the character position of the defect."""

    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position} in {text!r}")
        self.text = text
        self.position = position


class Letter(NamedTuple):
    """A single generator or inverse generator, e.g. ``x3`` or ``x3^-1``."""

    index: int
    inverted: bool = False

    @classmethod
    def from_signed(cls, value: int) -> "Letter":
        if value == 0:
            raise ValueError("letter value must be a nonzero integer")
        return cls(abs(value), value < 0)

    @property
    def signed(self) -> int:
        return -self.index if self.inverted else self.index

    def inverse(self) -> "Letter":
        return Letter(self.index, not self.inverted)

    def __str__(self) -> str:
        return f"x{self.index}^-1" if self.inverted else f"x{self.index}"


def _as_signed(letter: Union[int, Letter]) -> int:
    if isinstance(letter, Letter):
        return letter.signed
    return int(letter)


def _vkey(v: int) -> int:
    """Total order on letters: x1 < x1^-1 < x2 < x2^-1 < ...

    Maps +1, -1, +2, -2, ... to 1, 2, 3, 4, ...
    """
    return 2 * abs(v) - (1 if v > 0 else 0)


def _check_letters(letters: Sequence[int], rank: int) -> None:
    if rank < 1:
        raise ValueError(f"rank must be >= 1, got {rank}")
    for v in letters:
        if v == 0 or abs(v) > rank:
            raise ValueError(f"letter {v} out of range for rank {rank}")


def _reduce_tuple(letters: Iterable[int]) -> tuple:
    """Freely reduce a letter sequence with a cancellation stack."""
    out: list = []
    for v in letters:
        if out and out[-1] == -v:
            out.pop()
        else:
            out.append(v)
    return tuple(out)


def _cyclic_split(letters: Sequence[int]) -> tuple:
    """Split reduced ``letters`` as ``t + core + t^-1`` with maximal ``t``.

    Returns ``(t, core)`` as tuples; ``core`` is cyclically reduced.
    """
    i, j = 0, len(letters)
    while j - i >= 2 and letters[i] == -letters[j - 1]:
        i += 1
        j -= 1
    return tuple(letters[:i]), tuple(letters[i:j])


def _least_rotation(letters: Sequence[int]) -> tuple:
    """Lexicographically least rotation under the letter order ``_vkey``."""
    n = len(letters)
    if n <= 1:
        return tuple(letters)
    keys = [_vkey(v) for v in letters]
    doubled = keys + keys
    best = 0
    for s in range(1, n):
        for off in range(n):
            a, b = doubled[s + off], doubled[best + off]
            if a != b:
                if a < b:
                    best = s
                break
    return tuple(letters[best:]) + tuple(letters[:best])


@dataclass(frozen=True)
class Word:
    """A freely reduced word over the basis ``x1 .. x<rank>``.

    The constructor insists on reduced input; use :func:`reduce` to build a
    word from an arbitrary letter sequence.

    >>> w = parse_word("abA")
    >>> len(w), str(w)
    (3, 'abA')
    >>> str(w * w.inverse())
    ''
    """

    letters: tuple
    rank: int

    def __post_init__(self):
        letters = tuple(_as_signed(v) for v in self.letters)
        object.__setattr__(self, "letters", letters)
        _check_letters(letters, self.rank)
        for a, b in zip(letters, letters[1:]):
            if a == -b:
                raise ValueError(
                    f"word is not freely reduced: {a} followed by {b}"
                )

    @classmethod
    def identity(cls, rank: int) -> "Word":
        return cls((), rank)

    def __len__(self) -> int:
        return len(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __str__(self) -> str:
        return format_word(self)

    def __mul__(self, other: "Word") -> "Word":
        return concat(self, other)

    def __pow__(self, n: int) -> "Word":
        return power(self, n)

    def inverse(self) -> "Word":
        return invert(self)

    @property
    def is_cyclically_reduced(self) -> bool:
        ls = self.letters
        return len(ls) < 2 or ls[0] != -ls[-1]


class CyclicWord:
    """A cyclically reduced word considered up to rotation.

    Equality and hashing use the canonical form: the lexicographically least
    rotation under the letter order ``x1 < x1^-1 < x2 < x2^-1 < ...``.  The
    rotation passed to the constructor is preserved (``letters``) so callers
    that care about a starting point, such as axes, keep their orientation.

    >>> u = CyclicWord((1, 1, 2), 2)
    >>> v = CyclicWord((2, 1, 1), 2)
    >>> u == v, u.letters == v.letters
    (True, False)
    """

    __slots__ = ("letters", "rank", "canonical")

    def __init__(self, letters: Sequence[Union[int, Letter]], rank: int):
        ls = tuple(_as_signed(v) for v in letters)
        _check_letters(ls, rank)
        for a, b in zip(ls, ls[1:]):
            if a == -b:
                raise ValueError("cyclic word is not freely reduced")
        if len(ls) >= 2 and ls[0] == -ls[-1]:
            raise ValueError("word is not cyclically reduced")
        object.__setattr__(self, "letters", ls)
        object.__setattr__(self, "rank", rank)
        object.__setattr__(self, "canonical", _least_rotation(ls))

    def __setattr__(self, name, value):
        raise AttributeError("CyclicWord is immutable")

    @classmethod
    def from_word(cls, w: Word) -> "CyclicWord":
        """Cyclic reduction of ``w``, forgetting the conjugator."""
        return cyclic_reduce(w)[1]

    def __len__(self) -> int:
        return len(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CyclicWord):
            return NotImplemented
        return self.rank == other.rank and self.canonical == other.canonical

    def __hash__(self) -> int:
        return hash((self.rank, self.canonical))

    def __str__(self) -> str:
        return format_word(self.as_word())

    def __repr__(self) -> str:
        return f"CyclicWord({str(self)!r}, rank={self.rank})"

    def as_word(self) -> Word:
        return Word(self.letters, self.rank)

    def canonical_rotation(self) -> "CyclicWord":
        return CyclicWord(self.canonical, self.rank)

    def rotations(self) -> Iterator[tuple]:
        n = len(self.letters)
        for s in range(n):
            yield self.letters[s:] + self.letters[:s]


def reduce(raw: Iterable[Union[int, Letter]], rank: int) -> Word:
    """Freely reduce a letter sequence into the unique reduced word.

    Idempotent: reduced input is returned unchanged.

    >>> str(reduce([1, -1], 2))
    ''
    >>> str(reduce([1, 2, -2, 1], 2))
    'aa'
    """
    letters = tuple(_as_signed(v) for v in raw)
    _check_letters(letters, rank)
    return Word(_reduce_tuple(letters), rank)


def _same_rank(u: Word, v: Word) -> int:
    if u.rank != v.rank:
        raise ValueError(f"rank mismatch: {u.rank} vs {v.rank}")
    return u.rank


def concat(u: Word, v: Word) -> Word:
    """Product ``u v`` in the group (concatenate, then reduce)."""
    rank = _same_rank(u, v)
    # only the junction can cancel; skip the stack walk over the bulk
    a, b = u.letters, v.letters
    i = len(a)
    j = 0
    while i > 0 and j < len(b) and a[i - 1] == -b[j]:
        i -= 1
        j += 1
    return Word(a[:i] + b[j:], rank)


def invert(u: Word) -> Word:
    """Inverse word: reverse the letters and flip every sign."""
    return Word(tuple(-v for v in reversed(u.letters)), u.rank)


def conjugate(u: Word, t: Word) -> Word:
    """Conjugate ``t u t^-1``."""
    _same_rank(u, t)
    return concat(concat(t, u), invert(t))


def power(u: Word, n: int) -> Word:
    """``u`` raised to an integer power (negative powers invert)."""
    if n == 0:
        return Word.identity(u.rank)
    base = u if n > 0 else invert(u)
    t, core = _cyclic_split(base.letters)
    reps = core * abs(n)
    return Word(t + reps + tuple(-v for v in reversed(t)), u.rank)


def commutator(u: Word, v: Word) -> Word:
    """``[u, v] = u v u^-1 v^-1``."""
    return concat(concat(u, v), concat(invert(u), invert(v)))


def cyclic_reduce(w: Word) -> tuple:
    """Split ``w = t c t^-1`` with ``t`` maximal and ``c`` cyclically reduced.

    Returns ``(conjugator, core)`` where ``conjugator`` is a :class:`Word`
    and ``core`` a :class:`CyclicWord`; the core is empty iff ``w`` is
    trivial.

    >>> t, c = cyclic_reduce(parse_word("abA"))
    >>> str(t), str(c)
    ('a', 'b')
    """
    t, core = _cyclic_split(w.letters)
    return Word(t, w.rank), CyclicWord(core, w.rank)


def abelianize(w: Word) -> tuple:
    """Signed letter counts: coordinate ``i-1`` counts ``x_i`` occurrences.

    A homomorphism to the integer lattice of dimension ``rank``.
    """
    counts = [0] * w.rank
    for v in w.letters:
        counts[abs(v) - 1] += 1 if v > 0 else -1
    return tuple(counts)


def in_commutator_subgroup(w: Word) -> bool:
    """True iff ``w`` abelianizes to zero."""
    return all(c == 0 for c in abelianize(w))


def in_square_times_commutator(w: Word) -> bool:
    """True iff ``w`` is a square times a commutator-subgroup element.

    Membership in ``{x^2 y : y in the commutator subgroup}`` is equivalent
    to the abelianization being even in every coordinate: such a word
    factors as ``x^2 (x^-2 w)`` for any ``x`` abelianizing to half of it.
    """
    return all(c % 2 == 0 for c in abelianize(w))


def cyclic_bigrams(w: CyclicWord) -> frozenset:
    """All ordered pairs of cyclically adjacent letters of ``w``.

    Empty for cores of length <= 1: a single letter has no length-2 cyclic
    factor.

    >>> sorted(cyclic_bigrams(CyclicWord((1, 2), 2)))
    [(1, 2), (2, 1)]
    """
    ls = w.letters
    n = len(ls)
    if n <= 1:
        return frozenset()
    return frozenset((ls[i], ls[(i + 1) % n]) for i in range(n))


def contains_cyclic_subword(w: CyclicWord, p: Word) -> bool:
    """True iff ``p`` is a contiguous factor of some rotation of ``w``.

    The pattern may wrap around the end of the core, but must fit: patterns
    longer than the core never match (the cyclic word is not unrolled more
    than once).  The empty pattern matches everything.
    """
    if w.rank != p.rank:
        raise ValueError(f"rank mismatch: {w.rank} vs {p.rank}")
    m = len(p.letters)
    n = len(w.letters)
    if m == 0:
        return True
    if m > n:
        return False
    doubled = w.letters + w.letters
    target = p.letters
    return any(doubled[i:i + m] == target for i in range(n))


# --- text syntax ----------------------------------------------------------

_COMPACT_RE = re.compile(r"[A-Za-z]*\Z")
_VERBOSE_TOKEN_RE = re.compile(r"x([0-9]+)(\^-1)?\Z")


def parse_word(text: str, rank: int = None) -> Word:
    """Parse word text (compact or verbose form) into a reduced word.

    The result is the group element the text spells, so unreduced input
    such as ``"aA"`` parses to the empty word.  The rank defaults to the
    largest generator index used (at least 1); passing ``rank`` checks the
    letters against it instead.

    >>> str(parse_word("aabbA"))
    'aabbA'
    >>> parse_word("x1 x2^-1") == parse_word("aB")
    True
    """
    text = text.strip()
    letters: list = []
    if _COMPACT_RE.match(text):
        for pos, ch in enumerate(text):
            if "a" <= ch <= "z":
                letters.append(ord(ch) - ord("a") + 1)
            elif "A" <= ch <= "Z":
                letters.append(-(ord(ch) - ord("A") + 1))
            else:
                raise ParseError(f"invalid letter {ch!r}", text, pos)
    else:
        offset = 0
        for token in text.split():
            start = text.index(token, offset)
            offset = start + len(token)
            m = _VERBOSE_TOKEN_RE.match(token)
            if not m:
                raise ParseError(f"invalid token {token!r}", text, start)
            idx = int(m.group(1))
            if idx < 1:
                raise ParseError("generator index must be >= 1", text, start)
            letters.append(-idx if m.group(2) else idx)
    max_index = max((abs(v) for v in letters), default=0)
    if rank is None:
        rank = max(1, max_index)
    elif rank < 1:
        raise ParseError(f"rank must be >= 1, got {rank}", text, 0)
    elif max_index > rank:
        bad = next(i for i, v in enumerate(letters) if abs(v) > rank)
        raise ParseError(
            f"letter index {max_index} exceeds rank {rank}", text, bad
        )
    return Word(_reduce_tuple(letters), rank)


def format_word(w: Word, verbose: bool = False) -> str:
    """Render a word in the compact form, or verbose when requested.

    Words with generator indices above 26 cannot be spelled compactly and
    fall back to the verbose form.
    """
    if verbose or any(abs(v) > 26 for v in w.letters):
        return " ".join(str(Letter.from_signed(v)) for v in w.letters)
    out = []
    for v in w.letters:
        base = ord("a") if v > 0 else ord("A")
        out.append(chr(base + abs(v) - 1))
    return "".join(out)
