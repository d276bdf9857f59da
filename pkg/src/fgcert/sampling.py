"""Deterministic sampling and enumeration of cyclically reduced words.

Random words are built letter by letter, so the construction needs no
rejection loop: the first letter is uniform over all ``2 rank`` letters,
each subsequent letter is uniform over the ``2 rank - 1`` letters that do
not cancel its predecessor, and the final letter is additionally forbidden
from cancelling the first letter.  Every run is fully determined by the
:class:`random.Random` instance passed in.
"""

from __future__ import annotations

import random
from typing import Iterator

from .words import CyclicWord, Word

__all__ = [
    "random_cyclically_reduced_word",
    "random_word",
    "iter_cyclically_reduced_words",
    "count_cyclically_reduced_words",
]


def _letters(rank: int) -> list:
    out = []
    for i in range(1, rank + 1):
        out.append(i)
        out.append(-i)
    return out


def random_cyclically_reduced_word(
    rng: random.Random, rank: int, length: int
) -> Word:
    """A uniformly random cyclically reduced word of the exact length."""
    if rank < 1 or length < 0:
        raise ValueError("need rank >= 1 and length >= 0")
    if length == 0:
        return Word.identity(rank)
    alphabet = _letters(rank)
    first = rng.choice(alphabet)
    out = [first]
    for pos in range(1, length):
        choices = [v for v in alphabet if v != -out[-1]]
        if pos == length - 1 and length >= 2:
            choices = [v for v in choices if v != -first]
        if not choices:
            # rank 1 length 2: x x or x^-1 x^-1 are the only options and
            # the generic filter already permits them; nothing reaches here
            raise AssertionError("no admissible closing letter")
        out.append(rng.choice(choices))
    return Word(tuple(out), rank)


def random_word(rng: random.Random, rank: int, length: int) -> Word:
    """A uniformly random freely reduced (not necessarily cyclically
    reduced) word of the exact length."""
    if rank < 1 or length < 0:
        raise ValueError("need rank >= 1 and length >= 0")
    if length == 0:
        return Word.identity(rank)
    alphabet = _letters(rank)
    out = [rng.choice(alphabet)]
    for _ in range(length - 1):
        out.append(rng.choice([v for v in alphabet if v != -out[-1]]))
    return Word(tuple(out), rank)


def iter_cyclically_reduced_words(rank: int, length: int) -> Iterator[Word]:
    """All cyclically reduced words of the exact length, in a fixed order.

    Letters are ordered x1 < x1^-1 < x2 < x2^-1 < ... and words are emitted
    depth-first, so the stream is deterministic.
    """
    if rank < 1 or length < 0:
        raise ValueError("need rank >= 1 and length >= 0")
    if length == 0:
        yield Word.identity(rank)
        return
    alphabet = _letters(rank)
    prefix: list = []

    def emit(pos: int) -> Iterator[Word]:
        if pos == length:
            yield Word(tuple(prefix), rank)
            return
        for v in alphabet:
            if prefix and v == -prefix[-1]:
                continue
            if pos == length - 1 and length >= 2 and v == -prefix[0]:
                continue
            prefix.append(v)
            yield from emit(pos + 1)
            prefix.pop()

    yield from emit(0)


def count_cyclically_reduced_words(rank: int, length: int) -> int:
    """Number of cyclically reduced words of the exact length.

    These are the closed non-backtracking letter sequences, counted by the
    trace of the n-th power of the non-cancellation matrix ``J - P`` (all
    ones minus the inversion pairing), whose eigenvalues are ``2r - 1``
    once, ``+1`` with multiplicity ``r`` and ``-1`` with multiplicity
    ``r - 1``.
    """
    if length == 0:
        return 1
    n, r = length, rank
    return (2 * r - 1) ** n + r + (r - 1) * (-1) ** n
