"""Axes of free-group elements acting on the Cayley tree, and their overlaps.

A nontrivial element ``g`` with cyclic decomposition ``g = t c t^-1``
translates a unique bi-infinite geodesic, its *axis*.  Operationally, a
vertex ``u`` lies on the axis of ``g`` iff ``u^-1 g u`` is cyclically
reduced; the axis vertices are exactly ``t p`` for ``p`` a prefix of the
infinite words ``c c c ...`` and ``c^-1 c^-1 ...``, so vertex ``i`` of the
axis is ``t`` times the length-``|i|`` prefix in the direction of the sign
of ``i``, and ``g`` shifts the vertex indices by ``len(c)``.

Overlaps are counted in `vertices`: a common segment with ``n`` vertices
spans ``n - 1`` edges (exposed as ``edge_count``).  Two distinct lines in a
tree intersect in a finite, possibly empty, segment; an infinite overlap
happens exactly when the two axes are the same line, which is decided
exactly through primitive roots: the axes of ``g`` and ``h`` coincide iff
the primitive root of ``g`` equals that of ``h`` or its inverse.

Locating a finite overlap uses a projection fact rather than a blind scan:
the closest axis vertex to the identity is the conjugator ``t`` itself, and
if two axes meet at all, the farther of the two conjugators lies on both
axes.  So emptiness is decided by two membership tests, and a nonempty
overlap is swept outward from the common vertex.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Union

from . import whgraph
from .words import (
    CyclicWord,
    Word,
    _vkey,
    concat,
    conjugate,
    cyclic_reduce,
    invert,
    power,
)

__all__ = [
    "INFINITE",
    "Axis",
    "AxisOverlap",
    "OverlapWindowExhausted",
    "SubgraphWitnessNotFound",
    "axis",
    "on_axis",
    "axis_vertex",
    "primitive_root",
    "same_line",
    "overlap",
    "default_overlap_cap",
    "find_k",
]

INFINITE = math.inf


class OverlapWindowExhausted(RuntimeError):
    """The scan window was too small to finish the overlap sweep."""


class SubgraphWitnessNotFound(LookupError):
    """No power of the candidate produced the required subgraph relation."""


@dataclass(frozen=True)
class Axis:
    """The axis of a nontrivial element ``t . core . t^-1``.

    The core keeps its starting rotation, which orients the axis: positive
    vertex indices run in the translation direction of the element.
    """

    conjugator: Word
    core: CyclicWord

    def __post_init__(self):
        if not self.core.letters:
            raise ValueError("trivial elements have no axis")
        if self.conjugator.rank != self.core.rank:
            raise ValueError("conjugator and core rank differ")

    @property
    def rank(self) -> int:
        return self.core.rank

    @property
    def translation_length(self) -> int:
        return len(self.core.letters)

    def element(self) -> Word:
        return conjugate(self.core.as_word(), self.conjugator)


def axis(g: Word) -> Axis:
    """Axis of a nontrivial element; raises ``ValueError`` on the identity."""
    if not g.letters:
        raise ValueError("trivial elements have no axis")
    t, core = cyclic_reduce(g)
    return Axis(t, core)


def on_axis(u: Word, g: Word) -> bool:
    """True iff the vertex ``u`` lies on the axis of ``g``.

    Equivalent to ``u^-1 g u`` being cyclically reduced.

    >>> on_axis(Word((), 2), Word((1, 2), 2))        # 1 on axis of x1x2
    True
    >>> on_axis(Word((), 2), Word((1, 2, -1), 2))    # but not of x1x2x1^-1
    False
    """
    if not g.letters:
        raise ValueError("trivial elements have no axis")
    if u.rank != g.rank:
        raise ValueError(f"rank mismatch: {u.rank} vs {g.rank}")
    moved = conjugate(g, invert(u))
    return moved.is_cyclically_reduced


def axis_vertex(a: Axis, i: int) -> Word:
    """Vertex ``i`` of the axis: the conjugator times a length-``|i|``
    periodic prefix of the core (of its inverse for negative ``i``).

    Vertex 0 is the conjugator, consecutive vertices are adjacent, and the
    element translates vertex ``i`` to vertex ``i + translation_length``.
    """
    core = a.core.letters
    n = len(core)
    if i >= 0:
        seq = tuple(core[j % n] for j in range(i))
    else:
        rev = tuple(-v for v in reversed(core))
        seq = tuple(rev[j % n] for j in range(-i))
    # the concatenation is reduced by maximality of the cyclic splitting
    return Word(a.conjugator.letters + seq, a.rank)


def primitive_root(g: Word) -> Word:
    """The unique primitive ``p`` with ``g = p**m`` for some ``m >= 1``."""
    if not g.letters:
        raise ValueError("the identity has no primitive root")
    t, core = cyclic_reduce(g)
    ls = core.letters
    n = len(ls)
    for d in range(1, n + 1):
        if n % d == 0 and ls[:d] * (n // d) == ls:
            return conjugate(Word(ls[:d], g.rank), t)
    raise AssertionError("unreachable: every word is its own period")


def same_line(a: Axis, b: Axis) -> bool:
    """True iff the two axes have identical vertex sets.

    Two elements share their axis exactly when they are powers of a common
    element, so the test compares primitive roots up to inversion.
    """
    if a.rank != b.rank:
        raise ValueError(f"rank mismatch: {a.rank} vs {b.rank}")
    ra = primitive_root(a.element())
    rb = primitive_root(b.element())
    return ra == rb or ra == invert(rb)


def default_overlap_cap(g: Word, h: Word) -> int:
    """Scan window comfortably covering both conjugators and one period."""
    return 4 * (len(g.letters) + len(h.letters)) + 8


def _shortlex_key(w: Word):
    return (len(w.letters), tuple(_vkey(v) for v in w.letters))


@dataclass(frozen=True)
class AxisOverlap:
    """Intersection of two axes: a vertex count, plus the two extreme
    common vertices when the overlap is finite and nonempty."""

    vertex_count: Union[int, float]
    endpoint_low: Optional[Word] = None
    endpoint_high: Optional[Word] = None

    @property
    def infinite(self) -> bool:
        return self.vertex_count == INFINITE

    @property
    def edge_count(self) -> Union[int, float]:
        """Length of the overlap segment in edges (vertices minus one)."""
        if self.infinite:
            return INFINITE
        return max(0, self.vertex_count - 1)


def overlap(g: Word, h: Word, cap: int = None) -> AxisOverlap:
    """Exact intersection of the axes of ``g`` and ``h``.

    Returns the number of common vertices, ``INFINITE`` when the axes are
    the same line, and the two endpoint vertices (in shortlex order) for a
    finite nonempty overlap.  ``cap`` bounds the sweep as a safety net;
    distinct axes always stop well inside the default window.

    >>> o = overlap(Word((1, 1, 2, 2, 1), 2), Word((1, 1, 2, 2), 2))
    >>> o.vertex_count
    7
    """
    if not g.letters or not h.letters:
        raise ValueError("trivial elements have no axis")
    if g.rank != h.rank:
        raise ValueError(f"rank mismatch: {g.rank} vs {h.rank}")
    if cap is None:
        cap = default_overlap_cap(g, h)
    ax_g = axis(g)
    ax_h = axis(h)
    if same_line(ax_g, ax_h):
        return AxisOverlap(INFINITE)
    # if the axes meet, the farther conjugator is a common vertex
    if on_axis(ax_h.conjugator, g):
        walk_axis, other = ax_h, g
    elif on_axis(ax_g.conjugator, h):
        walk_axis, other = ax_g, h
    else:
        return AxisOverlap(0)
    hi = 0
    while on_axis(axis_vertex(walk_axis, hi + 1), other):
        hi += 1
        if hi > cap:
            raise OverlapWindowExhausted(
                f"overlap sweep exceeded the window of {cap} vertices"
            )
    lo = 0
    while on_axis(axis_vertex(walk_axis, lo - 1), other):
        lo -= 1
        if -lo > cap:
            raise OverlapWindowExhausted(
                f"overlap sweep exceeded the window of {cap} vertices"
            )
    first = axis_vertex(walk_axis, lo)
    last = axis_vertex(walk_axis, hi)
    low, high = sorted((first, last), key=_shortlex_key)
    return AxisOverlap(hi - lo + 1, low, high)


def find_k(w: Word, a: Word, k_bound: int = None) -> int:
    """Smallest-magnitude exponent whose power has the required graph.

    Searches ``k = 1, -1, 2, -2, ...`` up to ``k_bound`` (default
    ``len(w) + 2``) for the first ``k`` with the Whitehead graph of ``w`` a
    subgraph of that of ``a**k``.  Raises
    :class:`SubgraphWitnessNotFound` when no exponent in range works.
    """
    if not w.is_cyclically_reduced:
        raise ValueError("the reference word must be cyclically reduced")
    if not a.letters:
        raise ValueError("need a nontrivial candidate element")
    if w.rank != a.rank:
        raise ValueError(f"rank mismatch: {w.rank} vs {a.rank}")
    if k_bound is None:
        k_bound = len(w.letters) + 2
    gw = whgraph.build(w)
    for mag in range(1, k_bound + 1):
        for k in (mag, -mag):
            if whgraph.is_subgraph(gw, whgraph.build(power(a, k))):
                return k
    raise SubgraphWitnessNotFound(
        f"no exponent of magnitude <= {k_bound} yields a supergraph"
    )
