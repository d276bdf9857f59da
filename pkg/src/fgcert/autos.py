"""Whitehead automorphisms, endomorphisms, and the simplicity oracle.

Two families of Whitehead moves are used, in the standard convention:

* *relabelings* permute the generators and optionally invert some of them;
* *multiplier moves* are determined by a letter ``a`` and a set ``A`` of
  letters with ``a in A`` and ``a^-1 not in A``.  The generator carrying
  ``a`` is fixed; any other generator ``x`` maps to ``x a``, ``a^-1 x``,
  ``a^-1 x a`` or ``x`` according to whether ``x``, ``x^-1``, both or
  neither lie in ``A``.

Relabelings never change cyclic length, so minimization uses multiplier
moves only.  The cyclic length change of a multiplier move is computed
without building the image, from the junction structure of the word: if the
multigraph on the letters with one edge ``{c, d^-1}`` per cyclically
adjacent pair ``(c, d)`` has ``E(A, A^c)`` edges crossing the partition
``(A, complement)`` and the vertex ``a`` has degree ``deg(a)``, then the
move changes the cyclic length by ``E(A, A^c) - deg(a)``.  This classical
formula is cross-checked against direct application in the test suite.

An element is *simple* if it lies in a proper free factor.  The oracle
decides this by Whitehead's peak-reduction method: greedily shorten the
cyclic word until no multiplier move reduces it (the result is then of
minimal length in its automorphism orbit), and search the set of
minimal-length words reachable by length-preserving moves for one omitting
a generator in both signs.  States are canonicalized up to rotation and
relabeling, which is sound because conjugating a multiplier move by a
relabeling is again a multiplier move, and memoized globally, keyed on the
canonical form together with the rank.  The search never guesses: if the
budget on visited forms is exhausted an :class:`OrbitBudgetExceeded` error
is raised instead of an answer.
"""

from __future__ import annotations

import functools
import re
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence, Union

import numpy as np

from .words import (
    CyclicWord,
    Word,
    _cyclic_split,
    _least_rotation,
    _reduce_tuple,
    _vkey,
    abelianize,
    parse_word,
    format_word,
)

__all__ = [
    "Relabeling",
    "Multiplier",
    "WhiteheadAutomorphism",
    "GeneratorMap",
    "OrbitBudgetExceeded",
    "DEFAULT_ORBIT_BUDGET",
    "enumerate_whitehead_autos",
    "multiplier_moves",
    "identity_map",
    "apply_endo",
    "compose_maps",
    "abelian_matrix",
    "is_possibly_automorphism",
    "parse_generator_map",
    "format_generator_map",
    "cyclic_length_change",
    "whitehead_minimize",
    "is_whitehead_minimal",
    "is_simple",
    "is_test_element_for_monos",
    "clear_simplicity_cache",
]

DEFAULT_ORBIT_BUDGET = 10**6


class OrbitBudgetExceeded(RuntimeError):
    """The orbit search hit its budget: the question is undecided, not No."""


# --- the two kinds of Whitehead move ---------------------------------------


@dataclass(frozen=True)
class Relabeling:
    """Basis relabeling: ``x_i`` maps to ``x_{perm[i-1]}``, inverted if
    ``flips[i-1]``."""

    rank: int
    perm: tuple
    flips: tuple

    def __post_init__(self):
        if sorted(self.perm) != list(range(1, self.rank + 1)):
            raise ValueError(f"perm {self.perm} is not a bijection")
        if len(self.flips) != self.rank:
            raise ValueError("flips length must equal rank")

    def letter_image(self, v: int) -> tuple:
        g = abs(v)
        img = self.perm[g - 1]
        if self.flips[g - 1]:
            img = -img
        return (img,) if v > 0 else (-img,)

    def apply_to_letters(self, seq: Sequence[int]) -> tuple:
        return tuple(self.letter_image(v)[0] for v in seq)

    def as_generator_map(self) -> "GeneratorMap":
        images = tuple(
            Word(self.letter_image(i), self.rank)
            for i in range(1, self.rank + 1)
        )
        return GeneratorMap(self.rank, images)

    def __str__(self) -> str:
        parts = []
        for i in range(1, self.rank + 1):
            img = self.perm[i - 1]
            parts.append(f"x{i}->x{img}" + ("^-1" if self.flips[i - 1] else ""))
        return "relabel(" + ", ".join(parts) + ")"


@dataclass(frozen=True)
class Multiplier:
    """Multiplier move ``(a, A)`` with ``a in A`` and ``a^-1 not in A``."""

    rank: int
    multiplier: int
    members: frozenset

    def __post_init__(self):
        a = self.multiplier
        if a == 0 or abs(a) > self.rank:
            raise ValueError(f"multiplier letter {a} out of rank {self.rank}")
        if a not in self.members or -a in self.members:
            raise ValueError("need a in A and a^-1 not in A")
        for v in self.members:
            if v == 0 or abs(v) > self.rank:
                raise ValueError(f"member letter {v} out of rank {self.rank}")

    @property
    def acts_trivially(self) -> bool:
        return self.members == frozenset((self.multiplier,))

    def letter_image(self, v: int) -> tuple:
        return _subst_table(self.rank, self.multiplier, self.members)[v]

    def apply_to_letters(self, seq: Sequence[int]) -> tuple:
        tab = _subst_table(self.rank, self.multiplier, self.members)
        out: list = []
        for v in seq:
            for w in tab[v]:
                if out and out[-1] == -w:
                    out.pop()
                else:
                    out.append(w)
        return tuple(out)

    def apply_cyclic(self, seq: Sequence[int]) -> tuple:
        """Cyclically reduced core of the image of a cyclic word."""
        return _cyclic_split(self.apply_to_letters(seq))[1]

    def as_generator_map(self) -> "GeneratorMap":
        images = tuple(
            Word(self.letter_image(i), self.rank)
            for i in range(1, self.rank + 1)
        )
        return GeneratorMap(self.rank, images)

    def __str__(self) -> str:
        a = Word((self.multiplier,), self.rank)
        mem = ", ".join(
            format_word(Word((v,), self.rank))
            for v in sorted(self.members, key=_vkey)
        )
        return f"mult(a={format_word(a)}; A={{{mem}}})"


WhiteheadAutomorphism = Union[Relabeling, Multiplier]


@functools.lru_cache(maxsize=None)
def _subst_table(rank: int, a: int, members: frozenset) -> dict:
    tab = {}
    for g in range(1, rank + 1):
        if g == abs(a):
            img = (g,)
        else:
            in_a = g in members
            inv_in_a = -g in members
            if in_a and inv_in_a:
                img = (-a, g, a)
            elif in_a:
                img = (g, a)
            elif inv_in_a:
                img = (-a, g)
            else:
                img = (g,)
        tab[g] = img
        tab[-g] = tuple(-v for v in reversed(img))
    return tab


def _letters_in_order(rank: int) -> list:
    out = []
    for i in range(1, rank + 1):
        out.append(i)
        out.append(-i)
    return out


@functools.lru_cache(maxsize=None)
def multiplier_moves(rank: int) -> tuple:
    """All multiplier moves at the given rank, in a fixed order.

    For each letter ``a`` (in the order x1, x1^-1, x2, ...) the subsets of
    the remaining ``2 rank - 2`` letters are enumerated in binary counting
    order, so the identity-acting move ``A = {a}`` comes first.  There are
    ``2 rank * 2**(2 rank - 2)`` moves in total.
    """
    moves = []
    for a in _letters_in_order(rank):
        others = [v for v in _letters_in_order(rank) if abs(v) != abs(a)]
        for mask in range(1 << len(others)):
            members = frozenset(
                [a] + [v for i, v in enumerate(others) if mask >> i & 1]
            )
            moves.append(Multiplier(rank, a, members))
    return tuple(moves)


def _all_relabelings(rank: int) -> list:
    import itertools

    out = []
    for perm in itertools.permutations(range(1, rank + 1)):
        for mask in range(1 << rank):
            flips = tuple(bool(mask >> i & 1) for i in range(rank))
            out.append(Relabeling(rank, perm, flips))
    return out


def _generating_relabelings(rank: int) -> list:
    ident = tuple(range(1, rank + 1))
    no_flip = (False,) * rank
    out = [Relabeling(rank, ident, (True,) + (False,) * (rank - 1))]
    if rank >= 2:
        swap = (2, 1) + tuple(range(3, rank + 1))
        out.append(Relabeling(rank, swap, no_flip))
        cycle = tuple(range(2, rank + 1)) + (1,)
        out.append(Relabeling(rank, cycle, no_flip))
    return out


def enumerate_whitehead_autos(rank: int, relabelings: str = "all") -> tuple:
    """All Whitehead moves: relabelings first, then multiplier moves.

    ``relabelings="all"`` emits the full ``rank! * 2**rank`` relabeling
    family; ``"generators"`` emits just a generating set of it.  The order
    is deterministic either way.
    """
    if rank < 1:
        raise ValueError(f"rank must be >= 1, got {rank}")
    if relabelings == "all":
        rel = _all_relabelings(rank)
    elif relabelings == "generators":
        rel = _generating_relabelings(rank)
    else:
        raise ValueError("relabelings must be 'all' or 'generators'")
    return tuple(rel) + multiplier_moves(rank)


# --- endomorphisms given by generator images --------------------------------


@dataclass(frozen=True)
class GeneratorMap:
    """An endomorphism described by the images of the generators."""

    rank: int
    images: tuple

    def __post_init__(self):
        images = tuple(self.images)
        object.__setattr__(self, "images", images)
        if len(images) != self.rank:
            raise ValueError(
                f"need {self.rank} images, got {len(images)}"
            )
        for w in images:
            if not isinstance(w, Word) or w.rank != self.rank:
                raise ValueError("images must be Words of the same rank")

    def letter_image(self, v: int) -> tuple:
        img = self.images[abs(v) - 1].letters
        return img if v > 0 else tuple(-x for x in reversed(img))

    def __str__(self) -> str:
        return format_generator_map(self)


def identity_map(rank: int) -> GeneratorMap:
    return GeneratorMap(
        rank, tuple(Word((i,), rank) for i in range(1, rank + 1))
    )


def apply_endo(m: GeneratorMap, w: Word) -> Word:
    """Image of ``w``: substitute each letter by its image, then reduce."""
    if m.rank != w.rank:
        raise ValueError(f"rank mismatch: {m.rank} vs {w.rank}")
    out: list = []
    for v in w.letters:
        for x in m.letter_image(v):
            if out and out[-1] == -x:
                out.pop()
            else:
                out.append(x)
    return Word(tuple(out), w.rank)


def compose_maps(outer: GeneratorMap, inner: GeneratorMap) -> GeneratorMap:
    """The endomorphism ``x -> outer(inner(x))``."""
    if outer.rank != inner.rank:
        raise ValueError(f"rank mismatch: {outer.rank} vs {inner.rank}")
    return GeneratorMap(
        outer.rank, tuple(apply_endo(outer, w) for w in inner.images)
    )


def abelian_matrix(m: GeneratorMap) -> tuple:
    """Integer matrix whose column ``i`` abelianizes the image of ``x_{i+1}``.

    Returned as a tuple of rows.
    """
    cols = [abelianize(w) for w in m.images]
    return tuple(
        tuple(cols[j][i] for j in range(m.rank)) for i in range(m.rank)
    )


def _int_det(rows: Sequence[Sequence[int]]) -> int:
    n = len(rows)
    m = [[Fraction(x) for x in row] for row in rows]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return 0
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        inv = Fraction(1) / m[col][col]
        for r in range(col + 1, n):
            f = m[r][col] * inv
            if f:
                for c in range(col, n):
                    m[r][c] -= f * m[col][c]
    assert det.denominator == 1
    return int(det)


def is_possibly_automorphism(m: GeneratorMap) -> bool:
    """Necessary condition for ``m`` to be an automorphism: the
    abelianized matrix has determinant +1 or -1."""
    return abs(_int_det(abelian_matrix(m))) == 1


_MAP_LINE_RE = re.compile(r"x([0-9]+)\s*->\s*(.*)\Z")


def parse_generator_map(text: str, rank: int = None) -> GeneratorMap:
    """Parse the one-line-per-generator format ``x<i> -> <word>``.

    Every generator from ``x1`` up to the rank must appear exactly once;
    the rank defaults to the largest generator index on the left.
    """
    entries = {}
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        m = _MAP_LINE_RE.match(line)
        if not m:
            raise ValueError(f"malformed generator-map line: {line!r}")
        idx = int(m.group(1))
        if idx in entries:
            raise ValueError(f"generator x{idx} mapped twice")
        entries[idx] = m.group(2).strip()
    if not entries:
        raise ValueError("empty generator map")
    if rank is None:
        rank = max(entries)
    missing = [i for i in range(1, rank + 1) if i not in entries]
    if missing or max(entries) > rank:
        raise ValueError(
            f"generator map must cover x1..x{rank} exactly"
        )
    images = tuple(parse_word(entries[i], rank) for i in range(1, rank + 1))
    return GeneratorMap(rank, images)


def format_generator_map(m: GeneratorMap) -> str:
    return "\n".join(
        f"x{i + 1} -> {format_word(w)}" for i, w in enumerate(m.images)
    )


# --- cyclic length bookkeeping ----------------------------------------------


def _junction_edge_counts(letters: Sequence[int]) -> dict:
    """Multigraph edge counts from cyclically adjacent letter pairs.

    Unlike the simple Whitehead graph, a length-1 word has the junction
    with itself, giving the edge ``{c, c^-1}``; this is what the length
    formula needs.
    """
    n = len(letters)
    counts: dict = {}
    for i in range(n):
        u = letters[i]
        v = -letters[(i + 1) % n]
        e = (u, v) if _vkey(u) < _vkey(v) else (v, u)
        counts[e] = counts.get(e, 0) + 1
    return counts


class _MoveTables(NamedTuple):
    moves: tuple
    memb: np.ndarray    # bool [n_moves, 2 rank]: letter membership in A
    is_a: np.ndarray    # int8 [n_moves, 2 rank]: one-hot multiplier letter
    acting: np.ndarray  # bool [n_moves]: A != {a}


@functools.lru_cache(maxsize=None)
def _move_tables(rank: int) -> _MoveTables:
    moves = multiplier_moves(rank)
    n = len(moves)
    memb = np.zeros((n, 2 * rank), dtype=bool)
    is_a = np.zeros((n, 2 * rank), dtype=np.int8)
    acting = np.zeros(n, dtype=bool)
    for i, mv in enumerate(moves):
        for v in mv.members:
            memb[i, _vkey(v) - 1] = True
        is_a[i, _vkey(mv.multiplier) - 1] = 1
        acting[i] = not mv.acts_trivially
    return _MoveTables(moves, memb, is_a, acting)


def _move_deltas(letters: Sequence[int], rank: int) -> np.ndarray:
    """Cyclic length change of every multiplier move applied to ``letters``."""
    tables = _move_tables(rank)
    n = len(tables.moves)
    cross = np.zeros(n, dtype=np.int64)
    deg_a = np.zeros(n, dtype=np.int64)
    for (u, v), c in _junction_edge_counts(letters).items():
        iu = _vkey(u) - 1
        iv = _vkey(v) - 1
        cross += (tables.memb[:, iu] != tables.memb[:, iv]) * c
        deg_a += (tables.is_a[:, iu] + tables.is_a[:, iv]) * c
    return cross - deg_a


def cyclic_length_change(move: Multiplier, w: CyclicWord) -> int:
    """Length change of the cyclic reduction of the image of ``w``.

    Computed from the junction structure alone, without applying the move.
    """
    if move.rank != w.rank:
        raise ValueError(f"rank mismatch: {move.rank} vs {w.rank}")
    tables = _move_tables(w.rank)
    idx = tables.moves.index(move)
    return int(_move_deltas(w.letters, w.rank)[idx])


# --- minimization ------------------------------------------------------------


def whitehead_minimize(w: CyclicWord):
    """Greedy descent to a cyclic word of minimal length in the orbit.

    Repeatedly applies the most-reducing multiplier move (first in
    enumeration order among ties) until none reduces; by peak reduction the
    result has the minimal cyclic length over the automorphism orbit.
    Returns ``(minimal, trail)`` where replaying ``trail`` on the input
    reproduces ``minimal`` up to rotation.
    """
    rank = w.rank
    moves = _move_tables(rank).moves
    cur = w.letters
    trail: list = []
    while cur:
        deltas = _move_deltas(cur, rank)
        idx = int(np.argmin(deltas))
        if int(deltas[idx]) >= 0:
            break
        mv = moves[idx]
        cur = _least_rotation(mv.apply_cyclic(cur))
        trail.append(mv)
    minimal = w if not trail else CyclicWord(cur, rank)
    return minimal, tuple(trail)


def is_whitehead_minimal(w: CyclicWord) -> bool:
    """True iff no multiplier move strictly reduces the cyclic length.

    By peak reduction this certifies that the standard basis minimizes the
    length of ``w`` over all automorphic images.
    """
    if not w.letters:
        return True
    return int(_move_deltas(w.letters, w.rank).min()) >= 0


# --- the simplicity oracle ----------------------------------------------------


def _canonical_class(letters: Sequence[int]) -> tuple:
    """Canonical form of a cyclic word up to rotation and relabeling.

    Over all rotations, generators are renumbered in order of first
    appearance (first occurrence positive), and the lexicographically least
    result under the letter order is returned.  Two cyclic words have the
    same canonical class iff a relabeling carries one to a rotation of the
    other.
    """
    n = len(letters)
    if n == 0:
        return ()
    best_raw = None
    best_key = None
    for s in range(n):
        mapping: dict = {}
        nxt = 1
        raw = []
        key = []
        for t in range(n):
            v = letters[(s + t) % n]
            g = abs(v)
            got = mapping.get(g)
            if got is None:
                got = (nxt, 1 if v > 0 else -1)
                mapping[g] = got
                nxt += 1
            ni, sg = got
            img = ni if (v > 0) == (sg > 0) else -ni
            raw.append(img)
            key.append(_vkey(img))
        key_t = tuple(key)
        if best_key is None or key_t < best_key:
            best_key = key_t
            best_raw = tuple(raw)
    return best_raw


_simplicity_cache: dict = {}


def clear_simplicity_cache() -> None:
    _simplicity_cache.clear()


def _scan_minimal_level(start: tuple, rank: int, budget: int):
    """Breadth-first search of the minimal level of the orbit.

    ``start`` must be the canonical class of a Whitehead-minimal cyclic
    word.  Returns ``(simple, visited)`` where ``simple`` is True iff some
    reachable minimal word omits a generator entirely.
    """
    if not start:
        return True, {start}
    if max(abs(v) for v in start) < rank:
        return True, {start}
    tables = _move_tables(rank)
    seen = {start}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        deltas = _move_deltas(cur, rank)
        if int(deltas.min()) < 0:
            raise RuntimeError(
                "internal error: reducing move found at minimal level"
            )
        for idx in np.flatnonzero((deltas == 0) & tables.acting):
            img = tables.moves[idx].apply_cyclic(cur)
            canon = _canonical_class(img)
            if canon in seen:
                continue
            if len(seen) >= budget:
                raise OrbitBudgetExceeded(
                    f"orbit search undecided within budget of {budget} forms"
                )
            if max(abs(v) for v in canon) < rank:
                seen.add(canon)
                return True, seen
            seen.add(canon)
            queue.append(canon)
    return False, seen


def is_simple(w: Word, budget: int = None) -> bool:
    """True iff ``w`` lies in a proper free factor.

    The empty word is simple by convention.  Raises
    :class:`OrbitBudgetExceeded` rather than ever returning a guess.
    """
    if budget is None:
        budget = DEFAULT_ORBIT_BUDGET
    rank = w.rank
    if not w.letters:
        return True
    core = _cyclic_split(w.letters)[1]
    canon = _canonical_class(core)
    cached = _simplicity_cache.get((rank, canon))
    if cached is not None:
        return cached
    # greedy descent; every intermediate stays in the orbit, so all of them
    # share the final verdict
    moves = _move_tables(rank).moves
    pending = [canon]
    cur = canon
    while True:
        if max(abs(v) for v in cur) < rank:
            for c in pending:
                _simplicity_cache[(rank, c)] = True
            return True
        deltas = _move_deltas(cur, rank)
        idx = int(np.argmin(deltas))
        if int(deltas[idx]) >= 0:
            break
        cur = _canonical_class(moves[idx].apply_cyclic(cur))
        pending.append(cur)
    verdict, visited = _scan_minimal_level(cur, rank, budget)
    for c in visited:
        _simplicity_cache[(rank, c)] = verdict
    for c in pending:
        _simplicity_cache[(rank, c)] = verdict
    return verdict


def is_test_element_for_monos(w: Word, budget: int = None) -> bool:
    """True iff every injective endomorphism fixing ``w`` is an automorphism.

    These are exactly the elements lying in no proper free factor, so this
    is the negation of :func:`is_simple`.
    """
    return not is_simple(w, budget)
