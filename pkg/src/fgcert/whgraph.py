"""Whitehead graphs of cyclic words and their cut-vertex structure.

The Whitehead graph of a word ``w`` (with respect to the standard basis of
rank ``r``) has the ``2r`` letters as vertices and an edge ``{x, y}`` for
every distinct pair of letters such that ``x y^-1`` occurs cyclically in the
cyclic reduction of ``w``.  Equivalently, each cyclically adjacent letter
pair ``(c, d)`` of the core contributes the edge ``{c, d^-1}``.  Edge
multiplicities are discarded: every question asked of these graphs (cut
vertices, subgraph containment, connectivity) depends only on the underlying
simple graph.

A vertex is a *cut vertex* if deleting it (and its incident edges) leaves a
disconnected graph on the remaining ``2r - 1`` vertices, where isolated
vertices count as components.  This is the literal reading of the
definition; in particular, every vertex of an edgeless graph on at least
three vertices is a cut vertex.  Callers that prefer the other convention
for degenerate graphs can combine :func:`has_cut_vertex` with
:func:`is_connected`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .words import CyclicWord, Word, _vkey, cyclic_reduce

__all__ = [
    "WhiteheadGraph",
    "build",
    "cut_vertices",
    "has_cut_vertex",
    "is_subgraph",
    "is_connected",
    "to_dot",
    "to_json_dict",
    "vertex_name",
]


def vertex_name(v: int) -> str:
    """Vertex label: ``x3`` for a generator, ``x3'`` for its inverse."""
    return f"x{abs(v)}{'' if v > 0 else chr(39)}"


def _norm_edge(u: int, v: int) -> tuple:
    return (u, v) if _vkey(u) < _vkey(v) else (v, u)


def all_vertices(rank: int) -> tuple:
    """The ``2r`` letters in display order x1, x1', x2, x2', ..."""
    out = []
    for i in range(1, rank + 1):
        out.append(i)
        out.append(-i)
    return tuple(out)


@dataclass(frozen=True)
class WhiteheadGraph:
    """Simple undirected graph on the ``2 * rank`` letters.

    The vertex set is always the full letter set, even for letters that
    happen to be isolated.  Edges are stored as normalized pairs.
    """

    rank: int
    edges: frozenset

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError(f"rank must be >= 1, got {self.rank}")
        norm = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at {vertex_name(u)}")
            if not (0 < abs(u) <= self.rank and 0 < abs(v) <= self.rank):
                raise ValueError(f"edge ({u}, {v}) out of rank {self.rank}")
            norm.add(_norm_edge(u, v))
        object.__setattr__(self, "edges", frozenset(norm))

    @property
    def vertices(self) -> tuple:
        return all_vertices(self.rank)

    def sorted_edges(self) -> list:
        return sorted(self.edges, key=lambda e: (_vkey(e[0]), _vkey(e[1])))

    def has_edge(self, u: int, v: int) -> bool:
        return _norm_edge(u, v) in self.edges

    def adjacency(self) -> dict:
        adj = {v: [] for v in self.vertices}
        for u, v in self.sorted_edges():
            adj[u].append(v)
            adj[v].append(u)
        return adj


def build(w: Union[Word, CyclicWord]) -> WhiteheadGraph:
    """Whitehead graph of ``w``; cyclic reduction is applied internally.

    >>> g = build(Word((1, 1, 2, 2), 2))   # x1^2 x2^2
    >>> [(vertex_name(u), vertex_name(v)) for u, v in g.sorted_edges()]
    [('x1', "x1'"), ('x1', "x2'"), ('x2', "x1'"), ('x2', "x2'")]
    """
    if isinstance(w, CyclicWord):
        core = w
    else:
        core = cyclic_reduce(w)[1]
    ls = core.letters
    n = len(ls)
    edges = set()
    if n >= 2:
        for i in range(n):
            edges.add(_norm_edge(ls[i], -ls[(i + 1) % n]))
    return WhiteheadGraph(core.rank, frozenset(edges))


def _components(adj: dict, vertices) -> int:
    seen = set()
    count = 0
    for start in vertices:
        if start in seen:
            continue
        count += 1
        stack = [start]
        seen.add(start)
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
    return count


def is_connected(g: WhiteheadGraph) -> bool:
    """Connectivity over the full vertex set of ``2 * rank`` letters."""
    return _components(g.adjacency(), g.vertices) == 1


def cut_vertices(g: WhiteheadGraph) -> frozenset:
    """All vertices whose deletion leaves a disconnected graph.

    Implemented with one depth-first pass (discovery/low values, as in the
    classical articulation-point algorithm), adjusted for graphs that are
    already disconnected: deleting ``v`` splits its own component into some
    number of pieces, so the remainder has
    ``components(g) - 1 + pieces(v)`` components, and ``v`` is reported
    whenever that is at least 2.  For a DFS root the pieces are its tree
    children; for any other vertex they are the child subtrees that cannot
    reach above it, plus the piece containing its parent.
    """
    adj = g.adjacency()
    vertices = g.vertices
    disc: dict = {}
    low: dict = {}
    splits = {v: 0 for v in vertices}  # child subtrees stuck below v
    roots = set()
    total_components = 0
    timer = 0
    for root in vertices:
        if root in disc:
            continue
        total_components += 1
        roots.add(root)
        disc[root] = low[root] = timer
        timer += 1
        # stack entries: (vertex, parent, neighbor cursor)
        stack = [(root, None, iter(adj[root]))]
        while stack:
            u, parent, it = stack[-1]
            advanced = False
            for v in it:
                if v not in disc:
                    disc[v] = low[v] = timer
                    timer += 1
                    stack.append((v, u, iter(adj[v])))
                    advanced = True
                    break
                elif v != parent and disc[v] < low[u]:
                    low[u] = disc[v]
            if not advanced:
                stack.pop()
                if stack:
                    p = stack[-1][0]
                    if low[u] < low[p]:
                        low[p] = low[u]
                    if low[u] >= disc[p]:
                        splits[p] += 1
    result = set()
    for v in vertices:
        pieces = splits[v] if v in roots else splits[v] + 1
        if total_components - 1 + pieces >= 2:
            result.add(v)
    return frozenset(result)


def has_cut_vertex(g: WhiteheadGraph) -> bool:
    return bool(cut_vertices(g))


def is_subgraph(g1: WhiteheadGraph, g2: WhiteheadGraph) -> bool:
    """Edge-set inclusion; the vertex sets agree by construction."""
    if g1.rank != g2.rank:
        raise ValueError(f"rank mismatch: {g1.rank} vs {g2.rank}")
    return g1.edges <= g2.edges


def to_dot(g: WhiteheadGraph) -> str:
    """Deterministic DOT rendering; same graph always gives the same text."""
    lines = ["graph whitehead {"]
    for v in g.vertices:
        lines.append(f'  "{vertex_name(v)}";')
    for u, v in g.sorted_edges():
        lines.append(f'  "{vertex_name(u)}" -- "{vertex_name(v)}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_json_dict(g: WhiteheadGraph) -> dict:
    """JSON form: ``{"rank": r, "edges": [["x1", "x2'"], ...]}``, sorted."""
    return {
        "rank": g.rank,
        "edges": [
            [vertex_name(u), vertex_name(v)] for u, v in g.sorted_edges()
        ],
    }
