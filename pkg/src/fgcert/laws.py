"""Randomized and exhaustive law suites over the graph and oracle machinery.

Each check returns a small JSON-ready report with a violation count; the
command line aggregates them into the regression suite, and the test suite
reruns them at larger sizes.  All randomness comes from the caller's
:class:`random.Random`, so reports are reproducible.
"""

from __future__ import annotations

import random

from . import whgraph
from .autos import is_simple, is_whitehead_minimal
from .sampling import (
    iter_cyclically_reduced_words,
    random_cyclically_reduced_word,
    random_word,
)
from .words import CyclicWord, Word, conjugate, cyclic_bigrams, invert, power

__all__ = [
    "check_graph_invariance",
    "check_bigram_subgraph",
    "check_cut_transfer",
    "check_power_graphs",
    "check_cut_vertex_laws_exhaustive",
]


def check_graph_invariance(
    rng: random.Random, rank: int, trials: int, max_len: int = 16
) -> dict:
    """Whitehead graphs do not see conjugation or inversion."""
    violations = 0
    for _ in range(trials):
        w = random_word(rng, rank, rng.randint(0, max_len))
        t = random_word(rng, rank, rng.randint(0, max_len // 2))
        g = whgraph.build(w)
        if whgraph.build(conjugate(w, t)) != g:
            violations += 1
        if whgraph.build(invert(w)) != g:
            violations += 1
    return {
        "name": "graph_conjugation_inversion_invariance",
        "trials": trials,
        "violations": violations,
        "passed": violations == 0,
    }


def _bigram_premise(u: CyclicWord, v: CyclicWord) -> bool:
    allowed = cyclic_bigrams(v) | cyclic_bigrams(
        CyclicWord(invert(v.as_word()).letters, v.rank)
    )
    return cyclic_bigrams(u) <= allowed


def check_bigram_subgraph(
    rng: random.Random, rank: int, trials: int, max_len: int = 16
) -> dict:
    """If every cyclic bigram of ``u`` occurs in ``v`` or its inverse, the
    graph of ``u`` is a subgraph of the graph of ``v``.

    Each trial tests the implication on a random pair plus constructed
    positive cases (rotations of ``v``, of its inverse, and of a power), so
    the premise is exercised and not vacuous.
    """
    violations = 0
    checked_premise = 0
    for _ in range(trials):
        n = rng.randint(1, max_len)
        v_word = random_cyclically_reduced_word(rng, rank, n)
        v = CyclicWord(v_word.letters, rank)
        candidates = [
            CyclicWord(
                random_cyclically_reduced_word(
                    rng, rank, rng.randint(1, max_len)
                ).letters,
                rank,
            ),
            CyclicWord(rng.choice(list(v.rotations())), rank),
            CyclicWord(invert(v_word).letters, rank),
            CyclicWord(power(v_word, 2).letters, rank),
        ]
        for u in candidates:
            if _bigram_premise(u, v):
                checked_premise += 1
                if not whgraph.is_subgraph(whgraph.build(u), whgraph.build(v)):
                    violations += 1
    return {
        "name": "bigram_subset_implies_subgraph",
        "trials": trials,
        "premise_cases": checked_premise,
        "violations": violations,
        "passed": violations == 0 and checked_premise > 0,
    }


def check_cut_transfer(
    rng: random.Random, rank: int, trials: int, max_len: int = 16
) -> dict:
    """Cut vertices of a graph are cut vertices of every subgraph on the
    same vertex set; so a cut-free subgraph forces a cut-free supergraph."""
    violations = 0
    for _ in range(trials):
        v = random_cyclically_reduced_word(rng, rank, rng.randint(2, max_len))
        g2 = whgraph.build(v)
        edges = g2.sorted_edges()
        keep = [e for e in edges if rng.random() < 0.6]
        g1 = whgraph.WhiteheadGraph(rank, frozenset(keep))
        if not whgraph.cut_vertices(g2) <= whgraph.cut_vertices(g1):
            violations += 1
        u = random_cyclically_reduced_word(rng, rank, rng.randint(2, max_len))
        g_union = whgraph.WhiteheadGraph(
            rank, g2.edges | whgraph.build(u).edges
        )
        if not whgraph.cut_vertices(g_union) <= whgraph.cut_vertices(g2):
            violations += 1
    return {
        "name": "subgraph_cut_vertex_transfer",
        "trials": trials,
        "violations": violations,
        "passed": violations == 0,
    }


def check_power_graphs(
    rng: random.Random, rank: int, trials: int, max_len: int = 12
) -> dict:
    """Powers of a cyclically reduced word of length >= 2 share its graph."""
    violations = 0
    for _ in range(trials):
        w = random_cyclically_reduced_word(rng, rank, rng.randint(2, max_len))
        g = whgraph.build(w)
        for n in (2, 3):
            if whgraph.build(power(w, n)) != g:
                violations += 1
    return {
        "name": "power_graphs_equal_base_graph",
        "trials": trials,
        "violations": violations,
        "passed": violations == 0,
    }


def check_cut_vertex_laws_exhaustive(
    rank: int = 2, max_len: int = 6, budget: int = None
) -> dict:
    """Exhaustive consistency of the oracle with the cut-vertex laws.

    Over every cyclically reduced word up to the length bound: a minimal
    simple word must have a cut vertex in its graph, and a minimal
    non-simple word must not.
    """
    checked = 0
    minimal_words = 0
    violations = 0
    for length in range(1, max_len + 1):
        for w in iter_cyclically_reduced_words(rank, length):
            checked += 1
            cw = CyclicWord(w.letters, rank)
            if not is_whitehead_minimal(cw):
                continue
            minimal_words += 1
            simple = is_simple(w, budget)
            cut = whgraph.has_cut_vertex(whgraph.build(cw))
            if simple != cut:
                violations += 1
    return {
        "name": "cut_vertex_laws_exhaustive",
        "rank": rank,
        "max_len": max_len,
        "words": checked,
        "minimal_words": minimal_words,
        "violations": violations,
        "passed": violations == 0,
    }
