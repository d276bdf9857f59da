"""Certificates of non-simplicity, i.e. of being a test element for
monomorphisms.

Three sufficient rules are implemented, each producing a
:class:`Certificate` whose trail is enough to replay the decision:

* ``THEOREM_OVERLAP``: given a pivot word ``w`` that is oracle-non-simple,
  Whitehead-minimal and cyclically reduced, any nontrivial ``a`` whose axis
  meets the axis of ``w`` in at least ``len(w) + 1`` vertices is non-simple.
  The trail records the overlap, the threshold, an exponent ``k`` with the
  Whitehead graph of ``w`` a subgraph of that of ``a**k``, and the
  cut-vertex replay: the graph of ``w`` has no cut vertex, hence neither
  has the supergraph, hence ``a**k`` (and so ``a``) lies in no proper free
  factor.
* ``COR_SQUARES``: a cyclically reduced word containing
  ``x1^2 x2^2 ... xr^2 x1`` as a cyclic factor is non-simple.
* ``COR_COMMUTATORS``: in even rank ``2n``, a cyclically reduced word
  containing ``[x1,x2][x3,x4]...[x_{2n-1},x_{2n}] x1`` cyclically is
  non-simple.

All rules are sufficient only; the independent orbit-search oracle
(:func:`fgcert.autos.is_simple`) gives the exact answer and is used to
cross-validate every certificate in the test suite.  Oracle budget
exhaustion is reported as the distinct verdict ``UNDECIDED`` and is never
collapsed into failure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from . import axes, whgraph
from .autos import (
    GeneratorMap,
    OrbitBudgetExceeded,
    apply_endo,
    is_possibly_automorphism,
    is_simple,
    is_test_element_for_monos,
    is_whitehead_minimal,
)
from .words import (
    CyclicWord,
    Word,
    commutator,
    concat,
    cyclic_reduce,
    format_word,
    in_commutator_subgroup,
    in_square_times_commutator,
    invert,
    power,
)

__all__ = [
    "Verdict",
    "Rule",
    "Certificate",
    "certificate_json_dict",
    "squares_word",
    "commutators_word",
    "squares_test_word",
    "commutators_test_word",
    "power_word",
    "builtin_words",
    "builtin_pivots",
    "certify_via_theorem",
    "certify_squares_subword",
    "certify_commutator_subword",
    "certify_via_oracle",
    "certify_auto",
    "verify_builtin_minimality",
    "verify_endo_fixed_test_words",
]


class Verdict(str, Enum):
    NON_SIMPLE_CERTIFIED = "NON_SIMPLE_CERTIFIED"
    HYPOTHESIS_FAILED = "HYPOTHESIS_FAILED"
    UNDECIDED = "UNDECIDED"


class Rule(str, Enum):
    THEOREM_OVERLAP = "THEOREM_OVERLAP"
    COR_SQUARES = "COR_SQUARES"
    COR_COMMUTATORS = "COR_COMMUTATORS"
    ORACLE = "ORACLE"


@dataclass(frozen=True, eq=False)
class Certificate:
    """Outcome of one certification attempt.

    ``trail`` maps check names to JSON-ready values (words are stored as
    their compact text form) and is sufficient to replay the decision.
    A ``NON_SIMPLE_CERTIFIED`` verdict means every recorded hypothesis
    passed.
    """

    subject: Word
    verdict: Verdict
    rule: Rule
    trail: dict = field(default_factory=dict)

    @property
    def certified(self) -> bool:
        return self.verdict is Verdict.NON_SIMPLE_CERTIFIED


def certificate_json_dict(cert: Certificate) -> dict:
    return {
        "subject": format_word(cert.subject),
        "verdict": cert.verdict.value,
        "rule": cert.rule.value,
        "trail": dict(cert.trail),
    }


# --- built-in word families --------------------------------------------------


def squares_word(rank: int) -> Word:
    """``x1^2 x2^2 ... xr^2`` (a classical test element for rank >= 2)."""
    if rank < 2:
        raise ValueError(f"rank must be >= 2, got {rank}")
    letters = []
    for i in range(1, rank + 1):
        letters += [i, i]
    return Word(tuple(letters), rank)


def commutators_word(rank: int) -> Word:
    """``[x1,x2][x3,x4]...`` for even rank (a classical test element)."""
    if rank < 2 or rank % 2:
        raise ValueError(f"rank must be even and >= 2, got {rank}")
    w = Word.identity(rank)
    for i in range(1, rank + 1, 2):
        w = concat(
            w, commutator(Word((i,), rank), Word((i + 1,), rank))
        )
    return w


def squares_test_word(rank: int) -> Word:
    """``x1^2 ... xr^2 x1``: mono-test element that is not a test element."""
    return concat(squares_word(rank), Word((1,), rank))


def commutators_test_word(rank: int) -> Word:
    """``[x1,x2]...[x_{2n-1},x_{2n}] x1``, even rank only."""
    return concat(commutators_word(rank), Word((1,), rank))


def power_word(rank: int, k: int) -> Word:
    """``x1^k x2^k ... xr^k`` for ``k >= 2`` (test elements for rank >= 2)."""
    if rank < 2:
        raise ValueError(f"rank must be >= 2, got {rank}")
    if k < 2:
        raise ValueError(f"power must be >= 2, got {k}")
    letters = []
    for i in range(1, rank + 1):
        letters += [i] * k
    return Word(tuple(letters), rank)


def builtin_words(rank: int, powers=(2, 3)) -> dict:
    """The named built-in words at this rank.

    Commutator entries appear only in even rank; the power family
    ``x1^k ... xr^k`` is included for each requested ``k`` and available
    for any exponent through :func:`power_word`.
    """
    if rank < 2:
        raise ValueError(f"rank must be >= 2, got {rank}")
    out = {
        "squares": squares_word(rank),
        "squares_x1": squares_test_word(rank),
    }
    if rank % 2 == 0:
        out["commutators"] = commutators_word(rank)
        out["commutators_x1"] = commutators_test_word(rank)
    for k in powers:
        out[f"powers_{k}"] = power_word(rank, k)
    return out


def builtin_pivots(rank: int) -> list:
    """Default pivot words for the overlap rule at this rank."""
    pivots = [squares_word(rank)]
    if rank % 2 == 0:
        pivots.append(commutators_word(rank))
    return pivots


# --- the overlap rule ---------------------------------------------------------


def _overlap_json(count) -> object:
    return "infinite" if count == axes.INFINITE else int(count)


def certify_via_theorem(
    w: Word,
    a: Word,
    budget: int = None,
    overlap_cap: int = None,
    k_bound: int = None,
) -> Certificate:
    """Certify ``a`` as non-simple from a big axis overlap with pivot ``w``.

    Hypotheses, checked in order and recorded in the trail: the pivot is
    non-simple (by the orbit oracle), the pivot is cyclically reduced as
    given and Whitehead-minimal, and the axes of ``a`` and ``w`` share at
    least ``len(w) + 1`` vertices (an infinite overlap passes).  On success
    the trail also records the subgraph witness exponent and the cut-vertex
    replay.
    """
    if w.rank != a.rank:
        raise ValueError(f"rank mismatch: {w.rank} vs {a.rank}")
    if w.rank < 2:
        raise ValueError("the overlap rule needs rank >= 2")
    if not w.letters or not a.letters:
        raise ValueError("pivot and subject must be nontrivial")
    trail: dict = {"w": format_word(w)}
    try:
        w_simple = is_simple(w, budget)
    except OrbitBudgetExceeded as exc:
        trail["undecided"] = str(exc)
        return Certificate(a, Verdict.UNDECIDED, Rule.THEOREM_OVERLAP, trail)
    trail["pivot_non_simple"] = not w_simple
    if w_simple:
        trail["failed"] = "pivot_non_simple"
        return Certificate(
            a, Verdict.HYPOTHESIS_FAILED, Rule.THEOREM_OVERLAP, trail
        )
    cyc = w.is_cyclically_reduced
    minimal = cyc and is_whitehead_minimal(CyclicWord(w.letters, w.rank))
    trail["cyclically_reduced"] = cyc
    trail["minimal"] = minimal
    if not (cyc and minimal):
        trail["failed"] = "pivot_minimality"
        return Certificate(
            a, Verdict.HYPOTHESIS_FAILED, Rule.THEOREM_OVERLAP, trail
        )
    threshold = len(w.letters) + 1
    trail["threshold"] = threshold
    try:
        ov = axes.overlap(a, w, overlap_cap)
    except axes.OverlapWindowExhausted as exc:
        trail["undecided"] = str(exc)
        return Certificate(a, Verdict.UNDECIDED, Rule.THEOREM_OVERLAP, trail)
    trail["overlap"] = _overlap_json(ov.vertex_count)
    if ov.vertex_count < threshold:
        trail["failed"] = "overlap_threshold"
        return Certificate(
            a, Verdict.HYPOTHESIS_FAILED, Rule.THEOREM_OVERLAP, trail
        )
    # replay: subgraph witness and the cut-vertex transfer
    gw = whgraph.build(w)
    try:
        k = axes.find_k(w, a, k_bound)
        gak = whgraph.build(power(a, k))
        trail["k"] = k
        trail["subgraph"] = whgraph.is_subgraph(gw, gak)
        trail["cut_free_ak"] = not whgraph.has_cut_vertex(gak)
    except axes.SubgraphWitnessNotFound:
        trail["k"] = None
        trail["subgraph"] = False
    trail["cut_free_w"] = not whgraph.has_cut_vertex(gw)
    return Certificate(
        a, Verdict.NON_SIMPLE_CERTIFIED, Rule.THEOREM_OVERLAP, trail
    )


# --- the subword rules ----------------------------------------------------------


def _certify_pattern(a: Word, pattern: Word, rule: Rule) -> Certificate:
    if not a.letters:
        raise ValueError("subject must be nontrivial")
    if not a.is_cyclically_reduced:
        raise ValueError(
            "subject must be cyclically reduced; pass the core"
        )
    trail: dict = {"pattern": format_word(pattern)}
    n = len(a.letters)
    m = len(pattern.letters)
    start = None
    if 0 < m <= n:
        doubled = a.letters + a.letters
        for i in range(n):
            if doubled[i:i + m] == pattern.letters:
                start = i
                break
    if start is None:
        trail["found"] = False
        trail["failed"] = "pattern_not_found"
        return Certificate(a, Verdict.HYPOTHESIS_FAILED, rule, trail)
    rotated = a.letters[start:] + a.letters[:start]
    trail["found"] = True
    trail["rotation_start"] = start
    trail["rotated"] = format_word(Word(rotated, a.rank))
    trail["conjugator"] = format_word(Word(a.letters[:start], a.rank))
    if start + m <= n:
        trail["prefix"] = format_word(Word(a.letters[:start], a.rank))
        trail["suffix"] = format_word(Word(a.letters[start + m:], a.rank))
    return Certificate(a, Verdict.NON_SIMPLE_CERTIFIED, rule, trail)


def certify_squares_subword(a: Word) -> Certificate:
    """Certify a cyclically reduced word containing
    ``x1^2 ... xr^2 x1`` as a cyclic factor."""
    if a.rank < 2:
        raise ValueError("the squares rule needs rank >= 2")
    return _certify_pattern(a, squares_test_word(a.rank), Rule.COR_SQUARES)


def certify_commutator_subword(a: Word) -> Certificate:
    """Certify a cyclically reduced word of even rank containing
    ``[x1,x2]...[x_{2n-1},x_{2n}] x1`` as a cyclic factor."""
    if a.rank < 2 or a.rank % 2:
        raise ValueError("the commutator rule needs even rank >= 2")
    return _certify_pattern(
        a, commutators_test_word(a.rank), Rule.COR_COMMUTATORS
    )


# --- oracle and auto ----------------------------------------------------------


def certify_via_oracle(a: Word, budget: int = None) -> Certificate:
    """Decide non-simplicity exactly with the orbit-search oracle."""
    if not a.letters:
        raise ValueError("subject must be nontrivial")
    trail: dict = {}
    try:
        simple = is_simple(a, budget)
    except OrbitBudgetExceeded as exc:
        trail["undecided"] = str(exc)
        return Certificate(a, Verdict.UNDECIDED, Rule.ORACLE, trail)
    trail["simple"] = simple
    if simple:
        trail["failed"] = "subject_simple"
        return Certificate(a, Verdict.HYPOTHESIS_FAILED, Rule.ORACLE, trail)
    return Certificate(a, Verdict.NON_SIMPLE_CERTIFIED, Rule.ORACLE, trail)


def _attempt_summary(cert: Certificate) -> dict:
    return {
        "rule": cert.rule.value,
        "verdict": cert.verdict.value,
        "failed": cert.trail.get("failed"),
    }


def certify_auto(
    a: Word,
    budget: int = None,
    overlap_cap: int = None,
    k_bound: int = None,
) -> Certificate:
    """Try the subword rules on the cyclic core, then the overlap rule with
    the built-in pivots.

    A certificate for the core certifies the input, since conjugates of
    simple elements are simple; when the input was not already cyclically
    reduced the trail records the conjugator.
    """
    if a.rank < 2:
        raise ValueError("certification needs rank >= 2")
    if not a.letters:
        raise ValueError("subject must be nontrivial")
    conj, core = cyclic_reduce(a)
    core_word = core.as_word()
    attempts = [certify_squares_subword(core_word)]
    if a.rank % 2 == 0:
        attempts.append(certify_commutator_subword(core_word))
    for cert in attempts:
        if cert.certified:
            trail = dict(cert.trail)
            if conj.letters:
                trail["core"] = format_word(core_word)
                trail["core_conjugator"] = format_word(conj)
            return Certificate(a, cert.verdict, cert.rule, trail)
    undecided: Optional[Certificate] = None
    for pivot in builtin_pivots(a.rank):
        cert = certify_via_theorem(pivot, a, budget, overlap_cap, k_bound)
        attempts.append(cert)
        if cert.certified:
            return cert
        if cert.verdict is Verdict.UNDECIDED and undecided is None:
            undecided = cert
    if undecided is not None:
        return undecided
    trail = {"attempts": [_attempt_summary(c) for c in attempts]}
    return Certificate(
        a, Verdict.HYPOTHESIS_FAILED, Rule.THEOREM_OVERLAP, trail
    )


# --- built-in regression reports ------------------------------------------------


def _check(name: str, passed: bool, detail: str = None) -> dict:
    out = {"name": name, "passed": bool(passed)}
    if detail is not None:
        out["detail"] = detail
    return out


def _skip(name: str, reason: str) -> dict:
    return {"name": name, "skipped": True, "reason": reason}


def verify_builtin_minimality(rank: int) -> dict:
    """Re-derive, rather than assume, the key properties of the built-in
    words: Whitehead-minimality by exhausting all multiplier moves, the
    abelianization facts, and cut-vertex-freeness of their graphs."""
    if rank < 2:
        raise ValueError(f"rank must be >= 2, got {rank}")
    checks = []
    u = squares_word(rank)
    checks.append(
        _check(
            "squares_word_minimal",
            is_whitehead_minimal(CyclicWord(u.letters, rank)),
        )
    )
    checks.append(
        _check(
            "squares_word_even_abelianization",
            in_square_times_commutator(u),
        )
    )
    checks.append(
        _check(
            "squares_word_cut_free",
            not whgraph.has_cut_vertex(whgraph.build(u)),
        )
    )
    if rank % 2 == 0:
        wc = commutators_word(rank)
        checks.append(
            _check(
                "commutators_word_minimal",
                is_whitehead_minimal(CyclicWord(wc.letters, rank)),
            )
        )
        checks.append(
            _check(
                "commutators_word_trivial_abelianization",
                in_commutator_subgroup(wc),
            )
        )
        checks.append(
            _check(
                "commutators_word_cut_free",
                not whgraph.has_cut_vertex(whgraph.build(wc)),
            )
        )
    else:
        checks.append(_skip("commutators_word_minimal", "odd rank"))
    passed = all(c.get("passed", True) for c in checks)
    return {"rank": rank, "checks": checks, "passed": passed}


def verify_endo_fixed_test_words(rank: int) -> dict:
    """Check that the built-in mono-test words are fixed by explicit
    non-injective endomorphisms (so they are not test elements for all
    endomorphisms) while still being test elements for monomorphisms."""
    if rank < 2:
        raise ValueError(f"rank must be >= 2, got {rank}")
    checks = []
    u1 = squares_test_word(rank)
    images = [invert(u1), power(u1, 2)]
    images += [Word.identity(rank)] * (rank - 2)
    phi1 = GeneratorMap(rank, tuple(images))
    checks.append(
        _check("endo_fixes_squares_test_word", apply_endo(phi1, u1) == u1)
    )
    checks.append(
        _check(
            "squares_endo_not_automorphism",
            not is_possibly_automorphism(phi1),
        )
    )
    checks.append(
        _check(
            "squares_test_word_is_mono_test",
            is_test_element_for_monos(u1),
        )
    )
    if rank % 2 == 0:
        u2 = commutators_test_word(rank)
        phi2 = GeneratorMap(rank, (u2,) * rank)
        checks.append(
            _check(
                "endo_fixes_commutators_test_word",
                apply_endo(phi2, u2) == u2,
            )
        )
        checks.append(
            _check(
                "commutators_endo_not_automorphism",
                not is_possibly_automorphism(phi2),
            )
        )
        checks.append(
            _check(
                "commutators_test_word_is_mono_test",
                is_test_element_for_monos(u2),
            )
        )
    else:
        checks.append(_skip("endo_fixes_commutators_test_word", "odd rank"))
    passed = all(c.get("passed", True) for c in checks)
    return {"rank": rank, "checks": checks, "passed": passed}
