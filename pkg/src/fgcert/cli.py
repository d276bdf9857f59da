"""Command-line surface.

Exit codes: 0 for success / a true or certified answer, 1 for a false or
not-certified answer (and failed suites), 2 for malformed input, 3 when a
question was left undecided within the configured budgets.

Budgets can be set per invocation with flags or globally with the
environment variables ``FGCERT_ORACLE_CAP``, ``FGCERT_OVERLAP_CAP`` and
``FGCERT_K_BOUND``.  Every JSON document carries ``"schema": 1``.  Given
the same arguments and seed, ``corpus`` and ``verify-paper`` produce
byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from dataclasses import dataclass
from typing import Optional

from . import axes, certify, laws, whgraph
from .autos import (
    DEFAULT_ORBIT_BUDGET,
    OrbitBudgetExceeded,
    is_simple,
    whitehead_minimize,
)
from .certify import Rule, Verdict
from .sampling import (
    count_cyclically_reduced_words,
    iter_cyclically_reduced_words,
    random_cyclically_reduced_word,
)
from .words import CyclicWord, ParseError, Word, cyclic_reduce, format_word, parse_word

SCHEMA = 1
EXIT_OK = 0
EXIT_NO = 1
EXIT_INPUT = 2
EXIT_UNDECIDED = 3

_EXHAUSTIVE_LIMIT = 2_000_000


def _env_int(name: str, default: Optional[int]) -> Optional[int]:
    raw = os.environ.get(name)
    return int(raw) if raw else default


@dataclass
class RunConfig:
    """Budgets and knobs shared by the subcommands."""

    rank: Optional[int]
    seed: int
    oracle_cap: int
    overlap_cap: Optional[int]
    k_bound: Optional[int]
    jobs: int

    @classmethod
    def from_args(cls, args) -> "RunConfig":
        return cls(
            rank=getattr(args, "rank", None),
            seed=getattr(args, "seed", 0),
            oracle_cap=getattr(args, "oracle_cap", None)
            or _env_int("FGCERT_ORACLE_CAP", DEFAULT_ORBIT_BUDGET),
            overlap_cap=getattr(args, "overlap_cap", None)
            or _env_int("FGCERT_OVERLAP_CAP", None),
            k_bound=getattr(args, "k_bound", None)
            or _env_int("FGCERT_K_BOUND", None),
            jobs=getattr(args, "jobs", 1),
        )


def _emit_json(doc: dict) -> None:
    print(json.dumps(doc, separators=(", ", ": ")))


def _parse(text: str, rank: Optional[int]) -> Word:
    return parse_word(text, rank)


# --- simple word commands ------------------------------------------------------


def _cmd_reduce(args) -> int:
    w = _parse(args.word, args.rank)
    if args.json:
        _emit_json({"schema": SCHEMA, "rank": w.rank, "word": format_word(w)})
    else:
        print(format_word(w))
    return EXIT_OK


def _cmd_cyclic_reduce(args) -> int:
    w = _parse(args.word, args.rank)
    t, core = cyclic_reduce(w)
    if args.json:
        _emit_json(
            {
                "schema": SCHEMA,
                "rank": w.rank,
                "conjugator": format_word(t),
                "core": str(core),
            }
        )
    else:
        print(f"conjugator {format_word(t)}")
        print(f"core {core}")
    return EXIT_OK


def _cmd_wh_graph(args) -> int:
    w = _parse(args.word, args.rank)
    g = whgraph.build(w)
    if args.dot:
        sys.stdout.write(whgraph.to_dot(g))
    elif args.json:
        doc = {"schema": SCHEMA}
        doc.update(whgraph.to_json_dict(g))
        _emit_json(doc)
    else:
        for u, v in g.sorted_edges():
            print(f"{whgraph.vertex_name(u)} -- {whgraph.vertex_name(v)}")
    return EXIT_OK


def _cmd_cut_vertices(args) -> int:
    w = _parse(args.word, args.rank)
    g = whgraph.build(w)
    cuts = sorted(whgraph.cut_vertices(g), key=lambda v: g.vertices.index(v))
    names = [whgraph.vertex_name(v) for v in cuts]
    if args.json:
        _emit_json(
            {
                "schema": SCHEMA,
                "rank": g.rank,
                "cut_vertices": names,
                "connected": whgraph.is_connected(g),
            }
        )
    else:
        print(" ".join(names))
    return EXIT_OK


def _cmd_is_simple(args) -> int:
    cfg = RunConfig.from_args(args)
    w = _parse(args.word, args.rank)
    try:
        simple = is_simple(w, cfg.oracle_cap)
    except OrbitBudgetExceeded as exc:
        print(f"undecided: {exc}", file=sys.stderr)
        return EXIT_UNDECIDED
    if args.json:
        _emit_json({"schema": SCHEMA, "word": format_word(w), "simple": simple})
    else:
        print("true" if simple else "false")
    return EXIT_OK if simple else EXIT_NO


def _cmd_minimize(args) -> int:
    w = _parse(args.word, args.rank)
    core = CyclicWord.from_word(w)
    minimal, trail = whitehead_minimize(core)
    if args.json:
        _emit_json(
            {
                "schema": SCHEMA,
                "word": format_word(w),
                "minimal": str(minimal),
                "length": len(minimal),
                "trail": [str(m) for m in trail],
            }
        )
    else:
        print(str(minimal))
        for m in trail:
            print(f"  {m}")
    return EXIT_OK


def _cmd_axis_overlap(args) -> int:
    cfg = RunConfig.from_args(args)
    g = _parse(args.word, args.rank)
    h = _parse(args.other, g.rank if args.rank is None else args.rank)
    if g.rank != h.rank:
        g = _parse(args.word, max(g.rank, h.rank))
        h = _parse(args.other, g.rank)
    try:
        ov = axes.overlap(g, h, cfg.overlap_cap)
    except axes.OverlapWindowExhausted as exc:
        print(f"undecided: {exc}", file=sys.stderr)
        return EXIT_UNDECIDED
    count = "infinite" if ov.infinite else int(ov.vertex_count)
    if args.json:
        doc = {"schema": SCHEMA, "overlap": count}
        if ov.endpoint_low is not None:
            doc["endpoints"] = [
                format_word(ov.endpoint_low),
                format_word(ov.endpoint_high),
            ]
        _emit_json(doc)
    else:
        print(count)
        if ov.endpoint_low is not None:
            print(
                f"endpoints {format_word(ov.endpoint_low)}"
                f" {format_word(ov.endpoint_high)}"
            )
    return EXIT_OK


# --- certification ---------------------------------------------------------------


def _cmd_certify(args) -> int:
    cfg = RunConfig.from_args(args)
    a = _parse(args.word, args.rank)
    pivot = None
    if args.pivot is not None:
        pivot = _parse(args.pivot, a.rank)
    try:
        cert = _run_certify(a, args.rule, pivot, cfg)
    except OrbitBudgetExceeded as exc:
        print(f"undecided: {exc}", file=sys.stderr)
        return EXIT_UNDECIDED
    if args.json:
        doc = {"schema": SCHEMA}
        doc.update(certify.certificate_json_dict(cert))
        _emit_json(doc)
    else:
        print(f"{cert.verdict.value} rule={cert.rule.value}")
        for key, value in cert.trail.items():
            print(f"  {key}: {value}")
    if cert.verdict is Verdict.NON_SIMPLE_CERTIFIED:
        return EXIT_OK
    if cert.verdict is Verdict.UNDECIDED:
        return EXIT_UNDECIDED
    return EXIT_NO


def _run_certify(a, rule, pivot, cfg: RunConfig):
    if rule == "auto":
        if pivot is not None:
            cert = certify.certify_via_theorem(
                pivot, a, cfg.oracle_cap, cfg.overlap_cap, cfg.k_bound
            )
            if cert.certified:
                return cert
            auto = certify.certify_auto(
                a, cfg.oracle_cap, cfg.overlap_cap, cfg.k_bound
            )
            return auto if auto.certified else cert
        return certify.certify_auto(
            a, cfg.oracle_cap, cfg.overlap_cap, cfg.k_bound
        )
    if rule == "theorem":
        pivots = [pivot] if pivot is not None else certify.builtin_pivots(a.rank)
        last = None
        for w in pivots:
            last = certify.certify_via_theorem(
                w, a, cfg.oracle_cap, cfg.overlap_cap, cfg.k_bound
            )
            if last.certified:
                return last
        return last
    if rule == "squares":
        return certify.certify_squares_subword(a)
    if rule == "commutators":
        return certify.certify_commutator_subword(a)
    raise ValueError(f"unknown rule {rule !r}")


# --- corpus ----------------------------------------------------------------------


def _corpus_rules(rank: int) -> list:
    rules = [Rule.COR_SQUARES.value]
    if rank % 2 == 0:
        rules.append(Rule.COR_COMMUTATORS.value)
    rules.append(Rule.THEOREM_OVERLAP.value)
    return rules


def _evaluate_corpus_word(letters, rank, oracle_cap, overlap_cap, k_bound):
    w = Word(tuple(letters), rank)
    certified = []
    cert = certify.certify_squares_subword(w)
    if cert.certified:
        certified.append(Rule.COR_SQUARES.value)
    if rank % 2 == 0:
        cert = certify.certify_commutator_subword(w)
        if cert.certified:
            certified.append(Rule.COR_COMMUTATORS.value)
    for pivot in certify.builtin_pivots(rank):
        cert = certify.certify_via_theorem(
            pivot, w, oracle_cap, overlap_cap, k_bound
        )
        if cert.certified:
            certified.append(Rule.THEOREM_OVERLAP.value)
            break
    try:
        simple = is_simple(w, oracle_cap)
    except OrbitBudgetExceeded:
        simple = None
    return simple, certified


def _corpus_chunk(payload):
    letters_list, rank, oracle_cap, overlap_cap, k_bound = payload
    return [
        _evaluate_corpus_word(ls, rank, oracle_cap, overlap_cap, k_bound)
        for ls in letters_list
    ]


def _cmd_corpus(args) -> int:
    cfg = RunConfig.from_args(args)
    rank = args.rank if args.rank is not None else 2
    if rank < 2:
        print("error: corpus needs rank >= 2", file=sys.stderr)
        return EXIT_INPUT
    length = args.length
    if args.count == "all":
        total = count_cyclically_reduced_words(rank, length)
        if total > _EXHAUSTIVE_LIMIT:
            print(
                f"error: exhaustive corpus of {total} words exceeds the"
                f" limit of {_EXHAUSTIVE_LIMIT}",
                file=sys.stderr,
            )
            return EXIT_INPUT
        words = [w.letters for w in iter_cyclically_reduced_words(rank, length)]
        mode = "exhaustive"
    else:
        try:
            n = int(args.count)
        except ValueError:
            print("error: --count takes an integer or 'all'", file=sys.stderr)
            return EXIT_INPUT
        rng = random.Random(cfg.seed)
        words = [
            random_cyclically_reduced_word(rng, rank, length).letters
            for _ in range(n)
        ]
        mode = "sampled"
    results = _run_corpus(words, rank, cfg)
    report = _corpus_report(args, cfg, rank, length, mode, words, results)
    if args.json:
        _emit_json(report)
    else:
        for key in (
            "mode",
            "rank",
            "length",
            "count",
            "fraction_simple",
            "violations",
        ):
            print(f"{key}: {report[key]}")
        for rule, frac in report["fraction_certified"].items():
            print(f"certified[{rule}]: {frac}")
    return EXIT_OK if report["violations"] == 0 else EXIT_NO


def _run_corpus(words, rank, cfg: RunConfig):
    payloads = (words, rank, cfg.oracle_cap, cfg.overlap_cap, cfg.k_bound)
    if cfg.jobs <= 1 or len(words) < 2 * cfg.jobs:
        return _corpus_chunk(payloads)
    import multiprocessing

    chunks = [words[i :: cfg.jobs] for i in range(cfg.jobs)]
    with multiprocessing.Pool(cfg.jobs) as pool:
        parts = pool.map(
            _corpus_chunk,
            [
                (chunk, rank, cfg.oracle_cap, cfg.overlap_cap, cfg.k_bound)
                for chunk in chunks
            ],
        )
    # merge back in input order: chunk i holds words i, i+jobs, ...
    merged = [None] * len(words)
    for i, part in enumerate(parts):
        merged[i :: cfg.jobs] = part
    return merged


def _corpus_report(args, cfg, rank, length, mode, words, results) -> dict:
    total = len(words)
    simple_count = sum(1 for s, _ in results if s is True)
    undecided = sum(1 for s, _ in results if s is None)
    rule_counts = {rule: 0 for rule in _corpus_rules(rank)}
    certified_any = 0
    violations = 0
    for simple, certified in results:
        if certified:
            certified_any += 1
            if simple is True:
                violations += 1
        for rule in certified:
            rule_counts[rule] += 1
    def frac(k):
        return round(k / total, 6) if total else 0.0
    return {
        "schema": SCHEMA,
        "mode": mode,
        "rank": rank,
        "length": length,
        "seed": cfg.seed,
        "count": total,
        "simple": simple_count,
        "non_simple": total - simple_count - undecided,
        "oracle_undecided": undecided,
        "fraction_simple": frac(simple_count),
        "certified_any": certified_any,
        "fraction_certified_any": frac(certified_any),
        "certified": dict(sorted(rule_counts.items())),
        "fraction_certified": {
            rule: frac(count) for rule, count in sorted(rule_counts.items())
        },
        "violations": violations,
    }


# --- the regression suite -----------------------------------------------------


def _cmd_verify_paper(args) -> int:
    cfg = RunConfig.from_args(args)
    rank = args.rank if args.rank is not None else 2
    if rank < 2:
        print("error: verify-paper needs rank >= 2", file=sys.stderr)
        return EXIT_INPUT
    rng = random.Random(cfg.seed)
    trials = args.trials
    sections = [
        {
            "name": "builtin_minimality",
            "checks": certify.verify_builtin_minimality(rank)["checks"],
        },
        {
            "name": "endo_fixed_test_words",
            "checks": certify.verify_endo_fixed_test_words(rank)["checks"],
        },
        {
            "name": "graph_laws",
            "checks": [
                laws.check_graph_invariance(rng, rank, trials),
                laws.check_bigram_subgraph(rng, rank, trials),
                laws.check_cut_transfer(rng, rank, trials),
                laws.check_power_graphs(rng, rank, trials),
            ],
        },
        {
            "name": "cut_vertex_laws",
            "checks": [
                laws.check_cut_vertex_laws_exhaustive(
                    2, args.cut_law_len, cfg.oracle_cap
                )
            ],
        },
    ]
    passed = all(
        c.get("passed", True) for s in sections for c in s["checks"]
    )
    report = {
        "schema": SCHEMA,
        "rank": rank,
        "seed": cfg.seed,
        "trials": trials,
        "sections": sections,
        "passed": passed,
    }
    if args.json:
        _emit_json(report)
    else:
        for section in sections:
            print(f"[{section['name']}]")
            for c in section["checks"]:
                if c.get("skipped"):
                    print(f"  SKIP {c['name']} ({c['reason']})")
                else:
                    mark = "PASS" if c["passed"] else "FAIL"
                    print(f"  {mark} {c['name']}")
        print("passed" if passed else "failed")
    return EXIT_OK if passed else EXIT_NO


# --- argument plumbing -----------------------------------------------------------


def _add_common(p, budgets=False, jobs=False, seed=False):
    p.add_argument("--rank", type=int, default=None, help="ambient rank")
    p.add_argument("--json", action="store_true", help="JSON output")
    if seed:
        p.add_argument("--seed", type=int, default=0, help="PRNG seed")
    if budgets:
        p.add_argument("--oracle-cap", dest="oracle_cap", type=int, default=None)
        p.add_argument(
            "--overlap-cap", dest="overlap_cap", type=int, default=None
        )
        p.add_argument("--k-bound", dest="k_bound", type=int, default=None)
    if jobs:
        p.add_argument("--jobs", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fgcert",
        description=(
            "Free-group word combinatorics: reduction, Whitehead graphs,"
            " axes, and certificates of being a test element for"
            " monomorphisms."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reduce", help="freely reduce a word")
    p.add_argument("word")
    _add_common(p)
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("cyclic-reduce", help="split into conjugator and core")
    p.add_argument("word")
    _add_common(p)
    p.set_defaults(func=_cmd_cyclic_reduce)

    p = sub.add_parser("wh-graph", help="Whitehead graph of a word")
    p.add_argument("word")
    p.add_argument("--dot", action="store_true", help="DOT output")
    _add_common(p)
    p.set_defaults(func=_cmd_wh_graph)

    p = sub.add_parser("cut-vertices", help="cut vertices of the graph")
    p.add_argument("word")
    _add_common(p)
    p.set_defaults(func=_cmd_cut_vertices)

    p = sub.add_parser("is-simple", help="does the word lie in a proper free factor")
    p.add_argument("word")
    _add_common(p, budgets=True)
    p.set_defaults(func=_cmd_is_simple)

    p = sub.add_parser("minimize", help="Whitehead-minimize the cyclic word")
    p.add_argument("word")
    _add_common(p)
    p.set_defaults(func=_cmd_minimize)

    p = sub.add_parser("axis-overlap", help="vertices shared by two axes")
    p.add_argument("word")
    p.add_argument("other")
    _add_common(p, budgets=True)
    p.set_defaults(func=_cmd_axis_overlap)

    p = sub.add_parser("certify", help="certify a test element for monomorphisms")
    p.add_argument("word")
    p.add_argument("--pivot", default=None, help="pivot word for the overlap rule")
    p.add_argument(
        "--rule",
        choices=["auto", "theorem", "squares", "commutators"],
        default="auto",
    )
    _add_common(p, budgets=True)
    p.set_defaults(func=_cmd_certify)

    p = sub.add_parser("corpus", help="randomized or exhaustive soundness sweep")
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--count", default="1000", help="sample size or 'all'")
    _add_common(p, budgets=True, jobs=True, seed=True)
    p.set_defaults(func=_cmd_corpus)

    p = sub.add_parser(
        "verify-paper", help="regression suite of the built-in algebraic facts"
    )
    p.add_argument("--trials", type=int, default=200, help="random trials per law")
    p.add_argument(
        "--cut-law-len",
        dest="cut_law_len",
        type=int,
        default=6,
        help="exhaustive length bound for the cut-vertex laws",
    )
    _add_common(p, budgets=True, seed=True)
    p.set_defaults(func=_cmd_verify_paper)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_INPUT
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OrbitBudgetExceeded as exc:
        print(f"undecided: {exc}", file=sys.stderr)
        return EXIT_UNDECIDED


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
