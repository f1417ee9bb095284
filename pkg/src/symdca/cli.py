"""Command-line front end.

Every command prints one JSON report on stdout and exits with

    0  success / property holds
    1  property failed (the report carries the witness)
    2  usage or parse error
    3  resource limit hit
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time

from . import documents
from .core import Fsa, eval_fsa, run_word
from .engine import (
    STRATEGY_KINDS,
    EquivalenceConfig,
    SplitStrategy,
    check_well_defined,
    eval_dca_traced,
    final_state,
    verify_equivalence,
)
from .errors import AutomatonError, NotSymmetricError, ResourceLimitError
from .lowerbound import (
    build_hard_fsa,
    denes_generators,
    pigeonhole_demo,
    semigroup_closure,
    separating_extension,
    verify_certificate,
)
from .minimize import is_minimal, minimize
from .symmetry import find_symmetry_counterexample, transitions_commute
from .synthesis import (
    Dca,
    FunctionalDca,
    materialize_reachable,
    synthesize_composition_dca,
    synthesize_symmetric_dca,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_LIMIT = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _load(path, kind=None):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        auto = documents.loads(text)
    except AutomatonError as exc:
        raise UsageError(f"{path}: {exc}") from None
    if kind is Fsa and not isinstance(auto, Fsa):
        raise UsageError(f"{path}: expected an fsa document")
    if kind is Dca and not isinstance(auto, Dca):
        raise UsageError(f"{path}: expected a dca document")
    return auto


def _fmt_word(auto, w):
    return auto.alphabet.decode(w)


def cmd_minimize(args):
    fsa = _load(args.input, Fsa)
    res = minimize(fsa)
    documents.dump(res.minimized, args.output)
    m = res.minimized
    state_map = {
        fsa.state_names[q]: (None if t is None else m.state_names[t]) for q, t in enumerate(res.state_map)
    }
    return EXIT_OK, {
        "states_before": fsa.num_states,
        "states_after": m.num_states,
        "state_map": state_map,
        "minimal": is_minimal(m),
        "output_file": args.output,
    }


def cmd_check_symmetry(args):
    fsa = _load(args.input, Fsa)
    v = transitions_commute(fsa)
    res = minimize(fsa)
    cex = find_symmetry_counterexample(fsa, res)
    report = {
        "symmetric": cex is None,
        "states": fsa.num_states,
        "minimized_states": res.minimized.num_states,
        "transitions_commute": v is None,
    }
    if v is not None:
        report["commutativity_violation"] = {
            "symbols": [fsa.alphabet.symbols[v.sigma1], fsa.alphabet.symbols[v.sigma2]],
            "state": fsa.state_names[v.q],
            "results": [fsa.state_names[v.q1], fsa.state_names[v.q2]],
        }
    if cex is not None:
        report["counterexample"] = cex.describe(fsa)
        return EXIT_FAIL, report
    return EXIT_OK, report


def cmd_synthesize(args):
    fsa = _load(args.input, Fsa)
    report = {"method": args.method, "fsa_states": fsa.num_states}
    if args.method == "symmetric":
        try:
            syn = synthesize_symmetric_dca(fsa)
        except NotSymmetricError as exc:
            report["error"] = "not symmetric"
            report["counterexample"] = exc.counterexample.describe(fsa)
            return EXIT_FAIL, report
        dca = syn.dca
        report["minimized_states"] = syn.minimization.minimized.num_states
        report["representatives"] = {
            dca.state_names[q]: _fmt_word(dca, w) for q, w in enumerate(syn.representatives.rep)
        }
    else:
        dca = materialize_reachable(synthesize_composition_dca(fsa), cap=args.cap)
    documents.dump(dca, args.output)
    report["dca_states"] = dca.num_states
    report["output_file"] = args.output
    return EXIT_OK, report


def _strategy(args):
    return SplitStrategy(args.strategy, args.seed)


def cmd_run(args):
    auto = _load(args.input)
    try:
        w = auto.alphabet.encode(args.word)
    except AutomatonError as exc:
        raise UsageError(str(exc)) from None
    if not w:
        raise UsageError("--word must be nonempty")
    report = {"word": _fmt_word(auto, w), "kind": "fsa" if isinstance(auto, Fsa) else "dca"}
    if isinstance(auto, Fsa):
        q = run_word(auto, auto.initial, w)
        report["final_state"] = auto.state_names[q]
        report["output"] = auto.outputs[eval_fsa(auto, w)]
    else:
        strategy = _strategy(args)
        q = final_state(auto, w, strategy)
        report["strategy"] = strategy.label()
        report["final_state"] = auto.state_names[q]
        report["output"] = auto.outputs[auto.output_of(q)]
    return EXIT_OK, report


def cmd_verify(args):
    fsa = _load(args.fsa, Fsa)
    dca = _load(args.dca, Dca)
    config = EquivalenceConfig(
        exhaustive_max_len=args.exhaustive_len,
        num_random_trials=args.trials,
        random_max_len=args.max_len,
        seed=args.seed,
    )
    try:
        rep = verify_equivalence(fsa, dca, config)
    except AutomatonError as exc:
        raise UsageError(str(exc)) from None
    return (EXIT_OK if rep.passed else EXIT_FAIL), rep.to_dict()


def cmd_check_dca(args):
    dca = _load(args.dca, Dca)
    wit = check_well_defined(dca, args.max_len, node_budget=args.budget)
    report = {"max_len": args.max_len, "states": dca.num_states, "well_defined": wit is None}
    if wit is not None:
        report["witness"] = wit.describe(dca)
        return EXIT_FAIL, report
    return EXIT_OK, report


def cmd_lowerbound(args):
    n = args.n
    if n < 1:
        raise UsageError("--n must be positive")
    fsa = build_hard_fsa(n)
    atlas = semigroup_closure(denes_generators(n), cap=args.cap)
    fdca = FunctionalDca(fsa)
    atlas_ok = all(
        final_state(fdca, atlas.words[g], SplitStrategy.fold()) == g for g in atlas.order
    )
    report = {
        "n": n,
        "closure_size": len(atlas),
        "expected": n**n,
        "atlas_verified": atlas_ok,
        "longest_atlas_word": max(len(w) for w in atlas.words.values()),
    }
    ok = atlas_ok and len(atlas) == n**n
    if n <= args.separation_max_n:
        separated = all(
            separating_extension(fsa, atlas, g1, g2) is not None
            for i, g1 in enumerate(atlas.order)
            for g2 in atlas.order[i + 1:]
        )
        report["all_pairs_separated"] = separated
        ok = ok and separated
    if args.candidate:
        cand = _load(args.candidate, Dca)
        try:
            verdict = pigeonhole_demo(n, cand, atlas)
        except AutomatonError as exc:
            raise UsageError(f"{args.candidate}: {exc}") from None
        demo = {"candidate_states": cand.num_states, "verdict": verdict.verdict}
        if verdict.collision:
            c = verdict.certificate
            names = cand.state_names
            demo["certificate"] = {
                "g1": list(c.g1),
                "g2": list(c.g2),
                "q_hat": c.q_hat,
                "h": list(c.h),
                "words": [_fmt_word(fsa, w) for w in c.words],
                "fsa_outputs": [fsa.outputs[o] for o in c.fsa_outputs],
                "shared_state": names[c.shared_state],
                "joint_state": names[c.joint_state],
                "candidate_outputs": [sorted(cand.outputs[o] for o in s) for s in c.candidate_outputs],
                "verified": verify_certificate(n, cand, c),
            }
        report["pigeonhole"] = demo
        if verdict.collision:
            return EXIT_FAIL, report
    return (EXIT_OK if ok else EXIT_FAIL), report


def _footprint(dca, words, fsa):
    peak_values = cells_per_value = peak_cells = 0
    mismatches = 0
    for w in words:
        tr = eval_dca_traced(dca, w, SplitStrategy.tree())
        peak_values = max(peak_values, tr.peak_values)
        cells_per_value = max(cells_per_value, tr.cells_per_value)
        peak_cells = max(peak_cells, tr.peak_cells)
        mismatches += tr.output != eval_fsa(fsa, w)
    return {
        "peak_values_held": peak_values,
        "cells_per_value": cells_per_value,
        "peak_cells": peak_cells,
        "mismatches": mismatches,
    }


def cmd_bench(args):
    fsa = _load(args.input, Fsa)
    if args.length < 1 or args.trials < 1:
        raise UsageError("--length and --trials must be positive")
    rng = random.Random(args.seed)
    k = len(fsa.alphabet)
    words = [tuple(rng.randrange(k) for _ in range(args.length)) for _ in range(args.trials)]
    report = {"length": args.length, "trials": args.trials, "seed": args.seed, "fsa_states": fsa.num_states}
    comp = _footprint(synthesize_composition_dca(fsa), words, fsa)
    report["composition"] = comp
    try:
        sym_dca = synthesize_symmetric_dca(fsa).dca
    except NotSymmetricError as exc:
        report["symmetric"] = None
        report["counterexample"] = exc.counterexample.describe(fsa)
        return EXIT_FAIL, report
    sym = _footprint(sym_dca, words, fsa)
    sym["dca_states"] = sym_dca.num_states
    report["symmetric"] = sym
    ratio = comp["cells_per_value"] / sym["cells_per_value"]
    report["cells_per_value_ratio"] = int(ratio) if ratio.is_integer() else ratio
    failed = comp["mismatches"] or sym["mismatches"]
    return (EXIT_FAIL if failed else EXIT_OK), report


def build_parser():
    p = argparse.ArgumentParser(prog="symdca", description="Symmetric automata to divide-and-conquer automata.")
    p.add_argument("--no-timing", action="store_true", help="omit the timing field from reports")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("minimize", help="minimize an fsa document")
    s.add_argument("input")
    s.add_argument("output")
    s.set_defaults(func=cmd_minimize)

    s = sub.add_parser("check-symmetry", help="decide symmetry, with a permutation counterexample")
    s.add_argument("input")
    s.set_defaults(func=cmd_check_symmetry)

    s = sub.add_parser("synthesize", help="build a divide-and-conquer automaton")
    s.add_argument("input")
    s.add_argument("output")
    s.add_argument("--method", choices=("symmetric", "composition"), default="symmetric")
    s.add_argument("--cap", type=int, default=100_000, help="closure size limit for --method composition")
    s.set_defaults(func=cmd_synthesize)

    s = sub.add_parser("run", help="evaluate an automaton on one word")
    s.add_argument("input")
    s.add_argument("--word", required=True)
    s.add_argument("--strategy", choices=STRATEGY_KINDS, default="tree")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_run)

    s = sub.add_parser("verify", help="compare an fsa with a dca on many words")
    s.add_argument("fsa")
    s.add_argument("dca")
    s.add_argument("--exhaustive-len", type=int, default=None)
    s.add_argument("--trials", type=int, default=10_000)
    s.add_argument("--max-len", type=int, default=64)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("check-dca", help="bounded check that every split order gives one output")
    s.add_argument("dca")
    s.add_argument("--max-len", type=int, default=6)
    s.add_argument("--budget", type=int, default=50_000_000)
    s.set_defaults(func=cmd_check_dca)

    s = sub.add_parser("lowerbound", help="hard machine family and the pigeonhole certificate")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("candidate", nargs="?")
    s.add_argument("--cap", type=int, default=1_000_000)
    s.add_argument("--separation-max-n", type=int, default=3)
    s.set_defaults(func=cmd_lowerbound)

    s = sub.add_parser("bench", help="intermediate footprint of both constructions")
    s.add_argument("input")
    s.add_argument("--length", type=int, default=4096)
    s.add_argument("--trials", type=int, default=4)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_bench)
    return p


def main(argv=None, stdout=None):
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    start = time.perf_counter()
    report = {"command": args.command}
    try:
        code, body = args.func(args)
        report.update(body)
    except UsageError as exc:
        code = EXIT_USAGE
        report["error"] = str(exc)
    except ResourceLimitError as exc:
        code = EXIT_LIMIT
        report["error"] = str(exc)
        report["partial"] = exc.partial
    report["exit_code"] = code
    if not args.no_timing:
        report["timing"] = {"seconds": round(time.perf_counter() - start, 6)}
    stdout.write(json.dumps(report, sort_keys=True, indent=2) + "\n")
    return code


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
