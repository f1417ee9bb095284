"""Acceptance run: one test per criterion, each reported as a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py``; the summary section
"acceptance criteria" lists the verdicts with their wall-clock times.
"""

import io
import json
import random
import time
from pathlib import Path

import pytest

from conftest import all_words
from candidates import undersized
from symdca import documents, zoo
from symdca.cli import main
from symdca.core import eval_fsa, run_word, word_function
from symdca.engine import (
    EquivalenceConfig,
    SplitStrategy,
    chi_enumerate,
    check_well_defined,
    eval_dca_traced,
    verify_equivalence,
)
from symdca.lowerbound import (
    build_hard_fsa,
    denes_generators,
    pigeonhole_demo,
    semigroup_closure,
    separating_extension,
    verify_certificate,
)
from symdca.minimize import distinguishing_word, is_minimal, minimize, refine_partition
from symdca.symmetry import brute_force_symmetric, find_symmetry_counterexample, is_symmetric
from symdca.synthesis import (
    FunctionalDca,
    materialize_reachable,
    synthesize_composition_dca,
    synthesize_symmetric_dca,
)
from test_minimize import classes, naive_classes

FIXTURES = Path(__file__).parent / "fixtures"


class Stopwatch:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.start


def symmetric():
    fixtures = zoo.symmetric_fixtures()
    names = {f.name for f in fixtures}
    assert len(fixtures) >= 6
    assert {"mod3", "sat2", "threshold-a2-b1", "unary-mod4"} <= names
    return fixtures


@pytest.mark.criterion(1, "symmetric synthesis never adds states")
def test_ac1_size_bound():
    fixtures = symmetric()
    with Stopwatch() as sw:
        sizes = [(f.num_states, synthesize_symmetric_dca(f).dca.num_states) for f in fixtures]
    for fsa_states, dca_states in sizes:
        assert dca_states <= fsa_states
    assert sw.seconds < 1.0


@pytest.mark.criterion(2, "symmetric synthesis is equivalent on every fixture")
def test_ac2_symmetric_equivalence():
    with Stopwatch() as sw:
        for fsa in symmetric():
            report = verify_equivalence(fsa, synthesize_symmetric_dca(fsa).dca, EquivalenceConfig())
            assert report.exhaustive_max_len == 8
            assert report.num_random_trials == 10_000 and report.random_max_len == 64
            assert len(report.strategies) == 5
            assert report.passed, (fsa.name, report.first_failure)
    assert sw.seconds < 30


@pytest.mark.criterion(3, "composition construction is equivalent on every fixture")
def test_ac3_composition_equivalence():
    fixtures = zoo.all_fixtures()
    assert {"ab-detector", "denes-2", "denes-3"} <= {f.name for f in fixtures}
    with Stopwatch() as sw:
        for fsa in fixtures:
            report = verify_equivalence(fsa, synthesize_composition_dca(fsa), EquivalenceConfig())
            assert report.exhaustive_max_len == 8
            assert report.passed, (fsa.name, report.first_failure)
    assert sw.seconds < 60


@pytest.mark.criterion(4, "well-definedness holds for synthesized automata and fails on the perturbed table")
def test_ac4_well_defined():
    with Stopwatch() as sw:
        for fsa in zoo.all_fixtures():
            comp = materialize_reachable(FunctionalDca(fsa))
            assert check_well_defined(comp, max_len=6) is None, fsa.name
            if is_symmetric(fsa):
                assert check_well_defined(synthesize_symmetric_dca(fsa).dca, max_len=6) is None, fsa.name
        bad = zoo.perturbed_mod3_dca()
        witness = check_well_defined(bad, max_len=6)
        assert witness is not None
        assert witness.verify(bad)
        assert witness.out1 != witness.out2
    assert sw.seconds < 60


@pytest.mark.criterion(5, "representative tables and singleton final-state sets")
def test_ac5_representative_oracles():
    with Stopwatch() as sw:
        for fsa in symmetric():
            syn = synthesize_symmetric_dca(fsa)
            m = syn.minimization.minimized
            rep = syn.representatives.rep
            dca = syn.dca
            k = len(m.alphabet)
            for w in all_words(k, 6):
                f_w = word_function(m, w)
                target = f_w[m.initial]
                assert f_w == word_function(m, rep[target]), (m.name, w)
                assert chi_enumerate(dca, w).states == frozenset({target}), (m.name, w)
    assert sw.seconds < 30


@pytest.mark.criterion(6, "commutativity test agrees with brute force in both directions")
def test_ac6_symmetry_decision():
    fixtures = [f for f in zoo.all_fixtures() if f.num_states <= 5 and len(f.alphabet) <= 3]
    names = {f.name for f in fixtures}
    assert "split-mod3" in names  # non-minimal, non-commuting, symmetric
    split = zoo.split_mod3()
    assert not is_minimal(split) and is_symmetric(split)
    seen_counterexample = False
    for fsa in fixtures:
        assert is_symmetric(fsa) == brute_force_symmetric(fsa, max_len=6), fsa.name
        cx = find_symmetry_counterexample(fsa)
        if cx is not None:
            seen_counterexample = True
            assert cx.verify(fsa), fsa.name
    assert seen_counterexample


@pytest.mark.criterion(7, "minimization is correct and matches the quadratic oracle")
def test_ac7_minimization():
    for fsa in zoo.all_fixtures():
        assert classes(refine_partition(fsa)) == naive_classes(fsa), fsa.name
        res = minimize(fsa)
        m = res.minimized
        assert is_minimal(m)
        for p in range(m.num_states):
            for q in range(p + 1, m.num_states):
                assert distinguishing_word(m, p, q) is not None
        if len(fsa.alphabet) ** 8 > 100_000:
            pytest.fail(f"{fsa.name}: alphabet too large for length-8 sweep")
        for w in all_words(len(fsa.alphabet), 8):
            assert eval_fsa(fsa, w) == eval_fsa(m, w), (fsa.name, w)


@pytest.mark.criterion(8, "transformation semigroup closure, separation and pigeonhole certificates")
def test_ac8_lower_bound():
    with Stopwatch() as sw:
        assert [len(semigroup_closure(denes_generators(n))) for n in (1, 2, 3, 4)] == [1, 4, 27, 256]
        for n in (1, 2, 3, 4):
            atlas = semigroup_closure(denes_generators(n))
            fsa = build_hard_fsa(n)
            for g in atlas.order:
                assert word_function(fsa, atlas.words[g]) == g
        for n in (2, 3):
            atlas = semigroup_closure(denes_generators(n))
            fsa = build_hard_fsa(n)
            for g1 in atlas.order:
                for g2 in atlas.order:
                    if g1 == g2:
                        continue
                    h = separating_extension(fsa, atlas, g1, g2)
                    assert h is not None
                    assert eval_fsa(fsa, atlas.words[h] + atlas.words[g1]) != eval_fsa(
                        fsa, atlas.words[h] + atlas.words[g2])
            candidates = undersized(n)
            assert candidates and all(c.num_states < n**n for c in candidates)
            for cand in candidates:
                verdict = pigeonhole_demo(n, cand, atlas)
                assert verdict.verdict == "certificate", cand.name
                assert verdict.certificate.candidate_wrong
                assert verify_certificate(n, cand, verdict.certificate), cand.name
    assert sw.seconds < 120


def footprint(dca, words):
    traces = [eval_dca_traced(dca, w, SplitStrategy.tree()) for w in words]
    return max(t.cells_per_value for t in traces)


@pytest.mark.criterion(9, "intermediate footprint ratio equals the state count")
def test_ac9_footprint():
    rng = random.Random(0)
    for fsa, expected in ((zoo.mod_counter(3), 3), (zoo.mod_counter(5), 5)):
        assert minimize(fsa).minimized.num_states == expected
        words = [tuple(rng.randrange(len(fsa.alphabet)) for _ in range(4096)) for _ in range(4)]
        sym = synthesize_symmetric_dca(fsa).dca
        comp = synthesize_composition_dca(fsa)
        for w in words:
            assert eval_dca_traced(sym, w).output == eval_fsa(fsa, w)
            assert eval_dca_traced(comp, w).output == eval_fsa(fsa, w)
        assert footprint(sym, words) == 1
        assert footprint(comp, words) == expected
        out = io.StringIO()
        assert main(["--no-timing", "bench", str(FIXTURES / f"{fsa.name}.json"), "--length", "4096"],
                    stdout=out) == 0
        assert json.loads(out.getvalue())["cells_per_value_ratio"] == expected


def every_command(tmp):
    mod3 = str(FIXTURES / "mod3.json")
    dca = str(FIXTURES / "mod3.dca.json")
    cand = tmp / "cand.json"
    if not cand.exists():
        documents.dump(undersized(2)[0], cand)
    return [
        ["minimize", str(FIXTURES / "split-mod3.json"), str(tmp / "min.json")],
        ["check-symmetry", str(FIXTURES / "ab-detector.json")],
        ["synthesize", mod3, str(tmp / "sym.json")],
        ["synthesize", str(FIXTURES / "denes-2.json"), str(tmp / "comp.json"), "--method", "composition"],
        ["run", dca, "--word", "abaabba", "--strategy", "random", "--seed", "7"],
        ["verify", mod3, dca, "--seed", "3", "--trials", "2000"],
        ["verify", mod3, str(FIXTURES / "mod3-perturbed.dca.json"), "--seed", "3"],
        ["check-dca", str(FIXTURES / "mod3-perturbed.dca.json")],
        ["lowerbound", "--n", "2", str(cand)],
        ["bench", mod3, "--length", "512", "--seed", "5"],
    ]


def capture(tmp, argv):
    out = io.StringIO()
    code = main(["--no-timing", *argv], stdout=out)
    written = {p.name: p.read_bytes() for p in sorted(tmp.glob("*.json"))}
    return code, out.getvalue(), written


@pytest.mark.criterion(10, "repeated runs give bit-identical reports")
def test_ac10_determinism(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    a.mkdir()
    b.mkdir()
    commands = {sub[0] for sub in every_command(a)}
    assert commands == {"minimize", "check-symmetry", "synthesize", "run", "verify",
                        "check-dca", "lowerbound", "bench"}
    for argv_a, argv_b in zip(every_command(a), every_command(b)):
        first = capture(a, argv_a)
        second = capture(b, argv_b)
        report_a = first[1].replace(str(a), "<tmp>")
        report_b = second[1].replace(str(b), "<tmp>")
        assert first[0] == second[0], argv_a
        assert report_a == report_b, argv_a
        assert first[2] == second[2], argv_a
        assert "timing" not in json.loads(first[1])
