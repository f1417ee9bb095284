import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from symdca import documents, zoo
from symdca.cli import main

FIXTURES = Path(__file__).parent / "fixtures"
MOD3 = str(FIXTURES / "mod3.json")
DETECTOR = str(FIXTURES / "ab-detector.json")
PERTURBED = str(FIXTURES / "mod3-perturbed.dca.json")


def run(*argv):
    out = io.StringIO()
    code = main(["--no-timing", *map(str, argv)], stdout=out)
    return code, json.loads(out.getvalue())


def test_minimize(tmp_path):
    out = tmp_path / "min.json"
    code, rep = run("minimize", FIXTURES / "split-mod3.json", out)
    assert code == 0
    assert (rep["states_before"], rep["states_after"], rep["minimal"]) == (4, 3, True)
    assert rep["state_map"] == {"0": "0", "1": "1", "1'": "1", "2": "2"}
    assert documents.load(out).num_states == 3


def test_check_symmetry():
    code, rep = run("check-symmetry", DETECTOR)
    assert code == 1
    assert (rep["counterexample"]["word"], rep["counterexample"]["permuted_word"]) == ("ab", "ba")
    code, rep = run("check-symmetry", FIXTURES / "split-mod3.json")
    assert code == 0
    assert rep["symmetric"] and not rep["transitions_commute"]


def test_synthesize_then_verify(tmp_path):
    out = tmp_path / "dca.json"
    code, rep = run("synthesize", MOD3, out, "--method", "symmetric")
    assert code == 0 and rep["dca_states"] == 3
    assert out.read_text() == (FIXTURES / "mod3.dca.json").read_text()
    code, rep = run("verify", MOD3, out)
    assert code == 0 and rep["verdict"] == "pass"


def test_synthesize_refuses_detector(tmp_path):
    code, rep = run("synthesize", DETECTOR, tmp_path / "x.json")
    assert code == 1
    assert rep["counterexample"]["word"] == "ab"
    assert not (tmp_path / "x.json").exists()


def test_synthesize_composition(tmp_path):
    out = tmp_path / "comp.json"
    code, rep = run("synthesize", FIXTURES / "denes-3.json", out, "--method", "composition")
    assert code == 0 and rep["dca_states"] == 27
    code, rep = run("verify", FIXTURES / "denes-3.json", out, "--trials", "500")
    assert code == 0
    code, rep = run("synthesize", FIXTURES / "denes-3.json", out, "--method", "composition", "--cap", "5")
    assert code == 3 and rep["partial"] == 5


def test_run():
    code, rep = run("run", MOD3, "--word", "aab")
    assert (code, rep["output"], rep["final_state"]) == (0, "2", "2")
    for strategy in ("fold", "tree", "random"):
        code, rep = run("run", FIXTURES / "mod3.dca.json", "--word", "aab", "--strategy", strategy, "--seed", "4")
        assert (code, rep["output"]) == (0, "2")
    code, rep = run("run", MOD3, "--word", "abz")
    assert code == 2


def test_verify_failure():
    code, rep = run("verify", MOD3, PERTURBED, "--trials", "10")
    assert code == 1
    assert rep["first_failure"]["word"] == "ba"


def test_check_dca():
    code, rep = run("check-dca", FIXTURES / "mod3.dca.json")
    assert code == 0 and rep["well_defined"]
    code, rep = run("check-dca", PERTURBED, "--max-len", "4")
    assert code == 1
    assert rep["witness"]["output1"] != rep["witness"]["output2"]
    code, rep = run("check-dca", PERTURBED, "--budget", "3")
    assert code == 3


def test_lowerbound(tmp_path):
    code, rep = run("lowerbound", "--n", "3")
    assert code == 0
    assert (rep["closure_size"], rep["expected"], rep["all_pairs_separated"]) == (27, 27, True)
    small = tmp_path / "small.json"
    documents.dump(zoo.perturbed_mod3_dca(), small)
    code, rep = run("lowerbound", "--n", "2", small)
    assert code == 2  # alphabet mismatch
    from candidates import cyclic_dca
    documents.dump(cyclic_dca(2, 2), small)
    code, rep = run("lowerbound", "--n", "2", small)
    assert code == 1
    assert rep["pigeonhole"]["verdict"] == "certificate"
    assert rep["pigeonhole"]["certificate"]["verified"]
    full = tmp_path / "full.json"
    run("synthesize", FIXTURES / "denes-2.json", full, "--method", "composition")
    code, rep = run("lowerbound", "--n", "2", full)
    assert code == 0 and rep["pigeonhole"]["verdict"] == "no collision found"


def test_bench():
    code, rep = run("bench", MOD3, "--length", "4096", "--trials", "2")
    assert code == 0
    assert rep["symmetric"]["cells_per_value"] == 1
    assert rep["composition"]["cells_per_value"] == 3
    assert rep["cells_per_value_ratio"] == 3
    code, rep = run("bench", DETECTOR, "--length", "64", "--trials", "1")
    assert code == 1


@pytest.mark.parametrize("argv", [[], ["run", MOD3], ["nosuch"], ["minimize", "/nonexistent.json", "/tmp/x"]])
def test_usage_errors(argv):
    out = io.StringIO()
    assert main(argv, stdout=out) == 2


def test_parse_error_reported(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"kind": "fsa",')
    code, rep = run("check-symmetry", bad)
    assert code == 2 and "line 1" in rep["error"]


def test_timing_field():
    out = io.StringIO()
    main(["run", MOD3, "--word", "a"], stdout=out)
    assert "seconds" in json.loads(out.getvalue())["timing"]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "symdca", "--no-timing", "check-symmetry", DETECTOR],
                          capture_output=True, text=True)
    assert proc.returncode == 1
    assert json.loads(proc.stdout)["symmetric"] is False
