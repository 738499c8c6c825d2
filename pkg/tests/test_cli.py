"""Golden-file tests for the command line.

Set ``NODALK_REGEN=1`` to rewrite the frozen outputs after an intended change.
"""
import io
import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from nodalk.cli import EXIT_INPUT, EXIT_INVARIANT, EXIT_NUMERICAL, EXIT_OK, main
from nodalk.differentials import AnnulusKDifferential

GOLDEN = Path(__file__).parent / "golden"
REGEN = os.environ.get("NODALK_REGEN") == "1"

CASES = {
    "decompose_constant": ["decompose", "--input", "constant.json"],
    "decompose_alpha": ["decompose", "--input", "alpha_pullback.json"],
    "decompose_random": ["decompose", "--input", "random_differential.json", "--grid", "128"],
    "extend_z_plus_w": ["extend", "--input", "z_plus_w_samples.json", "--m-deg", "2", "--n-deg", "2"],
    "zeros_squared": ["zeros", "--input", "z_plus_w_squared.json",
                      "--t-list=-1e-2,0:1e-3,1e-4,1e-6"],
    "collar_sweep": ["collar", "--t-list", "1e-2,1e-4,1e-6,1e-8", "--grid", "9"],
    "verify": ["verify", "--seed", "0"],
}


def run(argv, tmp_path=None):
    argv = [a if not a.endswith(".json") else str(GOLDEN / a) for a in argv]
    sidecar = None
    if tmp_path is not None:
        sidecar = tmp_path / "out.json"
        argv = argv + ["--output", str(sidecar)]
    out = io.StringIO()
    code = main(argv, out)
    doc = json.loads(sidecar.read_text()) if sidecar and sidecar.exists() else None
    return code, out.getvalue(), doc


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(name, tmp_path):
    code, text, doc = run(CASES[name], tmp_path)
    assert code == EXIT_OK
    stdout_file, sidecar_file = GOLDEN / f"{name}.out", GOLDEN / f"{name}.sidecar.json"
    if REGEN:
        stdout_file.write_text(text)
        sidecar_file.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    assert text == stdout_file.read_text()
    assert doc == json.loads(sidecar_file.read_text())


class TestReports:
    def test_constant_is_f0_only(self, tmp_path):
        _, _, doc = run(CASES["decompose_constant"], tmp_path)
        assert doc["f0"] == [3.0, 0.0]
        assert doc["plus"]["coeffs"] == [] and doc["minus"]["coeffs"] == []

    def test_alpha_pullback(self, tmp_path):
        _, _, doc = run(CASES["decompose_alpha"], tmp_path)
        assert doc["f0"] == [2.0, 0.0] and doc["residue"] == [2.0, 0.0]

    def test_extend_recovers_z_plus_w(self, tmp_path):
        _, _, doc = run(CASES["extend_z_plus_w"], tmp_path)
        coeffs = doc["series"]["coeffs"]
        assert abs(coeffs[1][0][0] - 1) <= 1e-14 and abs(coeffs[0][1][0] - 1) <= 1e-14
        assert doc["nodal"]["residue_matching"] is True

    def test_zeros_squared(self, tmp_path):
        _, _, doc = run(CASES["zeros_squared"], tmp_path)
        assert doc["counts"] == [4, 4, 4, 4] and doc["passed"] is True
        assert doc["branches"]["z"]["order_at_origin"] == 2
        assert doc["branches"]["w"]["order_at_origin"] == 2

    def test_verify_all_pass(self, tmp_path):
        _, _, doc = run(CASES["verify"], tmp_path)
        assert all(r["passed"] for r in doc["results"]) and "counterexample" not in doc


def test_random_fixture_round_trip():
    doc = json.loads((GOLDEN / "random_differential.json").read_text())
    assert AnnulusKDifferential.from_json(doc).to_json() == doc


@pytest.mark.parametrize("name", ["decompose_random", "verify", "collar_sweep"])
def test_determinism(name, tmp_path):
    first = run(CASES[name], tmp_path)
    second = run(CASES[name], tmp_path)
    assert first == second


def test_seed_changes_verify_values():
    _, a, _ = run(["verify", "--seed", "1"])
    _, b, _ = run(["verify", "--seed", "2"])
    assert a != b


class TestExitCodes:
    def test_malformed_json(self):
        assert run(["decompose", "--input", "malformed.json"])[0] == EXIT_INPUT

    def test_missing_input(self):
        assert run(["extend"])[0] == EXIT_INPUT

    def test_wrong_schema(self):
        assert run(["extend", "--input", "constant.json"])[0] == EXIT_INPUT

    def test_bad_t_list(self):
        assert run(["collar", "--t-list", "abc"])[0] == EXIT_INPUT

    def test_bad_flags(self):
        assert run(["decompose", "--k", "0", "--input", "constant.json"])[0] == EXIT_INPUT
        assert run(["verify", "--tol", "-1"])[0] == EXIT_INPUT
        assert run(["frobnicate"])[0] == EXIT_INPUT

    def test_aliasing(self):
        code = run(["extend", "--input", "z_plus_w_samples.json", "--m-deg", "20"])[0]
        assert code == EXIT_NUMERICAL

    def test_escaping_zeros_fail_constancy(self, tmp_path):
        code, text, doc = run(["zeros", "--input", "escaping_zeros.json",
                               "--t-list", "1e-2,1e-4,1e-6"], tmp_path)
        assert code == EXIT_INVARIANT and doc["passed"] is False
        assert "NOT constant" in text

    def test_degenerate_branch_abstains(self, tmp_path):
        code, _, doc = run(["zeros", "--input", "example_one.json", "--t-list", "1e-2,1e-3"],
                           tmp_path)
        assert code == EXIT_OK and doc["passed"] is None and doc["degenerate"] == ["w"]

    def test_empty_collar(self):
        assert run(["collar", "--t-list", "0.4", "--rho", "0.5"])[0] == EXIT_INPUT


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "nodalk", "decompose", "--input",
                           str(GOLDEN / "constant.json")], capture_output=True, text=True)
    assert proc.returncode == 0 and "f0 0 3 0" in proc.stdout
