import json

import pytest

from fuzzbound import automaton_to_json
from fuzzbound.cli import run

from conftest import chain_automaton, chain_automaton_variant


@pytest.fixture
def files(tmp_path):
    left = tmp_path / "left.json"
    right = tmp_path / "right.json"
    left.write_text(json.dumps(automaton_to_json(chain_automaton())))
    right.write_text(json.dumps(automaton_to_json(chain_automaton_variant())))
    return str(left), str(right)


def run_json(capsys, argv):
    code = run(argv)
    out = capsys.readouterr().out
    return code, (json.loads(out) if out else None)


class TestDepthBounded:
    def test_lukasiewicz_depth_one(self, files, capsys):
        left, right = files
        code, doc = run_json(capsys, [
            "dbsim", "--left", left, "--right", right,
            "--depth", "1", "--tnorm", "lukasiewicz"])
        assert code == 0
        named = doc["phi_k_by_name"]
        assert named["u"]["u'"] == pytest.approx(0.9, abs=1e-9)
        assert named["u"]["v'"] == pytest.approx(0.8, abs=1e-9)
        assert named["v"]["v'"] == pytest.approx(0.7, abs=1e-9)
        assert doc["k"] == 1 and doc["mode"] == "simulation"

    def test_depth_zero_is_terminal_residuum(self, files, capsys):
        left, right = files
        code, doc = run_json(capsys, [
            "dbsim", "--left", left, "--right", right,
            "--depth", "0", "--tnorm", "lukasiewicz"])
        assert code == 0
        assert doc["phi_k_by_name"]["v"]["v'"] == pytest.approx(0.8, abs=1e-9)

    def test_dbbisim(self, files, capsys):
        left, right = files
        code, doc = run_json(capsys, [
            "dbbisim", "--left", left, "--right", right,
            "--depth", "1", "--tnorm", "lukasiewicz"])
        assert code == 0
        named = doc["phi_k_by_name"]
        assert named["u"]["u'"] == pytest.approx(0.7, abs=1e-9)
        assert named["u"]["v'"] == pytest.approx(0.2, abs=1e-9)

    def test_trace_flag(self, files, capsys):
        left, right = files
        code, doc = run_json(capsys, [
            "dbsim", "--left", left, "--right", right, "--depth", "2",
            "--tnorm", "godel", "--trace"])
        assert code == 0
        assert "trace" in doc and len(doc["trace"]) >= 2

    def test_missing_file(self, files, capsys):
        _, right = files
        code = run(["dbsim", "--left", "/nonexistent/a.json",
                    "--right", right, "--depth", "1"])
        assert code == 1
        assert "cannot read" in capsys.readouterr().err

    def test_malformed_json(self, tmp_path, files, capsys):
        _, right = files
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        assert run(["dbsim", "--left", str(bad), "--right", right,
                    "--depth", "1"]) == 1

    def test_alphabet_mismatch(self, tmp_path, files, capsys):
        left, _ = files
        doc = automaton_to_json(chain_automaton_variant())
        doc["alphabet"] = ["t"]
        doc["transitions"] = [dict(t, symbol="t") for t in doc["transitions"]]
        other = tmp_path / "other.json"
        other.write_text(json.dumps(doc))
        assert run(["dbsim", "--left", left, "--right", str(other),
                    "--depth", "1"]) == 2

    def test_negative_depth(self, files):
        left, right = files
        assert run(["dbsim", "--left", left, "--right", right,
                    "--depth", "-2"]) == 1

    def test_unknown_tnorm(self, files):
        left, right = files
        assert run(["dbsim", "--left", left, "--right", right,
                    "--depth", "1", "--tnorm", "hamacher"]) == 1

    def test_output_file_and_determinism(self, files, tmp_path, capsys):
        left, right = files
        out1 = tmp_path / "r1.json"
        out2 = tmp_path / "r2.json"
        for out in (out1, out2):
            assert run(["dbsim", "--left", left, "--right", right,
                        "--depth", "3", "--tnorm", "product",
                        "--output", str(out)]) == 0
        assert out1.read_bytes() == out2.read_bytes()

    def test_numbers_rounded_to_12_significant_digits(self, files, capsys):
        left, right = files
        code, doc = run_json(capsys, [
            "dbsim", "--left", left, "--right", right,
            "--depth", "1", "--tnorm", "lukasiewicz"])
        assert code == 0
        assert doc["phi_k_by_name"]["v"]["v'"] == 0.7


class TestGreatest:
    def test_godel_fixpoint(self, files, capsys):
        left, right = files
        code, doc = run_json(capsys, [
            "greatest", "--left", left, "--right", right, "--tnorm", "godel"])
        assert code == 0
        assert doc["status"] == "fixpoint"
        assert doc["phi_k_by_name"]["v"]["v'"] == pytest.approx(0.4, abs=1e-9)
        assert doc["norms"][-1] == pytest.approx(1.0, abs=1e-9)

    def test_product_approximate(self, files, capsys):
        left, right = files
        code, doc = run_json(capsys, [
            "greatest", "--left", left, "--right", right, "--tnorm", "product",
            "--mode", "sim", "--max-iters", "200", "--tol", "1e-6"])
        assert code == 0
        assert doc["status"] == "tol"
        assert all(entry[2] <= 1e-4 for entry in doc["phi_k"]["entries"])

    def test_bisim_mode(self, files, capsys):
        left, right = files
        code, doc = run_json(capsys, [
            "greatest", "--left", left, "--right", right,
            "--tnorm", "lukasiewicz", "--mode", "bisim"])
        assert code == 0
        assert doc["phi_k_by_name"]["u"]["u'"] == pytest.approx(0.5, abs=1e-9)


class TestCheck:
    def test_simulation_relation(self, files, tmp_path, capsys):
        left, right = files
        rel = tmp_path / "rel.json"
        rel.write_text(json.dumps({
            "rows": 2, "cols": 2,
            "entries": [[0, 0, 1.0], [0, 1, 1.0], [1, 1, 0.4]]}))
        code, doc = run_json(capsys, [
            "check", "--left", left, "--right", right,
            "--relation", str(rel), "--mode", "sim", "--tnorm", "godel"])
        assert code == 0 and doc["ok"] is True

    def test_raised_relation_fails_check(self, files, tmp_path, capsys):
        left, right = files
        rel = tmp_path / "rel.json"
        rel.write_text(json.dumps({
            "rows": 2, "cols": 2,
            "entries": [[0, 0, 1.0], [0, 1, 1.0], [1, 1, 0.5]]}))
        code, doc = run_json(capsys, [
            "check", "--left", left, "--right", right,
            "--relation", str(rel), "--mode", "sim", "--tnorm", "godel"])
        assert code == 0 and doc["ok"] is False

    def test_prefix_check_accepts_trace_document(self, files, tmp_path, capsys):
        left, right = files
        trace_file = tmp_path / "trace.json"
        assert run(["dbsim", "--left", left, "--right", right, "--depth", "4",
                    "--tnorm", "lukasiewicz", "--trace",
                    "--output", str(trace_file)]) == 0
        code, doc = run_json(capsys, [
            "check", "--left", left, "--right", right,
            "--relation", str(trace_file), "--mode", "dbsim",
            "--tnorm", "lukasiewicz"])
        assert code == 0 and doc["ok"] is True

    def test_prefix_check_accepts_array(self, files, tmp_path, capsys):
        left, right = files
        prefix = tmp_path / "prefix.json"
        rel = {"rows": 2, "cols": 2, "entries": []}
        prefix.write_text(json.dumps([rel, rel]))
        code, doc = run_json(capsys, [
            "check", "--left", left, "--right", right,
            "--relation", str(prefix), "--mode", "dbbisim"])
        assert code == 0 and doc["ok"] is True

    def test_wrong_shape_is_semantic_error(self, files, tmp_path):
        left, right = files
        rel = tmp_path / "rel.json"
        rel.write_text(json.dumps({"rows": 3, "cols": 2, "entries": []}))
        assert run(["check", "--left", left, "--right", right,
                    "--relation", str(rel), "--mode", "sim"]) == 2

    def test_eps_flag_loosens_comparisons(self, files, tmp_path, capsys):
        left, right = files
        rel = tmp_path / "rel.json"
        rel.write_text(json.dumps({
            "rows": 2, "cols": 2,
            "entries": [[0, 0, 1.0], [0, 1, 1.0], [1, 1, 0.4005]]}))
        argv = ["check", "--left", left, "--right", right,
                "--relation", str(rel), "--mode", "sim", "--tnorm", "godel"]
        _, strict = run_json(capsys, argv)
        _, loose = run_json(capsys, argv + ["--eps", "0.01"])
        assert strict["ok"] is False and loose["ok"] is True


class TestLang:
    def test_single_word(self, files, capsys):
        left, _ = files
        code, doc = run_json(capsys, [
            "lang", "--left", left, "--word", "s", "--tnorm", "godel"])
        assert code == 0
        assert doc["degree"] == pytest.approx(0.4, abs=1e-9)

    def test_bounded_language(self, files, capsys):
        left, _ = files
        code, doc = run_json(capsys, [
            "lang", "--left", left, "--max-len", "1", "--tnorm", "godel"])
        assert code == 0
        assert doc["language"] == {"": 0.0, "s": 0.4}

    def test_unknown_symbol(self, files):
        left, _ = files
        assert run(["lang", "--left", left, "--word", "t"]) == 2

    def test_requires_exactly_one_selector(self, files):
        left, _ = files
        assert run(["lang", "--left", left]) == 1
        assert run(["lang", "--left", left, "--word", "s",
                    "--max-len", "2"]) == 1

    def test_word_cap_exit_code(self, tmp_path):
        doc = {
            "alphabet": ["a", "b"],
            "states": ["q"],
            "initial": {"q": 1.0},
            "terminal": {"q": 1.0},
            "transitions": [
                {"from": "q", "symbol": "a", "to": "q", "degree": 1.0},
                {"from": "q", "symbol": "b", "to": "q", "degree": 0.5},
            ],
        }
        path = tmp_path / "two.json"
        path.write_text(json.dumps(doc))
        assert run(["lang", "--left", str(path), "--max-len", "25"]) == 3


class TestFormula:
    def test_worked_formula_product(self, files, capsys):
        _, right = files
        code, doc = run_json(capsys, [
            "formula", "--left", right, "--expr", "(s . (s . (0.9 -> T)))",
            "--tnorm", "product"])
        assert code == 0
        assert doc["values"]["u'"] == pytest.approx(8 / 45, abs=1e-9)

    def test_syntax_error(self, files):
        left, _ = files
        assert run(["formula", "--left", left, "--expr", "(s . T"]) == 1

    def test_unknown_symbol(self, files):
        left, _ = files
        assert run(["formula", "--left", left, "--expr", "(t . T)"]) == 2


class TestEnvironment:
    def test_env_var_selects_structure(self, files, capsys, monkeypatch):
        left, right = files
        monkeypatch.setenv("FUZZBOUND_TNORM", "lukasiewicz")
        code, doc = run_json(capsys, [
            "dbsim", "--left", left, "--right", right, "--depth", "1"])
        assert code == 0
        assert doc["phi_k_by_name"]["u"]["u'"] == pytest.approx(0.9, abs=1e-9)

    def test_flag_overrides_env(self, files, capsys, monkeypatch):
        left, right = files
        monkeypatch.setenv("FUZZBOUND_TNORM", "lukasiewicz")
        code, doc = run_json(capsys, [
            "dbsim", "--left", left, "--right", right, "--depth", "1",
            "--tnorm", "godel"])
        assert code == 0
        assert doc["phi_k_by_name"]["u"]["u'"] == pytest.approx(1.0, abs=1e-9)

    def test_usage_error_exit_code(self, files):
        assert run(["dbsim", "--depth", "1"]) == 1
        assert run(["frobnicate"]) == 1
