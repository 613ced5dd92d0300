"""Command line interface: output shapes, exit codes, file handling."""

from __future__ import annotations

import json

import pytest

from probalc.cli import EXIT_OK, EXIT_PARSE, EXIT_RESOURCE, main
from probalc.parser import parse_kb

from conftest import CRIME_TEXT

QUERY = "raskolnikov : GreatMan"


@pytest.fixture
def crime_path(tmp_path):
    path = tmp_path / "crime.kb"
    path.write_text(CRIME_TEXT)
    return path


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestQueryCommand:
    def test_human_output(self, capsys, crime_path):
        code, out, err = run(capsys, "query", str(crime_path), QUERY)
        assert code == EXIT_OK
        assert err == ""
        assert "probability: 0.176" in out
        assert "justifications (2):" in out
        assert "justification 1:" in out
        assert "axiom 1: 0.2 :: Nihilist <= GreatMan" in out
        assert "axiom 3: 0.6 :: (raskolnikov, alyona) : killed" in out
        assert "formula: (x1 & x2) | (x1 & x3)" in out
        assert "bdd nodes: 3" in out
        assert "time:" in out and "ms" in out

    def test_json_output(self, capsys, crime_path):
        code, out, err = run(capsys, "query", str(crime_path), QUERY, "--json")
        assert code == EXIT_OK
        payload = json.loads(out)
        assert abs(payload["probability"] - 0.176) < 1e-12
        assert payload["justifications"] == [[0, 1, 2], [0, 1, 3]]
        assert payload["formula"] == "(x1 & x2) | (x1 & x3)"
        assert payload["bdd_nodes"] == 3
        assert payload["time_ms"] >= 0.0
        assert payload["config"]["method"] == "glassbox"
        assert payload["config"]["engine"] == "bdd"

    def test_json_output_is_stable_except_for_timing(self, capsys, crime_path):
        payloads = []
        for _ in range(2):
            _, out, _ = run(capsys, "query", str(crime_path), QUERY, "--json")
            payload = json.loads(out)
            payload.pop("time_ms")
            payloads.append(payload)
        assert payloads[0] == payloads[1]

    @pytest.mark.parametrize("method", ["glassbox", "blackbox"])
    @pytest.mark.parametrize("engine", ["bdd", "bruteforce"])
    def test_method_engine_combinations(self, capsys, crime_path, method, engine):
        code, out, _ = run(
            capsys,
            "query", str(crime_path), QUERY,
            "--method", method, "--engine", engine, "--json",
        )
        assert code == EXIT_OK
        payload = json.loads(out)
        assert abs(payload["probability"] - 0.176) < 1e-12
        assert payload["justifications"] == [[0, 1, 2], [0, 1, 3]]
        assert payload["bdd_nodes"] == (3 if engine == "bdd" else 0)

    def test_subsumption_query_text(self, capsys, tmp_path):
        path = tmp_path / "chain.kb"
        path.write_text("0.6 :: A <= B\n0.7 :: B <= C\n")
        code, out, _ = run(capsys, "query", str(path), "A <= C", "--json")
        assert code == EXIT_OK
        assert abs(json.loads(out)["probability"] - 0.42) < 1e-12

    def test_dot_export(self, capsys, crime_path, tmp_path):
        dot_path = tmp_path / "diagram.dot"
        code, _, _ = run(
            capsys, "query", str(crime_path), QUERY, "--dot", str(dot_path)
        )
        assert code == EXIT_OK
        dot = dot_path.read_text()
        assert dot.startswith("digraph bdd {")
        assert 'label="x1"' in dot

    def test_kb_parse_error(self, capsys, tmp_path):
        path = tmp_path / "broken.kb"
        path.write_text("A <=\n")
        code, out, err = run(capsys, "query", str(path), QUERY)
        assert code == EXIT_PARSE
        assert out == ""
        assert "parse error at 1:" in err

    def test_query_parse_error(self, capsys, crime_path):
        code, _, err = run(capsys, "query", str(crime_path), "a : ")
        assert code == EXIT_PARSE
        assert "parse error" in err

    def test_missing_kb_file(self, capsys, tmp_path):
        code, _, err = run(capsys, "query", str(tmp_path / "nope.kb"), QUERY)
        assert code == EXIT_PARSE
        assert "cannot read" in err

    def test_timeout_exit_code(self, capsys, crime_path):
        code, _, err = run(
            capsys, "query", str(crime_path), QUERY, "--timeout", "1e-9"
        )
        assert code == EXIT_RESOURCE
        assert "aborted" in err


class TestGenCommand:
    def test_chain_to_stdout(self, capsys):
        code, out, _ = run(capsys, "gen", "2")
        assert code == EXIT_OK
        kb = parse_kb(out)
        assert len(kb) == 6
        assert all(a.probability == 0.6 for a in kb.axioms)

    def test_chain_to_file(self, capsys, tmp_path):
        out_path = tmp_path / "chain.kb"
        code, out, _ = run(capsys, "gen", "3", "-o", str(out_path))
        assert code == EXIT_OK
        assert out == ""
        assert len(parse_kb(out_path.read_text())) == 9

    def test_random_kb_round_trips(self, capsys):
        code, out, _ = run(capsys, "gen", "--random", "--seed", "3")
        assert code == EXIT_OK
        kb = parse_kb(out)
        assert 3 <= len(kb) <= 10

    def test_random_is_seed_deterministic(self, capsys):
        _, first, _ = run(capsys, "gen", "--random", "--seed", "5")
        _, second, _ = run(capsys, "gen", "--random", "--seed", "5")
        assert first == second

    def test_missing_size_is_an_error(self, capsys):
        code, _, err = run(capsys, "gen")
        assert code == EXIT_PARSE
        assert "chain length" in err

    def test_rejects_zero_layers(self, capsys):
        with pytest.raises(SystemExit):
            main(["gen", "0"])


class TestBenchCommand:
    def test_table_output(self, capsys):
        code, out, _ = run(capsys, "bench", "4")
        assert code == EXIT_OK
        lines = out.strip().splitlines()
        assert lines[0].split() == ["n", "axioms", "justs", "bdd", "probability", "time_s"]
        assert len(lines) == 3
        row = lines[1].split()
        assert row[0] == "2" and row[1] == "6" and row[2] == "4"
        assert abs(float(row[4]) - 0.504**2) < 1e-9

    def test_json_rows(self, capsys):
        code, out, _ = run(capsys, "bench", "2", "--json")
        assert code == EXIT_OK
        rows = json.loads(out.strip().splitlines()[-1])
        assert rows[0]["n"] == 2
        assert rows[0]["justifications"] == 4
        assert abs(rows[0]["probability"] - 0.504**2) < 1e-9

    def test_timeout_rows_print_dashes(self, capsys):
        code, out, _ = run(capsys, "bench", "4", "--timeout", "1e-9")
        assert code == EXIT_OK
        assert "--" in out


class TestCheckCommand:
    def test_consistent_kb(self, capsys, crime_path):
        code, out, _ = run(capsys, "check", str(crime_path))
        assert code == EXIT_OK
        assert out.strip() == "consistent"

    def test_inconsistent_kb(self, capsys, tmp_path):
        path = tmp_path / "bad.kb"
        path.write_text("a : A\na : not A\n")
        code, out, _ = run(capsys, "check", str(path))
        assert code == EXIT_OK
        assert out.strip() == "inconsistent"

    def test_json_flag(self, capsys, crime_path):
        code, out, _ = run(capsys, "check", str(crime_path), "--json")
        assert code == EXIT_OK
        assert json.loads(out) == {"consistent": True}

    def test_parse_error_exit_code(self, capsys, tmp_path):
        path = tmp_path / "broken.kb"
        path.write_text("0.5 ::\n")
        code, _, err = run(capsys, "check", str(path))
        assert code == EXIT_PARSE
        assert "parse error" in err


class TestEntrypoint:
    def test_installed_script_runs(self):
        import subprocess

        result = subprocess.run(
            ["probalc", "gen", "1"], capture_output=True, text=True
        )
        assert result.returncode == EXIT_OK
        assert "B0 <= P1 and Q1" in result.stdout
