"""Tests for the specwb command line."""

import json

import pytest
from click.testing import CliRunner

from spectral_workbench import __version__
from spectral_workbench.core import AuditEngine, AuditReport
from spectral_workbench.main import (
    EXIT_CAP_EXCEEDED,
    EXIT_CONFIG_ERROR,
    EXIT_INPUT_ERROR,
    EXIT_SUCCESS,
    EXIT_THEOREM_REFUTED,
    cli,
)
from spectral_workbench.rings import make_product, make_zn
from spectral_workbench.utils import read_jsonl


@pytest.fixture
def runner():
    return CliRunner()


def run_json(runner, *args):
    """Invoke in quiet JSON mode and decode stdout."""
    result = runner.invoke(cli, ["-q", "--json-output", *args])
    return result, json.loads(result.output)


@pytest.fixture
def z2xz2_file(ring_file):
    return ring_file(make_product(make_zn(2), make_zn(2)), "z2xz2.txt")


def test_version(runner):
    result = runner.invoke(cli, ["--version"])
    assert result.exit_code == 0
    assert __version__ in result.output


def test_help_lists_commands(runner):
    result = runner.invoke(cli, ["--help"])
    assert result.exit_code == 0
    for command in ("audit", "claims", "dense", "hunt", "posets", "spectrum"):
        assert command in result.output


def test_missing_config_file(runner, tmp_path):
    """Test that a missing --config path exits with the config code."""
    result, payload = run_json(runner, "--config", str(tmp_path / "nope.yaml"), "claims")
    assert result.exit_code == EXIT_CONFIG_ERROR
    assert "Config file not found" in payload["error"]


def test_config_with_unknown_key(runner, tmp_path):
    path = tmp_path / "bad.yaml"
    path.write_text("max_rings: 3\n")
    result, payload = run_json(runner, "--config", str(path), "claims")
    assert result.exit_code == EXIT_CONFIG_ERROR
    assert payload["exit_code"] == EXIT_CONFIG_ERROR


class TestClaimsCommand:
    """Test the catalog listing."""

    def test_json(self, runner):
        result, payload = run_json(runner, "claims")
        assert result.exit_code == EXIT_SUCCESS
        ids = [c["id"] for c in payload["claims"]]
        assert ids[0] == "C1"
        assert len(ids) == 28
        assert all(c["instances"] for c in payload["claims"])

    def test_table(self, runner):
        result = runner.invoke(cli, ["claims"])
        assert result.exit_code == EXIT_SUCCESS
        assert "28 claims" in result.output


class TestSpectrumCommand:
    """Test prime listings for ring files."""

    def test_z6(self, runner, ring_file):
        """Test the two primes of Z_6."""
        path = ring_file(make_zn(6))
        result, payload = run_json(runner, "spectrum", "--ring", str(path))
        assert result.exit_code == EXIT_SUCCESS
        assert payload["size"] == 6
        primes = sorted(p["elements"] for p in payload["primes"])
        assert primes == [[0, 2, 4], [0, 3]]
        assert all(p["maximal"] and p["minimal"] for p in payload["primes"])
        assert payload["nilradical"] == [0]
        assert payload["pm"] is True

    def test_z4_nilradical(self, runner, ring_file):
        path = ring_file(make_zn(4))
        _, payload = run_json(runner, "spectrum", "--ring", str(path))
        assert payload["nilradical"] == [0, 2]
        assert payload["jacobson"] == [0, 2]

    def test_missing_ring_file(self, runner, tmp_path):
        result, payload = run_json(runner, "spectrum", "--ring", str(tmp_path / "nope.txt"))
        assert result.exit_code == EXIT_INPUT_ERROR
        assert "Input file not found" in payload["error"]

    def test_malformed_ring_file(self, runner, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("ring R\nsz 2\n")
        result, payload = run_json(runner, "spectrum", "--ring", str(path))
        assert result.exit_code == EXIT_INPUT_ERROR
        assert payload["error"].startswith("line 2:")

    def test_table(self, runner, ring_file):
        result = runner.invoke(cli, ["spectrum", "--ring", str(ring_file(make_zn(6)))])
        assert result.exit_code == EXIT_SUCCESS
        assert "Nilradical" in result.output


class TestDenseCommand:
    """Test the density decision on files."""

    def test_diagonal_not_dense(self, runner, tmp_path, z2xz2_file):
        """Test the diagonal of Z_2 x Z_2 and its witness."""
        sub = tmp_path / "diag.txt"
        sub.write_text("0 3\n")
        result, payload = run_json(runner, "dense", "--ambient", str(z2xz2_file), "--subring", str(sub))
        assert result.exit_code == EXIT_SUCCESS
        assert payload["dense"] is False
        assert payload["mode"] == "definition"
        assert payload["witness_fail"] == {"ideal": [0, 1], "b": 2}
        assert payload["contraction_injective"] is False

    def test_whole_ring_dense_in_primes_mode(self, runner, tmp_path, z2xz2_file):
        sub = tmp_path / "all.txt"
        sub.write_text("0 1 2 3\n")
        _, payload = run_json(
            runner, "dense", "--ambient", str(z2xz2_file), "--subring", str(sub), "--mode", "primes",
        )
        assert payload["dense"] is True
        assert payload["mode"] == "primes"
        assert payload["witness_fail"] is None
        assert payload["contraction_injective"] is True

    def test_not_a_subring(self, runner, tmp_path, z2xz2_file):
        """Test that a set without one is an input error."""
        sub = tmp_path / "bad.txt"
        sub.write_text("0 1\n")
        result, payload = run_json(runner, "dense", "--ambient", str(z2xz2_file), "--subring", str(sub))
        assert result.exit_code == EXIT_INPUT_ERROR
        assert "is not a subring" in payload["error"]

    def test_element_out_of_range(self, runner, tmp_path, z2xz2_file):
        sub = tmp_path / "bad.txt"
        sub.write_text("0 7\n")
        result, payload = run_json(runner, "dense", "--ambient", str(z2xz2_file), "--subring", str(sub))
        assert result.exit_code == EXIT_INPUT_ERROR
        assert "Element 7 out of range 0..3" in payload["error"]

    def test_human_output(self, runner, tmp_path, z2xz2_file):
        sub = tmp_path / "diag.txt"
        sub.write_text("0 3\n")
        result = runner.invoke(cli, ["dense", "--ambient", str(z2xz2_file), "--subring", str(sub)])
        assert result.exit_code == EXIT_SUCCESS
        assert "is not dense" in result.output


class TestPosetsCommand:
    """Test predicate counts over labeled posets."""

    def test_three_points(self, runner):
        """Test counts on the 19 labeled posets of 3 points."""
        result, payload = run_json(runner, "posets", "--n", "3", "--predicates", "pm,wcn")
        assert result.exit_code == EXIT_SUCCESS
        assert payload["posets"] == 19
        assert payload["counts"] == {"pm": 16, "wcn": 16}

    def test_list(self, runner):
        _, payload = run_json(runner, "posets", "--n", "2", "--predicates", "pm", "--list")
        assert payload["posets"] == 3
        assert len(payload["items"]) == 3
        assert all(item["pm"] for item in payload["items"])

    def test_cap(self, runner):
        result, payload = run_json(runner, "posets", "--n", "7")
        assert result.exit_code == EXIT_CAP_EXCEEDED
        assert "poset size 7 exceeds cap 6" in payload["error"]

    def test_unknown_predicate(self, runner):
        result, payload = run_json(runner, "posets", "--n", "2", "--predicates", "pm,t9")
        assert result.exit_code == EXIT_INPUT_ERROR
        assert "Unknown predicate" in payload["error"]


class TestAuditCommand:
    """Test audits end to end on tiny corpora."""

    def test_json_summary(self, runner):
        result, payload = run_json(
            runner, "audit", "--claims", "C1,C6", "--max-ring", "4", "--max-poset", "2",
        )
        assert result.exit_code == EXIT_SUCCESS
        assert payload["exit_code"] == EXIT_SUCCESS
        assert payload["kind"] == "audit"
        assert set(payload["tallies"]) == {"C1", "C6"}
        assert payload["refutations"] == []

    def test_report_from_environment(self, runner, tmp_path, monkeypatch):
        """Test that SPECWB_REPORT names the report file."""
        out = tmp_path / "reports" / "run.jsonl"
        monkeypatch.setenv("SPECWB_REPORT", str(out))
        result, _ = run_json(runner, "audit", "--claims", "C22", "--max-ring", "3", "--max-poset", "2")
        assert result.exit_code == EXIT_SUCCESS
        lines = read_jsonl(out)
        assert lines[-1]["summary"] is True
        assert {line["claim"] for line in lines[:-1]} == {"C22"}

    def test_unknown_claim(self, runner):
        result, payload = run_json(runner, "audit", "--claims", "C99")
        assert result.exit_code == EXIT_INPUT_ERROR
        assert "Unknown claim id: C99" in payload["error"]

    def test_bad_override(self, runner):
        """Test that CLI caps are validated like config values."""
        result, payload = run_json(runner, "audit", "--claims", "C1", "--max-poset", "9")
        assert result.exit_code == EXIT_CONFIG_ERROR
        assert "max_poset must be between 1 and 6" in payload["error"]

    def test_table_output(self, runner):
        result = runner.invoke(cli, ["audit", "--claims", "C2", "--max-ring", "3", "--max-poset", "1"])
        assert result.exit_code == EXIT_SUCCESS
        assert "No claim refuted" in result.output

    @pytest.mark.parametrize("claims,code", [
        (["C21"], EXIT_SUCCESS),
        (["C21", "C22"], EXIT_THEOREM_REFUTED),
    ])
    def test_exit_code_ignores_inconsistencies(self, runner, monkeypatch, claims, code):
        """Test that only refutations of proved claims fail the audit."""
        def fake_run_audit(engine, spec, selected):
            report = AuditReport(kind="audit")
            for claim_id in claims:
                record = {"claim": claim_id, "instance": "P3#4", "status": "refuted", "witness": {}}
                report.count(claim_id, "refuted")
                report.refutations.append(record)
            return report

        monkeypatch.setattr(AuditEngine, "run_audit", fake_run_audit)
        result, payload = run_json(runner, "audit", "--claims", "C21,C22")
        assert result.exit_code == code
        assert payload["exit_code"] == code
        assert [r["claim"] for r in payload["refutations"]] == claims


class TestHuntCommand:
    """Test the hunters from the command line."""

    def test_wcn_vs_cn(self, runner, tmp_path):
        """Test that the hunt reports both separating shapes and exits 0."""
        out = tmp_path / "hunt.jsonl"
        result, payload = run_json(
            runner, "hunt", "wcn-vs-cn", "--max-ring", "4", "--max-poset", "3", "--out", str(out),
        )
        assert result.exit_code == EXIT_SUCCESS
        assert payload["kind"] == "wcn-vs-cn"
        assert {f["shape"] for f in payload["findings"]} == {"V", "Lambda"}
        assert read_jsonl(out)[-1]["findings"] == payload["findings"]

    def test_unknown_hunt(self, runner):
        result = runner.invoke(cli, ["hunt", "nope"])
        assert result.exit_code == 2
