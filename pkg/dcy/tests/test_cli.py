"""Tests for the CLI interface."""

import json
import os
from pathlib import Path

import pytest
from typer.testing import CliRunner

from dcy import __version__
from dcy.cli import app
from dcy.cycles import move_through, noncore_cycles
from dcy.insertion import TableauPair, rs_inverse
from dcy.tableau import render, serialize


@pytest.fixture
def runner():
    """Create a CLI runner for testing."""
    return CliRunner()


@pytest.fixture
def tableau_files(tmp_path, t_start, t_end):
    """Write the worked-example tableaux to disk, one as text and one as JSON."""
    start = tmp_path / "start.txt"
    start.write_text(render(t_start), encoding="utf-8")
    end = tmp_path / "end.json"
    end.write_text(serialize(t_end), encoding="utf-8")
    return start, end


def test_version_command(runner):
    """Test the version command."""
    result = runner.invoke(app, ["version"])
    assert result.exit_code == 0
    assert f"domino-cycles version: {__version__}" in result.stdout


def test_init_command(runner, tmp_path):
    """Test the init command creates a .dcy file."""
    with runner.isolated_filesystem(temp_dir=tmp_path):
        result = runner.invoke(app, ["init"])
        assert result.exit_code == 0
        assert "Successfully created" in result.stdout

        config_path = Path(os.getcwd()) / ".dcy"
        assert config_path.exists()
        assert "max_n:" in config_path.read_text(encoding="utf-8")


def test_init_command_file_exists(runner, tmp_path):
    """Test the init command when file already exists."""
    with runner.isolated_filesystem(temp_dir=tmp_path):
        config_path = Path(os.getcwd()) / ".dcy"
        config_path.write_text("# Existing config", encoding="utf-8")

        result = runner.invoke(app, ["init"], input="n\n")
        assert result.exit_code == 0
        assert "Initialization cancelled" in result.stdout
        assert config_path.read_text(encoding="utf-8") == "# Existing config"

        result = runner.invoke(app, ["init"], input="y\n")
        assert result.exit_code == 0
        assert "verify:" in config_path.read_text(encoding="utf-8")


def test_config_command_no_file(runner, tmp_path):
    """Test the config command when no file exists."""
    with runner.isolated_filesystem(temp_dir=tmp_path):
        result = runner.invoke(app, ["config"])
        assert result.exit_code == 0
        assert "No .dcy file found" in result.stdout
        assert "verify.max_n" in result.stdout


def test_config_command_missing_explicit_file(runner, tmp_path):
    result = runner.invoke(app, ["config", "--file", str(tmp_path / "nope")])
    assert result.exit_code == 1


def test_rs_command(runner):
    result = runner.invoke(app, ["rs", "2 -1", "--rank", "0", "--format", "json"])
    assert result.exit_code == 0
    data = json.loads(result.stdout)
    assert data["word"] == [2, -1]
    assert data["left"]["shape"] == [2, 2]

    result = runner.invoke(app, ["rs", "2 -1"])
    assert result.exit_code == 0
    assert "rank 0, shape" in result.stdout


def test_rs_command_rejects_bad_word(runner):
    result = runner.invoke(app, ["rs", "1 1"])
    assert result.exit_code == 1
    assert "Error" in result.stdout


def test_rs_command_writes_json(runner, tmp_path):
    out = tmp_path / "pair.json"
    result = runner.invoke(app, ["rs", "3 -1 2", "-r", "1", "--out", str(out)])
    assert result.exit_code == 0
    assert json.loads(out.read_text(encoding="utf-8"))["word"] == [3, -1, 2]


def test_inverse_rs_command(runner, tableau_files, t_start):
    start, _ = tableau_files
    result = runner.invoke(app, ["inverse-rs", str(start), str(start)])
    assert result.exit_code == 0
    assert result.stdout.strip() == str(rs_inverse(TableauPair(t_start, t_start)))


def test_cycles_command(runner, tableau_files):
    start, _ = tableau_files
    result = runner.invoke(app, ["cycles", str(start), "--format", "json"])
    assert result.exit_code == 0
    data = json.loads(result.stdout)
    assert data["forest"] == [[1, [[1, []]]]]
    assert {c["kind"] for c in data["cycles"]} == {"core", "down"}

    result = runner.invoke(app, ["cycles", str(start)])
    assert result.exit_code == 0
    assert "Forest: 1(1)" in result.stdout


def test_cycles_command_rejects_corrupt_file(runner, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("0 0\n1 1", encoding="utf-8")
    result = runner.invoke(app, ["cycles", str(bad)])
    assert result.exit_code == 2


@pytest.mark.parametrize(
    "content",
    ['{"rank": 0, "dominos": []}', '{"rank": 0, "dominos": {"1": [[1, "a"], [1, 2]]}}'],
)
def test_render_command_rejects_malformed_json(runner, tmp_path, content):
    bad = tmp_path / "bad.json"
    bad.write_text(content, encoding="utf-8")
    result = runner.invoke(app, ["render", str(bad)])
    assert result.exit_code == 2
    assert "Error" in result.stdout


def test_move_command(runner, tableau_files, t_start):
    start, _ = tableau_files
    result = runner.invoke(app, ["move", str(start), "5", "8", "--format", "json"])
    assert result.exit_code == 0
    expected = move_through(t_start, noncore_cycles(t_start))
    assert json.loads(result.stdout) == json.loads(serialize(expected))


def test_mmt_command_needs_same_shape(runner, tableau_files):
    start, end = tableau_files
    result = runner.invoke(app, ["mmt", str(start), str(end)])
    assert result.exit_code == 2

    result = runner.invoke(app, ["mmt", str(start), str(start), "--format", "json"])
    assert result.exit_code == 0
    assert json.loads(result.stdout)["right"]["rank"] == 2


def test_gamma_command(runner, tableau_files, t_end):
    _, end = tableau_files
    result = runner.invoke(app, ["gamma", str(end), "--format", "json"])
    assert result.exit_code == 0
    assert json.loads(result.stdout) == json.loads(serialize(t_end))


def test_render_command(runner, tableau_files, t_end):
    _, end = tableau_files
    result = runner.invoke(app, ["render", str(end)])
    assert result.exit_code == 0
    assert result.stdout.strip() == render(t_end).strip()


def test_classes_command(runner):
    result = runner.invoke(app, ["classes", "-n", "2", "-r", "1"])
    assert result.exit_code == 0
    assert "6 classes" in result.stdout

    result = runner.invoke(app, ["classes", "-n", "2", "--bound", "1"])
    assert result.exit_code == 1


def test_verify_command(runner, tmp_path):
    result = runner.invoke(app, ["verify", "-n", "2", "-r", "0"])
    assert result.exit_code == 0
    assert "partitions coincide" in result.stdout

    result = runner.invoke(app, ["verify", "-n", "3", "-r", "1", "--format", "json"])
    assert result.exit_code == 0
    assert json.loads(result.stdout)["equal"] is True

    out = tmp_path / "report.md"
    result = runner.invoke(app, ["verify", "-n", "2", "--out", str(out)])
    assert result.exit_code == 0
    assert out.read_text(encoding="utf-8").startswith("# Equivalence report")


def test_verify_command_respects_config_bound(runner, tmp_path):
    """max_n from the .dcy file caps the enumeration."""
    config = tmp_path / ".dcy"
    config.write_text("verify:\n  max_n: 2\n", encoding="utf-8")
    result = runner.invoke(app, ["verify", "-n", "3", "--file", str(config)])
    assert result.exit_code == 1
    assert "exceeds" in result.stdout


def test_explain_command(runner, t_start, t_end):
    w = str(rs_inverse(TableauPair(t_start, t_start)))
    y = str(rs_inverse(TableauPair(t_end, t_end)))
    result = runner.invoke(app, ["explain", "-r", "1", "--format", "json", "--", w, y])
    assert result.exit_code == 0
    data = json.loads(result.stdout)
    assert len(data["tableaux"]) == 3
    assert [s["changed_cycle"] for s in data["steps"]] == [[8], [5, 6, 7]]


def test_explain_command_not_equivalent(runner):
    result = runner.invoke(app, ["explain", "1 2", "2 1", "-r", "0"])
    assert result.exit_code == 0
    assert "Not equivalent" in result.stdout
