"""Tests for report formatting and saving."""

import json

import pytest

from dcy.equivalence import verify_theorem, witness_chain
from dcy.report import chain_lines, format_classes_table, report_lines, save_report


@pytest.fixture
def report():
    return verify_theorem(2, 0)


def test_report_lines(report):
    lines = report_lines(report)
    assert lines[0] == "n = 2, r = 0"
    assert lines[-1] == "partitions coincide"


def test_save_report_formats(report, tmp_path):
    """The extension picks JSON, markdown or plain text."""
    json_path = tmp_path / "report.json"
    assert save_report(report, json_path)
    data = json.loads(json_path.read_text(encoding="utf-8"))
    assert data["equal"] is True
    assert data["sim_classes"] == len(report.classes_sim)
    assert sum(c["size"] for c in data["classes"]) == 8

    md_path = tmp_path / "report.md"
    assert save_report(report, md_path)
    content = md_path.read_text(encoding="utf-8")
    assert content.startswith("# Equivalence report for H_2, rank 0")
    assert "| class | size |" in content

    text_path = tmp_path / "report.txt"
    assert save_report(report, text_path)
    assert "partitions coincide" in text_path.read_text(encoding="utf-8")


def test_save_report_fails_on_bad_path(report, tmp_path):
    assert not save_report(report, tmp_path / "missing" / "report.json")


def test_chain_export(t_start, t_end, tmp_path):
    chain = witness_chain(t_start, t_end)
    lines = chain_lines(chain)
    assert lines[0] == "chain of 3 tableaux, 2 certified steps"
    assert "step 1: move cycle {8}" in lines

    md_path = tmp_path / "chain.md"
    assert save_report(chain, md_path)
    content = md_path.read_text(encoding="utf-8")
    assert "## Step 2: cycle [5, 6, 7]" in content

    json_path = tmp_path / "chain.json"
    assert save_report(chain, json_path)
    assert len(json.loads(json_path.read_text(encoding="utf-8"))["tableaux"]) == 3


def test_format_classes_table(report):
    table = format_classes_table(report, limit=2)
    assert table.row_count == 2
