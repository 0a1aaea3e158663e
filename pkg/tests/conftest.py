import io
import sys
from pathlib import Path

import pytest

from zhtriples import RuleConfig, parse_conll
from zhtriples.cli import main as cli_main

DATA_DIR = Path(__file__).resolve().parents[1] / "data"


@pytest.fixture(scope="session")
def cfg():
    return RuleConfig()


@pytest.fixture(scope="session")
def demo_text():
    return (DATA_DIR / "demo.conllu").read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def demo_trees(demo_text):
    return parse_conll(demo_text, "conllu")


@pytest.fixture(scope="session")
def demo_by_id(demo_trees):
    return {tree.sentence_id: tree for tree in demo_trees}


@pytest.fixture(scope="session")
def gold_text():
    return (DATA_DIR / "demo_gold.tsv").read_text(encoding="utf-8")


def stats_sample_lines():
    """118 synthetic triple rows: 48 NMC-flagged (mixed base tags), 12 CLVC,
    5 EXTENDED_CLVC, 10 IV, 43 plain SVO."""
    rows = []

    def add(count, tag):
        for _ in range(count):
            i = len(rows)
            rows.append(f"s{i}\ta{i}\tr{i}\tb{i}\t{tag}")

    add(40, "SVO+NMC")
    add(5, "CLVC+NMC")
    add(3, "IV_RIGHT+NMC")
    add(12, "CLVC")
    add(5, "EXTENDED_CLVC")
    add(6, "IV_LEFT")
    add(4, "IV_RIGHT")
    add(43, "SVO")
    return rows


@pytest.fixture(scope="session")
def stats_sample_text():
    return "\n".join(stats_sample_lines()) + "\n"


@pytest.fixture
def run_cli(monkeypatch, capsys):
    """Invoke the CLI in process; returns (exit code, stdout, stderr)."""

    def run(argv, stdin=""):
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
        try:
            code = cli_main(argv)
        except SystemExit as exc:  # argparse usage failures
            code = exc.code if exc.code is not None else 0
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    return run
