import json
from pathlib import Path

import pytest

from scalefree.ingest import chunk, concatenate, load_category, load_manifest

ROOT = Path(__file__).resolve().parents[1]
DESK = ROOT / "data" / "desk"
GOLDEN = Path(__file__).resolve().parent / "golden"

_acceptance_lines: list[str] = []


@pytest.fixture(scope="session")
def desk_manifest():
    return load_manifest(DESK / "manifest.json")


@pytest.fixture(scope="session")
def desk_chunks(desk_manifest):
    """category name -> list of 300k-token chunks of the bundled corpus."""
    out = {}
    for cat in desk_manifest.categories:
        whole = concatenate(load_category(cat), source_id=cat.name)
        out[cat.name] = chunk(whole, 300_000)
    return out


@pytest.fixture(scope="session")
def oracle_bands():
    return json.loads((GOLDEN / "oracle_bands.json").read_text())


@pytest.fixture
def criterion():
    """Record one PASS/FAIL line per acceptance criterion, then assert."""

    def record(number: int, ok: bool, detail: str):
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
        _acceptance_lines.append(line)
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_acceptance_lines, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
