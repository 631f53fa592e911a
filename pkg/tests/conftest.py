from __future__ import annotations

from pathlib import Path

import pytest

from threeway import parse_formula, parse_table, to_set_valued

import expected

DATA = Path(__file__).parent / "data"

ATTR_ORDER = ("a1", "a2", "a3")


def formula(text: str):
    """Build a canonical formula from compact text like 'a1=1&a3=0'."""
    return parse_formula("&".join(f"({part})" for part in text.split("&")), ATTR_ORDER)


def formulas(texts) -> frozenset:
    return frozenset(formula(t) for t in texts)


@pytest.fixture(scope="session")
def complete6_source() -> str:
    return (DATA / "complete6.itab").read_text()


@pytest.fixture(scope="session")
def setvalued8_source() -> str:
    return (DATA / "setvalued8.itab").read_text()


@pytest.fixture(scope="session")
def complete6(complete6_source):
    return to_set_valued(parse_table(complete6_source))


@pytest.fixture(scope="session")
def incomplete8(setvalued8_source):
    return parse_table(setvalued8_source)


@pytest.fixture(scope="session")
def setvalued8(incomplete8):
    return to_set_valued(incomplete8)


@pytest.fixture(scope="session")
def class4() -> frozenset[str]:
    return expected.CLASS4


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """Print one line per acceptance criterion at the end of a run."""
    lines = {}
    for status in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(status, []):
            name = getattr(report, "nodeid", "")
            if "test_acceptance.py" in name and "::test_c" in name:
                key = name.split("::test_", 1)[1].split("[")[0]
                verdict = "PASS" if status == "passed" else "FAIL"
                if lines.get(key) != "FAIL":
                    lines[key] = verdict
    if lines:
        terminalreporter.write_sep("-", "acceptance criteria")
        for key in sorted(lines, key=lambda k: int("".join(ch for ch in k if ch.isdigit()) or 0)):
            terminalreporter.write_line(f"{key}: {lines[key]}")
