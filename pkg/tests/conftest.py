from __future__ import annotations

import pytest

from fansig.catalog import catalog

ACCEPTANCE_KEY = pytest.StashKey[list]()

RANK_LE_3 = ["P1", "P2", "P3", "P1xP1", "P1xP2", "blowup_p2", "blowup_p1xp1", "F1", "F2", "P1xP1xP1"]


def pytest_configure(config):
    config.stash[ACCEPTANCE_KEY] = []


@pytest.fixture
def acceptance(request):
    """Record one acceptance line: acceptance(number, title, passed, detail)."""
    lines = request.config.stash[ACCEPTANCE_KEY]

    def record(num, title, passed, detail=""):
        lines.append((num, title, passed, detail))
        return passed

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(ACCEPTANCE_KEY, [])
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for num, title, passed, detail in sorted(lines):
        mark = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[{mark}] {num}. {title}: {detail}")


@pytest.fixture(scope="session")
def fans():
    names = RANK_LE_3 + ["P4", "P2xP2", "blowup_p1xp1xblowup_p1xp1"]
    return {n: catalog(n) for n in names}
