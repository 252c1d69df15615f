import itertools

import pytest

from singlepeak.domain import Vote


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run slow statistical suites")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long-running statistical test (needs --runslow)")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


class ScriptedCoins:
    """Coin source replaying a fixed toss sequence (1 = heads)."""

    def __init__(self, tosses):
        self.tosses = list(tosses)
        self.used = 0

    def coin(self):
        bit = self.tosses[self.used]
        self.used += 1
        return bit


def brute_force_single_peaked(n):
    """Filter all permutations by the distance-based reading of single-peakedness.

    Independent of the prefix test: the candidate ranked at each position must
    be farther from the peak than every candidate on the same side ranked above it.
    """
    found = set()
    for perm in itertools.permutations(range(1, n + 1)):
        peak = perm[0]
        pos = {c: i for i, c in enumerate(perm)}
        ok = all(pos[c] < pos[c - 1] for c in range(2, peak + 1)) and all(
            pos[c] < pos[c + 1] for c in range(peak, n)
        )
        if ok:
            found.add(Vote(perm))
    return found


@pytest.fixture
def scripted():
    return ScriptedCoins


def pytest_terminal_summary(terminalreporter):
    rows = []
    for outcome in ("passed", "failed"):
        for report in terminalreporter.stats.get(outcome, []):
            if report.when != "call":
                continue
            props = dict(report.user_properties)
            if "criterion" in props:
                rows.append((props["criterion"], outcome))
    if rows:
        terminalreporter.section("acceptance criteria")
        for text, outcome in sorted(rows, key=lambda r: int(r[0][2:4])):
            terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {text}")
