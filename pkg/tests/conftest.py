from itertools import combinations

import pytest

from adnil.core import positive_roots


def brute_force_ideals(n):
    """Upward-closed subsets of the positive roots, by exhaustive search."""
    roots = positive_roots(n)
    out = []
    for mask in range(1 << len(roots)):
        s = {r for k, r in enumerate(roots) if mask >> k & 1}
        if all(t in s for r in s for t in roots
               if t.i <= r.i and r.j <= t.j):
            out.append(frozenset(s))
    return out


def antichains(n):
    roots = positive_roots(n)
    for k in range(len(roots) + 1):
        for combo in combinations(roots, k):
            if all(not (a.i <= b.i and b.j <= a.j) and not (b.i <= a.i and a.j <= b.j)
                   for a, b in combinations(combo, 2)):
                yield combo


ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
