import itertools

import pytest

_acceptance_lines: list[str] = []


@pytest.fixture
def acceptance_log():
    return _acceptance_lines


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)


def brute_spanning_trees(m: int, n: int) -> int:
    """Count spanning trees of the m x n grid by trying every edge subset."""
    cells = [(i, j) for i in range(m) for j in range(n)]
    index = {c: k for k, c in enumerate(cells)}
    edges = []
    for i, j in cells:
        if j + 1 < n:
            edges.append((index[(i, j)], index[(i, j + 1)]))
        if i + 1 < m:
            edges.append((index[(i, j)], index[(i + 1, j)]))
    need = len(cells) - 1
    total = 0
    for subset in itertools.combinations(edges, need):
        parent = list(range(len(cells)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        ok = True
        for a, b in subset:
            ra, rb = find(a), find(b)
            if ra == rb:
                ok = False
                break
            parent[ra] = rb
        total += ok
    return total
