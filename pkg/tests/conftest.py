import pytest

from clausal.formula import CnfFormula

# The nine-clause, five-variable worked instance (variables a1..a5 -> 1..5).
EXAMPLE_CLAUSES = [
    [1, -2, -3], [-1, 2, -3], [-1, -2, 3],
    [2, -3, -4], [-2, -3, 4], [-2, -3, -4],
    [-3, 4, 5], [-3, -4, 5], [-3, -4, -5],
]


@pytest.fixture
def example():
    return CnfFormula.from_ints(5, EXAMPLE_CLAUSES)


def naive_models(f):
    """Brute force over itertools.product, independent of the numpy oracle."""
    from itertools import product

    out = []
    for vals in product((False, True), repeat=f.num_vars):
        a = dict(zip(range(1, f.num_vars + 1), vals))
        if all(any(a[abs(x)] == (x > 0) for x in c) for c in f.to_ints()):
            out.append(a)
    return out


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
