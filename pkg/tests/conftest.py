import itertools
import random
from fractions import Fraction

import pytest


def random_point(D, rng, density=0.5, denom=6):
    """Random nonnegative rational point on the arcs of D."""
    return [Fraction(rng.randint(0, denom), denom) if rng.random() < density else Fraction(0) for _ in D.arcs]


def brute_paths(n, lengths):
    """Independent count of simple 0-n paths with the given arc counts in the path digraph."""
    out = []
    for k in lengths:
        for inner in itertools.permutations(range(1, n), k - 1):
            out.append((0, *inner, n))
    return out


def brute_cycles(n, lengths):
    """Independent list of directed cycles of K_n as rotated node tuples."""
    out = []
    for k in lengths:
        for combo in itertools.combinations(range(1, n + 1), k):
            first, rest = combo[0], combo[1:]
            for perm in itertools.permutations(rest):
                out.append((first, *perm))
    return out


@pytest.fixture
def rng():
    return random.Random(20240611)


ACCEPTANCE_LINES = []


def report_criterion(number, ok, detail):
    """Print and remember one acceptance line; the terminal summary repeats them."""
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
    print(line)
    ACCEPTANCE_LINES.append(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
