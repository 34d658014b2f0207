import random
from itertools import product

import pytest

from codebench.gf2core import GeneratorMatrix
from codebench.randcodes import random_full_rank

HAMMING8_ROWS = ["11110000", "00111100", "00001111", "01010101"]

# criterion number -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE_RESULTS = {}


def brgc_weight_subsequence(k, t):
    """Weight-t words (as ints) in binary reflected Gray code order."""
    out = []
    for x in range(1 << k):
        g = x ^ (x >> 1)
        if g.bit_count() == t:
            out.append(g)
    return out


def brute_codewords(m):
    """All codewords from explicit coefficient vectors."""
    words = []
    for coeffs in product((0, 1), repeat=m.k):
        c = 0
        for bit, row in zip(coeffs, m.rows):
            if bit:
                c ^= row
        words.append(c)
    return words


def brute_min_distance(m):
    return min(c.bit_count() for c in brute_codewords(m) if c)


@pytest.fixture
def hamming8():
    return GeneratorMatrix.from_strings(HAMMING8_ROWS)


@pytest.fixture
def rng():
    return random.Random(20181)


def random_matrices(seed, count, n_range, k_range):
    r = random.Random(seed)
    out = []
    for _ in range(count):
        n = r.randint(*n_range)
        k = r.randint(k_range[0], min(k_range[1], n))
        out.append(random_full_rank(n, k, r))
    return out


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE_RESULTS):
        ok, detail = ACCEPTANCE_RESULTS[num]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {num}: {detail}")
