import random
from math import gcd, sqrt

import pytest

from surd_sails.arith import QuadraticSurd, squarefree_split

SQUAREFREE_SMALL = [d for d in range(2, 101) if squarefree_split(d)[1] == d]


def float_value(alpha: QuadraticSurd) -> float:
    """Test-only float oracle; the library itself never touches floats."""
    return (alpha.a + alpha.b * sqrt(alpha.d)) / alpha.c


def canonical_tuples(a_max=20, b_max=10, c_max=20, d_max=100):
    """All canonical surd tuples within the stated bounds."""
    squarefree = [d for d in SQUAREFREE_SMALL if d <= d_max]
    for d in squarefree:
        for c in range(1, c_max + 1):
            for b in range(-b_max, b_max + 1):
                if b == 0:
                    continue
                for a in range(-a_max, a_max + 1):
                    if gcd(a, b, c) == 1:
                        yield a, b, c, d


def random_canonical_surd(rng: random.Random, a_max=40, b_max=15, c_max=25, d_max=200) -> QuadraticSurd:
    while True:
        d = rng.choice([k for k in range(2, d_max + 1) if squarefree_split(k)[1] == k])
        a = rng.randint(-a_max, a_max)
        b = rng.choice([k for k in range(-b_max, b_max + 1) if k])
        c = rng.randint(1, c_max)
        if gcd(a, b, c) == 1:
            return QuadraticSurd(a, b, c, d)


@pytest.fixture
def rng():
    return random.Random(20260811)
