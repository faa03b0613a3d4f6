import random

import pytest

from repfield.sampling import (
    conjugate, random_commutative_quotient_order, random_order_mod, random_rank7_order, random_unimodular,
    rational_rank,
)


def _mul(a, b, n):
    return tuple(sum(a[i * n + k] * b[k * n + j] for k in range(n)) for i in range(n) for j in range(n))


def test_rational_rank_examples():
    assert rational_rank([], 3) == 1
    assert rational_rank([(0, 1, 0, 0)], 2) == 2
    assert rational_rank([(0, 1, 0, 0), (0, 0, 1, 0)], 2) == 4
    # upper triangular 3x3: dimension 6
    units = [tuple(int((r, c) == (i, j)) for r in range(3) for c in range(3)) for i in range(3) for j in range(i, 3)]
    assert rational_rank(units, 3) == 6


@pytest.mark.parametrize("seed", range(5))
def test_unimodular_pair(seed):
    U, V = random_unimodular(random.Random(seed), 4)
    eye = tuple(int(i == j) for i in range(4) for j in range(4))
    assert _mul(U, V, 4) == eye
    g = [(0, 1, 0, 0) + (0,) * 12]
    assert rational_rank(conjugate(g, U, V, 4), 4) == rational_rank(g, 4)


def test_samplers_are_seeded():
    a = random_rank7_order(random.Random(3), 4, 2)
    b = random_rank7_order(random.Random(3), 4, 2)
    assert (a is None) == (b is None)
    if a is not None:
        assert a[1] <= 7 and a[0].same_span(b[0])
    H = random_commutative_quotient_order(random.Random(1), 3, 2)
    assert H.n == 3 and H.same_span(random_commutative_quotient_order(random.Random(1), 3, 2))
    R = random_order_mod(random.Random(2), 2, 2, 2)
    assert R.n == 2 and R.M == 3
