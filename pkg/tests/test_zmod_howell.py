import sys
from itertools import product
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

sys.path.insert(0, str(Path(__file__).parent))
import oracles  # noqa: E402
from repfield.core import Mat, ModulusRing, howell_form, span_size  # noqa: E402
from repfield.core.zmod import (  # noqa: E402
    contains_row, count_primitive_representatives, howell_rows, is_howell, log_span_size,
    primitive_representatives,
)
from repfield.errors import PreconditionError  # noqa: E402

AMBIENTS = [(2, 1, 2), (2, 2, 2), (2, 3, 2), (3, 1, 2), (3, 2, 2), (5, 1, 2), (2, 1, 3), (2, 2, 3), (3, 1, 3)]


@st.composite
def generating_sets(draw):
    p, M, n = draw(st.sampled_from(AMBIENTS))
    N = p ** M
    vec = st.tuples(*[st.integers(0, N - 1)] * n)
    return p, M, n, draw(st.lists(vec, max_size=n + 1))


@settings(max_examples=150, deadline=None)
@given(generating_sets())
def test_howell_matches_closure(data):
    p, M, n, gens = data
    N = p ** M
    rows = howell_rows(gens, p, M, n)
    elems = oracles.closure(gens, N, n)
    assert is_howell(rows, p, M)
    assert oracles.closure(rows, N, n) == elems
    assert p ** log_span_size(rows, p, M) == len(elems)
    for v in oracles.closure([], N, n) | {tuple([1] * n)}:
        assert contains_row(rows, v, p, M) == (v in elems)


@settings(max_examples=100, deadline=None)
@given(generating_sets(), st.randoms(use_true_random=False))
def test_howell_is_canonical(data, rnd):
    p, M, n, gens = data
    N = p ** M
    shuffled = list(gens)
    rnd.shuffle(shuffled)
    units = [u for u in range(1, N) if u % p]
    alt = []
    for g in shuffled:
        u = rnd.choice(units)
        alt.append(tuple(u * x % N for x in g))
    if gens:
        a, b, c = alt[0], gens[-1], rnd.randrange(N)
        alt.append(tuple((x + c * y) % N for x, y in zip(a, b)))
    assert howell_rows(alt, p, M, n) == howell_rows(gens, p, M, n)


def test_howell_form_on_mat():
    R = ModulusRing(2, 2)
    m = Mat.from_rows(R, [[2, 0], [0, 2], [2, 2]])
    h = howell_form(m)
    assert span_size(h) == 4
    assert h == howell_form(Mat.from_rows(R, [[0, 2], [2, 0]]))


def test_howell_example_needs_extra_row():
    # (2, 1) over Z/4 spans (0, 2) only through 2 * (2, 1)
    rows = howell_rows([(2, 1)], 2, 2, 2)
    assert contains_row(rows, (0, 2), 2, 2)
    assert (0, 2) in rows


def test_zero_and_full():
    assert howell_rows([], 3, 2, 2) == ()
    assert log_span_size(howell_rows([(1, 0), (0, 1)], 3, 2, 2), 3, 2) == 4


def test_ring_basics():
    R = ModulusRing(3, 2)
    assert R.modulus == 9
    assert [R.valuation(x) for x in (1, 3, 6, 9)] == [0, 1, 1, 2]
    assert R.units() == [1, 2, 4, 5, 7, 8]
    with pytest.raises(PreconditionError):
        ModulusRing(4, 1)


@pytest.mark.parametrize("p,M,n", [(2, 1, 2), (2, 2, 2), (3, 2, 2), (2, 2, 3)])
def test_primitive_representatives(p, M, n):
    N = p ** M
    reps = primitive_representatives(p, M, n)
    assert len(reps) == count_primitive_representatives(p, M, n)
    units = [u for u in range(1, N) if u % p]
    orbits = {frozenset(tuple(u * x % N for x in v) for u in units) for v in reps}
    assert len(orbits) == len(reps)
    primitive = {v for v in product(range(N), repeat=n) if any(x % p for x in v)}
    assert set().union(*orbits) == primitive
