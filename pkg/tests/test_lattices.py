import sys
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

sys.path.insert(0, str(Path(__file__).parent))
import oracles  # noqa: E402
from repfield.core import Mat, ModulusRing  # noqa: E402
from repfield.errors import ResourceError, RingMismatchError  # noqa: E402
from repfield.lattices import (  # noqa: E402
    Submodule, colength_class, invariant_submodules, is_invariant, join, meet, spin,
)

AMB = [(2, 1, 2), (2, 2, 2), (3, 1, 2), (3, 2, 2), (2, 1, 3), (2, 2, 3)]


@st.composite
def submodule_pairs(draw):
    p, M, n = draw(st.sampled_from(AMB))
    N = p ** M
    vec = st.tuples(*[st.integers(0, N - 1)] * n)
    a = draw(st.lists(vec, max_size=n))
    b = draw(st.lists(vec, max_size=n))
    R = ModulusRing(p, M)
    return R, n, a, b


@settings(max_examples=120, deadline=None)
@given(submodule_pairs())
def test_join_meet_against_sets(data):
    R, n, a, b = data
    N = R.modulus
    A, B = Submodule.span(R, n, a), Submodule.span(R, n, b)
    ea, eb = oracles.closure(a, N, n), oracles.closure(b, N, n)
    assert A.elements() == ea
    assert join(A, B).elements() == oracles.closure(a + b, N, n)
    assert meet(A, B).elements() == ea & eb
    assert A.is_subset(join(A, B)) and meet(A, B).is_subset(B)
    assert A.size() == len(ea)
    assert A.colength() == n * R.M - oracles.log_p(len(ea), R.p)


def test_ambient_mismatch():
    a = Submodule.full(ModulusRing(2, 1), 2)
    with pytest.raises(RingMismatchError):
        join(a, Submodule.full(ModulusRing(2, 2), 2))
    with pytest.raises(RingMismatchError):
        meet(a, Submodule.full(ModulusRing(2, 1), 3))


def test_colength_class():
    R = ModulusRing(2, 2)
    L = Submodule.span(R, 2, [(2, 0), (0, 1)])
    assert L.colength() == 1 and colength_class(L).value == 1
    assert colength_class(Submodule.zero(R, 2)).value == 0   # colength 4
    assert L.scaled(1).colength() == 3


@pytest.mark.parametrize("p,M,n,rows", [
    (2, 1, 2, [[[0, 1], [0, 0]]]),
    (2, 2, 2, [[[1, 1], [0, 1]]]),
    (3, 1, 2, [[[0, 1], [1, 0]]]),
    (2, 1, 3, [[[0, 1, 0], [0, 0, 1], [0, 0, 0]]]),
    (2, 2, 2, [[[0, 1], [2, 0]]]),
    (3, 2, 2, [[[1, 0], [0, 0]], [[0, 3], [0, 0]]]),
])
def test_invariant_submodules_against_brute_force(p, M, n, rows):
    R = ModulusRing(p, M)
    gens = [Mat.from_rows(R, r) for r in rows]
    got = invariant_submodules(gens)
    assert {frozenset(L.elements()) for L in got} == set(oracles.invariant_subgroups(rows, p, M, n))
    assert all(is_invariant(gens, L) for L in got)


def test_no_generators_gives_all_subgroups():
    R = ModulusRing(2, 2)
    got = invariant_submodules([], R, 2)
    assert len(got) == len(oracles.all_subgroups(2, 2, 2))


def test_spin():
    R = ModulusRing(2, 2)
    x = Mat.from_rows(R, [[0, 1], [0, 0]])
    assert spin([x], (0, 1)).elements() == oracles.closure([(0, 1), (1, 0)], 4, 2)
    assert spin([x], (1, 0)).size() == 4


def test_cap():
    with pytest.raises(ResourceError) as e:
        invariant_submodules([], ModulusRing(3, 3), 3, cap=1000)
    assert e.value.cap == 1000 and e.value.required > 1000
