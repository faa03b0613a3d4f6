from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from repfield.core import FiniteField, Mat, embedding, scalar_extend
from repfield.core.fq import is_irreducible, least_irreducible
from repfield.errors import ConfigurationError, PreconditionError, RingMismatchError

SMALL = [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (3, 2), (2, 3), (2, 4)]


@pytest.mark.parametrize("p,m", SMALL)
def test_field_axioms(p, m):
    F = FiniteField(p, m)
    els = list(F.elements())
    assert len(els) == p ** m
    for a, b in product(els, repeat=2):
        assert F.add(a, b) == F.add(b, a)
        assert F.mul(a, b) == F.mul(b, a)
        assert F.sub(F.add(a, b), b) == a
    for a, b, c in product(els[:6], repeat=3):
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
        assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    for a in els[1:]:
        assert F.mul(a, F.inv(a)) == 1
        assert F.power(a, F.q - 1) == 1
    g = F.primitive_element()
    assert len({F.power(g, k) for k in range(F.q - 1)}) == F.q - 1


def test_least_irreducible_known():
    assert least_irreducible(2, 2) == (1, 1, 1)
    assert least_irreducible(2, 3) == (1, 1, 0, 1)
    assert least_irreducible(3, 2) == (1, 0, 1)
    assert least_irreducible(2, 4) == (1, 1, 0, 0, 1)


@pytest.mark.parametrize("p,m", [(2, 2), (2, 3), (3, 2), (5, 2), (2, 4)])
def test_least_irreducible_has_no_roots_and_is_least(p, m):
    f = least_irreducible(p, m)
    assert is_irreducible(f, p)
    assert all(sum(c * x ** i for i, c in enumerate(f)) % p for x in range(p))
    code = sum(c * p ** i for i, c in enumerate(f[:-1]))
    for smaller in range(code):
        low = [(smaller // p ** i) % p for i in range(m)]
        assert not is_irreducible(low + [1], p)


def test_bad_fields():
    with pytest.raises(PreconditionError):
        FiniteField(6)
    with pytest.raises(PreconditionError):
        FiniteField(2, 2, (1, 0, 1))   # x^2 + 1 = (x + 1)^2


@pytest.mark.parametrize("small,big", [((2, 1), (2, 2)), ((2, 2), (2, 4)), ((3, 1), (3, 2)), ((2, 1), (2, 3))])
def test_embedding_is_a_ring_map(small, big):
    K, L = FiniteField(*small), FiniteField(*big)
    e = embedding(K, L)
    assert len(set(e)) == K.q
    assert e[0] == 0 and e[1] == 1
    for a, b in product(K.elements(), repeat=2):
        assert e[K.add(a, b)] == L.add(e[a], e[b])
        assert e[K.mul(a, b)] == L.mul(e[a], e[b])


def test_embedding_needs_divisibility():
    with pytest.raises(ConfigurationError):
        embedding(FiniteField(2, 2), FiniteField(2, 3))


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(0, 3), min_size=4, max_size=4), st.lists(st.integers(0, 3), min_size=4, max_size=4))
def test_scalar_extend_respects_products(x, y):
    F = FiniteField(2, 2)
    a, b = Mat(F, 2, 2, tuple(x)), Mat(F, 2, 2, tuple(y))
    ea, eb, eab = scalar_extend([a, b, a @ b], 2)
    assert ea.ring == FiniteField(2, 4)
    assert ea @ eb == eab


def test_scalar_extend_errors():
    F = FiniteField(2)
    m = Mat.identity(F, 2)
    assert scalar_extend([m], 1) == [m]
    with pytest.raises(PreconditionError):
        scalar_extend([m], 5)
    with pytest.raises(RingMismatchError):
        scalar_extend([m, Mat.identity(FiniteField(3), 2)], 2)
