from itertools import product
from math import gcd, prod

import pytest
from hypothesis import given, settings, strategies as st

from repfield.classfield import (
    AbelianGroup, GaloisScenario, PlaceDatum, global_image_set, is_defined_global, lower_field_from_t,
    smith_diagonal, t_report,
)
from repfield.errors import PreconditionError
from repfield.spinor import SpinorImageSet


def test_smith_example():
    assert smith_diagonal([[2, 4, 4], [-6, 6, 12], [10, -4, -16]], 3) == [2, 6, 12]
    assert smith_diagonal([[0, 0]], 2) == [0, 0]
    assert smith_diagonal([[6, 4]], 2) == [2, 0]


@st.composite
def quotients(draw):
    factors = draw(st.sampled_from([(4,), (6,), (2, 2), (2, 4), (3, 6), (2, 2, 2), (12,)]))
    G = AbelianGroup(factors)
    gens = draw(st.lists(st.tuples(*[st.integers(0, d - 1) for d in factors]), max_size=3))
    return G, gens


@settings(max_examples=150, deadline=None)
@given(quotients())
def test_quotient_factors_against_torsion_counts(data):
    G, gens = data
    H = G.subgroup(gens)
    q = G.quotient_factors(gens)
    assert all(b % a == 0 for a, b in zip(q, q[1:])) and all(d > 1 for d in q)
    assert prod(q) * len(H) == G.order
    cosets = {frozenset(G.add(x, h) for h in H) for x in G.elements()}
    for k in range(1, G.order + 1):
        killed = sum(1 for C in cosets if G.scale(k, next(iter(C))) in H)
        assert killed == prod(gcd(k, d) for d in q)


def test_group_validation():
    with pytest.raises(PreconditionError):
        AbelianGroup((4, 2))
    with pytest.raises(PreconditionError):
        AbelianGroup((4,)).element((1, 2))


def _place(label, fr, n, classes):
    return PlaceDatum(label, fr, image=SpinorImageSet.of(n, classes))


def test_nongroup_image_not_defined():
    G = AbelianGroup((4,))
    v = is_defined_global(GaloisScenario(G, (_place("P", (1,), 4, [0, 2, 3]),)))
    assert not v.defined
    assert v.lower_field == () and v.upper_field == (4,)
    assert v.as_dict()["defined"] is False


def test_group_image_is_defined():
    G = AbelianGroup((4,))
    v = is_defined_global(GaloisScenario(G, (_place("P", (1,), 4, [0, 2]), _place("Q", (2,), 4, [0]))))
    assert v.defined and v.lower == v.upper == {(0,), (2,)}
    assert v.lower_field == (2,)


def test_two_places_combine():
    G = AbelianGroup((2, 2))
    sc = GaloisScenario(G, (_place("P", (1, 0), 2, [0, 1]), _place("Q", (0, 1), 2, [0, 1])))
    assert global_image_set(sc) == frozenset(product(range(2), repeat=2))
    assert is_defined_global(sc).lower_field == ()


def test_t_invariants():
    G = AbelianGroup((4,))
    sc = GaloisScenario(G, (PlaceDatum("P", (1,), t=2),))
    assert lower_field_from_t(sc) == {(0,), (2,)}
    assert t_report(sc) == {"group": [4], "lower": [[0], [2]], "lower_field": [2]}
    with pytest.raises(PreconditionError):
        global_image_set(sc)


def test_scenario_validation():
    G = AbelianGroup((4,))
    with pytest.raises(PreconditionError):
        GaloisScenario(G, ())
    with pytest.raises(PreconditionError):
        PlaceDatum("P", (1,))
    with pytest.raises(PreconditionError):
        GaloisScenario(G, (_place("P", (1,), 4, [0]), _place("Q", (1,), 3, [0])))
