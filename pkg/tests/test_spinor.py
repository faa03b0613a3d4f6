import pytest
from hypothesis import given, settings, strategies as st

from repfield.errors import PreconditionError, ResourceError, RingMismatchError
from repfield.orders import (
    build_eichler, build_mord, build_unramified_order, deep_lift, maximal_order, scalar_order,
)
from repfield.spinor import (
    CERTIFIED, SATURATED, SpinorImageSet, SubgroupZn, generated_subgroup, is_group, lift_classes,
    local_defined, report_for, spinor_image, sumset, translation_stabilizer, window_image,
)


@st.composite
def image_sets(draw, n=None):
    n = n or draw(st.integers(1, 12))
    rest = draw(st.sets(st.integers(0, n - 1)))
    return SpinorImageSet.of(n, rest | {0})


@st.composite
def pairs(draw):
    n = draw(st.integers(1, 12))
    return draw(image_sets(n)), draw(image_sets(n)), draw(image_sets(n))


def brute_is_group(S):
    c = S.classes
    return all((a + b) % S.n in c and (-a) % S.n in c for a in c for b in c)


@settings(max_examples=200, deadline=None)
@given(pairs())
def test_sumset_laws(abc):
    a, b, c = abc
    zero = SpinorImageSet.of(a.n, [0])
    assert sumset(a, b).classes == sumset(b, a).classes
    assert sumset(sumset(a, b), c).classes == sumset(a, sumset(b, c)).classes
    assert sumset(a, zero).classes == a.classes
    assert a.classes <= sumset(a, b).classes


@settings(max_examples=300, deadline=None)
@given(image_sets())
def test_group_criteria(S):
    grp = is_group(S)
    assert grp == brute_is_group(S)
    assert grp == (S.classes == generated_subgroup(S).elements)
    assert grp == (translation_stabilizer(S) == generated_subgroup(S))
    assert translation_stabilizer(S).elements <= S.classes
    assert is_group(S.negated()) == grp
    assert report_for(S).is_group == grp


def test_sumset_type_errors():
    a = SpinorImageSet.of(4, [0, 1])
    with pytest.raises(RingMismatchError):
        sumset(a, SpinorImageSet.of(3, [0]))
    with pytest.raises(TypeError):
        sumset(a, {0, 1})


def test_image_set_validation():
    with pytest.raises(PreconditionError):
        SpinorImageSet(4, frozenset({1, 2}))
    with pytest.raises(PreconditionError):
        SpinorImageSet(4, frozenset({0, 4}))
    assert SubgroupZn(6, 4).d == 2 and SubgroupZn(6, 4).order == 3


def test_lift_classes():
    S = SpinorImageSet.of(2, [0])
    assert lift_classes(S, 4).classes == {0, 2}
    with pytest.raises(RingMismatchError):
        lift_classes(S, 3)


def test_standard_images():
    assert spinor_image(maximal_order(2, 2, 3)).classes == {0}
    assert spinor_image(maximal_order(3, 3, 3)).classes == {0}
    assert spinor_image(build_unramified_order(2, 3)).classes == {0}
    S = spinor_image(build_eichler(2, 2, M=3))
    assert S.classes == {0, 1} and S.status in (CERTIFIED, SATURATED)
    assert spinor_image(scalar_order(3, 2, 3)).status == SATURATED


def test_mord_image():
    S = spinor_image(build_mord(2))
    assert S.sorted() == [0, 2, 3] and S.certified and S.window_depth == 1
    rep = local_defined(build_mord(2))
    assert not rep.defined
    assert rep.as_dict() == {"n": 4, "modulus": 4, "classes": [0, 2, 3], "is_group": False,
                             "generated": [0, 1, 2, 3], "stabilizer": [0],
                             "certified": True, "depth": 1}
    assert list(rep.as_dict()) == ["n", "modulus", "classes", "is_group", "generated",
                                   "stabilizer", "certified", "depth"]


@pytest.mark.parametrize("H", [build_eichler(3, 2, M=3), deep_lift(scalar_order(2, 2, 3), 2),
                               build_mord(2, 3), build_unramified_order(2, 3)], ids=str)
def test_window_depth_monotone(H):
    prev = frozenset({0})
    for w in (1, 2, 3):
        cur = window_image(H, w)
        assert prev <= cur
        prev = cur


def test_resource_errors():
    with pytest.raises(ResourceError):
        spinor_image(maximal_order(4, 5), cap=256)
    with pytest.raises(PreconditionError):
        spinor_image(maximal_order(2, 2), max_depth=0)
