import pytest
from hypothesis import given, strategies as st

from causalpower import Coalition, InvalidArgumentError

N = 10
masks = st.integers(min_value=0, max_value=(1 << N) - 1)


def c(mask):
    return Coalition(mask, N)


def test_membership_and_size():
    s = Coalition.from_members([0, 3, 7], N)
    assert len(s) == 3
    assert 3 in s and 1 not in s
    assert s.members == (0, 3, 7)
    assert list(s) == [0, 3, 7]


def test_out_of_range_member_rejected():
    with pytest.raises(InvalidArgumentError):
        Coalition.from_members([N], N)
    with pytest.raises(InvalidArgumentError):
        Coalition(1 << N, N)


def test_universe_cap():
    with pytest.raises(InvalidArgumentError):
        Coalition(0, 65)
    Coalition(0, 64)  # at the cap is fine


def test_mixed_universe_rejected():
    with pytest.raises(InvalidArgumentError):
        c(1).union(Coalition(1, N + 1))


@given(masks, masks)
def test_union_intersection_commute(a, b):
    assert c(a) | c(b) == c(b) | c(a)
    assert c(a) & c(b) == c(b) & c(a)


@given(masks, masks, st.integers(min_value=0, max_value=(1 << N) - 1))
def test_associativity_and_distributivity(a, b, d):
    assert (c(a) | c(b)) | c(d) == c(a) | (c(b) | c(d))
    assert c(a) & (c(b) | c(d)) == (c(a) & c(b)) | (c(a) & c(d))


@given(masks, masks)
def test_de_morgan(a, b):
    assert (c(a) | c(b)).complement() == c(a).complement() & c(b).complement()


@given(masks, masks)
def test_subset_relations(a, b):
    inter = c(a) & c(b)
    union = c(a) | c(b)
    assert inter <= c(a) <= union
    assert (c(a) <= c(b)) == (c(a) | c(b) == c(b))


@given(masks)
def test_difference_and_complement(a):
    assert Coalition.universe(N) - c(a) == c(a).complement()
    assert c(a) - c(a) == Coalition.empty(N)


@given(masks, st.integers(min_value=0, max_value=N - 1))
def test_add_remove_roundtrip(a, i):
    assert c(a).add(i).remove(i) == c(a).remove(i)
    assert i in c(a).add(i)
