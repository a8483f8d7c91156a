from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import sequences
from l0l1.sequences import (
    FiniteSequence,
    dilate_down,
    dilate_up,
    l0_norm,
    l1_norm,
    profile_of,
    rearrange,
    tail_sum,
    to_rat,
)

S = FiniteSequence.of


@pytest.mark.parametrize(
    "text, expected",
    [("3", F(3)), ("-1/2", F(-1, 2)), ("0.25", F(1, 4)), (7, F(7)), ("  2/4 ", F(1, 2))],
)
def test_to_rat_parses_exactly(text, expected):
    assert to_rat(text) == expected


@pytest.mark.parametrize("bad", ["1/0", "abc", "1e", 0.5, True])
def test_to_rat_rejects(bad):
    with pytest.raises((ValueError, TypeError)):
        to_rat(bad)


def test_trailing_zeros_are_dropped():
    assert S(1, 0, 2, 0, 0).values == (F(1), F(0), F(2))
    assert len(S(0, 0)) == 0


def test_rearrange_examples():
    p = rearrange(S(0, -2, 3))
    assert p.profile == (3, 2)
    assert p.recover == ((3, 1), (2, -1))

    assert rearrange(S(5)).recover == ((1, 1),)
    # stable ties keep the original order
    assert rearrange(S(1, 1, 1)).recover == ((1, 1), (2, 1), (3, 1))


def test_rearrange_ties_follow_stable_sort():
    x = S(2, -5, 2, 5, 0, -2)
    expected = sorted(range(1, 7), key=lambda k: -abs(x[k]))  # sorted() is stable
    expected = [k for k in expected if x[k] != 0]
    assert [idx for idx, _ in rearrange(x).recover] == expected


@given(sequences(max_size=20))
def test_rearrange_round_trip(x):
    p = rearrange(x)
    assert p.restore() == x
    assert all(u >= v > 0 for u, v in zip(p.profile, p.profile[1:]))
    assert sorted(p.profile) == sorted(abs(v) for v in x.values if v)


def test_tail_sum_examples():
    p = profile_of([3, 2, 1])
    assert tail_sum(p, 1) == 6
    assert tail_sum(p, 2) == 2 + 1
    assert tail_sum(p, 7) == 0
    with pytest.raises(ValueError):
        tail_sum(p, 0)


def test_norm_examples():
    assert (l0_norm(S(0, -2, 3)), l1_norm(S(0, -2, 3))) == (2, 5)
    assert (l0_norm(S()), l1_norm(S())) == (0, 0)
    assert (l0_norm(S("1/2", 0, "1/3")), l1_norm(S("1/2", 0, "1/3"))) == (2, F(5, 6))


def test_dilation_examples():
    assert dilate_up(S(3, 1), 2) == S(3, 3, 1, 1)
    x = S(1, -2, "3/7")
    assert dilate_up(x, 1) == x and dilate_down(x, 1) == x
    assert dilate_down(S(4, 2, 6, 0), 2) == S(3, 3)
    with pytest.raises(ValueError):
        dilate_up(x, 0)


@given(sequences(max_size=15), st.integers(1, 10))
def test_dilation_norms(x, m):
    up = dilate_up(x, m)
    assert l1_norm(up) == m * l1_norm(x)
    assert l0_norm(up) == m * l0_norm(x)
    down = dilate_down(x, m)
    assert l1_norm(down) <= l1_norm(x) / m
    assert l0_norm(down) <= l0_norm(x)


@given(sequences(max_size=15, nonnegative=True), st.integers(1, 10))
def test_dilations_preserve_profiles(x, m):
    prof = rearrange(x).as_sequence()
    for y in (dilate_up(prof, m), dilate_down(prof, m)):
        assert all(u >= v >= 0 for u, v in zip(y.values, y.values[1:]))
    assert l1_norm(dilate_down(prof, m)) == l1_norm(prof) / m


def test_block_average_does_not_contract_support_of_unit_vector():
    # e_1 keeps one nonzero entry under every block average
    for m in range(1, 6):
        assert l0_norm(dilate_down(S(1), m)) == 1


def test_profile_of_validates():
    with pytest.raises(ValueError):
        profile_of([1, 2])
    with pytest.raises(ValueError):
        profile_of([1, -1])
