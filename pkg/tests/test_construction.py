import math
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from l0l1.construction import (
    CriterionFailure,
    InfeasibleAllocation,
    allocate_greedy,
    build_orbit_operator,
    build_prop2_operator,
    partition_indices,
)
from l0l1.majorization import check_orbit_criterion, criterion_start, orbit_constant
from l0l1.operators import apply, l0_expansion_bound, l1_operator_norm
from l0l1.sequences import FiniteSequence, dilate_down, dilate_up, profile_of, rearrange, tail_sums
from l0l1.verification import DominatedPairGenerator, random_dominated_pair

S = FiniteSequence.of
P = profile_of


def test_partition_examples():
    p = partition_indices(P([4, 3, 0, 0]), P([4, 1, 1, 1]))
    assert (p.J, p.I, p.K) == ((2,), (3, 4), (1,))
    p = partition_indices(P([3, 2]), P([3, 2]))
    assert (p.J, p.I, p.K) == ((), (), (1, 2))
    # a = 2b sits in K, not J
    p = partition_indices(P([2, 0]), P([1, 1]))
    assert (p.J, p.I, p.K) == ((), (2,), (1,))


def test_allocation_examples():
    a, b = P([4, 3, 0, 0]), P([4, 1, 1, 1])
    plan = allocate_greedy(a, b, partition_indices(a, b))
    (blk,) = plan.blocks
    assert (blk.delta, blk.consumed, blk.i_k, blk.eta_prime, blk.spill) == (2, (3,), 4, 1, 0)

    a, b = P([10, 5, F(3, 2), 0, 0]), P([10, 2, 2, 2, 2])
    plan = allocate_greedy(a, b, partition_indices(a, b))
    (blk,) = plan.blocks
    assert (blk.delta, blk.consumed, blk.i_k, blk.eta_prime, blk.spill) == (3, (3, 4), 5, F(1, 2), F(3, 2))

    a, b = P([2, 0]), P([1, 1])
    plan = allocate_greedy(a, b, partition_indices(a, b))
    assert plan.blocks == () and plan.unused == (2,)


def test_allocation_with_spill_into_next_block():
    # j = 1, 2 both in deficit; block 1 runs past j = 2 and hands on its leftover
    a, b = P([9, 9, 1, 1, 1]), P([4] * 6)
    part = partition_indices(a, b)
    assert (part.J, part.I) == ((1, 2), (3, 4, 5, 6))
    plan = allocate_greedy(a, b, part)
    b1, b2 = plan.blocks
    assert (b1.consumed, b1.i_k, b1.eta_prime, b1.spill) == ((3,), 4, 2, 1)
    assert (b2.carried, b2.consumed, b2.i_k, b2.eta_prime) == (1, (5,), 6, 1)
    cert = build_prop2_operator(a, b)
    assert apply(cert.operator, b.as_sequence()) == a.as_sequence()


def test_dominated_pair_operator_examples():
    a, b = P([4, 3, 0, 0]), P([4, 1, 1, 1])
    cert = build_prop2_operator(a, b)
    assert cert.operator.rows == {1: ((1, 1),), 2: ((2, 1), (3, 1), (4, 1))}
    assert apply(cert.operator, b.as_sequence()) == a.as_sequence()
    # every input column carries exactly one nonzero entry here
    assert cert.l1_bound == 1 and cert.l0_expansion == 1

    a, b = P([10, 5, F(3, 2), 0, 0]), P([10, 2, 2, 2, 2])
    cert = build_prop2_operator(a, b)
    assert cert.operator.rows == {
        1: ((1, 1),),
        2: ((2, 1), (3, F(1, 4)), (4, 1), (5, F(1, 4))),
        3: ((3, F(3, 4)),),
    }
    assert apply(cert.operator, b.as_sequence()) == a.as_sequence()

    a = P([5, 3, 3])
    cert = build_prop2_operator(a, a)
    assert cert.operator.rows == {1: ((1, 1),), 2: ((2, 1),), 3: ((3, 1),)}


def test_builder_rejects_undominated_input():
    with pytest.raises(CriterionFailure) as err:
        build_prop2_operator(P([1, 1]), P([2]))
    assert err.value.witness_k == 2


def test_allocation_reports_infeasible_plans():
    # skipping the domination check exposes the allocator's own guard
    a, b = P([5, 1]), P([1, 1])
    with pytest.raises(InfeasibleAllocation):
        allocate_greedy(a, b, partition_indices(a, b))


pairs = st.integers(0, 10**6).map(lambda s: random_dominated_pair(DominatedPairGenerator(seed=s, n=40)))


@given(pairs)
def test_builder_column_identities(pair):
    a, b = pair
    pa, pb = rearrange(a), rearrange(b)
    cert = build_prop2_operator(pa, pb)
    op = cert.operator
    assert apply(op, pb.as_sequence()) == pa.as_sequence()
    part = partition_indices(pa, pb)
    cols = op.columns()
    for i in part.I + part.J:
        assert sum(abs(c) for _, c in cols.get(i, [])) <= 1
    for i in part.K:
        if pb.value(i):
            assert sum(abs(c) for _, c in cols[i]) == pa.value(i) / pb.value(i)
    assert cert.l1_bound <= 2 and cert.l0_expansion <= 3


@given(pairs)
def test_allocation_identity(pair):
    a, b = pair
    pa, pb = rearrange(a), rearrange(b)
    plan = allocate_greedy(pa, pb, partition_indices(pa, pb))
    front = 0
    for blk in plan.blocks:
        eta = sum((pb.value(i) - pa.value(i) for i in blk.consumed), F(0))
        assert eta + blk.eta_prime + blk.carried == blk.delta
        assert 0 < blk.eta_prime <= pb.value(blk.i_k) - pa.value(blk.i_k)
        assert all(front < i < blk.i_k for i in blk.consumed)
        assert blk.i_k > front
        front = blk.i_k


def test_orbit_operator_examples():
    b = S(2, 1)
    a = S(2, -1, 5)
    cert = build_orbit_operator(a, a, 1)
    assert cert.pipeline["dilation"] == {"kind": "down", "m": 1}
    assert apply(cert.operator, a) == a and cert.l1_bound == 1

    a = dilate_up(b, 2)
    cert = build_orbit_operator(a, b, 2)
    assert cert.pipeline["dilation"] == {"kind": "up", "m": 9}
    assert apply(cert.operator, b) == a
    assert cert.l1_bound <= 18 and cert.l0_expansion <= 27

    cert = build_orbit_operator(S(2, 0), S(1, 1), 1)
    assert cert.operator.rows == {1: ((1, 2),)}
    assert apply(cert.operator, S(1, 1)) == S(2) and cert.l1_bound == 2


def test_orbit_operator_signs_and_permutations():
    a, b = S(0, -3, 1, 2), S(1, 0, -4, 1, 1)
    lo, hi = orbit_constant(a, b)
    cert = build_orbit_operator(a, b, hi)
    assert apply(cert.operator, b) == a


def test_orbit_operator_rejects_failed_criterion():
    with pytest.raises(CriterionFailure) as err:
        build_orbit_operator(S(4, 3), S(4, 1, 1, 1), F(1, 2))
    assert err.value.witness_k == 1


@given(pairs, st.fractions(min_value=F(1, 10), max_value=12, max_denominator=10))
def test_intermediate_majorization(pair, c):
    _, b = pair
    pb = rearrange(b)
    tb = tail_sums(pb)
    if c > 1:
        stretched = rearrange(dilate_up(pb.as_sequence(), 3 * (math.floor(c) + 1)))
    else:
        stretched = rearrange(dilate_down(pb.as_sequence(), math.floor(1 / c)))
    ts = tail_sums(stretched)
    for k in range(1, len(ts) + 6):
        start = criterion_start(k, c)
        lhs = c * (tb[start - 1] if start <= len(tb) else 0)
        rhs = ts[k - 1] if k <= len(ts) else 0
        assert lhs <= rhs


@given(pairs, st.sampled_from([F(1, 5), F(1, 3), F(1, 2), F(2, 3), F(1), F(3, 2), F(2), F(7, 2)]))
def test_orbit_pipeline_bounds(pair, scale):
    a, b = pair
    a = a.scale(scale)
    lo, hi = orbit_constant(a, b, F(1, 16))
    assert check_orbit_criterion(a, b, hi).holds
    cert = build_orbit_operator(a, b, hi)
    assert apply(cert.operator, b) == a
    if hi > 1:
        assert l1_operator_norm(cert.operator) <= 6 * (math.floor(hi) + 1)
        assert l0_expansion_bound(cert.operator) <= 9 * (math.floor(hi) + 1)
    else:
        assert l1_operator_norm(cert.operator) <= F(2, math.floor(1 / hi))
        assert l0_expansion_bound(cert.operator) <= 3
