import random
from dataclasses import replace
from fractions import Fraction as F

import pytest

from l0l1.construction import OperatorCertificate, build_orbit_operator, build_prop2_operator
from l0l1.majorization import check_tail_domination
from l0l1.operators import SparseOperator, dilation_up_operator, identity
from l0l1.sequences import FiniteSequence, l0_norm, rearrange
from l0l1.verification import (
    DominatedPairGenerator,
    brute_e_functional,
    brute_k_functional,
    corollary1_roundtrip,
    passed,
    prop1_check,
    random_dominated_pair,
    random_sequence,
    random_sparse_operator,
    selftest,
    verify_certificate,
)

S = FiniteSequence.of


def test_brute_oracles_examples():
    x = S(3, 2, 1)
    assert brute_k_functional(x, F(1, 2)) == F(5, 2)
    assert brute_k_functional(S(), 3) == 0
    assert brute_k_functional(x, 1000) == l0_norm(x)
    assert brute_e_functional(S(3, 1, 2), 1) == 3
    assert brute_e_functional(x, 0) == 6
    assert brute_e_functional(x, 3) == 0


def test_brute_oracles_size_guard():
    with pytest.raises(ValueError):
        brute_k_functional(FiniteSequence((F(1),) * 17), 1)


def test_generator_pairs_are_dominated_and_deterministic():
    for seed in range(200):
        g = DominatedPairGenerator(seed=seed, n=30)
        a, b = random_dominated_pair(g)
        assert check_tail_domination(a, b).holds
        assert random_dominated_pair(g) == (a, b)


def test_generator_without_perturbations_returns_b():
    a, b = random_dominated_pair(DominatedPairGenerator(seed=3, perturbations=0, signed=False))
    assert a == b


def test_verify_valid_and_identity_certificates():
    a, b = random_dominated_pair(DominatedPairGenerator(seed=5, n=30))
    pa, pb = rearrange(a), rearrange(b)
    report = verify_certificate(build_prop2_operator(pa, pb), pa.as_sequence(), pb.as_sequence())
    assert passed(report)
    cert = OperatorCertificate.certify(identity(3), {})
    assert (cert.l1_bound, cert.l0_expansion) == (1, 1)
    assert passed(verify_certificate(cert, S(1, 2, 3), S(1, 2, 3)))


def corrupt(cert: OperatorCertificate, which: int, delta: F) -> OperatorCertificate:
    entries = list(cert.operator.entries())
    r, i, c = entries[which]
    entries[which] = (r, i, c + delta)
    op = SparseOperator.from_entries(cert.operator.n_in, cert.operator.n_out, entries)
    return replace(cert, operator=op)


def test_fault_injection_is_detected_with_index():
    a, b = S(4, 3, 0, 0), S(4, 1, 1, 1)
    cert = build_orbit_operator(a, b, 1)
    bad = corrupt(cert, 1, F(1, 3))
    report = verify_certificate(bad, a, b)
    image = report[0]
    assert image["check"] == "image" and not image["pass"]
    assert "_2" in image["details"]


def test_understated_bounds_are_flagged():
    a, b = S(2, 2, 1, 1), S(2, 1)
    cert = build_orbit_operator(a, b, 2)
    report = verify_certificate(replace(cert, l1_bound=cert.l1_bound - 1), a, b)
    assert [e["check"] for e in report if not e["pass"]] == ["l1_bound"]


def test_image_criterion_examples():
    b = S(2, 1)
    v = prop1_check(dilation_up_operator(2, 2), b)
    assert v.holds and v.constant == 2
    v = prop1_check(identity(2), b)
    assert v.holds and v.constant == 1
    rng = random.Random(1)
    for _ in range(200):
        t = random_sparse_operator(rng, rng.randint(1, 10), rng.randint(1, 10))
        assert prop1_check(t, random_sequence(rng, t.n_in)).holds


def test_k_round_trip_examples():
    b = S(3, 1, 2)
    report = corollary1_roundtrip(b, b)
    assert passed(report)
    assert report[0]["details"] == "C_K = 1"
    report = corollary1_roundtrip(FiniteSequence(tuple(v for v in b for _ in range(2))), b)
    assert passed(report)
    ck = F(report[0]["details"].split("= ")[1])
    assert ck <= 2
    report = corollary1_roundtrip(S(), b)
    assert passed(report) and report[0]["details"] == "C_K = 0"


def test_certified_norm_is_a_valid_constant():
    # the certified norm is itself a valid constant for the criterion
    for seed in range(40):
        a, b = random_dominated_pair(DominatedPairGenerator(seed=seed, n=15))
        cert = build_orbit_operator(a.scale(3), b, 8)
        assert prop1_check(cert.operator, b).holds


def test_selftest_passes():
    assert passed(selftest(seed=7, trials=10))
