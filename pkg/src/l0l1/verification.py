"""Independent oracles, random instances and certificate checking."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, Optional

from .construction import OperatorCertificate, build_orbit_operator, build_prop2_operator, orbit_limits
from .functionals import e_functional, k_eval
from .majorization import (
    OrbitVerdict,
    check_orbit_criterion,
    k_orbit_constant,
    step_grid,
)
from .operators import DimensionError, SparseOperator, apply, l0_expansion_bound, l1_operator_norm, zero
from .sequences import FiniteSequence, RatLike, l0_norm, rearrange, tail_sums, to_rat

ORACLE_LIMIT = 16

Report = list[dict[str, Any]]


# -- brute-force oracles -----------------------------------------------------

@lru_cache(maxsize=256)
def _subset_table(values: tuple[Fraction, ...]) -> tuple[tuple[int, Fraction], ...]:
    """(|S|, sum of |x_i| over i outside S) for every subset S of the support."""
    vals = [abs(v) for v in values if v != 0]
    if len(vals) > ORACLE_LIMIT:
        raise ValueError(f"exhaustive oracle limited to {ORACLE_LIMIT} nonzero entries")
    total = sum(vals, Fraction(0))
    kept = [Fraction(0)] * (1 << len(vals))
    for mask in range(1, 1 << len(vals)):
        low = mask & -mask
        kept[mask] = kept[mask ^ low] + vals[low.bit_length() - 1]
    return tuple((bin(mask).count("1"), total - kept[mask]) for mask in range(1 << len(vals)))


def brute_k_functional(x: FiniteSequence, t: RatLike) -> Fraction:
    """min over supports S of |S| + t * |x - x restricted to S|_1."""
    t = to_rat(t)
    if t <= 0:
        raise ValueError("t must be positive")
    return min(card + t * rest for card, rest in _subset_table(x.values))


def brute_e_functional(x: FiniteSequence, t: RatLike) -> Fraction:
    t = to_rat(t)
    if t < 0:
        raise ValueError("t must be nonnegative")
    return min(rest for card, rest in _subset_table(x.values) if card <= t)


# -- random instances ----------------------------------------------------------

@dataclass(frozen=True)
class DominatedPairGenerator:
    seed: int
    n: int = 20
    magnitude: Fraction = Fraction(10)
    perturbations: Optional[int] = None  # default: random, up to 2 * length
    signed: bool = True


def random_rational(rng: random.Random, magnitude: Fraction, max_den: int = 6) -> Fraction:
    den = rng.randint(1, max_den)
    return Fraction(rng.randint(1, max(1, int(magnitude * den))), den)


def _signed_shuffle(rng: random.Random, vals: list[Fraction], slack: int) -> FiniteSequence:
    out = [Fraction(0)] * (len(vals) + slack)
    slots = rng.sample(range(len(out)), len(vals))
    for v, s in zip(vals, slots):
        out[s] = v if rng.random() < 0.5 else -v
    return FiniteSequence(tuple(out))


def random_dominated_pair(g: DominatedPairGenerator) -> tuple[FiniteSequence, FiniteSequence]:
    """(a, b) with sum_{i>=k} a*_i <= sum_{i>=k} b*_i for all k.

    a starts as the sorted copy of b and is modified by moves that never
    increase a positional tail: pulling mass from a later index to an earlier
    one, and deleting mass.  Sorting can only lower tails further.
    """
    rng = random.Random(g.seed)
    length = rng.randint(1, max(1, g.n))
    b = sorted((random_rational(rng, g.magnitude) for _ in range(length)), reverse=True)
    v = list(b)
    steps = g.perturbations if g.perturbations is not None else rng.randint(0, 2 * length)
    for _ in range(steps):
        den = rng.randint(1, 4)
        share = Fraction(rng.randint(0, den), den)
        if length > 1 and rng.random() < 0.6:
            j = rng.randrange(1, length)
            # early targets build long deficit runs and spill chains
            i = rng.randrange(0, min(j, 3)) if rng.random() < 0.5 else rng.randrange(0, j)
            amount = v[j] * share
            v[j] -= amount
            v[i] += amount
        else:
            i = rng.randrange(length)
            v[i] -= v[i] * share
    a = sorted(v, reverse=True)
    if not g.signed:
        return FiniteSequence(tuple(a)), FiniteSequence(tuple(b))
    slack = rng.randint(0, 3)
    return _signed_shuffle(rng, [u for u in a if u], slack), _signed_shuffle(rng, b, slack)


def random_sequence(rng: random.Random, n: int, magnitude: Fraction = Fraction(10), zero_rate: float = 0.2) -> FiniteSequence:
    vals = []
    for _ in range(n):
        if rng.random() < zero_rate:
            vals.append(Fraction(0))
        else:
            v = random_rational(rng, magnitude)
            vals.append(v if rng.random() < 0.5 else -v)
    return FiniteSequence(tuple(vals))


def random_sparse_operator(rng: random.Random, n_in: int, n_out: int, density: float = 0.3) -> SparseOperator:
    entries = []
    for r in range(1, n_out + 1):
        for i in range(1, n_in + 1):
            if rng.random() < density:
                c = Fraction(rng.randint(-12, 12), rng.randint(1, 6))
                entries.append((r, i, c))
    return SparseOperator.from_entries(n_in, n_out, entries)


# -- certificate checks --------------------------------------------------------

def _check(name: str, ok: bool, details: str = "") -> dict[str, Any]:
    return {"check": name, "pass": bool(ok), "details": details}


def passed(report: Report) -> bool:
    return all(entry["pass"] for entry in report)


def verify_certificate(cert: OperatorCertificate, a: FiniteSequence, b: FiniteSequence) -> Report:
    """Recompute everything a certificate claims; nothing is taken on trust."""
    op = cert.operator
    report: Report = []
    try:
        image = apply(op, b)
    except DimensionError as exc:
        report.append(_check("image", False, str(exc)))
    else:
        bad = [k for k in range(1, max(len(image), len(a)) + 1) if image[k] != a[k]]
        if bad:
            k = bad[0]
            report.append(_check("image", False, f"(Tb)_{k} = {image[k]} != a_{k} = {a[k]} ({len(bad)} mismatches)"))
        else:
            report.append(_check("image", True, "Tb = a exactly"))

    l1 = l1_operator_norm(op)
    l0 = l0_expansion_bound(op)
    report.append(_check("l1_bound", l1 <= cert.l1_bound, f"max column abs-sum {l1}, claimed {cert.l1_bound}"))
    report.append(_check("l0_expansion", l0 <= cert.l0_expansion, f"max column support {l0}, claimed {cert.l0_expansion}"))
    limits = cert.pipeline.get("limits")
    if limits:
        l1_limit, l0_limit = to_rat(limits["l1"]), int(limits["l0"])
        report.append(_check("l1_limit", l1 <= l1_limit, f"{l1} <= {l1_limit}"))
        report.append(_check("l0_limit", l0 <= l0_limit, f"{l0} <= {l0_limit}"))
    return report


def prop1_check(t: SparseOperator, b: FiniteSequence) -> OrbitVerdict:
    """Every image a = Tb meets the orbit criterion with M = max of T's two column measures."""
    m = max(l1_operator_norm(t), Fraction(l0_expansion_bound(t)))
    a = apply(t, b)
    if m == 0:
        return OrbitVerdict(l0_norm(a) == 0, None, m)
    return check_orbit_criterion(a, b, m)


def e_chain_holds(a: FiniteSequence, b: FiniteSequence, c: Fraction) -> tuple[bool, Optional[Fraction]]:
    """E(2t, a) <= 2C E(t/C, b) for all t > 0; returns (ok, first failing t)."""
    ta, tb = tail_sums(rearrange(a)), tail_sums(rearrange(b))
    na = len(ta) - 1
    jumps_a = [Fraction(j, 2) for j in range(na + 1)]
    jumps_b = [c * j for j in range(len(tb)) if c * j <= Fraction(na, 2)]
    for t in step_grid(jumps_a, jumps_b):
        lhs = ta[math.floor(2 * t)] if math.floor(2 * t) < len(ta) else Fraction(0)
        kb = math.floor(t / c)
        rhs = 2 * c * (tb[kb] if kb < len(tb) else Fraction(0))
        if lhs > rhs:
            return False, t
    return True, None


def corollary1_roundtrip(a: FiniteSequence, b: FiniteSequence) -> Report:
    """K-domination -> E-chain -> orbit criterion at 2C_K -> verified certificate."""
    report: Report = []
    if l0_norm(b) == 0:
        return [_check("k_orbit_constant", False, "b = 0")]
    ck = k_orbit_constant(a, b)
    report.append(_check("k_orbit_constant", True, f"C_K = {ck}"))
    if ck == 0:
        cert = OperatorCertificate.certify(zero(len(b), len(a)), {"stage": "zero"})
        report.append(_check("e_chain", True, "a = 0"))
        report.append(_check("criterion", True, "a = 0"))
        report += verify_certificate(cert, a, b)
        return report

    ok, t_bad = e_chain_holds(a, b, ck)
    report.append(_check("e_chain", ok, "" if ok else f"fails at t = {t_bad}"))
    c = 2 * ck
    verdict = check_orbit_criterion(a, b, c)
    report.append(_check("criterion", verdict.holds, f"C = {c}" + ("" if verdict.holds else f", k = {verdict.witness_k}")))
    if not verdict.holds:
        return report
    cert = build_orbit_operator(a, b, c)
    report += verify_certificate(cert, a, b)
    l1, l0 = l1_operator_norm(cert.operator), l0_expansion_bound(cert.operator)
    if ck > Fraction(1, 2):
        bound = 9 * (math.floor(c) + 1)
        report.append(_check("orbit_norm_bound", max(l1, l0) <= bound, f"max({l1}, {l0}) <= {bound}"))
    else:
        l1_limit, l0_limit = orbit_limits(c)
        report.append(_check("orbit_norm_bound", l1 <= l1_limit and l0 <= l0_limit, f"{l1} <= {l1_limit}, {l0} <= {l0_limit}"))
    return report


# -- sweep used by the command line selftest --------------------------------------

def selftest(seed: int = 0, trials: int = 50, n: int = 40) -> Report:
    rng = random.Random(seed)
    report: Report = []
    failures = {"dominated_pairs": 0, "orbit": 0, "image_criterion": 0, "k_round_trip": 0, "oracles": 0}
    for trial in range(trials):
        a, b = random_dominated_pair(DominatedPairGenerator(seed=rng.randrange(2**32), n=n))
        cert = build_prop2_operator(rearrange(a), rearrange(b))
        if not passed(verify_certificate(cert, rearrange(a).as_sequence(), rearrange(b).as_sequence())):
            failures["dominated_pairs"] += 1

        c = Fraction(rng.randint(1, 24), rng.randint(1, 8))
        a2 = a.scale(Fraction(rng.randint(1, 8), rng.randint(1, 4)))
        if check_orbit_criterion(a2, b, c).holds:
            if not passed(verify_certificate(build_orbit_operator(a2, b, c), a2, b)):
                failures["orbit"] += 1

        t = random_sparse_operator(rng, rng.randint(1, 12), rng.randint(1, 12))
        x = random_sequence(rng, t.n_in)
        if not prop1_check(t, x).holds:
            failures["image_criterion"] += 1

        if not passed(corollary1_roundtrip(a2, b)):
            failures["k_round_trip"] += 1

        small = random_sequence(rng, rng.randint(0, 10))
        for _ in range(5):
            s = Fraction(rng.randint(1, 40), rng.randint(1, 12))
            if k_eval(small, s) != brute_k_functional(small, s) or e_functional(small, s) != brute_e_functional(small, s):
                failures["oracles"] += 1
    for name, count in failures.items():
        report.append(_check(name, count == 0, f"{count} failures in {trials} trials (seed {seed})"))
    return report

