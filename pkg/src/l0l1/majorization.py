"""Tail-sum membership criteria for orbits in (l0, l1)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .functionals import k_functional
from .sequences import (
    FiniteSequence,
    RatLike,
    SortedProfile,
    l0_norm,
    l1_norm,
    rearrange,
    tail_sums,
    to_rat,
)


class NoFiniteConstant(ValueError):
    """Raised when no C > 0 can make the criterion hold (b = 0, a != 0)."""


@dataclass(frozen=True)
class OrbitVerdict:
    holds: bool
    witness_k: Optional[int]
    constant: Fraction

    def to_json(self) -> dict:
        return {"holds": self.holds, "witness_k": self.witness_k, "constant": str(self.constant)}


def _profiles(a, b) -> tuple[SortedProfile, SortedProfile]:
    pa = a if isinstance(a, SortedProfile) else rearrange(a)
    pb = b if isinstance(b, SortedProfile) else rearrange(b)
    return pa, pb


def _tail(tails: list[Fraction], k: int) -> Fraction:
    return tails[k - 1] if k <= len(tails) else Fraction(0)


def criterion_start(k: int, c: Fraction) -> int:
    """Where the b-tail starts for index k; [k/C] = 0 is clamped to 1."""
    return max(1, math.floor(k / c))


def check_tail_domination(a, b) -> OrbitVerdict:
    pa, pb = _profiles(a, b)
    ta, tb = tail_sums(pa), tail_sums(pb)
    for k in range(1, len(pa) + 1):
        if _tail(ta, k) > _tail(tb, k):
            return OrbitVerdict(False, k, Fraction(1))
    return OrbitVerdict(True, None, Fraction(1))


def check_orbit_criterion(a, b, c: RatLike) -> OrbitVerdict:
    """sum_{i>=k} a*_i <= C sum_{i>=[k/C]} b*_i for every k."""
    c = to_rat(c)
    if c <= 0:
        raise ValueError("C must be positive")
    pa, pb = _profiles(a, b)
    ta, tb = tail_sums(pa), tail_sums(pb)
    for k in range(1, len(pa) + 1):
        if _tail(ta, k) > c * _tail(tb, criterion_start(k, c)):
            return OrbitVerdict(False, k, c)
    return OrbitVerdict(True, None, c)


def orbit_constant(a, b, precision: RatLike = Fraction(1, 64)) -> tuple[Fraction, Fraction]:
    """Bracket [lo, hi] around the least C satisfying the orbit criterion.

    The criterion is monotone in C, so bisection is exact up to ``precision``.
    ``lo`` fails (``lo = 0`` is treated as failing, C must be positive) and
    ``hi`` holds.
    """
    precision = to_rat(precision)
    if precision <= 0:
        raise ValueError("precision must be positive")
    pa, pb = _profiles(a, b)
    if len(pb) == 0:
        if len(pa) == 0:
            raise NoFiniteConstant("b = 0: the orbit constant is undefined")
        raise NoFiniteConstant("b = 0 majorizes nothing but 0")

    # any C >= max(|a|_0 + 1, |a|_1/|b|_1) clamps every start to 1 and holds
    ceiling = max(Fraction(len(pa) + 1), sum(pa.profile, Fraction(0)) / sum(pb.profile, Fraction(0)))
    lo, hi = Fraction(0), Fraction(1)
    while not check_orbit_criterion(pa, pb, hi).holds:
        lo, hi = hi, min(2 * hi, ceiling)
        if lo == ceiling:
            raise AssertionError("criterion fails above its a-priori bound")
    while hi - lo > precision:
        mid = (lo + hi) / 2
        if check_orbit_criterion(pa, pb, mid).holds:
            hi = mid
        else:
            lo = mid
    return lo, hi


def k_orbit_constant(a: FiniteSequence, b: FiniteSequence) -> Fraction:
    """sup_{t>0} K(t, a) / K(t, b), exactly."""
    if l0_norm(a) == 0:
        return Fraction(0)
    if l0_norm(b) == 0:
        raise NoFiniteConstant("K(t, b) = 0: the ratio is unbounded")
    ka, kb = k_functional(a), k_functional(b)
    # ratio of two linear functions is monotone on each common piece
    best = max(l1_norm(a) / l1_norm(b), Fraction(l0_norm(a), l0_norm(b)))
    for t in set(ka.breakpoints) | set(kb.breakpoints):
        best = max(best, ka(t) / kb(t))
    return best


def step_grid(jumps_a: list[Fraction], jumps_b: list[Fraction]) -> list[Fraction]:
    """Sample points, one inside every interval of constancy of two step functions."""
    grid = sorted(set(jumps_a) | set(jumps_b) | {Fraction(0)})
    points = [(u + v) / 2 for u, v in zip(grid, grid[1:])]
    points.append(grid[-1] + 1)
    return points


def e_orbit_check(a, b, c: RatLike) -> OrbitVerdict:
    """E(t, a) <= C E(t/C, b) for every t > 0.

    A failure reports ``witness_k = [t] + 1`` for the first failing t, i.e.
    the index at which the a-tail starts.
    """
    c = to_rat(c)
    if c <= 0:
        raise ValueError("C must be positive")
    pa, pb = _profiles(a, b)
    ta, tb = tail_sums(pa), tail_sums(pb)
    na = len(pa)
    jumps_a = [Fraction(j) for j in range(na + 1)]
    jumps_b = [c * j for j in range(len(pb) + 1) if c * j <= na]
    for t in step_grid(jumps_a, jumps_b):
        k = math.floor(t) + 1
        if _tail(ta, k) > c * _tail(tb, math.floor(t / c) + 1):
            return OrbitVerdict(False, k, c)
    return OrbitVerdict(True, None, c)
