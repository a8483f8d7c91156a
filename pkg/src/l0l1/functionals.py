"""E-, K- and E*-functionals of the pair (l0, l1), computed exactly."""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .sequences import FiniteSequence, RatLike, l0_norm, rearrange, tail_sum, tail_sums, to_rat


@dataclass(frozen=True)
class PiecewiseLinearConcave:
    """Minimum of finitely many lines on [0, inf).

    ``segments[i]`` is active on ``[breakpoints[i-1], breakpoints[i]]``.
    """

    segments: tuple[tuple[Fraction, Fraction], ...]
    breakpoints: tuple[Fraction, ...]

    def __call__(self, t: RatLike) -> Fraction:
        t = to_rat(t)
        # continuity makes either neighbour correct at a breakpoint
        slope, intercept = self.segments[bisect_right(self.breakpoints, t)]
        return intercept + slope * t

    def initial_slope(self) -> Fraction:
        return self.segments[0][0]

    def final_value(self) -> Fraction:
        """Limit at infinity; finite only when the last slope is zero."""
        slope, intercept = self.segments[-1]
        if slope != 0:
            raise ValueError("envelope is unbounded")
        return intercept


def lower_envelope(lines: Iterable[tuple[RatLike, RatLike]]) -> PiecewiseLinearConcave:
    """Lower envelope on t >= 0 of lines given as (slope, intercept)."""
    best: dict[Fraction, Fraction] = {}
    for slope, intercept in lines:
        slope, intercept = to_rat(slope), to_rat(intercept)
        if slope not in best or intercept < best[slope]:
            best[slope] = intercept
    if not best:
        raise ValueError("need at least one line")

    hull: list[tuple[Fraction, Fraction]] = []
    starts: list[Fraction] = []  # where each hull line becomes the minimum
    for slope, intercept in sorted(best.items(), key=lambda item: -item[0]):
        while hull:
            m1, c1 = hull[-1]
            cross = (intercept - c1) / (m1 - slope)
            if cross <= starts[-1]:
                hull.pop()
                starts.pop()
                continue
            break
        if hull:
            m1, c1 = hull[-1]
            starts.append((intercept - c1) / (m1 - slope))
        else:
            starts.append(Fraction(0))
        hull.append((slope, intercept))
    return PiecewiseLinearConcave(tuple(hull), tuple(starts[1:]))


def e_functional(x: FiniteSequence, t: RatLike) -> Fraction:
    """Best l1 error when approximating x by at most t nonzero entries."""
    t = to_rat(t)
    if t < 0:
        raise ValueError("t must be nonnegative")
    return tail_sum(rearrange(x), math.floor(t) + 1)


def k_functional(x: FiniteSequence) -> PiecewiseLinearConcave:
    tails = tail_sums(rearrange(x))
    # keeping the k largest entries costs k plus t times the rest
    return lower_envelope((tails[k], k) for k in range(len(tails)))


def k_eval(x: FiniteSequence, t: RatLike) -> Fraction:
    t = to_rat(t)
    if t <= 0:
        raise ValueError("t must be positive")
    return k_functional(x)(t)


def e_star_from_envelope(env: PiecewiseLinearConcave, t: Fraction) -> Fraction:
    # (K(s) - t)/s is monotone on each segment, so only breakpoints and the
    # two ends matter; the end at infinity contributes the limit 0.
    best = Fraction(0)
    if t == 0:
        best = max(best, env.initial_slope())
    for s in env.breakpoints:
        best = max(best, (env(s) - t) / s)
    return best


def e_star(x: FiniteSequence, t: RatLike) -> Fraction:
    """Greatest convex minorant of t -> E(t, x), via sup_s (K(s, x) - t)/s."""
    t = to_rat(t)
    if t < 0:
        raise ValueError("t must be nonnegative")
    if t >= l0_norm(x):
        return Fraction(0)
    return e_star_from_envelope(k_functional(x), t)
