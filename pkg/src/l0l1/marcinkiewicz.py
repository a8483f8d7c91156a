"""Marcinkiewicz-type groups M_alpha: weighted sup quasi-norms and their
equivalent tail-sum form, which certifies interpolation for (l0, l1)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .sequences import FiniteSequence, RatLike, rearrange, tail_sums, to_rat

Evaluator = Callable[[int], Fraction]


@dataclass(frozen=True)
class WeightFamily:
    """Increasing weights alpha_k with two-sided bounds on beta_k = sum_{i>=k} 1/alpha_i.

    ``horizon`` is None for closed-form families; for tables it is the last
    index at which alpha and beta are known.
    """

    alpha: Evaluator
    beta_lower: Evaluator
    beta_upper: Evaluator
    R1: Fraction
    R2: Fraction
    kind: str
    horizon: Optional[int] = None
    params: tuple = ()


@dataclass(frozen=True)
class WeightVerdict:
    holds: bool
    failing_k: Optional[int]
    checked_up_to: int
    note: str = ""

    def to_json(self) -> dict:
        return {
            "holds": self.holds,
            "failing_k": self.failing_k,
            "checked_up_to": self.checked_up_to,
            "note": self.note,
        }


def telescoping_quadratic() -> WeightFamily:
    """alpha_k = k(k+1), whose reciprocal tails telescope to exactly 1/k."""
    def alpha(k: int) -> Fraction:
        return Fraction(k * (k + 1))

    def beta(k: int) -> Fraction:
        return Fraction(1, k)

    return WeightFamily(alpha, beta, beta, Fraction(4), Fraction(2), "telescoping-quadratic")


def power_weight(p: RatLike) -> WeightFamily:
    """alpha_k = k^(1/p) for 0 < p < 1 with 1/p an integer.

    beta_k is bracketed by comparison with the integral of t^(-q):
    k^(1-q)/(q-1) <= beta_k <= q k^(1-q)/(q-1).
    """
    p = to_rat(p)
    if not 0 < p < 1:
        raise ValueError("p must lie in (0, 1)")
    q = 1 / p
    if q.denominator != 1:
        raise ValueError("1/p must be an integer so that k^(1/p) stays rational")
    q = int(q)

    def alpha(k: int) -> Fraction:
        return Fraction(k**q)

    def beta_lower(k: int) -> Fraction:
        return Fraction(1, (q - 1) * k ** (q - 1))

    def beta_upper(k: int) -> Fraction:
        return Fraction(q, (q - 1) * k ** (q - 1))

    return WeightFamily(
        alpha, beta_lower, beta_upper, Fraction(2**q), Fraction(q, q - 1), "power", params=(p,)
    )


def tabulated_weight(
    alpha: Sequence[RatLike],
    beta: Sequence[RatLike],
    R1: Optional[RatLike] = None,
    R2: Optional[RatLike] = None,
) -> WeightFamily:
    """User-supplied alpha_1..alpha_N with exact beta_1..beta_N.

    Missing constants are the smallest that work on the table.
    """
    al = [to_rat(v) for v in alpha]
    be = [to_rat(v) for v in beta]
    if not al or len(al) != len(be):
        raise ValueError("alpha and beta tables must be nonempty and of equal length")
    if any(v <= 0 for v in al) or any(u > v for u, v in zip(al, al[1:])):
        raise ValueError("alpha must be positive and nondecreasing")
    n = len(al)
    if R1 is None:
        R1 = max((al[2 * k - 1] / al[k - 1] for k in range(1, n // 2 + 1)), default=Fraction(1))
    if R2 is None:
        R2 = max(be[k - 1] * al[k - 1] / k for k in range(1, n + 1))

    def lookup(table: list[Fraction]) -> Evaluator:
        def get(k: int) -> Fraction:
            if not 1 <= k <= n:
                raise IndexError(f"weight table has no entry {k} (horizon {n})")
            return table[k - 1]
        return get

    return WeightFamily(lookup(al), lookup(be), lookup(be), to_rat(R1), to_rat(R2), "pairwise", horizon=n)


def custom_weight(alpha: Evaluator, beta: Evaluator, R1: RatLike, R2: RatLike, kind: str = "custom") -> WeightFamily:
    return WeightFamily(alpha, beta, beta, to_rat(R1), to_rat(R2), kind)


def norm_alpha(x: FiniteSequence, w: WeightFamily) -> Fraction:
    """sup_k alpha_k x*_k."""
    prof = rearrange(x).profile
    return max((w.alpha(k) * v for k, v in enumerate(prof, start=1)), default=Fraction(0))


def equiv_norm(x: FiniteSequence, w: WeightFamily) -> tuple[Fraction, Fraction]:
    """Interval containing sup_k tail_k(x*) / beta_k."""
    tails = tail_sums(rearrange(x))[:-1]
    lo = max((t / w.beta_upper(k) for k, t in enumerate(tails, start=1)), default=Fraction(0))
    hi = max((t / w.beta_lower(k) for k, t in enumerate(tails, start=1)), default=Fraction(0))
    return lo, hi


def _limit_horizon(w: WeightFamily, horizon: int, reach: int) -> tuple[int, str]:
    if w.horizon is None:
        return horizon, ""
    usable = w.horizon // reach
    if usable < horizon:
        return usable, f"table horizon {w.horizon} limits the check to k <= {usable}"
    return horizon, ""


def check_doubling(w: WeightFamily, horizon: int) -> WeightVerdict:
    """alpha_{2k} <= R1 alpha_k for k = 1..horizon."""
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    horizon, note = _limit_horizon(w, horizon, 2)
    for k in range(1, horizon + 1):
        if w.alpha(2 * k) > w.R1 * w.alpha(k):
            return WeightVerdict(False, k, horizon, note)
    return WeightVerdict(True, None, horizon, note)


def check_tail_condition(w: WeightFamily, horizon: int) -> WeightVerdict:
    """beta_k <= R2 k / alpha_k for k = 1..horizon (using the upper bound on beta)."""
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    horizon, note = _limit_horizon(w, horizon, 1)
    for k in range(1, horizon + 1):
        if w.beta_upper(k) > w.R2 * k / w.alpha(k):
            return WeightVerdict(False, k, horizon, note)
    return WeightVerdict(True, None, horizon, note)


@dataclass(frozen=True)
class SandwichVerdict:
    holds: bool
    lower: Fraction  # R1^-2 R2^-1 |x|_alpha
    middle: tuple[Fraction, Fraction]
    upper: Fraction  # |x|_alpha
    note: str = ""

    def to_json(self) -> dict:
        return {
            "holds": self.holds,
            "lower": str(self.lower),
            "middle": [str(self.middle[0]), str(self.middle[1])],
            "upper": str(self.upper),
            "note": self.note,
        }


def sandwich_check(x: FiniteSequence, w: WeightFamily) -> SandwichVerdict:
    upper = norm_alpha(x, w)
    lower = upper / (w.R1**2 * w.R2)
    lo, hi = equiv_norm(x, w)
    note = ""
    if w.horizon is not None:
        note = f"constants only certified up to the table horizon {w.horizon}"
    return SandwichVerdict(lower <= lo and hi <= upper, lower, (lo, hi), upper, note)
