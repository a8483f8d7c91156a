"""Finitely supported rational sequences, rearrangements and dilations.

Indices exposed to callers are 1-based, matching the usual way these
sequences are written down; internally values live in 0-based tuples.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Union

RatLike = Union[Fraction, int, str]


def to_rat(value: RatLike) -> Fraction:
    """Parse an int, a ``"p/q"`` string or a finite decimal string exactly.

    Floats are refused: their binary expansion is never what the user meant.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (Fraction, int)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not an exact rational: {value!r}") from exc
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def rat_str(q: Fraction) -> str:
    return str(q)


@dataclass(frozen=True)
class FiniteSequence:
    """x = (x_1, ..., x_n, 0, 0, ...) with trailing zeros dropped."""

    values: tuple[Fraction, ...] = ()

    def __post_init__(self) -> None:
        vals = [to_rat(v) for v in self.values]
        while vals and vals[-1] == 0:
            vals.pop()
        object.__setattr__(self, "values", tuple(vals))

    @classmethod
    def of(cls, *values: RatLike) -> "FiniteSequence":
        return cls(tuple(to_rat(v) for v in values))

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, k: int) -> Fraction:
        """1-based access; zero beyond the stored support."""
        if k < 1:
            raise IndexError("sequence indices start at 1")
        return self.values[k - 1] if k <= len(self.values) else Fraction(0)

    def __add__(self, other: "FiniteSequence") -> "FiniteSequence":
        n = max(len(self), len(other))
        return FiniteSequence(tuple(self[k] + other[k] for k in range(1, n + 1)))

    def __neg__(self) -> "FiniteSequence":
        return FiniteSequence(tuple(-v for v in self.values))

    def scale(self, c: RatLike) -> "FiniteSequence":
        c = to_rat(c)
        return FiniteSequence(tuple(c * v for v in self.values))

    def support(self) -> list[int]:
        return [k for k, v in enumerate(self.values, start=1) if v != 0]


@dataclass(frozen=True)
class SortedProfile:
    """Nonincreasing rearrangement of |x| together with the way back to x.

    ``recover[s]`` is the pair (original index, sign) that slot ``s + 1`` of
    the profile came from, so ``x[index] == sign * profile[s]``.
    """

    profile: tuple[Fraction, ...]
    recover: tuple[tuple[int, int], ...] = field(default=())
    length: int = 0  # length of the sequence that was rearranged

    def __len__(self) -> int:
        return len(self.profile)

    def value(self, i: int) -> Fraction:
        """x*_i (1-based), zero past the support and for i < 1."""
        if 1 <= i <= len(self.profile):
            return self.profile[i - 1]
        return Fraction(0)

    def as_sequence(self) -> FiniteSequence:
        return FiniteSequence(self.profile)

    def restore(self) -> FiniteSequence:
        out = [Fraction(0)] * self.length
        for v, (idx, sign) in zip(self.profile, self.recover):
            out[idx - 1] = sign * v
        return FiniteSequence(tuple(out))


def rearrange(x: FiniteSequence) -> SortedProfile:
    nonzero = [(abs(v), k, 1 if v > 0 else -1) for k, v in enumerate(x.values, start=1) if v != 0]
    # ties go to the smaller original index
    nonzero.sort(key=lambda item: (-item[0], item[1]))
    return SortedProfile(
        profile=tuple(v for v, _, _ in nonzero),
        recover=tuple((k, s) for _, k, s in nonzero),
        length=len(x),
    )


def profile_of(values: Iterable[RatLike]) -> SortedProfile:
    """Profile from values already known to be nonincreasing and nonnegative."""
    vals = [to_rat(v) for v in values]
    for u, v in zip(vals, vals[1:]):
        if u < v:
            raise ValueError("profile values must be nonincreasing")
    if vals and vals[-1] < 0:
        raise ValueError("profile values must be nonnegative")
    while vals and vals[-1] == 0:
        vals.pop()
    return SortedProfile(tuple(vals), tuple((k, 1) for k in range(1, len(vals) + 1)), len(vals))


def tail_sum(p: SortedProfile, k: int) -> Fraction:
    """Sum of profile entries from position k on."""
    if k < 1:
        raise ValueError("tail index must be >= 1")
    return sum(p.profile[k - 1:], Fraction(0))


def tail_sums(p: SortedProfile) -> list[Fraction]:
    """All tails at once: ``out[k - 1] == tail_sum(p, k)`` for k = 1..len(p) + 1."""
    out = [Fraction(0)] * (len(p.profile) + 1)
    for i in range(len(p.profile) - 1, -1, -1):
        out[i] = out[i + 1] + p.profile[i]
    return out


def l0_norm(x: FiniteSequence) -> int:
    return sum(1 for v in x.values if v != 0)


def l1_norm(x: FiniteSequence) -> Fraction:
    return sum((abs(v) for v in x.values), Fraction(0))


def dilate_up(x: FiniteSequence, m: int) -> FiniteSequence:
    """Repeat every entry m times."""
    if m < 1:
        raise ValueError("dilation factor must be a positive integer")
    return FiniteSequence(tuple(v for v in x.values for _ in range(m)))


def dilate_down(x: FiniteSequence, m: int) -> FiniteSequence:
    """Average consecutive blocks of length m; the last block is zero padded."""
    if m < 1:
        raise ValueError("dilation factor must be a positive integer")
    vals = x.values
    return FiniteSequence(
        tuple(sum(vals[s:s + m], Fraction(0)) / m for s in range(0, len(vals), m))
    )
