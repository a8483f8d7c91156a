"""Row-sparse linear maps with exact rational coefficients.

Rows and columns are 1-based.  Column measures give the two norms that
matter for (l0, l1): the largest column abs-sum is the l1 -> l1 norm, the
largest column support size bounds card supp(Tx) / card supp(x).
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .sequences import FiniteSequence, SortedProfile


class DimensionError(ValueError):
    pass


@dataclass(frozen=True)
class SparseOperator:
    n_in: int
    n_out: int
    rows: Mapping[int, tuple[tuple[int, Fraction], ...]]

    def __post_init__(self) -> None:
        clean: dict[int, tuple[tuple[int, Fraction], ...]] = {}
        for r, entries in self.rows.items():
            if not 1 <= r <= self.n_out:
                raise DimensionError(f"row {r} outside 1..{self.n_out}")
            acc: dict[int, Fraction] = {}
            for i, coeff in entries:
                if not 1 <= i <= self.n_in:
                    raise DimensionError(f"column {i} outside 1..{self.n_in}")
                acc[i] = acc.get(i, Fraction(0)) + Fraction(coeff)
            kept = tuple(sorted((i, c) for i, c in acc.items() if c != 0))
            if kept:
                clean[r] = kept
        object.__setattr__(self, "rows", dict(sorted(clean.items())))

    @classmethod
    def from_entries(cls, n_in: int, n_out: int, entries: Iterable[tuple[int, int, Fraction]]):
        rows: dict[int, list] = defaultdict(list)
        for r, i, c in entries:
            rows[r].append((i, c))
        return cls(n_in, n_out, rows)

    def entries(self):
        for r, row in self.rows.items():
            for i, c in row:
                yield r, i, c

    def nnz(self) -> int:
        return sum(len(row) for row in self.rows.values())

    def columns(self) -> dict[int, list[tuple[int, Fraction]]]:
        cols: dict[int, list[tuple[int, Fraction]]] = defaultdict(list)
        for r, i, c in self.entries():
            cols[i].append((r, c))
        return cols

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseOperator):
            return NotImplemented
        return (self.n_in, self.n_out, self.rows) == (other.n_in, other.n_out, other.rows)

    def __hash__(self) -> int:
        return hash((self.n_in, self.n_out, tuple(self.rows.items())))


def identity(n: int) -> SparseOperator:
    return SparseOperator(n, n, {i: ((i, Fraction(1)),) for i in range(1, n + 1)})


def zero(n_in: int, n_out: int) -> SparseOperator:
    return SparseOperator(n_in, n_out, {})


def apply(t: SparseOperator, x: FiniteSequence) -> FiniteSequence:
    if len(x) > t.n_in:
        raise DimensionError(f"input has length {len(x)} > n_in = {t.n_in}")
    out = [Fraction(0)] * t.n_out
    for r, row in t.rows.items():
        out[r - 1] = sum((c * x[i] for i, c in row), Fraction(0))
    return FiniteSequence(tuple(out))


def compose(s: SparseOperator, t: SparseOperator) -> SparseOperator:
    """The map x -> S(T x)."""
    if s.n_in != t.n_out:
        raise DimensionError(f"cannot compose: S.n_in = {s.n_in}, T.n_out = {t.n_out}")
    rows = {}
    for r, srow in s.rows.items():
        acc: dict[int, Fraction] = defaultdict(Fraction)
        for mid, c in srow:
            for i, d in t.rows.get(mid, ()):
                acc[i] += c * d
        rows[r] = tuple(acc.items())
    return SparseOperator(t.n_in, s.n_out, rows)


def l1_operator_norm(t: SparseOperator) -> Fraction:
    return max((sum(abs(c) for _, c in col) for col in t.columns().values()), default=Fraction(0))


def l0_expansion_bound(t: SparseOperator) -> int:
    return max((len(col) for col in t.columns().values()), default=0)


def to_profile_operator(p: SortedProfile) -> SparseOperator:
    """Signed permutation taking the rearranged sequence x to its profile x*."""
    return SparseOperator(
        p.length, len(p), {s: ((idx, Fraction(sign)),) for s, (idx, sign) in enumerate(p.recover, start=1)}
    )


def from_profile_operator(p: SortedProfile, n_in: int | None = None) -> SparseOperator:
    """Signed permutation taking the profile x* back to x (extra inputs ignored)."""
    n_in = len(p) if n_in is None else n_in
    return SparseOperator(
        n_in, p.length, {idx: ((s, Fraction(sign)),) for s, (idx, sign) in enumerate(p.recover, start=1)}
    )


def dilation_up_operator(n: int, m: int) -> SparseOperator:
    """sigma_m on sequences of length n: output r reads input ceil(r/m)."""
    return SparseOperator(n, n * m, {r: (((r + m - 1) // m, Fraction(1)),) for r in range(1, n * m + 1)})


def dilation_down_operator(n: int, m: int) -> SparseOperator:
    """sigma_{1/m} on sequences of length n: block averages of length m."""
    n_out = -(-n // m)
    w = Fraction(1, m)
    return SparseOperator(
        n,
        n_out,
        {r: tuple((i, w) for i in range((r - 1) * m + 1, min(r * m, n) + 1)) for r in range(1, n_out + 1)},
    )
