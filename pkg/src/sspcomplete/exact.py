"""Exact rational matrices, determinants and principal minors.

Everything here works over :class:`fractions.Fraction`; no floating point is
ever involved, so a sign decision on a minor is always final.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import lcm
from typing import Iterable, Iterator, Sequence, Union

MAX_ORDER = 8

Rational = Fraction
IndexSet = tuple[int, ...]
RationalLike = Union[int, str, Fraction]


def to_rational(value: RationalLike) -> Fraction:
    """Parse ``3``, ``"-3/4"`` or a Fraction. Floats are refused."""
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"refusing inexact value {value!r}")
    if isinstance(value, str):
        text = value.strip()
        if not text or any(c in text for c in ".eE"):
            raise ValueError(f"not an exact rational: {value!r}")
        return Fraction(text)
    return Fraction(value)


def format_rational(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def index_set(elements: Iterable[int], n: int) -> IndexSet:
    """Validate a 1-based principal index set against order ``n``."""
    s = tuple(elements)
    if not s:
        raise ValueError("index set must be nonempty")
    if any(b <= a for a, b in zip(s, s[1:])):
        raise ValueError(f"index set {s} is not strictly increasing")
    if s[0] < 1 or s[-1] > n:
        raise IndexError(f"index set {s} out of bounds for order {n}")
    return s


def index_sets(n: int, k: int) -> Iterator[IndexSet]:
    """All k-subsets of 1..n in lexicographic order."""
    return combinations(range(1, n + 1), k)


@dataclass(frozen=True)
class ExactMatrix:
    rows: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        n = len(self.rows)
        if not 1 <= n <= MAX_ORDER:
            raise ValueError(f"order {n} outside supported range 1..{MAX_ORDER}")
        if any(len(r) != n for r in self.rows):
            raise ValueError("matrix is not square")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[RationalLike]]) -> "ExactMatrix":
        return cls(tuple(tuple(to_rational(v) for v in r) for r in rows))

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls.diagonal([1] * n)

    @classmethod
    def diagonal(cls, values: Sequence[RationalLike]) -> "ExactMatrix":
        n = len(values)
        return cls.from_rows(
            [[values[i] if i == j else 0 for j in range(n)] for i in range(n)]
        )

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        """1-based entry access, ``m[i, j]``."""
        i, j = ij
        if not (1 <= i <= self.n and 1 <= j <= self.n):
            raise IndexError(f"({i},{j}) out of bounds for order {self.n}")
        return self.rows[i - 1][j - 1]

    def submatrix(self, s: IndexSet) -> "ExactMatrix":
        s = index_set(s, self.n)
        return ExactMatrix(tuple(tuple(self.rows[i - 1][j - 1] for j in s) for i in s))

    def permuted(self, perm: Sequence[int]) -> "ExactMatrix":
        """Simultaneous row/column relabelling: new[i][j] = old[perm[i]][perm[j]] (0-based perm)."""
        return ExactMatrix(tuple(tuple(self.rows[a][b] for b in perm) for a in perm))

    def swap_rows(self, i: int, j: int) -> "ExactMatrix":
        rows = list(self.rows)
        rows[i - 1], rows[j - 1] = rows[j - 1], rows[i - 1]
        return ExactMatrix(tuple(rows))

    def to_lists(self) -> list[list[Fraction]]:
        return [list(r) for r in self.rows]

    def __str__(self) -> str:
        return "\n".join(" ".join(format_rational(v) for v in r) for r in self.rows)


def integer_scaled(rows: Sequence[Sequence[Fraction]]) -> tuple[list[list[int]], int]:
    """Multiply through by the lcm of all denominators.

    Returns the integer rows and the positive scale ``L``; a k x k minor of the
    scaled matrix equals ``L**k`` times the original minor, so signs agree.
    """
    scale = 1
    for r in rows:
        for v in r:
            scale = lcm(scale, v.denominator)
    return [[v.numerator * (scale // v.denominator) for v in r] for r in rows], scale


def bareiss_det_int(a: list[list[int]]) -> int:
    """Fraction-free elimination on an integer matrix. Mutates ``a``."""
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        row_k = a[k]
        for i in range(k + 1, n):
            row_i = a[i]
            aik = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - aik * row_k[j]) // prev
        prev = pivot
    return sign * a[n - 1][n - 1]


def det(m: ExactMatrix) -> Fraction:
    ints, scale = integer_scaled(m.rows)
    return Fraction(bareiss_det_int(ints), scale**m.n)


def det_cofactor(m: ExactMatrix) -> Fraction:
    """Laplace expansion along the first row. Kept only as an independent oracle."""

    def expand(rows: list[tuple[Fraction, ...]], cols: tuple[int, ...]) -> Fraction:
        if len(cols) == 1:
            return rows[0][cols[0]]
        total = Fraction(0)
        for pos, c in enumerate(cols):
            entry = rows[0][c]
            if entry == 0:
                continue
            rest = cols[:pos] + cols[pos + 1 :]
            term = entry * expand(rows[1:], rest)
            total += term if pos % 2 == 0 else -term
        return total

    return expand(list(m.rows), tuple(range(m.n)))


def principal_minor(m: ExactMatrix, s: IndexSet) -> Fraction:
    return det(m.submatrix(s))


def all_principal_minors_int(a: Sequence[Sequence[int]]) -> dict[IndexSet, int]:
    """Every principal minor of an integer matrix, keyed by 1-based index set."""
    n = len(a)
    out: dict[IndexSet, int] = {}
    for k in range(1, n + 1):
        for s in index_sets(n, k):
            if k == 1:
                out[s] = a[s[0] - 1][s[0] - 1]
            elif k == 2:
                i, j = s[0] - 1, s[1] - 1
                out[s] = a[i][i] * a[j][j] - a[i][j] * a[j][i]
            else:
                out[s] = bareiss_det_int([[a[i - 1][j - 1] for j in s] for i in s])
    return out


@dataclass(frozen=True)
class OrderSummary:
    order: int
    minors: tuple[tuple[IndexSet, Fraction], ...]
    minimum: Fraction
    positive: int
    zero: int
    negative: int


@dataclass(frozen=True)
class MinorProfile:
    n: int
    by_order: tuple[OrderSummary, ...]

    def order(self, k: int) -> OrderSummary:
        return self.by_order[k - 1]

    def values(self, k: int) -> list[Fraction]:
        return [v for _, v in self.order(k).minors]

    def as_dict(self) -> dict[IndexSet, Fraction]:
        return {s: v for summary in self.by_order for s, v in summary.minors}

    def __len__(self) -> int:
        return sum(len(o.minors) for o in self.by_order)


def minor_profile(m: ExactMatrix) -> MinorProfile:
    ints, scale = integer_scaled(m.rows)
    raw = all_principal_minors_int(ints)
    summaries = []
    for k in range(1, m.n + 1):
        minors = tuple(
            (s, Fraction(raw[s], scale**k)) for s in index_sets(m.n, k)
        )
        vals = [v for _, v in minors]
        summaries.append(
            OrderSummary(
                order=k,
                minors=minors,
                minimum=min(vals),
                positive=sum(v > 0 for v in vals),
                zero=sum(v == 0 for v in vals),
                negative=sum(v < 0 for v in vals),
            )
        )
    return MinorProfile(m.n, tuple(summaries))
