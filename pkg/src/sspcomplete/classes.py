"""Matrix classes, partial matrices and membership verdicts.

Class definitions used throughout:

* ``P``: every principal minor positive.
* ``P0``: every principal minor nonnegative.
* ``P0+``: P0, and for every order k = 1..n at least one k x k principal
  minor is positive.  The "at least one positive" requirement is enforced for
  every k, including k = n where the only minor is the determinant.
* ``P0,1+``: P0+ with a positive diagonal.
* ``P0,1`` (only in its sign symmetric form): P0 with a positive diagonal.
* sign symmetric variants add: for all i < j, a_ij * a_ji > 0 or a_ij = a_ji = 0.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .exact import (
    MAX_ORDER,
    ExactMatrix,
    IndexSet,
    RationalLike,
    all_principal_minors_int,
    det,
    format_rational,
    index_sets,
    integer_scaled,
    principal_minor,
    to_rational,
)


class MatrixClass(enum.Enum):
    P = "p"
    P0 = "p0"
    P0_PLUS = "p0plus"
    P01_PLUS = "p01plus"
    SSP = "ssp"
    SSP0 = "ssp0"
    SSP01 = "ssp01"
    SSP0_PLUS = "ssp0plus"
    SSP01_PLUS = "ssp01plus"

    @classmethod
    def parse(cls, text: str) -> "MatrixClass":
        key = text.strip().lower().replace("_", "").replace("-", "").replace("+", "plus")
        for c in cls:
            if c.value == key:
                return c
        raise ValueError(f"unknown matrix class {text!r}")

    @property
    def sign_symmetric(self) -> bool:
        return self.value.startswith("ss")

    @property
    def strict(self) -> bool:
        """All principal minors must be positive."""
        return self in (MatrixClass.P, MatrixClass.SSP)

    @property
    def needs_positive_per_order(self) -> bool:
        return self.value.endswith("plus")

    @property
    def positive_diagonal(self) -> bool:
        return self.strict or self in (
            MatrixClass.P01_PLUS,
            MatrixClass.SSP01,
            MatrixClass.SSP01_PLUS,
        )

    @property
    def requires_positive_top_minor(self) -> bool:
        return self.strict or self.needs_positive_per_order

    @property
    def label(self) -> str:
        return {
            "p": "P",
            "p0": "P0",
            "p0plus": "P0+",
            "p01plus": "P0,1+",
            "ssp": "ssP",
            "ssp0": "ssP0",
            "ssp01": "ssP0,1",
            "ssp0plus": "ssP0+",
            "ssp01plus": "ssP0,1+",
        }[self.value]


# --- witnesses -------------------------------------------------------------


@dataclass(frozen=True)
class BadMinor:
    """A principal minor that is negative (or non-positive for strict classes)."""

    index_set: IndexSet
    value: Fraction

    def describe(self) -> str:
        s = ",".join(map(str, self.index_set))
        return f"minor A({s}) = {format_rational(self.value)}"

    def recheck(self, m: ExactMatrix, c: MatrixClass) -> bool:
        v = principal_minor(m, self.index_set)
        return v == self.value and (v <= 0 if c.strict else v < 0)


@dataclass(frozen=True)
class NoPositiveMinor:
    order: int

    def describe(self) -> str:
        return f"order {self.order} has no positive principal minor"

    def recheck(self, m: ExactMatrix, c: MatrixClass) -> bool:
        return all(principal_minor(m, s) <= 0 for s in index_sets(m.n, self.order))


@dataclass(frozen=True)
class BadDiagonal:
    index: int
    value: Fraction

    def describe(self) -> str:
        return f"diagonal ({self.index},{self.index}) = {format_rational(self.value)} is not positive"

    def recheck(self, m: ExactMatrix, c: MatrixClass) -> bool:
        return m[self.index, self.index] == self.value and self.value <= 0


@dataclass(frozen=True)
class TwinViolation:
    i: int
    j: int
    a_ij: Fraction
    a_ji: Fraction

    def describe(self) -> str:
        prod = format_rational(self.a_ij * self.a_ji)
        return f"twin pair ({self.i},{self.j}) has product {prod}"

    def recheck(self, m: ExactMatrix, c: MatrixClass) -> bool:
        a, b = m[self.i, self.j], m[self.j, self.i]
        return (a, b) == (self.a_ij, self.a_ji) and not twins_ok(a, b)


@dataclass(frozen=True)
class Disagreement:
    i: int
    j: int
    expected: Fraction
    found: Fraction

    def describe(self) -> str:
        return (
            f"cell ({self.i},{self.j}) is {format_rational(self.found)}, "
            f"specified {format_rational(self.expected)}"
        )

    def recheck(self, m: ExactMatrix, c: MatrixClass) -> bool:
        return m[self.i, self.j] == self.found != self.expected


Witness = Union[BadMinor, NoPositiveMinor, BadDiagonal, TwinViolation, Disagreement]


@dataclass(frozen=True)
class MembershipVerdict:
    member: bool
    witness: Optional[Witness] = None

    def __bool__(self) -> bool:
        return self.member

    def describe(self) -> str:
        if self.member:
            return "member"
        return f"non-member: {self.witness.describe()}"


def twins_ok(a: Fraction, b: Fraction) -> bool:
    return a * b > 0 or (a == 0 and b == 0)


def is_member(m: ExactMatrix, c: MatrixClass) -> MembershipVerdict:
    """Exhaustive membership test. Witness priority: twins, diagonal, minors, per-order positivity."""
    n = m.n
    if c.sign_symmetric:
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                if not twins_ok(m[i, j], m[j, i]):
                    return MembershipVerdict(False, TwinViolation(i, j, m[i, j], m[j, i]))
    if c.positive_diagonal:
        for i in range(1, n + 1):
            if m[i, i] <= 0:
                return MembershipVerdict(False, BadDiagonal(i, m[i, i]))
    ints, scale = integer_scaled(m.rows)
    minors = all_principal_minors_int(ints)
    for s, v in minors.items():
        if v < 0 or (c.strict and v == 0):
            return MembershipVerdict(False, BadMinor(s, Fraction(v, scale ** len(s))))
    if c.needs_positive_per_order:
        for k in range(1, n + 1):
            if not any(minors[s] > 0 for s in index_sets(n, k)):
                return MembershipVerdict(False, NoPositiveMinor(k))
    return MembershipVerdict(True)


# --- partial matrices ------------------------------------------------------

Cell = Optional[Fraction]


@dataclass(frozen=True)
class PartialMatrix:
    """Square grid whose cells are a Fraction (specified) or None (unspecified)."""

    cells: tuple[tuple[Cell, ...], ...]

    def __post_init__(self) -> None:
        n = len(self.cells)
        if not 1 <= n <= MAX_ORDER:
            raise ValueError(f"order {n} outside supported range 1..{MAX_ORDER}")
        if any(len(r) != n for r in self.cells):
            raise ValueError("partial matrix is not square")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Union[RationalLike, None]]]) -> "PartialMatrix":
        def conv(v):
            if v is None or v == "?":
                return None
            return to_rational(v)

        return cls(tuple(tuple(conv(v) for v in r) for r in rows))

    @classmethod
    def from_matrix(cls, m: ExactMatrix) -> "PartialMatrix":
        return cls(m.rows)

    @property
    def n(self) -> int:
        return len(self.cells)

    def __getitem__(self, ij: tuple[int, int]) -> Cell:
        i, j = ij
        return self.cells[i - 1][j - 1]

    def specified(self, i: int, j: int) -> bool:
        return self.cells[i - 1][j - 1] is not None

    def unspecified_cells(self) -> list[tuple[int, int]]:
        return [
            (i, j)
            for i in range(1, self.n + 1)
            for j in range(1, self.n + 1)
            if self.cells[i - 1][j - 1] is None
        ]

    @property
    def is_complete(self) -> bool:
        return not self.unspecified_cells()

    def fully_specified(self, s: IndexSet) -> bool:
        return all(self.cells[i - 1][j - 1] is not None for i in s for j in s)

    def specified_submatrix(self, s: IndexSet) -> ExactMatrix:
        if not self.fully_specified(s):
            raise ValueError(f"A({s}) is not fully specified")
        return ExactMatrix(tuple(tuple(self.cells[i - 1][j - 1] for j in s) for i in s))  # type: ignore[misc]

    def to_matrix(self) -> ExactMatrix:
        if not self.is_complete:
            raise ValueError("partial matrix has unspecified cells")
        return ExactMatrix(self.cells)  # type: ignore[arg-type]

    def fill(self, values: dict[tuple[int, int], Fraction]) -> ExactMatrix:
        """Complete with ``values`` for the unspecified cells (1-based keys)."""
        rows = []
        for i in range(1, self.n + 1):
            row = []
            for j in range(1, self.n + 1):
                v = self.cells[i - 1][j - 1]
                row.append(v if v is not None else values[(i, j)])
            rows.append(tuple(row))
        return ExactMatrix(tuple(rows))

    def permuted(self, perm: Sequence[int]) -> "PartialMatrix":
        return PartialMatrix(tuple(tuple(self.cells[a][b] for b in perm) for a in perm))

    def __str__(self) -> str:
        return "\n".join(
            " ".join("?" if v is None else format_rational(v) for v in r) for r in self.cells
        )


CASE_DIAGONAL_UNSPECIFIED = "i"
CASE_OFF_DIAGONAL_UNSPECIFIED = "ii"
CASE_COMPLETE = "iii"


@dataclass(frozen=True)
class PartialVerdict:
    member: bool
    case: str
    witness: Optional[Witness] = None

    def __bool__(self) -> bool:
        return self.member

    def describe(self) -> str:
        head = f"case ({self.case})"
        if self.member:
            return f"member, {head}"
        return f"non-member, {head}: {self.witness.describe()}"


def structural_case(p: PartialMatrix) -> str:
    if any(p[i, i] is None for i in range(1, p.n + 1)):
        return CASE_DIAGONAL_UNSPECIFIED
    if not p.is_complete:
        return CASE_OFF_DIAGONAL_UNSPECIFIED
    return CASE_COMPLETE


def is_partial_member(
    p: PartialMatrix, c: MatrixClass = MatrixClass.SSP01_PLUS
) -> PartialVerdict:
    """Partial-class membership, tagged with the structural case (i)/(ii)/(iii).

    For ssP0,1+ the three cases read: (i) some diagonal unspecified; (ii) all
    diagonal specified and positive, something off the diagonal unspecified;
    (iii) complete and a member.  In (i) and (ii) only fully specified twin
    pairs and fully specified principal submatrices are constrained.  Other
    classes use the same hereditary reading with their own minor sign rule and,
    where the class demands it, positive specified diagonals.
    """
    case = structural_case(p)
    if case == CASE_COMPLETE:
        v = is_member(p.to_matrix(), c)
        return PartialVerdict(v.member, case, v.witness)

    n = p.n
    if c.sign_symmetric:
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                a, b = p[i, j], p[j, i]
                if a is not None and b is not None and not twins_ok(a, b):
                    return PartialVerdict(False, case, TwinViolation(i, j, a, b))

    if c is MatrixClass.SSP01_PLUS:
        diag_positive = case == CASE_OFF_DIAGONAL_UNSPECIFIED
    else:
        diag_positive = c.positive_diagonal
    if diag_positive:
        for i in range(1, n + 1):
            d = p[i, i]
            if d is not None and d <= 0:
                return PartialVerdict(False, case, BadDiagonal(i, d))

    for k in range(1, n + 1):
        for s in index_sets(n, k):
            if not p.fully_specified(s):
                continue
            v = det(p.specified_submatrix(s))
            if v < 0 or (c.strict and v == 0):
                return PartialVerdict(False, case, BadMinor(s, v))
    return PartialVerdict(True, case)


def verify_completion(p: PartialMatrix, m: ExactMatrix, c: MatrixClass) -> MembershipVerdict:
    if p.n != m.n:
        raise ValueError(f"order mismatch: partial {p.n}, matrix {m.n}")
    for i in range(1, p.n + 1):
        for j in range(1, p.n + 1):
            v = p[i, j]
            if v is not None and m[i, j] != v:
                return MembershipVerdict(False, Disagreement(i, j, v, m[i, j]))
    return is_member(m, c)
