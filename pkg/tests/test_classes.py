from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import matrices, rationals
from sspcomplete.classes import (
    CASE_COMPLETE,
    CASE_DIAGONAL_UNSPECIFIED,
    CASE_OFF_DIAGONAL_UNSPECIFIED,
    BadDiagonal,
    BadMinor,
    Disagreement,
    MatrixClass,
    NoPositiveMinor,
    PartialMatrix,
    TwinViolation,
    is_member,
    is_partial_member,
    verify_completion,
)
from sspcomplete.exact import ExactMatrix

C = MatrixClass

RANK_ONE_WITNESS = PartialMatrix.from_rows([[1, 1, 1], [1, 1, 1], [1, 1, None]])
TWO_CYCLE_WITNESS = PartialMatrix.from_rows([[1, -1, None], [-1, 1, None], [None, None, 1]])

# inclusion chains among the sign symmetric classes, plus their unsigned analogues
CHAINS = [
    (C.SSP, C.SSP01_PLUS, C.SSP01, C.SSP0),
    (C.SSP, C.SSP01_PLUS, C.SSP0_PLUS, C.SSP0),
    (C.P, C.P01_PLUS, C.P0_PLUS, C.P0),
    (C.SSP, C.P),
    (C.SSP0, C.P0),
    (C.SSP01_PLUS, C.P01_PLUS),
    (C.SSP0_PLUS, C.P0_PLUS),
]


def sign_symmetric_matrices(max_order=4):
    """Biased towards sign symmetric inputs so the SS chains are exercised."""

    @st.composite
    def build(draw):
        n = draw(st.integers(2, max_order))
        rows = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            rows[i][i] = draw(rationals(max_num=6).map(abs))
            for j in range(i + 1, n):
                sign = draw(st.sampled_from((-1, 0, 1)))
                rows[i][j] = sign * abs(draw(rationals()))
                rows[j][i] = sign * abs(draw(rationals()))
        return ExactMatrix.from_rows(rows)

    return build()


@pytest.mark.parametrize("c", list(MatrixClass))
def test_identity_is_in_every_class(c):
    assert is_member(ExactMatrix.identity(3), c)


def test_singular_two_by_two():
    m = ExactMatrix.from_rows([[1, -1], [-1, 1]])
    assert is_member(m, C.SSP01)
    v = is_member(m, C.SSP01_PLUS)
    assert not v and v.witness == NoPositiveMinor(2)
    assert "order 2" in v.describe()


def test_twin_violation():
    m = ExactMatrix.from_rows([[1, 1], [-1, 1]])
    v = is_member(m, C.SSP)
    assert not v
    assert isinstance(v.witness, TwinViolation) and (v.witness.i, v.witness.j) == (1, 2)
    assert is_member(m, C.P)


def test_order_one():
    assert is_member(ExactMatrix.from_rows([[2]]), C.SSP01_PLUS)
    assert not is_member(ExactMatrix.from_rows([[0]]), C.SSP01_PLUS)
    assert is_member(ExactMatrix.from_rows([[0]]), C.SSP0)


def test_zero_diagonal_p0_plus_needs_positive_first_order():
    m = ExactMatrix.from_rows([[0, 0], [0, 1]])
    assert is_member(m, C.P0)
    assert not is_member(m, C.P0_PLUS)  # order 2 has no positive minor
    v = is_member(m, C.SSP01)
    assert isinstance(v.witness, BadDiagonal)


def test_class_parse_aliases():
    assert C.parse("ssp01plus") is C.SSP01_PLUS
    assert C.parse("SSP0") is C.SSP0
    with pytest.raises(ValueError):
        C.parse("q")


def test_partial_cases():
    v = is_partial_member(RANK_ONE_WITNESS)
    assert v.member and v.case == CASE_DIAGONAL_UNSPECIFIED
    v = is_partial_member(TWO_CYCLE_WITNESS)
    assert v.member and v.case == CASE_OFF_DIAGONAL_UNSPECIFIED
    v = is_partial_member(PartialMatrix.from_rows([[1, 2], [-1, 1]]))
    assert not v.member and v.case == CASE_COMPLETE
    assert isinstance(v.witness, TwinViolation)


def test_partial_case_one_allows_zero_specified_diagonal():
    p = PartialMatrix.from_rows([[0, None], [None, None]])
    assert is_partial_member(p, C.SSP01_PLUS)
    q = PartialMatrix.from_rows([[0, None], [None, 1]])
    v = is_partial_member(q, C.SSP01_PLUS)
    assert not v and isinstance(v.witness, BadDiagonal)


def test_partial_half_specified_twins_are_unconstrained():
    p = PartialMatrix.from_rows([[1, -3], [None, 1]])
    assert is_partial_member(p, C.SSP01_PLUS)


def test_partial_negative_specified_minor():
    p = PartialMatrix.from_rows([[1, 2, None], [3, 1, None], [None, None, 1]])
    v = is_partial_member(p)
    assert not v and v.witness == BadMinor((1, 2), Fraction(-5))


def test_verify_completion_examples():
    null2 = PartialMatrix.from_rows([[1, None], [None, 1]])
    assert verify_completion(null2, ExactMatrix.identity(2), C.SSP01_PLUS)
    m = ExactMatrix.from_rows([[1, -1, "1/2"], [-1, 1, "-1/4"], ["1/2", "-4/5", 1]])
    assert verify_completion(TWO_CYCLE_WITNESS, m, C.SSP01_PLUS)
    p = PartialMatrix.from_rows([[5, None], [None, 1]])
    v = verify_completion(p, ExactMatrix.from_rows([[4, 0], [0, 1]]), C.SSP01_PLUS)
    assert not v and v.witness == Disagreement(1, 1, Fraction(5), Fraction(4))
    with pytest.raises(ValueError):
        verify_completion(p, ExactMatrix.identity(3), C.SSP0)


def test_partial_round_trip_through_text():
    assert str(TWO_CYCLE_WITNESS) == "1 -1 ?\n-1 1 ?\n? ? 1"


@settings(max_examples=300, deadline=None)
@given(st.one_of(matrices(min_order=2, max_order=4), sign_symmetric_matrices()))
def test_inclusion_chains(m):
    verdicts = {c: bool(is_member(m, c)) for c in MatrixClass}
    for chain in CHAINS:
        for small, big in zip(chain, chain[1:]):
            assert not verdicts[small] or verdicts[big], (small, big)


@settings(max_examples=300, deadline=None)
@given(st.one_of(matrices(max_order=4), sign_symmetric_matrices()), st.sampled_from(list(MatrixClass)))
def test_failure_witness_rechecks(m, c):
    v = is_member(m, c)
    if not v:
        assert v.witness.recheck(m, c)


@settings(max_examples=100, deadline=None)
@given(st.lists(rationals().map(abs).filter(bool), min_size=1, max_size=5), st.sampled_from(list(MatrixClass)))
def test_positive_diagonal_matrices_are_in_every_class(diag, c):
    assert is_member(ExactMatrix.diagonal(diag), c)


@settings(max_examples=200, deadline=None)
@given(st.one_of(matrices(max_order=4), sign_symmetric_matrices()))
def test_partial_on_complete_agrees_with_membership(m):
    p = PartialMatrix.from_matrix(m)
    assert bool(is_partial_member(p)) == bool(is_member(m, C.SSP01_PLUS))


@settings(max_examples=100, deadline=None)
@given(sign_symmetric_matrices(), st.data())
def test_members_restrict_to_partial_members(m, data):
    """Blanking cells of a member never yields a non-member (heredity)."""
    c = data.draw(st.sampled_from([C.SSP0, C.SSP01, C.SSP, C.P0]))
    if not is_member(m, c):
        return
    n = m.n
    mask = data.draw(st.lists(st.booleans(), min_size=n * n, max_size=n * n))
    rows = [[None if mask[i * n + j] else m.rows[i][j] for j in range(n)] for i in range(n)]
    assert is_partial_member(PartialMatrix(tuple(map(tuple, rows))), c)
