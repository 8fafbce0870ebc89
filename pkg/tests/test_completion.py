from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_loopless_partial
from sspcomplete.classes import MatrixClass, PartialMatrix, is_partial_member, verify_completion
from sspcomplete.completion import (
    EXHAUSTED,
    CompletionConfig,
    PreconditionError,
    complete,
    complete_loopless,
    complete_zero,
    find_hard_partial,
    random_partial_member,
    search_completion,
)
from sspcomplete.digraphs import Pattern, enumerate_patterns, pattern_of
from sspcomplete.exact import ExactMatrix

C = MatrixClass
RANK_ONE_WITNESS = PartialMatrix.from_rows([[1, 1, 1], [1, 1, 1], [1, 1, None]])
TWO_CYCLE_WITNESS = PartialMatrix.from_rows([[1, -1, None], [-1, 1, None], [None, None, 1]])
FAST = CompletionConfig(budget=1500, hard_candidates=8, probe_budget=150)


def test_config_validation():
    with pytest.raises(ValueError):
        CompletionConfig(budget=0)
    with pytest.raises(ValueError):
        CompletionConfig(magnitude_grid=(Fraction(2), Fraction(1)))
    with pytest.raises(ValueError):
        CompletionConfig(magnitude_grid=())


def test_zero_completion_examples():
    p = PartialMatrix.from_rows([[1, None, None], [None, 2, None], [None, None, 3]])
    res = complete_zero(p, C.SSP01_PLUS)
    assert res.found and res.matrix == ExactMatrix.diagonal([1, 2, 3])
    blank = PartialMatrix.from_rows([[None, None], [None, None]])
    assert complete_zero(blank, C.SSP01_PLUS).matrix == ExactMatrix.identity(2)
    assert complete_zero(TWO_CYCLE_WITNESS, C.SSP01_PLUS).outcome == EXHAUSTED


def test_loopless_examples():
    p = PartialMatrix.from_rows([[None, -3], [None, None]])
    res = complete_loopless(p, C.SSP01_PLUS)
    assert res.found
    assert res.matrix == ExactMatrix.from_rows([[2, -3], ["-1/2", 2]])
    one = complete_loopless(PartialMatrix.from_rows([[None]]), C.SSP01_PLUS)
    assert one.matrix == ExactMatrix.identity(1)
    z = PartialMatrix.from_rows([[None, 0, None], [None, None, None], [None, None, None]])
    m = complete_loopless(z, C.SSP01_PLUS).matrix
    assert m[2, 1] == 0 and all(m[i, j] == 0 for i in range(1, 4) for j in range(1, 4) if i != j)


def test_loopless_precondition():
    with pytest.raises(PreconditionError):
        complete_loopless(TWO_CYCLE_WITNESS, C.SSP01_PLUS)
    bad = PartialMatrix.from_rows([[None, 1], [-1, None]])
    with pytest.raises(PreconditionError):
        complete_loopless(bad, C.SSP01_PLUS)


def test_search_finds_two_cycle_witness_completion():
    res = search_completion(TWO_CYCLE_WITNESS, C.SSP01_PLUS, FAST)
    assert res.found and res.strategy == "search"
    assert verify_completion(TWO_CYCLE_WITNESS, res.matrix, C.SSP01_PLUS)


def test_search_exhausts_on_example():
    res = search_completion(RANK_ONE_WITNESS, C.SSP01_PLUS, CompletionConfig(budget=300))
    assert res.outcome == EXHAUSTED and res.evaluations_used == 300


def test_complete_member_is_returned_immediately():
    m = ExactMatrix.from_rows([[2, 1], [1, 2]])
    res = complete(PartialMatrix.from_matrix(m), C.SSP01_PLUS)
    assert res.found and res.matrix == m and res.evaluations_used == 1


def test_search_precondition():
    with pytest.raises(PreconditionError):
        search_completion(PartialMatrix.from_rows([[1, 2], [-1, None]]), C.SSP01_PLUS)


def test_find_hard_partial_examples():
    g = pattern_of(RANK_ONE_WITNESS)
    hard = find_hard_partial(g, C.SSP01_PLUS, FAST)
    assert hard is not None and hard.partial == RANK_ONE_WITNESS
    assert hard.certificate is not None and hard.certificate.kind == "zero-determinant"
    full = Pattern.build(3, [(i, j) for i in range(1, 4) for j in range(1, 4) if i != j])
    assert find_hard_partial(full, C.SSP01_PLUS, FAST) is None
    assert find_hard_partial(Pattern.build(3, []), C.SSP01_PLUS, FAST) is None


def test_random_partial_member_respects_pattern():
    rng = random.Random(3)
    for g in enumerate_patterns(3):
        for c in (C.SSP01_PLUS, C.SSP0, C.SSP):
            p = random_partial_member(g, c, rng)
            if p is not None:
                assert pattern_of(p) == g and is_partial_member(p, c)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 5))
def test_loopless_construction_always_succeeds(seed, n):
    p = random_loopless_partial(random.Random(seed), n)
    res = complete_loopless(p, C.SSP01_PLUS)
    assert res.found and verify_completion(p, res.matrix, C.SSP01_PLUS)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([C.SSP01_PLUS, C.SSP0, C.SSP, C.SSP01, C.P0_PLUS]))
def test_found_results_always_verify(seed, c):
    rng = random.Random(seed)
    g = rng.choice(enumerate_patterns(3))
    p = random_partial_member(g, c, rng)
    if p is None:
        return
    res = complete(p, c, CompletionConfig(budget=300, seed=seed))
    if res.found:
        assert verify_completion(p, res.matrix, c)


def test_determinism():
    a = search_completion(TWO_CYCLE_WITNESS, C.SSP01_PLUS, FAST.with_(seed=5))
    b = search_completion(TWO_CYCLE_WITNESS, C.SSP01_PLUS, FAST.with_(seed=5))
    assert a == b


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 1000))
def test_budget_monotone(seed):
    cfg = CompletionConfig(seed=seed, budget=60)
    small = search_completion(TWO_CYCLE_WITNESS, C.SSP01_PLUS, cfg)
    large = search_completion(TWO_CYCLE_WITNESS, C.SSP01_PLUS, cfg.with_(budget=600))
    if small.found:
        assert large == small
    if large.found and large.evaluations_used <= 60:
        assert small == large
