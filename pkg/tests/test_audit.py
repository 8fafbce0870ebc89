from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sspcomplete import published_lists
from sspcomplete.audit import (
    TWO_CYCLE_ORDER3,
    NO_PROVED,
    YES_EVIDENCE,
    YES_PROVED,
    AuditConfig,
    PatternStatus,
    audit_published_claims,
    check_singleton_claims,
    classify_pattern,
    is_block_complete,
    parse_report,
    recheck_status,
    render_report,
    zero_completion_sound,
)
from sspcomplete.classes import MatrixClass
from sspcomplete.completion import CompletionConfig, complete_zero, random_partial_member
from sspcomplete.digraphs import Pattern, bucket_sizes, enumerate_patterns

C = MatrixClass
FAST = CompletionConfig(budget=1500, hard_candidates=8, probe_budget=150)
SMALL = AuditConfig(orders=(1, 2, 3), samples=6, compare_samples=3, completion=FAST)


@pytest.fixture(scope="module")
def small_report():
    return audit_published_claims(SMALL)


@pytest.mark.parametrize("p, yes, no", [(1, 1, 0), (2, 3, 0), (3, 7, 9), (4, 33, 185)])
def test_claim_tables_partition_buckets(p, yes, no):
    sizes = bucket_sizes(enumerate_patterns(p))
    total_yes = total_no = 0
    for q, size in enumerate(sizes):
        counts = published_lists.claim_counts(p, q, size)
        assert counts["partition"], (p, q)
        assert counts["yes"] + counts["no"] == size
        total_yes += counts["yes"]
        total_no += counts["no"]
    assert (total_yes, total_no) == (yes, no)


def test_classify_cascade_shortcuts():
    full = Pattern.build(4, [(i, j) for i in range(1, 5) for j in range(1, 5) if i != j])
    assert classify_pattern(full, C.SSP01_PLUS, FAST).kind == "complete"
    null = classify_pattern(Pattern.build(3, []), C.SSP01_PLUS, FAST)
    assert null.verdict == YES_PROVED and null.kind == "zero-completion"
    loopless = classify_pattern(Pattern.build(3, [(1, 2), (2, 3)], loops=None), C.SSP01_PLUS, FAST)
    assert loopless.kind == "loopless-construction" and loopless.samples_tried == 0


def test_two_cycle_pattern_is_decided_by_the_engine():
    g = Pattern.build(3, [(1, 2), (2, 1)])
    st_ = classify_pattern(g, C.SSP01_PLUS, FAST, samples=10)
    assert st_.verdict in (YES_EVIDENCE, NO_PROVED)
    assert all(ok for _, ok in recheck_status(g, st_))


def test_three_cycle_with_a_two_cycle_is_refuted_with_certificate():
    g = Pattern.build(3, [(1, 2), (2, 1), (2, 3), (3, 1)])
    st_ = classify_pattern(g, C.SSP01_PLUS, FAST, samples=5)
    assert st_.verdict == NO_PROVED and st_.certificate.recheck()


def test_block_complete_patterns():
    assert is_block_complete(Pattern.build(3, [(1, 2), (2, 1)]))
    assert is_block_complete(Pattern.build(3, []))
    assert not is_block_complete(Pattern.build(3, [(1, 2)]))
    assert not is_block_complete(Pattern.build(3, [(1, 2), (2, 1), (2, 3), (3, 2)]))
    assert not zero_completion_sound(Pattern.build(3, [(1, 2), (2, 1)]), C.SSP01_PLUS)
    assert zero_completion_sound(Pattern.build(3, [(1, 2), (2, 1)]), C.SSP0)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(list(MatrixClass)))
def test_zero_completion_soundness(seed, c):
    rng = random.Random(seed)
    g = rng.choice(enumerate_patterns(3) + enumerate_patterns(3, "any"))
    if not zero_completion_sound(g, c):
        return
    p = random_partial_member(g, c, rng)
    if p is not None:
        assert complete_zero(p, c).found


def test_singleton_claims():
    claims = {c.name: c for c in check_singleton_claims(FAST)}
    assert claims["rank-one-witness"].status == "confirmed"
    assert claims["two-cycle-determinant"].status == "confirmed"
    assert claims["ssp0-two-by-two-step"].status == "confirmed"
    witness = claims["two-cycle-witness-order-3"]
    assert witness.status in ("confirmed", "refuted-with-certificate")
    if witness.status == "refuted-with-certificate":
        assert witness.evidence["partial"] == str(TWO_CYCLE_ORDER3)


def test_small_report_shape(small_report):
    assert len(small_report.rows) == 1 + 3 + 16
    assert [r.row for r in small_report.rows] == list(range(1, 21))
    assert len(small_report.tallies) == 1 + 3 + 7
    order1 = small_report.rows[0].statuses[C.SSP01_PLUS.value]
    assert order1.verdict == YES_PROVED


def test_every_certificate_rechecks(small_report):
    for row in small_report.rows:
        for status in row.statuses.values():
            for desc, ok in recheck_status(row.pattern, status):
                assert ok, (row.row, desc)


def test_report_round_trip(small_report):
    text = render_report(small_report)
    assert render_report(parse_report(text)) == text
    assert "singleton claims" in render_report(small_report, "text")
    with pytest.raises(ValueError):
        render_report(small_report, "yaml")


def test_status_round_trip(small_report):
    for row in small_report.rows:
        for status in row.statuses.values():
            assert PatternStatus.from_dict(status.to_dict()) == status


def test_order_one_report():
    r = audit_published_claims(AuditConfig(orders=(1,), samples=2, compare_samples=1, completion=FAST))
    assert len(r.rows) == 1
    assert parse_report(render_report(r)).rows == r.rows
