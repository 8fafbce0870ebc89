from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sspcomplete.classes import PartialMatrix
from sspcomplete.digraphs import (
    CanonicalForm,
    Pattern,
    bucket_sizes,
    canonical_form,
    canonical_representative,
    enumerate_patterns,
    orbit_counts_by_arcs,
    partial_from_pattern,
    pattern_of,
    structural_props,
)

ORDER3_BUCKETS = [1, 1, 4, 4, 4, 1, 1]
ORDER4_BUCKETS = [1, 1, 5, 13, 27, 38, 48, 38, 27, 13, 5, 1, 1]


@st.composite
def patterns(draw, max_order=5):
    n = draw(st.integers(1, max_order))
    pairs = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
    arcs = draw(st.sets(st.sampled_from(pairs))) if pairs else set()
    loops = draw(st.sets(st.integers(1, n)))
    return Pattern.build(n, arcs, loops=loops)


def test_pattern_of_witnesses():
    two_cycle = PartialMatrix.from_rows([[1, -1, None], [-1, 1, None], [None, None, 1]])
    assert pattern_of(two_cycle) == Pattern.build(3, [(1, 2), (2, 1)])
    example = PartialMatrix.from_rows([[1, 1, 1], [1, 1, 1], [1, 1, None]])
    g = pattern_of(example)
    assert g.loops == {1, 2} and g.q == 6
    blank = PartialMatrix.from_rows([[None, None], [None, None]])
    assert pattern_of(blank) == Pattern.build(2, [], loops=None)


def test_pattern_validation():
    with pytest.raises(ValueError):
        Pattern.build(3, [(1, 1)])
    with pytest.raises(ValueError):
        Pattern.build(3, [(1, 4)])
    with pytest.raises(ValueError):
        Pattern.build(9, [])


def test_canonical_examples():
    a = Pattern.build(3, [(1, 2)], loops=None)
    b = Pattern.build(3, [(2, 3)], loops=None)
    assert canonical_form(a) == canonical_form(b)
    assert canonical_form(Pattern.build(3, [(1, 2), (2, 1)])) != canonical_form(Pattern.build(3, [(1, 2)]))
    cyc = Pattern.build(3, [(1, 2), (2, 3), (3, 1)])
    rev = Pattern.build(3, [(2, 1), (3, 2), (1, 3)])
    assert canonical_form(cyc) == canonical_form(rev)
    assert CanonicalForm.parse(str(canonical_form(cyc))) == canonical_form(cyc)


def test_enumeration_order3():
    pats = enumerate_patterns(3)
    assert len(pats) == 16
    assert bucket_sizes(pats) == ORDER3_BUCKETS


def test_enumeration_order4():
    pats = enumerate_patterns(4)
    assert len(pats) == 218
    assert bucket_sizes(pats) == ORDER4_BUCKETS
    assert len({canonical_form(g) for g in pats}) == 218


@pytest.mark.parametrize(
    "p, mode",
    [(p, m) for p in (1, 2, 3, 4) for m in ("all", "none", "any") if (p, m) != (4, "any")],
)
def test_burnside_oracle_agrees_with_enumeration(p, mode):
    pats = enumerate_patterns(p, mode)
    by_q = [0] * (p * (p - 1) + 1)
    for g in pats:
        by_q[g.q] += 1
    assert by_q == orbit_counts_by_arcs(p, mode)
    assert sum(by_q) == len(pats)


def test_order1():
    assert len(enumerate_patterns(1)) == 1
    with pytest.raises(ValueError):
        enumerate_patterns(5)


def test_structural_props_examples():
    full = Pattern.build(3, [(i, j) for i in range(1, 4) for j in range(1, 4) if i != j])
    pr = structural_props(full)
    assert pr.is_complete and pr.is_symmetric and pr.has_two_cycle
    pr = structural_props(Pattern.build(3, [(1, 2), (2, 1)]))
    assert pr.has_two_cycle and not pr.is_complete
    pr = structural_props(Pattern.build(3, [(1, 2), (2, 3), (3, 1)]))
    assert pr.is_asymmetric and pr.q == 3


@settings(max_examples=200, deadline=None)
@given(patterns(), st.randoms(use_true_random=False))
def test_canonical_form_is_a_class_invariant(g, rnd):
    perm = list(range(1, g.n + 1))
    rnd.shuffle(perm)
    assert canonical_form(g.relabel(perm)) == canonical_form(g)
    rep = canonical_representative(g)
    assert rep.bits() == canonical_form(g).code


def test_canonical_form_thousand_random_relabellings():
    rng = random.Random(11)
    for _ in range(1000):
        n = rng.randint(1, 5)
        arcs = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j and rng.random() < 0.4]
        loops = [v for v in range(1, n + 1) if rng.random() < 0.6]
        g = Pattern.build(n, arcs, loops=loops)
        perm = list(range(1, n + 1))
        rng.shuffle(perm)
        assert canonical_form(g.relabel(perm)) == canonical_form(g)


@settings(max_examples=100, deadline=None)
@given(patterns())
def test_structural_props_invariants(g):
    pr = structural_props(g)
    assert pr.is_asymmetric != pr.has_two_cycle
    assert pr.q == len(g.arcs)


@settings(max_examples=100, deadline=None)
@given(patterns())
def test_pattern_of_inverts_construction(g):
    assert pattern_of(partial_from_pattern(g, lambda i, j: Fraction(i + 2 * j))) == g
