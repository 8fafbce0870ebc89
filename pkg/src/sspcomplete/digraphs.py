"""Specification patterns as digraphs, canonical forms and small-order enumeration.

A loop at vertex i marks a specified diagonal entry; an arc (i, j) marks a
specified off-diagonal entry.  Canonical forms are brute-force minima over
all vertex relabellings, which is cheap for the orders handled here.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import factorial
from typing import Callable, Optional, Sequence

from .classes import PartialMatrix
from .exact import MAX_ORDER

LOOP_MODES = ("all", "none", "any")


@dataclass(frozen=True)
class Pattern:
    n: int
    loops: frozenset[int]
    arcs: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        if not 1 <= self.n <= MAX_ORDER:
            raise ValueError(f"pattern order {self.n} outside 1..{MAX_ORDER}")
        for v in self.loops:
            if not 1 <= v <= self.n:
                raise ValueError(f"loop {v} out of range")
        for i, j in self.arcs:
            if i == j:
                raise ValueError(f"arc ({i},{j}) is a loop; put it in loops")
            if not (1 <= i <= self.n and 1 <= j <= self.n):
                raise ValueError(f"arc ({i},{j}) out of range")

    @classmethod
    def build(cls, n: int, arcs=(), loops="all") -> "Pattern":
        if loops == "all":
            loops = range(1, n + 1)
        elif loops is None:
            loops = ()
        return cls(n, frozenset(loops), frozenset(tuple(a) for a in arcs))

    @property
    def q(self) -> int:
        return len(self.arcs)

    def specified(self, i: int, j: int) -> bool:
        return i in self.loops if i == j else (i, j) in self.arcs

    def relabel(self, perm: Sequence[int]) -> "Pattern":
        """Vertex v (1-based) becomes perm[v-1]."""
        return Pattern(
            self.n,
            frozenset(perm[v - 1] for v in self.loops),
            frozenset((perm[i - 1], perm[j - 1]) for i, j in self.arcs),
        )

    def bits(self) -> str:
        return "".join(
            "1" if self.specified(i, j) else "0"
            for i in range(1, self.n + 1)
            for j in range(1, self.n + 1)
        )

    def __str__(self) -> str:
        arcs = " ".join(f"({i},{j})" for i, j in sorted(self.arcs)) or "-"
        loops = "all" if len(self.loops) == self.n else (",".join(map(str, sorted(self.loops))) or "-")
        return f"p={self.n} q={self.q} loops={loops} arcs={arcs}"


def pattern_of(p: PartialMatrix) -> Pattern:
    n = p.n
    return Pattern(
        n,
        frozenset(i for i in range(1, n + 1) if p.specified(i, i)),
        frozenset(
            (i, j)
            for i in range(1, n + 1)
            for j in range(1, n + 1)
            if i != j and p.specified(i, j)
        ),
    )


def partial_from_pattern(
    g: Pattern, value: Callable[[int, int], Fraction] = lambda i, j: Fraction(int(i == j))
) -> PartialMatrix:
    """Partial matrix specifying exactly ``g``; specified cells take ``value(i, j)``."""
    return PartialMatrix(
        tuple(
            tuple(
                Fraction(value(i, j)) if g.specified(i, j) else None
                for j in range(1, g.n + 1)
            )
            for i in range(1, g.n + 1)
        )
    )


@dataclass(frozen=True, order=True)
class CanonicalForm:
    n: int
    code: str

    def __str__(self) -> str:
        return f"{self.n}:{self.code}"

    @classmethod
    def parse(cls, text: str) -> "CanonicalForm":
        n, _, code = text.partition(":")
        return cls(int(n), code)


def _canonical(g: Pattern) -> tuple[str, tuple[int, ...]]:
    best: Optional[str] = None
    best_perm: tuple[int, ...] = ()
    for perm in permutations(range(1, g.n + 1)):
        code = g.relabel(perm).bits()
        if best is None or code < best:
            best, best_perm = code, perm
    return best, best_perm  # type: ignore[return-value]


def canonical_form(g: Pattern) -> CanonicalForm:
    return CanonicalForm(g.n, _canonical(g)[0])


def canonical_representative(g: Pattern) -> Pattern:
    return g.relabel(_canonical(g)[1])


def _off_diagonal_pairs(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]


def _loop_choices(n: int, loop_mode: str):
    if loop_mode == "all":
        return [frozenset(range(1, n + 1))]
    if loop_mode == "none":
        return [frozenset()]
    if loop_mode == "any":
        return [
            frozenset(v for v in range(1, n + 1) if mask >> (v - 1) & 1)
            for mask in range(1 << n)
        ]
    raise ValueError(f"loop_mode must be one of {LOOP_MODES}")


def enumerate_patterns(p: int, loop_mode: str = "all") -> list[Pattern]:
    """One canonical representative per isomorphism class, sorted by (q, code)."""
    if not 1 <= p <= 4:
        raise ValueError("full enumeration is limited to orders 1..4")
    pairs = _off_diagonal_pairs(p)
    seen: dict[str, Pattern] = {}
    for loops in _loop_choices(p, loop_mode):
        for mask in range(1 << len(pairs)):
            arcs = frozenset(pairs[b] for b in range(len(pairs)) if mask >> b & 1)
            g = Pattern(p, loops, arcs)
            code, perm = _canonical(g)
            if code not in seen:
                seen[code] = g.relabel(perm)
    return sorted(seen.values(), key=lambda g: (g.q, g.bits()))


def bucket_sizes(patterns: Sequence[Pattern]) -> list[int]:
    if not patterns:
        return []
    n = patterns[0].n
    counts = Counter(g.q for g in patterns)
    return [counts.get(q, 0) for q in range(n * (n - 1) + 1)]


def orbit_counts_by_arcs(p: int, loop_mode: str = "all") -> list[int]:
    """Burnside count of digraph classes per arc count, independent of canonical_form.

    For each permutation, an arc set is fixed iff it is a union of cycles of the
    induced action on ordered pairs; a cycle of length L contributes a factor
    (1 + y^L) to the generating polynomial in y.  Loops (mode 'any') add a
    factor 2 per vertex cycle.
    """
    pairs = _off_diagonal_pairs(p)
    size = len(pairs)
    totals = [0] * (size + 1)
    for perm in permutations(range(1, p + 1)):
        poly = [1] + [0] * size
        seen = set()
        for start in pairs:
            if start in seen:
                continue
            length = 0
            cur = start
            while cur not in seen:
                seen.add(cur)
                cur = (perm[cur[0] - 1], perm[cur[1] - 1])
                length += 1
            poly = [poly[d] + (poly[d - length] if d >= length else 0) for d in range(size + 1)]
        weight = 1
        if loop_mode == "any":
            vseen, vcycles = set(), 0
            for v in range(1, p + 1):
                if v not in vseen:
                    vcycles += 1
                    while v not in vseen:
                        vseen.add(v)
                        v = perm[v - 1]
            weight = 2**vcycles
        for d in range(size + 1):
            totals[d] += weight * poly[d]
    group = factorial(p)
    assert all(t % group == 0 for t in totals)
    return [t // group for t in totals]


@dataclass(frozen=True)
class StructuralProps:
    is_null: bool
    is_complete: bool
    is_asymmetric: bool
    is_symmetric: bool
    has_two_cycle: bool
    all_loops: bool
    q: int

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def structural_props(g: Pattern) -> StructuralProps:
    two_cycle = any((j, i) in g.arcs for i, j in g.arcs)
    return StructuralProps(
        is_null=not g.arcs,
        is_complete=len(g.arcs) == g.n * (g.n - 1),
        is_asymmetric=not two_cycle,
        is_symmetric=all((j, i) in g.arcs for i, j in g.arcs),
        has_two_cycle=two_cycle,
        all_loops=g.loops == frozenset(range(1, g.n + 1)),
        q=g.q,
    )
