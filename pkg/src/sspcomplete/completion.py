"""Completion constructions and an exact-verified randomized search.

Nothing in this module ever claims that a completion does not exist: a
search either returns a verified matrix or reports that its budget ran out.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .classes import MatrixClass, PartialMatrix, is_partial_member, verify_completion
from .digraphs import Pattern, partial_from_pattern
from .exact import ExactMatrix, all_principal_minors_int, index_sets, integer_scaled
from .symbolic import NoCompletionCertificate, prove_noncompletable

DEFAULT_GRID = tuple(
    Fraction(v) for v in ("1/8", "1/4", "1/2", "4/5", "1", "2", "4")
)

FOUND = "found"
EXHAUSTED = "exhausted"


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class CompletionConfig:
    seed: int = 0
    budget: int = 20000
    magnitude_grid: tuple[Fraction, ...] = DEFAULT_GRID
    t_max_exponent: int = 64
    local_steps: int = 24
    shrink_levels: int = 4
    hard_candidates: int = 48
    probe_budget: int = 400

    def __post_init__(self) -> None:
        if self.budget < 1:
            raise ValueError("budget must be at least 1")
        grid = tuple(Fraction(g) for g in self.magnitude_grid)
        if not grid or any(g <= 0 for g in grid) or list(grid) != sorted(set(grid)):
            raise ValueError("magnitude grid must be nonempty, positive and strictly ascending")
        object.__setattr__(self, "magnitude_grid", grid)
        if self.t_max_exponent < 0 or self.shrink_levels < 1:
            raise ValueError("t_max_exponent must be >= 0 and shrink_levels >= 1")

    def with_(self, **changes) -> "CompletionConfig":
        return CompletionConfig(**{**self.__dict__, **changes})


@dataclass(frozen=True)
class CompletionResult:
    outcome: str
    matrix: Optional[ExactMatrix]
    evaluations_used: int
    strategy: str

    @property
    def found(self) -> bool:
        return self.outcome == FOUND


def _found(p: PartialMatrix, m: ExactMatrix, c: MatrixClass, evals: int, strategy: str) -> CompletionResult:
    verdict = verify_completion(p, m, c)
    if not verdict:
        raise AssertionError(f"{strategy} produced an unverified completion: {verdict.describe()}")
    return CompletionResult(FOUND, m, evals, strategy)


def _sign(v: Fraction) -> int:
    return (v > 0) - (v < 0)


def complete_zero(p: PartialMatrix, c: MatrixClass) -> CompletionResult:
    values = {(i, j): Fraction(int(i == j)) for i, j in p.unspecified_cells()}
    m = p.fill(values)
    if verify_completion(p, m, c):
        return _found(p, m, c, 1, "zero")
    return CompletionResult(EXHAUSTED, None, 1, "zero")


def complete_loopless(p: PartialMatrix, c: MatrixClass, cfg: CompletionConfig = CompletionConfig()) -> CompletionResult:
    """Large-diagonal construction for patterns with no specified diagonal entry.

    Unspecified twins of specified nonzero entries get sign(a_ij) * 2^-m, twins
    of specified zeros get 0, doubly unspecified pairs get 0, and every diagonal
    gets t = 2^m.  Each k x k principal minor is t^k plus lower-order terms, so
    some m <= t_max_exponent works; every m is checked exactly.
    """
    if any(p.specified(i, i) for i in range(1, p.n + 1)):
        raise PreconditionError("pattern has a specified diagonal entry")
    verdict = is_partial_member(p, c)
    if not verdict:
        raise PreconditionError(f"not a partial member: {verdict.describe()}")
    for m in range(cfg.t_max_exponent + 1):
        t, eps = Fraction(2) ** m, Fraction(1, 2**m)
        values = {}
        for i, j in p.unspecified_cells():
            if i == j:
                values[(i, j)] = t
            else:
                twin = p[j, i]
                values[(i, j)] = Fraction(0) if twin is None else _sign(twin) * eps
        candidate = p.fill(values)
        if verify_completion(p, candidate, c):
            return _found(p, candidate, c, m + 1, "loopless-doubling")
    return CompletionResult(EXHAUSTED, None, cfg.t_max_exponent + 1, "loopless-doubling")


# --- randomized search -------------------------------------------------------


@dataclass
class _Slots:
    """Independent decision units of a partial matrix, in canonical order."""

    diag: list[int] = field(default_factory=list)
    pairs: list[tuple[int, int]] = field(default_factory=list)  # both twins free, coupled sign
    halves: list[tuple[int, int, int]] = field(default_factory=list)  # (i, j, forced sign)
    free: list[tuple[int, int]] = field(default_factory=list)  # uncoupled cells
    zeros: list[tuple[int, int]] = field(default_factory=list)

    def keys(self) -> list[tuple]:
        return (
            [("d", i) for i in self.diag]
            + [("p", i, j) for i, j in self.pairs]
            + [("h", i, j) for i, j, _ in self.halves]
            + [("f", i, j) for i, j in self.free]
        )


def _slots(p: PartialMatrix, c: MatrixClass) -> _Slots:
    s = _Slots()
    for i, j in p.unspecified_cells():
        if i == j:
            s.diag.append(i)
            continue
        twin = p[j, i]
        if not c.sign_symmetric:
            s.free.append((i, j))
        elif twin is None:
            if i < j:
                s.pairs.append((i, j))
        elif twin == 0:
            s.zeros.append((i, j))
        else:
            s.halves.append((i, j, _sign(twin)))
    return s


def _cells_of(key: tuple) -> list[tuple[int, int]]:
    if key[0] == "d":
        return [(key[1], key[1])]
    if key[0] == "p":
        return [(key[1], key[2]), (key[2], key[1])]
    return [(key[1], key[2])]


class _Search:
    def __init__(self, p: PartialMatrix, c: MatrixClass, cfg: CompletionConfig):
        self.p, self.c, self.cfg = p, c, cfg
        self.rng = random.Random(cfg.seed)
        self.slots = _slots(p, c)
        self.keys = self.slots.keys()
        self.grid = cfg.magnitude_grid
        self.upper = tuple(g for g in self.grid if g >= self.grid[len(self.grid) // 2])
        self.half_sign = {(i, j): s for i, j, s in self.slots.halves}

    # values: diag -> Fraction; pair -> (v_ij, v_ji); half/free -> Fraction
    def _mag(self, level: int) -> Fraction:
        return self.rng.choice(self.grid) / 4**level

    def random_value(self, key: tuple, level: int):
        rng = self.rng
        if key[0] == "d":
            return rng.choice(self.upper) * 4**level
        if key[0] == "p":
            sign = rng.choice((-1, 0, 1, 1, -1))
            if sign == 0:
                return (Fraction(0), Fraction(0))
            return (sign * self._mag(level), sign * self._mag(level))
        if key[0] == "h":
            return self.half_sign[(key[1], key[2])] * self._mag(level)
        sign = rng.choice((-1, 0, 1))
        return sign * self._mag(level)

    def initial(self) -> dict:
        out = {}
        for key in self.keys:
            if key[0] == "d":
                out[key] = self.upper[-1]
            elif key[0] == "p":
                out[key] = (Fraction(0), Fraction(0))
            elif key[0] == "h":
                out[key] = self.half_sign[(key[1], key[2])] * self.grid[0]
            else:
                out[key] = Fraction(0)
        return out

    def mutate(self, key: tuple, value, level: int):
        move = self.rng.randrange(4)
        if move == 0:
            return self.random_value(key, level)
        factor = Fraction(1, 2) if move == 1 else Fraction(2)
        if key[0] == "d":
            return value * factor
        if key[0] == "p":
            if move == 3:
                return (-value[0], -value[1]) if value[0] != 0 else self.random_value(key, level)
            return (value[0] * factor, value[1] * factor)
        if value == 0 or move == 3:
            return self.random_value(key, level)
        return value * factor

    def matrix(self, assign: dict) -> ExactMatrix:
        values = {cell: Fraction(0) for cell in self.slots.zeros}
        for key, v in assign.items():
            if key[0] == "p":
                values[(key[1], key[2])], values[(key[2], key[1])] = v
            elif key[0] == "d":
                values[(key[1], key[1])] = v
            else:
                values[(key[1], key[2])] = v
        return self.p.fill(values)

    def score(self, m: ExactMatrix):
        """(violation count, violation mass, target index set); count 0 means member."""
        c = self.c
        n = m.n
        ints, scale = integer_scaled(m.rows)
        if c.positive_diagonal and any(ints[i][i] <= 0 for i in range(n)):
            bad = next(i + 1 for i in range(n) if ints[i][i] <= 0)
            return (n * n, Fraction(0), (bad,))
        minors = all_principal_minors_int(ints)
        count, mass, worst, target = 0, Fraction(0), None, None
        for s, v in minors.items():
            if v < 0 or (c.strict and v == 0):
                count += 1
                val = Fraction(-v, scale ** len(s))
                mass += val
                if worst is None or val > worst:
                    worst, target = val, s
        if c.needs_positive_per_order:
            for k in range(1, n + 1):
                sets = list(index_sets(n, k))
                if not any(minors[s] > 0 for s in sets):
                    count += 1
                    if target is None:
                        target = next((s for s in sets if self._touching(s)), sets[0])
        return (count, mass, target)

    def _touching(self, s) -> list[tuple]:
        members = set(s)
        return [k for k in self.keys if all(i in members and j in members for i, j in _cells_of(k))]

    def run(self) -> CompletionResult:
        budget = self.cfg.budget
        evals = 0
        first = True
        while evals < budget:
            level = 0
            if first:
                assign = self.initial()
            else:
                level = min(self.rng.randrange(self.cfg.shrink_levels + 1), self.cfg.shrink_levels - 1)
                assign = {key: self.random_value(key, level) for key in self.keys}
            first = False
            m = self.matrix(assign)
            cur = self.score(m)
            evals += 1
            if cur[0] == 0:
                return _found(self.p, m, self.c, evals, "search")
            if not self.keys:
                break
            for _ in range(self.cfg.local_steps):
                if evals >= budget:
                    break
                options = self._touching(cur[2]) or self.keys
                key = self.rng.choice(options)
                trial = dict(assign)
                trial[key] = self.mutate(key, assign[key], level)
                m = self.matrix(trial)
                sc = self.score(m)
                evals += 1
                if sc[0] == 0:
                    return _found(self.p, m, self.c, evals, "search")
                if (sc[0], sc[1]) <= (cur[0], cur[1]):
                    assign, cur = trial, sc
        return CompletionResult(EXHAUSTED, None, evals, "search")


def search_completion(p: PartialMatrix, c: MatrixClass, cfg: CompletionConfig = CompletionConfig()) -> CompletionResult:
    """Seeded random search with greedy repair of the worst violated minor.

    Twin pairs with both cells free share a sign (or are both zero); a cell
    whose twin is specified follows that twin's sign.  The candidate sequence
    depends only on (p, c, seed), so a larger budget only extends it.
    """
    verdict = is_partial_member(p, c)
    if not verdict:
        raise PreconditionError(f"not a partial member: {verdict.describe()}")
    return _Search(p, c, cfg).run()


def complete(p: PartialMatrix, c: MatrixClass, cfg: CompletionConfig = CompletionConfig()) -> CompletionResult:
    """Zero completion, then the loopless construction when it applies, then search."""
    verdict = is_partial_member(p, c)
    if not verdict:
        raise PreconditionError(f"not a partial member: {verdict.describe()}")
    res = complete_zero(p, c)
    if res.found:
        return res
    used = res.evaluations_used
    if not any(p.specified(i, i) for i in range(1, p.n + 1)):
        res = complete_loopless(p, c, cfg)
        if res.found:
            return res
        used += res.evaluations_used
    res = search_completion(p, c, cfg)
    return CompletionResult(res.outcome, res.matrix, used + res.evaluations_used, res.strategy)


# --- adversarial partial members ---------------------------------------------


def zero_diagonal_allowed(g: Pattern, c: MatrixClass) -> bool:
    """Can a partial member of ``c`` specifying ``g`` carry a zero on its diagonal?"""
    if c is MatrixClass.SSP01_PLUS:
        return len(g.loops) < g.n
    return not c.positive_diagonal


def random_partial_member(
    g: Pattern, c: MatrixClass, rng: random.Random, grid=DEFAULT_GRID, style: str = "sample", tries: int = 64
) -> Optional[PartialMatrix]:
    """Draw specified values for ``g`` until the result is a partial member of ``c``.

    ``style='hard'`` keeps the diagonal at 1 (or 0 where allowed) and favours
    off-diagonal magnitudes of 1, which produces singular fully specified blocks.
    """
    zero_diag = zero_diagonal_allowed(g, c)
    for _ in range(tries):
        cells: dict[tuple[int, int], Fraction] = {}
        for i in sorted(g.loops):
            if zero_diag and rng.random() < 0.25:
                cells[(i, i)] = Fraction(0)
            elif style == "hard":
                cells[(i, i)] = Fraction(1)
            else:
                cells[(i, i)] = rng.choice(grid)
        for i, j in sorted(g.arcs):
            if (i, j) in cells:
                continue
            mag = Fraction(1) if style == "hard" and rng.random() < 0.5 else rng.choice(grid)
            sign = rng.choice((-1, 1, 1, -1, 0))
            cells[(i, j)] = sign * mag
            if (j, i) in g.arcs:
                mag2 = Fraction(1) if style == "hard" and rng.random() < 0.5 else rng.choice(grid)
                if c.sign_symmetric:
                    cells[(j, i)] = sign * mag2
                else:
                    cells[(j, i)] = rng.choice((-1, 1, 0)) * mag2
        p = partial_from_pattern(g, lambda i, j: cells[(i, j)])
        if is_partial_member(p, c):
            return p
    return None


@dataclass(frozen=True)
class HardPartial:
    """A partial member whose completion search ran dry, possibly with a proof."""

    partial: PartialMatrix
    certificate: Optional[NoCompletionCertificate]
    evaluations: int
    seed: int


def _structured_candidates(g: Pattern, c: MatrixClass) -> list[PartialMatrix]:
    out = []
    diag_values = [Fraction(1)] + ([Fraction(0)] if zero_diagonal_allowed(g, c) else [])
    for d in diag_values:
        for v in (Fraction(1), Fraction(-1)):
            out.append(partial_from_pattern(g, lambda i, j: d if i == j else v))
    return out


def find_hard_partial(g: Pattern, c: MatrixClass, cfg: CompletionConfig = CompletionConfig()) -> Optional[HardPartial]:
    """Look for a partial member of ``c`` specifying ``g`` that resists completion.

    Structured candidates (all off-diagonal values +1 or -1, diagonal 1 or 0)
    come first, then random 'hard' style draws.  A candidate that exhausts a
    short probe search is handed to the symbolic prover; with no proof, it is
    searched again at the full budget and returned only if that also fails.
    """
    if len(g.loops) == g.n and g.q == g.n * (g.n - 1):
        return None
    rng = random.Random(cfg.seed)
    seen: set[PartialMatrix] = set()
    stubborn: list[tuple[PartialMatrix, int]] = []
    candidates = _structured_candidates(g, c)
    idx = 0
    while idx < cfg.hard_candidates:
        if candidates:
            cand = candidates.pop(0)
            if not is_partial_member(cand, c):
                continue
        else:
            cand = random_partial_member(g, c, rng, cfg.magnitude_grid, style="hard")
            idx += 1
            if cand is None:
                continue
        if cand in seen:
            continue
        seen.add(cand)
        seed = cfg.seed * 1_000_003 + len(seen)
        probe = search_completion(cand, c, cfg.with_(seed=seed, budget=min(cfg.probe_budget, cfg.budget)))
        if probe.found:
            continue
        cert = prove_noncompletable(cand, c)
        if cert is not None:
            return HardPartial(cand, cert, probe.evaluations_used, seed)
        stubborn.append((cand, seed))
    for cand, seed in stubborn[:3]:
        full = search_completion(cand, c, cfg.with_(seed=seed))
        if not full.found:
            return HardPartial(cand, None, full.evaluations_used, seed)
    return None
