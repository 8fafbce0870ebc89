"""Classification of small specification patterns with re-checkable evidence.

Every pattern of order <= 4 in the all-loops universe is classified for the
target class and a few comparison classes.  Published verdicts are used only
as comparison targets; nothing here assumes they are right.
"""

from __future__ import annotations

import hashlib
import json
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Optional

from . import published_lists
from .classes import MatrixClass, PartialMatrix, is_partial_member, verify_completion
from .completion import (
    CompletionConfig,
    complete_loopless,
    complete_zero,
    find_hard_partial,
    random_partial_member,
    search_completion,
    zero_diagonal_allowed,
)
from .digraphs import (
    Pattern,
    StructuralProps,
    canonical_form,
    enumerate_patterns,
    pattern_of,
    structural_props,
)
from .exact import ExactMatrix, format_rational
from .formats import parse_partial_rows, parse_pattern, render_pattern
from .symbolic import (
    MultiPoly,
    NoCompletionCertificate,
    Var,
    lift,
    prove_noncompletable,
    prove_noncompletable_by_zero_det,
    substitute,
    sym_det,
)

SCHEMA = "sspcomplete.audit/1"

YES_PROVED = "yes-proved"
NO_PROVED = "no-proved"
YES_EVIDENCE = "yes-evidence"
NO_EVIDENCE = "no-evidence"
UNDECIDED = "undecided"
YES_VERDICTS = (YES_PROVED, YES_EVIDENCE)
NO_VERDICTS = (NO_PROVED, NO_EVIDENCE)

CONFIRMED = "confirmed"
SUPPORTED = "supported"
REFUTED = "refuted-with-certificate"
OPEN = "undecided"


@dataclass(frozen=True)
class PatternStatus:
    verdict: str
    kind: str
    target: MatrixClass
    certificate: Optional[NoCompletionCertificate] = None
    completions: tuple[tuple[PartialMatrix, ExactMatrix], ...] = ()
    hard_partial: Optional[PartialMatrix] = None
    samples_completed: int = 0
    samples_tried: int = 0
    evaluations: int = 0
    seed: int = 0
    budget: int = 0

    @property
    def is_yes(self) -> bool:
        return self.verdict in YES_VERDICTS

    @property
    def is_no(self) -> bool:
        return self.verdict in NO_VERDICTS

    def describe(self) -> str:
        if self.verdict == YES_EVIDENCE:
            return f"{self.verdict} ({self.samples_completed}/{self.samples_tried} sampled partial members completed)"
        if self.verdict == NO_PROVED:
            return f"{self.verdict} ({self.certificate.kind}: {self.certificate.argument})"
        if self.verdict in (NO_EVIDENCE, UNDECIDED) and self.hard_partial is not None:
            return f"{self.verdict} ({self.kind}, search exhausted after {self.evaluations} evaluations)"
        return f"{self.verdict} ({self.kind})"

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "kind": self.kind,
            "target": self.target.value,
            "certificate": None if self.certificate is None else self.certificate.to_dict(),
            "completions": [{"partial": str(p), "completion": str(m)} for p, m in self.completions],
            "hard_partial": None if self.hard_partial is None else str(self.hard_partial),
            "samples_completed": self.samples_completed,
            "samples_tried": self.samples_tried,
            "evaluations": self.evaluations,
            "seed": self.seed,
            "budget": self.budget,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "PatternStatus":
        return cls(
            verdict=d["verdict"],
            kind=d["kind"],
            target=MatrixClass(d["target"]),
            certificate=None if d["certificate"] is None else NoCompletionCertificate.from_dict(d["certificate"]),
            completions=tuple(
                (parse_partial_rows(e["partial"]), parse_partial_rows(e["completion"]).to_matrix())
                for e in d["completions"]
            ),
            hard_partial=None if d["hard_partial"] is None else parse_partial_rows(d["hard_partial"]),
            samples_completed=d["samples_completed"],
            samples_tried=d["samples_tried"],
            evaluations=d["evaluations"],
            seed=d["seed"],
            budget=d["budget"],
        )


def pattern_seed(base: int, c: MatrixClass, g: Pattern) -> int:
    digest = hashlib.sha256(f"{base}|{c.value}|{canonical_form(g)}".encode()).digest()
    return int.from_bytes(digest[:6], "big")


def is_block_complete(g: Pattern) -> bool:
    """Arcs split the vertices into cliques with loops, so specified cells form diagonal blocks."""
    comp = {v: {v} for v in range(1, g.n + 1)}
    for i, j in g.arcs:
        if (j, i) not in g.arcs:
            return False
        merged = comp[i] | comp[j]
        for v in merged:
            comp[v] = merged
    for block in {frozenset(b) for b in comp.values()}:
        if len(block) == 1:
            continue
        if not block <= g.loops:
            return False
        if any(a != b and (a, b) not in g.arcs for a in block for b in block):
            return False
    return True


def zero_completion_sound(g: Pattern, c: MatrixClass) -> bool:
    """Zero completion lands in ``c`` for every partial member specifying ``g``.

    For a null pattern the completion is diagonal: fine for nonnegative-minor
    classes; classes that need positive minors need the diagonal positive,
    which partial members guarantee only if no specified diagonal entry may be
    zero.  For a union of fully specified blocks the completion is a direct
    sum, whose minors are products of block minors.  That is enough when every
    fully specified minor is already >= 0 (or > 0 for strict classes) but not
    when a positive minor of every order is required.
    """
    if g.arcs:
        return is_block_complete(g) and not c.needs_positive_per_order
    if not (c.strict or c.needs_positive_per_order):
        return True
    return not zero_diagonal_allowed(g, c)


def _demo_partial(g: Pattern, c: MatrixClass, seed: int) -> Optional[PartialMatrix]:
    return random_partial_member(g, c, random.Random(seed))


def classify_pattern(
    g: Pattern, c: MatrixClass, cfg: CompletionConfig = CompletionConfig(), samples: int = 50
) -> PatternStatus:
    """Decision cascade: complete, null, loopless, then adversarial search and sampling."""
    props = structural_props(g)
    seed = pattern_seed(cfg.seed, c, g)
    base = dict(target=c, seed=seed, budget=cfg.budget)
    if props.is_complete and props.all_loops:
        return PatternStatus(YES_PROVED, "complete", **base)
    if zero_completion_sound(g, c):
        demo = _demo_partial(g, c, seed)
        comps = ()
        if demo is not None:
            res = complete_zero(demo, c)
            comps = ((demo, res.matrix),) if res.found else ()
        return PatternStatus(YES_PROVED, "zero-completion", completions=comps, **base)
    if not g.loops:
        demo = _demo_partial(g, c, seed)
        comps = ()
        if demo is not None:
            comps = ((demo, complete_loopless(demo, c, cfg).matrix),)
        return PatternStatus(YES_PROVED, "loopless-construction", completions=comps, **base)

    run_cfg = cfg.with_(seed=seed)
    hard = find_hard_partial(g, c, run_cfg)
    if hard is not None:
        if hard.certificate is not None:
            return PatternStatus(
                NO_PROVED, "symbolic", certificate=hard.certificate, hard_partial=hard.partial,
                evaluations=hard.evaluations, **base,
            )
        return PatternStatus(
            NO_EVIDENCE, "search-exhausted", hard_partial=hard.partial,
            evaluations=hard.evaluations, **{**base, "seed": hard.seed},
        )

    rng = random.Random(seed)
    completions = []
    tried = 0
    evals = 0
    for k in range(samples):
        p = random_partial_member(g, c, rng, cfg.magnitude_grid)
        if p is None:
            continue
        tried += 1
        res = search_completion(p, c, run_cfg.with_(seed=seed + k + 1))
        evals += res.evaluations_used
        if not res.found:
            cert = prove_noncompletable(p, c)
            if cert is not None:
                return PatternStatus(NO_PROVED, "symbolic", certificate=cert, hard_partial=p, evaluations=evals, **base)
            return PatternStatus(
                UNDECIDED, "sample-exhausted", completions=tuple(completions), hard_partial=p,
                samples_completed=len(completions), samples_tried=tried, evaluations=evals,
                **{**base, "seed": seed + k + 1},
            )
        completions.append((p, res.matrix))
    if not tried:
        return PatternStatus(UNDECIDED, "no-partial-members", **base)
    return PatternStatus(
        YES_EVIDENCE, "sampled", completions=tuple(completions),
        samples_completed=len(completions), samples_tried=tried, evaluations=evals, **base,
    )


def recheck_status(g: Pattern, status: PatternStatus) -> list[tuple[str, bool]]:
    """Re-validate every certificate inside a status; one (description, ok) per item."""
    c = status.target
    props = structural_props(g)
    checks = []
    if status.kind == "complete":
        checks.append(("pattern is complete with all loops", props.is_complete and props.all_loops))
    if status.kind == "zero-completion":
        checks.append(("zero completion is sound for the pattern", zero_completion_sound(g, c)))
    if status.kind == "loopless-construction":
        checks.append(("pattern has no loops", not g.loops))
    for idx, (p, m) in enumerate(status.completions):
        ok = pattern_of(p) == g and bool(is_partial_member(p, c)) and bool(verify_completion(p, m, c))
        checks.append((f"completion {idx + 1} verifies", ok))
    if status.certificate is not None:
        cert = status.certificate
        ok = (
            cert.target is c
            and pattern_of(cert.partial) == g
            and bool(is_partial_member(cert.partial, c))
            and cert.recheck()
        )
        checks.append((f"{cert.kind} certificate re-derives", ok))
    if status.verdict == NO_PROVED and status.certificate is None:
        checks.append(("no-proved verdict carries a certificate", False))
    if status.hard_partial is not None:
        checks.append(("hard partial is a partial member of the pattern", pattern_of(status.hard_partial) == g and bool(is_partial_member(status.hard_partial, c))))
    return checks


# --- report types -------------------------------------------------------------


@dataclass(frozen=True)
class AuditConfig:
    orders: tuple[int, ...] = (1, 2, 3, 4)
    target: MatrixClass = MatrixClass.SSP01_PLUS
    compare: tuple[MatrixClass, ...] = (
        MatrixClass.SSP,
        MatrixClass.SSP01,
        MatrixClass.SSP0_PLUS,
        MatrixClass.SSP0,
    )
    samples: int = 50
    compare_samples: int = 10
    completion: CompletionConfig = CompletionConfig()
    workers: int = 1

    def to_dict(self) -> dict:
        comp = asdict(self.completion)
        comp["magnitude_grid"] = [format_rational(g) for g in self.completion.magnitude_grid]
        return {
            "orders": list(self.orders),
            "target": self.target.value,
            "compare": [c.value for c in self.compare],
            "samples": self.samples,
            "compare_samples": self.compare_samples,
            "completion": comp,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "AuditConfig":
        comp = dict(d["completion"])
        comp["magnitude_grid"] = tuple(Fraction(g) for g in comp["magnitude_grid"])
        return cls(
            orders=tuple(d["orders"]),
            target=MatrixClass(d["target"]),
            compare=tuple(MatrixClass(c) for c in d["compare"]),
            samples=d["samples"],
            compare_samples=d["compare_samples"],
            completion=CompletionConfig(**comp),
        )


@dataclass(frozen=True)
class PatternRow:
    row: int
    pattern: Pattern
    code: str
    props: StructuralProps
    published_claim: str  # yes | no | count-only
    statuses: dict[str, PatternStatus]
    agreement: str

    def to_dict(self) -> dict:
        return {
            "row": self.row,
            "order": self.pattern.n,
            "q": self.pattern.q,
            "code": self.code,
            "pattern": render_pattern(self.pattern),
            "props": self.props.as_dict(),
            "published_claim": self.published_claim,
            "agreement": self.agreement,
            "statuses": {k: v.to_dict() for k, v in self.statuses.items()},
        }

    @classmethod
    def from_dict(cls, d: dict) -> "PatternRow":
        return cls(
            row=d["row"],
            pattern=parse_pattern(d["pattern"]),
            code=d["code"],
            props=StructuralProps(**d["props"]),
            published_claim=d["published_claim"],
            statuses={k: PatternStatus.from_dict(v) for k, v in d["statuses"].items()},
            agreement=d["agreement"],
        )


@dataclass(frozen=True)
class Tally:
    p: int
    q: int
    bucket: int
    published_yes: int
    published_no: int
    published_no_two_cycle: int
    structural_two_cycle: int
    published_lists_partition: bool
    computed: dict[str, int]
    status: str
    agreement: str


@dataclass(frozen=True)
class ClaimOutcome:
    name: str
    statement: str
    status: str
    agreement: str
    detail: str
    evidence: dict = field(default_factory=dict)


@dataclass(frozen=True)
class RuleCheck:
    rule: str
    row: int
    severity: str  # violation | tension
    detail: str


@dataclass(frozen=True)
class AuditReport:
    config: AuditConfig
    rows: tuple[PatternRow, ...]
    tallies: tuple[Tally, ...]
    singleton_claims: tuple[ClaimOutcome, ...]
    claims: tuple[ClaimOutcome, ...]
    rule_checks: tuple[RuleCheck, ...]

    @property
    def violations(self) -> list[RuleCheck]:
        return [r for r in self.rule_checks if r.severity == "violation"]

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "config": self.config.to_dict(),
            "rows": [r.to_dict() for r in self.rows],
            "tallies": [asdict(t) for t in self.tallies],
            "singleton_claims": [asdict(c) for c in self.singleton_claims],
            "claims": [asdict(c) for c in self.claims],
            "rule_checks": [asdict(r) for r in self.rule_checks],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "AuditReport":
        if d.get("schema") != SCHEMA:
            raise ValueError(f"unsupported report schema {d.get('schema')!r}")
        return cls(
            config=AuditConfig.from_dict(d["config"]),
            rows=tuple(PatternRow.from_dict(r) for r in d["rows"]),
            tallies=tuple(Tally(**t) for t in d["tallies"]),
            singleton_claims=tuple(ClaimOutcome(**c) for c in d["singleton_claims"]),
            claims=tuple(ClaimOutcome(**c) for c in d["claims"]),
            rule_checks=tuple(RuleCheck(**r) for r in d["rule_checks"]),
        )


# --- singleton claims ------------------------------------------------------------

RANK_ONE_WITNESS = PartialMatrix.from_rows([[1, 1, 1], [1, 1, 1], [1, 1, None]])
TWO_CYCLE_ORDER3 = PartialMatrix.from_rows([[1, -1, None], [-1, 1, None], [None, None, 1]])
TWO_CYCLE_ORDER4 = PartialMatrix.from_rows(
    [[1, -1, None, None], [-1, 1, None, None], [None, None, 1, None], [None, None, None, 1]]
)
TWO_CYCLE_POLY = "-x13*x31 - x13*x32 - x23*x31 - x23*x32"


def two_cycle_witness(n: int) -> PartialMatrix:
    rows = [[None] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = 1
    rows[0][1] = rows[1][0] = -1
    return PartialMatrix.from_rows(rows)


def _witness_claim(name: str, statement: str, p: PartialMatrix, c: MatrixClass, cfg: CompletionConfig) -> ClaimOutcome:
    cert = prove_noncompletable(p, c)
    if cert is not None:
        return ClaimOutcome(name, statement, CONFIRMED, "agree", f"{cert.kind} certificate", {"certificate": cert.to_dict()})
    res = search_completion(p, c, cfg)
    if res.found:
        return ClaimOutcome(
            name, statement, REFUTED, "disagree",
            f"verified completion found after {res.evaluations_used} evaluations",
            {"partial": str(p), "completion": str(res.matrix)},
        )
    return ClaimOutcome(name, statement, OPEN, "unresolved", f"search exhausted after {res.evaluations_used} evaluations", {"partial": str(p)})


def check_singleton_claims(cfg: CompletionConfig = CompletionConfig(), c: MatrixClass = MatrixClass.SSP01_PLUS) -> list[ClaimOutcome]:
    out = []

    cert = prove_noncompletable_by_zero_det(RANK_ONE_WITNESS, c)
    out.append(
        ClaimOutcome(
            "rank-one-witness",
            "the rank-deficient order-3 witness with d3 unspecified has no completion",
            CONFIRMED if cert is not None else OPEN,
            "agree" if cert is not None else "unresolved",
            "determinant is the zero polynomial" if cert is not None else "determinant is not identically zero",
            {"certificate": cert.to_dict()} if cert is not None else {},
        )
    )

    poly = sym_det(lift(TWO_CYCLE_ORDER3))
    same = poly == MultiPoly.parse(TWO_CYCLE_POLY)
    out.append(
        ClaimOutcome(
            "two-cycle-determinant",
            f"det of the order-3 witness equals {TWO_CYCLE_POLY}",
            CONFIRMED if same else REFUTED,
            "agree" if same else "disagree",
            f"computed {poly}",
            {"polynomial": str(poly)},
        )
    )

    out.append(
        _witness_claim(
            "two-cycle-witness-order-3",
            "the order-3 witness with a12 = a21 = -1 has no completion",
            TWO_CYCLE_ORDER3, c, cfg,
        )
    )
    out.append(
        _witness_claim(
            "two-cycle-witness-order-4",
            "the order-4 witness with a12 = a21 = -1 has no completion",
            TWO_CYCLE_ORDER4, c, cfg,
        )
    )
    # nonnegativity of the order-3 principal minor is claimed to force the
    # unspecified entries of A(1,2,3) to zero
    forcing = {Var.x(1, 3): Fraction(1, 2), Var.x(3, 1): Fraction(1, 2), Var.x(2, 3): Fraction(-1, 4), Var.x(3, 2): Fraction(-4, 5)}
    value = substitute(poly, forcing)
    trial = TWO_CYCLE_ORDER3.fill({(i, j): forcing[Var.x(i, j)] for i, j in TWO_CYCLE_ORDER3.unspecified_cells()})
    member = verify_completion(TWO_CYCLE_ORDER3, trial, c)
    out.append(
        ClaimOutcome(
            "two-cycle-forcing",
            "nonnegative minors of A(1,2,3) force x13 = x23 = x31 = x32 = 0",
            REFUTED if value > 0 and member else OPEN,
            "disagree" if value > 0 and member else "unresolved",
            f"nonzero sign symmetric assignment gives det A(1,2,3) = {format_rational(value)}",
            {"partial": str(TWO_CYCLE_ORDER3), "completion": str(trial)},
        )
    )
    out.append(
        _witness_claim(
            "two-cycle-witness-order-5",
            "the order-5 witness with a12 = a21 = -1 has no completion",
            two_cycle_witness(5), c, cfg,
        )
    )

    # 2x2 step: zero diagonal, a12 specified nonzero, x21 unspecified
    step = PartialMatrix.from_rows([[0, 1], [None, 0]])
    step_cert = prove_noncompletable(step, MatrixClass.SSP0)
    grid_ok = all(
        (Fraction(0) * 0 - a * x) < 0
        for a in cfg.magnitude_grid + tuple(-g for g in cfg.magnitude_grid)
        for x in cfg.magnitude_grid + tuple(-g for g in cfg.magnitude_grid)
        if a * x > 0
    )
    ok = step_cert is not None and step_cert.argument == "negative" and grid_ok
    out.append(
        ClaimOutcome(
            "ssp0-two-by-two-step",
            "with zero diagonal and a_ij != 0 specified, no sign symmetric x_ji gives det A(i,j) >= 0",
            CONFIRMED if ok else OPEN,
            "agree" if ok else "unresolved",
            f"minor {step_cert.minors[0][1] if step_cert else '?'} is forced negative; grid check {'passed' if grid_ok else 'failed'}",
            {"certificate": step_cert.to_dict()} if step_cert else {},
        )
    )
    return out


# --- cross-class rules ---------------------------------------------------------------

C = MatrixClass
RULES = (
    # (name, premise class, conclusion class, applies only to asymmetric patterns)
    ("ssp01plus-implies-ssp", C.SSP01_PLUS, C.SSP, False),
    ("asymmetric-ssp-implies-ssp01plus", C.SSP, C.SSP01_PLUS, True),
    ("ssp01-implies-ssp", C.SSP01, C.SSP, False),
    ("asymmetric-ssp-implies-ssp01", C.SSP, C.SSP01, True),
    ("ssp0plus-implies-ssp01plus", C.SSP0_PLUS, C.SSP01_PLUS, False),
    ("ssp01plus-implies-ssp01", C.SSP01_PLUS, C.SSP01, False),
    ("ssp0plus-implies-ssp01", C.SSP0_PLUS, C.SSP01, False),
    ("ssp0plus-implies-ssp", C.SSP0_PLUS, C.SSP, False),
    ("ssp0-implies-ssp01plus", C.SSP0, C.SSP01_PLUS, False),
)


def evaluate_rules(rows) -> list[RuleCheck]:
    checks = []
    for row in rows:
        st = row.statuses
        for name, prem, concl, asym_only in RULES:
            if prem.value not in st or concl.value not in st:
                continue
            if asym_only and not row.props.is_asymmetric:
                continue
            a, b = st[prem.value], st[concl.value]
            if a.is_yes and b.is_no:
                proved = a.verdict == YES_PROVED and b.verdict == NO_PROVED
                checks.append(
                    RuleCheck(
                        name, row.row, "violation" if proved else "tension",
                        f"{prem.label} {a.verdict} but {concl.label} {b.verdict}",
                    )
                )
        s0 = st.get(C.SSP0.value)
        if s0 is not None and s0.is_yes and not (row.props.is_null or (row.props.is_complete and row.props.all_loops)):
            checks.append(
                RuleCheck(
                    "ssp0-only-null-or-complete", row.row, "violation" if s0.verdict == YES_PROVED else "tension",
                    f"ssP0 {s0.verdict} on a pattern that is neither null nor complete",
                )
            )
    return checks


# --- audit driver ------------------------------------------------------------------------


def published_claim_for(g: Pattern) -> str:
    props = structural_props(g)
    if props.is_null or props.is_complete:
        return "yes"
    if props.has_two_cycle:
        return "no"
    return "count-only"


def _row_agreement(claim: str, status: PatternStatus) -> str:
    if claim == "count-only" or status.verdict == UNDECIDED:
        return "unresolved"
    if (claim == "yes") == status.is_yes:
        return "agree"
    return "disagree"


def _classify_job(args):
    g, classes, cfg, samples, compare_samples = args
    out = {}
    for i, c in enumerate(classes):
        out[c.value] = classify_pattern(g, c, cfg, samples if i == 0 else compare_samples)
    return out


def _tally(p: int, q: int, rows: list[PatternRow], target: MatrixClass) -> Tally:
    bucket = len(rows)
    claims = published_lists.claim_counts(p, q, bucket)
    verdicts = [r.statuses[target.value].verdict for r in rows]
    counts = {v: verdicts.count(v) for v in (YES_PROVED, YES_EVIDENCE, NO_PROVED, NO_EVIDENCE, UNDECIDED)}
    yes = counts[YES_PROVED] + counts[YES_EVIDENCE]
    no = counts[NO_PROVED] + counts[NO_EVIDENCE]
    if counts[YES_PROVED] > claims["yes"] or counts[NO_PROVED] > claims["no"]:
        status = REFUTED
    elif counts[YES_PROVED] == claims["yes"] and counts[NO_PROVED] == claims["no"]:
        status = CONFIRMED
    elif yes == claims["yes"] and no == claims["no"]:
        status = SUPPORTED
    else:
        status = OPEN
    if yes == claims["yes"] and no == claims["no"]:
        agreement = "agree"
    elif yes > claims["yes"] or no > claims["no"]:
        agreement = "disagree"
    else:
        agreement = "unresolved"
    return Tally(
        p=p, q=q, bucket=bucket, published_yes=claims["yes"], published_no=claims["no"],
        published_no_two_cycle=claims["no_two_cycle"],
        structural_two_cycle=sum(r.props.has_two_cycle and not r.props.is_complete for r in rows),
        published_lists_partition=claims["partition"], computed=counts, status=status, agreement=agreement,
    )


def _aggregate_claims(rows: list[PatternRow], tallies: list[Tally], target: MatrixClass) -> list[ClaimOutcome]:
    out = []
    two_cycle = [r for r in rows if r.published_claim == "no"]
    st = [r.statuses[target.value] for r in two_cycle]
    n_yes = sum(s.is_yes for s in st)
    n_yes_proved = sum(s.verdict == YES_PROVED for s in st)
    n_no_proved = sum(s.verdict == NO_PROVED for s in st)
    n_no = sum(s.is_no for s in st)
    if n_yes_proved:
        status, agreement = REFUTED, "disagree"
    elif st and n_no_proved == len(st):
        status, agreement = CONFIRMED, "agree"
    elif n_no == len(st):
        status, agreement = SUPPORTED, "agree"
    else:
        status, agreement = OPEN, "disagree" if n_yes else "unresolved"
    out.append(
        ClaimOutcome(
            "two-cycle-patterns",
            "every incomplete all-loops pattern with a 2-cycle lacks a completion",
            status, agreement,
            f"{len(st)} patterns: {n_no_proved} no-proved, {n_no - n_no_proved} no-evidence, "
            f"{n_yes} yes (evidence or proof), {len(st) - n_yes - n_no} undecided",
            {"rows_disagreeing": [r.row for r, s in zip(two_cycle, st) if s.is_yes]},
        )
    )
    for p in sorted({t.p for t in tallies}):
        ts = [t for t in tallies if t.p == p]
        statuses = {t.status for t in ts}
        if REFUTED in statuses:
            status = REFUTED
        elif statuses == {CONFIRMED}:
            status = CONFIRMED
        elif statuses <= {CONFIRMED, SUPPORTED}:
            status = SUPPORTED
        else:
            status = OPEN
        agreements = {t.agreement for t in ts}
        agreement = "agree" if agreements == {"agree"} else ("disagree" if "disagree" in agreements else "unresolved")
        yes = sum(t.computed[YES_PROVED] + t.computed[YES_EVIDENCE] for t in ts)
        no = sum(t.computed[NO_PROVED] + t.computed[NO_EVIDENCE] for t in ts)
        out.append(
            ClaimOutcome(
                f"classification-order-{p}",
                f"order-{p} classification: {sum(t.published_yes for t in ts)} with and {sum(t.published_no for t in ts)} without completion",
                status, agreement,
                f"computed {yes} yes, {no} no, {sum(t.computed[UNDECIDED] for t in ts)} undecided",
            )
        )
    return out


def audit_published_claims(cfg: AuditConfig = AuditConfig()) -> AuditReport:
    classes = (cfg.target,) + tuple(c for c in cfg.compare if c is not cfg.target)
    patterns = [g for p in cfg.orders for g in enumerate_patterns(p, "all")]
    jobs = [(g, classes, cfg.completion, cfg.samples, cfg.compare_samples) for g in patterns]
    if cfg.workers > 1:
        with ProcessPoolExecutor(cfg.workers) as pool:
            results = list(pool.map(_classify_job, jobs, chunksize=4))
    else:
        results = [_classify_job(j) for j in jobs]

    rows = []
    for idx, (g, statuses) in enumerate(zip(patterns, results), start=1):
        claim = published_claim_for(g)
        rows.append(
            PatternRow(
                row=idx, pattern=g, code=str(canonical_form(g)), props=structural_props(g),
                published_claim=claim, statuses=statuses,
                agreement=_row_agreement(claim, statuses[cfg.target.value]),
            )
        )
    tallies = []
    for p in cfg.orders:
        for q in range(p * (p - 1) + 1):
            bucket_rows = [r for r in rows if r.pattern.n == p and r.pattern.q == q]
            tallies.append(_tally(p, q, bucket_rows, cfg.target))
    singles = check_singleton_claims(cfg.completion, cfg.target)
    claims = _aggregate_claims(rows, tallies, cfg.target)
    return AuditReport(cfg, tuple(rows), tuple(tallies), tuple(singles), tuple(claims), tuple(evaluate_rules(rows)))


# --- rendering -------------------------------------------------------------------------------


def render_report(r: AuditReport, fmt: str = "json") -> str:
    if fmt == "json":
        return json.dumps(r.to_dict(), indent=1, sort_keys=True) + "\n"
    if fmt == "text":
        return _render_text(r)
    raise ValueError(f"unknown report format {fmt!r}")


def parse_report(text: str) -> AuditReport:
    return AuditReport.from_dict(json.loads(text))


def _render_text(r: AuditReport) -> str:
    t = r.config.target.value
    lines = [f"audit of {r.config.target.label} completion, orders {','.join(map(str, r.config.orders))}"]
    lines.append("")
    lines.append("rows:")
    for row in r.rows:
        lines.append(
            f"  {row.row:4d} {row.pattern}  published={row.published_claim:10s} "
            f"computed={row.statuses[t].describe()}  [{row.agreement}]"
        )
    lines.append("")
    lines.append("tallies (p, q): published yes/no vs computed")
    for tl in r.tallies:
        c = tl.computed
        lines.append(
            f"  p={tl.p} q={tl.q:2d} bucket={tl.bucket:2d} published {tl.published_yes}/{tl.published_no}  "
            f"computed yes={c[YES_PROVED]}+{c[YES_EVIDENCE]} no={c[NO_PROVED]}+{c[NO_EVIDENCE]} "
            f"undecided={c[UNDECIDED]}  {tl.status} [{tl.agreement}]"
        )
    lines.append("")
    lines.append("singleton claims:")
    for cl in r.singleton_claims:
        lines.append(f"  {cl.name}: {cl.status} [{cl.agreement}] {cl.detail}")
    lines.append("")
    lines.append("claims:")
    for cl in r.claims:
        lines.append(f"  {cl.name}: {cl.status} [{cl.agreement}] {cl.detail}")
    lines.append("")
    lines.append(f"rule checks: {len(r.violations)} violations, {len(r.rule_checks) - len(r.violations)} tensions")
    for rc in r.rule_checks:
        lines.append(f"  {rc.severity}: {rc.rule} row {rc.row}: {rc.detail}")
    return "\n".join(lines) + "\n"
