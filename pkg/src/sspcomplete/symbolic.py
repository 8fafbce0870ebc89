"""Sparse multivariate polynomials over Q and symbolic determinants of partial matrices.

Unspecified off-diagonal cell (i, j) becomes the variable ``x{i}{j}``,
unspecified diagonal cell (i, i) becomes ``d{i}``.  A scale variable ``t`` is
available for diagonal-scaling experiments.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Union

from .classes import MatrixClass, PartialMatrix
from .exact import IndexSet, format_rational, index_sets, to_rational

SYM_DET_MAX_ORDER = 6

_KIND_RANK = {"d": 0, "t": 1, "x": 2}


@dataclass(frozen=True, order=True)
class Var:
    rank: int
    i: int = 0
    j: int = 0

    def __post_init__(self) -> None:
        if self.rank == _KIND_RANK["x"] and self.i == self.j:
            raise ValueError("off-diagonal variable needs i != j")

    @classmethod
    def x(cls, i: int, j: int) -> "Var":
        return cls(_KIND_RANK["x"], i, j)

    @classmethod
    def d(cls, i: int) -> "Var":
        return cls(_KIND_RANK["d"], i)

    @classmethod
    def t(cls) -> "Var":
        return cls(_KIND_RANK["t"])

    @property
    def kind(self) -> str:
        return "dtx"[self.rank]

    def __str__(self) -> str:
        if self.kind == "x":
            return f"x{self.i}{self.j}" if self.i < 10 and self.j < 10 else f"x{self.i}_{self.j}"
        if self.kind == "d":
            return f"d{self.i}"
        return "t"

    @classmethod
    def parse(cls, text: str) -> "Var":
        m = re.fullmatch(r"x(\d)(\d)|x(\d+)_(\d+)|d(\d+)|t", text)
        if not m:
            raise ValueError(f"bad variable name {text!r}")
        if text == "t":
            return cls.t()
        if m.group(5):
            return cls.d(int(m.group(5)))
        i, j = (m.group(1), m.group(2)) if m.group(1) else (m.group(3), m.group(4))
        return cls.x(int(i), int(j))


Monomial = tuple[tuple[Var, int], ...]


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for v, e in b:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items()))


def _mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def _mono_key(m: Monomial):
    expanded = [v for v, e in m for _ in range(e)]
    return (-_mono_degree(m), expanded)


class MultiPoly:
    """Immutable sparse polynomial; the zero polynomial has no terms."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Optional[Mapping[Monomial, Fraction]] = None):
        clean = {}
        for mono, coef in (terms or {}).items():
            if coef != 0:
                clean[mono] = Fraction(coef)
        self._terms = clean
        self._hash = None

    @classmethod
    def const(cls, value: Union[int, Fraction]) -> "MultiPoly":
        return cls({(): Fraction(value)})

    @classmethod
    def var(cls, v: Var) -> "MultiPoly":
        return cls({((v, 1),): Fraction(1)})

    @property
    def terms(self) -> dict[Monomial, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not m for m in self._terms)

    def constant_value(self) -> Fraction:
        return self._terms.get((), Fraction(0))

    def variables(self) -> set[Var]:
        return {v for m in self._terms for v, _ in m}

    def degree(self) -> int:
        return max((_mono_degree(m) for m in self._terms), default=0)

    def __len__(self) -> int:
        return len(self._terms)

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        other = _coerce(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return MultiPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly({m: -c for m, c in self._terms.items()})

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "MultiPoly":
        return _coerce(other) - self

    def __mul__(self, other: "MultiPoly") -> "MultiPoly":
        other = _coerce(other)
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return MultiPoly(out)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.const(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def rename(self, mapping: Mapping[Var, Var]) -> "MultiPoly":
        out: dict[Monomial, Fraction] = {}
        for m, c in self._terms.items():
            new = tuple(sorted((mapping.get(v, v), e) for v, e in m))
            out[new] = out.get(new, 0) + c
        return MultiPoly(out)

    def partial_substitute(self, assignment: Mapping[Var, Fraction]) -> "MultiPoly":
        out: dict[Monomial, Fraction] = {}
        for m, c in self._terms.items():
            coef = c
            rest = []
            for v, e in m:
                if v in assignment:
                    coef *= assignment[v] ** e
                else:
                    rest.append((v, e))
            key = tuple(rest)
            out[key] = out.get(key, 0) + coef
        return MultiPoly(out)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for idx, mono in enumerate(sorted(self._terms, key=_mono_key)):
            coef = self._terms[mono]
            sign = "-" if coef < 0 else "+"
            mag = abs(coef)
            factors = [str(v) if e == 1 else f"{v}^{e}" for v, e in mono]
            if mag != 1 or not factors:
                factors.insert(0, format_rational(mag))
            body = "*".join(factors)
            if idx == 0:
                parts.append(("-" if sign == "-" else "") + body)
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"MultiPoly({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> "MultiPoly":
        """Inverse of ``str``: sums of ``coef*var^e*...`` terms."""
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty polynomial")
        if s[0] not in "+-":
            s = "+" + s
        pieces = re.findall(r"([+-])([^+-]+)", s)
        if "".join(sgn + body for sgn, body in pieces) != s:
            raise ValueError(f"cannot parse polynomial {text!r}")
        total = cls()
        for sgn, body in pieces:
            term = cls.const(-1 if sgn == "-" else 1)
            for factor in body.split("*"):
                if re.fullmatch(r"\d+(/\d+)?", factor):
                    term = term * cls.const(to_rational(factor))
                    continue
                name, _, exp = factor.partition("^")
                v = cls.var(Var.parse(name))
                for _ in range(int(exp) if exp else 1):
                    term = term * v
            total = total + term
        return total


def _coerce(value) -> MultiPoly:
    if isinstance(value, MultiPoly):
        return value
    if isinstance(value, (int, Fraction)):
        return MultiPoly.const(value)
    raise TypeError(f"cannot use {type(value).__name__} as a polynomial")


class MissingVariable(KeyError):
    pass


def substitute(p: MultiPoly, assignment: Mapping[Var, Union[int, Fraction]]) -> Fraction:
    missing = p.variables() - set(assignment)
    if missing:
        raise MissingVariable(", ".join(sorted(map(str, missing))))
    total = Fraction(0)
    for m, c in p.items():
        term = c
        for v, e in m:
            term *= Fraction(assignment[v]) ** e
        total += term
    return total


@dataclass(frozen=True)
class SymbolicMatrix:
    rows: tuple[tuple[MultiPoly, ...], ...]

    def __post_init__(self) -> None:
        if any(len(r) != len(self.rows) for r in self.rows):
            raise ValueError("symbolic matrix is not square")

    @property
    def n(self) -> int:
        return len(self.rows)

    def submatrix(self, s: IndexSet) -> "SymbolicMatrix":
        return SymbolicMatrix(tuple(tuple(self.rows[i - 1][j - 1] for j in s) for i in s))

    def permuted(self, perm) -> "SymbolicMatrix":
        return SymbolicMatrix(tuple(tuple(self.rows[a][b] for b in perm) for a in perm))

    def __str__(self) -> str:
        return "\n".join(" | ".join(str(e) for e in r) for r in self.rows)


def lift(p: PartialMatrix) -> SymbolicMatrix:
    rows = []
    for i in range(1, p.n + 1):
        row = []
        for j in range(1, p.n + 1):
            v = p[i, j]
            if v is not None:
                row.append(MultiPoly.const(v))
            elif i == j:
                row.append(MultiPoly.var(Var.d(i)))
            else:
                row.append(MultiPoly.var(Var.x(i, j)))
        rows.append(tuple(row))
    return SymbolicMatrix(tuple(rows))


def sym_det(sm: SymbolicMatrix) -> MultiPoly:
    """Division-free Laplace expansion, memoised on the remaining column set."""
    n = sm.n
    if n > SYM_DET_MAX_ORDER:
        raise ValueError(f"symbolic determinant limited to order {SYM_DET_MAX_ORDER}, got {n}")
    memo: dict[int, MultiPoly] = {}

    def expand(row: int, cols: int) -> MultiPoly:
        if row == n:
            return MultiPoly.const(1)
        if cols in memo:
            return memo[cols]
        total = MultiPoly()
        pos = 0
        for c in range(n):
            if not cols >> c & 1:
                continue
            entry = sm.rows[row][c]
            if not entry.is_zero():
                term = entry * expand(row + 1, cols & ~(1 << c))
                total = total - term if pos % 2 else total + term
            pos += 1
        memo[cols] = total
        return total

    return expand(0, (1 << n) - 1)


# --- sign analysis ----------------------------------------------------------

STRICT_POS, STRICT_NEG, WEAK_POS = "+", "-", "+0"


def admissible_signs(
    p: PartialMatrix, c: MatrixClass
) -> tuple[dict[Var, Fraction], dict[Var, str]]:
    """Values forced to zero and sign constraints on the lifted variables.

    Every completion in class ``c`` has nonnegative diagonal (1x1 minors) and,
    for sign symmetric classes, an unspecified twin of a specified nonzero
    entry must share its sign strictly, while a twin of a specified zero must
    itself be zero.
    """
    zeros: dict[Var, Fraction] = {}
    signs: dict[Var, str] = {}
    for i in range(1, p.n + 1):
        if p[i, i] is None:
            signs[Var.d(i)] = STRICT_POS if c.positive_diagonal else WEAK_POS
        for j in range(1, p.n + 1):
            if i == j or p[i, j] is not None or not c.sign_symmetric:
                continue
            twin = p[j, i]
            if twin is None:
                continue
            if twin == 0:
                zeros[Var.x(i, j)] = Fraction(0)
            else:
                signs[Var.x(i, j)] = STRICT_POS if twin > 0 else STRICT_NEG
    return zeros, signs


def _monomial_sign(mono: Monomial, coef: Fraction, signs: Mapping[Var, str], twin_pairs: bool):
    """Return (sign in {-1, +1}, strict) for a monomial or None if undetermined."""
    sign = 1 if coef > 0 else -1
    strict = True
    exps = dict(mono)
    for v, e in mono:
        s = signs.get(v)
        if s == STRICT_POS:
            continue
        if s == STRICT_NEG:
            sign *= (-1) ** e
            continue
        if s == WEAK_POS:
            strict = False
            continue
        if e % 2 == 0:
            strict = False
            continue
        if twin_pairs and v.kind == "x":
            mate = Var.x(v.j, v.i)
            if exps.get(mate) == e and mate not in signs:
                strict = False
                continue
        return None
    return sign, strict


def forced_sign(poly: MultiPoly, signs: Mapping[Var, str], twin_pairs: bool) -> Optional[str]:
    """Classify ``poly`` on the admissible region as 'zero', 'negative' or 'nonpositive'.

    'negative' means every term is <= 0 and some term is < 0 everywhere on the
    region.  Returns None when the term-wise argument does not settle it.
    """
    if poly.is_zero():
        return "zero"
    any_strict = False
    for mono, coef in poly.items():
        res = _monomial_sign(mono, coef, signs, twin_pairs)
        if res is None or res[0] > 0:
            return None
        any_strict = any_strict or res[1]
    return "negative" if any_strict else "nonpositive"


def minor_polynomials(p: PartialMatrix, zeros: Mapping[Var, Fraction] = {}) -> dict[IndexSet, MultiPoly]:
    sm = lift(p)
    out = {}
    for k in range(1, p.n + 1):
        for s in index_sets(p.n, k):
            poly = sym_det(sm.submatrix(s))
            out[s] = poly.partial_substitute(zeros) if zeros else poly
    return out


# --- certificates -----------------------------------------------------------


def forced_zero_atoms(poly: MultiPoly, signs: Mapping[Var, str], twin_pairs: bool) -> set[Var]:
    """Variables that must vanish if a nonpositive ``poly`` is also required to be >= 0.

    Every term is <= 0, so each term must be 0.  A term whose only non-strict
    factor is a single weak variable, or a doubly unspecified twin pair
    x_ij * x_ji, pins that variable (or both twins) to zero.
    """
    out: set[Var] = set()
    for mono, _ in poly.items():
        loose = [(v, e) for v, e in mono if signs.get(v) not in (STRICT_POS, STRICT_NEG)]
        vars_ = {v for v, _ in loose}
        if len(loose) == 1:
            v = loose[0][0]
            out.add(v)
            if twin_pairs and v.kind == "x" and v not in signs:
                out.add(Var.x(v.j, v.i))
        elif len(loose) == 2 and twin_pairs:
            (a, ea), (b, eb) = loose
            if a.kind == b.kind == "x" and (a.i, a.j) == (b.j, b.i) and ea == eb and a not in signs:
                out |= vars_
    return out


@dataclass(frozen=True)
class NoCompletionCertificate:
    """Exact proof that no completion of ``partial`` lies in ``target``.

    ``forcings`` is a replayable chain: each step names a minor that is <= 0 on
    the admissible region (so it must be exactly 0) and the variables that
    consequently vanish.  ``minors`` then lists principal index sets with their
    canonical polynomial, after all forced zeros, and the sign each is forced
    to take.  The closing argument is one of:

    * ``negative``: a single minor is < 0 everywhere; kills every class.
    * ``nonpositive``: a single minor is <= 0; kills classes needing all minors > 0.
    * ``order``: every minor of one order is <= 0; kills classes needing a
      positive minor of each order (k = n is the determinant alone).
    """

    kind: str  # "zero-determinant" or "sign-forced"
    argument: str
    target: MatrixClass
    partial: PartialMatrix
    minors: tuple[tuple[IndexSet, str, str], ...]
    forcings: tuple[tuple[IndexSet, str, tuple[str, ...]], ...] = ()

    def recheck(self) -> bool:
        p, c = self.partial, self.target
        zeros, signs = admissible_signs(p, c)
        sm = lift(p)
        for s, text, names in self.forcings:
            poly = sym_det(sm.submatrix(s)).partial_substitute(zeros)
            if str(poly) != text or forced_sign(poly, signs, c.sign_symmetric) != "nonpositive":
                return False
            atoms = forced_zero_atoms(poly, signs, c.sign_symmetric)
            if sorted(map(str, atoms - set(zeros))) != list(names) or not names:
                return False
            for v in atoms:
                zeros[v] = Fraction(0)
        for s, text, sign in self.minors:
            poly = sym_det(sm.submatrix(s)).partial_substitute(zeros)
            if str(poly) != text or MultiPoly.parse(text) != poly:
                return False
            if forced_sign(poly, signs, c.sign_symmetric) != sign:
                return False
        kinds = {sign for _, _, sign in self.minors}
        if self.kind == "zero-determinant" and (kinds != {"zero"} or self.forcings):
            return False
        if self.argument == "negative":
            return len(self.minors) == 1 and kinds == {"negative"}
        if self.argument == "nonpositive":
            return len(self.minors) == 1 and c.strict
        if self.argument == "order":
            if not c.requires_positive_top_minor:
                return False
            orders = {len(s) for s, _, _ in self.minors}
            if len(orders) != 1:
                return False
            (k,) = orders
            return sorted(s for s, _, _ in self.minors) == list(index_sets(p.n, k))
        return False

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "argument": self.argument,
            "target": self.target.value,
            "partial": str(self.partial),
            "forcings": [
                {"index_set": list(s), "polynomial": text, "zeroed": list(names)}
                for s, text, names in self.forcings
            ],
            "minors": [
                {"index_set": list(s), "polynomial": text, "sign": sign}
                for s, text, sign in self.minors
            ],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "NoCompletionCertificate":
        from .formats import parse_partial_rows

        return cls(
            kind=d["kind"],
            argument=d["argument"],
            target=MatrixClass(d["target"]),
            partial=parse_partial_rows(d["partial"]),
            minors=tuple(
                (tuple(e["index_set"]), e["polynomial"], e["sign"]) for e in d["minors"]
            ),
            forcings=tuple(
                (tuple(e["index_set"]), e["polynomial"], tuple(e["zeroed"]))
                for e in d.get("forcings", [])
            ),
        )


SUPPORTED_ZERO_DET_TARGETS = tuple(c for c in MatrixClass if c.requires_positive_top_minor)


def prove_noncompletable_by_zero_det(
    p: PartialMatrix, target: MatrixClass
) -> Optional[NoCompletionCertificate]:
    """Certificate when the full symbolic determinant vanishes identically.

    Only meaningful for classes that need the top-order minor to be positive.
    Returning None proves nothing either way.
    """
    if target not in SUPPORTED_ZERO_DET_TARGETS:
        raise ValueError(f"{target.label} does not require a positive determinant")
    poly = sym_det(lift(p))
    if not poly.is_zero():
        return None
    full = tuple(range(1, p.n + 1))
    return NoCompletionCertificate(
        "zero-determinant", "order", target, p, ((full, "0", "zero"),)
    )


def _closing_argument(polys, verdicts, target: MatrixClass):
    for s, v in verdicts.items():
        if v == "negative":
            return "sign-forced", "negative", [s]
    if target.strict:
        for s, v in verdicts.items():
            if v == "zero":
                return "zero-determinant", "nonpositive", [s]
        for s, v in verdicts.items():
            if v == "nonpositive":
                return "sign-forced", "nonpositive", [s]
    if target.needs_positive_per_order:
        n = max(len(s) for s in polys)
        for k in range(1, n + 1):
            sets = list(index_sets(n, k))
            vs = [verdicts[s] for s in sets]
            if all(v in ("zero", "nonpositive") for v in vs):
                kind = "zero-determinant" if all(v == "zero" for v in vs) else "sign-forced"
                return kind, "order", sets
    return None


def prove_noncompletable(p: PartialMatrix, target: MatrixClass) -> Optional[NoCompletionCertificate]:
    """Zero determinant first, then sign-forced minors with zero-forcing rounds."""
    if target.requires_positive_top_minor:
        cert = prove_noncompletable_by_zero_det(p, target)
        if cert is not None:
            return cert
    zeros, signs = admissible_signs(p, target)
    forcings: list[tuple[IndexSet, str, tuple[str, ...]]] = []
    while True:
        polys = minor_polynomials(p, zeros)
        verdicts = {s: forced_sign(poly, signs, target.sign_symmetric) for s, poly in polys.items()}
        closing = _closing_argument(polys, verdicts, target)
        if closing is not None:
            kind, argument, sets = closing
            if forcings:
                kind = "sign-forced"
            return NoCompletionCertificate(
                kind, argument, target, p,
                tuple((s, str(polys[s]), verdicts[s]) for s in sets),
                tuple(forcings),
            )
        step = None
        for s, v in verdicts.items():
            if v != "nonpositive":
                continue
            fresh = forced_zero_atoms(polys[s], signs, target.sign_symmetric) - set(zeros)
            if fresh:
                step = (s, str(polys[s]), tuple(sorted(map(str, fresh))))
                for var in fresh:
                    zeros[var] = Fraction(0)
                break
        if step is None:
            return None
        forcings.append(step)


def variables_of(polys: Iterable[MultiPoly]) -> set[Var]:
    out: set[Var] = set()
    for poly in polys:
        out |= poly.variables()
    return out
