"""Text formats for partial matrices and digraph patterns.

Partial matrix::

    3
    1 -1 ?
    -1 1 ?
    ? ? 1

Tokens are integers, rationals ``p/q`` or ``?``.  A fully specified file is
read as an ordinary matrix by the commands that need one.

Pattern::

    3 2 loops=all
    1 2
    2 1

The header is ``p q`` where ``q`` counts off-diagonal arcs; loops are listed
as ``i i`` lines unless the ``loops=all`` flag is present.
"""

from __future__ import annotations

from .classes import PartialMatrix
from .digraphs import Pattern
from .exact import ExactMatrix


class FormatError(ValueError):
    pass


def _lines(text: str) -> list[str]:
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


def parse_partial_rows(text: str) -> PartialMatrix:
    """Rows only, no order header (the embedded form used in reports)."""
    rows = [line.split() for line in _lines(text)]
    try:
        return PartialMatrix.from_rows(rows)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise FormatError(str(exc)) from exc


def parse_partial(text: str) -> PartialMatrix:
    lines = _lines(text)
    if not lines:
        raise FormatError("empty partial matrix file")
    try:
        n = int(lines[0])
    except ValueError as exc:
        raise FormatError(f"first line must be the order, got {lines[0]!r}") from exc
    if len(lines) - 1 != n:
        raise FormatError(f"expected {n} rows, found {len(lines) - 1}")
    p = parse_partial_rows("\n".join(lines[1:]))
    if p.n != n:
        raise FormatError("row lengths do not match the order")
    return p


def render_partial(p: PartialMatrix) -> str:
    return f"{p.n}\n{p}\n"


def parse_matrix(text: str) -> ExactMatrix:
    p = parse_partial(text)
    if not p.is_complete:
        raise FormatError("matrix has unspecified cells")
    return p.to_matrix()


def render_matrix(m: ExactMatrix) -> str:
    return f"{m.n}\n{m}\n"


def parse_pattern(text: str) -> Pattern:
    lines = _lines(text)
    if not lines:
        raise FormatError("empty pattern file")
    header = lines[0].split()
    flags = [h for h in header if "=" in h]
    nums = [h for h in header if "=" not in h]
    if len(nums) != 2:
        raise FormatError(f"header must be 'p q [loops=all]', got {lines[0]!r}")
    try:
        p, q = int(nums[0]), int(nums[1])
    except ValueError as exc:
        raise FormatError(f"bad header {lines[0]!r}") from exc
    all_loops = False
    for flag in flags:
        key, _, value = flag.partition("=")
        if key != "loops" or value not in ("all", "listed"):
            raise FormatError(f"unknown header flag {flag!r}")
        all_loops = value == "all"
    loops, arcs = set(), set()
    for line in lines[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise FormatError(f"arc line must be 'i j', got {line!r}")
        try:
            i, j = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise FormatError(f"bad arc line {line!r}") from exc
        if i == j:
            loops.add(i)
        else:
            if (i, j) in arcs:
                raise FormatError(f"duplicate arc {i} {j}")
            arcs.add((i, j))
    if all_loops:
        loops = set(range(1, p + 1))
    if len(arcs) != q:
        raise FormatError(f"header says {q} arcs, found {len(arcs)}")
    try:
        return Pattern(p, frozenset(loops), frozenset(arcs))
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def render_pattern(g: Pattern) -> str:
    all_loops = g.loops == frozenset(range(1, g.n + 1))
    head = f"{g.n} {len(g.arcs)}" + (" loops=all" if all_loops else "")
    lines = [head]
    if not all_loops:
        lines += [f"{i} {i}" for i in sorted(g.loops)]
    lines += [f"{i} {j}" for i, j in sorted(g.arcs)]
    return "\n".join(lines) + "\n"
