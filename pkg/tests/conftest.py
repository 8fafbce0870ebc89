from __future__ import annotations

from fractions import Fraction

from hypothesis import strategies as st

from sspcomplete.exact import ExactMatrix


def rationals(max_num: int = 9, max_den: int = 6):
    return st.builds(
        Fraction,
        st.integers(-max_num, max_num),
        st.integers(1, max_den),
    )


@st.composite
def matrices(draw, min_order: int = 1, max_order: int = 5, values=None):
    n = draw(st.integers(min_order, max_order))
    values = values if values is not None else rationals()
    rows = [[draw(values) for _ in range(n)] for _ in range(n)]
    return ExactMatrix.from_rows(rows)


def random_loopless_partial(rng, n: int, grid=(1, 2, 3, "1/2", "1/3", "5/7", 7)):
    """A loopless partial ssP0,1+ member: only twin pairs constrain it."""
    from sspcomplete.classes import PartialMatrix
    from sspcomplete.exact import to_rational

    cells = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            state = rng.choice(("none", "ij", "ji", "both", "zero"))
            sign = rng.choice((-1, 1))
            a = sign * to_rational(rng.choice(grid))
            b = sign * to_rational(rng.choice(grid))
            if state == "ij":
                cells[i][j] = a if rng.random() < 0.8 else Fraction(0)
            elif state == "ji":
                cells[j][i] = b if rng.random() < 0.8 else Fraction(0)
            elif state == "both":
                cells[i][j], cells[j][i] = a, b
            elif state == "zero":
                cells[i][j] = cells[j][i] = Fraction(0)
    return PartialMatrix(tuple(map(tuple, cells)))


# --- acceptance reporting ---------------------------------------------------------

ACCEPTANCE: dict[int, tuple[bool, str]] = {}


class criterion:
    """Record one acceptance criterion as pass/fail for the terminal summary."""

    def __init__(self, number: int, title: str):
        self.number, self.title = number, title

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        ACCEPTANCE[self.number] = (exc_type is None, self.title if exc is None else f"{self.title}: {exc}")
        return False


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        ok, text = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {text}")
