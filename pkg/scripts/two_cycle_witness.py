"""Explore the order-3 two-cycle witness: its determinant, a completion, and the forcing step.

Prints the symbolic determinant, a completion found by search with its full
minor profile, and how the sign symmetric assignment escapes the forcing
argument (x13, x31 share one sign, x23, x32 the other).
"""

from __future__ import annotations

from sspcomplete.audit import TWO_CYCLE_ORDER3, TWO_CYCLE_ORDER4, two_cycle_witness
from sspcomplete.classes import MatrixClass
from sspcomplete.completion import CompletionConfig, search_completion
from sspcomplete.exact import format_rational, minor_profile
from sspcomplete.symbolic import lift, sym_det


def show(p, c=MatrixClass.SSP01_PLUS, seed=0):
    print(p)
    print("det =", sym_det(lift(p)) if p.n <= 6 else "(order too large)")
    res = search_completion(p, c, CompletionConfig(seed=seed))
    print(f"{res.outcome} after {res.evaluations_used} evaluations")
    if res.found:
        print(res.matrix)
        prof = minor_profile(res.matrix)
        for k in range(1, p.n + 1):
            print(f"  order {k}:", ", ".join(format_rational(v) for v in prof.values(k)))
    print()


def main() -> None:
    for p in (TWO_CYCLE_ORDER3, TWO_CYCLE_ORDER4, two_cycle_witness(5)):
        show(p)


if __name__ == "__main__":
    main()
