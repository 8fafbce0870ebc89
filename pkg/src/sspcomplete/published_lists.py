"""Published classification lists for orders 1..4, as index ranges per (p, q).

Indices follow an external catalogue numbering that is not reproduced here;
only the cardinalities of these lists are compared against enumeration.
``ALL`` stands for the whole (p, q) bucket.
"""

from __future__ import annotations

ALL = "all"

# has a completion
YES = {
    1: {0: ALL},
    2: {0: ALL, 1: ALL, 2: ALL},
    3: {0: ALL, 1: ALL, 6: ALL, 2: [(2, 4)], 3: [(3, 3)]},
    4: {
        0: ALL,
        1: ALL,
        12: ALL,
        2: [(2, 5)],
        3: [(4, 11), (13, 13)],
        4: [(16, 19), (21, 23), (25, 27)],
        5: [(29, 29), (31, 31), (33, 34), (36, 37)],
        6: [(46, 46)],
    },
}

# no completion: incomplete with a 2-cycle
NO_TWO_CYCLE = {
    3: {2: [(1, 1)], 3: [(1, 1), (4, 4)], 4: ALL, 5: ALL},
    4: {
        2: [(1, 1)],
        3: [(1, 3)],
        4: [(1, 15)],
        5: [(1, 28)],
        6: [(1, 44)],
        7: ALL,
        8: ALL,
        9: ALL,
        10: ALL,
        11: ALL,
    },
}

# no completion: asymmetric, inherited from the sign symmetric P case
NO_FROM_SSP = {
    3: {3: [(2, 2)]},
    4: {3: [(12, 12)], 4: [(20, 20), (24, 24)], 5: [(30, 30), (32, 32), (35, 35), (38, 38)], 6: [(45, 45), (47, 48)]},
}


def expand(ranges, bucket: int) -> set[int]:
    if ranges == ALL:
        return set(range(1, bucket + 1))
    out: set[int] = set()
    for lo, hi in ranges:
        out.update(range(lo, hi + 1))
    return out


def indices(table: dict, p: int, q: int, bucket: int) -> set[int]:
    ranges = table.get(p, {}).get(q)
    return set() if ranges is None else expand(ranges, bucket)


def claim_counts(p: int, q: int, bucket: int) -> dict:
    """Counts read off the lists, plus whether they partition 1..bucket."""
    yes = indices(YES, p, q, bucket)
    no2 = indices(NO_TWO_CYCLE, p, q, bucket)
    nop = indices(NO_FROM_SSP, p, q, bucket)
    union = yes | no2 | nop
    disjoint = len(yes) + len(no2) + len(nop) == len(union)
    return {
        "yes": len(yes),
        "no": len(no2) + len(nop),
        "no_two_cycle": len(no2),
        "no_from_ssp": len(nop),
        "partition": disjoint and union == set(range(1, bucket + 1)),
    }
