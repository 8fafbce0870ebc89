"""Compare enumerated bucket sizes with the Burnside count and the published lists."""

from __future__ import annotations

from sspcomplete import published_lists
from sspcomplete.digraphs import bucket_sizes, enumerate_patterns, orbit_counts_by_arcs


def main() -> None:
    for p in (1, 2, 3, 4):
        pats = enumerate_patterns(p)
        sizes = bucket_sizes(pats)
        burnside = orbit_counts_by_arcs(p)
        print(f"order {p}: {len(pats)} classes, burnside {'agrees' if burnside == sizes else 'DISAGREES'}")
        for q, size in enumerate(sizes):
            counts = published_lists.claim_counts(p, q, size)
            flag = "ok" if counts["partition"] else "lists do not partition the bucket"
            print(f"  q={q:2d} bucket={size:2d} published yes={counts['yes']:2d} no={counts['no']:2d}  {flag}")


if __name__ == "__main__":
    main()
