"""Run the full audit and write JSON and text reports.

    python3 scripts/run_audit.py --out results/ --workers 1
"""

from __future__ import annotations

import argparse
import time
from pathlib import Path

from sspcomplete.audit import AuditConfig, audit_published_claims, render_report
from sspcomplete.cli import parse_orders
from sspcomplete.completion import CompletionConfig


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="results")
    ap.add_argument("--orders", type=parse_orders, default=(1, 2, 3, 4))
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--budget", type=int, default=CompletionConfig().budget)
    ap.add_argument("--samples", type=int, default=AuditConfig().samples)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    cfg = AuditConfig(
        orders=args.orders,
        samples=args.samples,
        completion=CompletionConfig(seed=args.seed, budget=args.budget),
        workers=args.workers,
    )
    start = time.perf_counter()
    report = audit_published_claims(cfg)
    elapsed = time.perf_counter() - start

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "audit.json").write_text(render_report(report, "json"))
    (out / "audit.txt").write_text(render_report(report, "text"))
    print(f"{len(report.rows)} patterns in {elapsed:.1f}s; {len(report.violations)} rule violations")
    for claim in report.singleton_claims + report.claims:
        print(f"  {claim.name}: {claim.status} [{claim.agreement}]")


if __name__ == "__main__":
    main()
