"""Command-line front end.

Exit codes: 0 success, 1 audit rule violation or failed re-check,
2 unreadable input, 3 violated precondition.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .audit import (
    AuditConfig,
    audit_published_claims,
    classify_pattern,
    parse_report,
    recheck_status,
    render_report,
)
from .classes import MatrixClass, is_member, is_partial_member, verify_completion
from .completion import CompletionConfig, PreconditionError, complete, complete_loopless, complete_zero, search_completion
from .digraphs import bucket_sizes, canonical_form, enumerate_patterns
from .formats import FormatError, parse_matrix, parse_partial, parse_partial_rows, parse_pattern, render_matrix, render_pattern
from .symbolic import SYM_DET_MAX_ORDER, NoCompletionCertificate, lift, sym_det

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_PARSE = 2
EXIT_PRECONDITION = 3


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _read(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}", EXIT_PARSE) from exc


def _parse(fn, path: str):
    try:
        return fn(_read(path))
    except (FormatError, ValueError) as exc:
        raise CliError(f"{path}: {exc}", EXIT_PARSE) from exc


def parse_orders(text: str) -> tuple[int, ...]:
    """``1..4`` or ``1,3`` or ``4``."""
    try:
        if ".." in text:
            lo, hi = text.split("..")
            orders = tuple(range(int(lo), int(hi) + 1))
        else:
            orders = tuple(int(t) for t in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad order range {text!r}") from exc
    if not orders or any(not 1 <= p <= 4 for p in orders):
        raise argparse.ArgumentTypeError("orders must lie in 1..4")
    return orders


def _class(text: str) -> MatrixClass:
    try:
        return MatrixClass.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _completion_cfg(args) -> CompletionConfig:
    return CompletionConfig(seed=args.seed, budget=args.budget)


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        sys.stdout.write(json.dumps(payload, indent=1, sort_keys=True) + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


# --- commands -------------------------------------------------------------------


def cmd_check_class(args) -> int:
    m = _parse(parse_matrix, args.file)
    v = is_member(m, args.cls)
    _emit(
        args,
        {"class": args.cls.value, "member": v.member, "witness": None if v.member else v.witness.describe()},
        v.describe(),
    )
    return EXIT_OK


def cmd_check_partial(args) -> int:
    p = _parse(parse_partial, args.file)
    v = is_partial_member(p, args.cls)
    text = f"{'member' if v.member else 'non-member'}, case ({v.case})"
    if not v.member:
        text += f": {v.witness.describe()}"
    _emit(
        args,
        {"class": args.cls.value, "member": v.member, "case": v.case, "witness": None if v.member else v.witness.describe()},
        text,
    )
    return EXIT_OK


def cmd_complete(args) -> int:
    p = _parse(parse_partial, args.file)
    cfg = _completion_cfg(args)
    try:
        if args.strategy == "zero":
            res = complete_zero(p, args.cls)
        elif args.strategy == "loopless":
            res = complete_loopless(p, args.cls, cfg)
        elif args.strategy == "search":
            res = search_completion(p, args.cls, cfg)
        else:
            res = complete(p, args.cls, cfg)
    except PreconditionError as exc:
        raise CliError(str(exc), EXIT_PRECONDITION) from exc
    lines = [f"{res.outcome} (strategy {res.strategy}, {res.evaluations_used} evaluations)"]
    if res.found:
        lines.append(render_matrix(res.matrix).rstrip("\n"))
    _emit(
        args,
        {
            "outcome": res.outcome,
            "strategy": res.strategy,
            "evaluations": res.evaluations_used,
            "matrix": None if res.matrix is None else str(res.matrix),
        },
        "\n".join(lines),
    )
    return EXIT_OK


def cmd_sym_det(args) -> int:
    p = _parse(parse_partial, args.file)
    if p.n > SYM_DET_MAX_ORDER:
        raise CliError(f"symbolic determinants are limited to order {SYM_DET_MAX_ORDER}", EXIT_PRECONDITION)
    poly = sym_det(lift(p))
    _emit(args, {"polynomial": str(poly)}, str(poly))
    return EXIT_OK


def cmd_enumerate(args) -> int:
    patterns = enumerate_patterns(args.order, args.loops)
    sizes = bucket_sizes(patterns)
    lines = [f"order {args.order}: {len(patterns)} classes"]
    for q, size in enumerate(sizes):
        if not size:
            continue
        lines.append(f"q={q}: {size} classes")
        lines += [f"  {canonical_form(g)}  {g}" for g in patterns if g.q == q]
    payload = {
        "order": args.order,
        "loops": args.loops,
        "total": len(patterns),
        "buckets": sizes,
        "patterns": [{"code": str(canonical_form(g)), "q": g.q, "pattern": render_pattern(g)} for g in patterns],
    }
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_classify(args) -> int:
    g = _parse(parse_pattern, args.pattern)
    status = classify_pattern(g, args.cls, _completion_cfg(args), args.samples)
    lines = [f"{g}", status.describe()]
    if status.certificate is not None:
        for s, poly, sign in status.certificate.minors:
            lines.append(f"  minor {s}: {poly}  [{sign}]")
    if status.hard_partial is not None:
        lines.append("hard partial:")
        lines.append(str(status.hard_partial))
    _emit(args, status.to_dict(), "\n".join(lines))
    return EXIT_OK


def cmd_audit(args) -> int:
    cfg = AuditConfig(
        orders=args.orders,
        target=args.cls,
        samples=args.samples,
        compare_samples=args.compare_samples,
        completion=_completion_cfg(args),
        workers=args.workers,
    )
    report = audit_published_claims(cfg)
    fmt = args.format or ("json" if args.out else "text")
    doc = render_report(report, fmt)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(doc)
        if fmt == "json":
            sys.stdout.write(render_report(report, "text"))
    else:
        sys.stdout.write(doc)
    return EXIT_VIOLATION if report.violations else EXIT_OK


def _claim_checks(claim, target: MatrixClass) -> list[tuple[str, bool]]:
    ev = claim.evidence
    out = []
    if "certificate" in ev:
        cert = NoCompletionCertificate.from_dict(ev["certificate"])
        out.append((f"{claim.name}: {cert.kind} certificate re-derives", cert.recheck()))
    if "completion" in ev:
        p = parse_partial_rows(ev["partial"])
        m = parse_partial_rows(ev["completion"]).to_matrix()
        out.append((f"{claim.name}: completion verifies", bool(verify_completion(p, m, target))))
    return out


def cmd_verify_certificate(args) -> int:
    try:
        report = parse_report(_read(args.report))
    except (ValueError, KeyError, TypeError) as exc:
        raise CliError(f"{args.report}: {exc}", EXIT_PARSE) from exc
    rows = report.rows
    if args.row is not None:
        rows = tuple(r for r in rows if r.row == args.row)
        if not rows:
            raise CliError(f"report has no row {args.row}", EXIT_PRECONDITION)
    checks: list[tuple[str, bool]] = []
    for row in rows:
        for cls, status in sorted(row.statuses.items()):
            for desc, ok in recheck_status(row.pattern, status):
                checks.append((f"row {row.row} {cls}: {desc}", ok))
    if args.row is None:
        for claim in report.singleton_claims:
            checks += _claim_checks(claim, report.config.target)
    failed = [d for d, ok in checks if not ok]
    lines = [f"{'ok  ' if ok else 'FAIL'} {d}" for d, ok in checks]
    lines.append(f"{len(checks) - len(failed)}/{len(checks)} checks passed")
    _emit(args, {"checks": [{"item": d, "ok": ok} for d, ok in checks], "failed": len(failed)}, "\n".join(lines))
    return EXIT_VIOLATION if failed else EXIT_OK


# --- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sspcomplete", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, fn, help_: str, cls_default: Optional[str] = "ssp01plus", search: bool = False):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=fn)
        sp.add_argument("--format", choices=("text", "json"), default="text")
        if cls_default is not None:
            sp.add_argument("--class", dest="cls", type=_class, default=_class(cls_default))
        if search:
            sp.add_argument("--seed", type=int, default=0)
            sp.add_argument("--budget", type=int, default=CompletionConfig().budget)
        return sp

    sp = add("check-class", cmd_check_class, "membership of a fully specified matrix")
    sp.add_argument("file")
    sp = add("check-partial", cmd_check_partial, "partial membership and structural case")
    sp.add_argument("file")
    sp = add("complete", cmd_complete, "complete a partial matrix", search=True)
    sp.add_argument("file")
    sp.add_argument("--strategy", choices=("auto", "zero", "loopless", "search"), default="auto")
    sp = add("sym-det", cmd_sym_det, "symbolic determinant of a partial matrix", cls_default=None)
    sp.add_argument("file")
    sp = add("enumerate", cmd_enumerate, "isomorphism classes of patterns", cls_default=None)
    sp.add_argument("--order", type=int, required=True, choices=(1, 2, 3, 4))
    sp.add_argument("--loops", choices=("all", "none", "any"), default="all")
    sp = add("classify", cmd_classify, "classify one pattern", search=True)
    sp.add_argument("--pattern", required=True)
    sp.add_argument("--samples", type=int, default=AuditConfig().samples)
    sp = add("audit", cmd_audit, "classify every small pattern and compare", search=True)
    sp.set_defaults(format=None)  # json when writing to --out, text otherwise
    sp.add_argument("--orders", type=parse_orders, default=(1, 2, 3, 4))
    sp.add_argument("--out")
    sp.add_argument("--samples", type=int, default=AuditConfig().samples)
    sp.add_argument("--compare-samples", type=int, default=AuditConfig().compare_samples)
    sp.add_argument("--workers", type=int, default=1)
    sp = add("verify-certificate", cmd_verify_certificate, "re-check certificates in a JSON report", cls_default=None)
    sp.add_argument("report")
    sp.add_argument("--row", type=int)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    try:
        if getattr(args, "budget", 1) < 1:
            raise CliError("--budget must be at least 1", EXIT_PRECONDITION)
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
