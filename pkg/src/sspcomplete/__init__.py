"""Exact tools for sign symmetric P-type matrix completion problems on small digraphs."""

from __future__ import annotations

from .audit import AuditConfig, AuditReport, PatternStatus, audit_published_claims, check_singleton_claims, classify_pattern, render_report
from .classes import MatrixClass, MembershipVerdict, PartialMatrix, is_member, is_partial_member, verify_completion
from .completion import (
    CompletionConfig,
    CompletionResult,
    complete,
    complete_loopless,
    complete_zero,
    find_hard_partial,
    search_completion,
)
from .digraphs import CanonicalForm, Pattern, canonical_form, enumerate_patterns, pattern_of, structural_props
from .exact import ExactMatrix, det, det_cofactor, minor_profile, principal_minor
from .symbolic import MultiPoly, NoCompletionCertificate, lift, prove_noncompletable, prove_noncompletable_by_zero_det, sym_det

__all__ = [
    "AuditConfig",
    "AuditReport",
    "CanonicalForm",
    "CompletionConfig",
    "CompletionResult",
    "ExactMatrix",
    "MatrixClass",
    "MembershipVerdict",
    "MultiPoly",
    "NoCompletionCertificate",
    "PartialMatrix",
    "Pattern",
    "PatternStatus",
    "audit_published_claims",
    "canonical_form",
    "check_singleton_claims",
    "classify_pattern",
    "complete",
    "complete_loopless",
    "complete_zero",
    "det",
    "det_cofactor",
    "enumerate_patterns",
    "find_hard_partial",
    "is_member",
    "is_partial_member",
    "lift",
    "minor_profile",
    "pattern_of",
    "principal_minor",
    "prove_noncompletable",
    "prove_noncompletable_by_zero_det",
    "render_report",
    "search_completion",
    "structural_props",
    "sym_det",
    "verify_completion",
]
