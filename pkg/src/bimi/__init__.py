"""BiMi Sheets: machine-readable documentation for bias-mitigation methods.

Vocabularies, the sheet data model and validator, a canonical text format,
a faceted query language, a completeness auditor, a file-backed registry
with an HTTP service, renderers, and a CLI.
"""

from .audit import AuditReport, audit, coverage_matrix, gate
from .format import ParseError, diff, parse, serialize
from .model import (
    ComparisonMatrix,
    LabelSet,
    Metadata,
    Sheet,
    Violation,
    compare,
    identity,
    validate,
)
from .query import QueryError, eval_query, parse_query, search
from .render import RenderOptions, render
from .store import RegistryRecord, SheetStore
from .vocab import Term, Vocabulary, builtin_vocabularies, check_term, rank, subsumes

__all__ = [
    "AuditReport",
    "ComparisonMatrix",
    "LabelSet",
    "Metadata",
    "ParseError",
    "QueryError",
    "RegistryRecord",
    "RenderOptions",
    "Sheet",
    "SheetStore",
    "Term",
    "Violation",
    "Vocabulary",
    "audit",
    "builtin_vocabularies",
    "check_term",
    "compare",
    "coverage_matrix",
    "diff",
    "eval_query",
    "gate",
    "identity",
    "parse",
    "parse_query",
    "rank",
    "render",
    "search",
    "serialize",
    "subsumes",
    "validate",
]

__version__ = "1.0.0"
