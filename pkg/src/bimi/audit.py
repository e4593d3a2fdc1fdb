"""Documentation-completeness auditing over eight axes.

Each axis maps to one or more sheet fields. An axis is present when any of
its source fields carries labels or non-empty free text, not-applicable when
all its label fields carry the explicit n/a sentinel, and missing otherwise.
The score is the exact fraction of applicable axes that are present.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .model import LabelSet, Sheet, get_field


class Status(Enum):
    PRESENT = "present"
    MISSING = "missing"
    NOT_APPLICABLE = "not-applicable"


GLYPHS = {Status.PRESENT: "P", Status.NOT_APPLICABLE: "–", Status.MISSING: "?"}
STATUS_BY_GLYPH = {g: s for s, g in GLYPHS.items()}

# axis id -> source field paths (label fields and/or free text)
AXES: tuple[tuple[str, tuple[str, ...]], ...] = (
    ("approach", ("method.method_types", "method.description")),
    ("compatible-models", ("pipeline.compatible_models",)),
    ("pipeline-location", ("pipeline.locations",)),
    ("compatible-datasets", ("method.dataset_types",)),
    ("composition", ("fairness.compositions",)),
    ("guarantee", ("fairness.guarantee",)),
    ("fairness-notion", ("fairness.fairness_types", "fairness.fairness_definitions")),
    (
        "implementation-constraints",
        ("implementation.language", "implementation.packages", "implementation.description"),
    ),
)

AXIS_IDS = tuple(a for a, _ in AXES)


@dataclass(frozen=True)
class AuditReport:
    statuses: dict[str, Status]
    score: Fraction | None  # None when no axis is applicable

    @property
    def applicable(self) -> bool:
        return self.score is not None


class AuditError(Exception):
    pass


def _axis_status(sheet: Sheet, paths: tuple[str, ...]) -> Status:
    label_fields = []
    present = False
    for path in paths:
        field = get_field(sheet, path)
        if isinstance(field, LabelSet):
            label_fields.append(field)
            if field.terms():
                present = True
        elif field.strip():
            present = True
    if present:
        return Status.PRESENT
    if label_fields and all(f.is_not_applicable for f in label_fields):
        return Status.NOT_APPLICABLE
    return Status.MISSING


def audit(sheet: Sheet) -> AuditReport:
    statuses = {axis: _axis_status(sheet, paths) for axis, paths in AXES}
    n_present = sum(1 for s in statuses.values() if s is Status.PRESENT)
    n_missing = sum(1 for s in statuses.values() if s is Status.MISSING)
    if n_present + n_missing == 0:
        return AuditReport(statuses, None)
    return AuditReport(statuses, Fraction(n_present, n_present + n_missing))


def gate(report: AuditReport, threshold: Fraction | float) -> bool:
    if not 0 <= threshold <= 1:
        raise AuditError(f"threshold must be in [0, 1], got {threshold}")
    if report.score is None:
        return True  # nothing applicable, nothing missing
    return report.score >= threshold


@dataclass(frozen=True)
class CoverageMatrix:
    names: tuple[str, ...]  # sheet names, row order
    cells: tuple[tuple[Status, ...], ...]  # rectangular, one row per sheet

    def to_text(self) -> str:
        width = max(len(n) for n in self.names)
        lines = [f"{'':<{width}}  " + "  ".join(AXIS_IDS)]
        for name, row in zip(self.names, self.cells):
            rendered = []
            for axis, status in zip(AXIS_IDS, row):
                rendered.append(f"{GLYPHS[status]:^{len(axis)}}")
            lines.append(f"{name:<{width}}  " + "  ".join(rendered))
        return "\n".join(lines) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["sheet", *AXIS_IDS])
        for name, row in zip(self.names, self.cells):
            writer.writerow([name, *(GLYPHS[s] for s in row)])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "CoverageMatrix":
        rows = list(csv.reader(io.StringIO(text)))
        if not rows or rows[0] != ["sheet", *AXIS_IDS]:
            raise AuditError("not a coverage matrix CSV")
        names = tuple(r[0] for r in rows[1:])
        cells = tuple(tuple(STATUS_BY_GLYPH[g] for g in r[1:]) for r in rows[1:])
        return cls(names, cells)


def coverage_matrix(corpus: list[Sheet]) -> CoverageMatrix:
    if not corpus:
        raise AuditError("coverage matrix needs a non-empty corpus")
    ordered = sorted(corpus, key=lambda s: s.metadata.name.casefold())
    names = tuple(s.metadata.name for s in ordered)
    cells = tuple(tuple(audit(s).statuses[a] for a in AXIS_IDS) for s in ordered)
    return CoverageMatrix(names, cells)
