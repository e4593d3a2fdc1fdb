"""BiMi Sheet data model: sections, label sets, validation, identity, comparison.

A label field is in exactly one of three states: it carries one or more term
ids, it is explicitly declared not applicable (with a reason), or it was left
unspecified. The distinction between "not applicable" and "unspecified"
matters for auditing and must survive round-trips.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, fields

from . import vocab as vocab_mod
from .vocab import CLOSED_VOCAB_IDS, TermCheck, Vocabulary, check_term, normalize_term

NA_REASONS = ("task-independent", "dataset-independent", "model-independent")

# Which label field may carry which not-applicable reason.
NA_REASON_FOR_PATH = {
    "method.ml_tasks": "task-independent",
    "method.dataset_types": "dataset-independent",
    "pipeline.compatible_models": "model-independent",
}


class _Unspecified:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "UNSPECIFIED"


UNSPECIFIED = _Unspecified()


@dataclass(frozen=True)
class NotApplicable:
    reason: str

    def __post_init__(self):
        if self.reason not in NA_REASONS:
            raise ValueError(f"unknown not-applicable reason: {self.reason!r}")


@dataclass(frozen=True)
class LabelSet:
    vocabulary: str
    values: tuple[str, ...] | NotApplicable | _Unspecified = UNSPECIFIED

    def __post_init__(self):
        if isinstance(self.values, list):
            object.__setattr__(self, "values", tuple(self.values))

    @property
    def is_unspecified(self) -> bool:
        return self.values is UNSPECIFIED

    @property
    def is_not_applicable(self) -> bool:
        return isinstance(self.values, NotApplicable)

    def terms(self) -> tuple[str, ...]:
        if isinstance(self.values, tuple):
            return self.values
        return ()


def labels(vocabulary: str, *values: str) -> LabelSet:
    return LabelSet(vocabulary, tuple(values))


def not_applicable(vocabulary: str, reason: str) -> LabelSet:
    return LabelSet(vocabulary, NotApplicable(reason))


def unspecified(vocabulary: str) -> LabelSet:
    return LabelSet(vocabulary, UNSPECIFIED)


@dataclass(frozen=True)
class Metadata:
    name: str
    authors: tuple[str, ...]
    version: str
    license: str
    proposed_in: str = ""

    def __post_init__(self):
        if isinstance(self.authors, list):
            object.__setattr__(self, "authors", tuple(self.authors))


@dataclass(frozen=True)
class MethodSection:
    method_types: LabelSet
    ml_tasks: LabelSet
    dataset_types: LabelSet
    description: str = ""


@dataclass(frozen=True)
class PipelineSection:
    locations: LabelSet
    compatible_models: LabelSet
    description: str = ""


@dataclass(frozen=True)
class FairnessSection:
    compositions: LabelSet
    guarantee: LabelSet
    fairness_types: LabelSet
    fairness_definitions: LabelSet
    description: str = ""


@dataclass(frozen=True)
class ImplementationSection:
    language: LabelSet
    packages: LabelSet
    description: str = ""


@dataclass(frozen=True)
class UseCaseSection:
    datasets: LabelSet
    description: str = ""


@dataclass(frozen=True)
class Sheet:
    metadata: Metadata
    method: MethodSection
    pipeline: PipelineSection
    fairness: FairnessSection
    implementation: ImplementationSection
    use_cases: UseCaseSection


def empty_method() -> MethodSection:
    return MethodSection(
        unspecified("method-type"), unspecified("ml-task"), unspecified("dataset-type")
    )


def empty_pipeline() -> PipelineSection:
    return PipelineSection(unspecified("pipeline-location"), unspecified("model"))


def empty_fairness() -> FairnessSection:
    return FairnessSection(
        unspecified("composition"),
        unspecified("guarantee"),
        unspecified("fairness-type"),
        unspecified("fairness-definition"),
    )


def empty_implementation() -> ImplementationSection:
    return ImplementationSection(unspecified("language"), unspecified("package"))


def empty_use_cases() -> UseCaseSection:
    return UseCaseSection(unspecified("use-case"))


# (path, vocabulary id, single-valued?) for every label field, in validation
# and comparison order.
LABEL_FIELDS: tuple[tuple[str, str, bool], ...] = (
    ("method.method_types", "method-type", False),
    ("method.ml_tasks", "ml-task", False),
    ("method.dataset_types", "dataset-type", False),
    ("pipeline.locations", "pipeline-location", False),
    ("pipeline.compatible_models", "model", False),
    ("fairness.compositions", "composition", False),
    ("fairness.guarantee", "guarantee", True),
    ("fairness.fairness_types", "fairness-type", False),
    ("fairness.fairness_definitions", "fairness-definition", False),
    ("implementation.language", "language", True),
    ("implementation.packages", "package", False),
    ("use_cases.datasets", "use-case", False),
)

FREE_TEXT_FIELDS = (
    "method.description",
    "pipeline.description",
    "fairness.description",
    "implementation.description",
    "use_cases.description",
)


def get_field(sheet: Sheet, path: str):
    obj = sheet
    for part in path.split("."):
        obj = getattr(obj, part)
    return obj


@dataclass(frozen=True)
class Violation:
    code: str
    path: str
    message: str

    @property
    def is_error(self) -> bool:
        return self.code.startswith("E_")


class InvalidMetadataError(Exception):
    pass


class ComparisonError(Exception):
    pass


def validate(sheet: Sheet, vocabs: dict[str, Vocabulary]) -> list[Violation]:
    """Structural and semantic validation. Errors block storage, warnings do not."""
    missing = set(vocab_mod.VOCAB_IDS) - set(vocabs)
    if missing:
        raise ValueError(f"vocabulary map is missing built-ins: {sorted(missing)}")

    out: list[Violation] = []
    md = sheet.metadata
    if not md.name:
        out.append(Violation("E_META", "metadata.name", "name must be non-empty"))
    if not md.authors or not all(a.strip() for a in md.authors):
        out.append(Violation("E_META", "metadata.authors", "at least one non-empty author is required"))
    if not md.version:
        out.append(Violation("E_META", "metadata.version", "version must be non-empty"))
    elif re.search(r"\s", md.version):
        out.append(Violation("E_META", "metadata.version", "version must not contain whitespace"))
    if not md.license:
        out.append(Violation("E_META", "metadata.license", "license must be non-empty"))

    locations = get_field(sheet, "pipeline.locations").terms()

    for path, vocab_id, single in LABEL_FIELDS:
        ls: LabelSet = get_field(sheet, path)
        if ls.vocabulary != vocab_id:
            out.append(
                Violation("E_VOCAB", path, f"label set bound to {ls.vocabulary!r}, expected {vocab_id!r}")
            )
            continue
        voc = vocabs[vocab_id]
        if ls.is_unspecified:
            out.append(Violation("W_UNSPECIFIED", path, "field left unspecified"))
            continue
        if ls.is_not_applicable:
            reason = ls.values.reason
            expected = NA_REASON_FOR_PATH.get(path)
            if expected is None or reason != expected:
                out.append(
                    Violation("E_NA_UNJUSTIFIED", path, f"not-applicable({reason}) is not permitted here")
                )
            elif path == "method.ml_tasks" and "pre-processing" not in locations:
                out.append(
                    Violation(
                        "E_NA_UNJUSTIFIED",
                        path,
                        "task-independent requires a pre-processing pipeline location",
                    )
                )
            elif path == "method.dataset_types" and "post-processing" not in locations:
                out.append(
                    Violation(
                        "E_NA_UNJUSTIFIED",
                        path,
                        "dataset-independent requires a post-processing pipeline location",
                    )
                )
            continue
        terms = ls.terms()
        if not terms:
            out.append(Violation("E_CARD", path, "value list must be non-empty"))
            continue
        if len(set(terms)) != len(terms):
            out.append(Violation("E_CARD", path, "duplicate values"))
        if single and len(terms) > 1:
            out.append(Violation("E_CARD", path, "at most one value is allowed"))
        for term in terms:
            status = check_term(voc, term)
            if status is TermCheck.REJECTED:
                out.append(Violation("E_VOCAB", path, f"{term!r} is not a valid {vocab_id} term"))
            elif status is TermCheck.NOVEL_ALLOWED:
                out.append(Violation("W_NOVEL_TERM", path, f"{term!r} is not a seeded {vocab_id} term"))

    for path in FREE_TEXT_FIELDS:
        if not get_field(sheet, path).strip():
            out.append(Violation("W_UNSPECIFIED", path, "description is empty"))

    order = {p: i for i, (p, _, _) in enumerate(LABEL_FIELDS)}
    for i, p in enumerate(FREE_TEXT_FIELDS):
        order[p] = len(order) + i
    meta_paths = ["metadata.name", "metadata.authors", "metadata.version", "metadata.license"]
    full_order = {p: i for i, p in enumerate(meta_paths)}
    for p, i in order.items():
        full_order[p] = len(meta_paths) + i
    out.sort(key=lambda v: full_order.get(v.path, 999))
    return out


def is_valid(sheet: Sheet, vocabs: dict[str, Vocabulary]) -> bool:
    return not any(v.is_error for v in validate(sheet, vocabs))


def _slug(text: str) -> str:
    slug = re.sub(r"[^a-z0-9]+", "-", text.casefold()).strip("-")
    return slug


def identity(sheet: Sheet) -> str:
    """Stable logical key: slug(name) @ version # slug(authors)."""
    md = sheet.metadata
    if not md.name or not md.version or not md.authors or not all(md.authors):
        raise InvalidMetadataError("identity requires non-empty name, version, and authors")
    return f"{_slug(md.name)}@{md.version}#{_slug(' '.join(md.authors))}"


# Display names for comparison rows, in row order.
COMPARE_FACETS: tuple[tuple[str, str], ...] = (
    ("method-type", "method.method_types"),
    ("ml-task", "method.ml_tasks"),
    ("dataset-type", "method.dataset_types"),
    ("pipeline-location", "pipeline.locations"),
    ("compatible-model", "pipeline.compatible_models"),
    ("composition", "fairness.compositions"),
    ("guarantee", "fairness.guarantee"),
    ("fairness-type", "fairness.fairness_types"),
    ("fairness-definition", "fairness.fairness_definitions"),
    ("language", "implementation.language"),
    ("package", "implementation.packages"),
    ("use-case", "use_cases.datasets"),
)

COMPARE_METADATA: tuple[tuple[str, str], ...] = (
    ("name", "metadata.name"),
    ("authors", "metadata.authors"),
    ("version", "metadata.version"),
    ("license", "metadata.license"),
    ("proposed-in", "metadata.proposed_in"),
)


@dataclass(frozen=True)
class ComparisonRow:
    facet: str
    cells: tuple[str, ...]
    differs: bool


@dataclass(frozen=True)
class ComparisonMatrix:
    sheets: tuple[str, ...]  # sheet ids
    rows: tuple[ComparisonRow, ...]


def _render_cell(value) -> str:
    if isinstance(value, LabelSet):
        if value.is_unspecified:
            return "—"
        if value.is_not_applicable:
            return "n/a"
        return ", ".join(sorted(value.terms()))
    if isinstance(value, tuple):
        return ", ".join(value)
    return value if value else "—"


def _labelset_to_json(ls: LabelSet):
    if ls.is_unspecified:
        return None
    if ls.is_not_applicable:
        return {"not_applicable": ls.values.reason}
    return list(ls.terms())


def sheet_to_dict(sheet: Sheet) -> dict:
    """JSON-ready projection of a sheet."""
    md = sheet.metadata
    out: dict = {
        "metadata": {
            "name": md.name,
            "authors": list(md.authors),
            "version": md.version,
            "license": md.license,
            "proposed_in": md.proposed_in,
        }
    }
    for section in ("method", "pipeline", "fairness", "implementation", "use_cases"):
        obj = getattr(sheet, section)
        block = {}
        for f in fields(obj):
            value = getattr(obj, f.name)
            block[f.name] = _labelset_to_json(value) if isinstance(value, LabelSet) else value
        out[section] = block
    return out


def compare(sheets: list[Sheet], vocabs: dict[str, Vocabulary]) -> ComparisonMatrix:
    if len(sheets) < 2:
        raise ComparisonError("comparison needs at least two sheets")
    for sheet in sheets:
        bad = [v for v in validate(sheet, vocabs) if v.is_error]
        if bad:
            raise ComparisonError(
                f"sheet {sheet.metadata.name!r} has error-level violations: {bad[0].code} at {bad[0].path}"
            )
    rows = []
    for facet, path in COMPARE_FACETS + COMPARE_METADATA:
        cells = tuple(_render_cell(get_field(s, path)) for s in sheets)
        rows.append(ComparisonRow(facet, cells, len(set(cells)) > 1))
    return ComparisonMatrix(tuple(identity(s) for s in sheets), tuple(rows))
