"""Canonical line-oriented text format for BiMi Sheets.

A document is a sequence of `[section]` headers followed by `key: value`
lines. Multi-valued labels repeat the key, free text uses heredoc blocks
(`description: <<TEXT` ... `TEXT`), and explicit non-applicability is spelled
`key: !n/a(reason)`. Unknown sections and keys are rejected. The serializer
emits one canonical form: fixed section and key order, metadata last, LF line
endings, exactly one blank line between sections.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .model import (
    FREE_TEXT_FIELDS,
    LABEL_FIELDS,
    UNSPECIFIED,
    FairnessSection,
    ImplementationSection,
    LabelSet,
    Metadata,
    MethodSection,
    NotApplicable,
    PipelineSection,
    Sheet,
    UseCaseSection,
    get_field,
)
from .vocab import normalize_term


@dataclass(frozen=True)
class SourceSpan:
    line: int
    column: int
    length: int


class ParseError(Exception):
    def __init__(self, code: str, span: SourceSpan, message: str):
        super().__init__(f"{code} at {span.line}:{span.column}: {message}")
        self.code = code
        self.span = span
        self.message = message


SECTION_ORDER = ("method", "pipeline", "fairness", "implementation", "use-case", "metadata")

# key -> (kind, repeatable). kind: raw | label | text
SECTION_KEYS: dict[str, dict[str, tuple[str, bool]]] = {
    "metadata": {
        "name": ("raw", False),
        "author": ("raw", True),
        "version": ("raw", False),
        "license": ("raw", False),
        "proposed-in": ("raw", False),
    },
    "method": {
        "method-type": ("label", True),
        "ml-task": ("label", True),
        "dataset-type": ("label", True),
        "description": ("text", False),
    },
    "pipeline": {
        "location": ("label", True),
        "model": ("label", True),
        "description": ("text", False),
    },
    "fairness": {
        "composition": ("label", True),
        "guarantee": ("label", False),
        "fairness-type": ("label", True),
        "fairness-definition": ("label", True),
        "description": ("text", False),
    },
    "implementation": {
        "language": ("label", False),
        "package": ("label", True),
        "description": ("text", False),
    },
    "use-case": {
        "dataset": ("label", True),
        "description": ("text", False),
    },
}

# (section, key) -> sheet field path, for label keys.
LABEL_KEY_PATHS = {
    ("method", "method-type"): ("method.method_types", "method-type"),
    ("method", "ml-task"): ("method.ml_tasks", "ml-task"),
    ("method", "dataset-type"): ("method.dataset_types", "dataset-type"),
    ("pipeline", "location"): ("pipeline.locations", "pipeline-location"),
    ("pipeline", "model"): ("pipeline.compatible_models", "model"),
    ("fairness", "composition"): ("fairness.compositions", "composition"),
    ("fairness", "guarantee"): ("fairness.guarantee", "guarantee"),
    ("fairness", "fairness-type"): ("fairness.fairness_types", "fairness-type"),
    ("fairness", "fairness-definition"): ("fairness.fairness_definitions", "fairness-definition"),
    ("implementation", "language"): ("implementation.language", "language"),
    ("implementation", "package"): ("implementation.packages", "package"),
    ("use-case", "dataset"): ("use_cases.datasets", "use-case"),
}

_SECTION_RE = re.compile(r"^\[([a-z-]+)\]$")
_HEREDOC_RE = re.compile(r"^<<([A-Z]+)$")
_NA_RE = re.compile(r"^!n/a\(([a-z-]+)\)$")
_NA_REASONS = ("task-independent", "dataset-independent", "model-independent")


def parse(text: str | bytes) -> Sheet:
    """Parse a `.bimi` document; raises ParseError at the first failure."""
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(
                "E_ENCODING", SourceSpan(1, 1, 0), f"input is not valid UTF-8: {exc.reason}"
            ) from None
    if text.startswith("\ufeff"):
        raise ParseError("E_ENCODING", SourceSpan(1, 1, 1), "byte-order mark is not allowed")

    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()  # trailing newline

    sections: dict[str, dict[str, object]] = {}
    current: str | None = None
    i = 0
    while i < len(lines):
        line = lines[i]
        lineno = i + 1
        i += 1
        if line == "" or line.startswith("#"):
            continue
        m = _SECTION_RE.match(line)
        if line.startswith("["):
            if not m:
                raise ParseError("E_SYNTAX", SourceSpan(lineno, 1, len(line)), "malformed section header")
            name = m.group(1)
            if name not in SECTION_KEYS:
                raise ParseError(
                    "E_UNKNOWN_SECTION", SourceSpan(lineno, 2, len(name)), f"unknown section [{name}]"
                )
            if name in sections:
                raise ParseError(
                    "E_DUP_KEY", SourceSpan(lineno, 1, len(line)), f"section [{name}] appears twice"
                )
            sections[name] = {}
            current = name
            continue
        if current is None:
            raise ParseError(
                "E_SYNTAX", SourceSpan(lineno, 1, len(line)), "content before first section header"
            )
        colon = line.find(":")
        if colon <= 0:
            raise ParseError("E_SYNTAX", SourceSpan(lineno, 1, len(line)), "expected 'key: value'")
        key = line[:colon]
        keys = SECTION_KEYS[current]
        if key not in keys:
            raise ParseError(
                "E_UNKNOWN_KEY", SourceSpan(lineno, 1, len(key)), f"unknown key {key!r} in [{current}]"
            )
        if len(line) < colon + 2 or line[colon + 1] != " " or line[colon + 2 :] == "":
            raise ParseError(
                "E_SYNTAX", SourceSpan(lineno, colon + 1, len(line) - colon), "expected a value after ': '"
            )
        value = line[colon + 2 :]
        kind, repeatable = keys[key]
        bucket = sections[current]

        if kind == "text":
            hm = _HEREDOC_RE.match(value)
            if not hm:
                raise ParseError(
                    "E_SYNTAX",
                    SourceSpan(lineno, colon + 3, len(value)),
                    "free text must be a heredoc block (<<TAG)",
                )
            tag = hm.group(1)
            raw: list[str] = []
            while i < len(lines) and lines[i] != tag:
                raw.append(lines[i])
                i += 1
            if i >= len(lines):
                raise ParseError(
                    "E_HEREDOC_UNTERMINATED",
                    SourceSpan(lineno, 1, len(line)),
                    f"heredoc opened here is never terminated by {tag!r}",
                )
            i += 1  # consume terminator
            if key in bucket:
                raise ParseError(
                    "E_DUP_KEY", SourceSpan(lineno, 1, len(key)), f"duplicate key {key!r}"
                )
            bucket[key] = "\n".join(raw)
            continue

        nm = _NA_RE.match(value)
        if kind == "label" and value.startswith("!"):
            if not nm or nm.group(1) not in _NA_REASONS:
                raise ParseError(
                    "E_SYNTAX",
                    SourceSpan(lineno, colon + 3, len(value)),
                    "malformed not-applicable sentinel",
                )
            if key in bucket:
                raise ParseError(
                    "E_DUP_KEY",
                    SourceSpan(lineno, 1, len(key)),
                    f"{key!r} already has a value; not-applicable cannot be mixed with values",
                )
            bucket[key] = NotApplicable(nm.group(1))
            continue

        if kind == "label":
            value = normalize_term(value)
        existing = bucket.get(key)
        if isinstance(existing, NotApplicable):
            raise ParseError(
                "E_DUP_KEY",
                SourceSpan(lineno, 1, len(key)),
                f"{key!r} is declared not-applicable; values cannot be mixed in",
            )
        if not repeatable:
            if key in bucket:
                raise ParseError(
                    "E_DUP_KEY", SourceSpan(lineno, 1, len(key)), f"duplicate key {key!r}"
                )
            bucket[key] = [value] if kind == "label" else value
        else:
            values = bucket.setdefault(key, [])
            if value in values:
                raise ParseError(
                    "E_DUP_KEY", SourceSpan(lineno, 1, len(line)), f"duplicate value for {key!r}"
                )
            values.append(value)

    last = SourceSpan(len(lines) or 1, 1, 0)
    for name in SECTION_ORDER:
        if name not in sections:
            raise ParseError("E_SYNTAX", last, f"missing section [{name}]")

    def label(section: str, key: str) -> LabelSet:
        path, vocab_id = LABEL_KEY_PATHS[(section, key)]
        got = sections[section].get(key)
        if got is None:
            return LabelSet(vocab_id, UNSPECIFIED)
        if isinstance(got, NotApplicable):
            return LabelSet(vocab_id, got)
        return LabelSet(vocab_id, tuple(got))

    def text_of(section: str) -> str:
        return sections[section].get("description", "")

    meta = sections["metadata"]
    return Sheet(
        metadata=Metadata(
            name=meta.get("name", ""),
            authors=tuple(meta.get("author", [])),
            version=meta.get("version", ""),
            license=meta.get("license", ""),
            proposed_in=meta.get("proposed-in", ""),
        ),
        method=MethodSection(
            label("method", "method-type"),
            label("method", "ml-task"),
            label("method", "dataset-type"),
            text_of("method"),
        ),
        pipeline=PipelineSection(
            label("pipeline", "location"),
            label("pipeline", "model"),
            text_of("pipeline"),
        ),
        fairness=FairnessSection(
            label("fairness", "composition"),
            label("fairness", "guarantee"),
            label("fairness", "fairness-type"),
            label("fairness", "fairness-definition"),
            text_of("fairness"),
        ),
        implementation=ImplementationSection(
            label("implementation", "language"),
            label("implementation", "package"),
            text_of("implementation"),
        ),
        use_cases=UseCaseSection(
            label("use-case", "dataset"),
            text_of("use-case"),
        ),
    )


def _heredoc(key: str, text: str) -> list[str]:
    content = text.split("\n") if text else []
    tag = "TEXT"
    while tag in content:
        tag += "X"
    return [f"{key}: <<{tag}", *content, tag]


def _label_lines(key: str, ls: LabelSet) -> list[str]:
    if ls.is_unspecified:
        return []
    if ls.is_not_applicable:
        return [f"{key}: !n/a({ls.values.reason})"]
    return [f"{key}: {v}" for v in ls.terms()]


def serialize(sheet: Sheet) -> str:
    """Canonical serialization; equal sheets yield identical bytes."""
    blocks: list[list[str]] = []

    def section(header: str, lines: list[str]) -> None:
        blocks.append([f"[{header}]", *lines])

    m = sheet.method
    section(
        "method",
        _label_lines("method-type", m.method_types)
        + _label_lines("ml-task", m.ml_tasks)
        + _label_lines("dataset-type", m.dataset_types)
        + _heredoc("description", m.description),
    )
    p = sheet.pipeline
    section(
        "pipeline",
        _label_lines("location", p.locations)
        + _label_lines("model", p.compatible_models)
        + _heredoc("description", p.description),
    )
    f = sheet.fairness
    section(
        "fairness",
        _label_lines("composition", f.compositions)
        + _label_lines("guarantee", f.guarantee)
        + _label_lines("fairness-type", f.fairness_types)
        + _label_lines("fairness-definition", f.fairness_definitions)
        + _heredoc("description", f.description),
    )
    impl = sheet.implementation
    section(
        "implementation",
        _label_lines("language", impl.language)
        + _label_lines("package", impl.packages)
        + _heredoc("description", impl.description),
    )
    u = sheet.use_cases
    section(
        "use-case",
        _label_lines("dataset", u.datasets) + _heredoc("description", u.description),
    )
    md = sheet.metadata
    meta_lines = []
    if md.name:
        meta_lines.append(f"name: {md.name}")
    meta_lines += [f"author: {a}" for a in md.authors]
    if md.version:
        meta_lines.append(f"version: {md.version}")
    if md.license:
        meta_lines.append(f"license: {md.license}")
    if md.proposed_in:
        meta_lines.append(f"proposed-in: {md.proposed_in}")
    section("metadata", meta_lines)

    return "\n\n".join("\n".join(b) for b in blocks) + "\n"


@dataclass(frozen=True)
class FieldDiff:
    path: str
    left: str | None
    right: str | None
    kind: str  # added | removed | changed

    def mirrored(self) -> "FieldDiff":
        kind = {"added": "removed", "removed": "added", "changed": "changed"}[self.kind]
        return FieldDiff(self.path, self.right, self.left, kind)


_DIFF_PATHS = tuple(p for p, _, _ in LABEL_FIELDS) + FREE_TEXT_FIELDS + (
    "metadata.name",
    "metadata.authors",
    "metadata.version",
    "metadata.license",
    "metadata.proposed_in",
)


def _diff_value(value) -> tuple[str | None, frozenset | str | None]:
    """(display, comparison key); None means absent."""
    if isinstance(value, LabelSet):
        if value.is_unspecified:
            return None, None
        if value.is_not_applicable:
            s = f"n/a({value.values.reason})"
            return s, s
        return ", ".join(value.terms()), frozenset(value.terms())
    if isinstance(value, tuple):
        if not value:
            return None, None
        return ", ".join(value), frozenset(value)
    if value == "":
        return None, None
    return value, value


def diff(left: Sheet, right: Sheet) -> list[FieldDiff]:
    out = []
    for path in _DIFF_PATHS:
        ld, lk = _diff_value(get_field(left, path))
        rd, rk = _diff_value(get_field(right, path))
        if lk == rk:
            continue
        if ld is None:
            out.append(FieldDiff(path, None, rd, "added"))
        elif rd is None:
            out.append(FieldDiff(path, ld, None, "removed"))
        else:
            out.append(FieldDiff(path, ld, rd, "changed"))
    return out
