"""Deterministic rendering of a sheet to plain text or a standalone HTML page.

Section display order follows the narrative order: Method, Pipeline,
Fairness, Implementation, Use cases, Metadata. Unspecified fields render as
an em dash, not-applicable fields as "n/a (reason)".
"""

from __future__ import annotations

import html
from dataclasses import dataclass

from .audit import audit
from .model import LabelSet, Sheet


@dataclass(frozen=True)
class RenderOptions:
    format: str = "text"  # "text" | "html"
    include_audit_badge: bool = False


# (heading, [(label, accessor path or callable)])
_SECTIONS = (
    ("Method", (("method-type", "method.method_types"), ("ml-task", "method.ml_tasks"),
                ("dataset-type", "method.dataset_types")), "method.description"),
    ("Pipeline", (("location", "pipeline.locations"), ("model", "pipeline.compatible_models")),
     "pipeline.description"),
    ("Fairness", (("composition", "fairness.compositions"), ("guarantee", "fairness.guarantee"),
                  ("fairness-type", "fairness.fairness_types"),
                  ("fairness-definition", "fairness.fairness_definitions")), "fairness.description"),
    ("Implementation", (("language", "implementation.language"),
                        ("package", "implementation.packages")), "implementation.description"),
    ("Use cases", (("dataset", "use_cases.datasets"),), "use_cases.description"),
)


def _get(sheet: Sheet, path: str):
    obj = sheet
    for part in path.split("."):
        obj = getattr(obj, part)
    return obj


def _label_tokens(ls: LabelSet) -> list[str] | str:
    if ls.is_unspecified:
        return "—"
    if ls.is_not_applicable:
        return f"n/a ({ls.values.reason})"
    return list(ls.terms())


def _render_text(sheet: Sheet, opts: RenderOptions) -> str:
    md = sheet.metadata
    out = [md.name or "—", "=" * max(len(md.name), 1), ""]
    if opts.include_audit_badge:
        report = audit(sheet)
        badge = "n/a" if report.score is None else f"{report.score.numerator}/{report.score.denominator}"
        out += [f"completeness: {badge}", ""]
    for heading, labels, text_path in _SECTIONS:
        out.append(heading)
        out.append("-" * len(heading))
        for label, path in labels:
            tokens = _label_tokens(_get(sheet, path))
            if isinstance(tokens, str):
                out.append(f"  {label}: {tokens}")
            else:
                out.append(f"  {label}: " + " ".join(f"[{t}]" for t in tokens))
        text = _get(sheet, text_path)
        if text.strip():
            out.append("")
            out += ["  " + line for line in text.split("\n")]
        out.append("")
    out.append("Metadata")
    out.append("-" * len("Metadata"))
    out.append(f"  name: {md.name or '—'}")
    out.append(f"  authors: {', '.join(md.authors) or '—'}")
    out.append(f"  version: {md.version or '—'}")
    out.append(f"  license: {md.license or '—'}")
    out.append(f"  proposed-in: {md.proposed_in or '—'}")
    return "\n".join(out) + "\n"


def _render_html(sheet: Sheet, opts: RenderOptions) -> str:
    esc = html.escape
    md = sheet.metadata

    def chips(ls: LabelSet) -> str:
        tokens = _label_tokens(ls)
        if isinstance(tokens, str):
            return f'<span class="sentinel">{esc(tokens)}</span>'
        return "".join(f'<span class="chip">{esc(t)}</span>' for t in tokens)

    parts = [
        "<!DOCTYPE html>",
        '<html lang="en"><head><meta charset="utf-8">',
        f"<title>{esc(md.name or 'BiMi Sheet')}</title>",
        "<style>"
        "body{font-family:sans-serif;max-width:52rem;margin:2rem auto;padding:0 1rem}"
        ".chip{display:inline-block;background:#e3ecf7;border-radius:1rem;"
        "padding:.1rem .6rem;margin:.1rem .2rem;font-size:.85rem}"
        ".sentinel{color:#888}.label{font-weight:600;margin-right:.4rem}"
        "section{border:1px solid #ddd;border-radius:.5rem;padding:.5rem 1rem;margin:1rem 0}"
        ".badge{background:#2c6e49;color:#fff;border-radius:.4rem;padding:.15rem .5rem}"
        "pre{white-space:pre-wrap;background:#fafafa;padding:.5rem}"
        "</style></head><body>",
        f"<h1>{esc(md.name or '—')}</h1>",
    ]
    if opts.include_audit_badge:
        report = audit(sheet)
        badge = "n/a" if report.score is None else f"{report.score.numerator}/{report.score.denominator}"
        parts.append(f'<p><span class="badge">completeness {esc(badge)}</span></p>')
    for heading, labels, text_path in _SECTIONS:
        parts.append(f"<section><h2>{esc(heading)}</h2>")
        for label, path in labels:
            parts.append(
                f'<div><span class="label">{esc(label)}</span>{chips(_get(sheet, path))}</div>'
            )
        text = _get(sheet, text_path)
        if text.strip():
            parts.append(f"<pre>{esc(text)}</pre>")
        parts.append("</section>")
    rows = (
        ("name", md.name or "—"),
        ("authors", ", ".join(md.authors) or "—"),
        ("version", md.version or "—"),
        ("license", md.license or "—"),
        ("proposed-in", md.proposed_in or "—"),
    )
    parts.append("<section><h2>Metadata</h2><dl>")
    for label, value in rows:
        parts.append(f"<dt>{esc(label)}</dt><dd>{esc(value)}</dd>")
    parts.append("</dl></section>")
    parts.append("</body></html>")
    return "\n".join(parts) + "\n"


def render(sheet: Sheet, opts: RenderOptions | None = None) -> str:
    opts = opts or RenderOptions()
    if opts.format == "text":
        return _render_text(sheet, opts)
    if opts.format == "html":
        return _render_html(sheet, opts)
    raise ValueError(f"unknown render format: {opts.format!r}")
