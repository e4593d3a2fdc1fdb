"""Command-line front door: authoring, linting, querying, auditing, serving.

Exit codes: 0 success, 1 validation or audit failure, 2 usage error,
3 I/O or service error.
"""

from __future__ import annotations

import json
import os
import sys
from fractions import Fraction
from pathlib import Path

import click

from . import format as fmt
from .audit import AuditError, audit, coverage_matrix, gate
from .model import ComparisonError, compare, sheet_to_dict, validate
from .query import QueryError, parse_query, search
from .render import RenderOptions, render as render_sheet
from .service import DEFAULT_ADDR, DEFAULT_STORE, ENV_ADDR, ENV_STORE, ENV_TOKEN
from .store import CorruptStoreError, StoreError
from .vocab import builtin_vocabularies

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_IO = 3


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        click.echo(f"error: cannot read {path}: {exc.strerror}", err=True)
        sys.exit(EXIT_IO)


def _parse_file(path: str) -> "fmt.Sheet":
    text = _read(path)
    try:
        return fmt.parse(text)
    except fmt.ParseError as exc:
        click.echo(f"{path}:{exc.span.line}:{exc.span.column}: {exc.code} {exc.message}", err=True)
        sys.exit(EXIT_FAIL)


def _corpus_paths(target: str) -> list[Path]:
    p = Path(target)
    if p.is_dir():
        files = sorted(p.glob("*.bimi"))
        if not files:
            click.echo(f"error: no .bimi files in {target}", err=True)
            sys.exit(EXIT_IO)
        return files
    if not p.exists():
        click.echo(f"error: no such file or directory: {target}", err=True)
        sys.exit(EXIT_IO)
    return [p]


TEMPLATE = """\
[method]
# method-type: reweighing
# ml-task: classification
# dataset-type: tabular
description: <<TEXT
TEXT

[pipeline]
# location: pre-processing
# model: logistic-regression
description: <<TEXT
TEXT

[fairness]
# composition: binary-attribute
# guarantee: no-fairness-guarantee
# fairness-type: group-fairness
# fairness-definition: demographic-parity
description: <<TEXT
TEXT

[implementation]
# language: python
# package: scikit-learn
description: <<TEXT
TEXT

[use-case]
# dataset: adult
description: <<TEXT
TEXT

[metadata]
name: {name}
author: CHANGEME
version: 0.1.0
license: CHANGEME
# proposed-in: CHANGEME
"""


@click.group()
def main():
    """BiMi Sheet toolchain."""


@main.command()
@click.argument("name")
def new(name):
    """Print a template sheet for NAME to stdout."""
    click.echo(TEMPLATE.format(name=name), nl=False)


@main.command()
@click.argument("file")
@click.option("--json", "as_json", is_flag=True, help="Machine-readable output.")
def lint(file, as_json):
    """Parse and validate FILE, printing violations with spans."""
    text = _read(file)
    try:
        sheet = fmt.parse(text)
    except fmt.ParseError as exc:
        if as_json:
            click.echo(json.dumps({
                "parse_error": {
                    "code": exc.code,
                    "line": exc.span.line,
                    "column": exc.span.column,
                    "message": exc.message,
                }
            }))
        else:
            click.echo(f"{file}:{exc.span.line}:{exc.span.column}: {exc.code} {exc.message}")
        sys.exit(EXIT_FAIL)
    violations = validate(sheet, builtin_vocabularies())
    if as_json:
        click.echo(json.dumps({
            "violations": [
                {"code": v.code, "path": v.path, "message": v.message} for v in violations
            ]
        }))
    else:
        for v in violations:
            click.echo(f"{file}: {v.path}: {v.code} {v.message}")
    sys.exit(EXIT_FAIL if any(v.is_error for v in violations) else EXIT_OK)


@main.command()
@click.argument("file")
@click.option("--format", "out_format", type=click.Choice(["text", "html"]), default="text")
@click.option("--badge", is_flag=True, help="Include the completeness badge.")
def render(file, out_format, badge):
    """Render FILE to one-page text or HTML on stdout."""
    sheet = _parse_file(file)
    click.echo(render_sheet(sheet, RenderOptions(out_format, badge)), nl=False)


@main.command()
@click.argument("left")
@click.argument("right")
@click.option("--json", "as_json", is_flag=True)
def diff(left, right, as_json):
    """Field-level diff between two sheet files."""
    a = _parse_file(left)
    b = _parse_file(right)
    diffs = fmt.diff(a, b)
    if as_json:
        click.echo(json.dumps([
            {"path": d.path, "kind": d.kind, "left": d.left, "right": d.right} for d in diffs
        ]))
    else:
        for d in diffs:
            click.echo(f"{d.kind} {d.path}: {d.left or '∅'} -> {d.right or '∅'}")


@main.command()
@click.option("--corpus", required=True, help="Directory of .bimi files.")
@click.option("--query", "query_text", required=True)
@click.option("--json", "as_json", is_flag=True)
def query(corpus, query_text, as_json):
    """Search a corpus directory with the boolean facet query language."""
    try:
        ast = parse_query(query_text)
    except QueryError as exc:
        raise click.UsageError(f"{exc.code}: {exc.message}")
    sheets = [_parse_file(str(p)) for p in _corpus_paths(corpus)]
    hits = search(ast, sheets, builtin_vocabularies())
    if as_json:
        click.echo(json.dumps([{"id": h.id, "score": h.score} for h in hits]))
    else:
        for h in hits:
            click.echo(f"{h.id}\t{h.score}")


@main.command(name="compare")
@click.argument("files", nargs=-1, required=True)
@click.option("--json", "as_json", is_flag=True)
def compare_cmd(files, as_json):
    """Side-by-side comparison of two or more sheet files."""
    sheets = [_parse_file(f) for f in files]
    try:
        matrix = compare(sheets, builtin_vocabularies())
    except ComparisonError as exc:
        raise click.UsageError(str(exc))
    if as_json:
        click.echo(json.dumps({
            "sheets": list(matrix.sheets),
            "rows": [
                {"facet": r.facet, "cells": list(r.cells), "differs": r.differs}
                for r in matrix.rows
            ],
        }))
        return
    width = max(len(r.facet) for r in matrix.rows)
    for r in matrix.rows:
        mark = "*" if r.differs else " "
        click.echo(f"{mark} {r.facet:<{width}}  " + " | ".join(r.cells))


@main.command(name="audit")
@click.argument("target")
@click.option("--threshold", type=float, default=None)
@click.option("--matrix", "show_matrix", is_flag=True, help="Print the coverage matrix.")
@click.option("--csv", "as_csv", is_flag=True, help="Matrix as CSV instead of a table.")
@click.option("--json", "as_json", is_flag=True)
def audit_cmd(target, threshold, show_matrix, as_csv, as_json):
    """Audit one sheet file or a directory of sheets for completeness."""
    if threshold is not None and not 0 <= threshold <= 1:
        raise click.UsageError("--threshold must be within [0, 1]")
    sheets = [_parse_file(str(p)) for p in _corpus_paths(target)]
    reports = [(s, audit(s)) for s in sheets]
    if show_matrix:
        matrix = coverage_matrix(sheets)
        click.echo(matrix.to_csv() if as_csv else matrix.to_text(), nl=False)
    elif as_json:
        click.echo(json.dumps([
            {
                "name": s.metadata.name,
                "statuses": {a: st.value for a, st in r.statuses.items()},
                "score": None if r.score is None else float(r.score),
                "score_exact": None if r.score is None
                else f"{r.score.numerator}/{r.score.denominator}",
            }
            for s, r in reports
        ]))
    else:
        for s, r in reports:
            badge = "n/a" if r.score is None else f"{r.score.numerator}/{r.score.denominator}"
            click.echo(f"{s.metadata.name}: {badge}")
    if threshold is not None:
        failed = [
            s.metadata.name
            for s, r in reports
            if not gate(r, Fraction(threshold).limit_denominator(10**9))
        ]
        if failed:
            for name in failed:
                click.echo(f"below threshold: {name}", err=True)
            sys.exit(EXIT_FAIL)


@main.command()
@click.option("--addr", default=None, help="host:port to listen on.")
@click.option("--store", "store_root", default=None, help="Store root directory.")
@click.option("--token", default=None, help="Admin token for the acceptance workflow.")
def serve(addr, store_root, token):
    """Run the registry HTTP service."""
    import uvicorn

    from .service import build_app

    addr = addr or os.environ.get(ENV_ADDR, DEFAULT_ADDR)
    host, _, port = addr.partition(":")
    try:
        app = build_app(store_root, token)
    except CorruptStoreError as exc:
        click.echo(f"error: store is corrupt: {exc}", err=True)
        sys.exit(EXIT_IO)
    except StoreError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_IO)
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port or 8080), log_level="warning")


@main.command(name="export-vocab")
def export_vocab():
    """Dump the built-in vocabularies as JSON."""
    out = {}
    for vocab_id, voc in builtin_vocabularies().items():
        out[vocab_id] = {
            "openness": "open" if voc.open else "closed",
            "terms": [
                {"id": t.id, "display": t.display, "description": t.description}
                for t in voc.terms
            ],
            "subsumption": sorted([list(e) for e in voc.subsumption]),
            "order": list(voc.order) if voc.order else None,
        }
    click.echo(json.dumps(out, indent=2))


if __name__ == "__main__":
    main()
