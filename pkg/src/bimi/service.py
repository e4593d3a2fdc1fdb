"""HTTP registry service.

Thin FastAPI layer over SheetStore. Read endpoints default to accepted
records; `state=all` and state transitions require the admin bearer token.
Configuration comes from environment variables (BIMI_ADDR, BIMI_STORE,
BIMI_ADMIN_TOKEN), all overridable by CLI flags.
"""

from __future__ import annotations

import os

from fastapi import FastAPI, Header, Query, Request, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import HTMLResponse, JSONResponse, PlainTextResponse

from . import format as fmt
from .audit import audit
from .model import COMPARE_FACETS, compare, get_field, sheet_to_dict
from .model import ComparisonError
from .query import QueryError, parse_query, search
from .render import RenderOptions, render
from .store import (
    ConflictError,
    IllegalTransitionError,
    NotFoundError,
    RejectedSubmission,
    SheetStore,
)
from .vocab import builtin_vocabularies

ENV_ADDR = "BIMI_ADDR"
ENV_STORE = "BIMI_STORE"
ENV_TOKEN = "BIMI_ADMIN_TOKEN"

DEFAULT_ADDR = "127.0.0.1:8080"
DEFAULT_STORE = "./bimi-store"


def _error(status: int, code: str, message: str, **extra) -> JSONResponse:
    return JSONResponse({"error": code, "message": message, **extra}, status_code=status)


def _labels_summary(sheet) -> dict:
    summary = {}
    for facet, path in COMPARE_FACETS:
        ls = get_field(sheet, path)
        if ls.is_not_applicable:
            summary[facet] = {"not_applicable": ls.values.reason}
        elif not ls.is_unspecified:
            summary[facet] = list(ls.terms())
    return summary


def _record_json(record) -> dict:
    out = record.summary()
    out["labels"] = _labels_summary(record.sheet)
    return out


def _audit_json(report) -> dict:
    return {
        "statuses": {axis: status.value for axis, status in report.statuses.items()},
        "score": None if report.score is None else float(report.score),
        "score_exact": None
        if report.score is None
        else f"{report.score.numerator}/{report.score.denominator}",
        "applicable": report.applicable,
    }


def create_app(store: SheetStore, admin_token: str) -> FastAPI:
    app = FastAPI(title="BiMi Sheet registry", version="1.0")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    vocabs = store.vocabs

    def authorized(authorization: str | None) -> bool:
        return (
            bool(admin_token)
            and authorization is not None
            and authorization.startswith("Bearer ")
            and authorization[len("Bearer ") :] == admin_token
        )

    @app.get("/api/v1/sheets")
    def list_sheets(
        q: str | None = Query(default=None),
        state: str = Query(default="accepted"),
        authorization: str | None = Header(default=None),
    ):
        if state == "accepted":
            records = store.records(("accepted",))
        elif state == "all":
            if not authorized(authorization):
                return _error(401, "E_AUTH", "state=all requires the admin token")
            records = store.all_records()
        else:
            return _error(400, "E_STATE", f"unknown state filter {state!r}")
        by_id = {r.id: r for r in records}
        if q:
            try:
                ast = parse_query(q)
            except QueryError as exc:
                return _error(400, exc.code, exc.message, position=exc.position)
            hits = search(ast, [r.sheet for r in records], vocabs)
            out = []
            for hit in hits:
                rec = by_id[hit.id]
                item = _record_json(rec)
                item["score"] = hit.score
                out.append(item)
            return out
        return [_record_json(r) for r in records]

    @app.post("/api/v1/sheets")
    async def submit_sheet(request: Request):
        body = await request.body()
        try:
            text = body.decode("utf-8")
        except UnicodeDecodeError:
            return _error(400, "E_PARSE", "body is not valid UTF-8")
        try:
            record = store.submit(text)
        except RejectedSubmission as exc:
            if exc.code == "E_PARSE":
                err = exc.parse_error
                return _error(
                    400,
                    "E_PARSE",
                    err.message,
                    parse_code=err.code,
                    line=err.span.line,
                    column=err.span.column,
                )
            return _error(
                400,
                "E_VALIDATION",
                "sheet failed validation",
                violations=[
                    {"code": v.code, "path": v.path, "message": v.message}
                    for v in exc.violations
                ],
            )
        except ConflictError as exc:
            return _error(409, "E_CONFLICT", str(exc))
        return JSONResponse(_record_json(record), status_code=201)

    @app.get("/api/v1/sheets/{sheet_id}")
    def get_sheet(sheet_id: str, format: str = Query(default="bimi")):
        try:
            record = store.get(sheet_id)
        except NotFoundError as exc:
            return _error(404, "E_NOT_FOUND", str(exc))
        if format == "json":
            out = _record_json(record)
            out["sheet"] = sheet_to_dict(record.sheet)
            return out
        return PlainTextResponse(fmt.serialize(record.sheet))

    @app.get("/api/v1/sheets/{sheet_id}/render")
    def render_sheet(sheet_id: str, format: str = Query(default="html")):
        if format not in ("html", "text"):
            return _error(400, "E_FORMAT", f"unknown render format {format!r}")
        try:
            record = store.get(sheet_id)
        except NotFoundError as exc:
            return _error(404, "E_NOT_FOUND", str(exc))
        body = render(record.sheet, RenderOptions(format=format, include_audit_badge=True))
        if format == "html":
            return HTMLResponse(body)
        return PlainTextResponse(body)

    @app.get("/api/v1/sheets/{sheet_id}/audit")
    def audit_sheet(sheet_id: str):
        try:
            record = store.get(sheet_id)
        except NotFoundError as exc:
            return _error(404, "E_NOT_FOUND", str(exc))
        return _audit_json(audit(record.sheet))

    @app.post("/api/v1/sheets/{sheet_id}/transition")
    async def transition_sheet(
        sheet_id: str, request: Request, authorization: str | None = Header(default=None)
    ):
        if not authorized(authorization):
            return _error(401, "E_AUTH", "a valid admin bearer token is required")
        try:
            payload = await request.json()
        except Exception:
            return _error(400, "E_BODY", "body must be JSON like {\"action\": \"accept\"}")
        action = payload.get("action") if isinstance(payload, dict) else None
        if action not in ("accept", "reject"):
            return _error(400, "E_BODY", "action must be 'accept' or 'reject'")
        try:
            record = store.transition(sheet_id, action)
        except NotFoundError as exc:
            return _error(404, "E_NOT_FOUND", str(exc))
        except IllegalTransitionError as exc:
            return _error(409, "E_STATE", str(exc))
        return _record_json(record)

    @app.get("/api/v1/compare")
    def compare_sheets(ids: str = Query(...)):
        wanted = [i for i in ids.split(",") if i]
        records = []
        for sheet_id in wanted:
            try:
                records.append(store.get(sheet_id))
            except NotFoundError as exc:
                return _error(404, "E_NOT_FOUND", str(exc))
        try:
            matrix = compare([r.sheet for r in records], vocabs)
        except ComparisonError as exc:
            return _error(400, "E_COMPARE", str(exc))
        return {
            "sheets": list(matrix.sheets),
            "rows": [
                {"facet": row.facet, "cells": list(row.cells), "differs": row.differs}
                for row in matrix.rows
            ],
        }

    @app.get("/api/v1/vocabularies")
    def vocabularies():
        out = {}
        for vocab_id, voc in vocabs.items():
            out[vocab_id] = {
                "openness": "open" if voc.open else "closed",
                "terms": [
                    {"id": t.id, "display": t.display, "description": t.description}
                    for t in voc.terms
                ],
                "subsumption": sorted([list(e) for e in voc.subsumption]),
                "order": list(voc.order) if voc.order else None,
            }
        return out

    return app


def build_app(
    store_root: str | None = None, admin_token: str | None = None
) -> FastAPI:
    """App factory honoring the environment variables."""
    root = store_root or os.environ.get(ENV_STORE, DEFAULT_STORE)
    token = admin_token or os.environ.get(ENV_TOKEN, "")
    store = SheetStore(root, builtin_vocabularies())
    return create_app(store, token)
