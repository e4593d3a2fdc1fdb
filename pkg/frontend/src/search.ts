/**
 * Search view: compiles the facet state, queries the registry, and renders
 * result cards. Rendering is pure (HTML strings) so it is testable without a
 * browser; main.ts wires the strings into the DOM.
 */

import { ApiClient, RecordSummary } from "./api.js";
import { compileQuery, FacetState } from "./query.js";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function locationChips(record: RecordSummary): string {
  const locations = record.labels["pipeline-location"];
  if (!Array.isArray(locations)) return "";
  return locations
    .map((term) => `<span class="chip">${escapeHtml(term)}</span>`)
    .join("");
}

export function renderResultCard(record: RecordSummary, auditBadge: string | null): string {
  const badge = auditBadge === null ? "" : `<span class="badge">${escapeHtml(auditBadge)}</span>`;
  return [
    `<article class="result" data-id="${escapeHtml(record.id)}">`,
    `<h3>${escapeHtml(record.name)} <small>v${escapeHtml(record.version)}</small>${badge}</h3>`,
    `<div class="chips">${locationChips(record)}</div>`,
    `</article>`,
  ].join("");
}

export function renderEmptyState(state: FacetState): string {
  const hints: string[] = [];
  if (state.guaranteeMin) {
    hints.push("try lowering or clearing the guarantee minimum");
  }
  if (state.compositionMin) {
    hints.push("try a less demanding composition minimum");
  }
  if (Object.values(state.terms).some((terms) => (terms ?? []).length > 0)) {
    hints.push("deselect some facet terms");
  }
  const guidance = hints.length > 0 ? ` You could ${hints.join(", or ")}.` : "";
  return `<p class="empty">No methods match the current filters.${guidance}</p>`;
}

export function renderErrorBanner(message: string): string {
  return (
    `<div class="error-banner" role="alert">${escapeHtml(message)} ` +
    `<button type="button" data-action="retry">Retry</button></div>`
  );
}

export interface SearchOutcome {
  kind: "results" | "empty" | "error" | "stale";
  html: string;
  hits: RecordSummary[];
}

/**
 * Controller holding the request sequence number. Concurrent in-flight
 * searches resolve last-write-wins: a response for an outdated request is
 * reported as "stale" and must not be rendered.
 */
export class SearchController {
  private sequence = 0;

  constructor(private api: ApiClient) {}

  async run(state: FacetState): Promise<SearchOutcome> {
    const requestNumber = ++this.sequence;
    const q = compileQuery(state);
    let hits: RecordSummary[];
    try {
      hits = await this.api.listSheets(q === "" ? {} : { q });
    } catch (error) {
      if (requestNumber !== this.sequence) return { kind: "stale", html: "", hits: [] };
      const message = error instanceof Error ? error.message : String(error);
      return { kind: "error", html: renderErrorBanner(message), hits: [] };
    }
    if (requestNumber !== this.sequence) return { kind: "stale", html: "", hits: [] };
    if (hits.length === 0) {
      return { kind: "empty", html: renderEmptyState(state), hits: [] };
    }
    const cards = hits.map((record) => renderResultCard(record, null));
    return { kind: "results", html: cards.join("\n"), hits };
  }
}
