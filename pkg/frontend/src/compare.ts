/**
 * Side-by-side comparison view. Rows the API marks `differs` are highlighted;
 * a toggle can hide the identical rows. Unknown ids degrade to a not-found
 * column instead of failing the whole view.
 */

import { ApiClient, ApiError, CompareMatrix } from "./api.js";
import { escapeHtml } from "./search.js";

export interface CompareViewModel {
  matrix: CompareMatrix | null;
  /** Ids the registry does not know; rendered as not-found columns. */
  missing: string[];
}

/**
 * Fetch a comparison, tolerating unknown ids: when the bulk call 404s, the
 * known subset is compared and the unknown ids are reported separately.
 */
export async function loadCompare(api: ApiClient, ids: string[]): Promise<CompareViewModel> {
  try {
    return { matrix: await api.compare(ids), missing: [] };
  } catch (error) {
    if (!(error instanceof ApiError) || error.status !== 404) throw error;
  }
  const found: string[] = [];
  const missing: string[] = [];
  for (const id of ids) {
    try {
      await api.getSheetText(id);
      found.push(id);
    } catch (error) {
      if (error instanceof ApiError && error.status === 404) missing.push(id);
      else throw error;
    }
  }
  if (found.length < 2) return { matrix: null, missing };
  return { matrix: await api.compare(found), missing };
}

export function renderCompare(model: CompareViewModel, onlyDifferences = false): string {
  if (model.matrix === null) {
    const names = model.missing.map((id) => `<li>${escapeHtml(id)}</li>`).join("");
    return `<p class="error">Not enough known sheets to compare. Unknown ids:</p><ul>${names}</ul>`;
  }
  const { sheets, rows } = model.matrix;
  const header = [
    "<tr><th>facet</th>",
    ...sheets.map((id) => `<th>${escapeHtml(id)}</th>`),
    ...model.missing.map((id) => `<th class="not-found">${escapeHtml(id)} (not found)</th>`),
    "</tr>",
  ].join("");
  const body = rows
    .filter((row) => !onlyDifferences || row.differs)
    .map((row) => {
      const cls = row.differs ? ' class="differs"' : "";
      const cells = [
        `<th>${escapeHtml(row.facet)}</th>`,
        ...row.cells.map((cell) => `<td>${escapeHtml(cell)}</td>`),
        ...model.missing.map(() => `<td class="not-found">?</td>`),
      ];
      return `<tr${cls}>${cells.join("")}</tr>`;
    })
    .join("\n");
  return `<table class="compare"><thead>${header}</thead><tbody>${body}</tbody></table>`;
}

/** The facets of the rows a rendered table highlights (for tests and tooling). */
export function highlightedFacets(renderedTable: string): string[] {
  const facets: string[] = [];
  const pattern = /<tr class="differs"><th>([^<]*)<\/th>/g;
  let match: RegExpExecArray | null;
  while ((match = pattern.exec(renderedTable)) !== null) facets.push(match[1]);
  return facets;
}
