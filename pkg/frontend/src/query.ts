/**
 * Faceted-search state and its compilation to the registry's query language.
 *
 * The UI never sends structured queries: every search is compiled to exactly
 * one query string and passed as the `q` parameter.
 */

export const MATCH_FACETS = [
  "method-type",
  "task",
  "dataset",
  "location",
  "model",
  "composition",
  "guarantee",
  "fairness-type",
  "definition",
  "language",
  "package",
  "use-case",
] as const;

export type MatchFacet = (typeof MATCH_FACETS)[number];

export interface FacetState {
  /** Selected terms per facet; terms within one facet are alternatives (OR). */
  terms: Partial<Record<MatchFacet, string[]>>;
  /** Lattice lower bound: compiles to `composition>=<term>`. */
  compositionMin?: string;
  /** Strength lower bound: compiles to `guarantee>=<term>`. */
  guaranteeMin?: string;
  /** Case-insensitive substring filter on the method name. */
  nameFilter?: string;
}

export function emptyFacetState(): FacetState {
  return { terms: {} };
}

function quoteValue(value: string): string {
  if (value.includes('"')) {
    throw new Error(`query values cannot contain double quotes: ${value}`);
  }
  return /[\s()]/.test(value) ? `"${value}"` : value;
}

/**
 * Pure FacetState -> query-string compiler. Facet groups are conjoined;
 * the terms inside one facet are disjoined. Returns "" for the empty state
 * (callers omit the `q` parameter entirely in that case).
 */
export function compileQuery(state: FacetState): string {
  const groups: string[] = [];
  for (const facet of MATCH_FACETS) {
    const selected = state.terms[facet] ?? [];
    if (selected.length === 0) continue;
    const atoms = selected.map((term) => `${facet}:${quoteValue(term)}`);
    groups.push(atoms.length === 1 ? atoms[0] : `(${atoms.join(" OR ")})`);
  }
  if (state.compositionMin) {
    groups.push(`composition>=${quoteValue(state.compositionMin)}`);
  }
  if (state.guaranteeMin) {
    groups.push(`guarantee>=${quoteValue(state.guaranteeMin)}`);
  }
  if (state.nameFilter && state.nameFilter.trim() !== "") {
    groups.push(`name:${quoteValue(state.nameFilter.trim())}`);
  }
  return groups.join(" AND ");
}
