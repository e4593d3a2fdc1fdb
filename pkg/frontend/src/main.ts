/** DOM bootstrap: wires the pure view functions into a minimal single page. */

import { ApiClient } from "./api.js";
import { loadCompare, renderCompare } from "./compare.js";
import { emptyFacetState, FacetState, MATCH_FACETS, MatchFacet } from "./query.js";
import { SearchController } from "./search.js";

const BASE_URL =
  (document.querySelector('meta[name="bimi-api-base"]') as HTMLMetaElement | null)?.content ??
  window.location.origin;

const api = new ApiClient(BASE_URL);
const controller = new SearchController(api);
const state: FacetState = emptyFacetState();

function byId<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
}

async function refreshResults(): Promise<void> {
  const outcome = await controller.run(state);
  if (outcome.kind === "stale") return;
  byId<HTMLDivElement>("results").innerHTML = outcome.html;
}

function wireFacetInputs(): void {
  const container = byId<HTMLDivElement>("facets");
  container.addEventListener("change", (event) => {
    const input = event.target as HTMLInputElement;
    const facet = input.dataset.facet as MatchFacet | undefined;
    if (!facet || !MATCH_FACETS.includes(facet)) return;
    const selected = state.terms[facet] ?? [];
    state.terms[facet] = input.checked
      ? [...selected, input.value]
      : selected.filter((term) => term !== input.value);
    void refreshResults();
  });
  byId<HTMLInputElement>("name-filter").addEventListener("input", (event) => {
    state.nameFilter = (event.target as HTMLInputElement).value;
    void refreshResults();
  });
  byId<HTMLSelectElement>("guarantee-min").addEventListener("change", (event) => {
    state.guaranteeMin = (event.target as HTMLSelectElement).value || undefined;
    void refreshResults();
  });
  byId<HTMLSelectElement>("composition-min").addEventListener("change", (event) => {
    state.compositionMin = (event.target as HTMLSelectElement).value || undefined;
    void refreshResults();
  });
  byId<HTMLDivElement>("results").addEventListener("click", (event) => {
    if ((event.target as HTMLElement).dataset.action === "retry") void refreshResults();
  });
}

function wireCompare(): void {
  byId<HTMLButtonElement>("compare-run").addEventListener("click", async () => {
    const ids = byId<HTMLInputElement>("compare-ids")
      .value.split(",")
      .map((id) => id.trim())
      .filter((id) => id !== "");
    const onlyDiff = byId<HTMLInputElement>("compare-only-diff").checked;
    const model = await loadCompare(api, ids);
    byId<HTMLDivElement>("compare-output").innerHTML = renderCompare(model, onlyDiff);
  });
}

wireFacetInputs();
wireCompare();
void refreshResults();
