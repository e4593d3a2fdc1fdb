import { describe, expect, it } from "vitest";

import { ApiClient, CompareMatrix, RecordSummary } from "../src/api.js";
import { highlightedFacets, renderCompare } from "../src/compare.js";
import { renderEmptyState, renderErrorBanner, renderResultCard, SearchController } from "../src/search.js";

function record(overrides: Partial<RecordSummary> = {}): RecordSummary {
  return {
    id: "reweighing@0.5.0#aif360",
    name: "Reweighing",
    version: "0.5.0",
    authors: ["AIF360"],
    state: "accepted",
    content_hash: "abc",
    created_at: "",
    updated_at: "",
    labels: { "pipeline-location": ["pre-processing"] },
    ...overrides,
  };
}

describe("search rendering", () => {
  it("renders name, version, and location chips", () => {
    const html = renderResultCard(record(), "6/7");
    expect(html).toContain("Reweighing");
    expect(html).toContain("v0.5.0");
    expect(html).toContain('<span class="chip">pre-processing</span>');
    expect(html).toContain('<span class="badge">6/7</span>');
  });

  it("escapes markup in API data", () => {
    const html = renderResultCard(record({ name: "<script>x</script>" }), null);
    expect(html).not.toContain("<script>");
    expect(html).toContain("&lt;script&gt;");
  });

  it("empty state mentions the guarantee minimum when one is set", () => {
    const html = renderEmptyState({ terms: {}, guaranteeMin: "tunable-fairness-strength" });
    expect(html).toMatch(/guarantee minimum/);
  });

  it("error banner offers a retry affordance", () => {
    const html = renderErrorBanner("connection refused");
    expect(html).toContain('data-action="retry"');
    expect(html).toContain("connection refused");
  });
});

describe("SearchController last-write-wins", () => {
  it("marks the response of an outdated request as stale", async () => {
    const resolvers: ((records: RecordSummary[]) => void)[] = [];
    const fakeFetch = (() =>
      new Promise((resolve) => {
        resolvers.push((records) =>
          resolve(new Response(JSON.stringify(records), { status: 200 })),
        );
      })) as unknown as typeof fetch;
    const controller = new SearchController(new ApiClient("http://example.test", fakeFetch));

    const first = controller.run({ terms: { location: ["pre-processing"] } });
    const second = controller.run({ terms: { location: ["post-processing"] } });
    // Answer the SECOND request first, then the outdated first one.
    resolvers[1]([record({ name: "Fresh" })]);
    resolvers[0]([record({ name: "Stale" })]);

    expect((await second).kind).toBe("results");
    expect((await second).html).toContain("Fresh");
    expect((await first).kind).toBe("stale");
  });

  it("surfaces network failures as an error banner, never silently", async () => {
    const failingFetch = (() => Promise.reject(new Error("boom"))) as unknown as typeof fetch;
    const controller = new SearchController(new ApiClient("http://example.test", failingFetch));
    const outcome = await controller.run({ terms: {} });
    expect(outcome.kind).toBe("error");
    expect(outcome.html).toContain("boom");
  });
});

describe("compare rendering", () => {
  const matrix: CompareMatrix = {
    sheets: ["a@1#x", "b@1#y"],
    rows: [
      { facet: "pipeline-location", cells: ["pre-processing", "pre-processing"], differs: false },
      { facet: "compatible-model", cells: ["logistic-regression", "neural-network"], differs: true },
      { facet: "language", cells: ["python", "python"], differs: false },
    ],
  };

  it("highlights exactly the rows marked differs", () => {
    const html = renderCompare({ matrix, missing: [] });
    expect(highlightedFacets(html)).toEqual(["compatible-model"]);
  });

  it("self-comparison highlights nothing", () => {
    const same: CompareMatrix = {
      sheets: ["a@1#x", "a@1#x"],
      rows: matrix.rows.map((row) => ({ ...row, differs: false })),
    };
    expect(highlightedFacets(renderCompare({ matrix: same, missing: [] }))).toEqual([]);
  });

  it("only-differences toggle hides identical rows", () => {
    const html = renderCompare({ matrix, missing: [] }, true);
    expect(html).toContain("compatible-model");
    expect(html).not.toContain("pipeline-location");
  });

  it("renders not-found columns for unknown ids", () => {
    const html = renderCompare({ matrix, missing: ["ghost@1#z"] });
    expect(html).toContain('class="not-found"');
    expect(html).toContain("ghost@1#z (not found)");
  });
});
