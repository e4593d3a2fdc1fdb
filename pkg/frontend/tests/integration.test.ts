/**
 * Integration tests against a live local registry. Spawns the Python service
 * with a temporary store, seeds it with the repository's corpus, and drives
 * it exclusively through the TypeScript client.
 */

import { ChildProcess, spawn } from "node:child_process";
import { mkdtempSync, readdirSync, readFileSync, rmSync } from "node:fs";
import { tmpdir } from "node:os";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient, ApiError } from "../src/api.js";
import { highlightedFacets, loadCompare, renderCompare } from "../src/compare.js";
import { submitDraft } from "../src/form.js";
import { compileQuery, FacetState } from "../src/query.js";
import { emptyDraft } from "../src/sheet.js";

const SEED_DIR = join(dirname(fileURLToPath(import.meta.url)), "..", "..", "seed");
const TOKEN = "integration-token";
const PORT = 18000 + Math.floor(Math.random() * 2000);
const BASE_URL = `http://127.0.0.1:${PORT}`;

let server: ChildProcess;
let storeRoot: string;
const api = new ApiClient(BASE_URL);
const idsByName = new Map<string, string>();

async function waitForServer(): Promise<void> {
  const deadline = Date.now() + 20_000;
  while (Date.now() < deadline) {
    try {
      await api.vocabularies();
      return;
    } catch {
      await new Promise((resolve) => setTimeout(resolve, 200));
    }
  }
  throw new Error("registry did not become reachable");
}

beforeAll(async () => {
  storeRoot = mkdtempSync(join(tmpdir(), "bimi-store-"));
  server = spawn(
    "python3",
    ["-m", "bimi", "serve", "--addr", `127.0.0.1:${PORT}`, "--store", storeRoot, "--token", TOKEN],
    { stdio: "ignore" },
  );
  await waitForServer();
  for (const file of readdirSync(SEED_DIR).filter((name) => name.endsWith(".bimi"))) {
    const record = await api.submit(readFileSync(join(SEED_DIR, file), "utf-8"));
    await api.transition(record.id, "accept", TOKEN);
    idsByName.set(record.name, record.id);
  }
}, 60_000);

afterAll(() => {
  server?.kill();
  if (storeRoot) rmSync(storeRoot, { recursive: true, force: true });
});

describe("faceted search parity with direct API queries", () => {
  // Each scripted facet state is paired with an equivalent hand-written query;
  // the UI's compiled string must return the identical hit set.
  const scripted: [string, FacetState, string][] = [
    ["one location", { terms: { location: ["pre-processing"] } }, "location:pre-processing"],
    [
      "two locations",
      { terms: { location: ["pre-processing", "intra-processing"] } },
      "location:pre-processing OR location:intra-processing",
    ],
    ["one task", { terms: { task: ["classification"] } }, "task:classification"],
    [
      "task and language",
      { terms: { task: ["classification"], language: ["python"] } },
      "language:python AND task:classification",
    ],
    [
      "composition minimum",
      { terms: {}, compositionMin: "categorical-attributes" },
      "composition>=categorical-attributes",
    ],
    [
      "guarantee minimum",
      { terms: {}, guaranteeMin: "tunable-fairness-strength" },
      "guarantee>=tunable-fairness-strength",
    ],
    ["name substring", { terms: {}, nameFilter: "fair" }, "name:fair"],
    [
      "location plus composition minimum",
      { terms: { location: ["in-processing"] }, compositionMin: "binary-attribute" },
      "composition>=binary-attribute AND location:in-processing",
    ],
    [
      "package facet",
      { terms: { package: ["aif360"] } },
      "package:aif360",
    ],
    [
      "model facet with guarantee minimum",
      {
        terms: { model: ["probabilistic-classifier"] },
        guaranteeMin: "fairness-guaranteed",
      },
      "model:probabilistic-classifier AND guarantee>=fairness-guaranteed",
    ],
  ];

  it.each(scripted)("%s", async (_label, state, directQuery) => {
    const viaUi = await api.listSheets({ q: compileQuery(state) });
    const direct = await api.listSheets({ q: directQuery });
    const uiIds = viaUi.map((r) => r.id).sort();
    const directIds = direct.map((r) => r.id).sort();
    expect(uiIds).toEqual(directIds);
  });

  it("pre-processing facet finds the expected seed methods", async () => {
    const hits = await api.listSheets({
      q: compileQuery({ terms: { location: ["pre-processing"] } }),
    });
    const names = hits.map((r) => r.name);
    expect(names).toContain("Reweighing");
    expect(names).toContain("Correlation Remover");
  });
});

describe("compare view parity", () => {
  it("highlights exactly the rows the API marks differs=true", async () => {
    const ids = [idsByName.get("Reweighing")!, idsByName.get("Correlation Remover")!];
    const matrix = await api.compare(ids);
    const html = renderCompare({ matrix, missing: [] });
    const expected = matrix.rows.filter((row) => row.differs).map((row) => row.facet);
    expect(highlightedFacets(html)).toEqual(expected);

    const byFacet = new Map(matrix.rows.map((row) => [row.facet, row]));
    expect(byFacet.get("pipeline-location")!.differs).toBe(false); // both pre-processing
    expect(byFacet.get("compatible-model")!.differs).toBe(true);
  });

  it("self-comparison highlights zero rows", async () => {
    const id = idsByName.get("Reweighing")!;
    const matrix = await api.compare([id, id]);
    expect(highlightedFacets(renderCompare({ matrix, missing: [] }))).toEqual([]);
  });

  it("degrades to a not-found column for an unknown id", async () => {
    const ids = [
      idsByName.get("Reweighing")!,
      idsByName.get("Correlation Remover")!,
      "ghost@0.0.0#nobody",
    ];
    const model = await loadCompare(api, ids);
    expect(model.missing).toEqual(["ghost@0.0.0#nobody"]);
    expect(model.matrix!.sheets).toHaveLength(2);
    expect(renderCompare(model)).toContain("ghost@0.0.0#nobody (not found)");
  });
});

describe("authoring safety: client blocks mirror server rejections", () => {
  function validDraft() {
    const draft = emptyDraft();
    draft.metadata = {
      name: "Integration Method",
      authors: ["Integration Lab"],
      version: "0.1.0",
      license: "MIT",
      proposedIn: "",
    };
    draft.method.methodTypes.values = ["reweighing"];
    draft.method.mlTasks.values = ["classification"];
    draft.method.datasetTypes.values = ["tabular"];
    draft.method.description = "Submitted by the integration suite.";
    draft.pipeline.locations.values = ["in-processing"];
    draft.pipeline.models.values = ["neural-network"];
    draft.pipeline.description = "In training.";
    draft.fairness.compositions.values = ["binary-attribute"];
    draft.fairness.guarantee.values = ["no-fairness-guarantee"];
    draft.fairness.fairnessTypes.values = ["group-fairness"];
    draft.fairness.fairnessDefinitions.values = ["statistical-parity"];
    draft.fairness.description = "Group balanced.";
    draft.implementation.language.values = ["python"];
    draft.implementation.packages.values = ["pytorch"];
    draft.implementation.description = "Torch module.";
    draft.useCases.datasets.values = ["adult"];
    draft.useCases.description = "Census.";
    return draft;
  }

  it("a clean draft submits successfully with state submitted", async () => {
    const vocabularies = await api.vocabularies();
    const result = await submitDraft(api, validDraft(), vocabularies);
    expect(result.kind).toBe("accepted");
    if (result.kind === "accepted") {
      expect(result.record.state).toBe("submitted");
      expect(result.record.id).toBe("integration-method@0.1.0#integration-lab");
    }
  });

  it("the form blocks a closed-vocabulary violation before any request", async () => {
    const vocabularies = await api.vocabularies();
    const draft = validDraft();
    draft.pipeline.locations.values = ["mid-processing"];
    const result = await submitDraft(api, draft, vocabularies);
    expect(result.kind).toBe("blocked");
  });

  it("the form blocks an unjustified n/a with the rule explanation", async () => {
    const vocabularies = await api.vocabularies();
    const draft = validDraft();
    draft.method.datasetTypes = { values: [], notApplicable: "dataset-independent" };
    const result = await submitDraft(api, draft, vocabularies);
    expect(result.kind).toBe("blocked");
    if (result.kind === "blocked") {
      expect(result.issues[0].message).toMatch(/post-processing/);
    }
  });

  it("bypass: the server still rejects what the client blocks", async () => {
    // Hand-crafted submissions skipping every client-side guard.
    const closedVocabBypass = [
      "[method]",
      "description: <<TEXT",
      "TEXT",
      "",
      "[pipeline]",
      "location: mid-processing",
      "description: <<TEXT",
      "TEXT",
      "",
      "[fairness]",
      "description: <<TEXT",
      "TEXT",
      "",
      "[implementation]",
      "description: <<TEXT",
      "TEXT",
      "",
      "[use-case]",
      "description: <<TEXT",
      "TEXT",
      "",
      "[metadata]",
      "name: Bypass One",
      "author: Nobody",
      "version: 0.0.1",
      "license: MIT",
      "",
    ].join("\n");
    await expect(api.submit(closedVocabBypass)).rejects.toSatisfy(
      (error: unknown) =>
        error instanceof ApiError &&
        error.status === 400 &&
        error.code === "E_VALIDATION" &&
        error.violations.some((v) => v.code === "E_VOCAB"),
    );

    const naBypass = closedVocabBypass
      .replace("location: mid-processing", "location: in-processing")
      .replace("[method]", "[method]\ndataset-type: !n/a(dataset-independent)")
      .replace("name: Bypass One", "name: Bypass Two");
    await expect(api.submit(naBypass)).rejects.toSatisfy(
      (error: unknown) =>
        error instanceof ApiError &&
        error.status === 400 &&
        error.violations.some((v) => v.code === "E_NA_UNJUSTIFIED"),
    );
  });
});
