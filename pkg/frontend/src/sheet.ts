/**
 * Draft sheet model, client-side rule checks, and serialization to the
 * `.bimi` text format submitted to the registry.
 *
 * Every client-side block here mirrors a server validation rule; the server
 * remains the authority and re-rejects anything that slips past.
 */

export interface LabelValue {
  /** Selected or typed terms; empty array means "leave unspecified". */
  values: string[];
  /** Explicit irrelevance declaration; mutually exclusive with values. */
  notApplicable?: string;
}

export interface Draft {
  metadata: {
    name: string;
    authors: string[];
    version: string;
    license: string;
    proposedIn: string;
  };
  method: {
    methodTypes: LabelValue;
    mlTasks: LabelValue;
    datasetTypes: LabelValue;
    description: string;
  };
  pipeline: {
    locations: LabelValue;
    models: LabelValue;
    description: string;
  };
  fairness: {
    compositions: LabelValue;
    guarantee: LabelValue;
    fairnessTypes: LabelValue;
    fairnessDefinitions: LabelValue;
    description: string;
  };
  implementation: {
    language: LabelValue;
    packages: LabelValue;
    description: string;
  };
  useCases: {
    datasets: LabelValue;
    description: string;
  };
}

export function emptyDraft(): Draft {
  const none = (): LabelValue => ({ values: [] });
  return {
    metadata: { name: "", authors: [], version: "", license: "", proposedIn: "" },
    method: { methodTypes: none(), mlTasks: none(), datasetTypes: none(), description: "" },
    pipeline: { locations: none(), models: none(), description: "" },
    fairness: {
      compositions: none(),
      guarantee: none(),
      fairnessTypes: none(),
      fairnessDefinitions: none(),
      description: "",
    },
    implementation: { language: none(), packages: none(), description: "" },
    useCases: { datasets: none(), description: "" },
  };
}

/** Fields that admit an n/a declaration, with the justification rule. */
export interface NaRule {
  reason: string;
  /** Location that must be selected for the declaration to be justified; null = always allowed. */
  requiresLocation: string | null;
  explanation: string;
}

export const NA_RULES: Record<string, NaRule> = {
  "method.mlTasks": {
    reason: "task-independent",
    requiresLocation: "pre-processing",
    explanation:
      "Only pre-processing methods can be task-independent: they act on the data before any task is chosen.",
  },
  "method.datasetTypes": {
    reason: "dataset-independent",
    requiresLocation: "post-processing",
    explanation:
      "Only post-processing methods can be dataset-independent: they act on predictions, not the dataset.",
  },
  "pipeline.models": {
    reason: "model-independent",
    requiresLocation: null,
    explanation: "Any method may declare itself model-independent.",
  },
};

/** Whether the n/a toggle for `fieldPath` may be shown given the selected locations. */
export function naAllowed(fieldPath: string, selectedLocations: string[]): boolean {
  const rule = NA_RULES[fieldPath];
  if (!rule) return false;
  return rule.requiresLocation === null || selectedLocations.includes(rule.requiresLocation);
}

export interface FieldIssue {
  path: string;
  message: string;
}

/**
 * Client-side pre-flight checks mirroring the server's validation errors.
 * Returns only blockers (the server's E_* codes); warnings are left to the
 * server response.
 */
export function checkDraft(draft: Draft, closedTerms: Record<string, string[]>): FieldIssue[] {
  const issues: FieldIssue[] = [];
  const md = draft.metadata;
  if (md.name.trim() === "") issues.push({ path: "metadata.name", message: "name is required" });
  if (md.authors.length === 0)
    issues.push({ path: "metadata.authors", message: "at least one author is required" });
  if (md.version.trim() === "" || /\s/.test(md.version))
    issues.push({ path: "metadata.version", message: "version must be a non-empty token" });
  if (md.license.trim() === "")
    issues.push({ path: "metadata.license", message: "license is required" });

  const locations = draft.pipeline.locations.values;
  const closedFields: [string, LabelValue, string][] = [
    ["pipeline.locations", draft.pipeline.locations, "pipeline-location"],
    ["fairness.compositions", draft.fairness.compositions, "composition"],
    ["fairness.guarantee", draft.fairness.guarantee, "guarantee"],
  ];
  for (const [path, label, vocabId] of closedFields) {
    const allowed = closedTerms[vocabId] ?? [];
    for (const term of label.values) {
      if (!allowed.includes(term)) {
        issues.push({ path, message: `"${term}" is not a valid ${vocabId} term` });
      }
    }
  }
  if (draft.fairness.guarantee.values.length > 1)
    issues.push({ path: "fairness.guarantee", message: "at most one guarantee" });
  if (draft.implementation.language.values.length > 1)
    issues.push({ path: "implementation.language", message: "at most one language" });

  const naFields: [string, LabelValue][] = [
    ["method.mlTasks", draft.method.mlTasks],
    ["method.datasetTypes", draft.method.datasetTypes],
    ["pipeline.models", draft.pipeline.models],
  ];
  for (const [path, label] of naFields) {
    if (label.notApplicable !== undefined && !naAllowed(path, locations)) {
      issues.push({ path, message: NA_RULES[path].explanation });
    }
    if (label.notApplicable !== undefined && label.notApplicable !== NA_RULES[path].reason) {
      issues.push({ path, message: `the n/a reason for this field is ${NA_RULES[path].reason}` });
    }
  }
  return issues;
}

function heredoc(key: string, text: string): string[] {
  let tag = "TEXT";
  while (text.split("\n").includes(tag)) tag += "X";
  return [`${key}: <<${tag}`, ...text.split("\n"), tag];
}

function labelLines(key: string, label: LabelValue): string[] {
  if (label.notApplicable !== undefined) return [`${key}: !n/a(${label.notApplicable})`];
  return label.values.map((term) => `${key}: ${term}`);
}

/** Serialize a draft to `.bimi` text in canonical section order. */
export function serializeDraft(draft: Draft): string {
  const blocks: string[][] = [];

  const method = ["[method]"];
  method.push(...labelLines("method-type", draft.method.methodTypes));
  method.push(...labelLines("ml-task", draft.method.mlTasks));
  method.push(...labelLines("dataset-type", draft.method.datasetTypes));
  method.push(...heredoc("description", draft.method.description));
  blocks.push(method);

  const pipeline = ["[pipeline]"];
  pipeline.push(...labelLines("location", draft.pipeline.locations));
  pipeline.push(...labelLines("model", draft.pipeline.models));
  pipeline.push(...heredoc("description", draft.pipeline.description));
  blocks.push(pipeline);

  const fairness = ["[fairness]"];
  fairness.push(...labelLines("composition", draft.fairness.compositions));
  fairness.push(...labelLines("guarantee", draft.fairness.guarantee));
  fairness.push(...labelLines("fairness-type", draft.fairness.fairnessTypes));
  fairness.push(...labelLines("fairness-definition", draft.fairness.fairnessDefinitions));
  fairness.push(...heredoc("description", draft.fairness.description));
  blocks.push(fairness);

  const implementation = ["[implementation]"];
  implementation.push(...labelLines("language", draft.implementation.language));
  implementation.push(...labelLines("package", draft.implementation.packages));
  implementation.push(...heredoc("description", draft.implementation.description));
  blocks.push(implementation);

  const useCase = ["[use-case]"];
  useCase.push(...labelLines("dataset", draft.useCases.datasets));
  useCase.push(...heredoc("description", draft.useCases.description));
  blocks.push(useCase);

  const metadata = ["[metadata]"];
  metadata.push(`name: ${draft.metadata.name}`);
  for (const author of draft.metadata.authors) metadata.push(`author: ${author}`);
  metadata.push(`version: ${draft.metadata.version}`);
  metadata.push(`license: ${draft.metadata.license}`);
  if (draft.metadata.proposedIn.trim() !== "")
    metadata.push(`proposed-in: ${draft.metadata.proposedIn}`);
  blocks.push(metadata);

  return blocks.map((lines) => lines.join("\n")).join("\n\n") + "\n";
}

/** Map server violations back to draft field paths used by the form. */
export function mapServerViolations(violations: { code: string; path: string; message: string }[]): Record<string, string[]> {
  const serverToDraft: Record<string, string> = {
    "method.method_types": "method.methodTypes",
    "method.ml_tasks": "method.mlTasks",
    "method.dataset_types": "method.datasetTypes",
    "method.description": "method.description",
    "pipeline.locations": "pipeline.locations",
    "pipeline.compatible_models": "pipeline.models",
    "pipeline.description": "pipeline.description",
    "fairness.compositions": "fairness.compositions",
    "fairness.guarantee": "fairness.guarantee",
    "fairness.fairness_types": "fairness.fairnessTypes",
    "fairness.fairness_definitions": "fairness.fairnessDefinitions",
    "fairness.description": "fairness.description",
    "implementation.language": "implementation.language",
    "implementation.packages": "implementation.packages",
    "implementation.description": "implementation.description",
    "use_cases.datasets": "useCases.datasets",
    "use_cases.description": "useCases.description",
    "metadata.name": "metadata.name",
    "metadata.authors": "metadata.authors",
    "metadata.version": "metadata.version",
    "metadata.license": "metadata.license",
    "metadata.proposed_in": "metadata.proposedIn",
  };
  const mapped: Record<string, string[]> = {};
  for (const violation of violations) {
    const field = serverToDraft[violation.path] ?? violation.path;
    (mapped[field] ??= []).push(`${violation.code}: ${violation.message}`);
  }
  return mapped;
}
