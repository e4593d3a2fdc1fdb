/**
 * Authoring form model. Field descriptors are derived from the server's
 * vocabulary dump: closed vocabularies become fixed-choice inputs (the client
 * cannot type novel values), open ones become tag inputs with suggestions.
 */

import { ApiClient, ApiError, RecordSummary, Vocabulary } from "./api.js";
import { checkDraft, Draft, FieldIssue, mapServerViolations, naAllowed, NA_RULES, serializeDraft } from "./sheet.js";

export interface FieldDescriptor {
  path: string;
  vocabId: string;
  label: string;
  /** "choice": closed vocabulary, selection only. "tags": open, free entry with suggestions. */
  input: "choice" | "tags";
  options: string[];
  maxValues: number | null;
  naReason: string | null;
}

const LABEL_FIELDS: [string, string, string, number | null][] = [
  ["method.methodTypes", "method-type", "Method type", null],
  ["method.mlTasks", "ml-task", "ML task", null],
  ["method.datasetTypes", "dataset-type", "Dataset type", null],
  ["pipeline.locations", "pipeline-location", "Pipeline location", null],
  ["pipeline.models", "model", "Compatible model", null],
  ["fairness.compositions", "composition", "Sensitive-attribute composition", null],
  ["fairness.guarantee", "guarantee", "Fairness guarantee", 1],
  ["fairness.fairnessTypes", "fairness-type", "Fairness type", null],
  ["fairness.fairnessDefinitions", "fairness-definition", "Fairness definition", null],
  ["implementation.language", "language", "Language", 1],
  ["implementation.packages", "package", "Package", null],
  ["useCases.datasets", "dataset", "Evaluated dataset", null],
];

export function buildFieldDescriptors(
  vocabularies: Record<string, Vocabulary>,
): FieldDescriptor[] {
  return LABEL_FIELDS.map(([path, vocabId, label, maxValues]) => {
    const vocab = vocabularies[vocabId];
    return {
      path,
      vocabId,
      label,
      input: vocab.openness === "closed" ? "choice" : "tags",
      options: vocab.terms.map((term) => term.id),
      maxValues,
      naReason: NA_RULES[path]?.reason ?? null,
    };
  });
}

/** Whether the n/a toggle for a field should be offered right now. */
export function naToggleVisible(descriptor: FieldDescriptor, draft: Draft): boolean {
  return descriptor.naReason !== null && naAllowed(descriptor.path, draft.pipeline.locations.values);
}

export type SubmitResult =
  | { kind: "accepted"; record: RecordSummary }
  | { kind: "blocked"; issues: FieldIssue[] }
  | { kind: "rejected"; fieldErrors: Record<string, string[]>; message: string }
  | { kind: "conflict"; message: string };

/**
 * Full submit flow: client-side pre-flight, serialization, POST, and mapping
 * of any server violations back onto form fields.
 */
export async function submitDraft(
  api: ApiClient,
  draft: Draft,
  vocabularies: Record<string, Vocabulary>,
): Promise<SubmitResult> {
  const closedTerms: Record<string, string[]> = {};
  for (const [vocabId, vocab] of Object.entries(vocabularies)) {
    if (vocab.openness === "closed") closedTerms[vocabId] = vocab.terms.map((t) => t.id);
  }
  const issues = checkDraft(draft, closedTerms);
  if (issues.length > 0) return { kind: "blocked", issues };
  try {
    const record = await api.submit(serializeDraft(draft));
    return { kind: "accepted", record };
  } catch (error) {
    if (error instanceof ApiError && error.code === "E_VALIDATION") {
      return {
        kind: "rejected",
        fieldErrors: mapServerViolations(error.violations),
        message: error.message,
      };
    }
    if (error instanceof ApiError && error.status === 409) {
      return { kind: "conflict", message: error.message };
    }
    throw error;
  }
}
