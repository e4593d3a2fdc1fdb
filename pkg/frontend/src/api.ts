/** Thin typed client for the registry HTTP API. One base-URL setting. */

export interface RecordSummary {
  id: string;
  name: string;
  version: string;
  authors: string[];
  state: string;
  content_hash: string;
  created_at: string;
  updated_at: string;
  labels: Record<string, string[] | { not_applicable: string }>;
  score?: number;
}

export interface Violation {
  code: string;
  path: string;
  message: string;
}

export interface AuditReport {
  statuses: Record<string, string>;
  score: number | null;
  score_exact: string | null;
  applicable: boolean;
}

export interface CompareRow {
  facet: string;
  cells: string[];
  differs: boolean;
}

export interface CompareMatrix {
  sheets: string[];
  rows: CompareRow[];
}

export interface VocabTerm {
  id: string;
  display: string;
  description: string;
}

export interface Vocabulary {
  openness: "open" | "closed";
  terms: VocabTerm[];
  subsumption: [string, string][];
  order: string[] | null;
}

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string,
    public violations: Violation[] = [],
  ) {
    super(message);
    this.name = "ApiError";
  }
}

async function raiseForError(response: Response): Promise<void> {
  if (response.ok) return;
  let code = "E_HTTP";
  let message = `${response.status} ${response.statusText}`;
  let violations: Violation[] = [];
  try {
    const body = await response.json();
    if (body && typeof body.error === "string") {
      code = body.error;
      message = body.message ?? message;
      violations = body.violations ?? [];
    }
  } catch {
    // non-JSON error body; keep the HTTP-level message
  }
  throw new ApiError(response.status, code, message, violations);
}

export class ApiClient {
  constructor(
    private baseUrl: string,
    private fetchFn: typeof fetch = fetch,
  ) {
    this.baseUrl = baseUrl.replace(/\/+$/, "");
  }

  private url(path: string, params?: Record<string, string>): string {
    const query = params
      ? "?" +
        Object.entries(params)
          .map(([k, v]) => `${encodeURIComponent(k)}=${encodeURIComponent(v)}`)
          .join("&")
      : "";
    return `${this.baseUrl}/api/v1${path}${query}`;
  }

  async listSheets(options: { q?: string; state?: string; token?: string } = {}): Promise<
    RecordSummary[]
  > {
    const params: Record<string, string> = {};
    if (options.q) params.q = options.q;
    if (options.state) params.state = options.state;
    const headers: Record<string, string> = {};
    if (options.token) headers.Authorization = `Bearer ${options.token}`;
    const response = await this.fetchFn(this.url("/sheets", params), { headers });
    await raiseForError(response);
    return response.json();
  }

  async submit(sheetText: string): Promise<RecordSummary> {
    const response = await this.fetchFn(this.url("/sheets"), {
      method: "POST",
      headers: { "Content-Type": "text/plain; charset=utf-8" },
      body: sheetText,
    });
    await raiseForError(response);
    return response.json();
  }

  async getSheetText(id: string): Promise<string> {
    const response = await this.fetchFn(this.url(`/sheets/${encodeURIComponent(id)}`));
    await raiseForError(response);
    return response.text();
  }

  async audit(id: string): Promise<AuditReport> {
    const response = await this.fetchFn(this.url(`/sheets/${encodeURIComponent(id)}/audit`));
    await raiseForError(response);
    return response.json();
  }

  async transition(id: string, action: "accept" | "reject", token: string): Promise<RecordSummary> {
    const response = await this.fetchFn(this.url(`/sheets/${encodeURIComponent(id)}/transition`), {
      method: "POST",
      headers: {
        "Content-Type": "application/json",
        Authorization: `Bearer ${token}`,
      },
      body: JSON.stringify({ action }),
    });
    await raiseForError(response);
    return response.json();
  }

  async compare(ids: string[]): Promise<CompareMatrix> {
    const response = await this.fetchFn(this.url("/compare", { ids: ids.join(",") }));
    await raiseForError(response);
    return response.json();
  }

  async vocabularies(): Promise<Record<string, Vocabulary>> {
    const response = await this.fetchFn(this.url("/vocabularies"));
    await raiseForError(response);
    return response.json();
  }
}
