/** Thin typed client for the annotation service. The service is the source
 * of truth; this module never caches anything beyond the session id. */

import { LabelInfo, NextTaskResponse, Progress, SearchResult } from "./types.js";

export class ApiError extends Error {
  constructor(
    message: string,
    public status: number,
    public kind: string,
  ) {
    super(message);
  }
}

export interface SubmitPayload {
  label: string;
  evidence_quote?: string | null;
  comment: string;
  revision: number;
}

async function parseError(res: Response): Promise<ApiError> {
  let message = `request failed (${res.status})`;
  let kind = "http_error";
  try {
    const body = (await res.json()) as { error?: string; kind?: string };
    if (body.error) message = body.error;
    if (body.kind) kind = body.kind;
  } catch {
    /* non-JSON error body */
  }
  return new ApiError(message, res.status, kind);
}

export class AnnotationApi {
  constructor(
    private baseUrl: string = "",
    private session: string = randomSession(),
    private fetchImpl: typeof fetch = fetch,
  ) {}

  get sessionId(): string {
    return this.session;
  }

  private headers(): Record<string, string> {
    return { "X-Session": this.session, "Content-Type": "application/json" };
  }

  private async get<T>(path: string): Promise<T> {
    const res = await this.fetchImpl(this.baseUrl + path, { headers: this.headers() });
    if (!res.ok) throw await parseError(res);
    return (await res.json()) as T;
  }

  nextTask(): Promise<NextTaskResponse> {
    return this.get<NextTaskResponse>("/tasks/next");
  }

  search(summaryId: string, query: string): Promise<{ results: SearchResult[] }> {
    const q = encodeURIComponent(query);
    return this.get<{ results: SearchResult[] }>(
      `/reports/${encodeURIComponent(summaryId)}/search?q=${q}`,
    );
  }

  progress(): Promise<Progress> {
    return this.get<Progress>("/progress");
  }

  labels(): Promise<{ labels: LabelInfo[] }> {
    return this.get<{ labels: LabelInfo[] }>("/labels");
  }

  async submit(taskId: number, payload: SubmitPayload): Promise<{ ok: boolean; revision: number }> {
    const res = await this.fetchImpl(this.baseUrl + `/tasks/${taskId}/annotation`, {
      method: "POST",
      headers: this.headers(),
      body: JSON.stringify(payload),
    });
    if (!res.ok) throw await parseError(res);
    return (await res.json()) as { ok: boolean; revision: number };
  }

  exportUrl(): string {
    return this.baseUrl + "/export.csv";
  }
}

export function randomSession(): string {
  const bytes = new Uint8Array(8);
  crypto.getRandomValues(bytes);
  return (
    "ui-" +
    Array.from(bytes)
      .map((b) => b.toString(16).padStart(2, "0"))
      .join("")
  );
}
