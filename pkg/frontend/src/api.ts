import type {
  DecisionRequest,
  DecisionResponse,
  EdgeDoc,
  GraphDocument,
  Health,
  NodeDetail,
  Report,
  ReportKind,
} from "./types";

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

interface ErrorPayload {
  error?: string;
  detail?: unknown;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly payload: ErrorPayload | null,
  ) {
    super(
      payload && typeof payload.detail === "string"
        ? payload.detail
        : `request failed with status ${status}`,
    );
    this.name = "ApiError";
  }
}

/** Thin typed client over the review API. Every method returns parsed JSON
 * untouched; non-2xx responses become ApiError with the body attached. */
export class ApiClient {
  private readonly fetchImpl: FetchLike;

  constructor(fetchImpl?: FetchLike, private readonly base = "") {
    this.fetchImpl = fetchImpl ?? ((input, init) => fetch(input, init));
  }

  private async request<T>(path: string, init?: RequestInit): Promise<T | null> {
    const response = await this.fetchImpl(this.base + path, init);
    if (response.status === 204) return null;
    let body: unknown = null;
    try {
      body = await response.json();
    } catch {
      body = null;
    }
    if (!response.ok) throw new ApiError(response.status, body as ErrorPayload | null);
    return body as T;
  }

  health(): Promise<Health> {
    return this.request<Health>("/api/health") as Promise<Health>;
  }

  graph(name: string): Promise<GraphDocument> {
    return this.request<GraphDocument>(`/api/graph/${encodeURI(name)}`) as Promise<GraphDocument>;
  }

  node(name: string, id: string): Promise<NodeDetail> {
    // ids look like owner/name; encodeURI keeps the slash the route expects
    return this.request<NodeDetail>(
      `/api/graph/${encodeURI(name)}/node/${encodeURI(id)}`,
    ) as Promise<NodeDetail>;
  }

  queue(name: string): Promise<EdgeDoc[]> {
    return this.request<EdgeDoc[]>(`/api/queue/${encodeURI(name)}`) as Promise<EdgeDoc[]>;
  }

  decide(name: string, decision: DecisionRequest): Promise<DecisionResponse> {
    return this.request<DecisionResponse>(`/api/queue/${encodeURI(name)}/decision`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(decision),
    }) as Promise<DecisionResponse>;
  }

  /** null means 204: the store has no records for this report yet. */
  report(kind: ReportKind): Promise<Report | null> {
    return this.request<Report>(`/api/reports/${kind}`);
  }
}

/** Which nodes of a loaded graph are contaminated, according to the server.
 * The node-detail endpoint is the only source of contamination verdicts;
 * the UI never walks the graph itself. */
export async function contaminatedNodes(
  api: ApiClient,
  graphName: string,
  doc: GraphDocument,
): Promise<Set<string>> {
  const details = await Promise.all(doc.nodes.map((n) => api.node(graphName, n.id)));
  const flagged = new Set<string>();
  for (const detail of details) {
    if (detail.contamination.flagged) flagged.add(detail.node.id);
  }
  return flagged;
}
