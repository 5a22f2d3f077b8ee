// In-memory stand-in for the review service, faithful to its contracts:
// queue sorted by ascending confidence, one decision per edge (retries get
// 409), pydantic-style 422 bodies, and cycle-blocked accepts answered with
// 200 + status rejected + a reason string.

import type {
  ConsistencyReport,
  CorrelationReport,
  DecisionRequest,
  DomainsReport,
  EdgeDoc,
  EdgeStatus,
  EfficiencyReport,
  GraphDocument,
  NodeDetail,
  NodeDoc,
  Report,
  ReportKind,
  ScoreProfileDoc,
  TemporalReport,
} from "../src/types";
import { edgeKey } from "../src/types";

export function node(
  id: string,
  domain: NodeDoc["domain"],
  released: string | null = "2024-01-01",
  downloads: number | null = null,
): NodeDoc {
  return {
    id,
    released_at: released,
    domain,
    display_name: id.split("/")[1] ?? id,
    download_count: downloads,
    tags: [],
  };
}

export function edge(
  source: string,
  target: string,
  relationship: string,
  confidence: number,
  status: EdgeStatus,
  evidenceText = "derived from the earlier release",
): EdgeDoc {
  return {
    source,
    target,
    relationship,
    confidence,
    evidence: { text: evidenceText, locator: "readme" },
    provenance: "extracted",
    status,
    timestamp_unverified: false,
    flag_reason: status === "flagged" ? "below_threshold" : null,
  };
}

export function chainGraphDoc(): GraphDocument {
  const ids = ["chain/a", "chain/b", "chain/c", "chain/d", "chain/e"];
  return {
    version: 1,
    review_threshold: 0.6,
    nodes: ids.map((id, i) => node(id, "Math", `2023-0${i + 1}-01`, (i + 1) * 100)),
    edges: ids.slice(1).map((id, i) => edge(ids[i]!, id, "subset", 0.9, "accepted")),
  };
}

export function leakageGraphDoc(): GraphDocument {
  return {
    version: 1,
    review_threshold: 0.6,
    nodes: [
      node("bench/math-suite", "Benchmark", "2024-01-01", 5000),
      node("bench/code-suite", "Benchmark", "2024-02-01", 4000),
      node("train/math-mix", "Math", "2024-06-01", 900),
      node("train/code-mix", "Code", "2024-07-01", 800),
      node("train/clean-set", "General", "2024-08-01", 700),
    ],
    edges: [
      edge("bench/math-suite", "train/math-mix", "subset", 0.95, "accepted"),
      edge("bench/code-suite", "train/code-mix", "subset", 0.9, "accepted"),
    ],
  };
}

export const LEAKAGE_CONTAMINATED: ReadonlyArray<[string, string[]]> = [
  ["train/math-mix", ["bench/math-suite", "train/math-mix"]],
  ["train/code-mix", ["bench/code-suite", "train/code-mix"]],
];

export function reviewGraphDoc(): GraphDocument {
  return {
    version: 1,
    review_threshold: 0.6,
    nodes: [
      node("ring/a", "Math", "2024-05-01", 1200),
      node("ring/b", "Math", "2024-05-01", 600),
      node("ring/c", "Math", "2024-05-01", 300),
      node("src/base", "General", "2023-01-01", 9000),
      node("mix/blend", "Mixed", "2024-08-01", 100),
    ],
    edges: [
      edge("ring/a", "ring/b", "subset", 0.9, "accepted"),
      edge("ring/b", "ring/c", "fusion", 0.95, "accepted"),
      edge("ring/c", "ring/a", "aggregation", 0.5, "flagged", "assembled from the ring corpus"),
      edge("src/base", "mix/blend", "distillation", 0.3, "flagged", "responses distilled\nfrom the base set"),
      edge("ring/b", "mix/blend", "subset", 0.2, "flagged", "includes a filtered slice"),
    ],
  };
}

export const CONSISTENCY_REPORT: ConsistencyReport = {
  mode: "consistency",
  models: ["Qwen2.5", "Qwen3"],
  domains: {
    Code: { domain: "Code", rho: 0.28063241106719367, n: 23, method: "spearman", dropped: [] },
    General: { domain: "General", rho: -0.3231225296442688, n: 23, method: "spearman", dropped: [] },
    Global: { domain: "Global", rho: 0.4397233201581028, n: 23, method: "spearman", dropped: [] },
    Math: { domain: "Math", rho: 0.9021739130434783, n: 23, method: "spearman", dropped: [] },
    Science: { domain: "Science", rho: 0.35375494071146246, n: 23, method: "spearman", dropped: [] },
  },
};

export const CORRELATION_REPORT: CorrelationReport = {
  mode: "correlation",
  matrix: {
    quality: { Math: 1.0, Code: -0.5 },
    length_chars: { Math: 0.2581988897471611, Code: null },
  },
};

export const EFFICIENCY_REPORT: EfficiencyReport = {
  mode: "efficiency",
  rows: [
    {
      dataset_id: "demo/a",
      base_model: "Qwen2.5",
      delta: 37.7,
      dataset_size: 558000,
      data_efficiency: 6.756272401433693e-5,
    },
    {
      dataset_id: "demo/b",
      base_model: "Qwen2.5",
      delta: 12.5,
      dataset_size: 20000,
      data_efficiency: 0.000625,
    },
  ],
  skipped: 1,
};

export const TEMPORAL_REPORT: TemporalReport = {
  mode: "temporal",
  series: [
    { quarter: "2023Q1", value: 2 },
    { quarter: "2023Q2", value: 0 },
    { quarter: "2023Q3", value: 1 },
  ],
  skipped: 0,
};

export const DOMAINS_REPORT: DomainsReport = {
  mode: "domains",
  shares: { Math: 34.3, Code: 30.6, General: 20.8, Science: 14.4 },
};

export function fullReports(): Partial<Record<ReportKind, Report>> {
  return {
    consistency: CONSISTENCY_REPORT,
    correlation: CORRELATION_REPORT,
    efficiency: EFFICIENCY_REPORT,
    temporal: TEMPORAL_REPORT,
    domains: DOMAINS_REPORT,
  };
}

export interface LoggedRequest {
  method: string;
  path: string;
  body: unknown;
}

interface FakeServerOptions {
  graphs?: Record<string, GraphDocument>;
  reports?: Partial<Record<ReportKind, Report>>;
  /** edge keys whose accept must answer 200 + rejected + this reason */
  cycleReasons?: Record<string, string>;
  contamination?: Record<string, ReadonlyArray<[string, string[]]>>;
  scores?: Record<string, ScoreProfileDoc>;
}

function json(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}

export class FakeServer {
  readonly log: LoggedRequest[] = [];
  /** every JSON body served, for pass-through audits */
  readonly served: unknown[] = [];
  readonly decided: string[] = [];
  readonly graphs: Record<string, GraphDocument>;

  constructor(private readonly options: FakeServerOptions = {}) {
    this.graphs = options.graphs ?? { main: reviewGraphDoc() };
  }

  fetch = async (input: string, init?: RequestInit): Promise<Response> => {
    const method = init?.method ?? "GET";
    const path = input.startsWith("http") ? new URL(input).pathname : input;
    const body = init?.body ? JSON.parse(String(init.body)) : null;
    this.log.push({ method, path, body });
    const response = this.route(method, decodeURI(path), body);
    const clone = response.clone();
    try {
      this.served.push(await clone.json());
    } catch {
      // 204s have no body
    }
    return response;
  };

  requests(method: string, prefix: string): LoggedRequest[] {
    return this.log.filter((r) => r.method === method && r.path.startsWith(prefix));
  }

  private route(method: string, path: string, body: unknown): Response {
    if (method === "GET" && path === "/api/health") {
      return json({ status: "ok", schema_version: 1 });
    }

    let match = path.match(/^\/api\/graph\/([^/]+)\/node\/(.+)$/);
    if (method === "GET" && match) {
      return this.nodeDetail(match[1]!, match[2]!);
    }

    match = path.match(/^\/api\/graph\/([^/]+)$/);
    if (method === "GET" && match) {
      const doc = this.graphs[match[1]!];
      return doc ? json(doc) : json({ error: "NotFound", detail: "unknown graph" }, 404);
    }

    match = path.match(/^\/api\/queue\/([^/]+)$/);
    if (method === "GET" && match) {
      const doc = this.graphs[match[1]!];
      if (!doc) return json({ error: "NotFound", detail: "unknown graph" }, 404);
      const queue = doc.edges
        .filter((e) => e.status === "flagged")
        .sort((a, b) => a.confidence - b.confidence || edgeKey(a).localeCompare(edgeKey(b)));
      return json(queue);
    }

    match = path.match(/^\/api\/queue\/([^/]+)\/decision$/);
    if (method === "POST" && match) {
      return this.decide(match[1]!, body as DecisionRequest);
    }

    match = path.match(/^\/api\/reports\/([^/]+)$/);
    if (method === "GET" && match) {
      const kind = match[1]! as ReportKind;
      const known = ["efficiency", "consistency", "correlation", "temporal", "domains"];
      if (!known.includes(kind)) {
        return json({ error: "NotFound", detail: "unknown report kind" }, 404);
      }
      const report = this.options.reports?.[kind];
      return report ? json(report) : new Response(null, { status: 204 });
    }

    return json({ error: "NotFound", detail: `no route for ${method} ${path}` }, 404);
  }

  private nodeDetail(graphName: string, nodeId: string): Response {
    const doc = this.graphs[graphName];
    if (!doc) return json({ error: "NotFound", detail: "unknown graph" }, 404);
    const found = doc.nodes.find((n) => n.id === nodeId);
    if (!found) return json({ error: "NotFound", detail: "unknown node" }, 404);
    const paths = (this.options.contamination?.[graphName] ?? [])
      .filter(([dataset]) => dataset === nodeId)
      .map(([, path]) => path);
    const detail: NodeDetail = {
      node: found,
      in_edges: doc.edges.filter((e) => e.target === nodeId),
      out_edges: doc.edges.filter((e) => e.source === nodeId),
      scores: this.options.scores?.[nodeId] ?? null,
      contamination: { flagged: paths.length > 0, paths },
    };
    return json(detail);
  }

  private decide(graphName: string, request: DecisionRequest): Response {
    const doc = this.graphs[graphName];
    if (!doc) return json({ error: "NotFound", detail: "unknown graph" }, 404);

    const problems: Array<{ loc: string[]; msg: string }> = [];
    for (const field of ["source", "target", "relationship", "reviewer"] as const) {
      const value = request?.[field];
      if (typeof value !== "string" || value.length === 0) {
        problems.push({ loc: ["body", field], msg: "String should have at least 1 character" });
      }
    }
    if (request?.verdict !== "accept" && request?.verdict !== "reject") {
      problems.push({ loc: ["body", "verdict"], msg: "Input should be 'accept' or 'reject'" });
    }
    if (problems.length > 0) return json({ detail: problems }, 422);

    const target = doc.edges.find(
      (e) =>
        e.source === request.source &&
        e.target === request.target &&
        e.relationship === request.relationship,
    );
    if (!target) return json({ error: "NotFound", detail: "no such edge" }, 404);
    if (target.status !== "flagged") {
      return json({ error: "InvalidState", detail: "edge already decided" }, 409);
    }

    const key = edgeKey(target);
    this.decided.push(key);
    const cycleReason = this.options.cycleReasons?.[key];
    let status: EdgeStatus;
    let reason: string | null = null;
    let provenance = target.provenance;
    if (request.verdict === "accept" && cycleReason) {
      status = "rejected";
      reason = cycleReason;
    } else if (request.verdict === "accept") {
      status = "accepted";
      provenance = "human_confirmed";
    } else {
      status = "rejected";
      provenance = "human_rejected_replacement";
    }
    const updated: EdgeDoc = {
      ...target,
      status,
      provenance,
      flag_reason: cycleReason && request.verdict === "accept" ? "cycle_on_accept" : null,
    };
    const index = doc.edges.indexOf(target);
    doc.edges[index] = updated;
    return json({
      status,
      reason,
      edge: updated,
      submitted_at: "2026-08-19T12:00:00+00:00",
    });
  }
}

/** Wrap a FakeServer fetch so decision POSTs wait on an external gate. */
export function gatedFetch(
  server: FakeServer,
): { fetch: (input: string, init?: RequestInit) => Promise<Response>; release: () => void } {
  let release: () => void = () => {};
  const gate = new Promise<void>((resolve) => {
    release = resolve;
  });
  const fetchImpl = async (input: string, init?: RequestInit): Promise<Response> => {
    if ((init?.method ?? "GET") === "POST") await gate;
    return server.fetch(input, init);
  };
  return { fetch: fetchImpl, release };
}

export function flush(): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, 0));
}

/** Collect String() forms of every number reachable in a JSON value. */
export function collectNumbers(value: unknown, into: Set<string>): void {
  if (typeof value === "number") {
    into.add(String(value));
  } else if (Array.isArray(value)) {
    for (const item of value) collectNumbers(item, into);
  } else if (value && typeof value === "object") {
    for (const item of Object.values(value)) collectNumbers(item, into);
  }
}
