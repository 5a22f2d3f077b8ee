// Mirrors of the JSON documents served by the review API. Field names and
// nullability follow the published schemas exactly; the UI adds nothing.

export type Domain =
  | "Math"
  | "Code"
  | "General"
  | "Science"
  | "Mixed"
  | "Benchmark"
  | "Unknown";

export type EdgeStatus = "accepted" | "flagged" | "rejected";

export interface NodeDoc {
  id: string;
  released_at: string | null;
  domain: Domain;
  display_name: string;
  download_count: number | null;
  tags: string[];
}

export interface EvidenceDoc {
  text: string;
  locator: string;
}

export interface EdgeDoc {
  source: string;
  target: string;
  relationship: string;
  confidence: number;
  evidence: EvidenceDoc;
  provenance: string;
  status: EdgeStatus;
  timestamp_unverified: boolean;
  flag_reason: string | null;
}

export interface GraphDocument {
  version: number;
  review_threshold: number;
  nodes: NodeDoc[];
  edges: EdgeDoc[];
}

export interface MetricSummaryDoc {
  mean: number;
  median: number;
  p10: number;
  p90: number;
  count: number;
}

export interface ScoreProfileDoc {
  dataset_id: string;
  template_hash: string;
  per_metric: Record<string, MetricSummaryDoc>;
  sample_scores: Record<string, Record<string, number>> | null;
}

export interface ContaminationDoc {
  flagged: boolean;
  paths: string[][];
}

export interface NodeDetail {
  node: NodeDoc;
  in_edges: EdgeDoc[];
  out_edges: EdgeDoc[];
  scores: ScoreProfileDoc | null;
  contamination: ContaminationDoc;
}

export interface DecisionRequest {
  source: string;
  target: string;
  relationship: string;
  verdict: "accept" | "reject";
  reviewer: string;
  note: string;
}

export interface DecisionResponse {
  status: EdgeStatus;
  reason: string | null;
  edge: EdgeDoc;
  submitted_at: string;
}

export interface ConsistencyEntry {
  domain: string;
  rho: number | null;
  n: number;
  method: string;
  dropped: string[];
}

export interface ConsistencyReport {
  mode: "consistency";
  models: string[];
  domains: Record<string, ConsistencyEntry>;
}

export interface EfficiencyRow {
  dataset_id: string;
  base_model: string;
  delta: number;
  dataset_size: number;
  data_efficiency: number;
}

export interface EfficiencyReport {
  mode: "efficiency";
  rows: EfficiencyRow[];
  skipped: number;
}

export interface CorrelationReport {
  mode: "correlation";
  matrix: Record<string, Record<string, number | null>>;
}

export interface TemporalPoint {
  quarter: string;
  value: number | null;
}

export interface TemporalReport {
  mode: "temporal";
  series: TemporalPoint[];
  skipped: number;
}

export interface DomainsReport {
  mode: "domains";
  shares: Record<string, number>;
}

export type Report =
  | ConsistencyReport
  | EfficiencyReport
  | CorrelationReport
  | TemporalReport
  | DomainsReport;

export type ReportKind =
  | "efficiency"
  | "consistency"
  | "correlation"
  | "temporal"
  | "domains";

export interface Health {
  status: string;
  schema_version: number;
}

export function edgeKey(edge: Pick<EdgeDoc, "source" | "target" | "relationship">): string {
  // dataset ids never contain whitespace, so spaces are safe separators
  return `${edge.source} ${edge.target} ${edge.relationship}`;
}
