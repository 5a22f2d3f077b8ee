import type { EdgeDoc, GraphDocument } from "./types";

export interface Filter {
  domain: string | null;
  status: string | null;
  contaminationOnly: boolean;
}

export interface ViewState {
  graphName: string;
  focused: string | null;
  /** undirected hops around the focused node; 0 = unlimited */
  depth: number;
  filter: Filter;
  queueCursor: number;
}

export function createState(graphName: string): ViewState {
  return {
    graphName,
    focused: null,
    depth: 0,
    filter: { domain: null, status: null, contaminationOnly: false },
    queueCursor: 0,
  };
}

/** The focused node must exist in the loaded graph; focusing anything else
 * is a programming error, not a user input to tolerate. */
export function focusNode(state: ViewState, doc: GraphDocument, id: string | null): void {
  if (id !== null && !doc.nodes.some((n) => n.id === id)) {
    throw new Error(`cannot focus ${id}: not in the loaded graph`);
  }
  state.focused = id;
}

function undirectedAdjacency(doc: GraphDocument): Map<string, Set<string>> {
  const adjacency = new Map<string, Set<string>>();
  for (const node of doc.nodes) adjacency.set(node.id, new Set());
  for (const edge of doc.edges) {
    adjacency.get(edge.source)?.add(edge.target);
    adjacency.get(edge.target)?.add(edge.source);
  }
  return adjacency;
}

/** Node ids within `depth` undirected hops of `center`, center included. */
export function neighborhood(doc: GraphDocument, center: string, depth: number): Set<string> {
  const adjacency = undirectedAdjacency(doc);
  const seen = new Set([center]);
  let frontier = [center];
  for (let hop = 0; hop < depth && frontier.length > 0; hop++) {
    const next: string[] = [];
    for (const id of frontier) {
      for (const neighbor of adjacency.get(id) ?? []) {
        if (!seen.has(neighbor)) {
          seen.add(neighbor);
          next.push(neighbor);
        }
      }
    }
    frontier = next;
  }
  return seen;
}

/** Filters compose conjunctively: a node is visible only if it passes the
 * domain filter AND the contamination filter AND the depth window. */
export function visibleNodes(
  doc: GraphDocument,
  contaminated: Set<string>,
  state: ViewState,
): Set<string> {
  let window: Set<string> | null = null;
  if (state.focused !== null && state.depth > 0) {
    window = neighborhood(doc, state.focused, state.depth);
  }
  const visible = new Set<string>();
  for (const node of doc.nodes) {
    if (state.filter.domain !== null && node.domain !== state.filter.domain) continue;
    if (state.filter.contaminationOnly && !contaminated.has(node.id)) continue;
    if (window !== null && !window.has(node.id)) continue;
    visible.add(node.id);
  }
  return visible;
}

/** An edge is visible only when both endpoints are visible and it passes
 * the status filter. */
export function visibleEdges(
  doc: GraphDocument,
  visible: Set<string>,
  state: ViewState,
): EdgeDoc[] {
  return doc.edges.filter(
    (edge) =>
      visible.has(edge.source) &&
      visible.has(edge.target) &&
      (state.filter.status === null || edge.status === state.filter.status),
  );
}
