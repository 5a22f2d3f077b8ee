import { computeLayout, type Point } from "./layout";
import { focusNode, visibleEdges, visibleNodes, type ViewState } from "./state";
import { edgeKey, type EdgeDoc, type GraphDocument, type NodeDoc } from "./types";

const SVGNS = "http://www.w3.org/2000/svg";
const WIDTH = 760;
const HEIGHT = 540;

export const DOMAIN_OPTIONS = [
  "Math",
  "Code",
  "General",
  "Science",
  "Mixed",
  "Benchmark",
  "Unknown",
];
export const STATUS_OPTIONS = ["accepted", "flagged", "rejected"];

export interface GraphViewOptions {
  onSelectNode?: (id: string) => void;
  onStateChange?: (state: ViewState) => void;
  onRetry?: () => void;
}

function nodeRadius(node: NodeDoc, maxCount: number): number {
  if (!node.download_count || maxCount <= 0) return 6;
  return 6 + 14 * Math.sqrt(node.download_count / maxCount);
}

/** Node-link view of one lineage graph. Layout is computed once per loaded
 * document; filters and decisions only restyle, they never re-run layout,
 * so the picture stays put while the reviewer works. */
export class GraphView {
  readonly root: HTMLElement;
  private readonly svg: SVGSVGElement;
  private readonly banner: HTMLElement;
  private readonly depthLabel: HTMLElement;
  private doc: GraphDocument | null = null;
  private contaminated = new Set<string>();
  private layout = new Map<string, Point>();

  constructor(
    container: HTMLElement,
    private readonly state: ViewState,
    private readonly options: GraphViewOptions = {},
  ) {
    this.root = document.createElement("div");
    this.root.className = "graph-view";

    const controls = document.createElement("div");
    controls.className = "graph-controls";
    controls.append(
      this.buildSelect("domain", "domain", DOMAIN_OPTIONS),
      this.buildSelect("status", "status", STATUS_OPTIONS),
      this.buildContaminationToggle(),
    );
    const depthControl = this.buildDepthSlider();
    this.depthLabel = depthControl.label;
    controls.append(depthControl.wrapper);

    this.banner = document.createElement("div");
    this.banner.className = "error-banner";
    this.banner.hidden = true;

    this.svg = document.createElementNS(SVGNS, "svg");
    this.svg.setAttribute("viewBox", `0 0 ${WIDTH} ${HEIGHT}`);
    this.svg.setAttribute("class", "graph-canvas");

    this.root.append(controls, this.banner, this.svg);
    container.append(this.root);
  }

  private buildSelect(name: string, labelText: string, options: string[]): HTMLElement {
    const label = document.createElement("label");
    label.append(labelText + " ");
    const select = document.createElement("select");
    select.dataset.control = name;
    const anyOption = document.createElement("option");
    anyOption.value = "";
    anyOption.textContent = "all";
    select.append(anyOption);
    for (const value of options) {
      const option = document.createElement("option");
      option.value = value;
      option.textContent = value;
      select.append(option);
    }
    select.addEventListener("change", () => {
      const value = select.value === "" ? null : select.value;
      if (name === "domain") this.state.filter.domain = value;
      else this.state.filter.status = value;
      this.changed();
    });
    label.append(select);
    return label;
  }

  private buildContaminationToggle(): HTMLElement {
    const label = document.createElement("label");
    const box = document.createElement("input");
    box.type = "checkbox";
    box.dataset.control = "contamination";
    box.addEventListener("change", () => {
      this.state.filter.contaminationOnly = box.checked;
      this.changed();
    });
    label.append(box, " contaminated only");
    return label;
  }

  private buildDepthSlider(): { wrapper: HTMLElement; label: HTMLElement } {
    const wrapper = document.createElement("label");
    wrapper.append("depth ");
    const slider = document.createElement("input");
    slider.type = "range";
    slider.min = "0";
    slider.max = "6";
    slider.value = "0";
    slider.dataset.control = "depth";
    const label = document.createElement("span");
    label.dataset.control = "depth-label";
    label.textContent = "all";
    slider.addEventListener("input", () => {
      this.state.depth = Number(slider.value);
      label.textContent = this.state.depth === 0 ? "all" : String(this.state.depth);
      this.changed();
    });
    wrapper.append(slider, " ", label);
    return { wrapper, label };
  }

  private changed(): void {
    this.options.onStateChange?.(this.state);
    this.render();
  }

  setData(doc: GraphDocument, contaminated: Set<string>): void {
    this.doc = doc;
    this.contaminated = contaminated;
    this.layout = computeLayout(
      doc.nodes.map((n) => n.id),
      doc.edges.map((e) => [e.source, e.target]),
      WIDTH,
      HEIGHT,
      this.state.graphName,
    );
    this.clearError();
    this.render();
  }

  /** Swap one edge for the server's post-decision version and repaint.
   * No refetch, no layout change: the decision response carries the
   * complete new edge state. */
  restyleEdge(edge: EdgeDoc): void {
    if (!this.doc) return;
    const key = edgeKey(edge);
    const index = this.doc.edges.findIndex((e) => edgeKey(e) === key);
    if (index >= 0) this.doc.edges[index] = edge;
    else this.doc.edges.push(edge);
    this.render();
  }

  focus(id: string | null): void {
    if (!this.doc) return;
    focusNode(this.state, this.doc, id);
    this.render();
  }

  showError(message: string): void {
    this.banner.hidden = false;
    this.banner.textContent = "";
    const text = document.createElement("span");
    text.textContent = message;
    const retry = document.createElement("button");
    retry.textContent = "retry";
    retry.addEventListener("click", () => this.options.onRetry?.());
    this.banner.append(text, " ", retry);
  }

  clearError(): void {
    this.banner.hidden = true;
    this.banner.textContent = "";
  }

  render(): void {
    if (!this.doc) return;
    const doc = this.doc;
    while (this.svg.firstChild) this.svg.removeChild(this.svg.firstChild);

    const visible = visibleNodes(doc, this.contaminated, this.state);
    const edges = visibleEdges(doc, visible, this.state);
    const maxCount = Math.max(0, ...doc.nodes.map((n) => n.download_count ?? 0));

    for (const edge of edges) {
      const from = this.layout.get(edge.source);
      const to = this.layout.get(edge.target);
      if (!from || !to) continue;
      const line = document.createElementNS(SVGNS, "line");
      line.setAttribute("x1", String(from.x));
      line.setAttribute("y1", String(from.y));
      line.setAttribute("x2", String(to.x));
      line.setAttribute("y2", String(to.y));
      line.setAttribute("class", `edge status-${edge.status}`);
      line.dataset.edgeKey = edgeKey(edge);
      const title = document.createElementNS(SVGNS, "title");
      title.textContent = `${edge.source} to ${edge.target} (${edge.relationship}, ${edge.status})`;
      line.append(title);
      this.svg.append(line);
    }

    for (const node of doc.nodes) {
      if (!visible.has(node.id)) continue;
      const point = this.layout.get(node.id);
      if (!point) continue;
      const circle = document.createElementNS(SVGNS, "circle");
      circle.setAttribute("cx", String(point.x));
      circle.setAttribute("cy", String(point.y));
      circle.setAttribute("r", String(nodeRadius(node, maxCount)));
      const classes = ["node"];
      if (this.contaminated.has(node.id)) classes.push("contaminated");
      if (this.state.focused === node.id) classes.push("focused");
      circle.setAttribute("class", classes.join(" "));
      circle.dataset.nodeId = node.id;
      const title = document.createElementNS(SVGNS, "title");
      title.textContent = this.contaminated.has(node.id)
        ? `${node.id} (contaminated)`
        : node.id;
      circle.append(title);
      circle.addEventListener("click", () => {
        this.focus(node.id);
        this.options.onSelectNode?.(node.id);
      });
      this.svg.append(circle);

      const label = document.createElementNS(SVGNS, "text");
      label.setAttribute("x", String(point.x + 10));
      label.setAttribute("y", String(point.y + 4));
      label.setAttribute("class", "node-label");
      label.textContent = node.display_name || node.id;
      this.svg.append(label);
    }
  }
}
