import type { EdgeDoc, NodeDetail } from "./types";

/** A numeric cell whose text is exactly the API's value. String() on a
 * parsed JSON number reproduces it digit for digit, so what the reviewer
 * reads is what the server sent. */
export function numberCell(value: number): HTMLElement {
  const span = document.createElement("span");
  span.dataset.value = String(value);
  span.textContent = String(value);
  return span;
}

function edgeLine(edge: EdgeDoc): HTMLElement {
  const item = document.createElement("li");
  const head = document.createElement("div");
  head.textContent = `${edge.source} to ${edge.target} (${edge.relationship}, ${edge.status}, confidence `;
  head.append(numberCell(edge.confidence));
  head.append(")");
  const evidence = document.createElement("pre");
  evidence.className = "evidence";
  evidence.textContent = edge.evidence.text;
  item.append(head, evidence);
  return item;
}

export class DetailPanel {
  readonly root: HTMLElement;

  constructor(container: HTMLElement) {
    this.root = document.createElement("div");
    this.root.className = "detail-panel";
    this.showMessage("select a node to inspect it");
    container.append(this.root);
  }

  private showMessage(text: string): void {
    this.root.textContent = "";
    const p = document.createElement("p");
    p.className = "empty";
    p.textContent = text;
    this.root.append(p);
  }

  showLoading(id: string): void {
    this.showMessage(`loading ${id} ...`);
  }

  showError(message: string): void {
    this.root.textContent = "";
    const p = document.createElement("p");
    p.className = "error-banner";
    p.textContent = message;
    this.root.append(p);
  }

  show(detail: NodeDetail): void {
    this.root.textContent = "";

    const heading = document.createElement("h3");
    heading.textContent = detail.node.id;
    this.root.append(heading);

    const meta = document.createElement("dl");
    meta.className = "node-meta";
    const rows: Array<[string, string]> = [
      ["domain", detail.node.domain],
      ["released", detail.node.released_at ?? "unknown"],
      ["downloads", detail.node.download_count === null ? "unknown" : String(detail.node.download_count)],
      ["tags", detail.node.tags.join(", ") || "none"],
    ];
    for (const [term, value] of rows) {
      const dt = document.createElement("dt");
      dt.textContent = term;
      const dd = document.createElement("dd");
      dd.textContent = value;
      meta.append(dt, dd);
    }
    this.root.append(meta);

    const contamination = document.createElement("div");
    contamination.className = detail.contamination.flagged
      ? "contamination flagged"
      : "contamination clean";
    if (detail.contamination.flagged) {
      const label = document.createElement("p");
      label.textContent = "contaminated via:";
      contamination.append(label);
      for (const path of detail.contamination.paths) {
        const code = document.createElement("code");
        code.className = "contamination-path";
        code.textContent = path.join(" -> ");
        contamination.append(code);
      }
    } else {
      contamination.textContent = "no benchmark contamination detected";
    }
    this.root.append(contamination);

    if (detail.scores) {
      const table = document.createElement("table");
      table.className = "scores";
      const header = document.createElement("tr");
      for (const text of ["metric", "mean", "median", "p10", "p90", "count"]) {
        const th = document.createElement("th");
        th.textContent = text;
        header.append(th);
      }
      table.append(header);
      for (const metric of Object.keys(detail.scores.per_metric).sort()) {
        const summary = detail.scores.per_metric[metric]!;
        const row = document.createElement("tr");
        const name = document.createElement("td");
        name.textContent = metric;
        row.append(name);
        for (const value of [summary.mean, summary.median, summary.p10, summary.p90, summary.count]) {
          const cell = document.createElement("td");
          cell.append(numberCell(value));
          row.append(cell);
        }
        table.append(row);
      }
      this.root.append(table);
    } else {
      const none = document.createElement("p");
      none.className = "empty";
      none.textContent = "no score profile stored";
      this.root.append(none);
    }

    for (const [label, edges] of [
      ["derived from", detail.in_edges],
      ["feeds into", detail.out_edges],
    ] as Array<[string, EdgeDoc[]]>) {
      const section = document.createElement("div");
      const h4 = document.createElement("h4");
      h4.textContent = label;
      section.append(h4);
      if (edges.length === 0) {
        const none = document.createElement("p");
        none.className = "empty";
        none.textContent = "none";
        section.append(none);
      } else {
        const list = document.createElement("ul");
        list.className = "edge-list";
        for (const edge of edges) list.append(edgeLine(edge));
        section.append(list);
      }
      this.root.append(section);
    }
  }
}
