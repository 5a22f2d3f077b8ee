import { ApiClient, ApiError } from "./api";
import { numberCell } from "./detailPanel";
import type {
  ConsistencyReport,
  CorrelationReport,
  DomainsReport,
  EfficiencyReport,
  Report,
  ReportKind,
  TemporalReport,
} from "./types";

const SVGNS = "http://www.w3.org/2000/svg";
const KINDS: ReportKind[] = ["consistency", "correlation", "efficiency", "temporal", "domains"];

function emptyState(section: HTMLElement): void {
  const p = document.createElement("p");
  p.className = "empty";
  p.textContent = "no data yet";
  section.append(p);
}

function headerRow(table: HTMLTableElement, labels: string[]): void {
  const row = document.createElement("tr");
  for (const text of labels) {
    const th = document.createElement("th");
    th.textContent = text;
    row.append(th);
  }
  table.append(row);
}

/** Charts are orientation; the tables beside them carry the exact numbers.
 * Every numeric cell is the API document's value, stringified untouched. */
export class ReportsView {
  readonly root: HTMLElement;
  private readonly sections = new Map<ReportKind, HTMLElement>();
  private loaded = false;

  constructor(container: HTMLElement, private readonly api: ApiClient) {
    this.root = document.createElement("div");
    this.root.className = "reports-view";
    for (const kind of KINDS) {
      const section = document.createElement("section");
      section.dataset.report = kind;
      const heading = document.createElement("h3");
      heading.textContent = kind;
      section.append(heading);
      this.sections.set(kind, section);
      this.root.append(section);
    }
    container.append(this.root);
  }

  /** Fetch and render all report kinds; safe to call repeatedly. */
  async load(): Promise<void> {
    this.loaded = true;
    await Promise.all(KINDS.map((kind) => this.loadOne(kind)));
  }

  async ensureLoaded(): Promise<void> {
    if (!this.loaded) await this.load();
  }

  private async loadOne(kind: ReportKind): Promise<void> {
    const section = this.sections.get(kind)!;
    while (section.children.length > 1) section.removeChild(section.lastChild!);
    let report: Report | null;
    try {
      report = await this.api.report(kind);
    } catch (error) {
      const p = document.createElement("p");
      p.className = "error-banner";
      p.textContent =
        error instanceof ApiError
          ? `report failed with status ${error.status}`
          : `report failed: ${error instanceof Error ? error.message : String(error)}`;
      section.append(p);
      return;
    }
    if (report === null) {
      emptyState(section);
      return;
    }
    switch (report.mode) {
      case "consistency":
        this.renderConsistency(section, report);
        break;
      case "correlation":
        this.renderCorrelation(section, report);
        break;
      case "efficiency":
        this.renderEfficiency(section, report);
        break;
      case "temporal":
        this.renderTemporal(section, report);
        break;
      case "domains":
        this.renderDomains(section, report);
        break;
    }
  }

  private renderConsistency(section: HTMLElement, report: ConsistencyReport): void {
    const caption = document.createElement("p");
    caption.textContent = `dataset ordering agreement between ${report.models.join(" and ")}`;
    section.append(caption);
    const table = document.createElement("table");
    table.className = "consistency-table";
    headerRow(table, ["domain", "rho", "n", "dropped"]);
    for (const domain of Object.keys(report.domains).sort()) {
      const entry = report.domains[domain]!;
      const row = document.createElement("tr");
      row.dataset.domain = domain;
      const name = document.createElement("td");
      name.textContent = domain;
      const rho = document.createElement("td");
      if (entry.rho === null) rho.textContent = "undefined";
      else rho.append(numberCell(entry.rho));
      const n = document.createElement("td");
      n.append(numberCell(entry.n));
      const dropped = document.createElement("td");
      dropped.textContent = entry.dropped.join(", ") || "none";
      row.append(name, rho, n, dropped);
      table.append(row);
    }
    section.append(table);
  }

  private renderCorrelation(section: HTMLElement, report: CorrelationReport): void {
    const metrics = Object.keys(report.matrix).sort();
    const domains = [...new Set(metrics.flatMap((m) => Object.keys(report.matrix[m]!)))].sort();
    const table = document.createElement("table");
    table.className = "heatmap";
    headerRow(table, ["metric", ...domains]);
    for (const metric of metrics) {
      const row = document.createElement("tr");
      const name = document.createElement("td");
      name.textContent = metric;
      row.append(name);
      for (const domain of domains) {
        const cell = document.createElement("td");
        cell.className = "heatmap-cell";
        const value = report.matrix[metric]![domain];
        if (value === undefined) {
          cell.textContent = "";
        } else if (value === null) {
          cell.textContent = "n/a";
        } else {
          cell.append(numberCell(value));
          const heat = Math.min(Math.abs(value), 1);
          cell.style.backgroundColor =
            value >= 0 ? `rgba(46, 125, 50, ${heat * 0.5})` : `rgba(198, 40, 40, ${heat * 0.5})`;
        }
        row.append(cell);
      }
      table.append(row);
    }
    section.append(table);
  }

  private renderEfficiency(section: HTMLElement, report: EfficiencyReport): void {
    const width = 420;
    const height = 200;
    const pad = 30;
    const svg = document.createElementNS(SVGNS, "svg");
    svg.setAttribute("viewBox", `0 0 ${width} ${height}`);
    svg.setAttribute("class", "scatter");
    const maxSize = Math.max(...report.rows.map((r) => r.dataset_size), 1);
    const maxEff = Math.max(...report.rows.map((r) => r.data_efficiency), 0) || 1;
    for (const row of report.rows) {
      const circle = document.createElementNS(SVGNS, "circle");
      circle.setAttribute("cx", String(pad + (row.dataset_size / maxSize) * (width - 2 * pad)));
      circle.setAttribute(
        "cy",
        String(height - pad - (Math.max(row.data_efficiency, 0) / maxEff) * (height - 2 * pad)),
      );
      circle.setAttribute("r", "5");
      circle.setAttribute("class", "scatter-point");
      circle.dataset.dataset = row.dataset_id;
      const title = document.createElementNS(SVGNS, "title");
      title.textContent = `${row.dataset_id} (${row.base_model})`;
      circle.append(title);
      svg.append(circle);
    }
    section.append(svg);

    const table = document.createElement("table");
    table.className = "efficiency-table";
    headerRow(table, ["dataset", "base model", "delta", "size", "efficiency"]);
    for (const row of report.rows) {
      const tr = document.createElement("tr");
      const id = document.createElement("td");
      id.textContent = row.dataset_id;
      const model = document.createElement("td");
      model.textContent = row.base_model;
      const delta = document.createElement("td");
      delta.append(numberCell(row.delta));
      const size = document.createElement("td");
      size.append(numberCell(row.dataset_size));
      const efficiency = document.createElement("td");
      efficiency.append(numberCell(row.data_efficiency));
      tr.append(id, model, delta, size, efficiency);
      table.append(tr);
    }
    section.append(table);
    if (report.skipped > 0) {
      const note = document.createElement("p");
      note.className = "skip-note";
      note.append(`rows without both scores and a size: `, numberCell(report.skipped));
      section.append(note);
    }
  }

  private renderTemporal(section: HTMLElement, report: TemporalReport): void {
    const width = 420;
    const height = 160;
    const pad = 26;
    const svg = document.createElementNS(SVGNS, "svg");
    svg.setAttribute("viewBox", `0 0 ${width} ${height}`);
    svg.setAttribute("class", "temporal-chart");
    const points = report.series.filter((p) => p.value !== null);
    const maxValue = Math.max(...points.map((p) => p.value as number), 1);
    const step = report.series.length > 1 ? (width - 2 * pad) / (report.series.length - 1) : 0;
    const coords: string[] = [];
    report.series.forEach((point, index) => {
      if (point.value === null) return;
      const x = pad + index * step;
      const y = height - pad - (point.value / maxValue) * (height - 2 * pad);
      coords.push(`${x},${y}`);
      const circle = document.createElementNS(SVGNS, "circle");
      circle.setAttribute("cx", String(x));
      circle.setAttribute("cy", String(y));
      circle.setAttribute("r", "4");
      circle.setAttribute("class", "temporal-point");
      circle.dataset.quarter = point.quarter;
      svg.append(circle);
    });
    const line = document.createElementNS(SVGNS, "polyline");
    line.setAttribute("points", coords.join(" "));
    line.setAttribute("class", "temporal-line");
    svg.prepend(line);
    section.append(svg);

    const table = document.createElement("table");
    table.className = "temporal-table";
    headerRow(table, ["quarter", "value"]);
    for (const point of report.series) {
      const row = document.createElement("tr");
      const quarter = document.createElement("td");
      quarter.textContent = point.quarter;
      const value = document.createElement("td");
      if (point.value === null) value.textContent = "gap";
      else value.append(numberCell(point.value));
      row.append(quarter, value);
      table.append(row);
    }
    section.append(table);
  }

  private renderDomains(section: HTMLElement, report: DomainsReport): void {
    const list = document.createElement("div");
    list.className = "domain-bars";
    for (const domain of Object.keys(report.shares)) {
      const share = report.shares[domain]!;
      const row = document.createElement("div");
      row.className = "domain-bar-row";
      const label = document.createElement("span");
      label.className = "domain-bar-label";
      label.textContent = domain;
      const bar = document.createElement("div");
      bar.className = "domain-bar";
      bar.style.width = `${Math.min(share, 100)}%`;
      const value = document.createElement("span");
      value.append(numberCell(share), "%");
      row.append(label, bar, value);
      list.append(row);
    }
    section.append(list);
  }
}
