import { ApiClient, ApiError } from "./api";
import { numberCell } from "./detailPanel";
import type { EdgeDoc, GraphDocument } from "./types";

export interface ReviewPanelOptions {
  onEdgeDecided?: (edge: EdgeDoc) => void;
  onQueueLoaded?: (queue: EdgeDoc[]) => void;
}

function describeValidation(payload: { detail?: unknown } | null): string {
  const detail = payload?.detail;
  if (Array.isArray(detail)) {
    return detail
      .map((item) => {
        const loc = Array.isArray(item?.loc) ? item.loc.join(".") : "";
        const msg = typeof item?.msg === "string" ? item.msg : JSON.stringify(item);
        return loc ? `${loc}: ${msg}` : msg;
      })
      .join("; ");
  }
  if (typeof detail === "string") return detail;
  return "request rejected as malformed";
}

/** Queue-driven review workflow. The panel never guesses an outcome: an
 * edge restyles only from the edge document inside a 200 response, and
 * any error leaves the graph exactly as it was. */
export class ReviewPanel {
  readonly root: HTMLElement;
  private readonly card: HTMLElement;
  private readonly notice: HTMLElement;
  private readonly validation: HTMLElement;
  private readonly reviewerInput: HTMLInputElement;
  private readonly noteInput: HTMLTextAreaElement;
  private readonly acceptButton: HTMLButtonElement;
  private readonly rejectButton: HTMLButtonElement;
  private readonly positionLabel: HTMLElement;

  private queue: EdgeDoc[] = [];
  private cursor = 0;
  private busy = false;
  private graphName = "";
  private doc: GraphDocument | null = null;

  constructor(
    container: HTMLElement,
    private readonly api: ApiClient,
    private readonly options: ReviewPanelOptions = {},
  ) {
    this.root = document.createElement("div");
    this.root.className = "review-panel";

    const header = document.createElement("div");
    header.className = "queue-header";
    this.positionLabel = document.createElement("span");
    this.positionLabel.className = "queue-position";
    const prev = document.createElement("button");
    prev.textContent = "prev";
    prev.dataset.action = "prev";
    prev.addEventListener("click", () => this.move(-1));
    const next = document.createElement("button");
    next.textContent = "next";
    next.dataset.action = "next";
    next.addEventListener("click", () => this.move(1));
    header.append(prev, this.positionLabel, next);

    this.card = document.createElement("div");
    this.card.className = "queue-card";

    this.reviewerInput = document.createElement("input");
    this.reviewerInput.name = "reviewer";
    this.reviewerInput.placeholder = "reviewer";
    this.noteInput = document.createElement("textarea");
    this.noteInput.name = "note";
    this.noteInput.placeholder = "note (optional)";

    this.validation = document.createElement("p");
    this.validation.className = "validation";
    this.validation.hidden = true;

    this.acceptButton = document.createElement("button");
    this.acceptButton.textContent = "accept";
    this.acceptButton.dataset.action = "accept";
    this.acceptButton.addEventListener("click", () => void this.submit("accept"));
    this.rejectButton = document.createElement("button");
    this.rejectButton.textContent = "reject";
    this.rejectButton.dataset.action = "reject";
    this.rejectButton.addEventListener("click", () => void this.submit("reject"));

    const form = document.createElement("div");
    form.className = "decision-form";
    form.append(this.reviewerInput, this.noteInput, this.validation, this.acceptButton, this.rejectButton);

    this.notice = document.createElement("p");
    this.notice.className = "notice";
    this.notice.hidden = true;

    this.root.append(header, this.card, form, this.notice);
    container.append(this.root);
    this.render();
  }

  get inFlight(): boolean {
    return this.busy;
  }

  currentEdge(): EdgeDoc | null {
    return this.queue[this.cursor] ?? null;
  }

  async load(graphName: string, doc: GraphDocument | null): Promise<void> {
    this.graphName = graphName;
    this.doc = doc;
    this.queue = await this.api.queue(graphName);
    this.cursor = 0;
    this.options.onQueueLoaded?.(this.queue);
    this.render();
  }

  private move(delta: number): void {
    if (this.queue.length === 0) return;
    this.cursor = Math.min(Math.max(this.cursor + delta, 0), this.queue.length - 1);
    this.render();
  }

  private async refetchQueue(): Promise<void> {
    this.queue = await this.api.queue(this.graphName);
    if (this.cursor >= this.queue.length) {
      this.cursor = Math.max(this.queue.length - 1, 0);
    }
    this.options.onQueueLoaded?.(this.queue);
    this.render();
  }

  private async submit(verdict: "accept" | "reject"): Promise<void> {
    const edge = this.currentEdge();
    if (!edge || this.busy) return;
    this.busy = true;
    this.setButtonsEnabled(false);
    this.validation.hidden = true;
    try {
      const response = await this.api.decide(this.graphName, {
        source: edge.source,
        target: edge.target,
        relationship: edge.relationship,
        verdict,
        reviewer: this.reviewerInput.value,
        note: this.noteInput.value,
      });
      // the server's reason is shown verbatim; a cycle-blocked accept
      // comes back as status rejected with the reason naming the cycle
      this.showNotice(
        response.reason ? `${response.status}: ${response.reason}` : response.status,
        "result",
      );
      this.options.onEdgeDecided?.(response.edge);
      await this.refetchQueue();
    } catch (error) {
      if (error instanceof ApiError && error.status === 409) {
        this.showNotice("already decided", "warn");
        await this.refetchQueue();
      } else if (error instanceof ApiError && error.status === 422) {
        this.validation.hidden = false;
        this.validation.textContent = describeValidation(error.payload);
      } else {
        const message = error instanceof Error ? error.message : String(error);
        this.showNotice(`decision failed: ${message}`, "error");
      }
    } finally {
      this.busy = false;
      this.setButtonsEnabled(true);
    }
  }

  private setButtonsEnabled(enabled: boolean): void {
    this.acceptButton.disabled = !enabled;
    this.rejectButton.disabled = !enabled;
  }

  private showNotice(text: string, kind: "result" | "warn" | "error"): void {
    this.notice.hidden = false;
    this.notice.textContent = text;
    this.notice.className = `notice notice-${kind}`;
  }

  private nodeMeta(id: string): string {
    const node = this.doc?.nodes.find((n) => n.id === id);
    if (!node) return id;
    return `${node.domain}, released ${node.released_at ?? "unknown"}`;
  }

  private render(): void {
    this.positionLabel.textContent =
      this.queue.length === 0 ? "queue empty" : `${this.cursor + 1} / ${this.queue.length}`;
    this.card.textContent = "";
    const edge = this.currentEdge();
    if (!edge) {
      const empty = document.createElement("p");
      empty.className = "empty";
      empty.textContent = "nothing waiting for review";
      this.card.append(empty);
      return;
    }

    const heading = document.createElement("h3");
    heading.textContent = `${edge.source} to ${edge.target}`;
    const relationship = document.createElement("p");
    relationship.textContent = `claimed relationship: ${edge.relationship}`;
    const confidence = document.createElement("p");
    confidence.append("confidence: ", numberCell(edge.confidence));
    if (edge.flag_reason) {
      confidence.append(` (flagged: ${edge.flag_reason})`);
    }
    const sourceMeta = document.createElement("p");
    sourceMeta.className = "edge-meta";
    sourceMeta.textContent = `source: ${this.nodeMeta(edge.source)}`;
    const targetMeta = document.createElement("p");
    targetMeta.className = "edge-meta";
    targetMeta.textContent = `target: ${this.nodeMeta(edge.target)}`;

    const evidenceLabel = document.createElement("p");
    evidenceLabel.textContent = `evidence (${edge.evidence.locator || "no locator"}):`;
    const evidence = document.createElement("pre");
    evidence.className = "evidence";
    evidence.textContent = edge.evidence.text;

    this.card.append(
      heading,
      relationship,
      confidence,
      sourceMeta,
      targetMeta,
      evidenceLabel,
      evidence,
    );
  }
}
