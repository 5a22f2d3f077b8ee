// Decision round-trip through the whole app in a headless DOM: accept a
// flagged edge, see the 200, watch the edge restyle with no graph reload,
// and confirm a fresh GET of the graph reports the new status.

import { beforeEach, describe, expect, it, vi } from "vitest";

import { initApp } from "../src/main";
import { edgeKey } from "../src/types";
import { FakeServer, reviewGraphDoc } from "./fixtures";

beforeEach(() => {
  document.body.textContent = "";
});

describe("decision round-trip", () => {
  it("accept: 200, restyle in place, fresh GET shows accepted", async () => {
    const started = performance.now();
    const server = new FakeServer({ graphs: { main: reviewGraphDoc() }, reports: {} });
    const root = document.createElement("div");
    document.body.append(root);
    const app = initApp(root, server.fetch, "main");
    await app.loadGraph("main");

    // lowest-confidence flagged edge is first in the queue
    const edge = app.reviewPanel.currentEdge()!;
    expect(edge.status).toBe("flagged");
    const key = edgeKey(edge);
    const lineFor = () =>
      [...root.querySelectorAll<SVGLineElement>("line.edge")].find(
        (l) => l.dataset.edgeKey === key,
      )!;
    expect(lineFor().classList.contains("status-flagged")).toBe(true);

    root.querySelector<HTMLInputElement>('input[name="reviewer"]')!.value = "ana";
    const graphGets = () => server.requests("GET", "/api/graph/main").length;
    const getsBefore = graphGets();
    root.querySelector<HTMLButtonElement>('button[data-action="accept"]')!.click();
    await vi.waitFor(() => {
      const notice = root.querySelector<HTMLElement>(".notice")!;
      expect(notice.hidden).toBe(false);
    });

    expect(root.querySelector(".notice")!.textContent).toBe("accepted");
    expect(lineFor().classList.contains("status-accepted")).toBe(true);
    expect(lineFor().classList.contains("status-flagged")).toBe(false);
    // restyle came from the decision response, not from reloading the graph
    expect(graphGets()).toBe(getsBefore);

    const fresh = await app.api.graph("main");
    const freshEdge = fresh.edges.find((e) => edgeKey(e) === key)!;
    expect(freshEdge.status).toBe("accepted");
    expect(freshEdge.provenance).toBe("human_confirmed");

    // the decided edge left the queue
    expect(app.reviewPanel.currentEdge() && edgeKey(app.reviewPanel.currentEdge()!)).not.toBe(key);
    expect(performance.now() - started).toBeLessThan(30_000);
  }, 30_000);

  it("reject round-trip removes the edge from the accepted view", async () => {
    const server = new FakeServer({ graphs: { main: reviewGraphDoc() }, reports: {} });
    const root = document.createElement("div");
    document.body.append(root);
    const app = initApp(root, server.fetch, "main");
    await app.loadGraph("main");

    const edge = app.reviewPanel.currentEdge()!;
    const key = edgeKey(edge);
    root.querySelector<HTMLInputElement>('input[name="reviewer"]')!.value = "ana";
    root.querySelector<HTMLButtonElement>('button[data-action="reject"]')!.click();
    await vi.waitFor(() => {
      expect(root.querySelector<HTMLElement>(".notice")!.hidden).toBe(false);
    });

    const line = [...root.querySelectorAll<SVGLineElement>("line.edge")].find(
      (l) => l.dataset.edgeKey === key,
    )!;
    expect(line.classList.contains("status-rejected")).toBe(true);

    // filter down to accepted edges only: the rejected edge disappears
    const statusSelect = root.querySelector<HTMLSelectElement>('[data-control="status"]')!;
    statusSelect.value = "accepted";
    statusSelect.dispatchEvent(new Event("change"));
    const keys = [...root.querySelectorAll<SVGLineElement>("line.edge")].map(
      (l) => l.dataset.edgeKey,
    );
    expect(keys).not.toContain(key);

    const fresh = await app.api.graph("main");
    expect(fresh.edges.find((e) => edgeKey(e) === key)!.status).toBe("rejected");
  });

  it("health badge reflects the live service", async () => {
    const server = new FakeServer({ graphs: { main: reviewGraphDoc() }, reports: {} });
    const root = document.createElement("div");
    document.body.append(root);
    initApp(root, server.fetch, "main");
    await vi.waitFor(() => {
      expect(root.querySelector(".health-badge")!.textContent).toBe("ok (schema v1)");
    });
  });

  it("a failed graph load shows the banner and retry reloads", async () => {
    const server = new FakeServer({ graphs: { main: reviewGraphDoc() }, reports: {} });
    let failNext = true;
    const flaky = async (input: string, init?: RequestInit) => {
      if (failNext && /\/api\/graph\/main$/.test(input)) {
        failNext = false;
        throw new Error("socket closed");
      }
      return server.fetch(input, init);
    };
    const root = document.createElement("div");
    document.body.append(root);
    const app = initApp(root, flaky, "main");
    await app.loadGraph("main");
    const banner = root.querySelector<HTMLElement>(".error-banner")!;
    expect(banner.hidden).toBe(false);
    expect(banner.textContent).toContain("socket closed");

    banner.querySelector("button")!.click();
    await vi.waitFor(() => {
      expect(root.querySelectorAll("circle.node").length).toBeGreaterThan(0);
    });
    expect(root.querySelector<HTMLElement>(".error-banner")!.hidden).toBe(true);
  });
});
