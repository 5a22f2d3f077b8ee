import { ApiClient, contaminatedNodes, type FetchLike } from "./api";
import { DetailPanel } from "./detailPanel";
import { GraphView } from "./graphView";
import { ReportsView } from "./reportsView";
import { ReviewPanel } from "./reviewPanel";
import { createState, type ViewState } from "./state";

export interface App {
  state: ViewState;
  api: ApiClient;
  graphView: GraphView;
  detailPanel: DetailPanel;
  reviewPanel: ReviewPanel;
  reportsView: ReportsView;
  loadGraph(name: string): Promise<void>;
  showTab(name: TabName): void;
}

export type TabName = "queue" | "detail" | "reports";

export function initApp(root: HTMLElement, fetchImpl?: FetchLike, graphName = "main"): App {
  const api = new ApiClient(fetchImpl);
  const state = createState(graphName);

  root.textContent = "";
  const header = document.createElement("header");
  header.className = "app-header";
  const title = document.createElement("h1");
  title.textContent = "Lineage Explorer";
  const nameInput = document.createElement("input");
  nameInput.dataset.control = "graph-name";
  nameInput.value = graphName;
  const loadButton = document.createElement("button");
  loadButton.dataset.action = "load-graph";
  loadButton.textContent = "load";
  const healthBadge = document.createElement("span");
  healthBadge.className = "health-badge";
  healthBadge.textContent = "checking...";
  header.append(title, nameInput, loadButton, healthBadge);

  const layoutRow = document.createElement("div");
  layoutRow.className = "app-body";
  const graphPane = document.createElement("div");
  graphPane.className = "graph-pane";
  const sidePane = document.createElement("div");
  sidePane.className = "side-pane";

  const tabBar = document.createElement("div");
  tabBar.className = "tab-bar";
  const panes = new Map<TabName, HTMLElement>();
  const tabs: TabName[] = ["queue", "detail", "reports"];
  for (const tab of tabs) {
    const button = document.createElement("button");
    button.dataset.tab = tab;
    button.textContent = tab;
    button.addEventListener("click", () => {
      showTab(tab);
      if (tab === "reports") void reportsView.ensureLoaded();
    });
    tabBar.append(button);
    const pane = document.createElement("div");
    pane.className = "tab-pane";
    pane.dataset.pane = tab;
    pane.hidden = tab !== "queue";
    panes.set(tab, pane);
  }
  sidePane.append(tabBar, ...panes.values());
  layoutRow.append(graphPane, sidePane);
  root.append(header, layoutRow);

  function showTab(name: TabName): void {
    for (const [tab, pane] of panes) pane.hidden = tab !== name;
    for (const button of tabBar.querySelectorAll("button")) {
      button.classList.toggle("active", button.dataset.tab === name);
    }
  }

  const detailPanel = new DetailPanel(panes.get("detail")!);
  const reportsView = new ReportsView(panes.get("reports")!, api);

  const graphView = new GraphView(graphPane, state, {
    onSelectNode: (id) => {
      showTab("detail");
      detailPanel.showLoading(id);
      api
        .node(state.graphName, id)
        .then((detail) => detailPanel.show(detail))
        .catch((error) =>
          detailPanel.showError(
            `could not load ${id}: ${error instanceof Error ? error.message : String(error)}`,
          ),
        );
    },
    onRetry: () => void loadGraph(state.graphName),
  });

  const reviewPanel = new ReviewPanel(panes.get("queue")!, api, {
    // a decided edge restyles in place from the server's payload;
    // the graph document is not refetched
    onEdgeDecided: (edge) => graphView.restyleEdge(edge),
  });

  async function loadGraph(name: string): Promise<void> {
    state.graphName = name;
    state.focused = null;
    nameInput.value = name;
    try {
      const doc = await api.graph(name);
      const contaminated = await contaminatedNodes(api, name, doc);
      graphView.setData(doc, contaminated);
      await reviewPanel.load(name, doc);
    } catch (error) {
      graphView.showError(
        `could not load graph ${name}: ${error instanceof Error ? error.message : String(error)}`,
      );
    }
  }

  loadButton.addEventListener("click", () => void loadGraph(nameInput.value.trim()));

  api
    .health()
    .then((health) => {
      healthBadge.textContent = `${health.status} (schema v${health.schema_version})`;
      healthBadge.classList.add("ok");
    })
    .catch(() => {
      healthBadge.textContent = "service unreachable";
      healthBadge.classList.add("down");
    });

  return { state, api, graphView, detailPanel, reviewPanel, reportsView, loadGraph, showTab };
}

// browser entry point; tests import initApp and drive it directly
const mount = typeof document !== "undefined" ? document.getElementById("app") : null;
if (mount) {
  const name = window.location.hash.slice(1) || "main";
  const app = initApp(mount, undefined, name);
  void app.loadGraph(name);
}
