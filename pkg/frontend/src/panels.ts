import type { ExplorerState } from "./controller.js";

function setText(root: ParentNode, selector: string, text: string): void {
  const el = root.querySelector<HTMLElement>(selector);
  if (el) el.textContent = text;
}

export function renderStatsPanel(root: ParentNode, state: ExplorerState): void {
  const c = state.clustering;
  if (!c || !state.meta) return;
  setText(root, "[data-stat=clusters]", String(c.num_clusters));
  const pct = ((100 * c.noise_count) / state.meta.n).toFixed(1);
  setText(root, "[data-stat=noise]", `${c.noise_count} (${pct}%)`);
  setText(root, "[data-stat=distances]", String(c.stats.distance_computations));
  const latency = state.latencyMs === null ? "-" : `${state.latencyMs.toFixed(1)} ms`;
  setText(root, "[data-stat=latency]", latency);
}

/** Recall readout; present only when the server was started with baselines. */
export function renderComparePanel(root: ParentNode, state: ExplorerState): void {
  const panel = root.querySelector<HTMLElement>("#compare-panel");
  if (!panel) return;
  if (!state.compareAvailable || !state.compare) {
    panel.hidden = true;
    return;
  }
  panel.hidden = false;
  setText(panel, "[data-stat=finex-recall]", state.compare.finex_recall.toFixed(3));
  setText(panel, "[data-stat=optics-recall]", state.compare.optics_recall.toFixed(3));
}

export function renderErrorPanel(root: ParentNode, state: ExplorerState): void {
  const panel = root.querySelector<HTMLElement>("#error-panel");
  if (!panel) return;
  panel.hidden = state.error === null;
  panel.textContent = state.error ?? "";
}
