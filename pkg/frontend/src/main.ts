import { ApiClient } from "./api.js";
import { ExplorerController } from "./controller.js";
import { renderComparePanel, renderErrorPanel, renderStatsPanel } from "./panels.js";
import {
  plotLayout,
  renderCutline,
  renderReachabilityPlot,
  yToValue,
  type PlotLayout,
} from "./reachability-plot.js";
import { renderScatter } from "./scatter-plot.js";

const PLOT_WIDTH = 900;
const PLOT_HEIGHT = 320;

export function bootstrap(doc: Document = document): ExplorerController {
  const base = new URLSearchParams(doc.defaultView?.location.search ?? "").get("api") ?? "";
  const api = new ApiClient(base);
  const controller = new ExplorerController(api);

  const svg = doc.querySelector<SVGSVGElement>("#reachability")!;
  const scatterSvg = doc.querySelector<SVGSVGElement>("#scatter");
  const epsSlider = doc.querySelector<HTMLInputElement>("#eps-slider")!;
  const epsReadout = doc.querySelector<HTMLElement>("#eps-value");
  const minptsSlider = doc.querySelector<HTMLInputElement>("#minpts-slider")!;
  const minptsReadout = doc.querySelector<HTMLElement>("#minpts-value");
  const modeToggle = doc.querySelector<HTMLInputElement>("#mode-approx")!;

  let layout: PlotLayout | null = null;
  let points: number[][] | null = null;
  let slidersConfigured = false;

  controller.subscribe((state) => {
    if (state.meta && !slidersConfigured) {
      slidersConfigured = true;
      epsSlider.min = "0";
      epsSlider.max = String(state.meta.epsilon);
      epsSlider.step = String(state.meta.epsilon / 200);
      epsSlider.value = String(state.meta.epsilon);
      minptsSlider.min = String(state.meta.min_pts);
      minptsSlider.max = String(state.meta.n);
      minptsSlider.step = "1";
      minptsSlider.value = String(state.meta.min_pts);
    }
    if (state.reachability) {
      if (!layout) layout = plotLayout(state.reachability, PLOT_WIDTH, PLOT_HEIGHT);
      const labels = state.clustering ? state.clustering.labels : null;
      renderReachabilityPlot(svg, state.reachability, labels, layout);
      const eps = controller.epsilonStar;
      if (eps !== null) renderCutline(svg, layout, eps);
      if (scatterSvg && points) renderScatter(scatterSvg, points, labels);
    }
    if (epsReadout && controller.epsilonStar !== null) {
      epsReadout.textContent = controller.epsilonStar.toFixed(4);
      epsSlider.value = String(controller.epsilonStar);
    }
    if (minptsReadout && controller.minPtsStar !== null) {
      minptsReadout.textContent = String(controller.minPtsStar);
      minptsSlider.value = String(controller.minPtsStar);
    }
    renderStatsPanel(doc, state);
    renderComparePanel(doc, state);
    renderErrorPanel(doc, state);
  });

  epsSlider.addEventListener("input", () => {
    controller.setCutline(Number(epsSlider.value));
  });
  minptsSlider.addEventListener("input", () => {
    controller.setMinPts(Number(minptsSlider.value));
  });
  modeToggle.addEventListener("change", () => {
    controller.setMode(modeToggle.checked ? "approx" : "exact");
  });

  // Dragging on the plot moves the cutline; values are clamped upstream.
  svg.addEventListener("pointerdown", (ev) => dragTo(ev));
  svg.addEventListener("pointermove", (ev) => {
    if (ev.buttons & 1) dragTo(ev);
  });

  function dragTo(ev: PointerEvent): void {
    if (!layout) return;
    const rect = svg.getBoundingClientRect();
    const y = ((ev.clientY - rect.top) / (rect.height || 1)) * layout.height;
    controller.setCutline(yToValue(layout, y));
  }

  void controller.init().then(async () => {
    if (!scatterSvg) return;
    try {
      const resp = await api.points();
      if (resp.available && resp.points) {
        points = resp.points;
      } else {
        scatterSvg.closest<HTMLElement>("#scatter-box")?.setAttribute("hidden", "");
      }
    } catch {
      scatterSvg.closest<HTMLElement>("#scatter-box")?.setAttribute("hidden", "");
    }
  });

  return controller;
}

declare global {
  interface Window {
    finexExplorer?: ExplorerController;
  }
}

if (typeof document !== "undefined" && document.querySelector("#reachability")) {
  window.finexExplorer = bootstrap(document);
}
