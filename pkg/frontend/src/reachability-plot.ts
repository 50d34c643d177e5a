import type { ReachabilityEntry } from "./types.js";

export const NOISE_COLOR = "#9aa0a6";

export const PALETTE = [
  "#4285f4",
  "#fbbc04",
  "#34a853",
  "#a142f4",
  "#ea4335",
  "#24c1e0",
  "#f06292",
  "#7cb342",
];

export function clusterColor(label: number): string {
  if (label < 0) return NOISE_COLOR;
  return PALETTE[label % PALETTE.length]!;
}

export interface PlotLayout {
  width: number;
  height: number;
  /** Largest finite reachability; bars for null reach are drawn full height. */
  maxValue: number;
}

export function plotLayout(entries: ReachabilityEntry[], width: number, height: number): PlotLayout {
  let maxValue = 0;
  for (const e of entries) {
    if (e.r !== null && e.r > maxValue) maxValue = e.r;
    if (e.c !== null && e.c > maxValue) maxValue = e.c;
  }
  if (maxValue <= 0) maxValue = 1;
  return { width, height, maxValue };
}

export function valueToY(layout: PlotLayout, value: number): number {
  return layout.height - (value / layout.maxValue) * layout.height;
}

export function yToValue(layout: PlotLayout, y: number): number {
  return ((layout.height - y) / layout.height) * layout.maxValue;
}

const SVG_NS = "http://www.w3.org/2000/svg";

function ensureHatchPattern(svg: SVGSVGElement): void {
  if (svg.querySelector("#inf-hatch")) return;
  const defs = document.createElementNS(SVG_NS, "defs");
  const pattern = document.createElementNS(SVG_NS, "pattern");
  pattern.setAttribute("id", "inf-hatch");
  pattern.setAttribute("width", "6");
  pattern.setAttribute("height", "6");
  pattern.setAttribute("patternUnits", "userSpaceOnUse");
  pattern.setAttribute("patternTransform", "rotate(45)");
  const line = document.createElementNS(SVG_NS, "line");
  line.setAttribute("x1", "0");
  line.setAttribute("y1", "0");
  line.setAttribute("x2", "0");
  line.setAttribute("y2", "6");
  line.setAttribute("stroke", "#666");
  line.setAttribute("stroke-width", "2");
  pattern.appendChild(line);
  defs.appendChild(pattern);
  svg.appendChild(defs);
}

/** One bar per object in permutation order, colored by the current labels
 *  (noise gray); infinite reachability draws a full-height hatched bar. */
export function renderReachabilityPlot(
  svg: SVGSVGElement,
  entries: ReachabilityEntry[],
  labels: number[] | null,
  layout: PlotLayout,
): void {
  ensureHatchPattern(svg);
  svg.setAttribute("viewBox", `0 0 ${layout.width} ${layout.height}`);
  for (const bar of Array.from(svg.querySelectorAll("rect.bar"))) bar.remove();
  const slot = layout.width / entries.length;
  const barWidth = Math.max(slot * 0.8, 1);
  entries.forEach((entry, i) => {
    const rect = document.createElementNS(SVG_NS, "rect");
    rect.classList.add("bar");
    const infinite = entry.r === null;
    const value = infinite ? layout.maxValue : entry.r!;
    const y = valueToY(layout, value);
    rect.setAttribute("x", String(i * slot + (slot - barWidth) / 2));
    rect.setAttribute("y", String(y));
    rect.setAttribute("width", String(barWidth));
    rect.setAttribute("height", String(layout.height - y));
    const label = labels ? (labels[entry.object_id] ?? -1) : -1;
    rect.dataset.objectId = String(entry.object_id);
    rect.dataset.pos = String(entry.pos);
    rect.dataset.noise = String(label < 0);
    if (infinite) {
      rect.classList.add("inf-bar");
      rect.setAttribute("fill", "url(#inf-hatch)");
      rect.setAttribute("stroke", clusterColor(label));
      rect.setAttribute("stroke-width", "1.5");
    } else {
      rect.setAttribute("fill", clusterColor(label));
    }
    svg.appendChild(rect);
  });
}

/** Horizontal cutline at the current radius threshold. */
export function renderCutline(svg: SVGSVGElement, layout: PlotLayout, value: number): void {
  let line = svg.querySelector<SVGLineElement>("line.cutline");
  if (!line) {
    line = document.createElementNS(SVG_NS, "line");
    line.classList.add("cutline");
    line.setAttribute("stroke", "#d93025");
    line.setAttribute("stroke-width", "2");
    line.setAttribute("stroke-dasharray", "8 4");
    svg.appendChild(line);
  }
  const y = valueToY(layout, value);
  line.setAttribute("x1", "0");
  line.setAttribute("x2", String(layout.width));
  line.setAttribute("y1", String(y));
  line.setAttribute("y2", String(y));
}
