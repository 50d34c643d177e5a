import { clusterColor } from "./reachability-plot.js";

const SVG_NS = "http://www.w3.org/2000/svg";

/** 2-d datasets also get a scatter colored by the current labels; other
 *  data shows the reachability plot only. */
export function renderScatter(
  svg: SVGSVGElement,
  points: number[][],
  labels: number[] | null,
  size = 360,
): void {
  svg.setAttribute("viewBox", `0 0 ${size} ${size}`);
  for (const c of Array.from(svg.querySelectorAll("circle.pt"))) c.remove();
  const xs = points.map((p) => p[0]!);
  const ys = points.map((p) => p[1]!);
  const minX = Math.min(...xs);
  const maxX = Math.max(...xs);
  const minY = Math.min(...ys);
  const maxY = Math.max(...ys);
  const spanX = maxX - minX || 1;
  const spanY = maxY - minY || 1;
  const pad = 10;
  points.forEach((p, i) => {
    const circle = document.createElementNS(SVG_NS, "circle");
    circle.classList.add("pt");
    circle.setAttribute("cx", String(pad + ((p[0]! - minX) / spanX) * (size - 2 * pad)));
    circle.setAttribute("cy", String(size - pad - ((p[1]! - minY) / spanY) * (size - 2 * pad)));
    circle.setAttribute("r", "3");
    const label = labels ? (labels[i] ?? -1) : -1;
    circle.setAttribute("fill", clusterColor(label));
    circle.dataset.noise = String(label < 0);
    svg.appendChild(circle);
  });
}
