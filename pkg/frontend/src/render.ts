// Canvas scene construction for diagram payloads: closed curves with a gap
// cut into the under strand at each crossing, region-area labels, and
// crossing-sign badges. Scene building is split from drawing so tests can
// inspect the scene without a canvas.

import type { RenderPayload } from "./types.js";

export interface Scene {
  strokes: { points: [number, number][]; component: number }[];
  labels: { text: string; at: [number, number] }[];
  badges: { text: string; at: [number, number] }[];
  bounds: { x0: number; y0: number; x1: number; y1: number };
}

const GAP_PX = 4;
export const PALETTE = ["#1e66a8", "#b3412c", "#3d7a3a", "#7b4a9e"];

function bounds(payload: RenderPayload) {
  let x0 = Infinity,
    y0 = Infinity,
    x1 = -Infinity,
    y1 = -Infinity;
  for (const comp of payload.diagram.components) {
    for (const [x, y] of comp.vertices) {
      x0 = Math.min(x0, x);
      y0 = Math.min(y0, y);
      x1 = Math.max(x1, x);
      y1 = Math.max(y1, y);
    }
  }
  if (!Number.isFinite(x0)) {
    x0 = y0 = -1;
    x1 = y1 = 1;
  }
  return { x0, y0, x1, y1 };
}

export function formatArea(area: number): string {
  return area.toPrecision(4).replace(/\.?0+$/, "");
}

export function buildScene(payload: RenderPayload, viewPx: number): Scene {
  const b = bounds(payload);
  const span = Math.max(b.x1 - b.x0, b.y1 - b.y0, 1e-12);
  const scale = (viewPx * 0.86) / span;
  const gapWorld = GAP_PX / scale;

  const strokes: Scene["strokes"] = [];
  payload.diagram.components.forEach((comp, ci) => {
    // World-space gap centres: crossings where this component runs under.
    const cuts: [number, number][] = [];
    for (const crossing of payload.crossings) {
      const under = crossing.strands[1 - crossing.over_strand];
      if (under.component === ci) cuts.push(crossing.point);
    }
    const pts = comp.vertices;
    const keep = pts.map(
      ([x, y]) =>
        !cuts.some(([cx, cy]) => Math.hypot(x - cx, y - cy) < gapWorld),
    );
    const runs: [number, number][][] = [];
    let current: [number, number][] = [];
    for (let i = 0; i < pts.length; i++) {
      if (keep[i]) {
        current.push(pts[i]);
      } else if (current.length) {
        runs.push(current);
        current = [];
      }
    }
    if (current.length) {
      if (runs.length && keep[0]) {
        runs[0] = current.concat(runs[0]);
      } else {
        runs.push(current);
      }
    }
    if (runs.length === 1 && keep.every(Boolean)) {
      runs[0] = [...runs[0], runs[0][0]]; // close the untouched curve
    }
    for (const run of runs) {
      if (run.length > 1) strokes.push({ points: run, component: ci });
    }
  });

  const labels = payload.faces.map((f) => ({
    text: formatArea(f.area),
    at: f.label_at,
  }));
  const badges = payload.crossings.map((c) => ({
    text: c.sign > 0 ? "+" : "−",
    at: c.point,
  }));
  return { strokes, labels, badges, bounds: b };
}

export function drawScene(
  ctx: CanvasRenderingContext2D,
  scene: Scene,
  viewPx: number,
): void {
  const { x0, y0, x1, y1 } = scene.bounds;
  const span = Math.max(x1 - x0, y1 - y0, 1e-12);
  const scale = (viewPx * 0.86) / span;
  const pad = viewPx * 0.07;
  const toPx = ([x, y]: [number, number]): [number, number] => [
    pad + (x - x0) * scale,
    viewPx - pad - (y - y0) * scale,
  ];

  ctx.clearRect(0, 0, viewPx, viewPx);
  ctx.lineWidth = 2;
  ctx.lineCap = "round";
  for (const stroke of scene.strokes) {
    ctx.strokeStyle = PALETTE[stroke.component % PALETTE.length];
    ctx.beginPath();
    stroke.points.forEach((p, i) => {
      const [px, py] = toPx(p);
      if (i === 0) ctx.moveTo(px, py);
      else ctx.lineTo(px, py);
    });
    ctx.stroke();
  }
  ctx.font = "12px sans-serif";
  ctx.fillStyle = "#666";
  ctx.textAlign = "center";
  for (const label of scene.labels) {
    const [px, py] = toPx(label.at);
    ctx.fillText(label.text, px, py);
  }
  ctx.fillStyle = "#333";
  ctx.font = "bold 13px sans-serif";
  for (const badge of scene.badges) {
    const [px, py] = toPx(badge.at);
    ctx.fillText(badge.text, px + 9, py - 9);
  }
}
