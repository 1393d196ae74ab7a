import type { FieldResponse } from "./types";
import type { Viewport } from "./floorplan";

// Normative color mapping: lux normalized by the field max, then a linear
// grayscale ramp round(255 * v). Cell color is a pure function of
// (cell lux, field max); no other state may leak into it.
export function luxToByte(lux: number, max: number): number {
  if (max <= 0) return 0;
  const v = Math.min(1, Math.max(0, lux / max));
  return Math.round(255 * v);
}

export function legendTicks(max: number): [number, number, number] {
  return [0, max / 2, max];
}

// The field is sampled on a regular grid; recover the spacing from the
// smallest positive coordinate step so each sample paints one full cell.
export function gridSpacing(points: number[][]): number {
  let best = Infinity;
  for (let i = 1; i < points.length; i++) {
    const dx = Math.abs(points[i][0] - points[i - 1][0]);
    const dy = Math.abs(points[i][1] - points[i - 1][1]);
    if (dx > 1e-12 && dx < best) best = dx;
    if (dy > 1e-12 && dy < best) best = dy;
  }
  return Number.isFinite(best) ? best : 1;
}

export function drawHeatmap(
  ctx: CanvasRenderingContext2D,
  field: FieldResponse,
  view: Viewport,
  alpha = 0.85,
): void {
  const max = field.stats.max;
  const spacing = gridSpacing(field.points);
  const cell = spacing * view.scale;
  ctx.save();
  ctx.globalAlpha = alpha;
  for (let i = 0; i < field.points.length; i++) {
    const [x, y] = field.points[i];
    const byte = luxToByte(field.lux[i], max);
    ctx.fillStyle = `rgb(${byte},${byte},${byte})`;
    ctx.fillRect(
      view.ox + (x - spacing / 2) * view.scale,
      view.oy - (y + spacing / 2) * view.scale,
      cell,
      cell,
    );
  }
  ctx.restore();
}

export function drawLegend(ctx: CanvasRenderingContext2D, max: number): void {
  const { width, height } = ctx.canvas;
  const barH = 10;
  ctx.clearRect(0, 0, width, height);
  for (let x = 0; x < width; x++) {
    const byte = luxToByte((x / (width - 1)) * max, max);
    ctx.fillStyle = `rgb(${byte},${byte},${byte})`;
    ctx.fillRect(x, 0, 1, barH);
  }
  ctx.fillStyle = "#ccc";
  ctx.font = "10px sans-serif";
  const ticks = legendTicks(max);
  const anchors: CanvasTextAlign[] = ["left", "center", "right"];
  const xs = [0, width / 2, width];
  ticks.forEach((t, i) => {
    ctx.textAlign = anchors[i];
    ctx.fillText(`${t.toFixed(0)} lx`, xs[i], barH + 12);
  });
}
