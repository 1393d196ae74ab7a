import type { DesignDoc, RoomDoc } from "./types";

// Room coordinates are meters with y up; the canvas has y down. The
// viewport maps room (x, y) to canvas (ox + x*scale, oy - y*scale) and is
// sized so the outline bounding box fits with a margin.
export interface Viewport {
  scale: number;
  ox: number;
  oy: number;
}

export function fitOutline(
  outline: number[][],
  width: number,
  height: number,
  margin = 28,
): Viewport {
  const xs = outline.map((p) => p[0]);
  const ys = outline.map((p) => p[1]);
  const minX = Math.min(...xs);
  const maxX = Math.max(...xs);
  const minY = Math.min(...ys);
  const maxY = Math.max(...ys);
  const spanX = Math.max(maxX - minX, 1e-9);
  const spanY = Math.max(maxY - minY, 1e-9);
  const scale = Math.min((width - 2 * margin) / spanX, (height - 2 * margin) / spanY);
  return {
    scale,
    ox: (width - spanX * scale) / 2 - minX * scale,
    oy: height - ((height - spanY * scale) / 2 - minY * scale),
  };
}

export function toCanvas(view: Viewport, x: number, y: number): [number, number] {
  return [view.ox + x * view.scale, view.oy - y * view.scale];
}

function tracePolygon(ctx: CanvasRenderingContext2D, view: Viewport, pts: number[][]): void {
  ctx.beginPath();
  pts.forEach(([x, y], i) => {
    const [cx, cy] = toCanvas(view, x, y);
    if (i === 0) ctx.moveTo(cx, cy);
    else ctx.lineTo(cx, cy);
  });
  ctx.closePath();
}

export interface FloorplanOptions {
  // Per-fixture dim levels to display, aligned with design.fixtures.
  dims?: number[];
  selected?: number | null;
  // Fixture positions of a pending, unconfirmed edit, drawn as ghosts.
  ghosts?: (number[] | null)[];
}

export function drawFloorplan(
  ctx: CanvasRenderingContext2D,
  room: RoomDoc,
  design: DesignDoc | null,
  view: Viewport,
  opts: FloorplanOptions = {},
): void {
  const { width, height } = ctx.canvas;
  ctx.clearRect(0, 0, width, height);
  ctx.fillStyle = "#1b1e24";
  ctx.fillRect(0, 0, width, height);

  tracePolygon(ctx, view, room.outline);
  ctx.fillStyle = "#262b33";
  ctx.fill();
  ctx.strokeStyle = "#8a93a5";
  ctx.lineWidth = 2;
  ctx.stroke();

  for (const obj of room.objects ?? []) {
    const [lo, hi] = obj.footprint;
    const [x0, y0] = toCanvas(view, lo[0], hi[1]);
    const w = (hi[0] - lo[0]) * view.scale;
    const h = (hi[1] - lo[1]) * view.scale;
    ctx.fillStyle = "#3a4250";
    ctx.fillRect(x0, y0, w, h);
    ctx.strokeStyle = "#59637a";
    ctx.lineWidth = 1;
    ctx.strokeRect(x0, y0, w, h);
    ctx.fillStyle = "#aeb7c7";
    ctx.font = "11px sans-serif";
    ctx.textAlign = "center";
    ctx.fillText(obj.kind, x0 + w / 2, y0 + h / 2 + 4);
  }

  if (!design) return;
  design.fixtures.forEach((f, i) => {
    const [cx, cy] = toCanvas(view, f.position[0], f.position[1]);
    const dim = opts.dims ? opts.dims[i] : f.dim;
    const glow = Math.round(80 + 175 * Math.min(1, Math.max(0, dim)));
    ctx.beginPath();
    ctx.arc(cx, cy, 9, 0, Math.PI * 2);
    ctx.fillStyle = `rgb(${glow},${glow},${Math.round(glow * 0.6)})`;
    ctx.fill();
    ctx.strokeStyle = i === opts.selected ? "#ffd166" : "#10131a";
    ctx.lineWidth = i === opts.selected ? 3 : 1.5;
    ctx.stroke();
    ctx.fillStyle = "#0c0e12";
    ctx.font = "9px sans-serif";
    ctx.textAlign = "center";
    ctx.fillText(String(i), cx, cy + 3);

    const ghost = opts.ghosts?.[i];
    if (ghost) {
      const [gx, gy] = toCanvas(view, ghost[0], ghost[1]);
      ctx.beginPath();
      ctx.arc(gx, gy, 9, 0, Math.PI * 2);
      ctx.setLineDash([3, 3]);
      ctx.strokeStyle = "#ffd166";
      ctx.lineWidth = 1.5;
      ctx.stroke();
      ctx.setLineDash([]);
    }
  });
}

export function hitTestFixture(
  design: DesignDoc,
  view: Viewport,
  cx: number,
  cy: number,
  radius = 11,
): number | null {
  for (let i = design.fixtures.length - 1; i >= 0; i--) {
    const [fx, fy] = toCanvas(view, design.fixtures[i].position[0], design.fixtures[i].position[1]);
    if ((fx - cx) ** 2 + (fy - cy) ** 2 <= radius * radius) return i;
  }
  return null;
}
