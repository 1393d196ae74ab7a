import { ApiClient, ApiError, PanelFetcher } from "./api";
import { drawFloorplan, fitOutline, hitTestFixture, type Viewport } from "./floorplan";
import { drawHeatmap, drawLegend } from "./heatmap";
import { SAMPLE_BEDROOM } from "./sample";
import { StudioStore } from "./state";
import { energyPrefix, parseTrace } from "./trace";

const FIELD_SPACING = 0.25;

const store = new StudioStore();
const panels = {
  field: new PanelFetcher(),
  scenarios: new PanelFetcher(),
  trace: new PanelFetcher(),
  compare: new PanelFetcher(),
};

const $ = <T extends HTMLElement>(id: string): T => {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing element #${id}`);
  return el as T;
};

const plan = $<HTMLCanvasElement>("plan");
const planCtx = plan.getContext("2d")!;
const legendCtx = $<HTMLCanvasElement>("legend").getContext("2d")!;
const bannerEl = $("banner");
const scrubber = $<HTMLInputElement>("scrubber");

let api = new ApiClient(
  (import.meta.env?.VITE_API_BASE as string | undefined) ?? "http://127.0.0.1:8080",
);
let view: Viewport | null = null;
let selectedFixture: number | null = null;

function banner(err: unknown): void {
  const text =
    err instanceof ApiError ? `${err.errorName}: ${err.message}` : String(err);
  bannerEl.textContent = text;
  bannerEl.classList.add("show");
}

function clearBanner(): void {
  bannerEl.classList.remove("show");
}

function redraw(): void {
  if (!store.room) return;
  view = fitOutline(store.room.outline, plan.width, plan.height);
  const design = store.activeDesign();
  const tickState = store.tickState();
  drawFloorplan(planCtx, store.room, design, view, {
    dims: tickState?.dims,
    selected: selectedFixture,
    ghosts: store.ghostPositions(),
  });
  if (store.field && $<HTMLInputElement>("show-heatmap").checked) {
    drawHeatmap(planCtx, store.field, view);
    drawLegend(legendCtx, store.field.stats.max);
  } else {
    legendCtx.clearRect(0, 0, legendCtx.canvas.width, legendCtx.canvas.height);
  }
}

// Stats are shown verbatim: every displayed number is exactly the value the
// service returned, never a re-rounded copy.
function renderStats(): void {
  const el = $("stats");
  if (!store.field) {
    el.textContent = "";
    return;
  }
  const s = store.field.stats;
  el.textContent =
    `average ${String(s.average)}\nmin     ${String(s.min)}\n` +
    `max     ${String(s.max)}\nuniformity ${String(s.uniformity)}`;
}

function renderScenarios(): void {
  const box = $("scenarios");
  box.textContent = "";
  if (store.scenarios.length === 0) {
    box.innerHTML = '<span class="readout" style="color:var(--muted)">none yet</span>';
    return;
  }
  for (const entry of store.scenarios) {
    const btn = document.createElement("button");
    btn.textContent = `${entry.design.pattern_id}  (${entry.score.scalar_score.toFixed(3)})`;
    btn.classList.toggle("active", entry.design.id === store.activeId);
    btn.addEventListener("click", () => {
      if (!store.switchScenario(entry.design.id)) return; // idempotent: no refetch
      selectedFixture = null;
      resetTimeline();
      seedPolicyTextareas();
      renderScenarios();
      redraw();
      void fetchField();
    });
    box.appendChild(btn);
  }
}

async function fetchField(): Promise<void> {
  const design = store.activeDesign();
  if (!design) return;
  try {
    const field = await panels.field.run(() => api.illuminance(design.id, FIELD_SPACING));
    if (field === undefined) return; // superseded by a newer request
    store.field = field;
    renderStats();
    redraw();
  } catch (err) {
    banner(err);
  }
}

function resetTimeline(): void {
  store.clearTrace();
  scrubber.disabled = true;
  scrubber.max = "0";
  scrubber.value = "0";
  $("tick-readout").textContent = "";
}

function renderTick(): void {
  const state = store.tickState();
  const out = $("tick-readout");
  if (!state || !store.trace) {
    out.textContent = "";
    return;
  }
  const dims = state.dims
    .map((d, i) => `${store.trace!.fixtureIds[i]}=${String(d)}`)
    .join("  ");
  const events = state.events.length > 0 ? `\nevents: ${state.events.join(", ")}` : "";
  out.textContent =
    `tick ${state.tick}  ${state.time}\nsensor ${String(state.sensorLux)} lx  ` +
    `blind ${String(state.blindAngle)}\n${dims}\n` +
    `energy so far ${String(store.energyAtTick())} Wh${events}`;
  redraw();
}

function zonesOf(designId: string | null): string[] {
  const design = store.scenarios.find((s) => s.design.id === designId)?.design;
  if (!design) return ["task"];
  return [...new Set(design.fixtures.map((f) => f.zone))].sort();
}

function seedPolicyTextareas(): void {
  const zones = zonesOf(store.activeId);
  const rules = zones.flatMap((zone, i) => [
    { kind: "occupancy_onoff", zone, priority: 2 * i },
    { kind: "constant_illuminance", zone, setpoint: 200, priority: 2 * i + 1 },
  ]);
  $<HTMLTextAreaElement>("policy-json").value = JSON.stringify(
    { name: "smart", sensor_point: [2.0, 1.5, 1.5], rules },
    null,
    1,
  );
  const occupancy = Object.fromEntries(zones.map((z) => [z, [[1080, 1320]]]));
  $<HTMLTextAreaElement>("schedule-json").value = JSON.stringify(
    { horizon: 1440, dt: 1, occupancy, daylight: [[0, 0], [720, 300], [1140, 0]] },
    null,
    1,
  );
  $<HTMLTextAreaElement>("baseline-json").value = JSON.stringify(
    {
      name: "baseline",
      sensor_point: [2.0, 1.5, 1.5],
      rules: zones.map((zone) => ({ kind: "timing", zone, on_time: "18:00", off_time: "24:00" })),
    },
    null,
    1,
  );
}

async function loadRoom(id: string): Promise<void> {
  clearBanner();
  try {
    const room = await api.getRoom(id);
    store.setRoom(id, room);
    $<HTMLInputElement>("room-id").value = id;
    selectedFixture = null;
    resetTimeline();
    renderScenarios();
    renderStats();
    redraw();
  } catch (err) {
    banner(err);
  }
}

async function generate(): Promise<void> {
  if (!store.roomId) {
    banner("load a room first");
    return;
  }
  clearBanner();
  const seed = Number($<HTMLInputElement>("seed").value) || 0;
  try {
    const resp = await panels.scenarios.run(() => api.generateDesigns(store.roomId!, seed));
    if (resp === undefined) return;
    store.setScenarios(resp.designs);
    selectedFixture = null;
    resetTimeline();
    seedPolicyTextareas();
    renderScenarios();
    redraw();
    void fetchField();
  } catch (err) {
    banner(err);
  }
}

function readEditForm(): { index: number; x: number; y: number; dim: number } | null {
  const design = store.activeDesign();
  if (!design) return null;
  const index = Number($<HTMLInputElement>("edit-index").value);
  if (!Number.isInteger(index) || index < 0 || index >= design.fixtures.length) {
    banner(`fixture index must be 0..${design.fixtures.length - 1}`);
    return null;
  }
  return {
    index,
    x: Number($<HTMLInputElement>("edit-x").value),
    y: Number($<HTMLInputElement>("edit-y").value),
    dim: Number($<HTMLInputElement>("edit-dim").value),
  };
}

function selectFixture(index: number): void {
  const design = store.activeDesign();
  if (!design) return;
  selectedFixture = index;
  const f = design.fixtures[index];
  $<HTMLInputElement>("edit-index").value = String(index);
  $<HTMLInputElement>("edit-x").value = String(f.position[0]);
  $<HTMLInputElement>("edit-y").value = String(f.position[1]);
  $<HTMLInputElement>("edit-dim").value = String(f.dim);
  $("edit-hint").textContent = `${f.spec.name} in zone ${f.zone}`;
  redraw();
}

async function applyEdits(): Promise<void> {
  const design = store.activeDesign();
  const edits = store.pendingEdits();
  if (!design || edits.length === 0) return;
  clearBanner();
  try {
    const updated = await api.patchDesign(design.id, edits);
    store.confirmEdit(updated);
    redraw();
    void fetchField(); // re-render the field only after the service confirmed
  } catch (err) {
    store.rejectEdit(); // drop the preview, the confirmed view stands
    redraw();
    banner(err);
  }
}

async function runSimulation(): Promise<void> {
  const design = store.activeDesign();
  if (!design) return;
  clearBanner();
  try {
    const policy = JSON.parse($<HTMLTextAreaElement>("policy-json").value);
    const schedule = JSON.parse($<HTMLTextAreaElement>("schedule-json").value);
    const result = await panels.trace.run(async () => {
      const sim = await api.simulate(design.id, policy, schedule);
      const csv = await api.traceCsv(sim.trace_id);
      return { sim, csv };
    });
    if (result === undefined) return;
    const trace = parseTrace(result.csv);
    const powers = design.fixtures.map((f) => f.spec.power);
    store.loadTrace(trace, energyPrefix(trace, powers, result.sim.summary.dt));
    scrubber.disabled = false;
    scrubber.max = String(trace.ticks.length - 1);
    scrubber.value = "0";
    store.scrub(0);
    renderTick();
  } catch (err) {
    banner(err);
  }
}

async function runCompare(): Promise<void> {
  const design = store.activeDesign();
  if (!design) return;
  clearBanner();
  try {
    const baseline = JSON.parse($<HTMLTextAreaElement>("baseline-json").value);
    const policy = JSON.parse($<HTMLTextAreaElement>("policy-json").value);
    const schedule = JSON.parse($<HTMLTextAreaElement>("schedule-json").value);
    const report = await panels.compare.run(() =>
      api.compare(design.id, [baseline, policy], schedule),
    );
    if (report === undefined) return;
    const rows = report.results
      .map(
        (r) =>
          `<tr><td>${r.name}</td><td>${String(r.energy_wh)}</td>` +
          `<td>${String(r.savings_percent)}</td></tr>`,
      )
      .join("");
    $("compare-out").innerHTML =
      `<table><tr><th>policy</th><th>Wh</th><th>savings %</th></tr>${rows}</table>` +
      `<div class="readout">baseline: ${report.baseline}</div>`;
  } catch (err) {
    banner(err);
  }
}

function wire(): void {
  const baseInput = $<HTMLInputElement>("api-base");
  baseInput.value = api.base;
  baseInput.addEventListener("change", () => {
    api = new ApiClient(baseInput.value);
    $("conn-state").textContent = "";
  });

  $("load-sample").addEventListener("click", async () => {
    clearBanner();
    try {
      const { id } = await api.createRoom(SAMPLE_BEDROOM);
      await loadRoom(id);
      $("conn-state").textContent = `room ${id}`;
    } catch (err) {
      banner(err);
    }
  });

  $("load-room").addEventListener("click", () => {
    const id = $<HTMLInputElement>("room-id").value.trim();
    if (id) void loadRoom(id);
  });

  $("generate").addEventListener("click", () => void generate());

  plan.addEventListener("click", (ev) => {
    const design = store.activeDesign();
    if (!design || !view) return;
    const rect = plan.getBoundingClientRect();
    const hit = hitTestFixture(
      design,
      view,
      ((ev.clientX - rect.left) * plan.width) / rect.width,
      ((ev.clientY - rect.top) * plan.height) / rect.height,
    );
    if (hit !== null) selectFixture(hit);
  });

  $("show-heatmap").addEventListener("change", redraw);

  $("edit-queue").addEventListener("click", () => {
    const form = readEditForm();
    const design = store.activeDesign();
    if (!form || !design) return;
    const z = design.fixtures[form.index].position[2];
    store.queueEdit({ index: form.index, position: [form.x, form.y, z], dim: form.dim });
    redraw();
  });
  $("edit-apply").addEventListener("click", () => {
    // Apply without a prior preview still sends the form's values.
    const form = readEditForm();
    const design = store.activeDesign();
    if (form && design && !store.editBuffer.has(form.index)) {
      const z = design.fixtures[form.index].position[2];
      store.queueEdit({ index: form.index, position: [form.x, form.y, z], dim: form.dim });
    }
    void applyEdits();
  });
  $("edit-discard").addEventListener("click", () => {
    store.rejectEdit();
    redraw();
  });

  scrubber.addEventListener("input", () => {
    store.scrub(Number(scrubber.value));
    renderTick();
  });

  $("run-sim").addEventListener("click", () => void runSimulation());
  $("run-compare").addEventListener("click", () => void runCompare());
}

wire();
