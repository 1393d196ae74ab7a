// Parsing and per-tick bookkeeping for the simulation trace CSV:
// tick,time,fixture_id,dim,blind_angle,sensor_lux,occupied,event
// with one row per (tick, fixture) and a trailing comment block
// "# energy_wh,<total|fixture id>,<Wh>".

export interface TickState {
  tick: number;
  time: string;
  dims: number[];
  blindAngle: number;
  sensorLux: number;
  occupied: number[];
  events: string[];
}

export interface ParsedTrace {
  fixtureIds: string[];
  ticks: TickState[];
  totalWh: number;
  energyWh: Record<string, number>;
}

export function parseTrace(csv: string): ParsedTrace {
  const lines = csv.split("\n").filter((l) => l.length > 0);
  if (lines.length === 0 || !lines[0].startsWith("tick,")) {
    throw new Error("not a trace CSV");
  }
  const fixtureIds: string[] = [];
  const ticks: TickState[] = [];
  let totalWh = 0;
  const energyWh: Record<string, number> = {};

  for (const line of lines.slice(1)) {
    if (line.startsWith("#")) {
      const [, key, value] = line.slice(1).trim().split(",");
      if (key === "total") totalWh = Number(value);
      else energyWh[key] = Number(value);
      continue;
    }
    const parts = line.split(",");
    const tick = Number(parts[0]);
    const fid = parts[2];
    if (ticks.length === 0 || ticks[ticks.length - 1].tick !== tick) {
      ticks.push({
        tick,
        time: parts[1],
        dims: [],
        blindAngle: Number(parts[4]),
        sensorLux: Number(parts[5]),
        occupied: [],
        events: parts.slice(7).join(",").split(";").filter((e) => e.length > 0),
      });
    }
    if (ticks.length === 1) fixtureIds.push(fid);
    const state = ticks[ticks.length - 1];
    state.dims.push(Number(parts[3]));
    state.occupied.push(Number(parts[6]));
  }
  return { fixtureIds, ticks, totalWh, energyWh };
}

// Cumulative energy after each tick. Mirrors the engine's bookkeeping
// exactly: per-fixture running sums in tick order, summed across fixtures
// in fixture order, so the final entry reproduces the trace's total Wh
// bit for bit.
export function energyPrefix(trace: ParsedTrace, powers: number[], dt: number): Float64Array {
  const n = trace.ticks.length;
  const k = trace.fixtureIds.length;
  if (powers.length !== k) throw new Error(`need ${k} fixture powers, got ${powers.length}`);
  const running = new Float64Array(k);
  const out = new Float64Array(n);
  for (let t = 0; t < n; t++) {
    const dims = trace.ticks[t].dims;
    for (let f = 0; f < k; f++) {
      running[f] += (powers[f] * dims[f] * dt) / 60.0;
    }
    let total = 0;
    for (let f = 0; f < k; f++) total += running[f];
    out[t] = total;
  }
  return out;
}

export function clampTick(tick: number, length: number): number {
  if (length <= 0) return 0;
  return Math.min(length - 1, Math.max(0, Math.round(tick)));
}
