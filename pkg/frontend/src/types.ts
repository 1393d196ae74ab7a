// Document shapes of the workbench HTTP API. The studio never invents
// fields; everything here mirrors what the service sends and accepts.

export interface SurfaceDoc {
  kind: string;
  reflectance: number;
}

export interface ObjectDoc {
  kind: string;
  footprint: [number[], number[]];
  height: number;
  facing?: number[];
}

export interface RoomDoc {
  outline: number[][];
  ceiling_height: number;
  surfaces?: SurfaceDoc[];
  objects?: ObjectDoc[];
  function?: string;
}

export interface SpecDoc {
  name: string;
  flux: number;
  exponent: number;
  power: number;
  mount: string;
}

export interface FixtureDoc {
  spec: SpecDoc;
  position: number[];
  axis: number[];
  zone: string;
  dimmable: boolean;
  dim: number;
}

export interface DesignDoc {
  id: string;
  pattern_id: string;
  room: RoomDoc;
  fixtures: FixtureDoc[];
  room_id?: string;
}

export interface ScoreDoc {
  average_lux: number;
  min_lux: number;
  uniformity: number;
  task_lux: number;
  meets_ambient: boolean;
  meets_task: boolean;
  scalar_score: number;
}

export interface ScenarioEntry {
  design: DesignDoc;
  score: ScoreDoc;
}

export interface FieldResponse {
  points: number[][];
  lux: number[];
  stats: { average: number; min: number; max: number; uniformity: number };
}

export interface SimulateResponse {
  trace_id: string;
  summary: {
    ticks: number;
    dt: number;
    horizon: number;
    total_wh: number;
    energy_wh: Record<string, number>;
  };
}

export interface CompareResponse {
  baseline: string;
  results: { name: string; energy_wh: number; savings_percent: number }[];
}

// A pending change to one fixture, keyed by its index in the design.
export interface FixtureEdit {
  index: number;
  position?: number[];
  axis?: number[];
  dim?: number;
  zone?: string;
}
