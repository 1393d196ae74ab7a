import type {
  CompareResponse,
  DesignDoc,
  FieldResponse,
  FixtureEdit,
  RoomDoc,
  ScenarioEntry,
  SimulateResponse,
} from "./types";

export class ApiError extends Error {
  status: number;
  errorName: string;

  constructor(status: number, errorName: string, detail: string) {
    super(detail);
    this.status = status;
    this.errorName = errorName;
  }
}

async function parseFailure(res: Response): Promise<ApiError> {
  let name = `HTTP ${res.status}`;
  let detail = res.statusText;
  try {
    const body = await res.json();
    if (typeof body.error === "string") name = body.error;
    if (typeof body.detail === "string") detail = body.detail;
    else if (body.detail) detail = JSON.stringify(body.detail);
  } catch {
    // non-JSON failure body, keep the status line
  }
  return new ApiError(res.status, name, detail);
}

export class ApiClient {
  base: string;

  constructor(base: string) {
    this.base = base.replace(/\/$/, "");
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const res = await fetch(this.base + path, {
      method,
      headers: body === undefined ? undefined : { "Content-Type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    if (!res.ok) throw await parseFailure(res);
    return res.json() as Promise<T>;
  }

  createRoom(doc: RoomDoc): Promise<{ id: string }> {
    return this.request("POST", "/api/rooms", doc);
  }

  getRoom(id: string): Promise<RoomDoc> {
    return this.request("GET", `/api/rooms/${id}`);
  }

  generateDesigns(roomId: string, seed: number): Promise<{ room_id: string; designs: ScenarioEntry[] }> {
    return this.request("POST", `/api/rooms/${roomId}/designs`, { seed });
  }

  illuminance(designId: string, spacing: number, workplane?: number): Promise<FieldResponse> {
    const body: Record<string, number> = { spacing };
    if (workplane !== undefined) body.workplane_height = workplane;
    return this.request("POST", `/api/designs/${designId}/illuminance`, body);
  }

  patchDesign(designId: string, edits: FixtureEdit[]): Promise<DesignDoc> {
    return this.request("PATCH", `/api/designs/${designId}`, { fixtures: edits });
  }

  simulate(designId: string, policy: unknown, schedule: unknown): Promise<SimulateResponse> {
    return this.request("POST", `/api/designs/${designId}/simulate`, { policy, schedule });
  }

  async traceCsv(traceId: string): Promise<string> {
    const res = await fetch(`${this.base}/api/traces/${traceId}.csv`);
    if (!res.ok) throw await parseFailure(res);
    return res.text();
  }

  compare(designId: string, policies: unknown[], schedule: unknown): Promise<CompareResponse> {
    return this.request("POST", `/api/designs/${designId}/compare`, { policies, schedule });
  }
}

// One in-flight request per panel: each call takes a ticket, and a response
// whose ticket has been superseded is dropped instead of rendered.
export class PanelFetcher {
  private seq = 0;

  async run<T>(job: () => Promise<T>): Promise<T | undefined> {
    const ticket = ++this.seq;
    const value = await job();
    return ticket === this.seq ? value : undefined;
  }

  cancel(): void {
    this.seq++;
  }
}
