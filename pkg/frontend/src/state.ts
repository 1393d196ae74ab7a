import type { DesignDoc, FieldResponse, FixtureEdit, RoomDoc, ScenarioEntry } from "./types";
import { clampTick, type ParsedTrace } from "./trace";

// Central view state. Invariants, enforced here rather than in the panels:
//  - the active scenario is always one of the listed scenarios;
//  - the timeline position stays within the loaded trace;
//  - the edit buffer is cleared on scenario switch;
//  - the rendered design is always the last service-confirmed one, so a
//    rejected edit "restores" the previous view simply by dropping the
//    buffer.
export class StudioStore {
  roomId: string | null = null;
  room: RoomDoc | null = null;
  scenarios: ScenarioEntry[] = [];
  activeId: string | null = null;
  editBuffer: Map<number, FixtureEdit> = new Map();
  field: FieldResponse | null = null;
  trace: ParsedTrace | null = null;
  energySoFar: Float64Array | null = null;
  tick = 0;

  setRoom(id: string, room: RoomDoc): void {
    this.roomId = id;
    this.room = room;
    this.scenarios = [];
    this.activeId = null;
    this.editBuffer.clear();
    this.field = null;
    this.clearTrace();
  }

  setScenarios(entries: ScenarioEntry[]): void {
    this.scenarios = entries;
    this.activeId = entries.length > 0 ? entries[0].design.id : null;
    this.editBuffer.clear();
    this.field = null;
    this.clearTrace();
  }

  // Returns false when the scenario is already active: the caller must not
  // refetch anything in that case. Switching discards pending edits.
  switchScenario(id: string): boolean {
    if (id === this.activeId) return false;
    if (!this.scenarios.some((s) => s.design.id === id)) {
      throw new RangeError(`unknown scenario ${id}`);
    }
    this.activeId = id;
    this.editBuffer.clear();
    this.field = null;
    this.clearTrace();
    return true;
  }

  activeScenario(): ScenarioEntry | null {
    return this.scenarios.find((s) => s.design.id === this.activeId) ?? null;
  }

  activeDesign(): DesignDoc | null {
    return this.activeScenario()?.design ?? null;
  }

  queueEdit(edit: FixtureEdit): void {
    const merged = { ...this.editBuffer.get(edit.index), ...edit };
    this.editBuffer.set(edit.index, merged);
  }

  pendingEdits(): FixtureEdit[] {
    return [...this.editBuffer.values()].sort((a, b) => a.index - b.index);
  }

  // Positions for ghost glyphs: only fixtures whose pending edit moves them.
  ghostPositions(): (number[] | null)[] {
    const design = this.activeDesign();
    if (!design) return [];
    return design.fixtures.map((_, i) => this.editBuffer.get(i)?.position ?? null);
  }

  // The service confirmed the PATCH and returned the updated design.
  confirmEdit(updated: DesignDoc): void {
    const idx = this.scenarios.findIndex((s) => s.design.id === updated.id);
    if (idx >= 0) this.scenarios[idx] = { ...this.scenarios[idx], design: updated };
    this.editBuffer.clear();
    this.field = null;
  }

  // The service rejected the PATCH; the confirmed design was never replaced,
  // so clearing the buffer is all it takes to restore the previous view.
  rejectEdit(): void {
    this.editBuffer.clear();
  }

  loadTrace(trace: ParsedTrace, energySoFar: Float64Array): void {
    this.trace = trace;
    this.energySoFar = energySoFar;
    this.tick = 0;
  }

  clearTrace(): void {
    this.trace = null;
    this.energySoFar = null;
    this.tick = 0;
  }

  scrub(tick: number): number {
    const length = this.trace?.ticks.length ?? 0;
    this.tick = clampTick(tick, length);
    return this.tick;
  }

  tickState() {
    if (!this.trace) return null;
    return this.trace.ticks[this.tick];
  }

  energyAtTick(): number {
    return this.energySoFar ? this.energySoFar[this.tick] : 0;
  }
}
