import type { RoomDoc } from "./types";

// The 4 x 3 m bedroom used throughout: wall-adjacent bed, wall-mounted TV.
export const SAMPLE_BEDROOM: RoomDoc = {
  outline: [[0, 0], [4, 0], [4, 3], [0, 3]],
  ceiling_height: 2.5,
  surfaces: [
    { kind: "floor", reflectance: 0.2 },
    { kind: "ceiling", reflectance: 0.7 },
    { kind: "wall", reflectance: 0.5 },
  ],
  objects: [
    { kind: "bed", footprint: [[1.0, 1.4], [2.0, 3.0]], height: 0.5 },
    { kind: "tv", footprint: [[1.7, 0.0], [2.3, 0.25]], height: 1.1, facing: [0, 1] },
  ],
  function: "bedroom",
};
