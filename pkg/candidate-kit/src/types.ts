/**
 * Wire protocol types.
 *
 * The host writes one JSON object per line on stdin and reads exactly one
 * JSON line back per request. Grids travel as row-major 2D integer arrays:
 * the outer array is rows, so cell (x, y) is rows[y][x].
 */

/** A grid as it travels on the wire: rows of color indices 0-9. */
export type GridRows = number[][];

export type ProtocolRequest =
  | { op: "transform"; input: GridRows }
  | { op: "generate"; seed: number };

export type ProtocolReply = { output: GridRows } | { error: string };

/** A deterministic grid-to-grid transform. */
export type TransformFn = (input: GridRows) => GridRows;

/** A stochastic input generator driven by a deterministic PRNG. */
export type GenerateFn = (rng: Rng) => GridRows;

/** Minimal PRNG surface handed to generators. */
export interface Rng {
  /** Uniform float in [0, 1). */
  next(): number;
  /** Uniform integer in [lo, hi] inclusive. */
  int(lo: number, hi: number): number;
}
