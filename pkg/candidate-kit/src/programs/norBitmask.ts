/**
 * Reference program: NOR of two brown bitmasks split by a blue column.
 *
 * The input holds two equally sized brown-on-black masks with a single
 * all-blue column between them. The output is one mask of that size where a
 * cell is teal exactly when brown in neither input mask, and black
 * otherwise.
 *
 * Run: node dist/programs/norBitmask.js
 */

import { pathToFileURL } from "node:url";

import { Color, dims, filled } from "../grid.js";
import { serve } from "../protocol.js";
import type { GridRows, Rng } from "../types.js";

export function transform(input: GridRows): GridRows {
  const { width, height } = dims(input);
  let barX = -1;
  for (let x = 0; x < width; x++) {
    let allBlue = true;
    for (let y = 0; y < height; y++) {
      if (input[y][x] !== Color.Blue) {
        allBlue = false;
        break;
      }
    }
    if (allBlue) {
      barX = x;
      break;
    }
  }
  if (barX < 0) {
    throw new Error("no blue separator column found");
  }
  const out = filled(barX, height);
  for (let x = 0; x < barX; x++) {
    for (let y = 0; y < height; y++) {
      const left = input[y][x] === Color.Brown;
      const right = input[y][barX + 1 + x] === Color.Brown;
      if (!left && !right) {
        out[y][x] = Color.Teal;
      }
    }
  }
  return out;
}

export function generate(rng: Rng): GridRows {
  const w = rng.int(2, 9);
  const h = rng.int(2, 9);
  const out = filled(2 * w + 1, h);
  for (let y = 0; y < h; y++) {
    out[y][w] = Color.Blue;
    for (let x = 0; x < w; x++) {
      if (rng.next() < 0.5) out[y][x] = Color.Brown;
      if (rng.next() < 0.5) out[y][w + 1 + x] = Color.Brown;
    }
  }
  return out;
}

if (process.argv[1] && import.meta.url === pathToFileURL(process.argv[1]).href) {
  serve(transform, generate);
}
