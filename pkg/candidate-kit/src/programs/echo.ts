/**
 * Reference program: echoes the input grid unchanged.
 *
 * Run: node dist/programs/echo.js
 */

import { pathToFileURL } from "node:url";

import { serve } from "../protocol.js";
import type { GridRows, Rng } from "../types.js";

export function transform(input: GridRows): GridRows {
  return input;
}

export function generate(rng: Rng): GridRows {
  const width = rng.int(1, 6);
  const height = rng.int(1, 6);
  return Array.from({ length: height }, () =>
    Array.from({ length: width }, () => rng.int(0, 9)),
  );
}

if (process.argv[1] && import.meta.url === pathToFileURL(process.argv[1]).href) {
  serve(transform, generate);
}
