/**
 * The request loop: LF-delimited JSON requests on stdin, one JSON reply line
 * per request on stdout, nothing else ever written to stdout.
 *
 * Program exceptions become {"error": ...} replies and the loop keeps
 * serving; only stdin EOF ends the process (exit 0). Diagnostics belong on
 * stderr.
 */

import * as readline from "node:readline";

import { validateGrid } from "./grid.js";
import type { GenerateFn, ProtocolReply, Rng, TransformFn } from "./types.js";

/** splitmix32: a tiny deterministic PRNG so generators replay per seed. */
export function makeRng(seed: number): Rng {
  // fold the (possibly large) seed into 32 bits deterministically
  let state = (Math.floor(seed) % 0xffffffff) >>> 0;
  const next = (): number => {
    state = (state + 0x9e3779b9) >>> 0;
    let z = state;
    z = Math.imul(z ^ (z >>> 16), 0x21f0aaad);
    z = Math.imul(z ^ (z >>> 15), 0x735a2d97);
    z = z ^ (z >>> 15);
    return (z >>> 0) / 4294967296;
  };
  return {
    next,
    int(lo: number, hi: number): number {
      return lo + Math.floor(next() * (hi - lo + 1));
    },
  };
}

/** Compute the one-line reply for one request line. */
export function handleLine(
  line: string,
  transformFn: TransformFn,
  generateFn?: GenerateFn,
): ProtocolReply {
  try {
    const request: unknown = JSON.parse(line);
    if (typeof request !== "object" || request === null || !("op" in request)) {
      return { error: "request must be an object with an op field" };
    }
    const op = (request as { op: unknown }).op;
    if (op === "transform") {
      const input = validateGrid((request as { input?: unknown }).input);
      return { output: validateGrid(transformFn(input)) };
    }
    if (op === "generate") {
      if (generateFn === undefined) {
        return { error: "this program has no generator" };
      }
      const seed = (request as { seed?: unknown }).seed;
      if (typeof seed !== "number") {
        return { error: "generate needs a numeric seed" };
      }
      return { output: validateGrid(generateFn(makeRng(seed))) };
    }
    return { error: `unknown op ${JSON.stringify(op)}` };
  } catch (e) {
    return { error: e instanceof Error ? e.message : String(e) };
  }
}

/**
 * Serve a candidate program forever (until stdin closes).
 *
 * Usage from a program module:
 *   serve(myTransform, myGenerator);
 */
export function serve(transformFn: TransformFn, generateFn?: GenerateFn): void {
  const rl = readline.createInterface({ input: process.stdin, terminal: false });
  rl.on("line", (line: string) => {
    if (line.trim() === "") {
      return;
    }
    const reply = handleLine(line, transformFn, generateFn);
    process.stdout.write(JSON.stringify(reply) + "\n");
  });
  rl.on("close", () => {
    process.exit(0);
  });
}
