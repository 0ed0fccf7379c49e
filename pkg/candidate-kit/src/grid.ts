/**
 * Grid helpers shared by candidate programs.
 *
 * The color table matches the host toolkit exactly: ten colors, Black at
 * index 0 as the conventional background.
 */

import type { GridRows } from "./types.js";

export const Color = {
  Black: 0,
  Blue: 1,
  Red: 2,
  Green: 3,
  Yellow: 4,
  Gray: 5,
  Pink: 6,
  Orange: 7,
  Teal: 8,
  Brown: 9,
} as const;

export const COLOR_NAMES = [
  "Black", "Blue", "Red", "Green", "Yellow",
  "Gray", "Pink", "Orange", "Teal", "Brown",
] as const;

/** Width and height of a row-major grid; cell (x, y) is rows[y][x]. */
export function dims(grid: GridRows): { width: number; height: number } {
  return { width: grid[0]?.length ?? 0, height: grid.length };
}

export function gridsEqual(a: GridRows, b: GridRows): boolean {
  if (a.length !== b.length) return false;
  for (let y = 0; y < a.length; y++) {
    if (a[y].length !== b[y].length) return false;
    for (let x = 0; x < a[y].length; x++) {
      if (a[y][x] !== b[y][x]) return false;
    }
  }
  return true;
}

export function filled(width: number, height: number, color = Color.Black): GridRows {
  return Array.from({ length: height }, () => Array<number>(width).fill(color));
}

/** Throws unless the value is a well-formed grid of colors 0-9. */
export function validateGrid(value: unknown): GridRows {
  if (!Array.isArray(value) || value.length === 0) {
    throw new Error("grid must be a non-empty array of rows");
  }
  const width = Array.isArray(value[0]) ? value[0].length : -1;
  if (width < 1) {
    throw new Error("grid rows must be non-empty arrays");
  }
  for (const row of value) {
    if (!Array.isArray(row) || row.length !== width) {
      throw new Error("grid rows must all have equal length");
    }
    for (const cell of row) {
      if (!Number.isInteger(cell) || cell < 0 || cell > 9) {
        throw new Error(`cell value ${String(cell)} is not a color 0-9`);
      }
    }
  }
  return value as GridRows;
}
