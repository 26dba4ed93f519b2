/**
 * Readers/writers for the core toolkit's text formats: occupancy maps,
 * rating / cost-value grids, and dataset CSVs.
 *
 * Grids are stored row-major with index y * width + x and (0, 0) at the
 * lower-left; file row 0 is the top of the map (y = height - 1).
 */

import * as fs from "fs";
import * as path from "path";

export interface OccupancyMap {
  id: string;
  width: number;
  height: number;
  /** 1 = free, 0 = obstacle; index y * width + x. */
  free: Uint8Array;
  start: [number, number];
  goal: [number, number];
}

export interface ValueGrid {
  width: number;
  height: number;
  m: number;
  source: string;
  /** index y * width + x. */
  values: Float64Array;
}

export interface Sample {
  mapId: string;
  x: number;
  y: number;
  target: number;
}

export function readMap(file: string): OccupancyMap {
  const lines = fs.readFileSync(file, "utf8").split(/\r?\n/);
  if (!lines[0].startsWith("type")) {
    throw new Error(`bad map header in ${file}`);
  }
  const height = parseInt(lines[1].split(/\s+/)[1], 10);
  const width = parseInt(lines[2].split(/\s+/)[1], 10);
  if (!Number.isFinite(width) || !Number.isFinite(height) || lines[3].trim() !== "map") {
    throw new Error(`bad map header in ${file}`);
  }
  const free = new Uint8Array(width * height);
  for (let row = 0; row < height; row++) {
    const text = lines[4 + row];
    if (text === undefined || text.length < width) {
      throw new Error(`map ${file} truncated at row ${row}`);
    }
    const y = height - 1 - row;
    for (let x = 0; x < width; x++) {
      const ch = text[x];
      if (ch === ".") {
        free[y * width + x] = 1;
      } else if (ch !== "@") {
        throw new Error(`map ${file} has unknown cell char ${ch}`);
      }
    }
  }
  let start: [number, number] = [0, 0];
  let goal: [number, number] = [width - 1, height - 1];
  for (const extra of lines.slice(4 + height)) {
    const parts = extra.trim().split(/\s+/);
    if (parts[0] === "start") start = [parseInt(parts[1], 10), parseInt(parts[2], 10)];
    else if (parts[0] === "goal") goal = [parseInt(parts[1], 10), parseInt(parts[2], 10)];
  }
  return { id: path.basename(file, ".map"), width, height, free, start, goal };
}

export function readValueGrid(file: string): ValueGrid {
  const lines = fs.readFileSync(file, "utf8").split(/\r?\n/);
  const height = parseInt(lines[0].split(/\s+/)[1], 10);
  const width = parseInt(lines[1].split(/\s+/)[1], 10);
  const m = parseInt(lines[2].split(/\s+/)[1], 10);
  const source = lines[3].split(/\s+/)[1];
  if (!Number.isFinite(width) || !Number.isFinite(height) || !source) {
    throw new Error(`bad grid header in ${file}`);
  }
  const values = new Float64Array(width * height);
  for (let row = 0; row < height; row++) {
    const parts = lines[4 + row].trim().split(/\s+/);
    if (parts.length !== width) {
      throw new Error(`grid ${file} row ${row} has ${parts.length} values, want ${width}`);
    }
    const y = height - 1 - row;
    for (let x = 0; x < width; x++) {
      values[y * width + x] = parseFloat(parts[x]);
    }
  }
  return { width, height, m, source, values };
}

export function writeValueGrid(grid: ValueGrid, file: string): void {
  const out: string[] = [
    `height ${grid.height}`,
    `width ${grid.width}`,
    `m ${grid.m}`,
    `source ${grid.source}`,
  ];
  for (let y = grid.height - 1; y >= 0; y--) {
    const row: string[] = [];
    for (let x = 0; x < grid.width; x++) {
      row.push(grid.values[y * grid.width + x].toFixed(4));
    }
    out.push(row.join(" "));
  }
  fs.writeFileSync(file, out.join("\n") + "\n");
}

export const DATASET_HEADER = "map_id,x,y,rating";

export function readDatasetCsv(file: string): Sample[] {
  const lines = fs.readFileSync(file, "utf8").split(/\r?\n/);
  if (lines[0] !== DATASET_HEADER) {
    throw new Error(`bad dataset header in ${file}`);
  }
  const samples: Sample[] = [];
  for (const line of lines.slice(1)) {
    if (!line.trim()) continue;
    const [mapId, x, y, rating] = line.split(",");
    samples.push({ mapId, x: parseInt(x, 10), y: parseInt(y, 10), target: parseFloat(rating) });
  }
  return samples;
}

/** Load every map named by the samples from a maps directory. */
export function loadMaps(mapsDir: string, ids: Iterable<string>): Map<string, OccupancyMap> {
  const out = new Map<string, OccupancyMap>();
  for (const id of ids) {
    if (out.has(id)) continue;
    const file = path.join(mapsDir, `${id}.map`);
    if (!fs.existsSync(file)) {
      throw new Error(`map file not found for sample: ${file}`);
    }
    out.set(id, readMap(file));
  }
  return out;
}
