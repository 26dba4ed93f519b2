/**
 * Evaluate a trained model at every free cell of each map and write the
 * core's grid file formats: `source learned` ratings clamped to [0, 1], or
 * `source hvalue` cost grids clamped at 0.
 */

import * as fs from "fs";
import * as path from "path";

import * as tf from "@tensorflow/tfjs";

import { encodeSample, } from "./data";
import { OccupancyMap, readMap, writeValueGrid } from "./formats";
import { loadModel, ModelConfig } from "./model";

const PREDICT_BATCH = 512;

export interface ExportOptions {
  modelDir: string;
  mapsDir: string;
  outDir: string;
  m: number; // rating granularity recorded in the file header
}

export async function exportGrids(opts: ExportOptions): Promise<string[]> {
  const { model, cfg } = await loadModel(opts.modelDir);
  const mapFiles = fs
    .readdirSync(opts.mapsDir)
    .filter((f) => f.endsWith(".map"))
    .sort();
  if (mapFiles.length === 0) {
    throw new Error(`no .map files in ${opts.mapsDir}`);
  }
  fs.mkdirSync(opts.outDir, { recursive: true });
  const written: string[] = [];
  for (const file of mapFiles) {
    const map = readMap(path.join(opts.mapsDir, file));
    if (map.width !== cfg.width || map.height !== cfg.height) {
      throw new Error(
        `map ${map.id} is ${map.width}x${map.height}, model expects ${cfg.width}x${cfg.height}`
      );
    }
    const values = predictMap(model, cfg, map);
    const isRating = cfg.task === "rating";
    const out = path.join(
      opts.outDir,
      `${map.id}.${isRating ? "rating" : "hgrid"}`
    );
    writeValueGrid(
      {
        width: map.width,
        height: map.height,
        m: isRating ? opts.m : 0,
        source: isRating ? "learned" : "hvalue",
        values,
      },
      out
    );
    written.push(out);
  }
  return written;
}

function predictMap(model: tf.LayersModel, cfg: ModelConfig, map: OccupancyMap): Float64Array {
  const { width, height } = map;
  const values = new Float64Array(width * height); // obstacles stay 0
  const cells: number[] = [];
  for (let i = 0; i < width * height; i++) {
    if (map.free[i]) cells.push(i);
  }
  const plane = width * height * 2;
  for (let from = 0; from < cells.length; from += PREDICT_BATCH) {
    const to = Math.min(from + PREDICT_BATCH, cells.length);
    const data = new Float32Array((to - from) * plane);
    for (let i = 0; i < to - from; i++) {
      const cell = cells[from + i];
      encodeSample(map, cell % width, Math.floor(cell / width), data, i * plane);
    }
    const xs = tf.tensor4d(data, [to - from, height, width, 2]);
    const pred = model.predict(xs) as tf.Tensor;
    const flat = pred.dataSync();
    for (let i = 0; i < to - from; i++) {
      let v = flat[i];
      v = cfg.task === "rating" ? Math.min(1, Math.max(0, v)) : Math.max(0, v);
      values[cells[from + i]] = v;
    }
    xs.dispose();
    pred.dispose();
  }
  return values;
}
