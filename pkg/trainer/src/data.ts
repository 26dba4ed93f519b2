/**
 * Sample encoding and batching.
 *
 * Each training input is a 2-channel H x W image: channel 0 is the obstacle
 * mask (1 = obstacle), channel 1 marks the query cell one-hot.  The query
 * marker lives in its own channel so it never overwrites map structure.
 */

import * as tf from "@tensorflow/tfjs";

import { OccupancyMap, Sample } from "./formats";

export function mulberry32(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a |= 0;
    a = (a + 0x6d2b79f5) | 0;
    let t = Math.imul(a ^ (a >>> 15), 1 | a);
    t = (t + Math.imul(t ^ (t >>> 7), 61 | t)) ^ t;
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

export function shuffledIndices(n: number, rand: () => number): Int32Array {
  const idx = new Int32Array(n);
  for (let i = 0; i < n; i++) idx[i] = i;
  for (let i = n - 1; i > 0; i--) {
    const j = Math.floor(rand() * (i + 1));
    const tmp = idx[i];
    idx[i] = idx[j];
    idx[j] = tmp;
  }
  return idx;
}

export function encodeSample(
  map: OccupancyMap,
  x: number,
  y: number,
  buffer: Float32Array,
  offset: number
): void {
  const n = map.width * map.height;
  for (let i = 0; i < n; i++) {
    buffer[offset + 2 * i] = map.free[i] ? 0 : 1;
    buffer[offset + 2 * i + 1] = 0;
  }
  buffer[offset + 2 * (y * map.width + x) + 1] = 1;
}

export interface Batch {
  xs: tf.Tensor4D;
  ys: tf.Tensor2D;
}

/** Materialize a batch of samples as [B, H, W, 2] / [B, 1] tensors. */
export function makeBatch(
  samples: Sample[],
  order: ArrayLike<number>,
  from: number,
  to: number,
  maps: Map<string, OccupancyMap>,
  height: number,
  width: number
): Batch {
  const count = to - from;
  const plane = height * width * 2;
  const data = new Float32Array(count * plane);
  const targets = new Float32Array(count);
  for (let i = 0; i < count; i++) {
    const s = samples[order[from + i]];
    const map = maps.get(s.mapId)!;
    if (map.width !== width || map.height !== height) {
      throw new Error(
        `map ${s.mapId} is ${map.width}x${map.height}, expected ${width}x${height}`
      );
    }
    if (s.x < 0 || s.x >= width || s.y < 0 || s.y >= height || !map.free[s.y * width + s.x]) {
      throw new Error(`sample at (${s.x}, ${s.y}) on ${s.mapId} is not a free cell`);
    }
    encodeSample(map, s.x, s.y, data, i * plane);
    targets[i] = s.target;
  }
  return {
    xs: tf.tensor4d(data, [count, height, width, 2]),
    ys: tf.tensor2d(targets, [count, 1]),
  };
}

/** Mean |target - prediction| of the constant-mean predictor. */
export function constantMeanBaseline(train: Sample[], val: Sample[]): number {
  const mean = train.reduce((acc, s) => acc + s.target, 0) / train.length;
  return val.reduce((acc, s) => acc + Math.abs(s.target - mean), 0) / val.length;
}
