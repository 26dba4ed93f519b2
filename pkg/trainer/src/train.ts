/**
 * Supervised training of the rating / cost-to-go regressor.
 *
 * Adam with a stepped learning rate (x0.1 after epochs 20 and 35), seeded
 * shuffling and initialization, one log line per epoch with train/val MAE,
 * best-validation checkpointing.
 */

import * as fs from "fs";
import * as path from "path";

import * as tf from "@tensorflow/tfjs";

import { constantMeanBaseline, makeBatch, mulberry32, shuffledIndices } from "./data";
import { loadMaps, readDatasetCsv, readValueGrid, Sample } from "./formats";
import { buildModel, DEFAULT_CONV, DEFAULT_DENSE, ModelConfig, saveModel, Task } from "./model";

export interface TrainOptions {
  dataCsv: string;
  valCsv?: string; // default: dataset_val.csv next to dataCsv
  mapsDir: string;
  task: Task;
  epochs: number;
  batchSize: number;
  learningRate: number;
  seed: number;
  outDir: string;
  hgridsDir?: string; // cost-to-go targets (required for task=costtogo)
  convWidths?: [number, number, number];
  denseWidths?: [number, number];
  quiet?: boolean;
}

export const DEFAULT_EPOCHS = 45;
export const DEFAULT_BATCH = 256;
export const DEFAULT_LR = 1e-3;
const LR_DROP_EPOCHS = [20, 35]; // x0.1 after each

export interface EpochStat {
  epoch: number;
  learningRate: number;
  trainMae: number;
  valMae: number;
}

export interface TrainOutcome {
  stats: EpochStat[];
  bestValMae: number;
  baselineValMae: number;
  modelDir: string;
}

function lrForEpoch(base: number, epoch: number): number {
  let lr = base;
  for (const drop of LR_DROP_EPOCHS) {
    if (epoch > drop) lr *= 0.1;
  }
  return lr;
}

export async function train(opts: TrainOptions): Promise<TrainOutcome> {
  const valCsv = opts.valCsv ?? path.join(path.dirname(opts.dataCsv), "dataset_val.csv");
  let trainSamples = readDatasetCsv(opts.dataCsv);
  let valSamples = readDatasetCsv(valCsv);
  if (trainSamples.length === 0 || valSamples.length === 0) {
    throw new Error("empty training or validation dataset");
  }
  if (opts.task === "costtogo") {
    if (!opts.hgridsDir) {
      throw new Error("task costtogo needs --hgrids with per-map cost grids");
    }
    trainSamples = lookupCostTargets(trainSamples, opts.hgridsDir);
    valSamples = lookupCostTargets(valSamples, opts.hgridsDir);
  }

  const ids = new Set<string>();
  for (const s of trainSamples) ids.add(s.mapId);
  for (const s of valSamples) ids.add(s.mapId);
  const maps = loadMaps(opts.mapsDir, ids);
  const any = maps.get(trainSamples[0].mapId)!;
  const { width, height } = any;

  const cfg: ModelConfig = {
    height,
    width,
    task: opts.task,
    convWidths: opts.convWidths ?? DEFAULT_CONV,
    denseWidths: opts.denseWidths ?? DEFAULT_DENSE,
    seed: opts.seed,
  };
  const model = buildModel(cfg);
  const optimizer = tf.train.adam(opts.learningRate);
  const rand = mulberry32(opts.seed);
  const valOrder = new Int32Array(valSamples.length);
  for (let i = 0; i < valOrder.length; i++) valOrder[i] = i;

  fs.mkdirSync(opts.outDir, { recursive: true });
  const modelDir = path.join(opts.outDir, "model");
  const stats: EpochStat[] = [];
  let bestValMae = Infinity;

  for (let epoch = 1; epoch <= opts.epochs; epoch++) {
    const lr = lrForEpoch(opts.learningRate, epoch);
    (optimizer as unknown as { learningRate: number }).learningRate = lr;
    const order = shuffledIndices(trainSamples.length, rand);
    let maeSum = 0;
    let seen = 0;
    for (let from = 0; from < trainSamples.length; from += opts.batchSize) {
      const to = Math.min(from + opts.batchSize, trainSamples.length);
      const batch = makeBatch(trainSamples, order, from, to, maps, height, width);
      const batchMae = tf.tidy(() => {
        let mae = 0;
        optimizer.minimize(() => {
          const pred = model.apply(batch.xs, { training: true }) as tf.Tensor;
          mae = tf.metrics.meanAbsoluteError(batch.ys, pred).dataSync()[0];
          return tf.losses.meanSquaredError(batch.ys, pred) as tf.Scalar;
        });
        return mae;
      });
      maeSum += batchMae * (to - from);
      seen += to - from;
      batch.xs.dispose();
      batch.ys.dispose();
    }
    const valMae = evaluateMae(model, valSamples, valOrder, maps, height, width, opts.batchSize);
    stats.push({ epoch, learningRate: lr, trainMae: maeSum / seen, valMae });
    if (!opts.quiet) {
      console.log(
        `epoch ${epoch}/${opts.epochs} lr=${lr.toExponential(1)} ` +
          `train_mae=${(maeSum / seen).toFixed(4)} val_mae=${valMae.toFixed(4)}`
      );
    }
    if (valMae < bestValMae) {
      bestValMae = valMae;
      await saveModel(model, cfg, modelDir);
    }
  }

  const baselineValMae = constantMeanBaseline(trainSamples, valSamples);
  const log = ["epoch,learning_rate,train_mae,val_mae"];
  for (const s of stats) {
    log.push(`${s.epoch},${s.learningRate},${s.trainMae.toFixed(6)},${s.valMae.toFixed(6)}`);
  }
  fs.writeFileSync(path.join(opts.outDir, "train_log.csv"), log.join("\n") + "\n");
  fs.writeFileSync(
    path.join(opts.outDir, "summary.json"),
    JSON.stringify(
      {
        task: opts.task,
        epochs: opts.epochs,
        batchSize: opts.batchSize,
        learningRate: opts.learningRate,
        lrDropEpochs: LR_DROP_EPOCHS,
        seed: opts.seed,
        convWidths: cfg.convWidths,
        denseWidths: cfg.denseWidths,
        trainSamples: trainSamples.length,
        valSamples: valSamples.length,
        bestValMae,
        baselineValMae,
        outputScale: opts.task === "rating" ? "unit rating" : "raw octile cost",
      },
      null,
      2
    )
  );
  return { stats, bestValMae, baselineValMae, modelDir };
}

export function evaluateMae(
  model: tf.LayersModel,
  samples: Sample[],
  order: ArrayLike<number>,
  maps: Map<string, import("./formats").OccupancyMap>,
  height: number,
  width: number,
  batchSize: number
): number {
  let sum = 0;
  for (let from = 0; from < samples.length; from += batchSize) {
    const to = Math.min(from + batchSize, samples.length);
    const batch = makeBatch(samples, order, from, to, maps, height, width);
    const mae = tf.tidy(
      () =>
        tf.metrics
          .meanAbsoluteError(batch.ys, model.predict(batch.xs) as tf.Tensor)
          .dataSync()[0]
    );
    sum += mae * (to - from);
    batch.xs.dispose();
    batch.ys.dispose();
  }
  return sum / samples.length;
}

function lookupCostTargets(samples: Sample[], hgridsDir: string): Sample[] {
  const grids = new Map<string, { width: number; values: Float64Array }>();
  return samples.map((s) => {
    let grid = grids.get(s.mapId);
    if (!grid) {
      const parsed = readValueGrid(path.join(hgridsDir, `${s.mapId}.hgrid`));
      if (parsed.source !== "hvalue") {
        throw new Error(`${s.mapId}.hgrid has source ${parsed.source}, want hvalue`);
      }
      grid = { width: parsed.width, values: new Float64Array(parsed.values) };
      grids.set(s.mapId, grid);
    }
    const target = grid.values[s.y * grid.width + s.x];
    if (!Number.isFinite(target)) {
      throw new Error(`non-finite cost target at (${s.x}, ${s.y}) on ${s.mapId}`);
    }
    return { ...s, target };
  });
}
