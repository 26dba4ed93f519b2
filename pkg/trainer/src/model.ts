/**
 * The regression network: 3 convolution + max-pool blocks feeding 3 fully
 * connected layers down to one scalar.  Rating models end in a sigmoid
 * (targets live in [0, 1]); cost-to-go models end linear.
 */

import * as fs from "fs";
import * as path from "path";

import * as tf from "@tensorflow/tfjs";

export type Task = "rating" | "costtogo";

export interface ModelConfig {
  height: number;
  width: number;
  task: Task;
  convWidths: [number, number, number];
  denseWidths: [number, number];
  seed: number;
}

export const DEFAULT_CONV: [number, number, number] = [16, 32, 64];
export const DEFAULT_DENSE: [number, number] = [64, 32];

export function buildModel(cfg: ModelConfig): tf.LayersModel {
  const model = tf.sequential();
  const init = (offset: number) => tf.initializers.heNormal({ seed: cfg.seed + offset });
  cfg.convWidths.forEach((filters, i) => {
    model.add(
      tf.layers.conv2d({
        inputShape: i === 0 ? [cfg.height, cfg.width, 2] : undefined,
        filters,
        kernelSize: 3,
        padding: "same",
        activation: "relu",
        kernelInitializer: init(i),
      })
    );
    model.add(tf.layers.maxPooling2d({ poolSize: 2 }));
  });
  model.add(tf.layers.flatten());
  cfg.denseWidths.forEach((units, i) => {
    model.add(
      tf.layers.dense({ units, activation: "relu", kernelInitializer: init(10 + i) })
    );
  });
  model.add(
    tf.layers.dense({
      units: 1,
      activation: cfg.task === "rating" ? "sigmoid" : undefined,
      kernelInitializer: init(20),
    })
  );
  return model;
}

/** Serialize a model plus its config into a directory (pure-js io handler). */
export async function saveModel(
  model: tf.LayersModel,
  cfg: ModelConfig,
  dir: string
): Promise<void> {
  fs.mkdirSync(dir, { recursive: true });
  await model.save(
    tf.io.withSaveHandler(async (artifacts) => {
      fs.writeFileSync(
        path.join(dir, "topology.json"),
        JSON.stringify({
          modelTopology: artifacts.modelTopology,
          weightSpecs: artifacts.weightSpecs,
        })
      );
      fs.writeFileSync(
        path.join(dir, "weights.bin"),
        Buffer.from(artifacts.weightData as ArrayBuffer)
      );
      return { modelArtifactsInfo: { dateSaved: new Date(), modelTopologyType: "JSON" } };
    })
  );
  fs.writeFileSync(path.join(dir, "config.json"), JSON.stringify(cfg, null, 2));
}

export async function loadModel(dir: string): Promise<{ model: tf.LayersModel; cfg: ModelConfig }> {
  const topo = JSON.parse(fs.readFileSync(path.join(dir, "topology.json"), "utf8"));
  const weightData = fs.readFileSync(path.join(dir, "weights.bin"));
  const model = await tf.loadLayersModel(
    tf.io.fromMemory({
      modelTopology: topo.modelTopology,
      weightSpecs: topo.weightSpecs,
      weightData: weightData.buffer.slice(
        weightData.byteOffset,
        weightData.byteOffset + weightData.byteLength
      ),
    })
  );
  const cfg = JSON.parse(fs.readFileSync(path.join(dir, "config.json"), "utf8")) as ModelConfig;
  return { model, cfg };
}
