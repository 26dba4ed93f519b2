#!/usr/bin/env node
/**
 * train  --data <csv> --maps <dir> [--val <csv>] [--task rating|costtogo]
 *        [--epochs 45] [--batch 256] [--lr 1e-3] [--seed 0] [--hgrids <dir>]
 *        [--conv 16,32,64] [--dense 64,32] --out <dir>
 * export --model <dir> --maps <dir> --out <dir> [--m 10]
 */

import { exportGrids } from "./export";
import { DEFAULT_BATCH, DEFAULT_EPOCHS, DEFAULT_LR, train } from "./train";

function parseFlags(argv: string[]): Map<string, string> {
  const flags = new Map<string, string>();
  for (let i = 0; i < argv.length; i += 2) {
    const key = argv[i];
    const value = argv[i + 1];
    if (!key.startsWith("--") || value === undefined) {
      throw new Error(`expected --flag value pairs, got '${argv.slice(i).join(" ")}'`);
    }
    flags.set(key.slice(2), value);
  }
  return flags;
}

function required(flags: Map<string, string>, name: string): string {
  const value = flags.get(name);
  if (value === undefined) throw new Error(`missing required --${name}`);
  return value;
}

export async function main(argv: string[]): Promise<number> {
  const [command, ...rest] = argv;
  try {
    if (command === "train") {
      const flags = parseFlags(rest);
      const task = (flags.get("task") ?? "rating") as "rating" | "costtogo";
      if (task !== "rating" && task !== "costtogo") {
        throw new Error(`unknown task '${task}'`);
      }
      const parseWidths = <T extends number[]>(text: string | undefined): T | undefined =>
        text === undefined ? undefined : (text.split(",").map((v) => parseInt(v, 10)) as T);
      const outcome = await train({
        dataCsv: required(flags, "data"),
        valCsv: flags.get("val"),
        mapsDir: required(flags, "maps"),
        task,
        epochs: parseInt(flags.get("epochs") ?? String(DEFAULT_EPOCHS), 10),
        batchSize: parseInt(flags.get("batch") ?? String(DEFAULT_BATCH), 10),
        learningRate: parseFloat(flags.get("lr") ?? String(DEFAULT_LR)),
        seed: parseInt(flags.get("seed") ?? "0", 10),
        outDir: required(flags, "out"),
        hgridsDir: flags.get("hgrids"),
        convWidths: parseWidths(flags.get("conv")),
        denseWidths: parseWidths(flags.get("dense")),
      });
      console.log(
        `best val_mae=${outcome.bestValMae.toFixed(4)} ` +
          `(constant-mean baseline ${outcome.baselineValMae.toFixed(4)}); ` +
          `model at ${outcome.modelDir}`
      );
      return 0;
    }
    if (command === "export") {
      const flags = parseFlags(rest);
      const written = await exportGrids({
        modelDir: required(flags, "model"),
        mapsDir: required(flags, "maps"),
        outDir: required(flags, "out"),
        m: parseInt(flags.get("m") ?? "10", 10),
      });
      console.log(`wrote ${written.length} grid files to ${required(flags, "out")}`);
      return 0;
    }
    throw new Error(`unknown command '${command ?? ""}' (use train or export)`);
  } catch (err) {
    console.error(`error: ${(err as Error).message}`);
    return 2;
  }
}

if (require.main === module) {
  main(process.argv.slice(2)).then((code) => {
    process.exitCode = code;
  });
}
