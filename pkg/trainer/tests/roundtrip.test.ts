/**
 * Secondary acceptance: train on real oracle exports, feed the learned grids
 * back through the core toolkit, and verify the combined-method sweep.
 */

import * as fs from "fs";
import * as path from "path";

import { beforeAll, describe, expect, it } from "vitest";

import { exportGrids } from "../src/export";
import { readValueGrid } from "../src/formats";
import { train } from "../src/train";
import { coreCli, makeDataset, MiniDataset } from "./helpers";

const CONV: [number, number, number] = [4, 8, 8];
const DENSE: [number, number] = [32, 16];

let data: MiniDataset;
let learnedDir: string;
let baselineValMae = 0;
let bestValMae = 0;

beforeAll(async () => {
  data = makeDataset(8, [8, 3, 4]);
  const ratingRun = path.join(data.root, "run_rating");
  const rating = await train({
    dataCsv: path.join(data.oracleDir, "dataset_train.csv"),
    mapsDir: data.mapsDir,
    task: "rating",
    epochs: 14,
    batchSize: 64,
    learningRate: 3e-3,
    seed: 1,
    outDir: ratingRun,
    convWidths: CONV,
    denseWidths: DENSE,
    quiet: true,
  });
  baselineValMae = rating.baselineValMae;
  bestValMae = rating.bestValMae;

  const costRun = path.join(data.root, "run_cost");
  await train({
    dataCsv: path.join(data.oracleDir, "dataset_train.csv"),
    mapsDir: data.mapsDir,
    task: "costtogo",
    epochs: 8,
    batchSize: 64,
    learningRate: 3e-3,
    seed: 2,
    outDir: costRun,
    convWidths: CONV,
    denseWidths: DENSE,
    hgridsDir: data.oracleDir,
    quiet: true,
  });

  learnedDir = path.join(data.root, "data", "forest", "learned");
  await exportGrids({
    modelDir: path.join(ratingRun, "model"),
    mapsDir: data.mapsDir,
    outDir: learnedDir,
    m: 10,
  });
  await exportGrids({
    modelDir: path.join(costRun, "model"),
    mapsDir: data.mapsDir,
    outDir: learnedDir,
    m: 10,
  });
});

describe("trainer round-trip", () => {
  it("beats the constant-mean baseline by at least 25% relative", () => {
    expect(bestValMae).toBeLessThanOrEqual(0.75 * baselineValMae);
  });

  it("exports one grid per map with full coverage and unit-range ratings", () => {
    const testMaps = data.maps.filter((m) => m.id.includes("_test_"));
    expect(testMaps.length).toBeGreaterThan(0);
    for (const map of testMaps) {
      const grid = readValueGrid(path.join(learnedDir, `${map.id}.rating`));
      expect(grid.source).toBe("learned");
      expect(grid.values.length).toBe(map.width * map.height);
      for (const v of grid.values) {
        expect(v).toBeGreaterThanOrEqual(0);
        expect(v).toBeLessThanOrEqual(1);
      }
    }
  });

  it("exports cost grids on the raw octile scale", () => {
    const map = data.maps.find((m) => m.id.includes("_test_"))!;
    const grid = readValueGrid(path.join(learnedDir, `${map.id}.hgrid`));
    expect(grid.source).toBe("hvalue");
    expect(Math.max(...grid.values)).toBeGreaterThan(1.5);
  });

  it("drives pruned search through the core on every test map", () => {
    const testMaps = data.maps.filter((m) => m.id.includes("_test_"));
    for (const map of testMaps) {
      const out = coreCli([
        "plan",
        "--map", path.join(data.mapsDir, `${map.id}.map`),
        "--method", "slope",
        "--rater", `learned:${path.join(learnedDir, `${map.id}.rating`)}`,
        "--tau", "0.9",
      ]);
      expect(out).toContain("status=success");
    }
  });

  it("renders the combined-method sweep with no missing cells", () => {
    const cfg = path.join(data.root, "bench.cfg");
    const outDir = path.join(data.root, "bench_out");
    fs.writeFileSync(
      cfg,
      `data_root = ${path.join(data.root, "data")}\n` +
        "datasets = forest\n" +
        "combos = h_EUC,h_ML,SLOPE,SLOPE+h_ML,SLOPEr,SLOPEr+h_ML\n" +
        `out_dir = ${outDir}\n` +
        "learned_subdir = learned\n" +
        "hgrid_subdir = learned\n"
    );
    coreCli(["bench", "--config", cfg]);
    const md = fs.readFileSync(path.join(outDir, "bench_summary.md"), "utf8");
    const rows = md.trim().split("\n");
    expect(rows[0]).toBe("| dataset | metric | h_EUC | h_ML | SLOPE | SLOPE+h_ML | SLOPEr | SLOPEr+h_ML |");
    const body = rows.filter((r) => r.startsWith("| forest |"));
    expect(body).toHaveLength(3); // the three-row-per-dataset layout
    for (const row of body) {
      expect(row).not.toContain(" - ");
    }
    const records = fs.readFileSync(path.join(outDir, "bench_records.csv"), "utf8");
    expect(records.trim().split("\n")).toHaveLength(1 + 4 * 6); // test maps x combos
  });
});
