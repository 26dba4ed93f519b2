import { execFileSync } from "child_process";
import * as fs from "fs";
import * as os from "os";
import * as path from "path";

import { OccupancyMap, readMap } from "../src/formats";

export function tmpDir(prefix: string): string {
  return fs.mkdtempSync(path.join(os.tmpdir(), prefix));
}

/** Invoke the core toolkit's CLI; returns stdout. */
export function coreCli(args: string[]): string {
  return execFileSync("python3", ["-m", "gridslope.cli", ...args], {
    encoding: "utf8",
  });
}

export interface MiniDataset {
  root: string;
  mapsDir: string;
  oracleDir: string;
  maps: OccupancyMap[];
}

/** Generate a small forest dataset through the core pipeline. */
export function makeDataset(
  size: number,
  counts: [number, number, number],
  world = "forest"
): MiniDataset {
  const root = tmpDir("gridslope-trainer-");
  coreCli([
    "gen-maps", "--world", world,
    "--count-train", String(counts[0]),
    "--count-val", String(counts[1]),
    "--count-test", String(counts[2]),
    "--size", String(size),
    "--out", path.join(root, "data"),
  ]);
  coreCli(["gen-oracle", "--maps", path.join(root, "data"), "--m", "10", "--balance"]);
  const mapsDir = path.join(root, "data", world, "maps");
  const maps = fs
    .readdirSync(mapsDir)
    .filter((f) => f.endsWith(".map"))
    .map((f) => readMap(path.join(mapsDir, f)));
  return {
    root,
    mapsDir,
    oracleDir: path.join(root, "data", world, "oracle"),
    maps,
  };
}

/** Write a dataset CSV with a fixed target for every free cell of each map. */
export function constantCsv(maps: OccupancyMap[], target: number, file: string): void {
  const lines = ["map_id,x,y,rating"];
  for (const map of maps) {
    for (let y = 0; y < map.height; y++) {
      for (let x = 0; x < map.width; x++) {
        if (map.free[y * map.width + x]) {
          lines.push(`${map.id},${x},${y},${target.toFixed(4)}`);
        }
      }
    }
  }
  fs.writeFileSync(file, lines.join("\n") + "\n");
}
