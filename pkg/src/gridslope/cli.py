"""Command-line entry points: gen-maps, gen-oracle, plan, bench, render."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import bench, formats, kernels, oracle, worlds
from .errors import (ConfigError, ContractViolation, FieldLookupError,
                     GenerationError, OracleError)
from .heuristics import AlwaysPassRater, EuclideanHeuristic, GridHeuristic, GridRater
from .search import (PASS_ALL, SearchConfig, greedy_search, slope_search,
                     sloper_search)
from .render import render


def _parse_params(pairs):
    params = {}
    for pair in pairs or ():
        if "=" not in pair:
            raise ConfigError(f"--param expects key=value, got {pair!r}")
        key, value = pair.split("=", 1)
        try:
            params[key] = float(value) if "." in value else int(value)
        except ValueError:
            params[key] = value
    return params


def cmd_gen_maps(args) -> int:
    wanted = worlds.WORLD_TYPES if args.world == "all" else (args.world,)
    params = _parse_params(args.param)
    counts = (args.count_train, args.count_val, args.count_test)
    for world in wanted:
        spec = worlds.WorldSpec(world, width=args.size, height=args.size, params=params)
        splits = worlds.generate_split(spec, counts, seed_base=args.seed_base)
        world_dir = Path(args.out) / world
        maps_dir = world_dir / "maps"
        maps_dir.mkdir(parents=True, exist_ok=True)
        entries = []
        for split_name, maps in zip(("train", "val", "test"), splits):
            for grid in maps:
                rel = f"maps/{grid.id}.map"
                formats.write_map(grid, world_dir / rel)
                seed = int(grid.id.rsplit("_", 1)[1])
                entries.append({"id": grid.id, "split": split_name,
                                "seed": seed, "file": rel})
        formats.write_manifest(world_dir / "manifest.json", world,
                               args.size, args.size, params, entries)
        print(f"{world}: wrote {len(entries)} maps under {world_dir}")
    return 0


def cmd_gen_oracle(args) -> int:
    maps_root = Path(args.maps)
    manifests = sorted(maps_root.rglob("manifest.json"))
    if not manifests:
        raise ConfigError(f"no manifest.json found under {maps_root}")
    for manifest_path in manifests:
        world_dir = manifest_path.parent
        manifest = formats.read_manifest(manifest_path)
        if args.out:
            rel = world_dir.relative_to(maps_root)
            out_dir = Path(args.out) / rel
        else:
            out_dir = world_dir / "oracle"
        out_dir.mkdir(parents=True, exist_ok=True)
        per_split: dict = {"train": [], "val": [], "test": []}
        for entry in manifest["entries"]:
            grid = formats.read_map(world_dir / entry["file"])
            h_field = oracle.cost_to_go_field(grid)
            g_field = oracle.cost_to_come_field(grid)
            rating = oracle.region_distances(
                grid, oracle.region_mask(grid, g_field, h_field), args.m)
            formats.write_rating_grid(rating, out_dir / f"{grid.id}.rating")
            formats.write_h_grid(h_field.numeric(), out_dir / f"{grid.id}.hgrid")
            per_split.setdefault(entry["split"], []).append((grid, rating))
        for split, pairs in per_split.items():
            if not pairs:
                continue
            samples = oracle.export_dataset([p[0] for p in pairs], [p[1] for p in pairs],
                                            balance=args.balance, seed=args.seed)
            formats.write_dataset_csv(samples, out_dir / f"dataset_{split}.csv")
        print(f"{manifest['world']}: oracle artifacts under {out_dir}")
    return 0


def _build_heuristic(text: str):
    if text == "euclidean":
        return EuclideanHeuristic()
    if text.startswith("grid:"):
        return GridHeuristic(formats.read_h_grid(text[5:]))
    raise ConfigError(f"unknown heuristic {text!r} (euclidean or grid:<file>)")


def _build_rater(text: str):
    if text == "none":
        return AlwaysPassRater()
    for prefix in ("gt:", "learned:"):
        if text.startswith(prefix):
            return GridRater(formats.read_rating_grid(text[len(prefix):]))
    raise ConfigError(f"unknown rater {text!r} (gt:<file>, learned:<file>, or none)")


def cmd_plan(args) -> int:
    grid = formats.read_map(args.map)
    heuristic = _build_heuristic(args.heuristic)
    tau = PASS_ALL if args.tau == "-inf" else float(args.tau)
    cfg = SearchConfig(node_limit=args.node_limit, tau=tau, sloper_tau0=tau)
    if args.method == "greedy":
        result = greedy_search(grid, heuristic, cfg)
    else:
        rater = _build_rater(args.rater)
        if args.method == "slope":
            result = slope_search(grid, heuristic, rater, cfg)
        else:
            result = sloper_search(grid, heuristic, rater, cfg)
    tau_txt = "-" if result.final_tau is None else f"{result.final_tau:g}"
    print(f"status={result.status} method={args.method} map={grid.id} "
          f"path_nodes={len(result.path)} path_cost={result.path_cost.value():.6f} "
          f"expanded={len(result.expanded)} expanded_total={result.expanded_total} "
          f"open_remaining={result.open_remaining} failsafes={result.failsafe_count} "
          f"final_tau={tau_txt}")
    if args.print_path and result.path:
        print("path=" + " ".join(f"{x},{y}" for x, y in result.path))
    return 0 if result.success or args.allow_failure else 1


def cmd_bench(args) -> int:
    spec = bench.spec_from_config(formats.read_config(args.config))
    records, _ = bench.run_sweep(spec)
    print(f"evaluated {len(records)} (map, method) runs "
          f"[kernel backend: {kernels.BACKEND}]")
    print(f"records: {spec.out_dir / 'bench_records.csv'}")
    print(f"summary: {spec.out_dir / 'bench_summary.md'}")
    return 0


def cmd_render(args) -> int:
    grid = formats.read_map(args.map)
    rating = formats.read_rating_grid(args.rating) if args.rating else None
    expanded = None
    path = None
    if args.method:
        heuristic = _build_heuristic(args.heuristic)
        tau = PASS_ALL if args.tau == "-inf" else float(args.tau)
        cfg = SearchConfig(tau=tau, sloper_tau0=tau)
        if args.method == "greedy":
            result = greedy_search(grid, heuristic, cfg)
        elif args.method == "slope":
            result = slope_search(grid, heuristic, _build_rater(args.rater), cfg)
        else:
            result = sloper_search(grid, heuristic, _build_rater(args.rater), cfg)
        expanded = result.expanded
        path = result.path
    out = render(grid, rating, expanded, path, out=args.out, scale=args.scale)
    print(f"wrote {out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gridslope",
        description="Grid pathfinding with optimality-rating oracles and pruned search.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-maps", help="generate obstacle worlds and split manifests")
    p.add_argument("--world", default="all", choices=list(worlds.WORLD_TYPES) + ["all"])
    p.add_argument("--count-train", type=int, default=320)
    p.add_argument("--count-val", type=int, default=80)
    p.add_argument("--count-test", type=int, default=100)
    p.add_argument("--size", type=int, default=32)
    p.add_argument("--seed-base", type=int, default=0)
    p.add_argument("--param", action="append", metavar="KEY=VALUE",
                   help="generator parameter override (repeatable)")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen_maps)

    p = sub.add_parser("gen-oracle", help="compute ground-truth ratings, h grids, datasets")
    p.add_argument("--maps", required=True, help="directory containing world manifest(s)")
    p.add_argument("--m", type=int, default=oracle.DEFAULT_REGION_LEVELS)
    p.add_argument("--balance", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, help="output root (default: <world>/oracle)")
    p.set_defaults(func=cmd_gen_oracle)

    p = sub.add_parser("plan", help="run one planner on one map")
    p.add_argument("--map", required=True)
    p.add_argument("--method", required=True, choices=("greedy", "slope", "sloper"))
    p.add_argument("--heuristic", default="euclidean")
    p.add_argument("--rater", default="none")
    p.add_argument("--tau", default="0.9")
    p.add_argument("--node-limit", type=int, default=None)
    p.add_argument("--print-path", action="store_true")
    p.add_argument("--allow-failure", action="store_true",
                   help="exit 0 even when no path is found")
    p.set_defaults(func=cmd_plan)

    p = sub.add_parser("bench", help="run a method-combination sweep from a config file")
    p.add_argument("--config", required=True)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("render", help="render a map (plus overlays) as a P6 pixmap")
    p.add_argument("--map", required=True)
    p.add_argument("--rating", default=None)
    p.add_argument("--method", default=None, choices=("greedy", "slope", "sloper"))
    p.add_argument("--heuristic", default="euclidean")
    p.add_argument("--rater", default="none")
    p.add_argument("--tau", default="0.9")
    p.add_argument("--scale", type=int, default=8)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_render)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except GenerationError as exc:
        print(f"generation error: {exc}", file=sys.stderr)
        return 3
    except OracleError as exc:
        print(f"oracle error: {exc}", file=sys.stderr)
        return 4
    except (ContractViolation, FieldLookupError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return 5


if __name__ == "__main__":
    sys.exit(main())
