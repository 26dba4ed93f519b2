"""Method-combination sweeps over generated datasets, with CSV/markdown output.

A combo label names a (planner, heuristic, rater) triple.  The heuristic is
either euclidean or a per-map cost-value grid file; the rater is a per-map
rating grid, ground-truth or learned.  Per-map evaluations are independent,
so maps can fan out over a process pool; output ordering is canonical
(dataset, method, map id) regardless of completion order.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from . import formats, metrics, oracle
from .errors import ConfigError
from .grid import GridMap
from .heuristics import EuclideanHeuristic, GridHeuristic, GridRater
from .search import SearchConfig, greedy_search, slope_search, sloper_search

# label -> (planner, heuristic kind, rater kind)
COMBOS = {
    "h_EUC": ("greedy", "euclidean", None),
    "h_ML": ("greedy", "hgrid", None),
    "SLOPE": ("slope", "euclidean", "learned"),
    "SLOPE+h_ML": ("slope", "hgrid", "learned"),
    "SLOPEr": ("sloper", "euclidean", "learned"),
    "SLOPEr+h_ML": ("sloper", "hgrid", "learned"),
    "SLOPE_GT": ("slope", "euclidean", "gt"),
    "SLOPE_GT+h_ML": ("slope", "hgrid", "gt"),
}

DEFAULT_TAU = 0.9
DEFAULT_TAU_TABLE = {"bugtrap_forest": 0.57}

ENV_OUT_DIR = "GRIDSLOPE_OUT_DIR"
ENV_WORKERS = "GRIDSLOPE_WORKERS"

METRIC_ROWS = (("expanded_rel_err", "expanded %"),
               ("path_rel_err", "path %"),
               ("open_norm", "open"))


@dataclass
class SweepSpec:
    data_root: Path
    datasets: list
    combos: list
    out_dir: Path
    split: str = "test"
    tau_default: float = DEFAULT_TAU
    tau_table: dict = field(default_factory=lambda: dict(DEFAULT_TAU_TABLE))
    gt_subdir: str = "oracle"
    learned_subdir: str = "learned"
    hgrid_subdir: str = "oracle"
    sloper_tau0: float = 0.9
    sloper_step: float = 0.1
    tau_floor: float = 0.05
    node_limit: int | None = None
    workers: int = 1

    def tau_for(self, dataset: str) -> float:
        return float(self.tau_table.get(dataset, self.tau_default))


def spec_from_config(cfg: dict) -> SweepSpec:
    """Build a sweep spec from a flat key=value config dict (env overrides apply)."""
    try:
        data_root = Path(cfg["data_root"])
        datasets = [d.strip() for d in cfg["datasets"].split(",") if d.strip()]
        combos = [c.strip() for c in cfg.get("combos", ",".join(COMBOS)).split(",") if c.strip()]
        out_dir = Path(os.environ.get(ENV_OUT_DIR) or cfg.get("out_dir", "bench_out"))
        workers = int(os.environ.get(ENV_WORKERS) or cfg.get("workers", "1"))
    except KeyError as exc:
        raise ConfigError(f"config missing required key {exc.args[0]!r}") from None
    unknown = [c for c in combos if c not in COMBOS]
    if unknown:
        raise ConfigError(f"unknown method combos: {', '.join(unknown)}")
    tau_table = dict(DEFAULT_TAU_TABLE)
    for key, value in cfg.items():
        if key.startswith("tau."):
            tau_table[key[4:]] = float(value)
    return SweepSpec(
        data_root=data_root,
        datasets=datasets,
        combos=combos,
        out_dir=out_dir,
        split=cfg.get("split", "test"),
        tau_default=float(cfg.get("tau_default", DEFAULT_TAU)),
        tau_table=tau_table,
        gt_subdir=cfg.get("gt_subdir", "oracle"),
        learned_subdir=cfg.get("learned_subdir", "learned"),
        hgrid_subdir=cfg.get("hgrid_subdir", "oracle"),
        sloper_tau0=float(cfg.get("sloper_tau0", 0.9)),
        sloper_step=float(cfg.get("sloper_step", 0.1)),
        tau_floor=float(cfg.get("tau_floor", 0.05)),
        node_limit=int(cfg["node_limit"]) if "node_limit" in cfg else None,
        workers=workers,
    )


def evaluate_combos(grid: GridMap, combos, *, gt_rating=None, learned_rating=None,
                    h_values=None, tau: float = DEFAULT_TAU, sloper_tau0: float = 0.9,
                    sloper_step: float = 0.1, tau_floor: float = 0.05,
                    node_limit: int | None = None):
    """Run each combo on one map and produce metric records (in-memory variant)."""
    h_field = oracle.cost_to_go_field(grid)
    c_star = oracle.optimal_cost(grid, h_field)
    euclid = EuclideanHeuristic()
    records = []
    for label in combos:
        planner, h_kind, r_kind = COMBOS[label]
        if h_kind == "euclidean":
            heuristic = euclid
        else:
            if h_values is None:
                raise ConfigError(f"combo {label} needs a cost-value grid")
            heuristic = GridHeuristic(h_values)
        cfg = SearchConfig(node_limit=node_limit, tau=tau, tau_floor=tau_floor,
                           sloper_tau0=sloper_tau0, sloper_step=sloper_step)
        if planner == "greedy":
            result = greedy_search(grid, heuristic, cfg)
        else:
            rating = gt_rating if r_kind == "gt" else learned_rating
            if rating is None:
                raise ConfigError(f"combo {label} needs a {r_kind} rating grid")
            rater = GridRater(rating)
            if planner == "slope":
                result = slope_search(grid, heuristic, rater, cfg)
            else:
                result = sloper_search(grid, heuristic, rater, cfg)
        records.append(metrics.make_record(grid.id, label, result, grid, c_star))
    return records


def _evaluate_task(args):
    (map_file, gt_file, learned_file, hgrid_file, combos, tau,
     sloper_tau0, sloper_step, tau_floor, node_limit) = args
    grid = formats.read_map(map_file)
    gt_rating = formats.read_rating_grid(gt_file) if gt_file else None
    learned_rating = formats.read_rating_grid(learned_file) if learned_file else None
    h_values = formats.read_h_grid(hgrid_file) if hgrid_file else None
    return evaluate_combos(
        grid, combos, gt_rating=gt_rating, learned_rating=learned_rating,
        h_values=h_values, tau=tau, sloper_tau0=sloper_tau0,
        sloper_step=sloper_step, tau_floor=tau_floor, node_limit=node_limit)


def _dataset_tasks(spec: SweepSpec, dataset: str):
    root = spec.data_root / dataset
    manifest = formats.read_manifest(root / "manifest.json")
    needs = {COMBOS[c][1] for c in spec.combos} | {COMBOS[c][2] for c in spec.combos}
    tau = spec.tau_for(dataset)
    tasks = []
    for entry in manifest["entries"]:
        if entry["split"] != spec.split:
            continue
        map_file = root / entry["file"]
        stem = entry["id"]
        gt_file = root / spec.gt_subdir / f"{stem}.rating"
        learned_file = root / spec.learned_subdir / f"{stem}.rating"
        hgrid_file = root / spec.hgrid_subdir / f"{stem}.hgrid"
        for path, wanted in ((map_file, True), (gt_file, "gt" in needs),
                             (learned_file, "learned" in needs),
                             (hgrid_file, "hgrid" in needs)):
            if wanted and not Path(path).exists():
                raise ConfigError(f"missing artifact file: {path}")
        tasks.append((
            str(map_file),
            str(gt_file) if "gt" in needs else None,
            str(learned_file) if "learned" in needs else None,
            str(hgrid_file) if "hgrid" in needs else None,
            tuple(spec.combos), tau, spec.sloper_tau0, spec.sloper_step,
            spec.tau_floor, spec.node_limit,
        ))
    if not tasks:
        raise ConfigError(f"no {spec.split} maps listed in {root / 'manifest.json'}")
    return tasks


def run_sweep(spec: SweepSpec):
    """Evaluate every (dataset, method, map) triple; write CSV and markdown."""
    all_tasks = []
    for dataset in spec.datasets:
        all_tasks.extend(_dataset_tasks(spec, dataset))

    if spec.workers > 1:
        with ProcessPoolExecutor(max_workers=spec.workers) as pool:
            grouped = list(pool.map(_evaluate_task, all_tasks, chunksize=4))
    else:
        grouped = [_evaluate_task(t) for t in all_tasks]

    records = [rec for group in grouped for rec in group]
    records.sort(key=lambda r: (_dataset_of(r.map_id), r.method, r.map_id))

    spec.out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = spec.out_dir / "bench_records.csv"
    csv_path.write_text(
        "\n".join([metrics.CSV_HEADER] + [r.csv_row() for r in records]) + "\n")

    aggregate = aggregate_records(records)
    md_path = spec.out_dir / "bench_summary.md"
    md_path.write_text(summary_markdown(spec.datasets, spec.combos, aggregate))
    return records, aggregate


def _dataset_of(map_id: str) -> str:
    for split in ("_train_", "_val_", "_test_"):
        if split in map_id:
            return map_id.split(split)[0]
    return map_id.rsplit("_", 1)[0]


def aggregate_records(records):
    """Mean of each metric per (dataset, method), successes only; failures counted."""
    groups: dict = {}
    for rec in records:
        groups.setdefault((_dataset_of(rec.map_id), rec.method), []).append(rec)
    out = {}
    for key, recs in groups.items():
        ok = [r for r in recs if r.status == "success"]
        out[key] = {
            "count": len(recs),
            "failures": len(recs) - len(ok),
            "expanded_rel_err": _mean([r.expanded_rel_err for r in ok]),
            "path_rel_err": _mean([r.path_rel_err for r in ok]),
            "open_norm": _mean([r.open_norm for r in ok]),
            "failsafe_mean": _mean([float(r.failsafe_count) for r in ok]),
        }
    return out


def _mean(values):
    values = [v for v in values if v is not None]
    return sum(values) / len(values) if values else None


def summary_markdown(datasets, combos, aggregate) -> str:
    """Three metric rows per dataset, one column per method."""
    lines = ["| dataset | metric | " + " | ".join(combos) + " |",
             "|---|---|" + "---|" * len(combos)]
    for dataset in datasets:
        for key, label in METRIC_ROWS:
            cells = []
            for combo in combos:
                agg = aggregate.get((dataset, combo))
                value = agg[key] if agg else None
                cells.append("-" if value is None else f"{value:.3f}")
            lines.append(f"| {dataset} | {label} | " + " | ".join(cells) + " |")
    return "\n".join(lines) + "\n"
