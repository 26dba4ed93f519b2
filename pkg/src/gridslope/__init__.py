"""Grid pathfinding with optimality-rating oracles and pruned greedy search."""

from .errors import (ConfigError, ContractViolation, FieldLookupError,
                     GenerationError, OracleError)
from .grid import (Cell, ExactCost, GridMap, ZERO_COST, compare_cost, euclidean_value,
                   expand)
from .heuristics import (AlwaysPassRater, EuclideanHeuristic, GridHeuristic,
                         GridRater, h_value, rate)
from .metrics import (BenchRecord, expanded_rel_err, make_record, min_path_nodes,
                      open_norm, open_stored_norm, path_rel_err)
from .oracle import (CostField, DatasetSample, RatingGrid, cost_to_come_field,
                     cost_to_go_field, export_dataset, ground_truth_rating,
                     optimal_cost, optimal_region, region_distances, region_mask)
from .render import render, render_rgb
from .search import (PASS_ALL, SearchConfig, SearchResult, greedy_search,
                     path_is_valid, slope_search, sloper_search)
from .worlds import WORLD_TYPES, WorldSpec, generate, generate_split

__version__ = "0.1.0"
