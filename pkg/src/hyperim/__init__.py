"""Bi-objective influence maximization on hypergraphs with NSGA-II."""

__version__ = "0.1.0"

from .baselines import BaselineFamily, family_to_front, high_degree_baseline, random_baseline
from .config import ConfigError, RunConfig, lt_theta_presets, parse_config
from .evolutionary import (
    EAParams,
    Fitness,
    Individual,
    ParetoFront,
    crowding_distance,
    dominates,
    evaluate,
    evolve,
    mutate,
    nondominated_sort,
    one_point_crossover,
    smart_initialize,
    tournament_select,
)
from .hypergraph import Hypergraph, HypergraphError, HypergraphStats, load_hypergraph, save_hypergraph, stats
from .metrics import (
    DegreeProfile,
    FrontMetrics,
    UndefinedMetricError,
    compute_front_metrics,
    degree_profile,
    hypervolume_2d,
    node_diversity,
    population_diversity,
)
from .propagation import (
    SICP,
    LinearThreshold,
    PropagationModel,
    SpreadConfig,
    SpreadResult,
    WeightedCascade,
    expected_spread,
    simulate_lt,
    simulate_lt_trace,
    simulate_sicp,
    simulate_wc,
)
from .synthetic import random_hypergraph

__all__ = [
    "__version__",
    "BaselineFamily", "family_to_front", "high_degree_baseline", "random_baseline",
    "ConfigError", "RunConfig", "lt_theta_presets", "parse_config",
    "EAParams", "Fitness", "Individual", "ParetoFront",
    "crowding_distance", "dominates", "evaluate", "evolve", "mutate",
    "nondominated_sort", "one_point_crossover", "smart_initialize", "tournament_select",
    "Hypergraph", "HypergraphError", "HypergraphStats", "load_hypergraph", "save_hypergraph", "stats",
    "DegreeProfile", "FrontMetrics", "UndefinedMetricError", "compute_front_metrics",
    "degree_profile", "hypervolume_2d", "node_diversity", "population_diversity",
    "SICP", "LinearThreshold", "PropagationModel", "SpreadConfig", "SpreadResult",
    "WeightedCascade", "expected_spread", "simulate_lt", "simulate_lt_trace",
    "simulate_sicp", "simulate_wc",
    "random_hypergraph",
]
