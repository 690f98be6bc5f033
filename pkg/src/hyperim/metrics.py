"""Quality and diversity measures over Pareto fronts.

Hypervolume is the exact 2-D staircase area dominated by the front and
bounded by a reference point (influence maximized, seed fraction
minimized).  The two diversity measures are computed in exact rational
arithmetic:

* population diversity D = 1 - mean over ordered pairs (i, j), i != j, of
  |x_i n x_j| / |x_i|  (note the asymmetric normalization by |x_i|);
* node diversity ND = |union of all seed sets| / sum of their sizes.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .evolutionary import Fitness
from .hypergraph import Hypergraph


class UndefinedMetricError(ValueError):
    """Raised when a metric is not defined for the given front."""


def hypervolume_2d(front: list[Fitness], ref: Fitness) -> float:
    """Exact dominated area between the front and the reference point.

    Points not strictly better than ``ref`` in both objectives contribute
    nothing and are dropped; an empty front after filtering yields 0 with a
    warning.
    """
    pts = [
        (f.influence, f.seed_fraction)
        for f in front
        if f.influence > ref.influence and f.seed_fraction < ref.seed_fraction
    ]
    if not pts:
        warnings.warn("hypervolume: no front point strictly dominates the reference point")
        return 0.0
    pts.sort(key=lambda p: p[1])
    area = 0.0
    for i, (infl, frac) in enumerate(pts):
        upper = pts[i + 1][1] if i + 1 < len(pts) else ref.seed_fraction
        area += (infl - ref.influence) * (upper - frac)
    return area


def population_diversity(front: list[set[int]]) -> float:
    """Eq.-style pairwise overlap diversity; needs at least two seed sets."""
    if len(front) < 2:
        raise UndefinedMetricError("population diversity needs at least 2 seed sets")
    p = len(front)
    overlap = Fraction(0)
    for i, xi in enumerate(front):
        for j, xj in enumerate(front):
            if i != j:
                overlap += Fraction(len(xi & xj), len(xi))
    return float(1 - overlap / (p * (p - 1)))


def node_diversity(front: list[set[int]]) -> float:
    """Unique nodes across the front divided by the total gene count."""
    if not front:
        raise UndefinedMetricError("node diversity needs a nonempty front")
    union: set[int] = set()
    for x in front:
        union |= x
    return float(Fraction(len(union), sum(len(x) for x in front)))


@dataclass(frozen=True)
class DegreeProfile:
    degrees: list[int]          # d(v) per gene, with multiplicity across individuals
    mean: float
    hypergraph_mean: float      # reference line: average degree of the whole network


def degree_profile(h: Hypergraph, front: list[set[int]]) -> DegreeProfile:
    if not front:
        raise UndefinedMetricError("degree profile needs a nonempty front")
    degrees = [int(h.degree[v]) for x in front for v in sorted(x)]
    return DegreeProfile(
        degrees=degrees,
        mean=float(np.mean(degrees)),
        hypergraph_mean=float(np.mean(h.degree)),
    )


@dataclass(frozen=True)
class FrontMetrics:
    hypervolume: float
    population_diversity: float | None   # undefined for single-entry fronts
    node_diversity: float
    solution_degrees: list[int]
    solution_degree_mean: float
    hypergraph_degree_mean: float

    def as_dict(self) -> dict:
        return {
            "hypervolume": self.hypervolume,
            "population_diversity": self.population_diversity,
            "node_diversity": self.node_diversity,
            "solution_degrees": self.solution_degrees,
            "solution_degree_mean": self.solution_degree_mean,
            "hypergraph_degree_mean": self.hypergraph_degree_mean,
        }


def compute_front_metrics(h: Hypergraph, front_fitnesses: list[Fitness], seed_sets: list[set[int]], ref: Fitness) -> FrontMetrics:
    profile = degree_profile(h, seed_sets)
    return FrontMetrics(
        hypervolume=hypervolume_2d(front_fitnesses, ref),
        population_diversity=population_diversity(seed_sets) if len(seed_sets) >= 2 else None,
        node_diversity=node_diversity(seed_sets),
        solution_degrees=profile.degrees,
        solution_degree_mean=profile.mean,
        hypergraph_degree_mean=profile.hypergraph_mean,
    )
