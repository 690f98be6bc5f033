"""Non-evolutionary comparison algorithms producing size-indexed seed-set chains."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .evolutionary import Fitness, Individual, ParetoFront, evaluate, nondominated_sort
from .hypergraph import Hypergraph
from .propagation import PropagationModel, SpreadConfig


@dataclass(frozen=True)
class BaselineFamily:
    """Nested seed sets of sizes k_min..k_max (seed_sets[i] has k_min + i nodes)."""

    k_min: int
    seed_sets: list[list[int]]

    def sizes(self) -> list[int]:
        return [len(s) for s in self.seed_sets]


def random_baseline(h: Hypergraph, k_min: int, k_max: int, g: np.random.Generator) -> BaselineFamily:
    """One nested chain grown by uniformly sampling a node not yet in the set."""
    if not 1 <= k_min <= k_max <= h.n:
        raise ValueError(f"need 1 <= k_min <= k_max <= n, got [{k_min}, {k_max}] with n={h.n}")
    order = [int(v) for v in g.permutation(h.n)[:k_max]]
    return BaselineFamily(k_min, [order[:k] for k in range(k_min, k_max + 1)])


def high_degree_baseline(h: Hypergraph, k_min: int, k_max: int) -> BaselineFamily:
    """S_k = the k highest-degree nodes; degree ties broken by lower node id."""
    if not 1 <= k_min <= k_max <= h.n:
        raise ValueError(f"need 1 <= k_min <= k_max <= n, got [{k_min}, {k_max}] with n={h.n}")
    order = [int(v) for v in np.lexsort((np.arange(h.n), -h.degree))[:k_max]]
    return BaselineFamily(k_min, [order[:k] for k in range(k_min, k_max + 1)])


def family_to_front(
    h: Hypergraph,
    family: BaselineFamily,
    model: PropagationModel,
    spread_config: SpreadConfig,
) -> ParetoFront:
    """Evaluate every set of the family and keep the non-dominated subset."""
    individuals = [Individual(list(s)) for s in family.seed_sets]
    cache: dict[tuple[int, ...], Fitness] = {}
    fits = [evaluate(h, ind, model, spread_config, cache) for ind in individuals]
    ranks = nondominated_sort(fits)
    entries = [(individuals[i], fits[i]) for i in range(len(individuals)) if ranks[i] == 0]
    return ParetoFront(entries=entries)
