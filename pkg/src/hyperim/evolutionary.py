"""NSGA-II over variable-size seed sets with degree-aware initialization and mutation.

The genotype is an ordered list of distinct node ids (a seed set of size 1
to k_max).  Fitness is the pair (influence to maximize, seed fraction to
minimize), both normalized by the network size.  Parent selection is
tournament on (non-domination rank, crowding distance); variation is
one-point crossover plus a coin flip between a purely stochastic mutation
and a hypergraph-aware replacement that prefers swapping low-degree genes
for high-degree nodes.

Every evaluation of a genotype draws its Monte-Carlo noise from a stream
keyed by (spread seed, sorted genes), so identical genotypes always receive
identical fitness within a run and evaluations can be scheduled in any
order without changing the outcome.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from . import rng
from .hypergraph import Hypergraph
from .propagation import PropagationModel, SpreadConfig, expected_spread


@dataclass(frozen=True)
class Fitness:
    influence: float        # sigma(S) / n, maximize
    seed_fraction: float    # |S| / n, minimize


def dominates(a: Fitness, b: Fitness) -> bool:
    """True if a is no worse in both objectives and strictly better in one."""
    return (
        a.influence >= b.influence
        and a.seed_fraction <= b.seed_fraction
        and (a.influence > b.influence or a.seed_fraction < b.seed_fraction)
    )


@dataclass
class Individual:
    genes: list[int]
    cached_fitness: Fitness | None = None

    def key(self) -> tuple[int, ...]:
        return tuple(sorted(self.genes))

    def clone(self) -> "Individual":
        return Individual(list(self.genes), self.cached_fitness)

    def validate(self, n_nodes: int, k_max: int) -> None:
        if not 1 <= len(self.genes) <= k_max:
            raise ValueError(f"genotype size {len(self.genes)} outside [1, {k_max}]")
        if len(set(self.genes)) != len(self.genes):
            raise ValueError("duplicate genes")
        if any(not 0 <= v < n_nodes for v in self.genes):
            raise ValueError("gene id out of range")


@dataclass(frozen=True)
class EAParams:
    population_size: int = 100
    offspring_size: int = 100
    generations: int = 100
    elites: int = 2
    tournament_size: int = 5
    k_min: int = 1
    k_max: int = 100
    lambda_fraction: float = 0.30
    rng_seed: int = 0

    def __post_init__(self):
        for name in ("population_size", "offspring_size", "elites", "tournament_size", "k_min", "k_max"):
            if getattr(self, name) < (0 if name == "elites" else 1):
                raise ValueError(f"{name} must be positive")
        if self.generations < 0:
            raise ValueError("generations must be >= 0")
        if self.k_min > self.k_max:
            raise ValueError("k_min must be <= k_max")
        if self.elites > self.population_size:
            raise ValueError("elites must be <= population_size")
        if self.tournament_size > self.population_size:
            raise ValueError("tournament_size must be <= population_size")
        if not 0.0 < self.lambda_fraction <= 1.0:
            raise ValueError("lambda_fraction must be in (0, 1]")


@dataclass
class ParetoFront:
    """Mutually non-dominated (individual, fitness) pairs."""

    entries: list[tuple[Individual, Fitness]] = field(default_factory=list)

    def fitnesses(self) -> list[Fitness]:
        return [f for _, f in self.entries]

    def seed_sets(self) -> list[set[int]]:
        return [set(ind.genes) for ind, _ in self.entries]


# -- sorting and selection ------------------------------------------------


def nondominated_sort(fitnesses: list[Fitness]) -> list[int]:
    """Non-domination rank per individual (0 = non-dominated)."""
    if not fitnesses:
        raise ValueError("empty fitness list")
    infl = np.array([f.influence for f in fitnesses])
    frac = np.array([f.seed_fraction for f in fitnesses])
    ge = infl[:, None] >= infl[None, :]
    le = frac[:, None] <= frac[None, :]
    strict = (infl[:, None] > infl[None, :]) | (frac[:, None] < frac[None, :])
    dom = ge & le & strict  # dom[i, j]: i dominates j
    dominators = dom.sum(axis=0).astype(np.int64)
    ranks = np.full(len(fitnesses), -1, dtype=np.int64)
    r = 0
    while (ranks < 0).any():
        current = (dominators == 0) & (ranks < 0)
        ranks[current] = r
        dominators -= dom[current].sum(axis=0)
        dominators[current] = -1
        r += 1
    return [int(x) for x in ranks]


def crowding_distance(front: list[Fitness]) -> list[float]:
    """NSGA-II crowding distance within one mutually non-dominated front."""
    p = len(front)
    if p == 0:
        return []
    if p <= 2:
        return [float("inf")] * p
    dist = np.zeros(p)
    for vals in (
        np.array([f.influence for f in front]),
        np.array([f.seed_fraction for f in front]),
    ):
        order = np.argsort(vals, kind="stable")
        dist[order[0]] = dist[order[-1]] = float("inf")
        span = vals[order[-1]] - vals[order[0]]
        if span > 0:
            dist[order[1:-1]] += (vals[order[2:]] - vals[order[:-2]]) / span
    return [float(d) for d in dist]


def rank_and_crowding(fitnesses: list[Fitness]) -> tuple[list[int], list[float]]:
    """Ranks plus crowding distance computed within each rank's front."""
    ranks = nondominated_sort(fitnesses)
    crowd = [0.0] * len(fitnesses)
    for r in set(ranks):
        idx = [i for i, ri in enumerate(ranks) if ri == r]
        for i, d in zip(idx, crowding_distance([fitnesses[i] for i in idx])):
            crowd[i] = d
    return ranks, crowd


def tournament_select(
    pop: list[Individual],
    tournament_size: int,
    g: np.random.Generator,
    keys: tuple[list[int], list[float]] | None = None,
) -> Individual:
    """Best of a uniform without-replacement sample, by (rank, crowding, index)."""
    if not pop:
        raise ValueError("empty population")
    if keys is None:
        fits = [ind.cached_fitness for ind in pop]
        if any(f is None for f in fits):
            raise ValueError("population must be evaluated before selection")
        keys = rank_and_crowding(fits)
    ranks, crowd = keys
    contenders = g.choice(len(pop), size=min(tournament_size, len(pop)), replace=False)
    best = min(contenders, key=lambda i: (ranks[i], -crowd[i], i))
    return pop[int(best)]


def environmental_selection(fitnesses: list[Fitness], k: int) -> list[int]:
    """Indices of the k survivors: fill by ascending rank, truncate the last
    front by descending crowding distance, ties broken by lower index."""
    ranks = nondominated_sort(fitnesses)
    chosen: list[int] = []
    for r in range(max(ranks) + 1):
        front = [i for i, ri in enumerate(ranks) if ri == r]
        if len(chosen) + len(front) <= k:
            chosen.extend(front)
            if len(chosen) == k:
                break
        else:
            crowd = crowding_distance([fitnesses[i] for i in front])
            order = sorted(range(len(front)), key=lambda p: (-crowd[p], front[p]))
            chosen.extend(front[p] for p in order[: k - len(chosen)])
            break
    return chosen


# -- initialization --------------------------------------------------------


def _weighted_sample_without_replacement(
    pool: np.ndarray, weights: np.ndarray, k: int, g: np.random.Generator
) -> list[int]:
    """Sequential weighted sampling without replacement (Efraimidis-Spirakis keys)."""
    if k >= pool.size:
        order = np.argsort(-np.log(g.random(pool.size)) / weights, kind="stable")
        return [int(pool[i]) for i in order]
    keys = -np.log(g.random(pool.size)) / weights
    order = np.argsort(keys, kind="stable")[:k]
    return [int(pool[i]) for i in order]


def smart_initialize(h: Hypergraph, params: EAParams, g: np.random.Generator) -> list[Individual]:
    """Initial population: a degree-biased half drawn from the top-lambda
    high-degree nodes, and a uniform half drawn from all nodes."""
    if h.n < params.k_min:
        raise ValueError(f"unsatisfiable config: k_min={params.k_min} exceeds n={h.n}")
    lam_count = int(np.ceil(params.lambda_fraction * h.n))
    by_degree = np.lexsort((np.arange(h.n), -h.degree))
    filtered = np.sort(by_degree[:lam_count])
    all_nodes = np.arange(h.n)

    population: list[Individual] = []
    biased_half = params.population_size // 2
    for i in range(params.population_size):
        if i < biased_half:
            pool, weights = filtered, h.degree[filtered].astype(float)
        else:
            pool, weights = all_nodes, None
        hi = min(params.k_max, pool.size)
        lo = min(params.k_min, hi)
        size = int(g.integers(lo, hi + 1))
        if weights is None:
            genes = [int(v) for v in g.choice(pool, size=size, replace=False)]
        else:
            genes = _weighted_sample_without_replacement(pool, weights, size, g)
        population.append(Individual(genes))
    return population


# -- evaluation ------------------------------------------------------------


def genotype_seed(base_seed: int, genes_key: tuple[int, ...]) -> int:
    """Spread-noise seed for one genotype: frozen per (base seed, gene set)."""
    return rng.derive_seed(base_seed, rng.GENOTYPE_DOMAIN, *genes_key)


def evaluate(
    h: Hypergraph,
    ind: Individual,
    model: PropagationModel,
    spread_config: SpreadConfig,
    cache: dict[tuple[int, ...], Fitness] | None = None,
) -> Fitness:
    """Normalized (influence, seed fraction); cached on the individual and,
    when a cache dict is supplied, shared across identical genotypes."""
    if ind.cached_fitness is not None:
        return ind.cached_fitness
    key = ind.key()
    fit = cache.get(key) if cache is not None else None
    if fit is None:
        cfg = replace(spread_config, rng_seed=genotype_seed(spread_config.rng_seed, key))
        result = expected_spread(h, ind.genes, model, cfg)
        fit = Fitness(result.mean_activated / h.n, len(ind.genes) / h.n)
        if cache is not None:
            cache[key] = fit
    ind.cached_fitness = fit
    return fit


# -- variation operators ----------------------------------------------------


def _dedup_keep_first(genes: list[int]) -> list[int]:
    seen: set[int] = set()
    out: list[int] = []
    for v in genes:
        if v not in seen:
            seen.add(v)
            out.append(v)
    return out


def _repair(genes: list[int], g: np.random.Generator, n_nodes: int, k_max: int) -> list[int]:
    out = _dedup_keep_first(genes)
    if not out:
        out = [int(g.integers(n_nodes))]
    return out[:k_max]


def one_point_crossover(
    a: Individual,
    b: Individual,
    g: np.random.Generator,
    n_nodes: int,
    k_max: int,
) -> tuple[Individual, Individual]:
    """Children are prefix of one parent plus suffix of the other; repair
    drops duplicate genes (first occurrence wins) and truncates to k_max.
    A length-1 parent contributes its whole gene list as the prefix."""
    cut_a = int(g.integers(1, len(a.genes))) if len(a.genes) >= 2 else 1
    cut_b = int(g.integers(1, len(b.genes))) if len(b.genes) >= 2 else 1
    child1 = _repair(a.genes[:cut_a] + b.genes[cut_b:], g, n_nodes, k_max)
    child2 = _repair(b.genes[:cut_b] + a.genes[cut_a:], g, n_nodes, k_max)
    return Individual(child1), Individual(child2)


def _uniform_node_outside(genes_set: set[int], n_nodes: int, g: np.random.Generator) -> int:
    # rejection sampling; caller guarantees the complement is nonempty
    while True:
        v = int(g.integers(n_nodes))
        if v not in genes_set:
            return v


def stochastic_mutation(h: Hypergraph, ind: Individual, params: EAParams, g: np.random.Generator) -> Individual:
    """Uniform choice of replacement, insertion, or removal, with boundary
    fallbacks to replacement (and to removal when every node is a gene)."""
    genes = list(ind.genes)
    gset = set(genes)
    op = int(g.integers(3))  # 0 replace, 1 insert, 2 remove
    if op == 1 and len(genes) >= params.k_max:
        op = 0
    if op == 2 and len(genes) <= params.k_min:
        op = 0
    if op == 0 and len(genes) >= h.n:
        op = 2 if len(genes) > params.k_min else -1

    if op == 0:
        pos = int(g.integers(len(genes)))
        genes[pos] = _uniform_node_outside(gset, h.n, g)
    elif op == 1:
        genes.append(_uniform_node_outside(gset, h.n, g))
    elif op == 2:
        genes.pop(int(g.integers(len(genes))))
    return Individual(genes)


def hypergraph_aware_mutation(
    h: Hypergraph, ind: Individual, params: EAParams, g: np.random.Generator
) -> Individual:
    """Replace one gene, picked with probability inversely proportional to
    its degree, by a node picked with probability proportional to degree
    from either the whole node set or the gene's neighborhood (coin flip)."""
    genes = list(ind.genes)
    if len(genes) >= h.n:
        if len(genes) > params.k_min:
            genes.pop(int(g.integers(len(genes))))
            return Individual(genes)
        return Individual(genes)

    inv_w = 1.0 / h.degree[genes]
    pos = int(np.searchsorted(np.cumsum(inv_w), g.random() * inv_w.sum(), side="right"))
    pos = min(pos, len(genes) - 1)
    gene = genes[pos]

    gset = set(genes)
    pool = np.empty(0, dtype=np.int64)
    if g.random() < 0.5:
        nbrs = h.nbr_flat[h.nbr_indptr[gene]:h.nbr_indptr[gene + 1]]
        pool = nbrs[~np.isin(nbrs, genes)]
    if pool.size == 0:
        mask = np.ones(h.n, dtype=bool)
        mask[genes] = False
        pool = np.flatnonzero(mask)
    weights = h.degree[pool].astype(float)
    cum = np.cumsum(weights)
    pick = int(np.searchsorted(cum, g.random() * cum[-1], side="right"))
    genes[pos] = int(pool[min(pick, pool.size - 1)])
    return Individual(genes)


def mutate(h: Hypergraph, ind: Individual, params: EAParams, g: np.random.Generator) -> Individual:
    """Apply the stochastic or the hypergraph-aware operator, equiprobably."""
    if g.random() < 0.5:
        return stochastic_mutation(h, ind, params, g)
    return hypergraph_aware_mutation(h, ind, params, g)


# -- main loop ---------------------------------------------------------------


def _collapse_duplicates(entries: list[tuple[Individual, Fitness]]) -> list[tuple[Individual, Fitness]]:
    seen: set[tuple[int, ...]] = set()
    out = []
    for ind, fit in entries:
        k = ind.key()
        if k not in seen:
            seen.add(k)
            out.append((ind, fit))
    return out


def evolve(
    h: Hypergraph,
    model: PropagationModel,
    spread_config: SpreadConfig,
    params: EAParams,
    rng_seed: int | None = None,
) -> ParetoFront:
    """Run the full NSGA-II loop and return the final rank-0 front.

    All randomness, including the Monte-Carlo fitness noise, derives from
    ``rng_seed`` (default ``params.rng_seed``); the seed inside
    ``spread_config`` is replaced accordingly.  Candidate pool per
    generation: parents + mutated crossover offspring + unmodified copies
    of the ``elites`` best parents.
    """
    seed = params.rng_seed if rng_seed is None else rng_seed
    g = rng.generator(seed, rng.EA_DOMAIN)
    spread_cfg = replace(spread_config, rng_seed=rng.derive_seed(seed, rng.SPREAD_DOMAIN))
    cache: dict[tuple[int, ...], Fitness] = {}

    pop = smart_initialize(h, params, g)
    for ind in pop:
        evaluate(h, ind, model, spread_cfg, cache)

    for _ in range(params.generations):
        fits = [ind.cached_fitness for ind in pop]
        keys = rank_and_crowding(fits)
        ranks, crowd = keys

        children: list[Individual] = []
        while len(children) < params.offspring_size:
            p1 = tournament_select(pop, params.tournament_size, g, keys)
            p2 = tournament_select(pop, params.tournament_size, g, keys)
            c1, c2 = one_point_crossover(p1, p2, g, h.n, params.k_max)
            children.append(mutate(h, c1, params, g))
            if len(children) < params.offspring_size:
                children.append(mutate(h, c2, params, g))
        for child in children:
            evaluate(h, child, model, spread_cfg, cache)

        elite_idx = sorted(range(len(pop)), key=lambda i: (ranks[i], -crowd[i], i))[: params.elites]
        combined = pop + children + [pop[i].clone() for i in elite_idx]
        selected = environmental_selection([ind.cached_fitness for ind in combined], params.population_size)
        pop = [combined[i] for i in selected]

    fits = [ind.cached_fitness for ind in pop]
    ranks = nondominated_sort(fits)
    entries = [(pop[i], fits[i]) for i in range(len(pop)) if ranks[i] == 0]
    return ParetoFront(entries=_collapse_duplicates(entries))
