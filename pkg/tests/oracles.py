"""Independent brute-force oracles used to verify the library implementations.

Everything here recomputes results from first principles (exhaustive
enumeration, naive double loops, rational arithmetic, Monte-Carlo area
estimation) without touching the code paths under test.
"""

from __future__ import annotations

import itertools
from collections import Counter
from fractions import Fraction

import numpy as np

from hyperim.hypergraph import Hypergraph


# -- exact expected spread by enumeration of all random choices --------------


def exact_wc_spread(h: Hypergraph, seeds, max_hops: int) -> Fraction:
    """Expected WC spread: each frontier node attempts each inactive neighbor
    independently with probability 1/d(target); enumerate activation subsets."""
    neighbor = {v: sorted(h.neighbors_of(v)) for v in range(h.n)}
    inv_deg = {v: Fraction(1, int(h.degree[v])) for v in range(h.n)}
    memo: dict = {}

    def go(active: frozenset, frontier: frozenset, hops: int) -> Fraction:
        if hops == 0 or not frontier:
            return Fraction(len(active))
        key = (active, frontier, hops)
        if key in memo:
            return memo[key]
        attackers = Counter(m for v in frontier for m in neighbor[v] if m not in active)
        cands = sorted(attackers)
        probs = [1 - (1 - inv_deg[m]) ** attackers[m] for m in cands]
        total = Fraction(0)
        for bits in itertools.product((0, 1), repeat=len(cands)):
            weight = Fraction(1)
            for b, q in zip(bits, probs):
                weight *= q if b else 1 - q
            if weight == 0:
                continue
            newly = frozenset(c for b, c in zip(bits, cands) if b)
            total += weight * go(active | newly, newly, hops - 1)
        memo[key] = total
        return total

    start = frozenset(int(v) for v in seeds)
    return go(start, start, max_hops)


def exact_sicp_spread(h: Hypergraph, seeds, p: float, max_hops: int) -> float:
    """Expected SICP spread with constant p: enumerate the joint hyperedge
    choice of every active node, then the independent activation subsets."""
    incident = {v: h.incident_edges(v) for v in range(h.n)}
    members = {j: sorted(int(u) for u in h.edge_members(j)) for j in range(h.m)}
    memo: dict = {}

    def go(active: frozenset, hops: int) -> float:
        if hops == 0:
            return float(len(active))
        key = (active, hops)
        if key in memo:
            return memo[key]
        act = sorted(active)
        total = 0.0
        for combo in itertools.product(*(incident[v] for v in act)):
            p_combo = 1.0
            for v in act:
                p_combo /= len(incident[v])
            attempts = Counter(m for j in combo for m in members[j] if m not in active)
            cands = sorted(attempts)
            probs = [1 - (1 - p) ** attempts[m] for m in cands]
            for bits in itertools.product((0, 1), repeat=len(cands)):
                weight = p_combo
                for b, q in zip(bits, probs):
                    weight *= q if b else 1 - q
                if weight == 0.0:
                    continue
                newly = frozenset(c for b, c in zip(bits, cands) if b)
                if newly:
                    total += weight * go(active | newly, hops - 1)
                else:
                    total += weight * len(active)
        memo[key] = total
        return total

    return go(frozenset(int(v) for v in seeds), max_hops)


def enumeration_cost(h: Hypergraph) -> int:
    """Rough upper bound on the SICP joint-edge-choice space (for filtering
    randomly generated oracle instances)."""
    cost = 1
    for v in range(h.n):
        cost *= int(h.hyperdegree[v])
        if cost > 10**6:
            break
    return cost


# -- dominance / sorting ------------------------------------------------------


def _dominates_pair(a, b) -> bool:
    return (
        a.influence >= b.influence
        and a.seed_fraction <= b.seed_fraction
        and (a.influence > b.influence or a.seed_fraction < b.seed_fraction)
    )


def brute_force_ranks(fitnesses) -> list[int]:
    """Ranks via repeated peeling of the non-dominated subset (O(P^3))."""
    remaining = list(range(len(fitnesses)))
    ranks = [0] * len(fitnesses)
    level = 0
    while remaining:
        front = [
            i
            for i in remaining
            if not any(_dominates_pair(fitnesses[j], fitnesses[i]) for j in remaining if j != i)
        ]
        for i in front:
            ranks[i] = level
        remaining = [i for i in remaining if i not in front]
        level += 1
    return ranks


def crowding_by_formula(front) -> list[float]:
    """Crowding distance straight from the textbook definition."""
    p = len(front)
    if p <= 2:
        return [float("inf")] * p
    dist = [0.0] * p
    for getter in (lambda f: f.influence, lambda f: f.seed_fraction):
        order = sorted(range(p), key=lambda i: (getter(front[i]), i))
        dist[order[0]] = dist[order[-1]] = float("inf")
        span = getter(front[order[-1]]) - getter(front[order[0]])
        if span == 0:
            continue
        for k in range(1, p - 1):
            i = order[k]
            if dist[i] != float("inf"):
                dist[i] += (getter(front[order[k + 1]]) - getter(front[order[k - 1]])) / span
    return dist


# -- diversity in exact rational arithmetic ----------------------------------


def population_diversity_fraction(front: list[set[int]]) -> Fraction:
    """D via the element-count identity: sum_j!=i |xi n xj| equals
    sum_{v in xi} (#sets containing v - 1)."""
    counts = Counter(v for x in front for v in x)
    p = len(front)
    overlap = Fraction(0)
    for x in front:
        overlap += Fraction(sum(counts[v] - 1 for v in x), len(x))
    return 1 - overlap / (p * (p - 1))


def node_diversity_fraction(front: list[set[int]]) -> Fraction:
    return Fraction(len(set().union(*front)), sum(len(x) for x in front))


# -- Monte-Carlo hypervolume estimate -----------------------------------------


def mc_hypervolume(front, ref, samples: int, seed: int) -> tuple[float, float]:
    """(estimate, standard error) of the dominated area by uniform sampling
    in the box spanned by the reference point and the front's extremes."""
    pts = [(f.influence, f.seed_fraction) for f in front
           if f.influence > ref.influence and f.seed_fraction < ref.seed_fraction]
    if not pts:
        return 0.0, 0.0
    x_hi = max(p[0] for p in pts)
    y_lo = min(p[1] for p in pts)
    box = (x_hi - ref.influence) * (ref.seed_fraction - y_lo)
    g = np.random.Generator(np.random.Philox(key=np.array([seed, 0xA2EA], dtype=np.uint64)))
    xs = ref.influence + g.random(samples) * (x_hi - ref.influence)
    ys = y_lo + g.random(samples) * (ref.seed_fraction - y_lo)
    dominated = np.zeros(samples, dtype=bool)
    for px, py in pts:
        dominated |= (xs <= px) & (ys >= py)
    q = dominated.mean()
    se = box * float(np.sqrt(q * (1 - q) / samples))
    return box * float(q), se
