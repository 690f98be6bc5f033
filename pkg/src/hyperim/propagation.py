"""Influence propagation on hypergraphs: WC, SICP, and LT processes.

All three processes start from a seed set active at timestep 0 and run until
no node is newly activated or ``max_hops`` timesteps have elapsed.  Activated
nodes never deactivate.

Weighted cascade (WC): each node activated in the previous timestep attempts
every currently inactive neighbor m once, succeeding with probability 1/d(m).

Susceptible-infected contact process (SICP): one probability p is drawn
uniformly from [p_min, p_max] per timestep; every currently active node
samples one of its incident hyperedges uniformly and attempts each member
that was inactive at the start of the timestep with probability p.

Linear threshold (LT): deterministic; a not-yet-activated hyperedge incident
to a node activated in the previous timestep activates when its fraction of
active members reaches the threshold, turning all its members active for the
next timestep.  Activated hyperedges are never re-checked.

Randomness contract (WC/SICP): within a timestep the stream is consumed as
(1) the timestep probability draw (SICP only), (2) one hyperedge-choice draw
per active node in ascending node order (SICP only), (3) one draw per
genuine activation attempt in ascending (source node, target node) order.
Targets already active at the start of the timestep consume no randomness,
so the draw pattern depends only on the state at the timestep boundary.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import rng
from .hypergraph import Hypergraph


@dataclass(frozen=True)
class WeightedCascade:
    """Activation probability 1/d(target), frontier nodes attempt."""


@dataclass(frozen=True)
class SICP:
    """Contact process over one uniformly sampled incident hyperedge per active node.

    The paper setting draws p per timestep from [0.005, 0.02]; p_min == p_max
    pins a constant probability (0 and 1 are allowed for degenerate tests).
    """

    p_min: float
    p_max: float

    def __post_init__(self):
        if not (0.0 <= self.p_min <= self.p_max <= 1.0):
            raise ValueError(f"need 0 <= p_min <= p_max <= 1, got [{self.p_min}, {self.p_max}]")


@dataclass(frozen=True)
class LinearThreshold:
    """Hyperedge activates when its active-member fraction reaches theta."""

    theta: float

    def __post_init__(self):
        if not (0.0 < self.theta < 1.0):
            raise ValueError(f"need 0 < theta < 1, got {self.theta}")


PropagationModel = WeightedCascade | SICP | LinearThreshold


@dataclass(frozen=True)
class SpreadConfig:
    """Monte-Carlo settings: hop cap, simulation count, and stream seed."""

    max_hops: int = 5
    num_simulations: int = 100
    rng_seed: int = 0

    def __post_init__(self):
        if self.max_hops < 1:
            raise ValueError("max_hops must be >= 1")
        if self.num_simulations < 1:
            raise ValueError("num_simulations must be >= 1")


@dataclass(frozen=True)
class SpreadResult:
    mean_activated: float
    per_simulation_counts: list[int] = field(default_factory=list)


def _seed_array(h: Hypergraph, seeds) -> np.ndarray:
    arr = np.unique(np.asarray(list(seeds), dtype=np.int64))
    if arr.size == 0:
        raise ValueError("seed set must be nonempty")
    if arr[0] < 0 or arr[-1] >= h.n:
        raise ValueError("seed ids out of range")
    return arr


def _gather_segments(flat: np.ndarray, indptr: np.ndarray, idx: np.ndarray) -> np.ndarray:
    """Concatenate flat[indptr[i]:indptr[i+1]] for each i in idx, in order."""
    starts = indptr[idx]
    counts = indptr[idx + 1] - starts
    total = int(counts.sum())
    if total == 0:
        return np.empty(0, dtype=flat.dtype)
    cum = np.cumsum(counts)
    pos = np.arange(total, dtype=np.int64) + np.repeat(starts - (cum - counts), counts)
    return flat[pos]


# Graphs at or below this size run the scalar kernels: per-element interpreter
# work beats per-call numpy overhead there.  Both kernel families consume the
# random stream identically (same draw count and order), so the cutover does
# not affect results.
_SMALL_N = 64


def _small_tables(h: Hypergraph):
    tables = getattr(h, "_small_tables", None)
    if tables is None:
        nbr = tuple(
            tuple(int(u) for u in h.nbr_flat[h.nbr_indptr[v]:h.nbr_indptr[v + 1]]) for v in range(h.n)
        )
        inc = tuple(
            tuple(int(j) for j in h.inc_flat[h.inc_indptr[v]:h.inc_indptr[v + 1]]) for v in range(h.n)
        )
        edge = tuple(tuple(int(u) for u in h.edge_members(j)) for j in range(h.m))
        inv_deg = tuple(1.0 / int(d) for d in h.degree)
        tables = (nbr, inc, edge, inv_deg)
        h._small_tables = tables
    return tables


def _wc_small(h: Hypergraph, seeds: list[int], max_hops: int, g: np.random.Generator) -> int:
    nbr, _, _, inv_deg = _small_tables(h)
    active = bytearray(h.n)
    for v in seeds:
        active[v] = 1
    frontier = seeds
    count = len(seeds)
    for _ in range(max_hops):
        targets = [t for v in frontier for t in nbr[v] if not active[t]]
        if not targets:
            break
        draws = g.random(len(targets)).tolist()
        newly = {t for t, u in zip(targets, draws) if u < inv_deg[t]}
        if not newly:
            break
        frontier = sorted(newly)
        for v in frontier:
            active[v] = 1
        count += len(frontier)
    return count


def _sicp_small(
    h: Hypergraph, seeds: list[int], p_min: float, p_max: float, max_hops: int, g: np.random.Generator
) -> int:
    _, inc, edge, _ = _small_tables(h)
    active = bytearray(h.n)
    for v in seeds:
        active[v] = 1
    active_ids = seeds
    count = len(seeds)
    p_span = p_max - p_min
    for _ in range(max_hops):
        p = p_min + p_span * g.random()
        u_edges = g.random(len(active_ids)).tolist()
        targets = [
            t
            for v, u in zip(active_ids, u_edges)
            for t in edge[inc[v][int(u * len(inc[v]))]]
            if not active[t]
        ]
        newly: set[int] = set()
        if targets:
            draws = g.random(len(targets)).tolist()
            newly = {t for t, u in zip(targets, draws) if u < p}
        if not newly:
            break
        for v in newly:
            active[v] = 1
        count += len(newly)
        active_ids = [v for v in range(h.n) if active[v]]
    return count


def _wc_large(h: Hypergraph, seed_arr: np.ndarray, max_hops: int, g: np.random.Generator) -> int:
    active = np.zeros(h.n, dtype=bool)
    frontier = seed_arr
    active[frontier] = True
    count = int(frontier.size)
    inv_degree = 1.0 / h.degree
    for _ in range(max_hops):
        targets = _gather_segments(h.nbr_flat, h.nbr_indptr, frontier)
        targets = targets[~active[targets]]
        if targets.size == 0:
            break
        hits = targets[g.random(targets.size) < inv_degree[targets]]
        newly = np.unique(hits)
        if newly.size == 0:
            break
        active[newly] = True
        count += int(newly.size)
        frontier = newly
    return count


def _sicp_large(
    h: Hypergraph, seed_arr: np.ndarray, p_min: float, p_max: float, max_hops: int, g: np.random.Generator
) -> int:
    active = np.zeros(h.n, dtype=bool)
    active_ids = seed_arr
    active[active_ids] = True
    count = int(active_ids.size)
    for _ in range(max_hops):
        p = p_min + (p_max - p_min) * g.random()
        # one incident hyperedge per active node, uniform
        offsets = (g.random(active_ids.size) * h.hyperdegree[active_ids]).astype(np.int64)
        chosen = h.inc_flat[h.inc_indptr[active_ids] + offsets]
        members = _gather_segments(h.edge_flat, h.edge_indptr, chosen)
        members = members[~active[members]]
        if members.size:
            hits = members[g.random(members.size) < p]
            newly = np.unique(hits)
        else:
            newly = members
        if newly.size == 0:
            break
        active[newly] = True
        count += int(newly.size)
        active_ids = np.flatnonzero(active)
    return count


def simulate_wc(h: Hypergraph, seeds, max_hops: int, g: np.random.Generator) -> int:
    """One weighted-cascade run; returns the final number of active nodes."""
    frontier = _seed_array(h, seeds)
    if h.n <= _SMALL_N:
        return _wc_small(h, [int(v) for v in frontier], max_hops, g)
    return _wc_large(h, frontier, max_hops, g)


def simulate_sicp(
    h: Hypergraph,
    seeds,
    p_min: float,
    p_max: float,
    max_hops: int,
    g: np.random.Generator,
) -> int:
    """One SICP run; returns the final number of active nodes."""
    SICP(p_min, p_max)  # bounds check
    active_ids = _seed_array(h, seeds)
    if h.n <= _SMALL_N:
        return _sicp_small(h, [int(v) for v in active_ids], p_min, p_max, max_hops, g)
    return _sicp_large(h, active_ids, p_min, p_max, max_hops, g)


def simulate_lt_trace(h: Hypergraph, seeds, theta: float, max_hops: int) -> list[set[int]]:
    """Deterministic LT run; returns the sets of nodes activated per timestep.

    ``trace[0]`` is the seed set; ``trace[t]`` the nodes first active at t.
    """
    LinearThreshold(theta)
    active = np.zeros(h.n, dtype=bool)
    frontier = _seed_array(h, seeds)
    active[frontier] = True
    edge_done = np.zeros(h.m, dtype=bool)
    active_members = np.zeros(h.m, dtype=np.int64)
    np.add.at(active_members, _gather_segments(h.inc_flat, h.inc_indptr, frontier), 1)

    trace = [set(int(v) for v in frontier)]
    for _ in range(max_hops):
        if frontier.size == 0:
            break
        cand = np.unique(_gather_segments(h.inc_flat, h.inc_indptr, frontier))
        cand = cand[~edge_done[cand]]
        passing = cand[active_members[cand] / h.edge_sizes[cand] >= theta]
        if passing.size == 0:
            break
        edge_done[passing] = True
        members = np.unique(_gather_segments(h.edge_flat, h.edge_indptr, passing))
        newly = members[~active[members]]
        if newly.size == 0:
            break
        active[newly] = True
        np.add.at(active_members, _gather_segments(h.inc_flat, h.inc_indptr, newly), 1)
        frontier = newly
        trace.append(set(int(v) for v in newly))
    return trace


def simulate_lt(h: Hypergraph, seeds, theta: float, max_hops: int) -> int:
    return sum(len(step) for step in simulate_lt_trace(h, seeds, theta, max_hops))


def expected_spread(h: Hypergraph, seeds, model: PropagationModel, config: SpreadConfig) -> SpreadResult:
    """Mean active-node count over independent Monte-Carlo simulations.

    Simulation ``i`` draws from the Philox counter block ``i`` of the stream
    keyed by ``config.rng_seed``, so the result is a pure function of
    (hypergraph, seeds, model, config) no matter how simulations are
    scheduled.  LT is deterministic and requires ``num_simulations == 1``.
    """
    if isinstance(model, LinearThreshold):
        if config.num_simulations != 1:
            raise ValueError("LT is deterministic: num_simulations must be 1")
        counts = [simulate_lt(h, seeds, model.theta, config.max_hops)]
    else:
        seed_arr = _seed_array(h, seeds)
        small = h.n <= _SMALL_N
        seed_list = [int(v) for v in seed_arr]
        streams = rng.SimulationStreams(config.rng_seed, rng.SPREAD_DOMAIN)
        hops = config.max_hops
        counts = []
        if isinstance(model, WeightedCascade):
            if small:
                counts = [_wc_small(h, seed_list, hops, streams.stream(i)) for i in range(config.num_simulations)]
            else:
                counts = [_wc_large(h, seed_arr, hops, streams.stream(i)) for i in range(config.num_simulations)]
        elif isinstance(model, SICP):
            if small:
                counts = [
                    _sicp_small(h, seed_list, model.p_min, model.p_max, hops, streams.stream(i))
                    for i in range(config.num_simulations)
                ]
            else:
                counts = [
                    _sicp_large(h, seed_arr, model.p_min, model.p_max, hops, streams.stream(i))
                    for i in range(config.num_simulations)
                ]
        else:
            raise TypeError(f"unknown propagation model: {model!r}")
    return SpreadResult(mean_activated=float(np.mean(counts)), per_simulation_counts=counts)
