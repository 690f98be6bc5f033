"""Seeded random hypergraph generator for tests and self-contained experiments."""

from __future__ import annotations

from . import rng
from .hypergraph import Hypergraph


def random_hypergraph(
    n: int,
    m: int,
    min_size: int = 2,
    max_size: int = 5,
    seed: int = 0,
) -> Hypergraph:
    """Random hypergraph with exactly ``n`` nodes and ``m`` distinct hyperedges.

    Edge sizes are uniform in [min_size, max_size].  A shuffled partition of
    the node set forms the first edges so that every node is covered; the
    remainder are uniform node subsets, resampled on duplicates.
    """
    if min_size < 2 or max_size < min_size:
        raise ValueError("need 2 <= min_size <= max_size")
    if n < max_size:
        raise ValueError("need at least max_size nodes")
    g = rng.generator(seed, rng.SYNTH_DOMAIN, n, m)

    edges: list[list[int]] = []
    seen: set[frozenset[int]] = set()

    perm = list(g.permutation(n))
    while perm:
        size = int(g.integers(min_size, max_size + 1))
        chunk = perm[:size]
        perm = perm[size:]
        if len(chunk) < min_size:
            # top up the trailing chunk with nodes from earlier edges
            fill = [v for v in g.permutation(n) if v not in chunk]
            chunk = chunk + fill[: min_size - len(chunk)]
        edge = sorted(int(v) for v in chunk)
        key = frozenset(edge)
        if key not in seen:
            seen.add(key)
            edges.append(edge)
    if len(edges) > m:
        raise ValueError(f"m={m} is too small to cover n={n} nodes with edges of size >= {min_size}")

    attempts = 0
    while len(edges) < m:
        size = int(g.integers(min_size, max_size + 1))
        edge = sorted(int(v) for v in g.choice(n, size=size, replace=False))
        key = frozenset(edge)
        attempts += 1
        if key in seen:
            if attempts > 100 * m:
                raise ValueError("cannot draw enough distinct hyperedges; lower m or raise sizes")
            continue
        seen.add(key)
        edges.append(edge)

    return Hypergraph(edges)


def write_hypergraph_file(h: Hypergraph, path) -> None:
    from .hypergraph import save_hypergraph

    save_hypergraph(h, path)
