"""Immutable hypergraph structure, text loader, and summary statistics.

A hypergraph is a set of nodes plus a set of hyperedges, each hyperedge
being a set of at least two nodes.  Nodes are stored as dense integer ids
0..n-1; the original file tokens are kept in a side map for reporting.

The topology is precomputed into flat CSR-style arrays so that the
propagation kernels can run on numpy vectors:

* ``edge_flat`` / ``edge_indptr``: members of each hyperedge, sorted.
* ``inc_flat`` / ``inc_indptr``: incident hyperedge indices per node,
  ascending (the set E(v)).
* ``nbr_flat`` / ``nbr_indptr``: distinct co-members per node, sorted
  (the set N(v)).
* ``degree[v] == |N(v)|`` and ``hyperdegree[v] == |E(v)|``.

Instances are immutable after construction and safe to share read-only
across threads or processes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class HypergraphError(ValueError):
    """Raised for malformed or empty hypergraph input."""


class Hypergraph:
    """Node/hyperedge incidence structure with precomputed topology."""

    def __init__(self, edges: list[list[int]], tokens: list[str] | None = None):
        """Build from a list of hyperedges given as lists of dense node ids.

        The caller is responsible for preprocessing (see ``load_hypergraph``);
        here the invariants are checked, not repaired.
        """
        if not edges:
            raise HypergraphError("empty hypergraph: no hyperedges")
        n = 1 + max(max(e) for e in edges)
        seen: set[frozenset[int]] = set()
        for e in edges:
            fs = frozenset(e)
            if len(fs) != len(e) or len(fs) < 2:
                raise HypergraphError(f"invalid hyperedge {e}: needs >= 2 distinct nodes")
            if fs in seen:
                raise HypergraphError(f"duplicate hyperedge {sorted(fs)}")
            seen.add(fs)

        self.n = n
        self.m = len(edges)
        self.tokens = list(tokens) if tokens is not None else [str(v) for v in range(n)]
        if len(self.tokens) != n:
            raise HypergraphError("token map size does not match node count")

        sorted_edges = [np.array(sorted(e), dtype=np.int64) for e in edges]
        self.edge_indptr = np.zeros(self.m + 1, dtype=np.int64)
        self.edge_indptr[1:] = np.cumsum([len(e) for e in sorted_edges])
        self.edge_flat = np.concatenate(sorted_edges)
        self.edge_sizes = np.diff(self.edge_indptr)

        incidence: list[list[int]] = [[] for _ in range(n)]
        for j, e in enumerate(sorted_edges):
            for v in e:
                incidence[int(v)].append(j)
        if any(not inc for inc in incidence):
            # ids are dense and come from edges, so this only happens on
            # hand-built inputs that skip an id
            missing = [v for v, inc in enumerate(incidence) if not inc]
            raise HypergraphError(f"node ids not covered by any hyperedge: {missing}")
        self.inc_indptr = np.zeros(n + 1, dtype=np.int64)
        self.inc_indptr[1:] = np.cumsum([len(i) for i in incidence])
        self.inc_flat = np.concatenate([np.array(i, dtype=np.int64) for i in incidence])
        self.hyperdegree = np.diff(self.inc_indptr)

        neighbor_sets: list[np.ndarray] = []
        for v in range(n):
            nb: set[int] = set()
            for j in incidence[v]:
                nb.update(int(u) for u in sorted_edges[j])
            nb.discard(v)
            neighbor_sets.append(np.array(sorted(nb), dtype=np.int64))
        self.nbr_indptr = np.zeros(n + 1, dtype=np.int64)
        self.nbr_indptr[1:] = np.cumsum([len(s) for s in neighbor_sets])
        self.nbr_flat = np.concatenate(neighbor_sets) if n else np.empty(0, np.int64)
        self.degree = np.diff(self.nbr_indptr)

    # -- queries ---------------------------------------------------------

    def edge_members(self, j: int) -> np.ndarray:
        """Sorted node ids of hyperedge ``j``."""
        return self.edge_flat[self.edge_indptr[j]:self.edge_indptr[j + 1]]

    def neighbors_of(self, v: int) -> set[int]:
        """N(v): every node sharing at least one hyperedge with v; never v itself."""
        self._check_node(v)
        return set(int(u) for u in self.nbr_flat[self.nbr_indptr[v]:self.nbr_indptr[v + 1]])

    def incident_edges(self, v: int) -> list[int]:
        """E(v): indices of the hyperedges containing v, ascending."""
        self._check_node(v)
        return [int(j) for j in self.inc_flat[self.inc_indptr[v]:self.inc_indptr[v + 1]]]

    def edges_as_sets(self) -> list[frozenset[int]]:
        return [frozenset(int(v) for v in self.edge_members(j)) for j in range(self.m)]

    def _check_node(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise IndexError(f"node id {v} out of range [0, {self.n})")

    def __repr__(self) -> str:  # pragma: no cover
        return f"Hypergraph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class HypergraphStats:
    node_count: int
    hyperedge_count: int
    avg_hyperdegree: float
    std_hyperdegree: float
    max_hyperdegree: int
    avg_degree: float
    std_degree: float
    max_degree: int

    def as_dict(self) -> dict:
        return {
            "node_count": self.node_count,
            "hyperedge_count": self.hyperedge_count,
            "avg_hyperdegree": self.avg_hyperdegree,
            "std_hyperdegree": self.std_hyperdegree,
            "max_hyperdegree": self.max_hyperdegree,
            "avg_degree": self.avg_degree,
            "std_degree": self.std_degree,
            "max_degree": self.max_degree,
        }


def stats(h: Hypergraph) -> HypergraphStats:
    """Whole-network degree statistics (population std, averaged over all n nodes)."""
    return HypergraphStats(
        node_count=h.n,
        hyperedge_count=h.m,
        avg_hyperdegree=float(np.mean(h.hyperdegree)),
        std_hyperdegree=float(np.std(h.hyperdegree)),
        max_hyperdegree=int(np.max(h.hyperdegree)),
        avg_degree=float(np.mean(h.degree)),
        std_degree=float(np.std(h.degree)),
        max_degree=int(np.max(h.degree)),
    )


def load_hypergraph(path) -> Hypergraph:
    """Load a hypergraph from a comma-separated hyperedge-list text file.

    One hyperedge per line, comma-separated node tokens; ``#`` starts a
    comment line; blank lines are skipped.  Preprocessing, in this order:

    1. duplicate tokens within a line are dropped (first occurrence kept),
    2. lines with fewer than two distinct tokens are dropped,
    3. duplicate hyperedges (as token sets) are dropped,
    4. surviving tokens are remapped to dense ids in first-appearance order.
    """
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw_lines = fh.readlines()
    except OSError as exc:
        raise HypergraphError(f"cannot read hypergraph file {path}: {exc}") from exc

    token_edges: list[list[str]] = []
    seen_edges: set[frozenset[str]] = set()
    for line in raw_lines:
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        tokens: list[str] = []
        for tok in line.split(","):
            tok = tok.strip()
            if tok and tok not in tokens:
                tokens.append(tok)
        if len(tokens) < 2:
            continue
        key = frozenset(tokens)
        if key in seen_edges:
            continue
        seen_edges.add(key)
        token_edges.append(tokens)

    if not token_edges:
        raise HypergraphError(f"empty hypergraph: no valid hyperedges in {path}")

    token_to_id: dict[str, int] = {}
    for tokens in token_edges:
        for tok in tokens:
            if tok not in token_to_id:
                token_to_id[tok] = len(token_to_id)
    id_to_token = [""] * len(token_to_id)
    for tok, i in token_to_id.items():
        id_to_token[i] = tok

    edges = [[token_to_id[t] for t in tokens] for tokens in token_edges]
    return Hypergraph(edges, tokens=id_to_token)


def save_hypergraph(h: Hypergraph, path) -> None:
    """Write the canonical hyperedge-list form (original tokens, id order)."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"# hypergraph: {h.n} nodes, {h.m} hyperedges\n")
        for j in range(h.m):
            fh.write(",".join(h.tokens[int(v)] for v in h.edge_members(j)) + "\n")
