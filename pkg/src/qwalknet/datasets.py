"""Benchmark networks: Zachary's karate club, edge-list files, planted partitions.

Planted-partition graphs are drawn from numpy's PCG64 bit generator (PCG XSL
RR 128/64) seeded through ``numpy.random.SeedSequence(seed)``. Only raw 64-bit
outputs are consumed; each is mapped to a double in ``[0, 1)`` as
``(x >> 11) * 2**-53``. This mapping is part of the output contract and must
not change, or previously generated benchmark graphs will no longer reproduce.
"""

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import EdgeListError
from .graph import Graph, from_edge_list, is_connected, read_edge_list

# Zachary (1977), standard public 78-edge list, 1-based labels.
KARATE_EDGES = (
    (1, 2), (1, 3), (1, 4), (1, 5), (1, 6), (1, 7), (1, 8), (1, 9), (1, 11), (1, 12),
    (1, 13), (1, 14), (1, 18), (1, 20), (1, 22), (1, 32), (2, 3), (2, 4), (2, 8), (2, 14),
    (2, 18), (2, 20), (2, 22), (2, 31), (3, 4), (3, 8), (3, 9), (3, 10), (3, 14), (3, 28),
    (3, 29), (3, 33), (4, 8), (4, 13), (4, 14), (5, 7), (5, 11), (6, 7), (6, 11), (6, 17),
    (7, 17), (9, 31), (9, 33), (9, 34), (10, 34), (14, 34), (15, 33), (15, 34), (16, 33),
    (16, 34), (19, 33), (19, 34), (20, 34), (21, 33), (21, 34), (23, 33), (23, 34),
    (24, 26), (24, 28), (24, 30), (24, 33), (24, 34), (25, 26), (25, 28), (25, 32),
    (26, 32), (27, 30), (27, 34), (28, 34), (29, 32), (29, 34), (30, 33), (30, 34),
    (31, 33), (31, 34), (32, 33), (32, 34), (33, 34),
)

# Members of the faction around node 1 ("Mr. Hi"); everyone else sided with node 34.
KARATE_NODE1_FACTION = frozenset({1, 2, 3, 4, 5, 6, 7, 8, 9, 11, 12, 13, 14, 17, 18, 20, 22})

DOLPHINS_NODE_COUNT = 62

MAX_GENERATED_NODES = 10_000
MAX_RETRIES = 100


@dataclass(frozen=True)
class LabeledNetwork:
    """A graph with optional ground-truth community ids (one per node, 1-based order)."""

    graph: Graph
    labels: tuple | None = None
    seed: int | None = None

    def __post_init__(self):
        if self.labels is not None and len(self.labels) != self.graph.n:
            raise ValueError(f"{len(self.labels)} labels for {self.graph.n} nodes")

    @property
    def connected(self):
        return is_connected(self.graph)


def karate_club():
    g = from_edge_list(KARATE_EDGES, n=34)
    labels = tuple(0 if j in KARATE_NODE1_FACTION else 1 for j in range(1, 35))
    return LabeledNetwork(g, labels)


def read_labels(path):
    """Read a ``node_id community_id`` sidecar; returns labels in node order."""
    entries = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        fields = stripped.split()
        if len(fields) != 2:
            raise EdgeListError("expected 'node_id community_id'", lineno)
        try:
            node, community = int(fields[0]), int(fields[1])
        except ValueError:
            raise EdgeListError(f"non-integer field in {stripped!r}", lineno) from None
        if node < 1:
            raise EdgeListError(f"node ids must be positive, got {node}", lineno)
        if node in entries:
            raise EdgeListError(f"node {node} labelled twice", lineno)
        entries[node] = community
    n = max(entries, default=0)
    missing = [j for j in range(1, n + 1) if j not in entries]
    if missing:
        raise EdgeListError(f"labels missing for nodes {missing[:5]}")
    return tuple(entries[j] for j in range(1, n + 1))


def format_labels(labels):
    return "".join(f"{j} {c}\n" for j, c in enumerate(labels, start=1))


def load_edge_list(path, labels_path=None):
    """Load an edge-list file, plus an optional labels sidecar.

    With a sidecar, the node count is the larger of the largest edge label
    and the number of labelled nodes, so trailing isolated nodes survive.
    """
    labels = read_labels(labels_path) if labels_path is not None else None
    g = read_edge_list(path)
    if labels is not None and len(labels) > g.n:
        g = Graph(len(labels), g.edges)
    return LabeledNetwork(g, labels)


@dataclass(frozen=True)
class GeneratorParams:
    communities: int
    size: int
    p_in: float
    p_out: float
    seed: int = 0

    def __post_init__(self):
        if self.communities < 2:
            raise ValueError(f"need at least 2 communities, got {self.communities}")
        if self.size < 1:
            raise ValueError(f"community size must be >= 1, got {self.size}")
        if self.communities * self.size > MAX_GENERATED_NODES:
            raise ValueError(f"at most {MAX_GENERATED_NODES} nodes")
        if not 0.0 <= self.p_out <= 1.0 or not 0.0 <= self.p_in <= 1.0:
            raise ValueError("probabilities must lie in [0, 1]")
        if self.p_out > self.p_in or self.p_in == 0.0 or (self.p_out == self.p_in and self.p_in < 1.0):
            raise ValueError(f"need 0 <= p_out < p_in <= 1, got p_in={self.p_in}, p_out={self.p_out}")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must be an unsigned 64-bit integer")


def _uniform_doubles(seed, count):
    raw = np.random.PCG64(np.random.SeedSequence(seed)).random_raw(count)
    return (np.asarray(raw, dtype=np.uint64) >> np.uint64(11)).astype(np.float64) * 2.0 ** -53


def _draw(params, seed):
    n = params.communities * params.size
    labels = np.arange(n) // params.size
    iu, ju = np.triu_indices(n, k=1)
    u = _uniform_doubles(seed, len(iu))
    p = np.where(labels[iu] == labels[ju], params.p_in, params.p_out)
    keep = u < p
    edges = tuple(zip(iu[keep].tolist(), ju[keep].tolist()))
    return Graph(n, edges), tuple(int(x) for x in labels)


def planted_partition(params):
    """Random graph with ``communities`` blocks of ``size`` nodes.

    Pairs are visited in row-major upper-triangle order ``(0,1), (0,2), ...``
    and each consumes one draw. If the graph is disconnected the draw is
    repeated with ``seed + 1`` (mod 2**64), up to 100 retries; the last
    attempt is returned regardless and can be checked with ``.connected``.
    """
    seed = params.seed
    for attempt in range(MAX_RETRIES + 1):
        g, labels = _draw(params, seed)
        if is_connected(g) or attempt == MAX_RETRIES:
            return LabeledNetwork(g, labels, seed)
        seed = (seed + 1) % 2 ** 64
