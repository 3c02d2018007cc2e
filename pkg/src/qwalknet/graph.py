"""Simple undirected graphs with indexed edges.

Nodes are labelled ``1..n`` in every public function and file format, and
stored ``0..n-1`` internally. Edges are kept as a sorted tuple of ``(u, v)``
pairs with ``u < v``; "edge k" means the k-th pair (1-based) of that list.
"""

from collections import deque
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import EdgeListError, GraphError


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph.

    Attributes
    ----------
    n : int
        Number of nodes.
    edges : tuple of (int, int)
        Sorted 0-based pairs ``(u, v)`` with ``u < v``.
    """

    n: int
    edges: tuple

    def __post_init__(self):
        if self.n < 0:
            raise GraphError(f"node count must be non-negative, got {self.n}")
        seen = set()
        for u, v in self.edges:
            if u == v:
                raise GraphError(f"self-loop on node {u + 1}")
            if not (0 <= u < v < self.n):
                raise GraphError(f"edge ({u + 1}, {v + 1}) is not canonical for n={self.n}")
            if (u, v) in seen:
                raise GraphError(f"duplicate edge ({u + 1}, {v + 1})")
            seen.add((u, v))
        if list(self.edges) != sorted(self.edges):
            raise GraphError("edge list must be sorted")

    @property
    def k(self):
        return len(self.edges)

    def __repr__(self):
        return f"Graph(n={self.n}, k={self.k})"

    def edge_pairs(self):
        """Edges as 1-based ``(u, v)`` pairs, in edge-index order."""
        return [(u + 1, v + 1) for u, v in self.edges]

    def edge_index(self, u, v):
        """1-based index of the edge joining nodes ``u`` and ``v``."""
        a, b = sorted((u - 1, v - 1))
        try:
            return self.edges.index((a, b)) + 1
        except ValueError:
            raise GraphError(f"no edge ({u}, {v})") from None

    def degrees(self):
        d = np.zeros(self.n, dtype=np.int64)
        for u, v in self.edges:
            d[u] += 1
            d[v] += 1
        return d

    def neighbors(self):
        nbrs = [[] for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        return nbrs


def from_edge_list(pairs, n=None):
    """Build a canonical :class:`Graph` from 1-based node pairs.

    If ``n`` is omitted it is taken to be the largest label present.
    Self-loops, repeated pairs (in either orientation) and labels outside
    ``1..n`` raise :class:`GraphError`.
    """
    pairs = [(int(a), int(b)) for a, b in pairs]
    labels = [x for pair in pairs for x in pair]
    if n is None:
        n = max(labels, default=0)
    canon = set()
    for a, b in pairs:
        if a < 1 or b < 1:
            raise GraphError(f"node labels must be positive integers, got ({a}, {b})")
        if a > n or b > n:
            raise GraphError(f"edge ({a}, {b}) has a label above n={n}")
        if a == b:
            raise GraphError(f"self-loop ({a}, {b})")
        key = (min(a, b) - 1, max(a, b) - 1)
        if key in canon:
            raise GraphError(f"duplicate edge ({a}, {b})")
        canon.add(key)
    return Graph(n, tuple(sorted(canon)))


def adjacency_matrix(g):
    a = np.zeros((g.n, g.n))
    for u, v in g.edges:
        a[u, v] = 1.0
        a[v, u] = 1.0
    return a


def laplacian_matrix(g):
    """``diag(degrees) - adjacency``; every row sums to exactly zero."""
    return np.diag(g.degrees().astype(np.float64)) - adjacency_matrix(g)


def degree_centrality(g, j):
    """Fraction of the other ``n - 1`` nodes adjacent to node ``j``."""
    if g.n < 2:
        raise GraphError("degree centrality is undefined for a single-node graph")
    _check_node(g, j)
    return float(g.degrees()[j - 1]) / (g.n - 1)


def degree_centralities(g):
    if g.n < 2:
        raise GraphError("degree centrality is undefined for a single-node graph")
    return g.degrees() / (g.n - 1)


def remove_edge(g, k):
    """Copy of ``g`` without edge ``k`` (1-based). ``g`` is untouched."""
    if not 1 <= k <= g.k:
        raise GraphError(f"edge index {k} out of range 1..{g.k}")
    return Graph(g.n, g.edges[:k - 1] + g.edges[k:])


def add_edge(g, u, v):
    """Copy of ``g`` with the 1-based edge ``(u, v)`` inserted in sorted position."""
    return from_edge_list(g.edge_pairs() + [(u, v)], n=g.n)


def is_connected(g):
    """Breadth-first reachability from node 1 covers every node."""
    if g.n == 0:
        return True
    nbrs = g.neighbors()
    seen = [False] * g.n
    seen[0] = True
    queue = deque([0])
    count = 1
    while queue:
        u = queue.popleft()
        for w in nbrs[u]:
            if not seen[w]:
                seen[w] = True
                count += 1
                queue.append(w)
    return count == g.n


def is_regular(g):
    d = g.degrees()
    return bool(len(d) == 0 or np.all(d == d[0]))


def _check_node(g, j):
    if not 1 <= j <= g.n:
        raise GraphError(f"node {j} out of range 1..{g.n}")


# -- edge-list text format -------------------------------------------------

def parse_edge_list(text, n=None):
    """Parse the edge-list format: one ``u v`` pair per line, ``#`` comments."""
    pairs = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        fields = stripped.split()
        if len(fields) != 2:
            raise EdgeListError(f"expected two node labels, got {len(fields)} field(s)", lineno)
        try:
            a, b = int(fields[0]), int(fields[1])
        except ValueError:
            raise EdgeListError(f"non-integer node label in {stripped!r}", lineno) from None
        if a < 1 or b < 1:
            raise EdgeListError(f"node labels must be positive, got ({a}, {b})", lineno)
        if a == b:
            raise EdgeListError(f"self-loop ({a}, {b})", lineno)
        pairs.append(((a, b), lineno))
    seen = {}
    for (a, b), lineno in pairs:
        key = (min(a, b), max(a, b))
        if key in seen:
            raise EdgeListError(f"duplicate edge ({a}, {b}), first seen on line {seen[key]}", lineno)
        seen[key] = lineno
    try:
        return from_edge_list([p for p, _ in pairs], n=n)
    except GraphError as exc:
        raise EdgeListError(str(exc)) from exc


def read_edge_list(path, n=None):
    return parse_edge_list(Path(path).read_text(), n=n)


def format_edge_list(g):
    return "".join(f"{u} {v}\n" for u, v in g.edge_pairs())
