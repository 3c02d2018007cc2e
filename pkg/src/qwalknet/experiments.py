"""Centrality/population correlation, link-failure sweeps and node affinity."""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.stats import rankdata

from .graph import degree_centralities, is_connected, remove_edge
from .walk import Generator, average_populations

NEAR_ZERO_DELTA = 1e-12


@dataclass(frozen=True)
class CentralityReport:
    centrality: np.ndarray
    population: np.ndarray
    spearman_rho: float | None  # None when either column is constant


@dataclass(frozen=True)
class EdgeRemoval:
    k: int
    pair: tuple
    populations: np.ndarray
    deltas: np.ndarray
    near_zero_count: int
    disconnected: bool


@dataclass(frozen=True)
class SweepResult:
    baseline: np.ndarray
    per_edge: tuple
    flow_signs: np.ndarray  # (K, N) int8 in {+1, -1}

    @property
    def deltas(self):
        return np.array([r.deltas for r in self.per_edge]).reshape(len(self.per_edge), -1)


@dataclass(frozen=True)
class Partition:
    reference: int
    with_reference: tuple
    against_reference: tuple
    ambiguous: tuple  # nodes with zero affinity to the reference, counted as "against"

    def labels(self, n):
        """0 for the reference side, 1 for the other, indexed by node - 1."""
        out = np.ones(n, dtype=int)
        out[np.asarray(self.with_reference, dtype=int) - 1] = 0
        return out


@dataclass(frozen=True)
class GeneratorComparison:
    adjacency: np.ndarray
    laplacian: np.ndarray
    max_gap: float


@dataclass(frozen=True)
class FlowAgreement:
    """Mean fraction of community members whose flow sign matches the community majority."""

    per_community: dict
    overall: float


@dataclass(frozen=True)
class GeneratorContrast:
    adjacency: FlowAgreement
    laplacian: FlowAgreement
    adjacency_sweep: SweepResult
    laplacian_sweep: SweepResult


def spearman(x, y):
    """Spearman rank correlation with average ranks for ties; None if undefined."""
    rx = rankdata(x)
    ry = rankdata(y)
    rx = rx - rx.mean()
    ry = ry - ry.mean()
    denom = np.sqrt(np.dot(rx, rx) * np.dot(ry, ry))
    if denom == 0.0:
        return None
    return float(np.clip(np.dot(rx, ry) / denom, -1.0, 1.0))


def centrality_population_report(g, cfg):
    if cfg.generator is not Generator.ADJACENCY or cfg.start is not None:
        raise ValueError("centrality report is defined for the adjacency walk from the uniform state")
    c = degree_centralities(g)
    p = average_populations(g, cfg)
    return CentralityReport(c, p, spearman(c, p))


def _signs(deltas):
    return np.where(deltas >= 0.0, 1, -1).astype(np.int8)


def edge_removal_sweep(g, cfg, jobs=1):
    """Populations after removing each edge in turn.

    The K simulations are independent; with ``jobs > 1`` they run on a thread
    pool, and results are always assembled in edge-index order.
    """
    if g.k < 1:
        raise ValueError("sweep needs at least one edge")
    baseline = average_populations(g, cfg)

    def one(k):
        h = remove_edge(g, k)
        p = average_populations(h, cfg)
        d = p - baseline
        u, v = g.edges[k - 1]
        return EdgeRemoval(
            k=k,
            pair=(u + 1, v + 1),
            populations=p,
            deltas=d,
            near_zero_count=int(np.count_nonzero(np.abs(d) < NEAR_ZERO_DELTA)),
            disconnected=not is_connected(h),
        )

    indices = range(1, g.k + 1)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            per_edge = tuple(pool.map(one, indices))
    else:
        per_edge = tuple(one(k) for k in indices)
    signs = np.array([_signs(r.deltas) for r in per_edge], dtype=np.int8)
    return SweepResult(baseline, per_edge, signs)


def affinity(s):
    """Node affinity: mean over removed edges of the product of flow signs."""
    theta = np.asarray(s.flow_signs if isinstance(s, SweepResult) else s, dtype=np.int64)
    k = theta.shape[0]
    if k < 1:
        raise ValueError("affinity needs at least one removed edge")
    return (theta.T @ theta) / k


def partition_by_reference(alpha, ref):
    alpha = np.asarray(alpha)
    n = alpha.shape[0]
    if not 1 <= ref <= n:
        raise ValueError(f"reference node {ref} out of range 1..{n}")
    row = alpha[ref - 1]
    with_ref, against, ambiguous = [], [], []
    for j in range(1, n + 1):
        if j == ref or row[j - 1] > 0:
            with_ref.append(j)
        else:
            against.append(j)
            if row[j - 1] == 0:
                ambiguous.append(j)
    return Partition(ref, tuple(with_ref), tuple(against), tuple(ambiguous))


def compare_generators(g, j, cfg):
    """Adjacency vs Laplacian populations from the localised start ``j``; ``cfg.generator`` is ignored."""
    base = cfg.replace(start=j)
    pa = average_populations(g, base.replace(generator=Generator.ADJACENCY))
    pl = average_populations(g, base.replace(generator=Generator.LAPLACIAN))
    return GeneratorComparison(pa, pl, float(np.max(np.abs(pa - pl))))


def community_flow_agreement(flow_signs, labels):
    """Per-edge majority agreement within each community, averaged over edges.

    For removed edge k and community c, the agreement is the fraction of
    members of c whose sign equals the majority sign of c (ties count
    either side, giving 0.5).
    """
    theta = np.asarray(flow_signs)
    labels = np.asarray(labels)
    if theta.shape[1] != len(labels):
        raise ValueError("labels must have one entry per node")
    per = {}
    weighted = 0.0
    for c in sorted(set(labels.tolist())):
        block = theta[:, labels == c]
        plus = np.count_nonzero(block > 0, axis=1)
        frac = np.maximum(plus, block.shape[1] - plus) / block.shape[1]
        per[c] = float(frac.mean())
        weighted += per[c] * block.shape[1]
    return FlowAgreement(per, weighted / len(labels))


def laplacian_sweep_noncorrelation(g, j, cfg, labels, jobs=1):
    """Contrast community-level flow coherence of the two walks.

    The Laplacian sweep starts localised at ``j``. The adjacency sweep it is
    contrasted with uses the equiprobable start, the setting in which the
    adjacency walk's community response is observed. Both use ``cfg.T`` and
    ``cfg.dt``.
    """
    if labels is None:
        raise ValueError("a ground-truth community labelling is required")
    if len(labels) != g.n:
        raise ValueError(f"{len(labels)} labels for {g.n} nodes")
    lap = edge_removal_sweep(g, cfg.replace(generator=Generator.LAPLACIAN, start=j), jobs=jobs)
    adj = edge_removal_sweep(g, cfg.replace(generator=Generator.ADJACENCY, start=None), jobs=jobs)
    return GeneratorContrast(
        adjacency=community_flow_agreement(adj.flow_signs, labels),
        laplacian=community_flow_agreement(lap.flow_signs, labels),
        adjacency_sweep=adj,
        laplacian_sweep=lap,
    )
