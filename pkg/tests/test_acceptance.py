"""Exit criteria, one test per criterion, each reporting a PASS/FAIL line."""

import math
import time

import networkx as nx
import numpy as np
import pytest

from qwalknet.cli import main
from qwalknet.datasets import GeneratorParams, karate_club, planted_partition
from qwalknet.experiments import (
    affinity,
    centrality_population_report,
    edge_removal_sweep,
    laplacian_sweep_noncorrelation,
    partition_by_reference,
)
from qwalknet.graph import adjacency_matrix, from_edge_list, laplacian_matrix
from qwalknet.spectral import eigh, propagate
from qwalknet.walk import (
    Generator,
    WalkConfig,
    average_populations,
    exact_populations,
    probability_trajectory,
    uniform_state,
)

from .conftest import cycle

REFERENCE = WalkConfig()  # T = 100*pi, dt = T/1000, adjacency, uniform start


@pytest.fixture(scope="module")
def net():
    return karate_club()


@pytest.fixture(scope="module")
def timed_sweep(net):
    start = time.perf_counter()
    sweep = edge_removal_sweep(net.graph, REFERENCE, jobs=1)
    return sweep, time.perf_counter() - start


def _node1_side(net):
    return [j for j in range(1, 35) if net.labels[j - 1] == net.labels[0]]


def _node34_side(net):
    return [j for j in range(1, 35) if net.labels[j - 1] == net.labels[33]]


def test_c1_centrality_population(net, criterion):
    start = time.perf_counter()
    report = centrality_population_report(net.graph, REFERENCE)
    elapsed = time.perf_counter() - start
    total = report.population.sum()
    assert abs(total - 1.0) <= 1e-9
    assert report.spearman_rho > 0.7
    assert elapsed < 5.0
    criterion("C1 centrality vs population",
              f"rho={report.spearman_rho:.4f} |sum-1|={abs(total - 1):.1e} t={elapsed:.3f}s")


def test_c2_flow_signs(net, timed_sweep, criterion):
    sweep, elapsed = timed_sweep
    g = net.graph

    def rec(u, v):
        return sweep.per_edge[g.edge_index(u, v) - 1]

    a = sum(rec(1, 3).deltas[j - 1] for j in _node1_side(net))
    b = sum(rec(19, 33).deltas[j - 1] for j in _node34_side(net))
    c = rec(3, 9).deltas
    assert a < 0
    assert b < 0
    assert c[0] > 0 and c[33] > 0
    assert elapsed < 60.0
    criterion("C2 link-failure flow signs",
              f"(1,3)->{a:+.4f} (19,33)->{b:+.4f} (3,9)->hubs {c[0]:+.2e},{c[33]:+.2e} t={elapsed:.2f}s")


def test_c3_affinity_bipartition(net, timed_sweep, criterion):
    alpha = affinity(timed_sweep[0])
    part = partition_by_reference(alpha, 1)
    truth = np.array([0 if lab == net.labels[0] else 1 for lab in net.labels])
    matches = int(np.sum(part.labels(34) == truth))
    assert matches >= 30
    assert alpha[0, 1] > 0 and alpha[0, 33] < 0
    criterion("C3 affinity bipartition",
              f"match={matches}/34 a(1,2)={alpha[0, 1]:+.3f} a(1,34)={alpha[0, 33]:+.3f}")


def test_c4_laplacian_uniform_stationary(net, criterion):
    traj = probability_trajectory(net.graph, REFERENCE.replace(generator=Generator.LAPLACIAN))
    dev = float(np.max(np.abs(traj - 1 / 34)))
    assert dev <= 1e-10
    criterion("C4 Laplacian stationarity", f"max|P-1/34|={dev:.1e} over {traj.shape[0]} samples")


def test_c5_regular_graph_equivalence(criterion):
    worst = 0.0
    for n in range(4, 13):
        g = cycle(n)
        for start in range(1, n + 1):
            cfg = REFERENCE.replace(start=start)
            pa = probability_trajectory(g, cfg)
            pl = probability_trajectory(g, cfg.replace(generator=Generator.LAPLACIAN))
            worst = max(worst, float(np.max(np.abs(pa - pl))))
    assert worst <= 1e-9
    criterion("C5 regular-graph equivalence", f"max gap={worst:.1e} (C4..C12, all starts)")


def test_c6_oracle_equivalence(criterion):
    worst = 0.0
    count = 0
    for h in nx.graph_atlas_g()[1:]:
        if h.number_of_nodes() > 6 or not nx.is_connected(h):
            continue
        count += 1
        g = from_edge_list([(u + 1, v + 1) for u, v in h.edges()], n=h.number_of_nodes())
        for generator in Generator:
            for start in [None, *range(1, g.n + 1)]:
                cfg = REFERENCE.replace(generator=generator, start=start)
                d = eigh(generator.matrix(g))
                gap = np.max(np.abs(average_populations(g, cfg, d) - exact_populations(g, cfg, d)))
                worst = max(worst, float(gap))
    assert count == 143
    assert worst <= 2e-2
    criterion("C6 finite-T vs exact average", f"{count} graphs, max gap={worst:.2e}")


def test_c7_numerical_invariants(net, timed_sweep, criterion):
    g = net.graph
    rng = np.random.default_rng(2024)
    drift = 0.0
    recon = 0.0
    for m, sign in ((adjacency_matrix(g), -1), (laplacian_matrix(g), 1)):
        d = eigh(m)
        recon = max(recon, float(np.max(np.abs(m - d.reconstruct())) / np.max(np.abs(m))))
        psi = rng.normal(size=34) + 1j * rng.normal(size=34)
        psi /= np.linalg.norm(psi)
        for t in np.linspace(0, 100 * math.pi, 201):
            drift = max(drift, abs(float(np.linalg.norm(propagate(d, psi, t, sign))) - 1.0))
        traj = probability_trajectory(g, REFERENCE.replace(generator=Generator.LAPLACIAN if sign > 0
                                                            else Generator.ADJACENCY))
        drift = max(drift, float(np.max(np.abs(traj.sum(axis=1) - 1.0))))
    rows = float(np.max(np.abs(laplacian_matrix(g).sum(axis=1))))
    alpha = affinity(timed_sweep[0])
    q = (alpha + 1) * g.k / 2
    quant = float(np.max(np.abs(q - np.round(q))))
    assert drift < 1e-10
    assert recon < 1e-9
    assert rows <= 1e-12
    assert np.array_equal(alpha, alpha.T) and np.all(np.diag(alpha) == 1.0)
    assert quant < 1e-9
    criterion("C7 numerical invariants",
              f"norm drift={drift:.1e} recon={recon:.1e} L rows={rows:.0e} quant={quant:.0e}")


def test_c8_determinism(tmp_path, criterion):
    a, b = tmp_path / "j1", tmp_path / "j8"
    assert main(["sweep", "--dataset", "karate", "--jobs", "1", "-o", str(a)]) == 0
    assert main(["sweep", "--dataset", "karate", "--jobs", "8", "-o", str(b)]) == 0
    names = ("baseline.csv", "deltas.csv", "signs.csv", "sweep.json")
    for name in names:
        assert (a / name).read_bytes() == (b / name).read_bytes(), name
    gen = ["generate", "-c", "2", "-s", "20", "--pin", "0.5", "--pout", "0.05", "--seed", "42"]
    assert main([*gen, "-o", str(tmp_path / "g1")]) == 0
    assert main([*gen, "-o", str(tmp_path / "g2")]) == 0
    for ext in (".edges", ".labels"):
        assert (tmp_path / f"g1{ext}").read_bytes() == (tmp_path / f"g2{ext}").read_bytes()
    p = GeneratorParams(2, 20, 0.5, 0.05, 42)
    assert planted_partition(p) == planted_partition(p)
    criterion("C8 determinism", "sweep --jobs 1 == --jobs 8; generate x2 identical")


def test_c9_laplacian_contrast(net, criterion):
    res = laplacian_sweep_noncorrelation(net.graph, 1, REFERENCE, net.labels)
    assert res.adjacency.overall > res.laplacian.overall
    criterion("C9 adjacency vs Laplacian community coherence",
              f"adjacency={res.adjacency.overall:.4f} laplacian={res.laplacian.overall:.4f}")
