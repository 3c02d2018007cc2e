"""Walker states, instantaneous probabilities and time-averaged populations."""

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import spectral
from .graph import adjacency_matrix, laplacian_matrix

DEFAULT_T = 100 * math.pi
DEFAULT_DT_FRACTION = 1e-3


class Generator(enum.Enum):
    ADJACENCY = "adjacency"
    LAPLACIAN = "laplacian"

    @property
    def phase_sign(self):
        # exp(-iAt) for the adjacency walk, exp(+iLt) for the Laplacian walk.
        return -1 if self is Generator.ADJACENCY else 1

    def matrix(self, g):
        return adjacency_matrix(g) if self is Generator.ADJACENCY else laplacian_matrix(g)


@dataclass(frozen=True)
class WalkConfig:
    """Parameters of one walk.

    ``start`` is ``None`` for the equiprobable initial state, otherwise the
    1-based node the walker is localised on. ``dt`` must divide ``T`` to
    within one part in a million.
    """

    generator: Generator = Generator.ADJACENCY
    T: float = DEFAULT_T
    dt: float = DEFAULT_T * DEFAULT_DT_FRACTION
    start: int | None = None

    def __post_init__(self):
        if not isinstance(self.generator, Generator):
            object.__setattr__(self, "generator", Generator(self.generator))
        if not self.T > 0:
            raise ValueError(f"T must be positive, got {self.T}")
        if not 0 < self.dt <= self.T:
            raise ValueError(f"dt must satisfy 0 < dt <= T, got dt={self.dt}, T={self.T}")
        ratio = self.T / self.dt
        if abs(ratio - round(ratio)) > 1e-6 * ratio:
            raise ValueError(f"dt={self.dt} does not divide T={self.T}")
        if self.start is not None and self.start < 1:
            raise ValueError(f"start node must be >= 1, got {self.start}")

    @classmethod
    def from_fraction(cls, generator=Generator.ADJACENCY, T=DEFAULT_T,
                      dt_fraction=DEFAULT_DT_FRACTION, start=None):
        return cls(generator=Generator(generator), T=T, dt=T * dt_fraction, start=start)

    @property
    def initial(self):
        return "uniform" if self.start is None else f"localized:{self.start}"

    @property
    def steps(self):
        return int(round(self.T / self.dt))

    def times(self):
        """Sample instants ``0, h, 2h, ..., T`` with ``h = T / steps``."""
        n = self.steps
        return np.arange(n + 1) * (self.T / n)

    def trapezoid_weights(self):
        n = self.steps
        w = np.full(n + 1, self.T / n)
        w[0] *= 0.5
        w[-1] *= 0.5
        return w

    def replace(self, **changes):
        fields = dict(generator=self.generator, T=self.T, dt=self.dt, start=self.start)
        fields.update(changes)
        return WalkConfig(**fields)


def uniform_state(n):
    if n < 1:
        raise ValueError("uniform state needs at least one node")
    return np.full(n, 1.0 / math.sqrt(n), dtype=np.complex128)


def localized_state(n, j):
    if not 1 <= j <= n:
        raise ValueError(f"node {j} out of range 1..{n}")
    psi = np.zeros(n, dtype=np.complex128)
    psi[j - 1] = 1.0
    return psi


def initial_state(n, cfg):
    return uniform_state(n) if cfg.start is None else localized_state(n, cfg.start)


def probabilities(psi):
    psi = np.asarray(psi)
    return psi.real ** 2 + psi.imag ** 2


def decompose(g, generator):
    return spectral.eigh(Generator(generator).matrix(g))


def probability_trajectory(g, cfg, decomposition=None):
    """``P_j(t)`` at every sampled instant; array of shape ``(steps + 1, n)``."""
    d = decomposition if decomposition is not None else decompose(g, cfg.generator)
    psi0 = initial_state(g.n, cfg)
    return spectral.sample_probabilities(d, psi0, cfg.times(), cfg.generator.phase_sign)


def average_populations(g, cfg, decomposition=None):
    """Time-averaged populations over ``[0, T]``.

    Each sample is propagated directly from ``t = 0`` through the spectral
    decomposition, and samples are combined with the composite trapezoid
    rule in index order, then divided by ``T``.
    """
    if g.n < 1:
        raise ValueError("graph has no nodes")
    d = decomposition if decomposition is not None else decompose(g, cfg.generator)
    psi0 = initial_state(g.n, cfg)
    total = spectral.weighted_probability_sum(
        d, psi0, cfg.times(), cfg.trapezoid_weights(), cfg.generator.phase_sign)
    return total / cfg.T


def exact_populations(g, cfg, decomposition=None):
    """``T -> infinity`` limit of :func:`average_populations`."""
    d = decomposition if decomposition is not None else decompose(g, cfg.generator)
    return spectral.exact_time_average(d, initial_state(g.n, cfg))
