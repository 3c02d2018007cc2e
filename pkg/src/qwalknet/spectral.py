"""Symmetric eigendecomposition and spectral propagation.

For a real symmetric generator ``H = V diag(lam) V^T`` the walk propagator is
``exp(i * sign * H * t) = V diag(exp(i * sign * lam * t)) V^T``. ``sign = -1``
gives the adjacency walk ``exp(-iAt)``; ``sign = +1`` gives the Laplacian walk
``exp(+iLt)``.
"""

from dataclasses import dataclass

import numpy as np

from . import _core
from .errors import ConvergenceError

OFF_DIAGONAL_TOL = 1e-13
MAX_SWEEPS = 100
SYMMETRY_TOL = 1e-12
DEGENERACY_RTOL = 1e-8


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenvalues ascending; ``eigenvectors[:, k]`` pairs with ``eigenvalues[k]``."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    sweeps: int = 0

    @property
    def n(self):
        return len(self.eigenvalues)

    def reconstruct(self):
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.T


def eigh(m, tol=OFF_DIAGONAL_TOL, max_sweeps=MAX_SWEEPS):
    """Diagonalise a real symmetric matrix by cyclic Jacobi rotations.

    Iterates until the off-diagonal Frobenius norm drops below
    ``tol * max(1, ||m||_F)``. Columns are sign-normalised so their
    largest-magnitude entry is positive.

    Raises
    ------
    ValueError
        If ``m`` is not square or not symmetric within 1e-12.
    ConvergenceError
        If ``max_sweeps`` sweeps do not reach the tolerance.
    """
    m = np.asarray(m, dtype=np.float64)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if m.size and np.max(np.abs(m - m.T)) > SYMMETRY_TOL:
        raise ValueError("matrix is not symmetric")
    n = m.shape[0]
    if n == 0:
        return SpectralDecomposition(np.zeros(0), np.zeros((0, 0)))
    sym = 0.5 * (m + m.T)
    threshold = tol * max(1.0, float(np.linalg.norm(sym)))
    lam, vec, sweeps, off, converged = _core.kernels().jacobi(sym, threshold, max_sweeps)
    if not converged:
        raise ConvergenceError(f"Jacobi did not converge in {sweeps} sweeps", off)

    order = np.argsort(lam, kind="stable")
    lam = np.asarray(lam)[order]
    vec = np.asarray(vec)[:, order]
    pivots = np.argmax(np.abs(vec), axis=0)
    signs = np.where(vec[pivots, np.arange(n)] < 0, -1.0, 1.0)
    vec = vec * signs
    return SpectralDecomposition(lam, vec, int(sweeps))


def _check_sign(phase_sign):
    if phase_sign not in (-1, 1):
        raise ValueError(f"phase_sign must be -1 or +1, got {phase_sign!r}")


def propagate(d, psi0, t, phase_sign):
    """Return ``V diag(exp(i*phase_sign*lam*t)) V^T psi0``."""
    _check_sign(phase_sign)
    if t < 0:
        raise ValueError(f"time must be non-negative, got {t}")
    psi0 = np.asarray(psi0, dtype=np.complex128)
    v = d.eigenvectors
    coeffs = v.T @ psi0
    return v @ (np.exp(1j * phase_sign * d.eigenvalues * t) * coeffs)


def sample_probabilities(d, psi0, times, phase_sign):
    """Probabilities at each of ``times``, shape ``(len(times), n)``."""
    _check_sign(phase_sign)
    coeffs = d.eigenvectors.T @ np.asarray(psi0, dtype=np.complex128)
    return _core.kernels().sample_probabilities(
        d.eigenvectors, d.eigenvalues, coeffs, np.asarray(times, dtype=np.float64), phase_sign)


def weighted_probability_sum(d, psi0, times, weights, phase_sign):
    _check_sign(phase_sign)
    coeffs = d.eigenvectors.T @ np.asarray(psi0, dtype=np.complex128)
    return _core.kernels().weighted_probability_sum(
        d.eigenvectors, d.eigenvalues, coeffs, np.asarray(times, dtype=np.float64),
        np.asarray(weights, dtype=np.float64), phase_sign)


def degenerate_groups(eigenvalues, rtol=DEGENERACY_RTOL):
    """Split sorted eigenvalues into runs whose neighbours differ by <= tol.

    ``tol = rtol * max(1, |lam|_max)``. Returns a list of ``slice`` objects.
    """
    lam = np.asarray(eigenvalues)
    if len(lam) == 0:
        return []
    tol = rtol * max(1.0, float(np.max(np.abs(lam))))
    groups = []
    start = 0
    for k in range(1, len(lam)):
        if lam[k] - lam[k - 1] > tol:
            groups.append(slice(start, k))
            start = k
    groups.append(slice(start, len(lam)))
    return groups


def exact_time_average(d, psi0, rtol=DEGENERACY_RTOL):
    """Infinite-time average of ``|<j|psi(t)>|^2``.

    Cross terms between distinct eigenvalues average to zero, leaving the
    squared norms of the projections of ``psi0`` onto each eigenspace.
    Independent of the phase sign.
    """
    v = d.eigenvectors
    coeffs = v.T @ np.asarray(psi0, dtype=np.complex128)
    out = np.zeros(d.n)
    for g in degenerate_groups(d.eigenvalues, rtol):
        proj = v[:, g] @ coeffs[g]
        out += proj.real ** 2 + proj.imag ** 2
    return out
