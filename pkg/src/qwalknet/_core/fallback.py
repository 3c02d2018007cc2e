"""Pure numpy implementations of the numerical kernels.

Same signatures and semantics as the compiled ``_ext`` module. Used when the
extension is not built, and as the reference side of the backend benchmark.
"""

import math

import numpy as np


def _off_norm(a):
    off = a - np.diag(np.diagonal(a))
    return math.sqrt(float(np.sum(off * off)))


def jacobi(a, tol, max_sweeps):
    """Cyclic Jacobi diagonalisation of a real symmetric matrix.

    Parameters
    ----------
    a : ndarray, shape (n, n)
        Symmetric input. Not modified.
    tol : float
        Stop once the Frobenius norm of the off-diagonal part is <= tol.
    max_sweeps : int
        Cap on full cyclic sweeps over the upper triangle.

    Returns
    -------
    eigenvalues : ndarray, shape (n,)
        Unsorted diagonal of the rotated matrix.
    vectors : ndarray, shape (n, n)
        Accumulated rotations; column k pairs with eigenvalues[k].
    sweeps : int
        Number of sweeps performed.
    off : float
        Off-diagonal Frobenius norm at exit.
    converged : bool
    """
    a = np.array(a, dtype=np.float64, copy=True)
    n = a.shape[0]
    v = np.eye(n)
    sweeps = 0
    off = _off_norm(a)
    while off > tol and sweeps < max_sweeps:
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                app = a[p, p]
                aqq = a[q, q]
                diff = aqq - app
                if abs(apq) < abs(diff) * 1e-36:
                    t = apq / diff
                else:
                    theta = diff / (2.0 * apq)
                    t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c

                cp = a[:, p].copy()
                cq = a[:, q].copy()
                a[:, p] = c * cp - s * cq
                a[:, q] = s * cp + c * cq
                rp = a[p, :].copy()
                rq = a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                a[p, p] = app - t * apq
                a[q, q] = aqq + t * apq
                a[p, q] = 0.0
                a[q, p] = 0.0

                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
        sweeps += 1
        off = _off_norm(a)
    return np.diagonal(a).copy(), v, sweeps, off, off <= tol


def _amplitudes(vectors, eigenvalues, coeffs, times, sign):
    phases = np.exp((1j * sign) * np.outer(times, eigenvalues))
    return (phases * coeffs) @ vectors.T


def sample_probabilities(vectors, eigenvalues, coeffs, times, sign):
    """Probabilities |<j|psi(t)>|^2 for every t in ``times``; shape (M, n)."""
    amp = _amplitudes(vectors, eigenvalues, np.asarray(coeffs, dtype=np.complex128),
                      np.asarray(times, dtype=np.float64), sign)
    return amp.real ** 2 + amp.imag ** 2


def weighted_probability_sum(vectors, eigenvalues, coeffs, times, weights, sign):
    """Sum over samples m of weights[m] * P(times[m]), accumulated in index order."""
    coeffs = np.asarray(coeffs, dtype=np.complex128)
    times = np.asarray(times, dtype=np.float64)
    weights = np.asarray(weights, dtype=np.float64)
    n = len(eigenvalues)
    total = np.zeros(n)
    # Bounded chunks keep memory flat for long trajectories; chunking is fixed
    # so the summation order does not depend on anything but the inputs.
    chunk = 4096
    for start in range(0, len(times), chunk):
        sl = slice(start, start + chunk)
        amp = _amplitudes(vectors, eigenvalues, coeffs, times[sl], sign)
        probs = amp.real ** 2 + amp.imag ** 2
        for m in range(probs.shape[0]):
            total += weights[start + m] * probs[m]
    return total
