"""Numerical kernels with a compiled backend and a numpy fallback.

The compiled module ``qwalknet._core._ext`` is used when it was built at
install time; otherwise the pure numpy versions in ``fallback`` are used.
Both expose ``jacobi``, ``sample_probabilities`` and
``weighted_probability_sum`` with identical signatures.

Use :func:`set_backend` to switch explicitly (tests and the benchmark do so).
"""

from . import fallback

try:
    from . import _ext
except ImportError:  # extension not built
    _ext = None

_BACKENDS = {"python": fallback}
if _ext is not None:
    _BACKENDS["compiled"] = _ext

_active = "compiled" if _ext is not None else "python"


def available_backends():
    return tuple(sorted(_BACKENDS))


def get_backend():
    """Name of the backend currently in use: ``"compiled"`` or ``"python"``."""
    return _active


def set_backend(name):
    global _active
    if name not in _BACKENDS:
        raise ValueError(f"unknown or unavailable backend {name!r}; "
                         f"available: {', '.join(available_backends())}")
    _active = name


def kernels():
    return _BACKENDS[_active]
