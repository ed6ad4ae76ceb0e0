"""Phase-sweep kernels with backend selection at import time.

Two implementations of the same two primitives exist: a compiled Cython
extension (Jacobi iterations, fastest for small matrices) and a batched
numpy fallback (one gufunc call over the whole sweep, fastest for larger
ones).  The default "auto" mode routes by matrix size at the crossover the
benchmark measures (benchmarks/bench_kernels.py); set
``NORMPAR_KERNEL_BACKEND`` to ``python``, ``cython`` or ``auto`` to force a
mode.  ``available_backends`` exposes both for the benchmark and the parity
tests.
"""

from __future__ import annotations

import os

import numpy as np

from . import _sweeps_py

try:  # pragma: no cover - exercised only when the extension is built
    from . import _sweeps_cy

    _HAVE_CYTHON = True
except ImportError:  # pragma: no cover
    _sweeps_cy = None
    _HAVE_CYTHON = False

# measured crossovers: the compiled Jacobi sweep beats the batched LAPACK
# route up to these sizes and falls behind beyond them
_SV_CROSSOVER = 5
_EIG_CROSSOVER = 4


def available_backends() -> dict[str, object]:
    backends: dict[str, object] = {"python": _sweeps_py}
    if _HAVE_CYTHON:
        backends["cython"] = _sweeps_cy
    return backends


def _pick_default() -> str:
    forced = os.environ.get("NORMPAR_KERNEL_BACKEND", "").strip().lower()
    if forced:
        if forced not in available_backends() and forced != "auto":
            raise ImportError(
                f"NORMPAR_KERNEL_BACKEND={forced!r} requested but that backend "
                f"is not available (have: {sorted(available_backends())} and 'auto')"
            )
        if forced == "auto" and not _HAVE_CYTHON:
            return "python"
        return forced
    return "auto" if _HAVE_CYTHON else "python"


BACKEND = _pick_default()


def _resolve(backend: str | None, size: int, crossover: int):
    name = BACKEND if backend is None else backend
    if name == "auto":
        name = "cython" if size <= crossover else "python"
    return available_backends()[name]


def _as_c128(m) -> np.ndarray:
    return np.ascontiguousarray(m, dtype=np.complex128)


def sweep_singular_values(p, q, thetas, backend: str | None = None) -> np.ndarray:
    """Singular values of p + exp(i*theta)*q, one descending row per theta."""
    p = _as_c128(p)
    q = _as_c128(q)
    thetas = np.ascontiguousarray(thetas, dtype=np.float64)
    if p.shape != q.shape or p.ndim != 2:
        raise ValueError("p and q must be 2-d with equal shapes")
    impl = _resolve(backend, min(p.shape), _SV_CROSSOVER)
    if p.shape[0] < p.shape[1]:
        # sigma(M) == sigma(M^H) and (p + e^{it} q)^H = p^H + e^{-it} q^H
        return impl.sweep_singular_values(
            _as_c128(p.conj().T), _as_c128(q.conj().T), -thetas
        )
    return impl.sweep_singular_values(p, q, thetas)


def sweep_hermitian_eigvals(h0, k, thetas, backend: str | None = None) -> np.ndarray:
    """Eigenvalues of h0 + exp(i*theta)*k + h.c., one ascending row per theta."""
    h0 = _as_c128(h0)
    k = _as_c128(k)
    thetas = np.ascontiguousarray(thetas, dtype=np.float64)
    n = h0.shape[0]
    if h0.shape != (n, n) or k.shape != (n, n):
        raise ValueError("h0 and k must be square with equal sizes")
    impl = _resolve(backend, n, _EIG_CROSSOVER)
    return impl.sweep_hermitian_eigvals(h0, k, thetas)


_ZERO_THETA = np.zeros(1)


def singular_values(m) -> np.ndarray:
    """All singular values of a single matrix, descending."""
    m = _as_c128(m)
    return sweep_singular_values(m, np.zeros_like(m), _ZERO_THETA)[0]


def hermitian_eigvals(h) -> np.ndarray:
    """All eigenvalues of a single Hermitian matrix, ascending."""
    h = _as_c128(h)
    return sweep_hermitian_eigvals(h, np.zeros_like(h), _ZERO_THETA)[0]
