"""Pure numpy backend for the phase-sweep kernels.

Batches the whole sweep into one gufunc call; used when the compiled
extension is unavailable (or explicitly requested for comparison).
"""

from __future__ import annotations

import numpy as np


def sweep_singular_values(p: np.ndarray, q: np.ndarray, thetas: np.ndarray) -> np.ndarray:
    """Singular values of p + exp(i*theta)*q for every theta.

    Returns an array of shape (len(thetas), min(*p.shape)) with each row
    sorted in descending order.
    """
    lam = np.exp(1j * thetas)[:, None, None]
    batch = p[None, :, :] + lam * q[None, :, :]
    return np.linalg.svd(batch, compute_uv=False)


def sweep_hermitian_eigvals(h0: np.ndarray, k: np.ndarray, thetas: np.ndarray) -> np.ndarray:
    """Eigenvalues of h0 + exp(i*theta)*k + conj(exp(i*theta)*k)^T per theta.

    Returns an array of shape (len(thetas), n) with each row sorted in
    ascending order.  The family is Hermitian whenever h0 is.
    """
    lam = np.exp(1j * thetas)[:, None, None]
    batch = h0[None, :, :] + lam * k[None, :, :] + np.conj(lam) * k.conj().T[None, :, :]
    return np.linalg.eigvalsh(batch)
