"""Dense complex-matrix primitives: norms, spectral data, polar
decomposition, numerical-range support function and density states.

Matrices are plain numpy arrays of complex128.  Everything here is a pure
function; all decompositions delegate to dense routines (the compiled sweep
kernels for value-only spectra, LAPACK where vectors are needed).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels, _phase
from .config import DEFAULT_CONFIG, ToleranceConfig
from .errors import InputError


def as_matrix(m, name: str = "matrix") -> np.ndarray:
    """Validate and normalise a matrix argument to a 2-d complex array."""
    arr = np.asarray(m, dtype=complex)
    if arr.ndim != 2:
        raise InputError(f"{name} must be 2-dimensional, got ndim={arr.ndim}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise InputError(f"{name} must have at least one row and one column")
    if not np.all(np.isfinite(arr)):
        raise InputError(f"{name} contains non-finite entries")
    return arr


def as_square(m, name: str = "matrix") -> np.ndarray:
    arr = as_matrix(m, name)
    if arr.shape[0] != arr.shape[1]:
        raise InputError(f"{name} must be square, got shape {arr.shape}")
    return arr


def as_vector(v, name: str = "vector") -> np.ndarray:
    arr = np.asarray(v, dtype=complex).reshape(-1)
    if arr.size < 1:
        raise InputError(f"{name} must be non-empty")
    if not np.all(np.isfinite(arr)):
        raise InputError(f"{name} contains non-finite entries")
    return arr


@dataclass(frozen=True)
class PhaseAngle:
    """A unimodular scalar exp(i*theta) carried by its angle in [0, 2pi)."""

    theta: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "theta", float(self.theta) % (2.0 * math.pi))

    @property
    def scalar(self) -> complex:
        return complex(math.cos(self.theta), math.sin(self.theta))

    def conjugate(self) -> "PhaseAngle":
        return PhaseAngle(-self.theta)

    def antipode(self) -> "PhaseAngle":
        """The phase of -exp(i*theta)."""
        return PhaseAngle(self.theta + math.pi)


@dataclass(frozen=True)
class PolarParts:
    """T = unitary_factor @ modulus with modulus = (T^H T)^(1/2) >= 0."""

    unitary_factor: np.ndarray
    modulus: np.ndarray


@dataclass(frozen=True)
class DensityState:
    """A positive trace-one matrix; realises the state a -> tr(P a)."""

    matrix: np.ndarray

    def validate(self, cfg: ToleranceConfig = DEFAULT_CONFIG) -> None:
        p = as_square(self.matrix, "density matrix")
        scale = operator_norm(p)
        if np.linalg.norm(p - p.conj().T) > cfg.tol(scale):
            raise InputError("density matrix is not Hermitian within tolerance")
        if _kernels.hermitian_eigvals((p + p.conj().T) / 2.0)[0] < -cfg.psd_floor * (1.0 + scale):
            raise InputError("density matrix has a negative eigenvalue")
        if not cfg.close(float(np.trace(p).real), 1.0):
            raise InputError("density matrix trace differs from one")


def operator_norm(m) -> float:
    """Largest singular value."""
    return float(_kernels.singular_values(as_matrix(m))[0])


def spectral_radius(m) -> float:
    """Maximum eigenvalue modulus, via a full eigenvalue computation."""
    return float(np.max(np.abs(np.linalg.eigvals(as_square(m)))))


def schatten_norm(m, p: float) -> float:
    """(sum_i sigma_i^p)^(1/p) over the singular values."""
    if not p >= 1:
        raise InputError(f"Schatten exponent must satisfy p >= 1, got {p}")
    sv = _kernels.singular_values(as_matrix(m))
    if not math.isfinite(p):
        return float(sv[0])
    top = float(sv[0])
    if top == 0.0:
        return 0.0
    # factor out the top singular value to keep powers tame
    return top * float(np.sum((sv / top) ** p)) ** (1.0 / p)


def polar_decompose(m) -> PolarParts:
    """Polar factors via the SVD.

    On singular input the unitary factor is completed over the kernel of the
    modulus by the SVD's pairing of the unmatched singular vectors, so it is
    always exactly unitary.
    """
    m = as_square(m)
    w, s, vh = np.linalg.svd(m)
    modulus = vh.conj().T @ (s[:, None] * vh)
    modulus = (modulus + modulus.conj().T) / 2.0
    return PolarParts(unitary_factor=w @ vh, modulus=modulus)


def numerical_range_support(m, theta: float) -> tuple[float, np.ndarray]:
    """Support data of the numerical range in direction theta.

    Returns the largest eigenvalue of Re(exp(-i theta) M) together with a
    unit eigenvector; the vector's quadratic form xi^H M xi is the boundary
    point of the numerical range supported by that direction.
    """
    m = as_square(m)
    rot = np.exp(-1j * theta) * m
    h = (rot + rot.conj().T) / 2.0
    w, v = np.linalg.eigh(h)
    return float(w[-1]), v[:, -1]


def max_modulus_numerical_range(
    m, cfg: ToleranceConfig = DEFAULT_CONFIG
) -> tuple[float, np.ndarray]:
    """Largest modulus over the numerical range, with an attaining vector.

    For a convex set containing the attaining point w, max |w| equals the
    maximum over directions of the support function, so the search is a
    phase sweep of max-eig(Re(exp(-i theta) M)) with refinement.
    """
    m = as_square(m)
    n = m.shape[0]
    if n == 1:
        value = complex(m[0, 0])
        return abs(value), np.ones(1, dtype=complex)
    # the family at angle t is exactly Re(exp(-i t) M)
    k = m.conj().T / 2.0
    h0 = np.zeros_like(m)
    thetas = _phase.grid(cfg)
    values = _kernels.sweep_hermitian_eigvals(h0, k, thetas)[:, -1]

    def h(t: float) -> float:
        return float(_kernels.sweep_hermitian_eigvals(h0, k, np.array([t]))[0, -1])

    lipschitz = operator_norm(m)
    theta, radius = _phase.refine_max(h, thetas, values, cfg, lipschitz)
    _, vector = numerical_range_support(m, theta)
    return radius, vector


def top_eigenspace(h, cluster_tol: float) -> np.ndarray:
    """Orthonormal basis (columns) of the top eigenvalue cluster of a
    Hermitian matrix; the cluster is every eigenvalue within cluster_tol of
    the maximum."""
    h = as_square(h)
    w, v = np.linalg.eigh((h + h.conj().T) / 2.0)
    mask = w >= w[-1] - cluster_tol
    return v[:, mask]


def is_hermitian(m, cfg: ToleranceConfig = DEFAULT_CONFIG) -> bool:
    m = as_matrix(m)
    if m.shape[0] != m.shape[1]:
        return False
    scale = operator_norm(m)
    return float(operator_norm(m - m.conj().T)) <= cfg.tol(scale)


def is_psd(m, cfg: ToleranceConfig = DEFAULT_CONFIG) -> bool:
    """Hermitian with eigenvalues above the configured negativity floor."""
    if not is_hermitian(m, cfg):
        return False
    m = as_square(m)
    low = float(_kernels.hermitian_eigvals((m + m.conj().T) / 2.0)[0])
    return low >= -cfg.psd_floor * (1.0 + operator_norm(m))
