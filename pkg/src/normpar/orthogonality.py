"""Birkhoff-James orthogonality: minimisation, state witnesses, and the
bridge between orthogonality and norm-parallelism.

x is BJ-orthogonal to y when no complex multiple of y can lower the norm of
x + gamma y below norm(x).  The objective gamma -> norm(x + gamma y) is
convex, and its minimiser lies in the disk |gamma| <= 2 norm(x) / norm(y)
because the objective exceeds norm(x) outside it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Callable

import numpy as np

from . import _kernels, _phase
from .config import DEFAULT_CONFIG, ToleranceConfig
from .errors import InputError, WitnessFailureError
from .linalg import (
    DensityState,
    PhaseAngle,
    numerical_range_support,
    operator_norm,
    top_eigenspace,
)
from .parallel import _pair, defect_oracle

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class BJVerdict:
    """Outcome of a BJ-orthogonality decision."""

    orthogonal: bool
    minimizer_gamma: complex
    min_norm: float
    borderline: bool


@dataclass(frozen=True)
class BridgeCheck:
    """Existence of a unimodular phase linking parallelism to orthogonality."""

    bridge_holds: bool
    phase: PhaseAngle
    borderline: bool


def _golden_min_line(f: Callable[[float], float], lo: float, hi: float, xtol: float) -> tuple[float, float]:
    a, b = lo, hi
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    while (b - a) > xtol:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
    return (c, fc) if fc <= fd else (d, fd)


def _descend(
    g: Callable[[complex], float],
    start: complex,
    radius: float,
    value_tol: float,
    xtol: float,
    max_rounds: int,
) -> tuple[complex, float]:
    """Coordinate descent with golden-section line searches.

    Alternates axis-aligned and diagonal coordinate pairs; the rotation
    breaks the stalls plain coordinate descent can hit on ridges.
    """
    axes = (
        (1.0 + 0.0j, 0.0 + 1.0j),
        ((1.0 + 1.0j) / math.sqrt(2.0), (1.0 - 1.0j) / math.sqrt(2.0)),
    )
    gamma = complex(start)
    best = g(gamma)
    span = 5.0 * radius
    stalled = 0
    for round_idx in range(max_rounds):
        before = best
        for direction in axes[round_idx % 2]:
            u, val = _golden_min_line(
                lambda t: g(gamma + t * direction), -span, span, xtol
            )
            if val < best:
                best = val
                gamma = gamma + u * direction
        if abs(before - best) <= value_tol * (1.0 + best):
            stalled += 1
            if stalled >= 2:
                break
        else:
            stalled = 0
    return gamma, best


def bj_minimize(x, y, cfg: ToleranceConfig = DEFAULT_CONFIG, value_tol: float = 1e-10) -> BJVerdict:
    """Minimise norm(x + gamma y) over complex gamma and decide orthogonality.

    Runs coordinate descent from gamma = 0 and from the Frobenius
    least-squares solution, keeping the better optimum.  ``value_tol`` is the
    relative convergence target of the descent (the default matches the
    decision tolerance; sweeps that only scout may loosen it).
    """
    x, y = _pair(x, y)
    nx = operator_norm(x)
    ny = operator_norm(y)
    if ny == 0.0:
        return BJVerdict(True, 0.0 + 0.0j, nx, False)

    def g(gamma: complex) -> float:
        return float(_kernels.singular_values(x + gamma * y)[0])

    radius = 2.0 * nx / ny
    xtol = max(value_tol * radius, 1e-14 * radius)
    ls = -complex(np.vdot(y, x)) / float(np.real(np.vdot(y, y)))
    best_gamma, best_val = 0.0 + 0.0j, nx
    for start in (0.0 + 0.0j, ls):
        gamma, val = _descend(g, start, radius, value_tol, xtol, max_rounds=120)
        if val < best_val:
            best_gamma, best_val = gamma, val
    orthogonal = best_val >= nx - cfg.eq_rel * (1.0 + nx)
    loose = best_val >= nx - cfg.decision_margin * cfg.eq_rel * (1.0 + nx)
    return BJVerdict(
        orthogonal=orthogonal,
        minimizer_gamma=best_gamma,
        min_norm=best_val,
        borderline=loose != orthogonal,
    )


def bj_state_witness(x, y, cfg: ToleranceConfig = DEFAULT_CONFIG) -> DensityState:
    """Density state P with tr(P x^H x) = norm(x)^2 and tr(P x^H y) = 0.

    States attaining norm(x)^2 on x^H x live on its top eigenspace, so the
    search reduces to placing 0 inside the numerical range of the compression
    of x^H y to that eigenspace: the boundary is sampled through the support
    function and 0 is written as a 1-, 2- or 3-point convex combination of
    boundary points.
    """
    x, y = _pair(x, y)
    nx = operator_norm(x)
    ny = operator_norm(y)
    if nx == 0.0:
        n = x.shape[1]
        p = np.eye(n, dtype=complex) / n
        return DensityState(p)
    tol = cfg.tol(nx * ny)
    basis = top_eigenspace(x.conj().T @ x, cfg.eq_rel * (1.0 + nx**2))
    compressed = basis.conj().T @ (x.conj().T @ y) @ basis
    k = compressed.shape[0]
    if k == 1:
        w = complex(compressed[0, 0])
        if abs(w) > tol:
            raise WitnessFailureError(
                f"top eigenspace is simple and |tr| = {abs(w)!r} exceeds tolerance"
            )
        xi = basis[:, 0]
        return DensityState(np.outer(xi, xi.conj()))

    thetas = _phase.grid(cfg)
    points = np.empty(len(thetas), dtype=complex)
    vectors = np.empty((len(thetas), k), dtype=complex)
    for i, theta in enumerate(thetas):
        _, vec = numerical_range_support(compressed, theta)
        vectors[i] = vec
        points[i] = complex(vec.conj() @ compressed @ vec)

    weights_idx = _zero_combination(points, tol)
    if weights_idx is None:
        raise WitnessFailureError("0 is not in the compressed numerical range")
    p = np.zeros((x.shape[1], x.shape[1]), dtype=complex)
    for weight, idx in weights_idx:
        xi = basis @ vectors[idx]
        p += weight * np.outer(xi, xi.conj())
    p = (p + p.conj().T) / 2.0
    state = DensityState(p)
    attained = complex(np.trace(p @ (x.conj().T @ y)))
    if abs(attained) > tol:
        raise WitnessFailureError(
            f"constructed state misses the zero condition: |tr| = {abs(attained)!r}"
        )
    return state


def _zero_combination(
    points: np.ndarray, tol: float
) -> list[tuple[float, int]] | None:
    """Convex weights over up to three of the points summing to ~0."""
    moduli = np.abs(points)
    best = int(np.argmin(moduli))
    if moduli[best] <= tol:
        return [(1.0, best)]

    # decimate to angularly diverse representatives to keep pair/triple
    # scans small; boundary points arrive in support-direction order
    order = np.argsort(np.angle(points))
    step = max(1, len(order) // 256)
    idx = np.asarray(order[::step])
    pts = points[idx]

    # best segment through 0 over all pairs
    a = pts[:, None]
    b = pts[None, :]
    d = b - a
    denom = np.abs(d) ** 2
    with np.errstate(divide="ignore", invalid="ignore"):
        tproj = np.where(denom > 0, -np.real(a * np.conj(d)) / denom, 0.0)
    tproj = np.clip(tproj, 0.0, 1.0)
    dist = np.abs(a + tproj * d)
    i, j = np.unravel_index(int(np.argmin(dist)), dist.shape)
    if dist[i, j] <= tol:
        weight = float(tproj[i, j])
        return [(1.0 - weight, int(idx[i])), (weight, int(idx[j]))]

    # triangles over a coarser decimation
    step3 = max(1, len(order) // 64)
    idx3 = np.asarray(order[::step3])
    pts3 = points[idx3]
    for ia, ib, ic in combinations(range(len(idx3)), 3):
        wa, wb, wc = pts3[ia], pts3[ib], pts3[ic]
        u = wb - wa
        v = wc - wa
        det = u.real * v.imag - u.imag * v.real
        if abs(det) < 1e-300:
            continue
        rhs = -wa
        sbar = (rhs.real * v.imag - rhs.imag * v.real) / det
        tbar = (u.real * rhs.imag - u.imag * rhs.real) / det
        if sbar >= -1e-12 and tbar >= -1e-12 and sbar + tbar <= 1.0 + 1e-12:
            sbar = min(max(sbar, 0.0), 1.0)
            tbar = min(max(tbar, 0.0), 1.0 - sbar)
            return [
                (1.0 - sbar - tbar, int(idx3[ia])),
                (sbar, int(idx3[ib])),
                (tbar, int(idx3[ic])),
            ]
    return None


def _orthogonal_to(x, combo, construction_scale: float, cfg: ToleranceConfig) -> bool:
    """Orthogonality of x to a constructed combination.

    For scalar-multiple pairs the combination vanishes exactly at the
    theorem's phase; the best phase the search can produce is only accurate
    to ``phase_refine``, so a combination whose norm sits at that resolution
    (relative to the magnitudes that built it) is zero up to the search
    resolution, and everything is orthogonal to zero.
    """
    floor = max(1e-12, 4.0 * cfg.phase_refine)
    if operator_norm(combo) <= floor * construction_scale:
        return True
    return bj_minimize(x, combo, cfg).orthogonal


def _closed_form_phase(a: np.ndarray, b: np.ndarray) -> complex | None:
    """Exact minimiser of |a + lambda b| for 1x1 compressions.

    When the top eigenspace is simple the scout objective is a scalar circle
    distance whose optimal phase is available in closed form; it is accurate
    to rounding, unlike the grid-refined phases.
    """
    if a.shape != (1, 1) or b.shape != (1, 1):
        return None
    av, bv = complex(a[0, 0]), complex(b[0, 0])
    if abs(av) == 0.0 or abs(bv) == 0.0:
        return None
    return -(av / abs(av)) * (bv.conjugate() / abs(bv))


def _phase_existence(
    confirm: Callable[[complex], bool],
    score: Callable[[complex], float],
    cfg: ToleranceConfig,
    seeds: tuple[complex, ...],
) -> tuple[bool, PhaseAngle]:
    """Find a unimodular phase passing ``confirm``.

    Seeds are tried first (they carry the analytically expected phase); the
    rest of the circle is scouted with the cheap ``score`` (smaller is more
    promising) and the best local minima are refined before confirmation.
    """
    for seed in seeds:
        if confirm(seed):
            return True, PhaseAngle(math.atan2(seed.imag, seed.real))
    grid_size = max(32, cfg.phase_grid // 16)
    thetas = 2.0 * math.pi * np.arange(grid_size) / grid_size
    values = np.array([score(complex(math.cos(t), math.sin(t))) for t in thetas])
    order = np.argsort(values)
    tried: list[float] = []
    for pick in order[:3]:
        center = float(thetas[pick])
        cell = 2.0 * math.pi / grid_size
        theta, _ = _phase.golden_max(
            lambda t: -score(complex(math.cos(t), math.sin(t))),
            center - cell,
            center + cell,
            cfg.phase_refine,
        )
        lam = complex(math.cos(theta), math.sin(theta))
        tried.append(theta)
        if confirm(lam):
            return True, PhaseAngle(theta)
    best = float(thetas[order[0]]) if len(order) else 0.0
    return False, PhaseAngle(tried[0] if tried else best)


def bj_bridge_check(t, s, cfg: ToleranceConfig = DEFAULT_CONFIG) -> BridgeCheck:
    """Existence of a unimodular lambda with
    T orthogonal to norm(S) T + lambda norm(T) S (and the conjugate dual
    with the roles swapped).  Holds exactly when the pair is parallel; the
    phase is the antipode of the parallelism-optimal phase."""
    t, s = _pair(t, s)
    nt, ns = operator_norm(t), operator_norm(s)
    defect, best_phase = defect_oracle(t, s, cfg)

    combo_scale = 2.0 * nt * ns

    def confirm(lam: complex) -> bool:
        if not _orthogonal_to(t, ns * t + lam * nt * s, combo_scale, cfg):
            return False
        return _orthogonal_to(s, nt * s + np.conj(lam) * ns * t, combo_scale, cfg)

    basis = top_eigenspace(t.conj().T @ t, cfg.eq_rel * (1.0 + nt**2))
    a = ns * (basis.conj().T @ (t.conj().T @ t) @ basis)
    b = nt * (basis.conj().T @ (t.conj().T @ s) @ basis)

    def score(lam: complex) -> float:
        # membership margin of 0 in the numerical range of the compression:
        # nonnegative support function in every direction means 0 inside
        c = a + lam * b
        k = c.conj().T / 2.0
        h0 = np.zeros_like(c)
        grid = np.linspace(0.0, 2.0 * math.pi, 64, endpoint=False)
        support = _kernels.sweep_hermitian_eigvals(h0, k, grid)[:, -1]
        return float(-np.min(support))

    seeds = [best_phase.antipode().scalar]
    closed = _closed_form_phase(a, b)
    if closed is not None:
        seeds.append(closed)
    holds, phase = _phase_existence(confirm, score, cfg, seeds=tuple(seeds))
    gap = abs(defect)
    borderline = cfg.below_borderline(gap, nt, ns)
    return BridgeCheck(bridge_holds=holds, phase=phase, borderline=borderline)


def parallel_consequence_check(x, y, cfg: ToleranceConfig = DEFAULT_CONFIG) -> bool:
    """For a parallel pair, some unimodular lambda makes x orthogonal to
    norm(y) x (x^H x) + lambda norm(x) x (x^H y) and simultaneously y
    orthogonal to norm(x) y (y^H y) + lambda norm(y) y (x^H y)."""
    x, y = _pair(x, y)
    nx, ny = operator_norm(x), operator_norm(y)
    defect, best_phase = defect_oracle(x, y, cfg)
    if not cfg.below(abs(defect), nx, ny):
        raise InputError("parallel_consequence_check requires a parallel pair")
    gram_x = x.conj().T @ x
    gram_y = y.conj().T @ y
    inner = x.conj().T @ y

    scale_first = ny * operator_norm(x @ gram_x) + nx * operator_norm(x @ inner)
    scale_second = nx * operator_norm(y @ gram_y) + ny * operator_norm(y @ inner)

    def confirm(lam: complex) -> bool:
        if not _orthogonal_to(
            x, ny * (x @ gram_x) + lam * nx * (x @ inner), scale_first, cfg
        ):
            return False
        return _orthogonal_to(
            y, nx * (y @ gram_y) + lam * ny * (y @ inner), scale_second, cfg
        )

    basis = top_eigenspace(gram_x, cfg.eq_rel * (1.0 + nx**2))
    a = ny * (basis.conj().T @ (x.conj().T @ x @ gram_x) @ basis)
    b = nx * (basis.conj().T @ (x.conj().T @ x @ inner) @ basis)

    def score(lam: complex) -> float:
        c = a + lam * b
        k = c.conj().T / 2.0
        h0 = np.zeros_like(c)
        grid = np.linspace(0.0, 2.0 * math.pi, 64, endpoint=False)
        support = _kernels.sweep_hermitian_eigvals(h0, k, grid)[:, -1]
        return float(-np.min(support))

    seeds = [best_phase.antipode().scalar]
    closed = _closed_form_phase(a, b)
    if closed is not None:
        seeds.append(closed)
    holds, _ = _phase_existence(confirm, score, cfg, seeds=tuple(seeds))
    return holds
