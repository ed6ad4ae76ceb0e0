"""Phase-grid search over the unit circle with local refinement.

Objectives of the form theta -> scalar(matrix family at exp(i theta)) are
continuous but not unimodal, so global searches run in two stages: a dense
coarse grid, then golden-section refinement of every grid-local optimum that
could still beat the incumbent given the objective's Lipschitz constant.
"""

from __future__ import annotations

import math
from typing import Callable

import numpy as np

from .config import ToleranceConfig

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0
_MAX_CANDIDATES = 8


def grid(cfg: ToleranceConfig) -> np.ndarray:
    return 2.0 * math.pi * np.arange(cfg.phase_grid) / cfg.phase_grid


def golden_max(
    f: Callable[[float], float], lo: float, hi: float, xtol: float
) -> tuple[float, float]:
    """Golden-section maximisation of f on [lo, hi] to width xtol."""
    a, b = lo, hi
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    while (b - a) > xtol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
    if fc >= fd:
        return c, fc
    return d, fd


def _local_max_indices(values: np.ndarray) -> np.ndarray:
    left = np.roll(values, 1)
    right = np.roll(values, -1)
    return np.nonzero((values >= left) & (values >= right))[0]


def refine_max(
    f: Callable[[float], float],
    thetas: np.ndarray,
    values: np.ndarray,
    cfg: ToleranceConfig,
    lipschitz: float,
) -> tuple[float, float]:
    """Refine the grid maximum of f.

    Every grid-local maximum whose value could still reach the global grid
    maximum (within the Lipschitz slack of one grid cell plus the decision
    band) is refined by golden section down to ``cfg.phase_refine``.
    """
    cell = 2.0 * math.pi / len(thetas)
    best_idx = int(np.argmax(values))
    band = max(
        lipschitz * cell,
        cfg.decision_margin * cfg.eq_rel * (1.0 + abs(values[best_idx])),
    )
    candidates = _local_max_indices(values)
    candidates = candidates[values[candidates] >= values[best_idx] - band]
    # strongest first, keep a few well-separated ones
    candidates = candidates[np.argsort(values[candidates])[::-1]]
    kept: list[int] = []
    n = len(thetas)
    for idx in candidates:
        if all(min(abs(idx - j), n - abs(idx - j)) > 1 for j in kept):
            kept.append(int(idx))
        if len(kept) >= _MAX_CANDIDATES:
            break
    best_theta = float(thetas[best_idx])
    best_value = float(values[best_idx])
    for idx in kept:
        center = float(thetas[idx])
        theta, value = golden_max(f, center - cell, center + cell, cfg.phase_refine)
        if value > best_value:
            best_theta, best_value = theta, value
    return best_theta % (2.0 * math.pi), best_value


def refine_min(
    f: Callable[[float], float],
    thetas: np.ndarray,
    values: np.ndarray,
    cfg: ToleranceConfig,
    lipschitz: float,
) -> tuple[float, float]:
    theta, neg = refine_max(lambda t: -f(t), thetas, -values, cfg, lipschitz)
    return theta, -neg
