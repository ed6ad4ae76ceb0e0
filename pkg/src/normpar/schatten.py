"""Schatten p-norm parallelism: trace condition, brute-force oracle, and the
derivative identity d/dt |T + tS|_p^p at t = 0.

p = infinity is the operator norm and is handled by the parallelism module,
not here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels, _phase
from .config import DEFAULT_CONFIG, ToleranceConfig
from .errors import InputError
from .linalg import PhaseAngle, as_square, polar_decompose, schatten_norm
from .parallel import CriterionReport, _pair

# relative smallest singular value below which the p = 1 trace condition is
# refused (the p = 1 route requires invertible inputs)
_P1_INVERTIBILITY_FLOOR = 1e-6


def schatten_defect_oracle(
    t, s, p: float, cfg: ToleranceConfig = DEFAULT_CONFIG
) -> tuple[float, PhaseAngle]:
    """Maximise the Schatten p-norm of T + exp(i theta) S over the circle."""
    t, s = _pair(t, s)
    if not (p >= 1 and math.isfinite(p)):
        raise InputError(f"Schatten exponent must be finite with p >= 1, got {p}")
    nt = schatten_norm(t, p)
    ns = schatten_norm(s, p)
    if nt == 0.0 or ns == 0.0:
        return 0.0, PhaseAngle(0.0)
    thetas = _phase.grid(cfg)
    sv = _kernels.sweep_singular_values(t, s, thetas)
    values = np.sum(sv**p, axis=1) ** (1.0 / p)

    def f(theta: float) -> float:
        row = _kernels.sweep_singular_values(t, s, np.array([theta]))[0]
        return float(np.sum(row**p) ** (1.0 / p))

    # the p-norm is 1-Lipschitz in the p-norm of the perturbation
    theta, best = _phase.refine_max(f, thetas, values, cfg, lipschitz=ns)
    return best - nt - ns, PhaseAngle(theta)


def _modulus_power(modulus: np.ndarray, exponent: float, floor: float) -> np.ndarray:
    """Hermitian fractional power with eigenvalue clamping at the floor."""
    w, v = np.linalg.eigh((modulus + modulus.conj().T) / 2.0)
    w = np.where(w > floor, w, 0.0)
    powered = np.where(w > 0.0, w**exponent, 0.0)
    return v @ (powered[:, None] * v.conj().T)


def schatten_trace_criterion(
    t, s, p: float, cfg: ToleranceConfig = DEFAULT_CONFIG
) -> CriterionReport:
    """Parallel in the p-norm iff
    |T|_p * |tr(|T|^(p-1) U^H S)| = |S|_p * tr(|T|^p), with T = U|T|.

    The swapped-roles dual is evaluated alongside and reported in the
    diagnostics.  For p = 1 both inputs must be comfortably invertible.
    """
    t, s = _pair(t, s)
    t = as_square(t, "T")
    s = as_square(s, "S")
    if not (p >= 1 and math.isfinite(p)):
        raise InputError(f"Schatten exponent must be finite with p >= 1, got {p}")
    if p == 1.0:
        for name, m in (("T", t), ("S", s)):
            sv = _kernels.singular_values(m)
            if sv[-1] < _P1_INVERTIBILITY_FLOOR * sv[0] or sv[0] == 0.0:
                return CriterionReport(
                    criterion_name="schatten-trace",
                    applicable=False,
                    decision=None,
                    diagnostics={"p": p, f"min_sv_{name}": float(sv[-1])},
                )

    def side(a: np.ndarray, b: np.ndarray) -> tuple[float, float]:
        na = schatten_norm(a, p)
        nb = schatten_norm(b, p)
        parts = polar_decompose(a)
        floor = cfg.psd_floor * (1.0 + float(np.max(np.abs(parts.modulus))))
        power = _modulus_power(parts.modulus, p - 1.0, floor)
        lhs = na * abs(complex(np.trace(power @ parts.unitary_factor.conj().T @ b)))
        rhs = nb * na**p  # tr(|A|^p) is the p-norm to the p-th power
        return lhs, rhs

    lhs, rhs = side(t, s)
    dual_lhs, dual_rhs = side(s, t)
    decision = cfg.close(lhs, rhs)
    dual_decision = cfg.close(dual_lhs, dual_rhs)
    return CriterionReport(
        criterion_name="schatten-trace",
        applicable=True,
        decision=decision,
        borderline=cfg.equality_borderline(lhs, rhs)
        or cfg.equality_borderline(dual_lhs, dual_rhs),
        diagnostics={
            "p": p,
            "lhs": lhs,
            "rhs": rhs,
            "dual_lhs": dual_lhs,
            "dual_rhs": dual_rhs,
            "dual_decision": float(dual_decision),
        },
    )


@dataclass(frozen=True)
class DerivativeCheck:
    analytic: float
    numeric: float
    rel_err: float


def frechet_derivative_check(
    t, s, p: float, cfg: ToleranceConfig = DEFAULT_CONFIG
) -> DerivativeCheck:
    """Compare p * Re tr(|T|^(p-1) U^H S) against a central difference of
    t -> |T + tS|_p^p at zero."""
    t, s = _pair(t, s)
    t = as_square(t, "T")
    s = as_square(s, "S")
    if not (p > 1 and math.isfinite(p)):
        raise InputError(f"the derivative identity requires finite p > 1, got {p}")
    parts = polar_decompose(t)
    floor = cfg.psd_floor * (1.0 + float(np.max(np.abs(parts.modulus))))
    power = _modulus_power(parts.modulus, p - 1.0, floor)
    analytic = p * float(
        np.trace(power @ parts.unitary_factor.conj().T @ s).real
    )
    nt = schatten_norm(t, p)
    ns = schatten_norm(s, p)
    step = 1e-5 * (1.0 + nt) / (1.0 + ns)
    plus = schatten_norm(t + step * s, p) ** p
    minus = schatten_norm(t - step * s, p) ** p
    numeric = (plus - minus) / (2.0 * step)
    denom = max(abs(analytic), abs(numeric))
    rel_err = abs(analytic - numeric) / denom if denom > 0 else 0.0
    return DerivativeCheck(analytic=analytic, numeric=numeric, rel_err=rel_err)
