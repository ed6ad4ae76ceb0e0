"""Tolerance configuration and the relative-equality predicates built on it.

Every decision in the package is tolerance-based.  Equality of two reals a, b
is always judged relatively, |a - b| <= rel * (1 + |a| + |b|), so decisions
scale across input magnitudes.  A decision is *borderline* when it flips
between the base tolerance ``eq_rel`` and the widened tolerance
``decision_margin * eq_rel``; borderline verdicts are flagged and excluded
from equivalence suites.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

ENV_EQ_REL = "NORMPAR_EQ_REL"


@dataclass(frozen=True)
class ToleranceConfig:
    """Numerical thresholds, grid resolutions and refinement targets.

    Attributes:
        eq_rel: relative equality tolerance.
        decision_margin: multiple of ``eq_rel`` defining the borderline band.
        phase_grid: number of coarse samples of the unit circle.
        phase_refine: target angular resolution of refined phase searches.
        psd_floor: how negative an eigenvalue may be while still counting
            as positive semidefinite.
        seed: seed for the few procedures that draw internal random probes.
    """

    eq_rel: float = 1e-7
    decision_margin: float = 10.0
    phase_grid: int = 1024
    phase_refine: float = 1e-10
    psd_floor: float = 1e-10
    seed: int = 20260810

    def __post_init__(self) -> None:
        for name in ("eq_rel", "decision_margin", "phase_refine", "psd_floor"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be strictly positive")
        if self.phase_grid < 4:
            raise ValueError("phase_grid must be at least 4")
        if not self.phase_refine < 2.0 * math.pi / self.phase_grid:
            raise ValueError("phase_refine must be finer than the coarse grid")

    # -- relative equality ------------------------------------------------

    def tol(self, *magnitudes: float) -> float:
        """Absolute tolerance at the scale of the given magnitudes."""
        return self.eq_rel * (1.0 + sum(abs(m) for m in magnitudes))

    def close(self, a: float, b: float, rel: float | None = None) -> bool:
        rel = self.eq_rel if rel is None else rel
        return abs(a - b) <= rel * (1.0 + abs(a) + abs(b))

    def close_loose(self, a: float, b: float) -> bool:
        return self.close(a, b, rel=self.decision_margin * self.eq_rel)

    def equality_borderline(self, a: float, b: float) -> bool:
        """True when the equality verdict flips inside the margin band."""
        return self.close_loose(a, b) and not self.close(a, b)

    # -- one-sided (value <= threshold) decisions -------------------------

    def below(self, value: float, *magnitudes: float) -> bool:
        return value <= self.tol(*magnitudes)

    def below_borderline(self, value: float, *magnitudes: float) -> bool:
        t = self.tol(*magnitudes)
        return self.tol(*magnitudes) < value <= self.decision_margin * t


DEFAULT_CONFIG = ToleranceConfig()
