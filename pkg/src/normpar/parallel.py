"""Decision procedures for norm-parallelism of complex matrices.

Two matrices are norm-parallel when ``max over |lambda|=1 of norm(T + lambda S)``
attains ``norm(T) + norm(S)``.  The brute-force route (``defect_oracle``)
maximises that objective directly over a refined phase grid; every other
procedure here decides the same question through a different spectral
characterisation and is cross-validated against the oracle by the harness.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels, _phase
from .config import DEFAULT_CONFIG, ToleranceConfig
from .errors import InputError, InvalidWitnessError, WitnessFailureError
from .linalg import (
    DensityState,
    PhaseAngle,
    as_matrix,
    as_square,
    is_psd,
    max_modulus_numerical_range,
    operator_norm,
    spectral_radius,
    top_eigenspace,
)


@dataclass(frozen=True)
class ParallelVerdict:
    """Outcome of a parallelism decision.

    ``defect`` is the maximised norm minus the triangle-inequality bound; it
    is nonpositive up to numerics and zero exactly on parallel pairs.
    Witnesses are populated on confident parallel verdicts: a unit vector on
    which both matrices attain their norms with aligned images, and the
    rank-one density state built from it.
    """

    parallel: bool
    best_phase: PhaseAngle
    defect: float
    borderline: bool
    witness_vector: np.ndarray | None = None
    witness_state: DensityState | None = None


@dataclass(frozen=True)
class CriterionReport:
    """Outcome of one characterisation-based criterion."""

    criterion_name: str
    applicable: bool
    decision: bool | None
    borderline: bool = False
    diagnostics: dict[str, float] = field(default_factory=dict)


def _pair(t, s) -> tuple[np.ndarray, np.ndarray]:
    t = as_matrix(t, "T")
    s = as_matrix(s, "S")
    if t.shape != s.shape:
        raise InputError(f"shape mismatch: {t.shape} vs {s.shape}")
    return t, s


def defect_oracle(
    t, s, cfg: ToleranceConfig = DEFAULT_CONFIG
) -> tuple[float, PhaseAngle]:
    """Maximise norm(T + exp(i theta) S) over the circle.

    Returns the defect (max minus norm(T) + norm(S), nonpositive up to
    numerics) and the maximising phase.  Coarse grid plus golden-section
    refinement of every near-optimal grid-local maximum.
    """
    t, s = _pair(t, s)
    nt, ns = operator_norm(t), operator_norm(s)
    if nt == 0.0 or ns == 0.0:
        return 0.0, PhaseAngle(0.0)
    thetas = _phase.grid(cfg)
    values = _kernels.sweep_singular_values(t, s, thetas)[:, 0]

    def f(theta: float) -> float:
        return float(_kernels.sweep_singular_values(t, s, np.array([theta]))[0, 0])

    theta, best = _phase.refine_max(f, thetas, values, cfg, lipschitz=ns)
    return best - nt - ns, PhaseAngle(theta)


def is_parallel(t, s, cfg: ToleranceConfig = DEFAULT_CONFIG) -> ParallelVerdict:
    """Decide parallelism and, when confident, extract witnesses.

    The zero matrix is parallel to everything (the defining equation holds
    with any phase); a witness extraction that fails its own postconditions
    downgrades the verdict to borderline instead of raising.
    """
    t, s = _pair(t, s)
    nt, ns = operator_norm(t), operator_norm(s)
    defect, phase = defect_oracle(t, s, cfg)
    gap = abs(defect)
    parallel = cfg.below(gap, nt, ns)
    borderline = cfg.below_borderline(gap, nt, ns)
    vector = None
    state = None
    if parallel:
        try:
            vector = witness_vector(t, s, phase, cfg)
            state = witness_state(t, s, vector, cfg)
        except WitnessFailureError:
            vector = None
            state = None
            borderline = True
    return ParallelVerdict(
        parallel=parallel,
        best_phase=phase,
        defect=defect,
        borderline=borderline,
        witness_vector=vector,
        witness_state=state,
    )


def witness_vector(
    t, s, best_phase: PhaseAngle, cfg: ToleranceConfig = DEFAULT_CONFIG
) -> np.ndarray:
    """Unit vector on which a parallel pair attains everything at once.

    The top right-singular vector xi of T + lambda* S satisfies
    norm(T xi) = norm(T), norm(S xi) = norm(S) and
    |<T xi, S xi>| = norm(T) norm(S); all three are checked and a failure
    raises, signalling a borderline input.
    """
    t, s = _pair(t, s)
    nt, ns = operator_norm(t), operator_norm(s)
    _, _, vh = np.linalg.svd(t + best_phase.scalar * s)
    xi = vh[0].conj()
    txi = t @ xi
    sxi = s @ xi
    checks = (
        (float(np.linalg.norm(txi)), nt),
        (float(np.linalg.norm(sxi)), ns),
        (abs(complex(np.vdot(sxi, txi))), nt * ns),
    )
    for got, want in checks:
        if not cfg.close(got, want):
            raise WitnessFailureError(
                f"witness postcondition failed: {got!r} vs {want!r}"
            )
    return xi


def witness_state(
    t, s, xi, cfg: ToleranceConfig = DEFAULT_CONFIG
) -> DensityState:
    """Rank-one density state P = xi xi^H with |tr(P T^H S)| = norm(T) norm(S)."""
    t, s = _pair(t, s)
    xi = np.asarray(xi, dtype=complex).reshape(-1)
    if xi.shape[0] != t.shape[1]:
        raise InvalidWitnessError("witness vector length does not match the matrices")
    norm_xi = float(np.linalg.norm(xi))
    if not cfg.close(norm_xi, 1.0):
        raise InvalidWitnessError("witness vector is not a unit vector")
    nt, ns = operator_norm(t), operator_norm(s)
    p = np.outer(xi, xi.conj())
    attained = abs(complex(np.trace(p @ (t.conj().T @ s))))
    if not cfg.close(attained, nt * ns):
        raise InvalidWitnessError(
            f"vector does not witness the pair: |tr(P T^H S)| = {attained!r}, "
            f"expected {nt * ns!r}"
        )
    return DensityState(p)


# ---------------------------------------------------------------------------
# criteria


def spectral_criterion(t, s, cfg: ToleranceConfig = DEFAULT_CONFIG) -> CriterionReport:
    """Parallel iff the spectral radius of T^H S reaches norm(T^H S) and the
    norm product at once.  Always applicable."""
    t, s = _pair(t, s)
    inner = t.conj().T @ s
    r = spectral_radius(inner)
    n_inner = operator_norm(inner)
    product = operator_norm(t) * operator_norm(s)
    decision = cfg.close(r, n_inner) and cfg.close(n_inner, product) and cfg.close(r, product)
    loose = (
        cfg.close_loose(r, n_inner)
        and cfg.close_loose(n_inner, product)
        and cfg.close_loose(r, product)
    )
    return CriterionReport(
        criterion_name="spectral",
        applicable=True,
        decision=decision,
        borderline=loose != decision,
        diagnostics={
            "spectral_radius": r,
            "inner_norm": n_inner,
            "norm_product": product,
        },
    )


def normal_criterion(x, y, cfg: ToleranceConfig = DEFAULT_CONFIG) -> CriterionReport:
    """When X^H Y is normal, parallelism reduces to norm(X^H Y) = norm(X) norm(Y)."""
    x, y = _pair(x, y)
    inner = x.conj().T @ y
    n_inner = operator_norm(inner)
    commutator = inner @ inner.conj().T - inner.conj().T @ inner
    normal_defect = operator_norm(commutator)
    applicable = normal_defect <= cfg.eq_rel * (1.0 + n_inner**2)
    if not applicable:
        return CriterionReport(
            criterion_name="normal",
            applicable=False,
            decision=None,
            diagnostics={"normality_defect": normal_defect, "inner_norm": n_inner},
        )
    product = operator_norm(x) * operator_norm(y)
    decision = cfg.close(n_inner, product)
    return CriterionReport(
        criterion_name="normal",
        applicable=True,
        decision=decision,
        borderline=cfg.equality_borderline(n_inner, product),
        diagnostics={
            "normality_defect": normal_defect,
            "inner_norm": n_inner,
            "norm_product": product,
        },
    )


def singularity_criterion(x, y, cfg: ToleranceConfig = DEFAULT_CONFIG) -> CriterionReport:
    """When Y^H Y = I, parallel iff
    X^H X - norm(X) (lambda X^H Y + h.c.) + norm(X)^2 I is singular for some
    unimodular lambda.  The minimum eigenvalue is swept over the circle."""
    x, y = _pair(x, y)
    x = as_square(x, "X")
    y = as_square(y, "Y")
    n = x.shape[0]
    iso_defect = operator_norm(y.conj().T @ y - np.eye(n))
    if iso_defect > cfg.eq_rel * (1.0 + operator_norm(y) ** 2):
        return CriterionReport(
            criterion_name="singularity",
            applicable=False,
            decision=None,
            diagnostics={"isometry_defect": iso_defect},
        )
    nx = operator_norm(x)
    if nx == 0.0:
        return CriterionReport(
            criterion_name="singularity",
            applicable=True,
            decision=True,
            diagnostics={"min_eigenvalue": 0.0},
        )
    h0 = x.conj().T @ x + nx**2 * np.eye(n)
    h0 = (h0 + h0.conj().T) / 2.0
    k = -nx * (x.conj().T @ y)
    thetas = _phase.grid(cfg)
    values = _kernels.sweep_hermitian_eigvals(h0, k, thetas)[:, 0]

    def f(theta: float) -> float:
        return float(_kernels.sweep_hermitian_eigvals(h0, k, np.array([theta]))[0, 0])

    _, min_eig = _phase.refine_min(f, thetas, values, cfg, lipschitz=2.0 * operator_norm(k))
    scale = nx**2
    decision = min_eig <= cfg.eq_rel * (1.0 + scale)
    loose = min_eig <= cfg.decision_margin * cfg.eq_rel * (1.0 + scale)
    return CriterionReport(
        criterion_name="singularity",
        applicable=True,
        decision=decision,
        borderline=loose != decision,
        diagnostics={"isometry_defect": iso_defect, "min_eigenvalue": min_eig},
    )


def commutative_criterion(a, b, cfg: ToleranceConfig = DEFAULT_CONFIG) -> CriterionReport:
    """Diagonal pair with |b| = I entrywise: parallel iff a - lambda norm(a) b
    is singular for some unimodular lambda (smallest singular value sweep)."""
    a = as_square(a, "a")
    b = as_square(b, "b")
    if a.shape != b.shape:
        raise InputError(f"shape mismatch: {a.shape} vs {b.shape}")
    for name, m in (("a", a), ("b", b)):
        if operator_norm(m - np.diag(np.diag(m))) > cfg.tol(operator_norm(m)):
            raise InputError(f"{name} must be diagonal")
    n = a.shape[0]
    iso_defect = operator_norm(b.conj().T @ b - np.eye(n))
    if iso_defect > cfg.eq_rel * (1.0 + operator_norm(b) ** 2):
        return CriterionReport(
            criterion_name="commutative",
            applicable=False,
            decision=None,
            diagnostics={"isometry_defect": iso_defect},
        )
    na = operator_norm(a)
    if na == 0.0:
        return CriterionReport(
            criterion_name="commutative",
            applicable=True,
            decision=True,
            diagnostics={"min_singular_value": 0.0},
        )
    q = -na * b
    thetas = _phase.grid(cfg)
    values = _kernels.sweep_singular_values(a, q, thetas)[:, -1]

    def f(theta: float) -> float:
        return float(_kernels.sweep_singular_values(a, q, np.array([theta]))[0, -1])

    _, min_sv = _phase.refine_min(f, thetas, values, cfg, lipschitz=operator_norm(q))
    decision = min_sv <= cfg.eq_rel * (1.0 + na)
    loose = min_sv <= cfg.decision_margin * cfg.eq_rel * (1.0 + na)
    return CriterionReport(
        criterion_name="commutative",
        applicable=True,
        decision=decision,
        borderline=loose != decision,
        diagnostics={"isometry_defect": iso_defect, "min_singular_value": min_sv},
    )


def eigen_criterion(t, cfg: ToleranceConfig = DEFAULT_CONFIG) -> CriterionReport:
    """Parallel to the identity iff some eigenvalue of T reaches norm(T) in
    modulus, i.e. the spectral radius attains the norm."""
    t = as_square(t, "T")
    r = spectral_radius(t)
    nt = operator_norm(t)
    decision = cfg.close(r, nt)
    # sanity companion: the modulus always has its norm as an eigenvalue
    modulus_eigs = _kernels.singular_values(t)
    return CriterionReport(
        criterion_name="eigen",
        applicable=True,
        decision=decision,
        borderline=cfg.equality_borderline(r, nt),
        diagnostics={
            "spectral_radius": r,
            "norm": nt,
            "modulus_top_eigenvalue": float(modulus_eigs[0]),
        },
    )


def positive_criterion(t, s, cfg: ToleranceConfig = DEFAULT_CONFIG) -> CriterionReport:
    """For positive T: parallel iff S's numerical range over the top
    eigenspace of T reaches norm(S) in modulus."""
    t, s = _pair(t, s)
    t = as_square(t, "T")
    if not is_psd(t, cfg):
        return CriterionReport(
            criterion_name="positive",
            applicable=False,
            decision=None,
            diagnostics={},
        )
    nt = operator_norm(t)
    if nt == 0.0:
        return CriterionReport(
            criterion_name="positive",
            applicable=False,
            decision=None,
            diagnostics={"norm_t": 0.0},
        )
    basis = top_eigenspace(t, cfg.eq_rel * (1.0 + nt))
    compressed = basis.conj().T @ s @ basis
    radius, _ = max_modulus_numerical_range(compressed, cfg)
    ns = operator_norm(s)
    decision = cfg.close(radius, ns)
    return CriterionReport(
        criterion_name="positive",
        applicable=True,
        decision=decision,
        borderline=cfg.equality_borderline(radius, ns),
        diagnostics={
            "compressed_range_radius": radius,
            "norm_s": ns,
            "eigenspace_dim": float(basis.shape[1]),
        },
    )


def gram_criterion(t, s, cfg: ToleranceConfig = DEFAULT_CONFIG) -> CriterionReport:
    """Parallel iff |<T xi, S xi>| reaches norm(T) norm(S) for some unit xi
    in the top eigenspace of T^H T."""
    t, s = _pair(t, s)
    nt, ns = operator_norm(t), operator_norm(s)
    if nt == 0.0 or ns == 0.0:
        return CriterionReport(
            criterion_name="gram",
            applicable=True,
            decision=True,
            diagnostics={"norm_product": 0.0},
        )
    gram = t.conj().T @ t
    basis = top_eigenspace(gram, cfg.eq_rel * (1.0 + nt**2))
    compressed = basis.conj().T @ (t.conj().T @ s) @ basis
    radius, _ = max_modulus_numerical_range(compressed, cfg)
    product = nt * ns
    decision = cfg.close(radius, product)
    return CriterionReport(
        criterion_name="gram",
        applicable=True,
        decision=decision,
        borderline=cfg.equality_borderline(radius, product),
        diagnostics={
            "compressed_range_radius": radius,
            "norm_product": product,
            "eigenspace_dim": float(basis.shape[1]),
        },
    )
