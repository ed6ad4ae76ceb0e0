"""Concrete Hilbert-module constructions on M_n: elementary operators
z -> x (y^H z) lifted to n^2 x n^2 matrices, rank-one maps on C^n, and
block-diagonal parallelism.

Lift convention: column-major vectorisation, so the map z -> A z lifts to
kron(I, A).  Any consistent convention preserves the norms and spectra of
left multiplications.

Inner products: module elements use <x, y> = x^H y (linear in the second
argument); Hilbert-space vectors use [u, v] = v^H u (linear in the first),
so the rank-one map xi -> [xi, eta] zeta is the matrix zeta eta^H.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_CONFIG, ToleranceConfig
from .errors import InputError, NotApplicableError
from .linalg import as_square, as_vector, is_psd, operator_norm, spectral_radius
from .parallel import ParallelVerdict, eigen_criterion, is_parallel


@dataclass(frozen=True)
class ElementaryOperator:
    """The module map z -> x (y^H z) together with its lifted matrix."""

    x: np.ndarray
    y: np.ndarray
    lifted: np.ndarray


def lift_theta(x, y) -> ElementaryOperator:
    """Lift the elementary operator with symbols (x, y) to M_{n^2}.

    On M_n over itself the map is left multiplication by x y^H; its lifted
    adjoint is the lift of the swapped pair and lifts compose through
    (x, y) * (z, w) = (x (y^H z), w).
    """
    x = as_square(x, "x")
    y = as_square(y, "y")
    if x.shape != y.shape:
        raise InputError(f"size mismatch: {x.shape} vs {y.shape}")
    n = x.shape[0]
    lifted = np.kron(np.eye(n), x @ y.conj().T)
    return ElementaryOperator(x=x, y=y, lifted=lifted)


@dataclass(frozen=True)
class ThetaRadiusCheck:
    applicable: bool
    r_theta: float
    scalar_mod: float


def _scalar_multiple_of_identity(
    m: np.ndarray, cfg: ToleranceConfig
) -> complex | None:
    """The scalar s with m = s I, or None when m is not such a multiple."""
    n = m.shape[0]
    s = complex(np.trace(m)) / n
    if operator_norm(m - s * np.eye(n)) <= cfg.eq_rel * (1.0 + abs(s) + operator_norm(m)):
        return s
    return None


def theta_spectral_radius_check(
    x, y, cfg: ToleranceConfig = DEFAULT_CONFIG
) -> ThetaRadiusCheck:
    """When x^H y is a scalar multiple of the identity, the lifted operator's
    spectral radius equals that scalar's modulus."""
    x = as_square(x, "x")
    y = as_square(y, "y")
    if x.shape != y.shape:
        raise InputError(f"size mismatch: {x.shape} vs {y.shape}")
    s = _scalar_multiple_of_identity(x.conj().T @ y, cfg)
    if s is None:
        return ThetaRadiusCheck(applicable=False, r_theta=float("nan"), scalar_mod=float("nan"))
    lifted = lift_theta(x, y).lifted
    return ThetaRadiusCheck(
        applicable=True,
        r_theta=spectral_radius(lifted),
        scalar_mod=abs(s),
    )


@dataclass(frozen=True)
class ThetaTransferCheck:
    applicable: bool
    lhs: bool
    rhs: bool
    borderline: bool


def theta_transfer_check(
    x, y, z, cfg: ToleranceConfig = DEFAULT_CONFIG
) -> ThetaTransferCheck:
    """Parallelism transfers between (x, y) and the lifted pair with a shared
    invertible carrier z, provided x^H y is a scalar multiple of the identity.

    z is normalised to an isometry (z (z^H z)^(-1/2)) before lifting; the
    statement for raw z is recovered through that normalisation.
    """
    x = as_square(x, "x")
    y = as_square(y, "y")
    z = as_square(z, "z")
    if x.shape != y.shape or x.shape != z.shape:
        raise InputError("size mismatch among x, y, z")
    gram = z.conj().T @ z
    w, v = np.linalg.eigh((gram + gram.conj().T) / 2.0)
    nz2 = float(w[-1])
    if w[0] <= cfg.eq_rel * (1.0 + nz2):
        return ThetaTransferCheck(applicable=False, lhs=False, rhs=False, borderline=False)
    if _scalar_multiple_of_identity(x.conj().T @ y, cfg) is None:
        return ThetaTransferCheck(applicable=False, lhs=False, rhs=False, borderline=False)
    inv_sqrt = v @ ((w ** -0.5)[:, None] * v.conj().T)
    z_iso = z @ inv_sqrt
    left: ParallelVerdict = is_parallel(x, y, cfg)
    lifted_x = lift_theta(z_iso, x).lifted
    lifted_y = lift_theta(z_iso, y).lifted
    right: ParallelVerdict = is_parallel(lifted_x, lifted_y, cfg)
    return ThetaTransferCheck(
        applicable=True,
        lhs=left.parallel,
        rhs=right.parallel,
        borderline=left.borderline or right.borderline,
    )


def rank_one(zeta, eta) -> np.ndarray:
    """The matrix zeta eta^H of the map xi -> [xi, eta] zeta."""
    zeta = as_vector(zeta, "zeta")
    eta = as_vector(eta, "eta")
    if zeta.shape != eta.shape:
        raise InputError(f"length mismatch: {zeta.shape[0]} vs {eta.shape[0]}")
    return np.outer(zeta, eta.conj())


@dataclass(frozen=True)
class RankOneEquivalences:
    """Four equivalent readings of linear dependence of two vectors."""

    vectors_parallel: bool
    rank_one_pair_parallel: bool
    rank_one_identity_parallel: bool
    eigenvalue_attains: bool
    borderline: bool

    def all_agree(self) -> bool:
        return (
            self.vectors_parallel
            == self.rank_one_pair_parallel
            == self.rank_one_identity_parallel
            == self.eigenvalue_attains
        )


def rank_one_equivalences(
    eta, xi, cfg: ToleranceConfig = DEFAULT_CONFIG
) -> RankOneEquivalences:
    """Evaluate the four equivalent statements on a nonzero vector pair.

    The quantified carrier vector in the second statement is sampled twice
    (a seeded random draw and the first basis vector); disagreement between
    the two draws is reported as borderline rather than resolved.
    """
    eta = as_vector(eta, "eta")
    xi = as_vector(xi, "xi")
    if eta.shape != xi.shape:
        raise InputError(f"length mismatch: {eta.shape[0]} vs {xi.shape[0]}")
    n_eta = float(np.linalg.norm(eta))
    n_xi = float(np.linalg.norm(xi))
    if n_eta == 0.0 or n_xi == 0.0:
        raise InputError("both vectors must be nonzero")
    n = eta.shape[0]

    inner = abs(complex(np.vdot(xi, eta)))
    vectors_parallel = cfg.close(inner, n_eta * n_xi)

    rng = np.random.default_rng(cfg.seed)
    zeta = rng.normal(size=n) + 1j * rng.normal(size=n)
    zeta /= np.linalg.norm(zeta)
    e1 = np.zeros(n, dtype=complex)
    e1[0] = 1.0
    draws = [
        is_parallel(rank_one(zeta, eta), rank_one(zeta, xi), cfg),
        is_parallel(rank_one(e1, eta), rank_one(e1, xi), cfg),
    ]
    pair_agree = draws[0].parallel == draws[1].parallel
    rank_one_pair_parallel = draws[0].parallel

    identity_verdict = is_parallel(rank_one(eta, xi), np.eye(n), cfg)
    eigen_report = eigen_criterion(rank_one(eta, xi), cfg)

    borderline = (
        not pair_agree
        or any(d.borderline for d in draws)
        or identity_verdict.borderline
        or bool(eigen_report.borderline)
        or cfg.equality_borderline(inner, n_eta * n_xi)
    )
    return RankOneEquivalences(
        vectors_parallel=vectors_parallel,
        rank_one_pair_parallel=rank_one_pair_parallel,
        rank_one_identity_parallel=identity_verdict.parallel,
        eigenvalue_attains=bool(eigen_report.decision),
        borderline=borderline,
    )


@dataclass(frozen=True)
class BlockParallelResult:
    decision: bool
    borderline: bool
    witness_blocks: list[np.ndarray] | None
    norm_condition: float | None
    range_condition: float | None


def block_parallel(
    ts: list, ss: list, cfg: ToleranceConfig = DEFAULT_CONFIG
) -> BlockParallelResult:
    """Parallelism of diag(T_1..T_k) against diag(S_1..S_k) for positive
    blocks T_i, with the witness vector split back into blocks.

    When parallel, the witness satisfies both attainment conditions:
    the stacked norms (sum ||T_i xi_i||^2)^(1/2) reach max ||T_i|| and
    |sum <S_i xi_i, xi_i>| reaches max ||S_i||; the achieved values are
    returned for inspection.
    """
    if len(ts) != len(ss) or not ts:
        raise InputError("need equally many (and at least one) T and S blocks")
    t_blocks = [as_square(t, f"T[{i}]") for i, t in enumerate(ts)]
    s_blocks = [as_square(s, f"S[{i}]") for i, s in enumerate(ss)]
    for i, (tb, sb) in enumerate(zip(t_blocks, s_blocks)):
        if tb.shape != sb.shape:
            raise InputError(f"block {i} size mismatch: {tb.shape} vs {sb.shape}")
        if not is_psd(tb, cfg) or operator_norm(tb) == 0.0:
            raise NotApplicableError(f"T block {i} must be a nonzero positive matrix")
    sizes = [b.shape[0] for b in t_blocks]
    total = sum(sizes)
    dt = np.zeros((total, total), dtype=complex)
    ds = np.zeros((total, total), dtype=complex)
    offset = 0
    for tb, sb, size in zip(t_blocks, s_blocks, sizes):
        dt[offset : offset + size, offset : offset + size] = tb
        ds[offset : offset + size, offset : offset + size] = sb
        offset += size
    verdict = is_parallel(dt, ds, cfg)
    if not verdict.parallel or verdict.witness_vector is None:
        return BlockParallelResult(
            decision=verdict.parallel,
            borderline=verdict.borderline,
            witness_blocks=None,
            norm_condition=None,
            range_condition=None,
        )
    pieces: list[np.ndarray] = []
    offset = 0
    for size in sizes:
        pieces.append(verdict.witness_vector[offset : offset + size])
        offset += size
    stacked = np.sqrt(
        sum(float(np.linalg.norm(tb @ piece)) ** 2 for tb, piece in zip(t_blocks, pieces))
    )
    form = abs(
        complex(sum(np.vdot(piece, sb @ piece) for sb, piece in zip(s_blocks, pieces)))
    )
    max_t = max(operator_norm(tb) for tb in t_blocks)
    max_s = max(operator_norm(sb) for sb in s_blocks)
    borderline = verdict.borderline
    if not cfg.close(stacked, max_t) or not cfg.close(form, max_s):
        borderline = True
    return BlockParallelResult(
        decision=True,
        borderline=borderline,
        witness_blocks=pieces,
        norm_condition=float(stacked),
        range_condition=float(form),
    )
