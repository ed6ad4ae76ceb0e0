"""Random matrix ensembles and theorem-equivalence suites.

Every characterisation in the package is falsification-tested here: a suite
draws structured random inputs, evaluates a criterion and the brute-force
defect oracle on the same inputs, and tallies agreement.  Borderline trials
(where either side sits inside the tolerance flip band) are skipped and
counted, never judged, because every characterisation is an equality case
and therefore knife-edged under floating point.

Positive (parallel) inputs have measure zero among generic draws, so each
suite deterministically mixes in manufactured positives.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import matio
from .config import DEFAULT_CONFIG, ToleranceConfig
from .errors import InputError
from .linalg import max_modulus_numerical_range, operator_norm, schatten_norm
from .module_ops import block_parallel, rank_one_equivalences, theta_spectral_radius_check, theta_transfer_check
from .orthogonality import bj_bridge_check, parallel_consequence_check
from .parallel import (
    commutative_criterion,
    defect_oracle,
    eigen_criterion,
    gram_criterion,
    is_parallel,
    normal_criterion,
    positive_criterion,
    singularity_criterion,
    spectral_criterion,
)
from .schatten import schatten_defect_oracle, schatten_trace_criterion

ENSEMBLE_KINDS = (
    "generic",
    "hermitian",
    "positive",
    "unitary",
    "normal",
    "diagonal",
    "isometry-pair",
    "parallel-pair",
    "rank-one-pair",
)

_KIND_IDS = {kind: i for i, kind in enumerate(ENSEMBLE_KINDS)}


@dataclass(frozen=True)
class Ensemble:
    """A reproducible stream of structured random matrices."""

    kind: str
    dim: int
    seed: int

    def __post_init__(self) -> None:
        if self.kind not in ENSEMBLE_KINDS:
            raise InputError(f"unknown ensemble kind {self.kind!r}")
        if self.dim < 1:
            raise InputError("ensemble dim must be at least 1")


def _trial_rng(ensemble: Ensemble, index: int) -> np.random.Generator:
    return np.random.default_rng(
        [ensemble.seed & 0xFFFFFFFFFFFFFFFF, _KIND_IDS[ensemble.kind], ensemble.dim, index]
    )


def _generic(rng: np.random.Generator, n: int, m: int | None = None) -> np.ndarray:
    m = n if m is None else m
    return (rng.normal(size=(n, m)) + 1j * rng.normal(size=(n, m))) / np.sqrt(2.0)


def _hermitian(rng: np.random.Generator, n: int) -> np.ndarray:
    g = _generic(rng, n)
    return (g + g.conj().T) / 2.0


def _positive(rng: np.random.Generator, n: int) -> np.ndarray:
    g = _generic(rng, n)
    return (g.conj().T @ g) / n


def _unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    q, r = np.linalg.qr(_generic(rng, n))
    d = np.diag(r)
    return q * (d / np.abs(d))[None, :]


def _normal(rng: np.random.Generator, n: int) -> np.ndarray:
    u = _unitary(rng, n)
    eigs = rng.normal(size=n) + 1j * rng.normal(size=n)
    return u @ (eigs[:, None] * u.conj().T)


def _diagonal(rng: np.random.Generator, n: int) -> np.ndarray:
    return np.diag(rng.normal(size=n) + 1j * rng.normal(size=n))


def _descending_positive(rng: np.random.Generator, n: int) -> np.ndarray:
    d = np.sort(np.abs(rng.normal(size=n)) + 0.1)[::-1]
    d[0] += 0.5 * (d[0] + 1.0)  # strict, well-separated top entry
    return d


def _parallel_pair(rng: np.random.Generator, n: int) -> tuple[np.ndarray, np.ndarray]:
    """A manufactured parallel pair sharing the maximising vector.

    Both factors carry descending positive diagonals with a strict shared
    top slot, so T + exp(-i alpha) S attains the norm sum on the first
    column of the shared right factor.
    """
    u = _unitary(rng, n)
    w = _unitary(rng, n)
    d1 = _descending_positive(rng, n)
    d2 = _descending_positive(rng, n)
    alpha = rng.uniform(0.0, 2.0 * np.pi)
    t = u @ (d1[:, None] * w.conj().T)
    s = np.exp(1j * alpha) * (u @ (d2[:, None] * w.conj().T))
    return t, s


def _vector(rng: np.random.Generator, n: int) -> np.ndarray:
    return rng.normal(size=n) + 1j * rng.normal(size=n)


def _rank_one_pair(
    rng: np.random.Generator, n: int, index: int
) -> tuple[np.ndarray, np.ndarray]:
    eta = _vector(rng, n)
    if index % 2 == 0:
        scale = complex(rng.normal(), rng.normal())
        while abs(scale) < 1e-3:
            scale = complex(rng.normal(), rng.normal())
        return eta, scale * eta
    return eta, _vector(rng, n)


def sample(ensemble: Ensemble, index: int = 0):
    """Draw the index-th element of the ensemble (deterministic in seed)."""
    rng = _trial_rng(ensemble, index)
    n = ensemble.dim
    kind = ensemble.kind
    if kind == "generic":
        return _generic(rng, n)
    if kind == "hermitian":
        return _hermitian(rng, n)
    if kind == "positive":
        return _positive(rng, n)
    if kind == "unitary":
        return _unitary(rng, n)
    if kind == "normal":
        return _normal(rng, n)
    if kind == "diagonal":
        return _diagonal(rng, n)
    if kind == "isometry-pair":
        return _generic(rng, n), _unitary(rng, n)
    if kind == "parallel-pair":
        return _parallel_pair(rng, n)
    if kind == "rank-one-pair":
        return _rank_one_pair(rng, n, index)
    raise InputError(f"unknown ensemble kind {kind!r}")


# ---------------------------------------------------------------------------
# suites


@dataclass(frozen=True)
class SuiteReport:
    theorem_id: str
    trials: int
    agreements: int
    borderline_skipped: int
    counterexamples: list[dict] = field(default_factory=list)


@dataclass(frozen=True)
class TrialOutcome:
    agree: bool
    borderline: bool
    inputs: dict = field(default_factory=dict)


@dataclass(frozen=True)
class SuiteSpec:
    evaluate: Callable[[Ensemble, int, ToleranceConfig], TrialOutcome]
    default_kind: str
    max_dim: int = 64


def _serialize_inputs(**named) -> dict:
    docs = {}
    for name, value in named.items():
        if isinstance(value, np.ndarray):
            if value.ndim == 1:
                value = value.reshape(1, -1)
            docs[name] = matio.matrix_to_doc(value)
        else:
            docs[name] = value
    return docs


def _oracle_side(t, s, cfg: ToleranceConfig) -> tuple[bool, bool]:
    defect, _ = defect_oracle(t, s, cfg)
    nt, ns = operator_norm(t), operator_norm(s)
    gap = abs(defect)
    return cfg.below(gap, nt, ns), cfg.below_borderline(gap, nt, ns)


def _mixed_pair(ensemble: Ensemble, index: int, every: int = 3):
    """Generic-style pair with a manufactured parallel pair every few trials."""
    rng = _trial_rng(ensemble, index)
    n = ensemble.dim
    if index % every == 0:
        return _parallel_pair(rng, n)
    if ensemble.kind == "parallel-pair":
        return _parallel_pair(rng, n)
    return _generic(rng, n), _generic(rng, n)


def _trial_state_existence(ensemble: Ensemble, index: int, cfg: ToleranceConfig) -> TrialOutcome:
    x, y = _mixed_pair(ensemble, index)
    product = operator_norm(x) * operator_norm(y)
    radius, _ = max_modulus_numerical_range(x.conj().T @ y, cfg)
    state_side = cfg.close(radius, product)
    oracle, border = _oracle_side(x, y, cfg)
    borderline = border or cfg.equality_borderline(radius, product)
    return TrialOutcome(
        agree=state_side == oracle,
        borderline=borderline,
        inputs=_serialize_inputs(x=x, y=y),
    )


def _trial_gram_pair(ensemble: Ensemble, index: int, cfg: ToleranceConfig) -> TrialOutcome:
    x, y = _mixed_pair(ensemble, index)
    inner = x.conj().T @ y
    gram = x.conj().T @ x
    pair_parallel, pair_border = _oracle_side(gram, inner, cfg)
    n_inner = operator_norm(inner)
    product = operator_norm(x) * operator_norm(y)
    norms_match = cfg.close(n_inner, product)
    side_a = pair_parallel and norms_match
    oracle, border = _oracle_side(x, y, cfg)
    borderline = border or pair_border or cfg.equality_borderline(n_inner, product)
    return TrialOutcome(
        agree=side_a == oracle,
        borderline=borderline,
        inputs=_serialize_inputs(x=x, y=y),
    )


def _trial_spectral(ensemble: Ensemble, index: int, cfg: ToleranceConfig) -> TrialOutcome:
    x, y = _mixed_pair(ensemble, index)
    report = spectral_criterion(x, y, cfg)
    oracle, border = _oracle_side(x, y, cfg)
    return TrialOutcome(
        agree=report.decision == oracle,
        borderline=border or report.borderline,
        inputs=_serialize_inputs(x=x, y=y),
    )


def _trial_density_state(ensemble: Ensemble, index: int, cfg: ToleranceConfig) -> TrialOutcome:
    x, y = _mixed_pair(ensemble, index)
    verdict = is_parallel(x, y, cfg)
    if verdict.borderline:
        return TrialOutcome(agree=True, borderline=True, inputs=_serialize_inputs(x=x, y=y))
    product = operator_norm(x) * operator_norm(y)
    if verdict.parallel:
        state = verdict.witness_state
        attained = abs(complex(np.trace(state.matrix @ (x.conj().T @ y))))
        agree = cfg.close(attained, product)
        borderline = cfg.equality_borderline(attained, product)
    else:
        radius, _ = max_modulus_numerical_range(x.conj().T @ y, cfg)
        agree = not cfg.close(radius, product)
        borderline = cfg.equality_borderline(radius, product)
    return TrialOutcome(agree=agree, borderline=borderline, inputs=_serialize_inputs(x=x, y=y))


def _trial_bridge(ensemble: Ensemble, index: int, cfg: ToleranceConfig) -> TrialOutcome:
    t, s = _mixed_pair(ensemble, index)
    verdict = is_parallel(t, s, cfg)
    bridge = bj_bridge_check(t, s, cfg)
    return TrialOutcome(
        agree=bridge.bridge_holds == verdict.parallel,
        borderline=verdict.borderline or bridge.borderline,
        inputs=_serialize_inputs(T=t, S=s),
    )


def _trial_consequence(ensemble: Ensemble, index: int, cfg: ToleranceConfig) -> TrialOutcome:
    rng = _trial_rng(ensemble, index)
    x, y = _parallel_pair(rng, ensemble.dim)
    verdict = is_parallel(x, y, cfg)
    if not verdict.parallel or verdict.borderline:
        return TrialOutcome(agree=True, borderline=True, inputs=_serialize_inputs(x=x, y=y))
    holds = parallel_consequence_check(x, y, cfg)
    return TrialOutcome(agree=holds, borderline=False, inputs=_serialize_inputs(x=x, y=y))


def _aligned_diagonal_pair(rng: np.random.Generator, n: int) -> tuple[np.ndarray, np.ndarray]:
    a = _descending_positive(rng, n) * np.exp(1j * rng.uniform(0, 2 * np.pi, size=n))
    b = _descending_positive(rng, n) * np.exp(1j * rng.uniform(0, 2 * np.pi, size=n))
    return np.diag(a), np.diag(b)


def _trial_normal(ensemble: Ensemble, index: int, cfg: ToleranceConfig) -> TrialOutcome:
    rng = _trial_rng(ensemble, index)
    n = ensemble.dim
    if index % 4 == 0:
        x, y = _aligned_diagonal_pair(rng, n)
    else:
        x, y = _diagonal(rng, n), _diagonal(rng, n)
    report = normal_criterion(x, y, cfg)
    if not report.applicable:
        return TrialOutcome(agree=True, borderline=True, inputs=_serialize_inputs(x=x, y=y))
    oracle, border = _oracle_side(x, y, cfg)
    return TrialOutcome(
        agree=report.decision == oracle,
        borderline=border or report.borderline,
        inputs=_serialize_inputs(x=x, y=y),
    )


def _trial_theta(ensemble: Ensemble, index: int, cfg: ToleranceConfig) -> TrialOutcome:
    rng = _trial_rng(ensemble, index)
    n = ensemble.dim
    if index % 3 == 0:
        u = _unitary(rng, n)
        c = complex(rng.normal(), rng.normal()) + 0.5
        d = complex(rng.normal(), rng.normal()) + 0.5
        x, y = c * u, d * u
    else:
        x = _generic(rng, n) + 0.4 * np.eye(n)
        scale = complex(rng.normal(), rng.normal())
        while abs(scale) < 1e-2:
            scale = complex(rng.normal(), rng.normal())
        y = scale * np.linalg.inv(x.conj().T)
    z = _generic(rng, n) + 0.4 * np.eye(n)
    radius = theta_spectral_radius_check(x, y, cfg)
    if not radius.applicable:
        return TrialOutcome(agree=False, borderline=False, inputs=_serialize_inputs(x=x, y=y, z=z))
    radius_ok = cfg.close(radius.r_theta, radius.scalar_mod)
    transfer = theta_transfer_check(x, y, z, cfg)
    if not transfer.applicable:
        return TrialOutcome(agree=False, borderline=False, inputs=_serialize_inputs(x=x, y=y, z=z))
    agree = radius_ok and (transfer.lhs == transfer.rhs)
    borderline = transfer.borderline or cfg.equality_borderline(radius.r_theta, radius.scalar_mod)
    return TrialOutcome(agree=agree, borderline=borderline, inputs=_serialize_inputs(x=x, y=y, z=z))


def _trial_singularity(ensemble: Ensemble, index: int, cfg: ToleranceConfig) -> TrialOutcome:
    rng = _trial_rng(ensemble, index)
    n = ensemble.dim
    y = _unitary(rng, n)
    if index % 4 == 0:
        x = _hermitian(rng, n) @ y
    else:
        x = _generic(rng, n)
    report = singularity_criterion(x, y, cfg)
    if not report.applicable:
        return TrialOutcome(agree=True, borderline=True, inputs=_serialize_inputs(x=x, y=y))
    oracle, border = _oracle_side(x, y, cfg)
    return TrialOutcome(
        agree=report.decision == oracle,
        borderline=border or report.borderline,
        inputs=_serialize_inputs(x=x, y=y),
    )


def _trial_commutative(ensemble: Ensemble, index: int, cfg: ToleranceConfig) -> TrialOutcome:
    rng = _trial_rng(ensemble, index)
    n = ensemble.dim
    a = _diagonal(rng, n)
    b = np.diag(np.exp(1j * rng.uniform(0, 2 * np.pi, size=n)))
    report = commutative_criterion(a, b, cfg)
    if not report.applicable:
        return TrialOutcome(agree=True, borderline=True, inputs=_serialize_inputs(a=a, b=b))
    oracle, border = _oracle_side(a, b, cfg)
    return TrialOutcome(
        agree=report.decision == oracle,
        borderline=border or report.borderline,
        inputs=_serialize_inputs(a=a, b=b),
    )


def _trial_unit_vector_witness(ensemble: Ensemble, index: int, cfg: ToleranceConfig) -> TrialOutcome:
    t, s = _mixed_pair(ensemble, index)
    radius, _ = max_modulus_numerical_range(t.conj().T @ s, cfg)
    product = operator_norm(t) * operator_norm(s)
    witness_side = cfg.close(radius, product)
    oracle, border = _oracle_side(t, s, cfg)
    return TrialOutcome(
        agree=witness_side == oracle,
        borderline=border or cfg.equality_borderline(radius, product),
        inputs=_serialize_inputs(T=t, S=s),
    )


def _attaining_pair(rng: np.random.Generator, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Positive T with a simple top eigenvector on which S attains its norm."""
    t = _positive(rng, n)
    w, v = np.linalg.eigh(t)
    xi = v[:, -1]
    t = t + 0.5 * operator_norm(t) * np.outer(xi, xi.conj())
    c = 1.0 + float(np.abs(rng.normal()))
    proj = np.eye(n) - np.outer(xi, xi.conj())
    rest = proj @ _generic(rng, n) @ proj
    rest_norm = operator_norm(rest)
    if rest_norm > 0:
        rest *= 0.5 * c / rest_norm
    s = c * np.outer(xi, xi.conj()) + rest
    return t, s


def _trial_positive(ensemble: Ensemble, index: int, cfg: ToleranceConfig) -> TrialOutcome:
    rng = _trial_rng(ensemble, index)
    n = ensemble.dim
    if index % 3 == 0:
        t, s = _attaining_pair(rng, n)
    else:
        t, s = _positive(rng, n), _generic(rng, n)
    report = positive_criterion(t, s, cfg)
    if not report.applicable:
        return TrialOutcome(agree=True, borderline=True, inputs=_serialize_inputs(T=t, S=s))
    oracle, border = _oracle_side(t, s, cfg)
    return TrialOutcome(
        agree=report.decision == oracle,
        borderline=border or report.borderline,
        inputs=_serialize_inputs(T=t, S=s),
    )


def _trial_gram(ensemble: Ensemble, index: int, cfg: ToleranceConfig) -> TrialOutcome:
    t, s = _mixed_pair(ensemble, index)
    report = gram_criterion(t, s, cfg)
    oracle, border = _oracle_side(t, s, cfg)
    return TrialOutcome(
        agree=report.decision == oracle,
        borderline=border or report.borderline,
        inputs=_serialize_inputs(T=t, S=s),
    )


def _trial_block(ensemble: Ensemble, index: int, cfg: ToleranceConfig) -> TrialOutcome:
    rng = _trial_rng(ensemble, index)
    n = max(1, ensemble.dim)
    if index % 3 == 0:
        t1, s1 = _attaining_pair(rng, n)
        t2 = _positive(rng, n)
        s2 = _generic(rng, n)
        scale_t = 0.5 * operator_norm(t1) / max(operator_norm(t2), 1e-9)
        scale_s = 0.5 * operator_norm(s1) / max(operator_norm(s2), 1e-9)
        ts = [t1, scale_t * t2]
        ss = [s1, scale_s * s2]
    else:
        ts = [_positive(rng, n), _positive(rng, n)]
        ss = [_generic(rng, n), _generic(rng, n)]
    total = 2 * n
    dt = np.zeros((total, total), dtype=complex)
    ds = np.zeros((total, total), dtype=complex)
    for i, (tb, sb) in enumerate(zip(ts, ss)):
        dt[i * n : (i + 1) * n, i * n : (i + 1) * n] = tb
        ds[i * n : (i + 1) * n, i * n : (i + 1) * n] = sb
    report = positive_criterion(dt, ds, cfg)
    result = block_parallel(ts, ss, cfg)
    if not report.applicable:
        return TrialOutcome(agree=True, borderline=True, inputs=_serialize_inputs(T=dt, S=ds))
    return TrialOutcome(
        agree=report.decision == result.decision,
        borderline=report.borderline or result.borderline,
        inputs=_serialize_inputs(T=dt, S=ds),
    )


_SCHATTEN_PS = (1.5, 2.0, 3.0)


def _trial_schatten(ensemble: Ensemble, index: int, cfg: ToleranceConfig) -> TrialOutcome:
    rng = _trial_rng(ensemble, index)
    n = ensemble.dim
    p = _SCHATTEN_PS[index % len(_SCHATTEN_PS)]
    if index % 4 == 0:
        t = _generic(rng, n) + 0.4 * np.eye(n)
        scale = complex(rng.normal(), rng.normal()) + 0.5
        s = scale * t
    else:
        t = _generic(rng, n) + 0.4 * np.eye(n)
        s = _generic(rng, n) + 0.4 * np.eye(n)
    report = schatten_trace_criterion(t, s, p, cfg)
    if not report.applicable:
        return TrialOutcome(agree=True, borderline=True, inputs=_serialize_inputs(T=t, S=s, p=p))
    defect, _ = schatten_defect_oracle(t, s, p, cfg)
    nt, ns = schatten_norm(t, p), schatten_norm(s, p)
    gap = abs(defect)
    oracle = cfg.below(gap, nt, ns)
    border = cfg.below_borderline(gap, nt, ns)
    return TrialOutcome(
        agree=report.decision == oracle,
        borderline=border or report.borderline,
        inputs=_serialize_inputs(T=t, S=s, p=p),
    )


def _trial_eigen(ensemble: Ensemble, index: int, cfg: ToleranceConfig) -> TrialOutcome:
    rng = _trial_rng(ensemble, index)
    n = ensemble.dim
    t = _normal(rng, n) if index % 2 == 0 else _generic(rng, n)
    report = eigen_criterion(t, cfg)
    oracle, border = _oracle_side(t, np.eye(n), cfg)
    return TrialOutcome(
        agree=report.decision == oracle,
        borderline=border or report.borderline,
        inputs=_serialize_inputs(T=t),
    )


def _trial_rank_one(ensemble: Ensemble, index: int, cfg: ToleranceConfig) -> TrialOutcome:
    rng = _trial_rng(ensemble, index)
    eta, xi = _rank_one_pair(rng, ensemble.dim, index)
    result = rank_one_equivalences(eta, xi, cfg)
    return TrialOutcome(
        agree=result.all_agree(),
        borderline=result.borderline,
        inputs=_serialize_inputs(eta=eta, xi=xi),
    )


REGISTRY: dict[str, SuiteSpec] = {
    "lemma-2.1-ii": SuiteSpec(_trial_state_existence, "generic"),
    "lemma-2.1-iii": SuiteSpec(_trial_gram_pair, "generic"),
    "lemma-2.1-iv": SuiteSpec(_trial_spectral, "generic"),
    "prop-2.2": SuiteSpec(_trial_density_state, "generic"),
    "thm-2.4-bridge": SuiteSpec(_trial_bridge, "generic"),
    "cor-2.5-consequence": SuiteSpec(_trial_consequence, "parallel-pair"),
    "thm-2.7-normal": SuiteSpec(_trial_normal, "diagonal"),
    "prop-2.9-theta": SuiteSpec(_trial_theta, "generic", max_dim=4),
    "thm-2.11-singularity": SuiteSpec(_trial_singularity, "isometry-pair"),
    "cor-2.12-commutative": SuiteSpec(_trial_commutative, "diagonal"),
    "thm-2.16-witness": SuiteSpec(_trial_unit_vector_witness, "generic"),
    "cor-2.13-positive": SuiteSpec(_trial_positive, "positive"),
    "cor-2.14-gram": SuiteSpec(_trial_gram, "generic"),
    "cor-2.15-block": SuiteSpec(_trial_block, "positive"),
    "prop-2.20-schatten": SuiteSpec(_trial_schatten, "generic"),
    "thm-2.22-eigen": SuiteSpec(_trial_eigen, "generic"),
    "cor-2.24-rank-one": SuiteSpec(_trial_rank_one, "rank-one-pair"),
}


def registered_theorems() -> list[str]:
    return list(REGISTRY)


def run_suite(
    theorem_id: str,
    ensemble: Ensemble,
    trials: int,
    cfg: ToleranceConfig = DEFAULT_CONFIG,
) -> SuiteReport:
    """Run one equivalence suite and tally agreement against the oracle."""
    if theorem_id not in REGISTRY:
        raise InputError(f"unknown theorem id {theorem_id!r}")
    spec = REGISTRY[theorem_id]
    if ensemble.dim > spec.max_dim:
        raise InputError(
            f"{theorem_id} is capped at dim {spec.max_dim} (lifted sizes grow quadratically)"
        )
    agreements = 0
    skipped = 0
    counterexamples: list[dict] = []
    for index in range(trials):
        outcome = spec.evaluate(ensemble, index, cfg)
        if outcome.borderline:
            skipped += 1
        elif outcome.agree:
            agreements += 1
        else:
            counterexamples.append(
                {"theorem_id": theorem_id, "trial": index, "dim": ensemble.dim, "inputs": outcome.inputs}
            )
    return SuiteReport(
        theorem_id=theorem_id,
        trials=trials,
        agreements=agreements,
        borderline_skipped=skipped,
        counterexamples=counterexamples,
    )
