"""Elementary-operator lifts, rank-one maps, and block parallelism."""

import numpy as np
import pytest

from normpar import module_ops as mo
from normpar.errors import InputError, NotApplicableError
from normpar.linalg import operator_norm, spectral_radius
from normpar.parallel import defect_oracle, is_parallel
from conftest import random_complex


def haar_unitary(rng, n):
    q, r = np.linalg.qr(random_complex(rng, n))
    return q * (np.diag(r) / np.abs(np.diag(r)))[None, :]


class TestLift:
    def test_identity_pair(self):
        eo = mo.lift_theta(np.eye(2), np.eye(2))
        assert np.allclose(eo.lifted, np.eye(4))

    def test_matrix_unit_pair(self):
        e11 = np.zeros((2, 2), dtype=complex)
        e11[0, 0] = 1.0
        eo = mo.lift_theta(e11, e11)
        assert np.allclose(eo.lifted, np.kron(np.eye(2), e11))
        assert operator_norm(eo.lifted) == pytest.approx(1.0)

    def test_lift_preserves_symbol_norm(self):
        # the lift of left multiplication carries exactly the norm of its
        # symbol x y^H (and never exceeds the norm product)
        rng = np.random.default_rng(91)
        for n in (2, 3, 4):
            x = random_complex(rng, n)
            y = random_complex(rng, n)
            lifted = mo.lift_theta(x, y).lifted
            assert operator_norm(lifted) == pytest.approx(
                operator_norm(x @ y.conj().T), rel=1e-10
            )
            assert operator_norm(lifted) <= operator_norm(x) * operator_norm(y) + 1e-10

    def test_adjoint_identity(self):
        rng = np.random.default_rng(92)
        x = random_complex(rng, 3)
        y = random_complex(rng, 3)
        assert np.allclose(
            mo.lift_theta(x, y).lifted.conj().T,
            mo.lift_theta(y, x).lifted,
            atol=1e-12,
        )

    def test_composition_identity(self):
        rng = np.random.default_rng(93)
        x, y, z, w = (random_complex(rng, 3) for _ in range(4))
        left = mo.lift_theta(x, y).lifted @ mo.lift_theta(z, w).lifted
        right = mo.lift_theta(x @ (y.conj().T @ z), w).lifted
        assert np.allclose(left, right, atol=1e-10)

    def test_size_mismatch(self):
        with pytest.raises(InputError):
            mo.lift_theta(np.eye(2), np.eye(3))


class TestThetaRadius:
    def test_scaled_identities(self, cfg):
        check = mo.theta_spectral_radius_check(np.eye(2), 2.0 * np.eye(2), cfg)
        assert check.applicable
        assert check.r_theta == pytest.approx(2.0, rel=1e-10)
        assert check.scalar_mod == pytest.approx(2.0)

    def test_unitary_self_pair(self, cfg):
        rng = np.random.default_rng(94)
        u = haar_unitary(rng, 3)
        check = mo.theta_spectral_radius_check(u, u, cfg)
        assert check.applicable
        assert check.r_theta == pytest.approx(1.0, rel=1e-9)
        assert check.scalar_mod == pytest.approx(1.0, rel=1e-12)

    def test_phase_related_unitaries(self, cfg):
        rng = np.random.default_rng(95)
        u = haar_unitary(rng, 2)
        v = np.exp(0.7j) * u
        check = mo.theta_spectral_radius_check(u, v, cfg)
        assert check.applicable
        assert check.r_theta == pytest.approx(check.scalar_mod, rel=1e-9)

    def test_not_applicable_generic(self, cfg):
        rng = np.random.default_rng(96)
        check = mo.theta_spectral_radius_check(
            random_complex(rng, 2), random_complex(rng, 2), cfg
        )
        assert not check.applicable


class TestThetaTransfer:
    def test_identity_triple(self, cfg):
        check = mo.theta_transfer_check(np.eye(2), np.eye(2), np.eye(2), cfg)
        assert check.applicable
        assert check.lhs is True and check.rhs is True

    def test_phase_multiple_is_parallel_both_sides(self, cfg):
        rng = np.random.default_rng(97)
        u = haar_unitary(rng, 2)
        y = np.exp(1.3j) * u
        z = random_complex(rng, 2) + 0.5 * np.eye(2)
        check = mo.theta_transfer_check(u, y, z, cfg)
        assert check.applicable
        assert check.lhs is True and check.rhs is True

    def test_generic_scalar_inner_product_agrees(self, cfg):
        rng = np.random.default_rng(98)
        for _ in range(6):
            x = random_complex(rng, 2) + 0.4 * np.eye(2)
            s = complex(rng.normal(), rng.normal())
            y = s * np.linalg.inv(x.conj().T)
            z = random_complex(rng, 2) + 0.4 * np.eye(2)
            check = mo.theta_transfer_check(x, y, z, cfg)
            assert check.applicable
            if not check.borderline:
                assert check.lhs == check.rhs

    def test_singular_carrier_not_applicable(self, cfg):
        z = np.diag([1.0, 0.0]).astype(complex)
        check = mo.theta_transfer_check(np.eye(2), np.eye(2), z, cfg)
        assert not check.applicable


class TestRankOne:
    def test_basis_pair(self):
        e1 = np.array([1.0, 0.0], dtype=complex)
        m = mo.rank_one(e1, e1)
        assert np.allclose(m, np.diag([1.0, 0.0]))

    def test_action_is_first_slot_linear(self):
        rng = np.random.default_rng(99)
        zeta = rng.normal(size=3) + 1j * rng.normal(size=3)
        eta = rng.normal(size=3) + 1j * rng.normal(size=3)
        xi = rng.normal(size=3) + 1j * rng.normal(size=3)
        m = mo.rank_one(zeta, eta)
        # the map sends xi to [xi, eta] zeta with [u, v] = v^H u
        assert np.allclose(m @ xi, complex(np.vdot(eta, xi)) * zeta)

    def test_norm_identity(self):
        rng = np.random.default_rng(100)
        zeta = rng.normal(size=4) + 1j * rng.normal(size=4)
        eta = rng.normal(size=4) + 1j * rng.normal(size=4)
        assert operator_norm(mo.rank_one(zeta, eta)) == pytest.approx(
            np.linalg.norm(zeta) * np.linalg.norm(eta), rel=1e-10
        )

    def test_spectral_radius_identity(self):
        rng = np.random.default_rng(101)
        zeta = rng.normal(size=4) + 1j * rng.normal(size=4)
        eta = rng.normal(size=4) + 1j * rng.normal(size=4)
        assert spectral_radius(mo.rank_one(zeta, eta)) == pytest.approx(
            abs(complex(np.vdot(eta, zeta))), rel=1e-10
        )

    def test_length_mismatch(self):
        with pytest.raises(InputError):
            mo.rank_one(np.ones(2), np.ones(3))


class TestRankOneEquivalences:
    def test_equal_vectors_all_true(self, cfg):
        rng = np.random.default_rng(102)
        eta = rng.normal(size=3) + 1j * rng.normal(size=3)
        result = mo.rank_one_equivalences(eta, eta, cfg)
        assert result.all_agree()
        assert result.vectors_parallel

    def test_orthogonal_basis_vectors_all_false(self, cfg):
        e1 = np.array([1.0, 0.0], dtype=complex)
        e2 = np.array([0.0, 1.0], dtype=complex)
        result = mo.rank_one_equivalences(e1, e2, cfg)
        assert result.all_agree()
        assert not result.vectors_parallel

    def test_complex_multiple_all_true(self, cfg):
        rng = np.random.default_rng(103)
        eta = rng.normal(size=4) + 1j * rng.normal(size=4)
        result = mo.rank_one_equivalences(eta, (2.0 + 1.0j) * eta, cfg)
        assert result.all_agree()
        assert result.vectors_parallel

    def test_rejects_zero_vector(self, cfg):
        with pytest.raises(InputError):
            mo.rank_one_equivalences(np.zeros(2), np.ones(2), cfg)


class TestBlockParallel:
    def test_single_block_reduces_to_is_parallel(self, cfg):
        rng = np.random.default_rng(104)
        g = random_complex(rng, 2)
        t = g.conj().T @ g
        s = random_complex(rng, 2)
        result = mo.block_parallel([t], [s], cfg)
        verdict = is_parallel(t, s, cfg)
        assert result.decision == verdict.parallel

    def test_dominating_first_block(self, cfg):
        t1 = np.eye(2, dtype=complex)
        t2 = 0.5 * np.eye(2, dtype=complex)
        s1 = np.diag([1.0, 0.0]).astype(complex)
        s2 = np.zeros((2, 2), dtype=complex)
        result = mo.block_parallel([t1, t2], [s1, s2], cfg)
        assert result.decision
        assert not result.borderline
        assert result.norm_condition == pytest.approx(1.0, rel=1e-8)
        assert result.range_condition == pytest.approx(1.0, rel=1e-8)
        # confirmed by the oracle on the assembled matrices
        dt = np.diag([1.0, 1.0, 0.5, 0.5]).astype(complex)
        ds = np.diag([1.0, 0.0, 0.0, 0.0]).astype(complex)
        defect, _ = defect_oracle(dt, ds, cfg)
        assert abs(defect) < 1e-10

    def test_random_positive_blocks_agree_with_oracle(self, cfg):
        rng = np.random.default_rng(105)
        for _ in range(6):
            g1, g2 = random_complex(rng, 2), random_complex(rng, 2)
            ts = [g1.conj().T @ g1, g2.conj().T @ g2]
            ss = [random_complex(rng, 2), random_complex(rng, 2)]
            result = mo.block_parallel(ts, ss, cfg)
            dt = np.zeros((4, 4), dtype=complex)
            ds = np.zeros((4, 4), dtype=complex)
            dt[:2, :2], dt[2:, 2:] = ts
            ds[:2, :2], ds[2:, 2:] = ss
            defect, _ = defect_oracle(dt, ds, cfg)
            oracle = abs(defect) <= cfg.tol(operator_norm(dt), operator_norm(ds))
            if not result.borderline:
                assert result.decision == oracle

    def test_rejects_non_positive_blocks(self, cfg):
        c = np.diag([1.0, -1.0]).astype(complex)
        with pytest.raises(NotApplicableError):
            mo.block_parallel([c], [np.eye(2)], cfg)

    def test_rejects_length_mismatch(self, cfg):
        with pytest.raises(InputError):
            mo.block_parallel([np.eye(2)], [np.eye(2), np.eye(2)], cfg)
