"""Norms, spectral data, polar decomposition and numerical range."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from normpar import linalg
from normpar.config import ToleranceConfig
from normpar.errors import InputError
from conftest import random_complex
from oracles import numerical_range_sample_max, power_iteration_norm, schatten_eigen_oracle

A = np.array([[1, 1], [0, 0]], dtype=complex)
B = np.array([[2, 5], [5, 0]], dtype=complex)
C = np.diag([1.0, -1.0]).astype(complex)


class TestOperatorNorm:
    def test_upper_triangular_example(self):
        assert linalg.operator_norm(A) == pytest.approx(math.sqrt(2), rel=1e-12)

    def test_identity(self):
        for n in (1, 2, 5):
            assert linalg.operator_norm(np.eye(n)) == pytest.approx(1.0, rel=1e-14)

    def test_matches_power_iteration(self):
        rng = np.random.default_rng(31)
        m = random_complex(rng, 4)
        assert linalg.operator_norm(m) == pytest.approx(
            power_iteration_norm(m, seed=7), rel=1e-10
        )

    def test_zero_iff_zero_matrix(self):
        assert linalg.operator_norm(np.zeros((3, 2))) == 0.0
        assert linalg.operator_norm(np.full((2, 2), 1e-30)) > 0.0

    def test_rejects_non_finite(self):
        with pytest.raises(InputError):
            linalg.operator_norm(np.array([[np.nan, 0], [0, 1]]))


class TestSpectralRadius:
    def test_upper_triangular_example(self):
        assert linalg.spectral_radius(A) == pytest.approx(1.0, rel=1e-12)

    def test_nilpotent(self):
        assert linalg.spectral_radius(np.array([[0, 1], [0, 0]])) == pytest.approx(
            0.0, abs=1e-12
        )

    def test_product_example(self):
        assert linalg.spectral_radius(B.conj().T @ C) == pytest.approx(5.0, rel=1e-12)

    def test_rejects_non_square(self):
        with pytest.raises(InputError):
            linalg.spectral_radius(np.ones((2, 3)))


class TestSchattenNorm:
    def test_trace_norm_of_positive_diagonal(self):
        assert linalg.schatten_norm(np.diag([3.0, 4.0]), 1) == pytest.approx(7.0)

    def test_frobenius_of_identity(self):
        assert linalg.schatten_norm(np.eye(2), 2) == pytest.approx(math.sqrt(2))

    def test_matches_eigen_oracle(self):
        rng = np.random.default_rng(32)
        m = random_complex(rng, 3)
        assert linalg.schatten_norm(m, 3) == pytest.approx(
            schatten_eigen_oracle(m, 3), rel=1e-12
        )

    def test_rejects_p_below_one(self):
        with pytest.raises(InputError):
            linalg.schatten_norm(np.eye(2), 0.5)


class TestPolarDecompose:
    def test_positive_diagonal(self):
        parts = linalg.polar_decompose(np.diag([2.0, 3.0]))
        assert np.allclose(parts.unitary_factor, np.eye(2), atol=1e-12)
        assert np.allclose(parts.modulus, np.diag([2.0, 3.0]), atol=1e-12)

    def test_unitary_input(self):
        rng = np.random.default_rng(33)
        q, r = np.linalg.qr(random_complex(rng, 3))
        q = q * (np.diag(r) / np.abs(np.diag(r)))[None, :]
        parts = linalg.polar_decompose(q)
        assert np.allclose(parts.unitary_factor, q, atol=1e-12)
        assert np.allclose(parts.modulus, np.eye(3), atol=1e-12)

    def test_reconstruction_random_invertible(self):
        rng = np.random.default_rng(34)
        m = random_complex(rng, 4) + 2.0 * np.eye(4)
        parts = linalg.polar_decompose(m)
        u = parts.unitary_factor
        assert np.linalg.norm(u.conj().T @ u - np.eye(4), 2) < 1e-9
        assert np.linalg.norm(u @ parts.modulus - m, 2) < 1e-9 * (
            1 + linalg.operator_norm(m)
        )

    def test_singular_input_still_unitary(self):
        m = np.diag([1.0, 0.0]).astype(complex)
        parts = linalg.polar_decompose(m)
        u = parts.unitary_factor
        assert np.allclose(u.conj().T @ u, np.eye(2), atol=1e-12)
        assert np.allclose(u @ parts.modulus, m, atol=1e-12)


class TestNumericalRangeSupport:
    def test_diagonal_direction_zero(self):
        value, vector = linalg.numerical_range_support(np.diag([1.0, -1.0]), 0.0)
        assert value == pytest.approx(1.0)
        assert abs(vector[0]) == pytest.approx(1.0)

    def test_identity_any_direction(self):
        for theta in (0.0, 0.7, 2.0, 5.5):
            value, _ = linalg.numerical_range_support(np.eye(3), theta)
            assert value == pytest.approx(math.cos(theta), abs=1e-12)

    def test_hermitian_direction_zero_is_top_eigenvalue(self):
        rng = np.random.default_rng(35)
        g = random_complex(rng, 4)
        h = (g + g.conj().T) / 2.0
        value, _ = linalg.numerical_range_support(h, 0.0)
        assert value == pytest.approx(np.linalg.eigvalsh(h)[-1], rel=1e-12)

    def test_boundary_point_supports_the_range(self):
        # the boundary point in direction theta must attain the support value
        # there and stay inside every other sampled half-plane
        rng = np.random.default_rng(36)
        m = random_complex(rng, 3)
        thetas = np.linspace(0.0, 2 * np.pi, 24, endpoint=False)
        supports = []
        points = []
        for theta in thetas:
            h, vec = linalg.numerical_range_support(m, theta)
            supports.append(h)
            points.append(complex(vec.conj() @ m @ vec))
        for i, theta in enumerate(thetas):
            assert np.real(np.exp(-1j * theta) * points[i]) == pytest.approx(
                supports[i], abs=1e-9
            )
            for w in points:
                assert np.real(np.exp(-1j * theta) * w) <= supports[i] + 1e-9


class TestMaxModulusNumericalRange:
    def test_hermitian_diagonal(self):
        radius, vector = linalg.max_modulus_numerical_range(np.diag([2.0, -5.0]))
        assert radius == pytest.approx(5.0, rel=1e-9)
        assert abs(vector[1]) == pytest.approx(1.0, abs=1e-8)

    def test_nilpotent_disk(self):
        m = np.array([[0, 1], [0, 0]], dtype=complex)
        radius, _ = linalg.max_modulus_numerical_range(m)
        assert radius == pytest.approx(0.5, rel=1e-9)
        assert radius == pytest.approx(numerical_range_sample_max(m), rel=1e-5)

    def test_normal_matrix_matches_spectral_radius(self):
        rng = np.random.default_rng(37)
        q, r = np.linalg.qr(random_complex(rng, 4))
        q = q * (np.diag(r) / np.abs(np.diag(r)))[None, :]
        eigs = rng.normal(size=4) + 1j * rng.normal(size=4)
        m = q @ np.diag(eigs) @ q.conj().T
        radius, _ = linalg.max_modulus_numerical_range(m)
        assert radius == pytest.approx(np.max(np.abs(eigs)), rel=1e-9)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**9), st.integers(2, 5))
def test_norm_interlacing_with_schatten(seed, n):
    rng = np.random.default_rng(seed)
    m = random_complex(rng, n)
    op = linalg.operator_norm(m)
    rank = np.linalg.matrix_rank(m)
    for p in (1, 2, 4):
        sp = linalg.schatten_norm(m, p)
        assert sp >= op - 1e-12
        assert op >= sp * rank ** (-1.0 / p) - 1e-12


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**9), st.integers(2, 5))
def test_spectral_radius_below_norm(seed, n):
    rng = np.random.default_rng(seed)
    m = random_complex(rng, n)
    assert linalg.spectral_radius(m) <= linalg.operator_norm(m) + 1e-12
    h = (m + m.conj().T) / 2.0
    assert linalg.spectral_radius(h) == pytest.approx(
        linalg.operator_norm(h), rel=1e-9
    )


def test_tolerance_config_validation():
    with pytest.raises(ValueError):
        ToleranceConfig(eq_rel=0.0)
    with pytest.raises(ValueError):
        ToleranceConfig(phase_refine=1.0)  # coarser than the grid cell
    cfg = ToleranceConfig()
    assert cfg.close(1.0, 1.0 + 1e-9)
    assert not cfg.close(1.0, 1.1)
    assert cfg.equality_borderline(1.0, 1.0 + 5e-7)
    assert not cfg.equality_borderline(1.0, 1.0 + 1e-9)


def test_density_state_validation(cfg):
    from normpar.linalg import DensityState

    good = DensityState(np.diag([0.25, 0.75]).astype(complex))
    good.validate(cfg)
    with pytest.raises(InputError):
        DensityState(np.diag([0.8, 0.8]).astype(complex)).validate(cfg)
    with pytest.raises(InputError):
        DensityState(np.array([[0.5, 0.5], [-0.5, 0.5]])).validate(cfg)
