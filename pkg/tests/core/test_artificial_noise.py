"""
tests/core/test_artificial_noise.py – Unit tests for the null-space AN design.
"""
import math

import numpy as np
import pytest

from core.artificial_noise import (
    an_budget,
    an_step,
    an_vector,
    effective_bob_channel,
    null_space,
    projected_interference,
    reproject,
)
from core.channel import ChannelMeta, ChannelRealization
from core.metrics import sinr_bob
from core.state import BeamformingState
from core.system import AnPowerPolicy, SystemConfig


# ---------------------------------------------------------------------------
# Helpers
# ---------------------------------------------------------------------------

def crandn(rng, *shape):
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / math.sqrt(2.0)


def make_instance(seed: int, m: int = 9, r: int = 3):
    rng = np.random.default_rng(seed)
    W = rng.uniform(0.1, 1.0, (m, 1)) * np.exp(1j * rng.uniform(0, 2 * np.pi, (m, r)))
    return rng, W, crandn(rng, m), crandn(rng, m)


def make_channels(h_b, g_e) -> ChannelRealization:
    nan = math.nan
    return ChannelRealization(h_b=h_b, g_e=g_e, meta=ChannelMeta(nan, nan, nan, nan, nan))


# ---------------------------------------------------------------------------
# Effective channel and null space
# ---------------------------------------------------------------------------

def test_effective_channel_of_dark_surface_is_zero() -> None:
    _, W, h, _ = make_instance(0)
    np.testing.assert_array_equal(effective_bob_channel(0.0 * W, h), np.zeros(3))


def test_effective_channel_with_orthonormal_columns() -> None:
    Q, _ = np.linalg.qr(np.random.default_rng(1).standard_normal((4, 2)))
    W = Q.astype(complex)
    np.testing.assert_allclose(effective_bob_channel(W, W[:, 0]), [1.0, 0.0], atol=1e-12)


def test_null_space_r2() -> None:
    basis = null_space(np.array([1.0, 0.0], dtype=complex))
    assert basis.basis.shape == (2, 1)
    assert abs(basis.basis[0, 0]) < 1e-12
    assert abs(basis.basis[1, 0]) == pytest.approx(1.0)


def test_null_space_single_chain_is_empty() -> None:
    basis = null_space(np.array([0.3 + 0.1j]))
    assert basis.is_empty


def test_null_space_of_zero_channel_is_everything() -> None:
    basis = null_space(np.zeros(3, dtype=complex))
    assert basis.basis.shape == (3, 3)


def test_null_space_orthogonality_and_orthonormality() -> None:
    rng = np.random.default_rng(2)
    for _ in range(50):
        h = crandn(rng, 4)
        basis = null_space(h)
        assert basis.basis.shape == (4, 3)
        assert np.linalg.norm(h.conj() @ basis.basis) <= 1e-10 * np.linalg.norm(h)
        np.testing.assert_allclose(basis.basis.conj().T @ basis.basis, np.eye(3), atol=1e-10)


# ---------------------------------------------------------------------------
# AN vector
# ---------------------------------------------------------------------------

def test_zero_budget_gives_zero_vector() -> None:
    _, W, h, g = make_instance(3)
    z = an_vector(null_space(effective_bob_channel(W, h)), W, g, 0.0)
    np.testing.assert_array_equal(z, np.zeros(3))


def test_an_vector_contracts() -> None:
    for seed in range(20):
        _, W, h, g = make_instance(seed, r=2 + seed % 3)
        basis = null_space(effective_bob_channel(W, h))
        z = an_vector(basis, W, g, 0.7)
        assert np.linalg.norm(z) ** 2 == pytest.approx(0.7, rel=1e-12)
        leak = abs(np.vdot(h, W @ z)) / (np.linalg.norm(W.conj().T @ h) * math.sqrt(0.7))
        assert leak <= 1e-9
        lam = np.linalg.eigvalsh(projected_interference(basis, W, g))[-1]
        assert abs(np.vdot(g, W @ z)) ** 2 == pytest.approx(0.7 * lam, rel=1e-9)


def test_an_vector_beats_random_null_space_directions() -> None:
    rng, W, h, g = make_instance(4, r=3)
    basis = null_space(effective_bob_channel(W, h))
    z = an_vector(basis, W, g, 1.0)
    achieved = abs(np.vdot(g, W @ z)) ** 2
    U = crandn(rng, 5000, basis.basis.shape[1])
    U /= np.linalg.norm(U, axis=1)[:, None]
    candidates = U @ basis.basis.T
    random_best = np.max(np.abs(candidates @ (W.T @ g.conj())) ** 2)
    assert achieved >= random_best - 1e-12


def test_an_vector_when_eve_cannot_be_reached() -> None:
    # Eve's effective channel equals Bob's, so nothing in the null space reaches her.
    _, W, h, _ = make_instance(5)
    basis = null_space(effective_bob_channel(W, h))
    z = an_vector(basis, W, h, 0.5)
    assert np.linalg.norm(z) ** 2 == pytest.approx(0.5, rel=1e-12)
    assert abs(np.vdot(h, W @ z)) ** 2 <= 1e-18


def test_an_is_invisible_to_bob() -> None:
    rng, W, h, g = make_instance(6)
    v = crandn(rng, 3)
    z = an_vector(null_space(effective_bob_channel(W, h)), W, g, 2.0)
    assert sinr_bob(h, W, v, z, 0.1) == pytest.approx(sinr_bob(h, W, v, np.zeros(3), 0.1), rel=1e-9)


# ---------------------------------------------------------------------------
# Budget, step and re-projection
# ---------------------------------------------------------------------------

def test_budget_is_residual_power() -> None:
    validated = SystemConfig(transmit_power_dbm=30.0).validate()
    W = np.eye(3, dtype=complex)
    assert an_budget(validated, W, np.array([0.6, 0, 0], dtype=complex)) == pytest.approx(0.64)
    assert an_budget(validated, W, np.array([2.0, 0, 0], dtype=complex)) == 0.0


def test_budget_under_fixed_fraction() -> None:
    validated = SystemConfig(
        transmit_power_dbm=30.0, an_power_policy=AnPowerPolicy.FIXED_FRACTION, an_fraction=0.2
    ).validate()
    assert an_budget(validated, np.eye(2, dtype=complex), np.ones(2)) == pytest.approx(0.2)


def test_an_step_fills_residual_budget() -> None:
    _, W, h, g = make_instance(7)
    validated = SystemConfig(num_elements=9, num_rf_chains=3, transmit_power_dbm=30.0).validate()
    v = np.array([0.1, 0.0, 0.0], dtype=complex)
    state = BeamformingState(v=v, w=np.ones(9), z=np.zeros(3, dtype=complex))
    z = an_step(state, make_channels(h, g), W, validated)
    total = np.linalg.norm(W @ v) ** 2 + np.linalg.norm(z) ** 2
    assert total == pytest.approx(1.0, rel=1e-12)


def test_reproject_keeps_power_and_restores_null_space() -> None:
    rng, W, h, g = make_instance(8)
    z = crandn(rng, 3)
    moved = reproject(z, W, make_channels(h, g))
    assert np.linalg.norm(moved) == pytest.approx(np.linalg.norm(z), rel=1e-12)
    assert abs(np.vdot(h, W @ moved)) <= 1e-9 * np.linalg.norm(W.conj().T @ h) * np.linalg.norm(z)


def test_reproject_zero_vector_is_noop() -> None:
    _, W, h, g = make_instance(9)
    z = np.zeros(3, dtype=complex)
    assert reproject(z, W, make_channels(h, g)) is z
