"""
tests/core/test_holographic.py – Unit tests for the holographic-weight MM step.
"""
import math

import numpy as np
import pytest

from core.artificial_noise import an_step
from core.channel import ChannelMeta, ChannelRealization, build_scenario, generate_channels
from core.digital import digital_step, signal_budget
from core.geometry import assemble_holographic, build_geometry
from core.holographic import (
    HolographicContext,
    HolographicSurrogate,
    ascent_step,
    gradient,
    optimize_holographic,
    power_corrected,
    project_box,
    quadratic_form_matrix,
    spectral_step,
    surrogate_qw,
)
from core.optimizer import initialize
from core.system import SystemConfig


# ---------------------------------------------------------------------------
# Helpers
# ---------------------------------------------------------------------------

def crandn(rng, *shape):
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / math.sqrt(2.0)


def make_channels(h_b, g_e) -> ChannelRealization:
    nan = math.nan
    return ChannelRealization(h_b=h_b, g_e=g_e, meta=ChannelMeta(nan, nan, nan, nan, nan))


def make_phi(rng, m: int, r: int) -> np.ndarray:
    return np.exp(1j * rng.uniform(0.0, 2.0 * np.pi, (m, r)))


def make_context(seed: int = 0, m: int = 9, r: int = 2, eve_scale: float = 1.0) -> HolographicContext:
    rng = np.random.default_rng(seed)
    return HolographicContext(
        channels=make_channels(crandn(rng, m), eve_scale * crandn(rng, m)),
        phi=make_phi(rng, m, r),
        v=crandn(rng, r),
        z=crandn(rng, r),
        noise_bob=1.0,
        noise_eve=1.0,
    )


def make_default_instance(seed: int):
    """Reference scenario after one digital and one AN step, as the outer loop hands it over."""
    validated = SystemConfig().validate()
    geometry = build_geometry(validated)
    rng = np.random.default_rng(seed)
    channels = generate_channels(validated, geometry, build_scenario(validated, rng), rng)
    state = initialize(validated, geometry, channels, rng)
    W = state.holographic(geometry.phi)
    state = state.evolve(v=digital_step(state, channels, W, validated))
    state = state.evolve(z=an_step(state, channels, W, validated))
    context = HolographicContext(
        channels=channels,
        phi=geometry.phi,
        v=state.v,
        z=state.z,
        noise_bob=validated.noise_power_bob,
        noise_eve=validated.noise_power_eve,
        signal_budget=signal_budget(validated, state.z),
    )
    return validated, geometry, context, state.w


# ---------------------------------------------------------------------------
# Quadratic forms
# ---------------------------------------------------------------------------

def test_quadratic_form_of_zero_vector() -> None:
    rng = np.random.default_rng(1)
    B = quadratic_form_matrix(crandn(rng, 4), make_phi(rng, 4, 2), np.zeros(2))
    np.testing.assert_array_equal(B, np.zeros((4, 4)))


def test_quadratic_form_single_element() -> None:
    h, phi, x = np.array([0.5 - 0.5j]), np.array([[1j, 1.0]]), np.array([2.0, 1.0 + 0j])
    B = quadratic_form_matrix(h, phi, x)
    assert B.shape == (1, 1)
    assert B[0, 0].real == pytest.approx(abs(h[0]) ** 2 * abs(phi[0] @ x) ** 2)


def test_quadratic_form_identity_for_real_weights() -> None:
    rng = np.random.default_rng(2)
    h, phi, x = crandn(rng, 9), make_phi(rng, 9, 3), crandn(rng, 3)
    B = quadratic_form_matrix(h, phi, x)
    for w in rng.uniform(0.0, 1.0, (100, 9)):
        direct = abs(np.vdot(h, (w[:, None] * phi) @ x)) ** 2
        assert w @ B.real @ w == pytest.approx(direct, rel=1e-10)


def test_quadratic_form_is_hermitian_psd() -> None:
    rng = np.random.default_rng(3)
    B = quadratic_form_matrix(crandn(rng, 6), make_phi(rng, 6, 2), crandn(rng, 2))
    np.testing.assert_allclose(B, B.conj().T, atol=1e-14)
    assert np.linalg.eigvalsh(B).min() >= -1e-12 * np.linalg.norm(B)


# ---------------------------------------------------------------------------
# Surrogate
# ---------------------------------------------------------------------------

def test_surrogate_is_symmetric() -> None:
    ctx = make_context(4)
    surr = ctx.surrogate(np.full(9, 0.5))
    np.testing.assert_allclose(surr.Q_w, surr.Q_w.T, atol=1e-12)
    assert surr.Q_w.dtype == np.float64


def test_surrogate_without_eve_is_psd() -> None:
    ctx = make_context(5, eve_scale=0.0)
    surr = ctx.surrogate(np.full(9, 0.3))
    assert np.linalg.eigvalsh(surr.Q_w).min() >= -1e-12 * np.linalg.norm(surr.Q_w)


def test_surrogate_without_signal_is_zero() -> None:
    ctx = make_context(6)
    surr = surrogate_qw(ctx.channels, ctx.phi, np.zeros(2), ctx.z, np.full(9, 0.5), 1.0, 1.0)
    np.testing.assert_array_equal(surr.Q_w, np.zeros((9, 9)))


def test_surrogate_bob_term_matches_rate_anchor() -> None:
    # With Eve removed, wᵀ Q_w w at the anchor equals x_t / (1 + x_t).
    ctx = make_context(7, eve_scale=0.0)
    w_t = np.random.default_rng(7).uniform(0.0, 1.0, 9)
    W = w_t[:, None] * ctx.phi
    h = ctx.channels.h_b
    denominator = abs(np.vdot(h, W @ ctx.z)) ** 2 + 1.0
    x_t = abs(np.vdot(h, W @ ctx.v)) ** 2 / denominator
    surr = ctx.surrogate(w_t)
    assert surr.value(w_t) == pytest.approx(x_t / (1.0 + x_t), rel=1e-10)


# ---------------------------------------------------------------------------
# Gradient and projection
# ---------------------------------------------------------------------------

def test_gradient_examples() -> None:
    Q = np.random.default_rng(8).standard_normal((4, 4))
    Q = 0.5 * (Q + Q.T)
    np.testing.assert_array_equal(gradient(Q, np.zeros(4)), np.zeros(4))
    w = np.array([0.1, 0.2, 0.3, 0.4])
    np.testing.assert_allclose(gradient(np.eye(4), w), 2.0 * w)


def test_gradient_matches_finite_differences() -> None:
    ctx = make_context(9)
    rng = np.random.default_rng(9)
    Q = ctx.surrogate(rng.uniform(0.0, 1.0, 9)).Q_w
    w = rng.uniform(0.0, 1.0, 9)
    h = 1e-6
    numeric = np.array(
        [((w + h * e) @ Q @ (w + h * e) - (w - h * e) @ Q @ (w - h * e)) / (2 * h) for e in np.eye(9)]
    )
    np.testing.assert_allclose(numeric, gradient(Q, w), rtol=1e-5, atol=1e-9)


def test_project_box_examples() -> None:
    np.testing.assert_array_equal(project_box(np.array([1.05, -0.2, 0.4])), [1.0, 0.0, 0.4])
    w = np.array([0.0, 0.5, 1.0])
    np.testing.assert_array_equal(project_box(w), w)


def test_projection_is_non_expansive() -> None:
    rng = np.random.default_rng(10)
    for a, b in rng.uniform(-1.0, 2.0, (200, 2, 5)):
        assert np.linalg.norm(project_box(a) - project_box(b)) <= np.linalg.norm(a - b) + 1e-15


# ---------------------------------------------------------------------------
# Ascent loop
# ---------------------------------------------------------------------------

def test_ascent_step_never_decreases_surrogate() -> None:
    for seed in range(20):
        ctx = make_context(seed)
        w = np.random.default_rng(seed).uniform(0.0, 1.0, 9)
        surr = ctx.surrogate(w)
        step = ascent_step(surr, learning_rate=5.0)
        assert step is not None
        assert surr.value(step) >= surr.value(w) - 1e-12 * max(1.0, abs(surr.value(w)))
        assert np.all((step >= 0.0) & (step <= 1.0))


def test_ascent_step_stays_at_upper_corner() -> None:
    surr = HolographicSurrogate(Q_w=np.array([[1.0]]), anchor=np.array([1.0]))
    np.testing.assert_array_equal(ascent_step(surr, 0.01), [1.0])


def test_negative_surrogate_shrinks_weights() -> None:
    surr = HolographicSurrogate(Q_w=-np.eye(3), anchor=np.full(3, 0.5))
    step = ascent_step(surr, 0.01)
    np.testing.assert_allclose(step, np.full(3, 0.49))
    assert surr.value(step) > surr.value(surr.anchor)


def test_zero_surrogate_is_a_fixed_point() -> None:
    ctx = make_context(11)
    ctx = HolographicContext(ctx.channels, ctx.phi, np.zeros(2), ctx.z, 1.0, 1.0)
    w0 = np.random.default_rng(11).uniform(0.1, 0.9, 9)
    w, iters = optimize_holographic(w0, ctx, 0.01, 1e-5, 500)
    np.testing.assert_array_equal(w, w0)
    assert iters == 1


@pytest.mark.parametrize("seed", [21, 22])
def test_default_instance_stops_on_tolerance(seed: int) -> None:
    validated, geometry, context, w0 = make_default_instance(seed)
    config = validated.config
    w, iters = optimize_holographic(
        w0, context, config.learning_rate, config.inner_tolerance, config.max_inner_iters
    )
    assert iters < config.max_inner_iters
    assert np.all((w >= 0.0) & (w <= 1.0))
    assert context.objective(w) >= context.objective(w0) - 1e-9


def test_power_aware_step_fills_the_budget() -> None:
    validated, geometry, context, w0 = make_default_instance(23)
    for w in (w0, np.full(w0.shape, 0.2), np.ones(w0.shape)):
        v, z = context.restore(w)
        W = assemble_holographic(w, geometry.phi)
        assert np.linalg.norm(W @ v) ** 2 == pytest.approx(context.signal_budget, rel=1e-12)
        assert np.linalg.norm(z) ** 2 == pytest.approx(np.linalg.norm(context.z) ** 2, rel=1e-12)
        assert abs(np.vdot(context.channels.h_b, W @ z)) <= 1e-9 * np.linalg.norm(
            W.conj().T @ context.channels.h_b
        ) * max(np.linalg.norm(z), 1e-300)


def test_power_corrected_gradient_matches_rescaled_secrecy() -> None:
    rng = np.random.default_rng(24)
    ctx = HolographicContext(
        channels=make_channels(crandn(rng, 6), 0.5 * crandn(rng, 6)),
        phi=make_phi(rng, 6, 1),
        v=np.array([1.0 + 0j]),
        z=np.zeros(1, dtype=complex),
        noise_bob=1.0,
        noise_eve=1.0,
        signal_budget=2.0,
    )
    w = rng.uniform(0.2, 0.8, 6)
    surr = ctx.surrogate(w)
    assert surr.value(w) == pytest.approx(0.0, abs=1e-12)
    h = 1e-6
    numeric = np.array(
        [(ctx.objective(w + h * e) - ctx.objective(w - h * e)) / (2 * h) for e in np.eye(6)]
    )
    np.testing.assert_allclose(math.log(2.0) * numeric, gradient(surr.Q_w, w), rtol=1e-5, atol=1e-9)


def test_power_corrected_without_signal_is_unchanged() -> None:
    surr = HolographicSurrogate(Q_w=np.eye(3), anchor=np.full(3, 0.5))
    assert power_corrected(surr, np.zeros((3, 3))) is surr


def test_spectral_step_examples() -> None:
    s = np.array([1.0, 0.0])
    assert spectral_step(s, np.array([0.5, 0.0]), 0.01, 100.0) == pytest.approx(2.0)
    assert spectral_step(s, np.array([-1.0, 0.0]), 0.01, 100.0) == 100.0
    assert spectral_step(s, np.array([1e6, 0.0]), 0.01, 100.0) == 0.01
    assert spectral_step(s, np.array([1e-9, 0.0]), 0.01, 100.0) == 100.0


def test_ascent_step_returns_anchor_when_rejected_moves_are_tiny() -> None:
    surr = HolographicSurrogate(Q_w=np.eye(2), anchor=np.full(2, 0.5))
    step = ascent_step(surr, 0.01, accept=lambda candidate: False, min_move=1.0)
    np.testing.assert_array_equal(step, surr.anchor)
    assert ascent_step(surr, 0.01, accept=lambda candidate: False) is None


def test_optimize_holographic_rejects_bad_step() -> None:
    with pytest.raises(ValueError, match="learning_rate"):
        optimize_holographic(np.ones(9), make_context(13), 0.0, 1e-5, 10)
