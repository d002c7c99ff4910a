"""
core/holographic.py – MM update of the holographic amplitude weights w.

For real w the link gain |hᴴ diag(w) Φ x|² is the quadratic form wᵀ Re(B) w
with B = b bᴴ, b = conj(Φx) ∘ h.  Both receivers' tangent bounds are built on
that identity, and their difference Q_w is climbed by projected gradient
ascent over the box [0, 1]^M.

When the step is given a signal budget it becomes power-aware: v is rescaled
to use exactly that budget at every candidate w, Q_w is corrected for the
rescaling and candidates are judged by the secrecy rate they reach.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from core.artificial_noise import reproject
from core.channel import ChannelRealization
from core.digital import fill_budget
from core.geometry import assemble_holographic
from core.metrics import evaluate

log = logging.getLogger(__name__)

_MAX_HALVINGS = 20
_ASCENT_SLACK = 1e-12
# Spectral step lengths are kept within [η, _MAX_STEP_RATIO·η].
_MAX_STEP_RATIO = 1e4


@dataclass(frozen=True)
class HolographicSurrogate:
    Q_w: np.ndarray  # (M, M) real symmetric
    anchor: np.ndarray  # (M,) real

    def value(self, w: np.ndarray) -> float:
        return float(w @ self.Q_w @ w)


def quadratic_form_matrix(channel: np.ndarray, phi: np.ndarray, x: np.ndarray) -> np.ndarray:
    """diag(Φx)ᴴ h hᴴ diag(Φx); rank ≤ 1, PSD."""
    b = np.conj(phi @ x) * channel
    return np.outer(b, b.conj())


def signal_power_form(phi: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Diagonal D with wᵀ D w = ‖diag(w) Φ v‖²."""
    return np.diag(np.abs(phi @ v) ** 2)


def _receiver_term(
    channel: np.ndarray,
    phi: np.ndarray,
    v: np.ndarray,
    z: np.ndarray,
    w_t: np.ndarray,
    noise: float,
) -> np.ndarray:
    signal = quadratic_form_matrix(channel, phi, v).real
    leakage = quadratic_form_matrix(channel, phi, z).real
    b = float(w_t @ leakage @ w_t) + noise
    x_t = float(w_t @ signal @ w_t) / b
    return signal / (b * (1.0 + x_t))


def surrogate_qw(
    channels: ChannelRealization,
    phi: np.ndarray,
    v: np.ndarray,
    z: np.ndarray,
    w_t: np.ndarray,
    noise_bob: float,
    noise_eve: float,
) -> HolographicSurrogate:
    """Q_w = Re(M_bob − M_eve) at anchor w_t, symmetrized."""
    w_t = np.asarray(w_t, dtype=float)
    m_bob = _receiver_term(channels.h_b, phi, v, z, w_t, noise_bob)
    m_eve = _receiver_term(channels.g_e, phi, v, z, w_t, noise_eve)
    Q = m_bob - m_eve
    return HolographicSurrogate(Q_w=0.5 * (Q + Q.T), anchor=w_t.copy())


def power_corrected(surrogate: HolographicSurrogate, power_form: np.ndarray) -> HolographicSurrogate:
    """
    Q_w − (a/d)·D with a = w_tᵀ Q_w w_t and d = w_tᵀ D w_t.

    At the anchor its gradient is the gradient of the secrecy rate (in nats)
    when v is rescaled to keep ‖diag(w) Φ v‖² fixed, and its value is 0.
    """
    w_t = surrogate.anchor
    d = float(w_t @ power_form @ w_t)
    if d <= 0.0:
        return surrogate
    a = surrogate.value(w_t)
    return HolographicSurrogate(Q_w=surrogate.Q_w - (a / d) * power_form, anchor=w_t)


def gradient(Q_w: np.ndarray, w: np.ndarray) -> np.ndarray:
    return 2.0 * (Q_w @ w)


def project_box(w: np.ndarray) -> np.ndarray:
    return np.clip(w, 0.0, 1.0)


@dataclass(frozen=True)
class HolographicContext:
    """
    Everything the surrogate needs besides the anchor.

    With *signal_budget* set, :meth:`restore` re-projects z onto the null
    space of the new W and fills the budget with v, and the surrogate and
    the acceptance test both work on the restored pair.
    """

    channels: ChannelRealization
    phi: np.ndarray
    v: np.ndarray
    z: np.ndarray
    noise_bob: float
    noise_eve: float
    signal_budget: Optional[float] = None

    @property
    def power_aware(self) -> bool:
        return self.signal_budget is not None

    def restore(self, w: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """(v, z) made feasible for the weights *w*."""
        if self.signal_budget is None:
            return self.v, self.z
        W = assemble_holographic(w, self.phi)
        return fill_budget(self.v, W, self.signal_budget), reproject(self.z, W, self.channels)

    def objective(self, w: np.ndarray) -> float:
        """Unclamped R_bob − R_eve at *w* after :meth:`restore`."""
        v, z = self.restore(w)
        report = evaluate(
            self.channels.h_b,
            self.channels.g_e,
            assemble_holographic(w, self.phi),
            v,
            z,
            self.noise_bob,
            self.noise_eve,
        )
        return report.rate_bob - report.rate_eve

    def surrogate(self, w_t: np.ndarray) -> HolographicSurrogate:
        v, z = self.restore(w_t)
        base = surrogate_qw(self.channels, self.phi, v, z, w_t, self.noise_bob, self.noise_eve)
        if not self.power_aware:
            return base
        return power_corrected(base, signal_power_form(self.phi, v))


def ascent_step(
    surrogate: HolographicSurrogate,
    learning_rate: float,
    accept: Optional[Callable[[np.ndarray], bool]] = None,
    min_move: float = 0.0,
) -> np.ndarray | None:
    """
    One projected step from the anchor, halving η until the surrogate does
    not decrease and *accept* (when given) agrees.

    Returns the anchor itself once a rejected candidate moves less than
    *min_move*, and None when every halving fails.
    """
    w = surrogate.anchor
    f0 = surrogate.value(w)
    floor = f0 - _ASCENT_SLACK * max(1.0, abs(f0))
    direction = gradient(surrogate.Q_w, w)
    step = learning_rate
    for attempt in range(_MAX_HALVINGS + 1):
        candidate = project_box(w + step * direction)
        if surrogate.value(candidate) >= floor and (accept is None or accept(candidate)):
            if attempt:
                log.debug("holographic step accepted after %d halvings", attempt)
            return candidate
        if float(np.linalg.norm(candidate - w)) < min_move:
            return w.copy()
        step *= 0.5
    return None


def spectral_step(s: np.ndarray, y: np.ndarray, lower: float, upper: float) -> float:
    """Barzilai–Borwein length ⟨s, s⟩/⟨s, y⟩ clipped to [lower, upper]; *upper* without curvature."""
    sy = float(s @ y)
    if sy <= 0.0:
        return upper
    return float(np.clip(float(s @ s) / sy, lower, upper))


def _no_worse_than(context: HolographicContext, w: np.ndarray) -> Callable[[np.ndarray], bool]:
    current = context.objective(w)
    floor = current - _ASCENT_SLACK * max(1.0, abs(current))
    return lambda candidate: context.objective(candidate) >= floor


def optimize_holographic(
    w_init: np.ndarray,
    context: HolographicContext,
    learning_rate: float,
    inner_tolerance: float,
    max_iters: int,
) -> tuple[np.ndarray, int]:
    """
    Inner loop: rebuild Q_w at the current w, take a projected step,
    stop once ‖Δw‖ < tolerance or after *max_iters* steps.

    The first step tries η; later steps start from the spectral length of
    the last two iterates, never below η.  Returns the final weights and the
    number of iterations run.
    """
    if learning_rate <= 0.0:
        raise ValueError(f"learning_rate must be positive, got {learning_rate!r}")
    w = project_box(np.asarray(w_init, dtype=float))
    max_step = _MAX_STEP_RATIO * learning_rate
    step = learning_rate
    previous: Optional[tuple[np.ndarray, np.ndarray]] = None
    iterations = 0
    while iterations < max_iters:
        iterations += 1
        surrogate = context.surrogate(w)
        grad = gradient(surrogate.Q_w, w)
        if previous is not None:
            step = spectral_step(w - previous[0], previous[1] - grad, learning_rate, max_step)

        accept = _no_worse_than(context, w) if context.power_aware else None
        candidate = ascent_step(surrogate, step, accept, min_move=inner_tolerance)
        if candidate is None:
            log.warning("holographic step-halving exhausted at iteration %d", iterations)
            break
        moved = float(np.linalg.norm(candidate - w))
        previous = (w, grad)
        w = candidate
        if moved < inner_tolerance:
            break
    return w, iterations
