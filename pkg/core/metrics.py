"""
core/metrics.py – Link metrics for any candidate (v, W, z).

  SINR_b  = |h_bᴴ W v|² / (|h_bᴴ W z|² + σ_b²)
  SINR_e  = |g_eᴴ W v|² / (|g_eᴴ W z|² + σ_e²)
  secrecy = max(0, log2(1 + SINR_b) − log2(1 + SINR_e))

These are the ground-truth objective: every optimisation step is checked
against them, never against a surrogate value.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

if TYPE_CHECKING:
    from core.channel import ChannelRealization
    from core.state import BeamformingState
    from core.system import ValidatedConfig


@dataclass(frozen=True)
class SecrecyReport:
    sinr_bob: float
    sinr_eve: float
    rate_bob: float  # bits/s/Hz
    rate_eve: float
    secrecy: float
    power_signal: float  # watts
    power_an: float

    @property
    def power_total(self) -> float:
        return self.power_signal + self.power_an


def _sinr(channel: np.ndarray, W: np.ndarray, v: np.ndarray, z: np.ndarray, noise: float) -> float:
    effective = channel.conj() @ W
    signal = abs(effective @ v) ** 2
    leakage = abs(effective @ z) ** 2
    return float(signal / (leakage + noise))


def sinr_bob(h_b: np.ndarray, W: np.ndarray, v: np.ndarray, z: np.ndarray, noise_bob: float) -> float:
    return _sinr(h_b, W, v, z, noise_bob)


def sinr_eve(g_e: np.ndarray, W: np.ndarray, v: np.ndarray, z: np.ndarray, noise_eve: float) -> float:
    return _sinr(g_e, W, v, z, noise_eve)


def rate(sinr: float) -> float:
    return math.log2(1.0 + sinr)


def secrecy_rate(sinr_b: float, sinr_e: float) -> float:
    """Positive part of the Bob/Eve rate difference, in bits/s/Hz."""
    return max(0.0, rate(sinr_b) - rate(sinr_e))


def transmit_power(W: np.ndarray, v: np.ndarray, z: np.ndarray) -> tuple[float, float]:
    """(‖W v‖², ‖z‖²) in watts."""
    return float(np.linalg.norm(W @ v) ** 2), float(np.linalg.norm(z) ** 2)


def evaluate(
    h_b: np.ndarray,
    g_e: np.ndarray,
    W: np.ndarray,
    v: np.ndarray,
    z: np.ndarray,
    noise_bob: float,
    noise_eve: float,
) -> SecrecyReport:
    """Compute every metric of one (v, W, z) point."""
    s_b = sinr_bob(h_b, W, v, z, noise_bob)
    s_e = sinr_eve(g_e, W, v, z, noise_eve)
    p_signal, p_an = transmit_power(W, v, z)
    return SecrecyReport(
        sinr_bob=s_b,
        sinr_eve=s_e,
        rate_bob=rate(s_b),
        rate_eve=rate(s_e),
        secrecy=secrecy_rate(s_b, s_e),
        power_signal=p_signal,
        power_an=p_an,
    )


def evaluate_state(
    state: BeamformingState,
    channels: ChannelRealization,
    phi: np.ndarray,
    validated: ValidatedConfig,
) -> SecrecyReport:
    """:func:`evaluate` for a BeamformingState against one channel realization."""
    return evaluate(
        channels.h_b,
        channels.g_e,
        state.holographic(phi),
        state.v,
        state.z,
        validated.noise_power_bob,
        validated.noise_power_eve,
    )
