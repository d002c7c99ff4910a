"""
core/artificial_noise.py – Artificial-noise design.

z lives in the null space of Bob's effective channel H_b = Wᴴ h_b, so Bob
never sees it, and within that subspace it points along the direction that
puts the most interference on Eve.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from core.channel import ChannelRealization
from core.state import BeamformingState
from core.system import AnPowerPolicy, ValidatedConfig


@dataclass(frozen=True)
class NullSpaceBasis:
    basis: np.ndarray  # (R, k) orthonormal columns, k ∈ {0, R−1, R}
    effective_channel: np.ndarray  # (R,)

    @property
    def is_empty(self) -> bool:
        return self.basis.shape[1] == 0


def effective_bob_channel(W: np.ndarray, h_b: np.ndarray) -> np.ndarray:
    return W.conj().T @ h_b


def null_space(effective_channel: np.ndarray) -> NullSpaceBasis:
    """Orthonormal basis of {x : H_bᴴ x = 0}."""
    h = np.asarray(effective_channel, dtype=complex)
    basis = scipy.linalg.null_space(h.conj()[None, :])
    return NullSpaceBasis(basis=basis.astype(complex), effective_channel=h)


def projected_interference(basis: NullSpaceBasis, W: np.ndarray, g_e: np.ndarray) -> np.ndarray:
    """G̃ = Nᴴ (Wᴴ g gᴴ W) N."""
    reach = basis.basis.conj().T @ (W.conj().T @ g_e)
    return np.outer(reach, reach.conj())


def an_vector(
    basis: NullSpaceBasis, W: np.ndarray, g_e: np.ndarray, p_available: float
) -> np.ndarray:
    """√P_av · N u with u the unit principal eigenvector of G̃."""
    r = basis.basis.shape[0]
    if p_available < 0.0:
        raise ValueError(f"available power must be >= 0, got {p_available!r}")
    if basis.is_empty or p_available == 0.0:
        return np.zeros(r, dtype=complex)

    G = projected_interference(basis, W, g_e)
    _, vectors = scipy.linalg.eigh(0.5 * (G + G.conj().T))
    u = vectors[:, -1].astype(complex)
    u /= np.linalg.norm(u)
    pivot = u[int(np.argmax(np.abs(u)))]
    u *= abs(pivot) / pivot
    return math.sqrt(p_available) * (basis.basis @ u)


def an_budget(validated: ValidatedConfig, W: np.ndarray, v: np.ndarray) -> float:
    """Residual power after the signal, or ρ·P_t under a fixed split."""
    if validated.config.an_power_policy is AnPowerPolicy.FIXED_FRACTION:
        return validated.an_budget
    return max(0.0, validated.transmit_power - float(np.linalg.norm(W @ v) ** 2))


def an_step(
    state: BeamformingState,
    channels: ChannelRealization,
    W: np.ndarray,
    validated: ValidatedConfig,
) -> np.ndarray:
    basis = null_space(effective_bob_channel(W, channels.h_b))
    return an_vector(basis, W, channels.g_e, an_budget(validated, W, state.v))


def reproject(
    z: np.ndarray, W: np.ndarray, channels: ChannelRealization
) -> np.ndarray:
    """
    Move z back into the null space of the current H_b, keeping ‖z‖².

    When the projection vanishes the vector is redesigned at the same power.
    """
    power = float(np.linalg.norm(z) ** 2)
    if power == 0.0:
        return z
    basis = null_space(effective_bob_channel(W, channels.h_b))
    if basis.is_empty:
        return np.zeros_like(z)
    projected = basis.basis @ (basis.basis.conj().T @ z)
    norm = float(np.linalg.norm(projected))
    if norm <= 1e-12 * math.sqrt(power):
        return an_vector(basis, W, channels.g_e, power)
    return projected * (math.sqrt(power) / norm)
