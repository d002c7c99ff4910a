"""
core/digital.py – One MM update of the digital beamformer v.

Per receiver the log-rate is majorized at the anchor v_t by its first-order
Taylor bound, which over v is the quadratic form

  vᴴ M v,   M = Wᴴ h hᴴ W / (b·(1 + x_t)),   b = |hᴴ W z|² + σ²

The step maximizes vᴴ (M_bob − M_eve) v over the generalized unit sphere of
Reff = Wᴴ W (a Hermitian pencil), then rescales v into the power budget.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, Optional

import numpy as np
import scipy.linalg

from core.channel import ChannelRealization
from core.state import BeamformingState
from core.system import AnPowerPolicy, ValidatedConfig

log = logging.getLogger(__name__)

_RIDGE_SCALE = 1e-10
_RESIDUAL_TOL = 1e-8


class NumericalError(RuntimeError):
    """Raised when a decomposition fails; ``instance`` holds the inputs."""

    def __init__(self, message: str, instance: Optional[Dict[str, Any]] = None) -> None:
        super().__init__(message)
        self.instance = instance or {}


@dataclass(frozen=True)
class SurrogateQuadratic:
    matrix: np.ndarray  # Hermitian
    anchor: np.ndarray
    constant: float  # bits
    b: float  # watts


def _hermitian(matrix: np.ndarray) -> np.ndarray:
    return 0.5 * (matrix + matrix.conj().T)


def _dump(**arrays: np.ndarray) -> Dict[str, Any]:
    from data.serialization import complex_to_pairs

    return {name: complex_to_pairs(value) for name, value in arrays.items()}


# ---------------------------------------------------------------------------
# Scalar majorizer
# ---------------------------------------------------------------------------

def majorizer_coefficient(x_t: float) -> tuple[float, float]:
    """
    Return (slope, offset) of the tangent to ln(1 + x) at x_t.

    ln(1 + x) ≤ offset + slope·x for every x ≥ 0, with equality at x = x_t.
    """
    if x_t < 0.0:
        raise ValueError(f"x_t must be >= 0, got {x_t!r}")
    slope = 1.0 / (1.0 + x_t)
    offset = math.log1p(x_t) - x_t * slope
    return slope, offset


def taylor_bound_bits(x: float, x_t: float) -> float:
    """Exact tangent bound on log2(1 + x), built at x_t."""
    slope, offset = majorizer_coefficient(x_t)
    return (offset + slope * x) / math.log(2.0)


def quotient_surrogate_bits(x: float, x_t: float) -> float:
    """
    The c + vᴴMv form used by the optimizer.

    Sits above :func:`taylor_bound_bits` by x_t/(ln2·(1 + x_t)) everywhere,
    so both share gradient and maximizer.
    """
    slope, _ = majorizer_coefficient(x_t)
    return math.log2(1.0 + x_t) + slope * x / math.log(2.0)


# ---------------------------------------------------------------------------
# Surrogate matrices
# ---------------------------------------------------------------------------

def surrogate_matrix_v(
    channel: np.ndarray,
    W: np.ndarray,
    v_t: np.ndarray,
    z: np.ndarray,
    noise: float,
) -> SurrogateQuadratic:
    """Build the quadratic surrogate over v for one receiver at anchor *v_t*."""
    if noise <= 0.0:
        raise ValueError(f"noise power must be positive, got {noise!r}")
    effective = W.conj().T @ channel  # Wᴴ h
    b = float(abs(np.vdot(effective, z)) ** 2) + noise
    x_t = float(abs(np.vdot(effective, v_t)) ** 2) / b
    A = np.outer(effective, effective.conj())
    return SurrogateQuadratic(
        matrix=_hermitian(A / (b * (1.0 + x_t))),
        anchor=np.array(v_t, dtype=complex),
        constant=math.log2(1.0 + x_t),
        b=b,
    )


def build_qv(surr_bob: SurrogateQuadratic, surr_eve: SurrogateQuadratic) -> np.ndarray:
    """Q_v = M_bob − M_eve, symmetrized; may be indefinite."""
    if surr_bob.matrix.shape != surr_eve.matrix.shape:
        raise ValueError(
            f"surrogate dimensions differ: {surr_bob.matrix.shape} vs {surr_eve.matrix.shape}"
        )
    return _hermitian(surr_bob.matrix - surr_eve.matrix)


# ---------------------------------------------------------------------------
# Hermitian pencil
# ---------------------------------------------------------------------------

def ridge(reff: np.ndarray) -> float:
    """δ = 1e-10·trace(Reff)/R, or 1e-10 when Reff is zero."""
    trace = float(np.real(np.trace(reff)))
    if trace <= 0.0:
        return _RIDGE_SCALE
    return _RIDGE_SCALE * trace / reff.shape[0]


def solve_generalized_eig(Q: np.ndarray, reff: np.ndarray) -> tuple[np.ndarray, float]:
    """
    Principal eigenpair of the pencil (Q, Reff + δI).

    The vector satisfies vᴴ(Reff + δI)v = 1 and its largest-magnitude entry
    is real and positive.

    Raises
    ------
    NumericalError
        When the decomposition fails or its residual exceeds 1e-8·‖Q‖.
    """
    Q = _hermitian(np.asarray(Q, dtype=complex))
    reff = _hermitian(np.asarray(reff, dtype=complex))
    B = reff + ridge(reff) * np.eye(reff.shape[0])

    try:
        eigenvalues, eigenvectors = scipy.linalg.eigh(Q, B)
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise NumericalError(
            f"generalized eigendecomposition failed: {exc}", _dump(Q=Q, reff=reff)
        ) from exc

    lam = float(eigenvalues[-1])
    v = eigenvectors[:, -1].astype(complex)
    pivot = v[int(np.argmax(np.abs(v)))]
    if pivot != 0:
        v = v * (abs(pivot) / pivot)

    residual = float(np.linalg.norm(Q @ v - lam * (B @ v)))
    scale = float(np.linalg.norm(Q, 2))
    if residual > _RESIDUAL_TOL * scale + np.finfo(float).tiny:
        raise NumericalError(
            f"eigen residual {residual:.3e} exceeds tolerance for ‖Q‖={scale:.3e}",
            _dump(Q=Q, reff=reff),
        )
    return v, lam


# ---------------------------------------------------------------------------
# Power scaling and the full step
# ---------------------------------------------------------------------------

def power_scale(v: np.ndarray, W: np.ndarray, p_available: float) -> np.ndarray:
    """β·v with β = min(1, √(P_av/‖Wv‖²))."""
    if p_available < 0.0:
        raise ValueError(f"available power must be >= 0, got {p_available!r}")
    if p_available == 0.0:
        return np.zeros_like(v)
    p_signal = float(np.linalg.norm(W @ v) ** 2)
    if p_signal <= p_available:
        return v
    return v * math.sqrt(p_available / p_signal)


def fill_budget(v: np.ndarray, W: np.ndarray, p_available: float) -> np.ndarray:
    """v rescaled up or down so that ‖W v‖² = P_av; a zero signal stays zero."""
    if p_available < 0.0:
        raise ValueError(f"available power must be >= 0, got {p_available!r}")
    if p_available == 0.0:
        return np.zeros_like(v)
    p_signal = float(np.linalg.norm(W @ v) ** 2)
    if p_signal == 0.0:
        return v
    return v * math.sqrt(p_available / p_signal)


def signal_budget(validated: ValidatedConfig, z: np.ndarray) -> float:
    """Power left for W v given the current AN vector."""
    p_t = validated.transmit_power
    if validated.config.an_power_policy is AnPowerPolicy.FIXED_FRACTION:
        return (1.0 - validated.config.an_fraction) * p_t
    return max(0.0, p_t - float(np.linalg.norm(z) ** 2))


def digital_step(
    state: BeamformingState,
    channels: ChannelRealization,
    W: np.ndarray,
    validated: ValidatedConfig,
) -> np.ndarray:
    """Return the next digital beamformer for fixed W and z."""
    surr_bob = surrogate_matrix_v(channels.h_b, W, state.v, state.z, validated.noise_power_bob)
    surr_eve = surrogate_matrix_v(channels.g_e, W, state.v, state.z, validated.noise_power_eve)
    Q = build_qv(surr_bob, surr_eve)
    v, lam = solve_generalized_eig(Q, W.conj().T @ W)
    log.debug("digital step: λ_max=%.6e", lam)
    return power_scale(v, W, signal_budget(validated, state.z))
