"""
core/channel.py – Scenario placement and Rician-faded RHS→Bob / RHS→Eve channels.

Channel model (per receiver):
  h = √gain · ( √(K/(K+1))·a_LoS + √(1/(K+1))·n )

Where:
  a_LoS  = UPA line-of-sight response, unit-modulus entries
  n      = i.i.d. CN(0, 1) per element (no spatial correlation)
  gain   = (λ/4π)² · d^(−β)   (free-space intercept at 1 m, exponent-law decay)

All randomness comes from the numpy Generator passed in, so a given seed
reproduces a realization bit for bit.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from core.geometry import RhsGeometry
from core.system import ConfigurationError, ValidatedConfig

log = logging.getLogger(__name__)

# K at or above this is treated as a pure line-of-sight channel.
_PURE_LOS_K = 1e12

# The surface lies in the x–y plane and radiates towards −z.
BORESIGHT = np.array([0.0, 0.0, -1.0])


@dataclass(frozen=True)
class ScenarioGeometry:
    rhs_center: np.ndarray  # (3,) metres
    bob_position: np.ndarray
    eve_disk_radius: float
    eve_position: np.ndarray


@dataclass(frozen=True)
class ChannelMeta:
    distance_bob: float
    distance_eve: float
    rician_factor: float
    gain_bob: float
    gain_eve: float
    seed: int | None = None


@dataclass(frozen=True)
class ChannelRealization:
    h_b: np.ndarray  # (M,) complex, RHS → Bob
    g_e: np.ndarray  # (M,) complex, RHS → Eve
    meta: ChannelMeta


# ---------------------------------------------------------------------------
# Deterministic parts
# ---------------------------------------------------------------------------

def los_steering(
    geometry: RhsGeometry, rhs_center: np.ndarray, target_position: np.ndarray
) -> np.ndarray:
    """Entry m = exp(j·|k_f|·(r_m · u)), u the unit direction centre → target."""
    direction = np.asarray(target_position, dtype=float) - np.asarray(rhs_center, dtype=float)
    norm = np.linalg.norm(direction)
    if norm == 0.0:
        raise ConfigurationError("target position coincides with the RHS centre")
    u = direction / norm
    return np.exp(1j * geometry.k_f_mag * (geometry.element_positions @ u))


def path_loss_gain(distance: float, exponent: float, wavelength: float) -> float:
    """Linear gain (λ/4π)²·d^(−β); the model is undefined below the 1 m reference."""
    if not math.isfinite(distance) or distance < 1.0:
        raise ConfigurationError(f"distance must be >= 1 m, got {distance!r}")
    return (wavelength / (4.0 * math.pi)) ** 2 * distance ** (-exponent)


# ---------------------------------------------------------------------------
# Random parts
# ---------------------------------------------------------------------------

def rician_channel(
    los: np.ndarray, rician_factor: float, gain: float, rng: np.random.Generator
) -> np.ndarray:
    """
    Mix the LoS response with i.i.d. CN(0, 1) scattering and apply path loss.

    The scattering draw is always consumed, even for K → ∞, so that the
    random stream advances identically whatever K is.
    """
    m = los.shape[0]
    scatter = (rng.standard_normal(m) + 1j * rng.standard_normal(m)) / math.sqrt(2.0)
    if rician_factor >= _PURE_LOS_K:
        los_weight, nlos_weight = 1.0, 0.0
    else:
        los_weight = math.sqrt(rician_factor / (rician_factor + 1.0))
        nlos_weight = math.sqrt(1.0 / (rician_factor + 1.0))
    return math.sqrt(gain) * (los_weight * los + nlos_weight * scatter)


def sample_eve_position(
    bob_position: np.ndarray, radius: float, rng: np.random.Generator
) -> np.ndarray:
    """Uniform point in the disk of *radius* around Bob, orthogonal to boresight."""
    r = radius * math.sqrt(rng.uniform())
    theta = rng.uniform(0.0, 2.0 * math.pi)
    # Boresight is ±z, so the disk lies in a plane of constant z.
    return np.asarray(bob_position, dtype=float) + np.array(
        [r * math.cos(theta), r * math.sin(theta), 0.0]
    )


def build_scenario(validated: ValidatedConfig, rng: np.random.Generator) -> ScenarioGeometry:
    """Place the RHS at altitude, Bob on boresight, and draw Eve around Bob."""
    config = validated.config
    center = np.array([0.0, 0.0, config.rhs_altitude])
    bob = center + config.bob_range * BORESIGHT
    eve = sample_eve_position(bob, config.eve_disk_radius, rng)
    return ScenarioGeometry(
        rhs_center=center,
        bob_position=bob,
        eve_disk_radius=config.eve_disk_radius,
        eve_position=eve,
    )


def generate_channels(
    validated: ValidatedConfig,
    geometry: RhsGeometry,
    scenario: ScenarioGeometry,
    rng: np.random.Generator,
    seed: int | None = None,
) -> ChannelRealization:
    """Draw Bob's channel, then Eve's, from one stream."""
    config = validated.config
    d_bob = float(np.linalg.norm(scenario.bob_position - scenario.rhs_center))
    d_eve = float(np.linalg.norm(scenario.eve_position - scenario.rhs_center))
    gain_bob = path_loss_gain(d_bob, config.pathloss_exponent_bob, validated.wavelength)
    gain_eve = path_loss_gain(d_eve, config.pathloss_exponent_eve, validated.wavelength)

    h_b = rician_channel(
        los_steering(geometry, scenario.rhs_center, scenario.bob_position),
        config.rician_factor,
        gain_bob,
        rng,
    )
    g_e = rician_channel(
        los_steering(geometry, scenario.rhs_center, scenario.eve_position),
        config.rician_factor,
        gain_eve,
        rng,
    )
    log.debug("channels drawn: d_bob=%.3f m, d_eve=%.3f m, K=%g", d_bob, d_eve, config.rician_factor)
    return ChannelRealization(
        h_b=h_b,
        g_e=g_e,
        meta=ChannelMeta(
            distance_bob=d_bob,
            distance_eve=d_eve,
            rician_factor=config.rician_factor,
            gain_bob=gain_bob,
            gain_eve=gain_eve,
            seed=seed,
        ),
    )
