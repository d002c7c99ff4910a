"""
core/system.py – SystemConfig model with unit conversion and validation.

All internal computation is done in watts and linear SINR; dBm only appears on
the configuration boundary.  :func:`validate` is pure and returns a frozen
:class:`ValidatedConfig` carrying the derived quantities every other module
needs (wavelength, element spacing, powers in watts).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import Any, Optional

SPEED_OF_LIGHT = 299_792_458.0  # m/s


class ConfigurationError(ValueError):
    """Raised when a run parameter is missing, out of range or inconsistent."""


class AnPowerPolicy(str, Enum):
    """How the total budget is split between the beamformer and the AN vector."""

    RESIDUAL = "residual"
    FIXED_FRACTION = "fixed_fraction"


# ---------------------------------------------------------------------------
# Unit conversions
# ---------------------------------------------------------------------------

def dbm_to_watts(p_dbm: float) -> float:
    """Convert a power level in dBm to watts (30 dBm → 1 W)."""
    if not math.isfinite(p_dbm):
        raise ConfigurationError(f"power in dBm must be finite, got {p_dbm!r}")
    try:
        return 10.0 ** ((p_dbm - 30.0) / 10.0)
    except OverflowError as exc:
        raise ConfigurationError(f"power of {p_dbm!r} dBm is out of range") from exc


def watts_to_dbm(p_watts: float) -> float:
    """Convert a strictly positive power in watts to dBm."""
    if not math.isfinite(p_watts) or p_watts <= 0.0:
        raise ConfigurationError(f"power in watts must be positive and finite, got {p_watts!r}")
    return 10.0 * math.log10(p_watts) + 30.0


# ---------------------------------------------------------------------------
# Configuration
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SystemConfig:
    """
    Every run parameter of one RHS-assisted downlink scenario.

    Defaults reproduce the reference simulation setup: 30 GHz carrier,
    λ/3 element spacing, −75 dBm noise at both receivers, ε_r = 3,
    Rayleigh fading (K = 0), path-loss exponents 2.2 (Bob) and 2.5 (Eve),
    η = 0.01 and a 10⁻⁵ convergence threshold.
    """

    carrier_frequency: float = 30e9  # Hz
    element_spacing: Optional[float] = None  # meters; None → λ/3
    num_elements: int = 25  # M, perfect square
    num_rf_chains: int = 2  # R
    transmit_power_dbm: float = 25.0
    noise_power_bob_dbm: float = -75.0
    noise_power_eve_dbm: float = -75.0
    relative_permittivity: float = 3.0
    rician_factor: float = 0.0
    pathloss_exponent_bob: float = 2.2
    pathloss_exponent_eve: float = 2.5
    learning_rate: float = 0.01
    inner_tolerance: float = 1e-5
    outer_tolerance: float = 1e-5
    max_inner_iters: int = 500
    max_outer_iters: int = 100
    num_starts: int = 1  # independent initial draws; the best run is kept
    rng_seed: int = 0
    an_power_policy: AnPowerPolicy = AnPowerPolicy.RESIDUAL
    an_fraction: float = 0.0  # ρ, only read under FIXED_FRACTION

    # Scenario placement
    rhs_altitude: float = 50.0  # meters
    bob_range: float = 100.0  # meters, along boresight
    eve_disk_radius: float = 5.0  # meters

    def with_value(self, field_name: str, value: Any) -> "SystemConfig":
        """Return a copy with one field replaced (used by parameter sweeps)."""
        return replace(self, **{field_name: value})

    def validate(self) -> "ValidatedConfig":
        return validate(self)


@dataclass(frozen=True)
class ValidatedConfig:
    """A checked SystemConfig plus cached derived quantities."""

    config: SystemConfig
    wavelength: float  # meters
    element_spacing: float  # meters
    grid_side: int  # √M
    transmit_power: float  # watts
    noise_power_bob: float  # watts
    noise_power_eve: float  # watts

    @property
    def an_budget(self) -> float:
        """AN power reserved up-front under FIXED_FRACTION, else 0."""
        if self.config.an_power_policy is AnPowerPolicy.FIXED_FRACTION:
            return self.config.an_fraction * self.transmit_power
        return 0.0


def _require_positive(name: str, value: float) -> None:
    if not math.isfinite(value) or value <= 0.0:
        raise ConfigurationError(f"{name} must be positive and finite, got {value!r}")


def validate(config: SystemConfig) -> ValidatedConfig:
    """
    Check every invariant of *config* and derive the cached quantities.

    Raises
    ------
    ConfigurationError
        On a non-square element count, nonpositive power/tolerance/step size,
        a fraction ρ outside [0, 1] or any other out-of-range field.
    """
    m = config.num_elements
    if not isinstance(m, int) or m < 1:
        raise ConfigurationError(f"num_elements must be a positive integer, got {m!r}")
    side = math.isqrt(m)
    if side * side != m:
        raise ConfigurationError(f"num_elements must be a perfect square, got {m!r}")
    if not isinstance(config.num_rf_chains, int) or config.num_rf_chains < 1:
        raise ConfigurationError(
            f"num_rf_chains must be an integer >= 1, got {config.num_rf_chains!r}"
        )

    _require_positive("carrier_frequency", config.carrier_frequency)
    _require_positive("learning_rate", config.learning_rate)
    _require_positive("inner_tolerance", config.inner_tolerance)
    _require_positive("outer_tolerance", config.outer_tolerance)
    if not math.isfinite(config.bob_range) or config.bob_range < 1.0:
        raise ConfigurationError(f"bob_range must be >= 1 m, got {config.bob_range!r}")
    _require_positive("eve_disk_radius", config.eve_disk_radius)
    if config.max_inner_iters < 1 or config.max_outer_iters < 1:
        raise ConfigurationError("max_inner_iters and max_outer_iters must be >= 1")
    if not isinstance(config.num_starts, int) or config.num_starts < 1:
        raise ConfigurationError(f"num_starts must be an integer >= 1, got {config.num_starts!r}")
    if not math.isfinite(config.relative_permittivity) or config.relative_permittivity < 1.0:
        raise ConfigurationError(
            f"relative_permittivity must be >= 1, got {config.relative_permittivity!r}"
        )
    if not math.isfinite(config.rician_factor) or config.rician_factor < 0.0:
        raise ConfigurationError(f"rician_factor must be >= 0, got {config.rician_factor!r}")
    _require_positive("pathloss_exponent_bob", config.pathloss_exponent_bob)
    _require_positive("pathloss_exponent_eve", config.pathloss_exponent_eve)

    policy = AnPowerPolicy(config.an_power_policy)
    if policy is AnPowerPolicy.FIXED_FRACTION and not (0.0 <= config.an_fraction <= 1.0):
        raise ConfigurationError(f"an_fraction must be within [0, 1], got {config.an_fraction!r}")

    wavelength = SPEED_OF_LIGHT / config.carrier_frequency
    spacing = config.element_spacing if config.element_spacing is not None else wavelength / 3.0
    _require_positive("element_spacing", spacing)

    powers = {
        name: dbm_to_watts(getattr(config, f"{name}_dbm"))
        for name in ("transmit_power", "noise_power_bob", "noise_power_eve")
    }
    for name, watts in powers.items():
        _require_positive(f"{name} in watts", watts)

    return ValidatedConfig(
        config=config if policy is config.an_power_policy else replace(config, an_power_policy=policy),
        wavelength=wavelength,
        element_spacing=spacing,
        grid_side=side,
        transmit_power=powers["transmit_power"],
        noise_power_bob=powers["noise_power_bob"],
        noise_power_eve=powers["noise_power_eve"],
    )
