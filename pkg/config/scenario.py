"""
config/scenario.py – Scenario files: JSON objects keyed by SystemConfig fields.
Uses Pydantic V2 style; core validation still runs on the converted config.
"""
from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Optional, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from core.system import AnPowerPolicy, ConfigurationError, SystemConfig


class ScenarioFile(BaseModel):
    """One simulation scenario; every field defaults to the reference setup."""

    model_config = ConfigDict(extra="forbid")

    carrier_frequency: float = Field(default=30e9, gt=0, description="Carrier frequency in Hz.")
    element_spacing: Optional[float] = Field(
        default=None, gt=0, description="Element spacing in metres; λ/3 when omitted."
    )
    num_elements: int = Field(default=25, ge=1, description="M, a perfect square.")
    num_rf_chains: int = Field(default=2, ge=1, description="R, number of RF chains.")
    transmit_power_dbm: float = Field(default=25.0, description="Total budget P_t in dBm.")
    noise_power_bob_dbm: float = Field(default=-75.0)
    noise_power_eve_dbm: float = Field(default=-75.0)
    relative_permittivity: float = Field(default=3.0, ge=1.0)
    rician_factor: float = Field(default=0.0, ge=0.0, description="K; 0 is Rayleigh fading.")
    pathloss_exponent_bob: float = Field(default=2.2, gt=0)
    pathloss_exponent_eve: float = Field(default=2.5, gt=0)
    learning_rate: float = Field(default=0.01, gt=0, description="Holographic step size η.")
    inner_tolerance: float = Field(default=1e-5, gt=0)
    outer_tolerance: float = Field(default=1e-5, gt=0)
    max_inner_iters: int = Field(default=500, ge=1)
    max_outer_iters: int = Field(default=100, ge=1)
    num_starts: int = Field(default=1, ge=1, description="Independent initial draws; the best run is kept.")
    rng_seed: int = Field(default=0, ge=0)
    an_power_policy: AnPowerPolicy = Field(default=AnPowerPolicy.RESIDUAL)
    an_fraction: float = Field(default=0.0, ge=0.0, le=1.0)
    rhs_altitude: float = Field(default=50.0)
    bob_range: float = Field(default=100.0, ge=1, description="Bob distance along boresight in metres.")
    eve_disk_radius: float = Field(default=5.0, gt=0)

    @field_validator("num_elements")
    @classmethod
    def _perfect_square(cls, v: int) -> int:
        if math.isqrt(v) ** 2 != v:
            raise ValueError(f"num_elements must be a perfect square, got {v}")
        return v

    @field_validator(
        "transmit_power_dbm", "noise_power_bob_dbm", "noise_power_eve_dbm", mode="after"
    )
    @classmethod
    def _finite(cls, v: float) -> float:
        if not math.isfinite(v):
            raise ValueError("power levels in dBm must be finite")
        return v

    def to_system_config(self) -> SystemConfig:
        return SystemConfig(**self.model_dump())


def load_scenario(path: Union[str, Path]) -> SystemConfig:
    """
    Read and validate a scenario file.

    Raises
    ------
    ConfigurationError
        When the file is missing, is not JSON, or holds an invalid field.
    """
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError as exc:
        raise ConfigurationError(f"scenario file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigurationError(f"scenario file {path} is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigurationError(f"scenario file {path} must hold a JSON object")

    try:
        scenario = ScenarioFile.model_validate(raw)
    except ValidationError as exc:
        raise ConfigurationError(f"invalid scenario file {path}: {exc}") from exc

    config = scenario.to_system_config()
    config.validate()
    return config
