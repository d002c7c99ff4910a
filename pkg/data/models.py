from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Union

from core.system import ConfigurationError, SystemConfig

SweepValue = Union[int, float]


class SweepVariable(str, Enum):
    """Swept quantities, keyed by their CLI spelling."""

    POWER = "power"
    RHS_SIZE = "rhs-size"
    RF_CHAINS = "rf-chains"
    RICIAN = "rician"

    @property
    def config_field(self) -> str:
        return _CONFIG_FIELDS[self]

    def coerce(self, value: SweepValue) -> SweepValue:
        """Cast a parsed value to the type its SystemConfig field expects."""
        if self in (SweepVariable.RHS_SIZE, SweepVariable.RF_CHAINS):
            if float(value) != int(value):
                raise ConfigurationError(f"{self.value} values must be integers, got {value!r}")
            return int(value)
        return float(value)


_CONFIG_FIELDS = {
    SweepVariable.POWER: "transmit_power_dbm",
    SweepVariable.RHS_SIZE: "num_elements",
    SweepVariable.RF_CHAINS: "num_rf_chains",
    SweepVariable.RICIAN: "rician_factor",
}


class Scheme(str, Enum):
    PROPOSED = "proposed"
    RANDOM = "random"


@dataclass(slots=True)
class ResultRow:
    sweep_variable: str
    sweep_value: float
    trial: int
    scheme: str
    secrecy_bits: float
    rate_bob: float
    rate_eve: float
    outer_iters: Optional[int]
    runtime_ms: float
    seed: int
    # Set on failed trials; the CSV scheme column becomes "<scheme>:error".
    error: Optional[str] = None

    @property
    def is_error(self) -> bool:
        return self.error is not None

    @property
    def sort_key(self) -> tuple:
        return (self.sweep_value, self.trial, self.scheme)

    @classmethod
    def failed(
        cls,
        variable: str,
        value: float,
        trial: int,
        scheme: str,
        seed: int,
        error: str,
    ) -> "ResultRow":
        nan = math.nan
        return cls(variable, value, trial, scheme, nan, nan, nan, None, nan, seed, error)


@dataclass(slots=True)
class SweepSpec:
    variable: SweepVariable
    values: List[SweepValue]
    trials: int
    schemes: List[Scheme]
    base: SystemConfig = field(default_factory=SystemConfig)
    seed: int = 0

    def validate(self) -> None:
        if not self.values:
            raise ConfigurationError("sweep values must be nonempty")
        self.values = [self.variable.coerce(v) for v in self.values]
        if any(b <= a for a, b in zip(self.values, self.values[1:])):
            raise ConfigurationError(f"sweep values must be strictly increasing, got {self.values!r}")
        if self.variable is SweepVariable.RHS_SIZE:
            for v in self.values:
                if v < 1 or math.isqrt(v) ** 2 != v:
                    raise ConfigurationError(f"rhs-size values must be perfect squares, got {v!r}")
        if self.trials < 1:
            raise ConfigurationError(f"trials must be >= 1, got {self.trials!r}")
        if not self.schemes:
            raise ConfigurationError("at least one scheme is required")
        if self.seed < 0 or self.seed >= 2**64:
            raise ConfigurationError(f"seed must be an unsigned 64-bit integer, got {self.seed!r}")
        self.schemes = [Scheme(s) for s in self.schemes]
        for value in self.values:
            self.config_for(value).validate()

    def config_for(self, value: SweepValue) -> SystemConfig:
        return self.base.with_value(self.variable.config_field, value)


def parse_values(text: str) -> List[float]:
    """Parse a comma-separated list such as ``"10,15,20"``."""
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise ConfigurationError(f"could not parse sweep values {text!r}") from exc


def parse_schemes(text: str) -> List[Scheme]:
    try:
        return [Scheme(part.strip().lower()) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise ConfigurationError(f"unknown scheme in {text!r}") from exc

