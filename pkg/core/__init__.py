"""Core numerical engine – public API."""

from core.system import (
    AnPowerPolicy,
    ConfigurationError,
    SystemConfig,
    ValidatedConfig,
    dbm_to_watts,
    validate,
    watts_to_dbm,
)
from core.geometry import RhsGeometry, build_geometry
from core.channel import ChannelRealization, ScenarioGeometry, build_scenario, generate_channels
from core.metrics import SecrecyReport, evaluate, evaluate_state
from core.state import BeamformingState
from core.digital import NumericalError, digital_step
from core.artificial_noise import an_step
from core.holographic import optimize_holographic
from core.optimizer import (
    OptimizationError,
    OptimizationTrace,
    TerminationReason,
    converged,
    initialize,
    optimize,
)

__all__ = [
    "AnPowerPolicy",
    "ConfigurationError",
    "SystemConfig",
    "ValidatedConfig",
    "dbm_to_watts",
    "validate",
    "watts_to_dbm",
    "RhsGeometry",
    "build_geometry",
    "ChannelRealization",
    "ScenarioGeometry",
    "build_scenario",
    "generate_channels",
    "SecrecyReport",
    "evaluate",
    "evaluate_state",
    "BeamformingState",
    "NumericalError",
    "digital_step",
    "an_step",
    "optimize_holographic",
    "OptimizationError",
    "OptimizationTrace",
    "TerminationReason",
    "converged",
    "initialize",
    "optimize",
]
