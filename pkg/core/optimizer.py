"""
core/optimizer.py – Alternating MM optimisation of (v, z, w).

Each outer iteration runs, in order:
1. the digital step (generalized eigenvector + β power scaling),
2. the artificial-noise step (null-space design against Eve),
3. the holographic step (projected gradient ascent over w),
4. feasibility restoration: v rescaled and z re-projected for the new w.

Convergence is judged on the true, clamped secrecy rate.  The outer trace is
recorded but not required to be monotone, so the best iterate seen is what
the loop returns.  With ``num_starts`` > 1 the loop runs from several initial
draws and the best run wins.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Dict, List, Optional, Sequence

import numpy as np

from core.artificial_noise import an_step
from core.channel import ChannelRealization
from core.digital import NumericalError, digital_step, power_scale, signal_budget
from core.geometry import RhsGeometry, assemble_holographic
from core.holographic import HolographicContext, optimize_holographic
from core.metrics import SecrecyReport, evaluate_state
from core.state import BeamformingState
from core.system import AnPowerPolicy, ValidatedConfig

log = logging.getLogger(__name__)

# Strictly positive lower bound for the initial weights: w = 0 is a fixed point.
_W_INIT_LOW = 0.01


class OptimizationError(RuntimeError):
    """A numerical failure inside the loop, with everything needed to replay it."""

    def __init__(self, message: str, instance: Optional[Dict[str, Any]] = None) -> None:
        super().__init__(message)
        self.instance = instance or {}


class TerminationReason(str, Enum):
    CONVERGED = "converged"
    MAX_ITERS = "max_iters"


@dataclass(frozen=True)
class OptimizationRecord:
    iteration: int
    secrecy: float
    rate_bob: float
    rate_eve: float
    power_signal: float
    power_an: float
    inner_iters_holo: int


@dataclass
class OptimizationTrace:
    initial_secrecy: float = 0.0
    records: List[OptimizationRecord] = field(default_factory=list)
    termination: Optional[TerminationReason] = None
    best_iteration: int = 0  # 0 is the initial state

    @property
    def secrecy_sequence(self) -> List[float]:
        return [self.initial_secrecy] + [r.secrecy for r in self.records]

    @property
    def outer_iters(self) -> int:
        return len(self.records)

    @property
    def best_secrecy(self) -> float:
        return self.secrecy_sequence[self.best_iteration]


def converged(secrecy_values: Sequence[float], tolerance: float) -> bool:
    """True iff the last two secrecy values differ by less than *tolerance*."""
    if len(secrecy_values) < 2:
        return False
    return abs(secrecy_values[-1] - secrecy_values[-2]) < tolerance


# ---------------------------------------------------------------------------
# Initialisation
# ---------------------------------------------------------------------------

def initialize(
    validated: ValidatedConfig,
    geometry: RhsGeometry,
    channels: ChannelRealization,
    rng: np.random.Generator,
) -> BeamformingState:
    """w ~ U(0.01, 1), then :func:`state_for_weights`."""
    w = rng.uniform(_W_INIT_LOW, 1.0, size=geometry.num_elements)
    return state_for_weights(w, validated, geometry, channels)


def state_for_weights(
    w: np.ndarray,
    validated: ValidatedConfig,
    geometry: RhsGeometry,
    channels: ChannelRealization,
) -> BeamformingState:
    """
    v along Wᴴ h_b scaled into the budget, z = 0 (or loaded with ρ·P_t under
    a fixed AN fraction).
    """
    r = geometry.num_rf_chains
    W = assemble_holographic(w, geometry.phi)

    z = np.zeros(r, dtype=complex)
    matched = W.conj().T @ channels.h_b
    norm = float(np.linalg.norm(matched))
    v = matched / norm if norm > 0.0 else np.zeros(r, dtype=complex)
    state = BeamformingState(v=v, w=w, z=z)

    if validated.config.an_power_policy is AnPowerPolicy.FIXED_FRACTION:
        state = state.evolve(z=an_step(state, channels, W, validated))
    v = power_scale(v, W, signal_budget(validated, state.z))
    return state.evolve(v=v)


# ---------------------------------------------------------------------------
# Main loop
# ---------------------------------------------------------------------------

def _instance_dump(
    validated: ValidatedConfig, channels: ChannelRealization, state: BeamformingState
) -> Dict[str, Any]:
    from dataclasses import asdict

    from data.serialization import channel_to_dict, complex_to_pairs

    config = asdict(validated.config)
    config["an_power_policy"] = validated.config.an_power_policy.value
    return {
        "config": config,
        "channels": channel_to_dict(channels),
        "state": {
            "v": complex_to_pairs(state.v),
            "w": state.w.tolist(),
            "z": complex_to_pairs(state.z),
        },
    }


def outer_iteration(
    state: BeamformingState,
    validated: ValidatedConfig,
    geometry: RhsGeometry,
    channels: ChannelRealization,
) -> tuple[BeamformingState, int]:
    """
    One digital → AN → holographic cycle followed by feasibility restoration:
    z re-projected for the new W and v rescaled to use the remaining budget.
    """
    config = validated.config
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
    w, inner = optimize_holographic(
        state.w, context, config.learning_rate, config.inner_tolerance, config.max_inner_iters
    )
    v, z = context.restore(w)
    return BeamformingState(v=v, w=w, z=z), inner


def optimize(
    validated: ValidatedConfig,
    geometry: RhsGeometry,
    channels: ChannelRealization,
    rng: Optional[np.random.Generator] = None,
    initial_state: Optional[BeamformingState] = None,
    on_iteration: Optional[Callable[[int, BeamformingState], None]] = None,
) -> tuple[BeamformingState, OptimizationTrace]:
    """
    Run the alternating loop until the secrecy rate settles.

    Without *initial_state*, ``num_starts`` states are drawn one after the
    other from *rng* and each is optimised; the run reaching the highest
    secrecy is returned.  The returned state is the best iterate of that
    run, which is not always its last one.

    *on_iteration* is called with (iteration, state) after every outer
    iteration of every run; the acceptance checks use it to inspect
    intermediate states.

    Raises
    ------
    OptimizationError
        Wrapping any :class:`NumericalError`, with config, channels and the
        failing state attached.
    """
    config = validated.config
    if initial_state is not None:
        return _alternate(initial_state, validated, geometry, channels, on_iteration)

    rng = rng if rng is not None else np.random.default_rng(config.rng_seed)
    best = _alternate(
        initialize(validated, geometry, channels, rng), validated, geometry, channels, on_iteration
    )
    for start in range(1, config.num_starts):
        result = _alternate(
            initialize(validated, geometry, channels, rng), validated, geometry, channels, on_iteration
        )
        log.debug(
            "start %d: secrecy=%.6f (best so far %.6f)",
            start,
            result[1].best_secrecy,
            best[1].best_secrecy,
        )
        if result[1].best_secrecy > best[1].best_secrecy:
            best = result
    return best


def _alternate(
    state: BeamformingState,
    validated: ValidatedConfig,
    geometry: RhsGeometry,
    channels: ChannelRealization,
    on_iteration: Optional[Callable[[int, BeamformingState], None]],
) -> tuple[BeamformingState, OptimizationTrace]:
    config = validated.config
    trace = OptimizationTrace(
        initial_secrecy=evaluate_state(state, channels, geometry.phi, validated).secrecy
    )
    best_state = state
    previous = trace.initial_secrecy

    for iteration in range(1, config.max_outer_iters + 1):
        try:
            state, inner = outer_iteration(state, validated, geometry, channels)
        except NumericalError as exc:
            raise OptimizationError(
                f"outer iteration {iteration} failed: {exc}",
                {**_instance_dump(validated, channels, state), "detail": exc.instance},
            ) from exc

        if on_iteration is not None:
            on_iteration(iteration, state)
        report = evaluate_state(state, channels, geometry.phi, validated)
        trace.records.append(_record(iteration, report, inner))
        log.debug(
            "iter %d: secrecy=%.6f R_b=%.6f R_e=%.6f P_s=%.3e P_an=%.3e inner=%d",
            iteration,
            report.secrecy,
            report.rate_bob,
            report.rate_eve,
            report.power_signal,
            report.power_an,
            inner,
        )
        if report.secrecy < previous - 1e-9:
            log.warning(
                "secrecy decreased at iteration %d: %.6f -> %.6f", iteration, previous, report.secrecy
            )
        if report.secrecy > trace.best_secrecy:
            best_state, trace.best_iteration = state, iteration
        previous = report.secrecy

        if converged(trace.secrecy_sequence, config.outer_tolerance):
            trace.termination = TerminationReason.CONVERGED
            break
    else:
        trace.termination = TerminationReason.MAX_ITERS

    return best_state, trace


def _record(iteration: int, report: SecrecyReport, inner: int) -> OptimizationRecord:
    return OptimizationRecord(
        iteration=iteration,
        secrecy=report.secrecy,
        rate_bob=report.rate_bob,
        rate_eve=report.rate_eve,
        power_signal=report.power_signal,
        power_an=report.power_an,
        inner_iters_holo=inner,
    )


def final_secrecy(trace: OptimizationTrace) -> float:
    """Secrecy of the state :func:`optimize` returned for *trace*."""
    return trace.best_secrecy

