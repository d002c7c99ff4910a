"""
experiments/baseline.py – Random-holographic-weights reference scheme.

w is drawn once and never optimized; v and z get a single digital step and
a single AN step for that w.
"""
from __future__ import annotations

import numpy as np

from core.artificial_noise import an_step
from core.channel import ChannelRealization
from core.digital import digital_step
from core.geometry import RhsGeometry
from core.metrics import SecrecyReport, evaluate_state
from core.optimizer import state_for_weights
from core.state import BeamformingState
from core.system import ValidatedConfig


def random_baseline(
    validated: ValidatedConfig,
    geometry: RhsGeometry,
    channels: ChannelRealization,
    rng: np.random.Generator,
) -> tuple[BeamformingState, SecrecyReport]:
    w = rng.uniform(0.0, 1.0, size=geometry.num_elements)
    state = state_for_weights(w, validated, geometry, channels)
    W = state.holographic(geometry.phi)

    state = state.evolve(v=digital_step(state, channels, W, validated))
    state = state.evolve(z=an_step(state, channels, W, validated))
    return state, evaluate_state(state, channels, geometry.phi, validated)
