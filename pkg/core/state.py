from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from core.geometry import assemble_holographic


@dataclass(frozen=True)
class BeamformingState:
    v: np.ndarray  # (R,) complex digital beamformer
    w: np.ndarray  # (M,) real holographic weights in [0, 1]
    z: np.ndarray  # (R,) complex artificial-noise vector

    def holographic(self, phi: np.ndarray) -> np.ndarray:
        return assemble_holographic(self.w, phi)

    def evolve(self, **changes: np.ndarray) -> "BeamformingState":
        return replace(self, **changes)
