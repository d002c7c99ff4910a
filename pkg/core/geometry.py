"""
core/geometry.py – RHS element grid, feed layout, wave numbers and the fixed
reference-phase matrix Φ.

The holographic beamformer is W = diag(w)·Φ: Φ holds the phase the reference
wave accumulates travelling from each feed to each element, w the real
amplitude weights in [0, 1].
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from core.system import SPEED_OF_LIGHT, ConfigurationError, ValidatedConfig


@dataclass(frozen=True)
class RhsGeometry:
    """Element/feed positions (local frame, metres) and the reference phases."""

    element_positions: np.ndarray  # (M, 3), centred on the RHS centre, z = 0
    feed_positions: np.ndarray  # (R, 3)
    k_f_mag: float  # rad/m, free space
    k_s_mag: float  # rad/m, inside the substrate
    phi: np.ndarray  # (M, R) complex, unit modulus
    spacing: float

    @property
    def num_elements(self) -> int:
        return self.element_positions.shape[0]

    @property
    def num_rf_chains(self) -> int:
        return self.feed_positions.shape[0]


def wave_numbers(frequency: float, relative_permittivity: float) -> tuple[float, float]:
    """Return (|k_f|, |k_s|) with |k_s| = √ε_r · |k_f|."""
    if not math.isfinite(frequency) or frequency <= 0.0:
        raise ConfigurationError(f"frequency must be positive, got {frequency!r}")
    if relative_permittivity < 1.0:
        raise ConfigurationError(
            f"relative_permittivity must be >= 1, got {relative_permittivity!r}"
        )
    k_f = 2.0 * math.pi * frequency / SPEED_OF_LIGHT
    return k_f, math.sqrt(relative_permittivity) * k_f


def build_grid(num_elements: int, spacing: float) -> np.ndarray:
    """
    Lay out a √M × √M planar grid in the z = 0 plane, centred on the origin.

    Ordering is row-major: element m sits at row m // √M, column m % √M, with
    rows running along y and columns along x.
    """
    side = math.isqrt(num_elements) if num_elements > 0 else 0
    if num_elements < 1 or side * side != num_elements:
        raise ConfigurationError(f"num_elements must be a perfect square, got {num_elements!r}")
    if spacing <= 0.0:
        raise ConfigurationError(f"spacing must be positive, got {spacing!r}")

    offsets = (np.arange(side) - (side - 1) / 2.0) * spacing
    ys, xs = np.meshgrid(offsets, offsets, indexing="ij")
    positions = np.zeros((num_elements, 3))
    positions[:, 0] = xs.ravel()
    positions[:, 1] = ys.ravel()
    return positions


def feed_positions(num_elements: int, num_rf_chains: int, spacing: float) -> np.ndarray:
    """R feeds evenly spaced along the lower x-edge of the aperture."""
    if num_rf_chains < 1:
        raise ConfigurationError(f"num_rf_chains must be >= 1, got {num_rf_chains!r}")
    aperture = math.isqrt(num_elements) * spacing
    feeds = np.zeros((num_rf_chains, 3))
    feeds[:, 0] = -aperture / 2.0 + (np.arange(num_rf_chains) + 0.5) * aperture / num_rf_chains
    feeds[:, 1] = -aperture / 2.0
    return feeds


def reference_phase_matrix(
    element_positions: np.ndarray, feeds: np.ndarray, k_s_mag: float
) -> np.ndarray:
    """
    Φ[m, k] = exp(−j·|k_s|·d_mk), d_mk the in-plane feed-to-element distance.

    The scalar-distance reading of the reference-wave phase lives only here so
    a different propagation model can replace it.
    """
    delta = element_positions[:, None, :2] - feeds[None, :, :2]
    distances = np.linalg.norm(delta, axis=-1)
    return np.exp(-1j * k_s_mag * distances)


def assemble_holographic(w: np.ndarray, phi: np.ndarray) -> np.ndarray:
    """W = diag(w)·Φ; raises ValueError when w leaves the box [0, 1]."""
    w = np.asarray(w, dtype=float)
    if w.shape != (phi.shape[0],):
        raise ValueError(f"w must have shape ({phi.shape[0]},), got {w.shape}")
    if np.any(w < 0.0) or np.any(w > 1.0):
        raise ValueError("holographic weights must lie within [0, 1]")
    return w[:, None] * phi


def build_geometry(validated: ValidatedConfig) -> RhsGeometry:
    """Construct the full RHS description for a validated configuration."""
    config = validated.config
    k_f, k_s = wave_numbers(config.carrier_frequency, config.relative_permittivity)
    elements = build_grid(config.num_elements, validated.element_spacing)
    feeds = feed_positions(config.num_elements, config.num_rf_chains, validated.element_spacing)
    return RhsGeometry(
        element_positions=elements,
        feed_positions=feeds,
        k_f_mag=k_f,
        k_s_mag=k_s,
        phi=reference_phase_matrix(elements, feeds, k_s),
        spacing=validated.element_spacing,
    )
