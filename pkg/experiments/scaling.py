"""
experiments/scaling.py – Optimizer runtime versus surface size.

Fits t = c·M^p by least squares in log–log space.
"""
from __future__ import annotations

import logging
import time
from dataclasses import dataclass
from typing import Dict, Sequence

import numpy as np

from core.channel import build_scenario, generate_channels
from core.geometry import build_geometry
from core.optimizer import optimize
from core.system import SystemConfig

log = logging.getLogger(__name__)

EXPONENT_RANGE = (1.6, 2.6)


@dataclass(frozen=True)
class ScalingFit:
    exponent: float
    coefficient: float
    medians_ms: Dict[int, float]

    @property
    def within_range(self) -> bool:
        lo, hi = EXPONENT_RANGE
        return lo <= self.exponent <= hi


def fit_power_law(sizes: Sequence[float], times: Sequence[float]) -> tuple[float, float]:
    """Return (p, c) with t ≈ c·M^p."""
    if len(sizes) != len(times) or len(sizes) < 2:
        raise ValueError("need at least two (size, time) pairs")
    if min(sizes) <= 0 or min(times) <= 0:
        raise ValueError("sizes and times must be positive")
    slope, intercept = np.polyfit(np.log(sizes), np.log(times), 1)
    return float(slope), float(np.exp(intercept))


def median_runtime_ms(base: SystemConfig, num_elements: int, instances: int, seed: int) -> float:
    validated = base.with_value("num_elements", num_elements).validate()
    geometry = build_geometry(validated)
    runtimes = []
    for seq in np.random.SeedSequence([seed, num_elements]).spawn(instances):
        channel_seq, init_seq = seq.spawn(2)
        rng = np.random.default_rng(channel_seq)
        channels = generate_channels(validated, geometry, build_scenario(validated, rng), rng)
        start = time.perf_counter()
        optimize(validated, geometry, channels, rng=np.random.default_rng(init_seq))
        runtimes.append((time.perf_counter() - start) * 1e3)
    return float(np.median(runtimes))


def measure_scaling(
    sizes: Sequence[int] = (16, 36, 64, 100),
    instances: int = 5,
    base: SystemConfig = SystemConfig(),
    seed: int = 0,
) -> ScalingFit:
    medians = {m: median_runtime_ms(base, m, instances, seed) for m in sizes}
    for m, t in medians.items():
        log.info("M=%d: median optimizer runtime %.1f ms", m, t)
    p, c = fit_power_law(list(medians), list(medians.values()))
    return ScalingFit(exponent=p, coefficient=c, medians_ms=medians)
