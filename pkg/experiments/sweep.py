"""
experiments/sweep.py – Monte Carlo parameter sweeps.

Every (value, trial) pair gets its own 64-bit seed derived by hashing
(base seed, value bits, trial), so trials can run in any order or process
and still reproduce.  From that seed three independent streams are spawned:
channels (shared by every scheme), baseline weights and optimizer start.
"""
from __future__ import annotations

import hashlib
import logging
import struct
import time
from multiprocessing import Pool
from typing import List, Optional, Sequence, Tuple

import numpy as np

from core.channel import build_scenario, generate_channels
from core.geometry import build_geometry
from core.metrics import evaluate_state
from core.optimizer import optimize
from core.system import SystemConfig
from data.cache import TrialCache
from data.models import ResultRow, Scheme, SweepSpec, SweepValue
from data.repository import ResultRepository

from .baseline import random_baseline

log = logging.getLogger(__name__)

TrialTask = Tuple[SystemConfig, str, float, int, int, Tuple[str, ...], bool]


def derive_trial_seed(seed: int, value: SweepValue, trial: int) -> int:
    """Stable 64-bit seed from (base seed, IEEE-754 bits of value, trial)."""
    payload = struct.pack("<QdQ", seed % 2**64, float(value), trial)
    return int.from_bytes(hashlib.md5(payload).digest()[:8], "little")


def run_trial(
    config: SystemConfig,
    variable: str,
    value: float,
    trial: int,
    trial_seed: int,
    schemes: Sequence[str],
    timings: bool = False,
) -> List[ResultRow]:
    """One channel realization, every requested scheme on it."""
    try:
        validated = config.validate()
        geometry = build_geometry(validated)
        channel_seq, baseline_seq, init_seq = np.random.SeedSequence(trial_seed).spawn(3)
        channel_rng = np.random.default_rng(channel_seq)
        scenario = build_scenario(validated, channel_rng)
        channels = generate_channels(validated, geometry, scenario, channel_rng, seed=trial_seed)
    except Exception as exc:
        log.warning("trial %d at %s=%g failed before optimisation: %s", trial, variable, value, exc)
        return [ResultRow.failed(variable, value, trial, s, trial_seed, str(exc)) for s in schemes]

    rows: List[ResultRow] = []
    for scheme in schemes:
        try:
            start = time.perf_counter()
            if scheme == Scheme.PROPOSED.value:
                state, trace = optimize(
                    validated, geometry, channels, rng=np.random.default_rng(init_seq)
                )
                report = evaluate_state(state, channels, geometry.phi, validated)
                outer = trace.outer_iters
            else:
                _, report = random_baseline(
                    validated, geometry, channels, np.random.default_rng(baseline_seq)
                )
                outer = 0
            elapsed = (time.perf_counter() - start) * 1e3 if timings else 0.0
        except Exception as exc:
            log.warning("trial %d at %s=%g, scheme %s failed: %s", trial, variable, value, scheme, exc)
            rows.append(ResultRow.failed(variable, value, trial, scheme, trial_seed, str(exc)))
            continue
        rows.append(
            ResultRow(
                sweep_variable=variable,
                sweep_value=float(value),
                trial=trial,
                scheme=scheme,
                secrecy_bits=report.secrecy,
                rate_bob=report.rate_bob,
                rate_eve=report.rate_eve,
                outer_iters=outer,
                runtime_ms=elapsed,
                seed=trial_seed,
            )
        )
    return rows


def _run_task(task: TrialTask) -> List[ResultRow]:
    return run_trial(*task)


def run_sweep(
    spec: SweepSpec,
    max_workers: int = 1,
    timings: bool = False,
    cache: Optional[TrialCache] = None,
) -> List[ResultRow]:
    """
    Run every (value, trial, scheme) of *spec*.

    Rows come back sorted by (value, trial, scheme) whatever the execution
    order; failed trials appear as error rows.
    """
    spec.validate()
    variable = spec.variable.value
    schemes = [s.value for s in spec.schemes]
    log.info(
        "sweep %s over %s: %d trials, schemes=%s, workers=%d",
        variable, spec.values, spec.trials, ",".join(schemes), max_workers,
    )

    rows: List[ResultRow] = []
    tasks: List[TrialTask] = []
    for value in spec.values:
        config = spec.config_for(value)
        for trial in range(spec.trials):
            trial_seed = derive_trial_seed(spec.seed, value, trial)
            pending: List[str] = []
            for scheme in schemes:
                hit = cache.get(config, scheme, trial_seed) if cache is not None else None
                if hit is not None and not timings:
                    hit.runtime_ms = 0.0
                    rows.append(hit)
                else:
                    pending.append(scheme)
            if pending:
                tasks.append((config, variable, float(value), trial, trial_seed, tuple(pending), timings))

    if max_workers > 1 and len(tasks) > 1:
        with Pool(max_workers) as pool:
            batches = pool.map(_run_task, tasks)
    else:
        batches = [_run_task(task) for task in tasks]

    for task, batch in zip(tasks, batches):
        rows.extend(batch)
        if cache is not None:
            for row in batch:
                cache.set(task[0], row.scheme, task[4], row)

    rows.sort(key=lambda r: r.sort_key)
    _log_means(rows)
    return rows


def _log_means(rows: List[ResultRow]) -> None:
    repo = ResultRepository(rows)
    for (value, scheme), mean in repo.mean_secrecy().items():
        log.info("  %s=%g %-8s mean secrecy %.4f bits/s/Hz", rows[0].sweep_variable, value, scheme, mean)
    failures = len(repo.errors())
    if failures:
        log.warning("%d of %d rows failed", failures, len(rows))
