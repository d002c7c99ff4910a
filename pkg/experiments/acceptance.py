"""
experiments/acceptance.py – Property and trend checks behind ``holosec check``.

Each check takes its instance counts as arguments (defaults are the full
counts) and returns an :class:`AcceptanceResult`; none of them raise on a
failed property.
"""
from __future__ import annotations

import filecmp
import itertools
import logging
import math
import tempfile
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Dict, List, Sequence

import numpy as np

from core.artificial_noise import an_vector, effective_bob_channel, null_space, projected_interference
from core.channel import ChannelMeta, ChannelRealization, build_scenario, generate_channels
from core.digital import majorizer_coefficient, solve_generalized_eig
from core.geometry import build_geometry
from core.holographic import gradient, quadratic_form_matrix, surrogate_qw
from core.optimizer import final_secrecy, optimize
from core.state import BeamformingState
from core.system import SystemConfig
from data.models import Scheme, SweepSpec, SweepVariable
from data.repository import ResultRepository
from data.results import write_csv

from .sweep import run_sweep
from .trends import TrendReport, nonincreasing, proposed_beats_random, strictly_increasing

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class AcceptanceResult:
    name: str
    passed: bool
    detail: str
    seconds: float


def _timed(name: str, body: Callable[[], tuple[bool, str]]) -> AcceptanceResult:
    start = time.perf_counter()
    passed, detail = body()
    seconds = time.perf_counter() - start
    log.info("%s: %s (%s, %.1fs)", name, "PASS" if passed else "FAIL", detail, seconds)
    return AcceptanceResult(name, passed, detail, seconds)


def _crandn(rng: np.random.Generator, *shape: int) -> np.ndarray:
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / math.sqrt(2.0)


def _random_phi(rng: np.random.Generator, m: int, r: int) -> np.ndarray:
    return np.exp(1j * rng.uniform(0.0, 2.0 * math.pi, size=(m, r)))


def _random_channels(rng: np.random.Generator, m: int) -> ChannelRealization:
    nan = math.nan
    return ChannelRealization(
        h_b=_crandn(rng, m), g_e=_crandn(rng, m), meta=ChannelMeta(nan, nan, nan, nan, nan)
    )


# ---------------------------------------------------------------------------
# Component properties
# ---------------------------------------------------------------------------

def check_majorizer(pairs: int = 10_000, seed: int = 1) -> AcceptanceResult:
    def body() -> tuple[bool, str]:
        rng = np.random.default_rng(seed)
        worst_slack = math.inf
        tangent_gap = 0.0
        strict = True
        for x, x_t in rng.uniform(0.0, 1e3, size=(pairs, 2)):
            slope, offset = majorizer_coefficient(x_t)
            slack = offset + slope * x - math.log1p(x)
            worst_slack = min(worst_slack, slack)
            tangent_gap = max(tangent_gap, abs(offset + slope * x_t - math.log1p(x_t)))
            if abs(x - x_t) > 1e-3 and slack <= 1e-12:
                strict = False
        passed = worst_slack >= -1e-12 and tangent_gap <= 1e-12 and strict
        return passed, f"min slack {worst_slack:.2e}, tangent gap {tangent_gap:.2e}"

    return _timed("majorizer soundness", body)


def check_quadratic_identity(instances: int = 1_000, seed: int = 2) -> AcceptanceResult:
    """
    wᵀ Re(B) w against |hᴴ diag(w) Φ v|² on random instances.

    Errors are relative to (Σ w_m |h_m| |(Φv)_m|)², the squared sum of the
    summand magnitudes, not to the possibly cancelled value itself; the bound
    is 1e-12.
    """
    def body() -> tuple[bool, str]:
        rng = np.random.default_rng(seed)
        worst = 0.0
        for _ in range(instances):
            m, r = int(rng.integers(1, 17)), int(rng.integers(1, 5))
            h, phi, v = _crandn(rng, m), _random_phi(rng, m, r), _crandn(rng, r)
            w = rng.uniform(0.0, 1.0, size=m)
            quad = float(w @ quadratic_form_matrix(h, phi, v).real @ w)
            direct = abs(np.vdot(h, (w[:, None] * phi) @ v)) ** 2
            scale = float(np.sum(w * np.abs(h) * np.abs(phi @ v))) ** 2
            worst = max(worst, abs(quad - direct) / max(scale, 1e-300))
        return worst <= 1e-12, f"max relative error {worst:.2e}"

    return _timed("quadratic-form identity", body)


def check_generalized_eig(
    pencils: int = 1_000, samples: int = 100_000, seed: int = 3
) -> AcceptanceResult:
    def body() -> tuple[bool, str]:
        rng = np.random.default_rng(seed)
        worst_residual = 0.0
        beaten = 0
        for _ in range(pencils):
            r = int(rng.integers(1, 9))
            A = _crandn(rng, r, r)
            Q = 0.5 * (A + A.conj().T)
            B = _crandn(rng, r, r)
            reff = B @ B.conj().T
            v, lam = solve_generalized_eig(Q, reff)
            B_ridged = reff + (1e-10 * np.real(np.trace(reff)) / r) * np.eye(r)
            residual = np.linalg.norm(Q @ v - lam * (B_ridged @ v)) / np.linalg.norm(Q, 2)
            worst_residual = max(worst_residual, float(residual))

            best = np.real(np.vdot(v, Q @ v)) / np.real(np.vdot(v, reff @ v))
            X = _crandn(rng, samples, r)
            num = np.real(np.einsum("ij,jk,ik->i", X.conj(), Q, X))
            den = np.real(np.einsum("ij,jk,ik->i", X.conj(), reff, X))
            if np.max(num / den) > best + 1e-9 * max(1.0, abs(best)):
                beaten += 1
        passed = beaten == 0 and worst_residual <= 1e-8
        return passed, f"beaten {beaten}/{pencils}, max residual {worst_residual:.2e}"

    return _timed("generalized-eig optimality", body)


def check_an_contracts(instances: int = 1_000, seed: int = 4) -> AcceptanceResult:
    def body() -> tuple[bool, str]:
        rng = np.random.default_rng(seed)
        worst_leak = worst_power = worst_align = 0.0
        for _ in range(instances):
            r = int(rng.choice([2, 3, 4]))
            m = int(rng.choice([4, 9, 16]))
            W = rng.uniform(0.0, 1.0, size=m)[:, None] * _random_phi(rng, m, r)
            h_b, g_e = _crandn(rng, m), _crandn(rng, m)
            p_av = float(rng.uniform(0.1, 10.0))

            basis = null_space(effective_bob_channel(W, h_b))
            z = an_vector(basis, W, g_e, p_av)
            leak = abs(np.vdot(h_b, W @ z)) / (np.linalg.norm(W.conj().T @ h_b) * math.sqrt(p_av))
            power = abs(np.linalg.norm(z) ** 2 - p_av) / p_av
            lam = float(np.linalg.eigvalsh(projected_interference(basis, W, g_e))[-1])
            achieved = abs(np.vdot(g_e, W @ z)) ** 2
            align = abs(achieved - p_av * lam) / max(p_av * lam, 1e-300)
            worst_leak = max(worst_leak, leak)
            worst_power = max(worst_power, power)
            worst_align = max(worst_align, align)
        passed = worst_leak <= 1e-9 and worst_power <= 1e-12 and worst_align <= 1e-9
        return passed, (
            f"leak {worst_leak:.2e}, power {worst_power:.2e}, alignment {worst_align:.2e}"
        )

    return _timed("AN contracts", body)


def check_feasibility(
    runs: int = 100, config: SystemConfig = SystemConfig(), seed: int = 5
) -> AcceptanceResult:
    def body() -> tuple[bool, str]:
        validated = config.validate()
        geometry = build_geometry(validated)
        budget = validated.transmit_power * (1.0 + 1e-9)
        violations: List[str] = []

        for run, seq in enumerate(np.random.SeedSequence(seed).spawn(runs)):
            channel_seq, init_seq = seq.spawn(2)
            rng = np.random.default_rng(channel_seq)
            channels = generate_channels(validated, geometry, build_scenario(validated, rng), rng)

            def inspect(iteration: int, state: BeamformingState) -> None:
                W = state.holographic(geometry.phi)
                total = np.linalg.norm(W @ state.v) ** 2 + np.linalg.norm(state.z) ** 2
                if total > budget or np.any(state.w < 0.0) or np.any(state.w > 1.0):
                    violations.append(f"run {run} iteration {iteration}")

            optimize(
                validated, geometry, channels,
                rng=np.random.default_rng(init_seq), on_iteration=inspect,
            )
        detail = "no violations" if not violations else ", ".join(violations[:5])
        return not violations, detail

    return _timed("feasibility throughout", body)


def check_gradient(instances: int = 100, seed: int = 6, step: float = 1e-6) -> AcceptanceResult:
    def body() -> tuple[bool, str]:
        rng = np.random.default_rng(seed)
        worst = 0.0
        for _ in range(instances):
            m, r = int(rng.integers(2, 17)), int(rng.integers(1, 5))
            phi = _random_phi(rng, m, r)
            surrogate = surrogate_qw(
                _random_channels(rng, m), phi, _crandn(rng, r), _crandn(rng, r),
                rng.uniform(0.0, 1.0, size=m), 1.0, 1.0,
            )
            Q = surrogate.Q_w
            w = rng.uniform(0.0, 1.0, size=m)
            numeric = np.empty(m)
            for k in range(m):
                e = np.zeros(m)
                e[k] = step
                numeric[k] = ((w + e) @ Q @ (w + e) - (w - e) @ Q @ (w - e)) / (2.0 * step)
            analytic = gradient(Q, w)
            error = np.linalg.norm(numeric - analytic) / max(np.linalg.norm(analytic), 1e-300)
            worst = max(worst, float(error))
        return worst <= 1e-5, f"max relative error {worst:.2e}"

    return _timed("gradient correctness", body)


def check_determinism(
    trials: int = 2, config: SystemConfig = SystemConfig(max_outer_iters=5), seed: int = 10
) -> AcceptanceResult:
    def body() -> tuple[bool, str]:
        with tempfile.TemporaryDirectory() as tmp:
            paths = [Path(tmp) / "first.csv", Path(tmp) / "second.csv"]
            for path in paths:
                spec = SweepSpec(
                    variable=SweepVariable.POWER,
                    values=[10.0, 20.0],
                    trials=trials,
                    schemes=[Scheme.PROPOSED, Scheme.RANDOM],
                    base=config,
                    seed=seed,
                )
                write_csv(run_sweep(spec), path)
            same = filecmp.cmp(paths[0], paths[1], shallow=False)
        return same, "byte-identical" if same else "CSV files differ"

    return _timed("determinism", body)


# ---------------------------------------------------------------------------
# Heavy checks
# ---------------------------------------------------------------------------

def grid_best_secrecy(
    channels: ChannelRealization, phi: np.ndarray, transmit_power: float,
    noise_bob: float, noise_eve: float, levels: int = 11,
) -> float:
    """
    Best secrecy over w ∈ {0, 0.1, …, 1}^M for a single RF chain, z = 0 and
    the full budget on the scalar v.
    """
    grid = np.linspace(0.0, 1.0, levels)
    m = phi.shape[0]
    best = 0.0
    for combo in itertools.product(grid, repeat=m):
        w = np.asarray(combo)
        W = w[:, None] * phi
        gain = float(np.linalg.norm(W) ** 2)
        if gain == 0.0:
            continue
        p = transmit_power / gain
        s_b = p * abs(np.vdot(channels.h_b, W[:, 0])) ** 2 / noise_bob
        s_e = p * abs(np.vdot(channels.g_e, W[:, 0])) ** 2 / noise_eve
        best = max(best, math.log2(1.0 + s_b) - math.log2(1.0 + s_e))
    return best


def check_near_optimality(instances: int = 20, seed: int = 7, starts: int = 8) -> AcceptanceResult:
    """
    Optimizer against the exhaustive amplitude grid on M = 4, R = 1.

    The optimizer runs with *starts* initial draws, since each run only
    reaches a local maximum over the amplitude box.
    """
    def body() -> tuple[bool, str]:
        validated = SystemConfig(num_elements=4, num_rf_chains=1, num_starts=starts).validate()
        geometry = build_geometry(validated)
        shortfalls = []
        for seq in np.random.SeedSequence(seed).spawn(instances):
            channel_seq, init_seq = seq.spawn(2)
            rng = np.random.default_rng(channel_seq)
            channels = generate_channels(validated, geometry, build_scenario(validated, rng), rng)
            _, trace = optimize(validated, geometry, channels, rng=np.random.default_rng(init_seq))
            best = grid_best_secrecy(
                channels, geometry.phi, validated.transmit_power,
                validated.noise_power_bob, validated.noise_power_eve,
            )
            shortfalls.append(best - final_secrecy(trace))
        worst = max(shortfalls)
        return worst <= 1e-2, f"largest shortfall {worst:.4f} bits/s/Hz"

    return _timed("small-instance near-optimality", body)


def _sweep_repo(variable: SweepVariable, values: Sequence[float], trials: int,
                base: SystemConfig, seed: int) -> ResultRepository:
    spec = SweepSpec(variable, list(values), trials, [Scheme.PROPOSED, Scheme.RANDOM], base, seed)
    return ResultRepository(run_sweep(spec))


def check_trends(trials: int = 100, base: SystemConfig = SystemConfig(), seed: int = 8) -> AcceptanceResult:
    def body() -> tuple[bool, str]:
        reports: List[TrendReport] = []
        power = _sweep_repo(SweepVariable.POWER, [10, 15, 20, 25, 30], trials, base, seed)
        reports += [strictly_increasing(power), proposed_beats_random(power)]
        size = _sweep_repo(SweepVariable.RHS_SIZE, [25, 49], trials, base, seed)
        reports += [strictly_increasing(size), proposed_beats_random(size)]
        chains = _sweep_repo(SweepVariable.RF_CHAINS, [2, 4], trials, base, seed)
        reports += [strictly_increasing(chains), proposed_beats_random(chains)]
        rician = _sweep_repo(SweepVariable.RICIAN, [0, 2, 5, 10], trials, base, seed)
        reports += [nonincreasing(rician), proposed_beats_random(rician)]
        failed = [f"{r.name} [{r.summary()}]" for r in reports if not r.passed]
        return not failed, "all trends hold" if not failed else "; ".join(failed)

    return _timed("trend reproduction", body)


def check_scaling(instances: int = 5, seed: int = 9) -> AcceptanceResult:
    from .scaling import EXPONENT_RANGE, measure_scaling

    def body() -> tuple[bool, str]:
        fit = measure_scaling(instances=instances, seed=seed)
        lo, hi = EXPONENT_RANGE
        return fit.within_range, f"exponent {fit.exponent:.2f} (accepted {lo}–{hi})"

    return _timed("complexity scaling", body)


FAST_CHECKS: Dict[str, Callable[[], AcceptanceResult]] = {
    "majorizer": check_majorizer,
    "quadratic-identity": check_quadratic_identity,
    "generalized-eig": check_generalized_eig,
    "an-contracts": check_an_contracts,
    "feasibility": check_feasibility,
    "gradient": check_gradient,
    "determinism": check_determinism,
}

FULL_CHECKS: Dict[str, Callable[[], AcceptanceResult]] = {
    **FAST_CHECKS,
    "near-optimality": check_near_optimality,
    "trends": check_trends,
    "scaling": check_scaling,
}


def run_acceptance(full: bool = False) -> List[AcceptanceResult]:
    checks = FULL_CHECKS if full else FAST_CHECKS
    return [check() for check in checks.values()]
