"""
experiments/trends.py – Direction-of-trend checks over sweep results.

All comparisons are paired by trial: two sweep points share trial indices,
and for equal sweep values two schemes share the channel realization.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List

import numpy as np
from scipy import stats

from data.models import Scheme
from data.repository import ResultRepository

ALPHA = 0.05


@dataclass(frozen=True)
class PairedTest:
    label: str
    mean_diff: float
    p_value: float
    passed: bool


@dataclass
class TrendReport:
    name: str
    tests: List[PairedTest] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return bool(self.tests) and all(t.passed for t in self.tests)

    def summary(self) -> str:
        parts = [f"{t.label}: Δ={t.mean_diff:+.4f}, p={t.p_value:.3g}" for t in self.tests]
        return "; ".join(parts) if parts else "no paired samples"


def greater_p_value(a: np.ndarray, b: np.ndarray) -> float:
    """One-sided paired p-value for mean(a − b) > 0."""
    diff = np.asarray(a, dtype=float) - np.asarray(b, dtype=float)
    if diff.size < 2:
        return math.nan
    if np.allclose(diff, diff[0], rtol=0.0, atol=1e-15):
        # Zero variance: the sign alone decides.
        return 0.0 if diff[0] > 0 else 1.0
    return float(stats.ttest_rel(a, b, alternative="greater").pvalue)


def paired_greater(label: str, a: np.ndarray, b: np.ndarray, alpha: float = ALPHA) -> PairedTest:
    p = greater_p_value(a, b)
    mean_diff = float(np.mean(a - b)) if len(a) else math.nan
    return PairedTest(label, mean_diff, p, bool(p < alpha))


def paired_not_greater(label: str, a: np.ndarray, b: np.ndarray, alpha: float = ALPHA) -> PairedTest:
    """Passes unless a is significantly larger than b."""
    p = greater_p_value(a, b)
    mean_diff = float(np.mean(a - b)) if len(a) else math.nan
    return PairedTest(label, mean_diff, p, bool(not math.isnan(p) and p >= alpha))


def strictly_increasing(
    repo: ResultRepository, scheme: str = Scheme.PROPOSED.value, alpha: float = ALPHA
) -> TrendReport:
    report = TrendReport(f"{scheme} increasing")
    values = repo.sweep_values()
    for lo, hi in zip(values, values[1:]):
        upper, lower = repo.paired_secrecy((hi, scheme), (lo, scheme))
        report.tests.append(paired_greater(f"{hi:g}>{lo:g}", upper, lower, alpha))
    return report


def nonincreasing(
    repo: ResultRepository, scheme: str = Scheme.PROPOSED.value, alpha: float = ALPHA
) -> TrendReport:
    report = TrendReport(f"{scheme} nonincreasing")
    values = repo.sweep_values()
    for lo, hi in zip(values, values[1:]):
        upper, lower = repo.paired_secrecy((hi, scheme), (lo, scheme))
        report.tests.append(paired_not_greater(f"{hi:g}<={lo:g}", upper, lower, alpha))
    return report


def proposed_beats_random(repo: ResultRepository, alpha: float = ALPHA) -> TrendReport:
    report = TrendReport("proposed > random")
    for value in repo.sweep_values():
        proposed, baseline = repo.paired_secrecy(
            (value, Scheme.PROPOSED.value), (value, Scheme.RANDOM.value)
        )
        report.tests.append(paired_greater(f"at {value:g}", proposed, baseline, alpha))
    return report
