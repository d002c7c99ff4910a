from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

from .models import ResultRow


@dataclass
class ResultRepository:
    """In-memory queries over the rows of one sweep."""

    rows: List[ResultRow]

    def all(self) -> List[ResultRow]:
        return list(self.rows)

    def successful(self) -> List[ResultRow]:
        return [r for r in self.rows if not r.is_error]

    def errors(self) -> List[ResultRow]:
        return [r for r in self.rows if r.is_error]

    def filter_by_scheme(self, scheme: str) -> List[ResultRow]:
        return [r for r in self.successful() if r.scheme == scheme]

    def filter_by_value(self, value: float) -> List[ResultRow]:
        return [r for r in self.successful() if r.sweep_value == value]

    def sweep_values(self) -> List[float]:
        return sorted({r.sweep_value for r in self.rows})

    def schemes(self) -> List[str]:
        return sorted({r.scheme for r in self.rows})

    def secrecy_by_trial(self, value: float, scheme: str) -> Dict[int, float]:
        return {
            r.trial: r.secrecy_bits
            for r in self.successful()
            if r.sweep_value == value and r.scheme == scheme
        }

    def paired_secrecy(
        self,
        first: Tuple[float, str],
        second: Tuple[float, str],
    ) -> Tuple[np.ndarray, np.ndarray]:
        """Secrecy vectors of two sweep points over the trials both completed."""
        a = self.secrecy_by_trial(*first)
        b = self.secrecy_by_trial(*second)
        trials = sorted(a.keys() & b.keys())
        return np.array([a[t] for t in trials]), np.array([b[t] for t in trials])

    def mean_secrecy(self, scheme: Optional[str] = None) -> Dict[Tuple[float, str], float]:
        groups: Dict[Tuple[float, str], List[float]] = defaultdict(list)
        for r in self.successful():
            if scheme is None or r.scheme == scheme:
                groups[(r.sweep_value, r.scheme)].append(r.secrecy_bits)
        return {key: float(np.mean(values)) for key, values in sorted(groups.items())}
