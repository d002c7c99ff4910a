from __future__ import annotations

import hashlib
import json
import logging
import os
from dataclasses import asdict
from typing import Any, Dict, Optional

import diskcache

from core.system import SystemConfig

from .models import ResultRow

log = logging.getLogger(__name__)


class TrialCache:
    """
    Persistent store of finished trial rows.

    Keys hash the full config, the scheme and the trial seed, so a hit returns
    exactly the row a recomputation would produce.
    """

    def __init__(self, cache_dir: str = ".cache/trials") -> None:
        os.makedirs(cache_dir, exist_ok=True)
        self.cache = diskcache.Cache(cache_dir)

    @staticmethod
    def key(config: SystemConfig, scheme: str, trial_seed: int) -> str:
        data: Dict[str, Any] = asdict(config)
        data["an_power_policy"] = str(getattr(config.an_power_policy, "value", config.an_power_policy))
        data["scheme"] = scheme
        data["trial_seed"] = trial_seed
        hasher = hashlib.md5()
        hasher.update(json.dumps(data, sort_keys=True).encode())
        return hasher.hexdigest()

    def get(self, config: SystemConfig, scheme: str, trial_seed: int) -> Optional[ResultRow]:
        cached = self.cache.get(self.key(config, scheme, trial_seed))
        if cached is None:
            return None
        log.debug("trial cache hit: scheme=%s seed=%d", scheme, trial_seed)
        return ResultRow(**cached)

    def set(self, config: SystemConfig, scheme: str, trial_seed: int, row: ResultRow) -> None:
        if row.is_error:
            return
        self.cache.set(self.key(config, scheme, trial_seed), _row_to_dict(row))

    def close(self) -> None:
        self.cache.close()


def _row_to_dict(row: ResultRow) -> Dict[str, Any]:
    return {name: getattr(row, name) for name in ResultRow.__slots__}
