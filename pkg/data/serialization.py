"""
data/serialization.py – JSON dumps of geometries, channels and traces.

Complex numbers are written as ``[re, im]`` pairs.  Python's ``json`` writes
floats with ``repr`` precision, so a channel dumped here and loaded back is
bit-identical.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Dict, List, Union

import numpy as np

from core.channel import ChannelMeta, ChannelRealization
from core.geometry import RhsGeometry

PathLike = Union[str, Path]


def complex_to_pairs(values: np.ndarray) -> Any:
    """Nested lists with every complex entry replaced by ``[re, im]``."""
    arr = np.asarray(values, dtype=complex)
    return np.stack([arr.real, arr.imag], axis=-1).tolist()


def pairs_to_complex(pairs: Any) -> np.ndarray:
    arr = np.asarray(pairs, dtype=float)
    if arr.shape[-1] != 2:
        raise ValueError(f"expected trailing [re, im] pairs, got shape {arr.shape}")
    return arr[..., 0] + 1j * arr[..., 1]


# ---------------------------------------------------------------------------
# Geometry
# ---------------------------------------------------------------------------

def geometry_to_dict(geometry: RhsGeometry) -> Dict[str, Any]:
    return {
        "element_positions": geometry.element_positions.tolist(),
        "feed_positions": geometry.feed_positions.tolist(),
        "k_f_mag": geometry.k_f_mag,
        "k_s_mag": geometry.k_s_mag,
        "spacing": geometry.spacing,
        "phi": complex_to_pairs(geometry.phi),
    }


def dump_geometry(geometry: RhsGeometry, path: PathLike) -> None:
    Path(path).write_text(json.dumps(geometry_to_dict(geometry), indent=2), encoding="utf-8")


# ---------------------------------------------------------------------------
# Channels
# ---------------------------------------------------------------------------

def channel_to_dict(channels: ChannelRealization) -> Dict[str, Any]:
    meta = channels.meta
    return {
        "h_b": complex_to_pairs(channels.h_b),
        "g_e": complex_to_pairs(channels.g_e),
        "meta": {
            "distance_bob": meta.distance_bob,
            "distance_eve": meta.distance_eve,
            "rician_factor": meta.rician_factor,
            "gain_bob": meta.gain_bob,
            "gain_eve": meta.gain_eve,
            "seed": meta.seed,
        },
    }


def channel_from_dict(record: Dict[str, Any]) -> ChannelRealization:
    meta = record.get("meta") or {}
    return ChannelRealization(
        h_b=pairs_to_complex(record["h_b"]),
        g_e=pairs_to_complex(record["g_e"]),
        meta=ChannelMeta(
            distance_bob=float(meta.get("distance_bob", float("nan"))),
            distance_eve=float(meta.get("distance_eve", float("nan"))),
            rician_factor=float(meta.get("rician_factor", float("nan"))),
            gain_bob=float(meta.get("gain_bob", float("nan"))),
            gain_eve=float(meta.get("gain_eve", float("nan"))),
            seed=meta.get("seed"),
        ),
    )


def dump_channel(channels: ChannelRealization, path: PathLike) -> None:
    Path(path).write_text(json.dumps(channel_to_dict(channels)), encoding="utf-8")


def load_channel(path: PathLike) -> ChannelRealization:
    return channel_from_dict(json.loads(Path(path).read_text(encoding="utf-8")))


# ---------------------------------------------------------------------------
# Optimisation traces
# ---------------------------------------------------------------------------

def trace_to_dict(trace: "OptimizationTrace") -> Dict[str, Any]:  # noqa: F821
    records: List[Dict[str, Any]] = [
        {
            "iteration": r.iteration,
            "secrecy": r.secrecy,
            "rate_bob": r.rate_bob,
            "rate_eve": r.rate_eve,
            "power_signal": r.power_signal,
            "power_an": r.power_an,
            "inner_iters_holo": r.inner_iters_holo,
        }
        for r in trace.records
    ]
    return {
        "initial_secrecy": trace.initial_secrecy,
        "termination": trace.termination.value if trace.termination else None,
        "best_iteration": trace.best_iteration,
        "records": records,
    }


def dump_trace(trace: "OptimizationTrace", path: PathLike) -> None:  # noqa: F821
    Path(path).write_text(json.dumps(trace_to_dict(trace), indent=2), encoding="utf-8")
