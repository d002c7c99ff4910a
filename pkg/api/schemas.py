"""
api/schemas.py – Pydantic request/response schemas for the optimisation API.
Uses Pydantic V2 style.
"""
from __future__ import annotations

from typing import List, Optional

from pydantic import BaseModel, Field

from config.scenario import ScenarioFile
from data.models import Scheme


class OptimizeRequest(BaseModel):
    """One channel realization to draw and optimise."""

    config: ScenarioFile = Field(
        default_factory=ScenarioFile,
        description="Scenario parameters; omitted fields take the reference defaults.",
    )
    seed: int = Field(
        default=0,
        ge=0,
        description="Trial seed; drives Eve's position, channels and initialisation.",
        json_schema_extra={"example": 42},
    )
    scheme: Scheme = Field(
        default=Scheme.PROPOSED,
        description="'proposed' runs the alternating optimizer, 'random' the fixed-weight baseline.",
    )


class ReportOut(BaseModel):
    sinr_bob: float
    sinr_eve: float
    rate_bob: float = Field(description="Bob's rate in bits/s/Hz.")
    rate_eve: float = Field(description="Eve's rate in bits/s/Hz.")
    secrecy: float = Field(description="Clamped secrecy rate in bits/s/Hz.")
    power_signal: float = Field(description="‖W v‖² in watts.")
    power_an: float = Field(description="‖z‖² in watts.")
    power_total: float


class TraceRecordOut(BaseModel):
    iteration: int
    secrecy: float
    rate_bob: float
    rate_eve: float
    power_signal: float
    power_an: float
    inner_iters_holo: int


class OptimizeResponse(BaseModel):
    """Envelope returned by POST /optimize."""

    scheme: Scheme
    report: ReportOut
    initial_secrecy: Optional[float] = None
    trace: List[TraceRecordOut] = Field(default_factory=list)
    termination: Optional[str] = Field(
        default=None, description="'converged' or 'max_iters'; null for the baseline."
    )
    eve_position: List[float] = Field(description="Eve's sampled position (x, y, z) in metres.")
