from __future__ import annotations

import logging
from dataclasses import asdict

import numpy as np
from fastapi import APIRouter, HTTPException

from api.schemas import OptimizeRequest, OptimizeResponse, ReportOut, TraceRecordOut
from core.channel import build_scenario, generate_channels
from core.geometry import build_geometry
from core.metrics import SecrecyReport, evaluate_state
from core.optimizer import OptimizationError, optimize
from core.system import ConfigurationError
from data.models import Scheme
from experiments.baseline import random_baseline

log = logging.getLogger(__name__)

router = APIRouter(prefix="/optimize", tags=["optimize"])


def _report_out(report: SecrecyReport) -> ReportOut:
    return ReportOut(**asdict(report), power_total=report.power_total)


@router.post("", response_model=OptimizeResponse)
def optimize_realization(request: OptimizeRequest) -> OptimizeResponse:
    """
    Draw one scenario from the request seed and run the chosen scheme on it.

    Streams are split exactly as in a sweep trial, so a request with seed s
    reproduces the sweep row whose trial seed is s.
    """
    channel_seq, baseline_seq, init_seq = np.random.SeedSequence(request.seed).spawn(3)
    try:
        validated = request.config.to_system_config().validate()
        geometry = build_geometry(validated)
        channel_rng = np.random.default_rng(channel_seq)
        scenario = build_scenario(validated, channel_rng)
        channels = generate_channels(validated, geometry, scenario, channel_rng, seed=request.seed)
    except ConfigurationError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc

    if request.scheme is Scheme.RANDOM:
        _, report = random_baseline(validated, geometry, channels, np.random.default_rng(baseline_seq))
        return OptimizeResponse(
            scheme=request.scheme,
            report=_report_out(report),
            eve_position=scenario.eve_position.tolist(),
        )

    try:
        state, trace = optimize(validated, geometry, channels, rng=np.random.default_rng(init_seq))
    except OptimizationError as exc:
        log.warning("optimisation failed for seed %d: %s", request.seed, exc)
        raise HTTPException(status_code=500, detail=str(exc)) from exc

    report = evaluate_state(state, channels, geometry.phi, validated)
    return OptimizeResponse(
        scheme=request.scheme,
        report=_report_out(report),
        initial_secrecy=trace.initial_secrecy,
        trace=[TraceRecordOut(**asdict(r)) for r in trace.records],
        termination=trace.termination.value if trace.termination else None,
        eve_position=scenario.eve_position.tolist(),
    )
