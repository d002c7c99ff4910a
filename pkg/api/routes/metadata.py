from __future__ import annotations

from typing import Any, Dict, List

from fastapi import APIRouter
from pydantic import BaseModel

from config.scenario import ScenarioFile
from data.models import Scheme, SweepVariable

router = APIRouter(prefix="/metadata", tags=["metadata"])


class DefaultsMetadata(BaseModel):
    scenario: Dict[str, Any]
    sweep_variables: List[str]
    schemes: List[str]


@router.get("/defaults", response_model=DefaultsMetadata)
async def get_defaults() -> DefaultsMetadata:
    """Return the reference scenario plus the sweep variables and schemes accepted."""
    return DefaultsMetadata(
        scenario=ScenarioFile().model_dump(mode="json"),
        sweep_variables=[v.value for v in SweepVariable],
        schemes=[s.value for s in Scheme],
    )
