# api/endpoints.py
from __future__ import annotations

from typing import List, Optional

from fastapi import APIRouter, Depends, HTTPException
from pydantic import BaseModel, Field, model_validator

from src.core.bounds import BoundReport
from src.core.errors import CensusError
from src.core.oracle import OracleReport
from src.services.census_service import (
    CensusQuery,
    CensusResult,
    CensusService,
    SweepRow,
    get_census_service,
)
from src.utils.logger import get_logger

census_router = APIRouter(prefix="/v1/census", tags=["Census"])
analysis_router = APIRouter(prefix="/v1", tags=["Bounds and verification"])
logger = get_logger(__name__)

# ------------------------ Models ------------------------

class DegreeRequest(BaseModel):
    query: CensusQuery
    t: int = Field(ge=0, description="Degree bound")

class EnumerateRequest(DegreeRequest):
    with_basis: bool = False

class SweepRequest(BaseModel):
    query: CensusQuery
    t_min: int = Field(default=0, ge=0)
    t_max: int = Field(ge=0)

    @model_validator(mode="after")
    def validate_range(self):
        if self.t_max < self.t_min:
            raise ValueError(f"t_max = {self.t_max} is below t_min = {self.t_min}")
        return self

class VerifyRequest(DegreeRequest):
    box: Optional[int] = Field(default=None, ge=1)

class CountResponse(BaseModel):
    params: CensusQuery
    t: int
    count: int

# ------------------------ Helpers ------------------------

def _unprocessable(e: CensusError) -> HTTPException:
    logger.warning(f"rejected request: {e}")
    return HTTPException(status_code=422, detail=str(e))

# ------------------------ Routes ------------------------

@census_router.post("/enumerate", response_model=CensusResult, response_model_exclude_none=True)
def enumerate_curves(req: EnumerateRequest, service: CensusService = Depends(get_census_service)):
    try:
        return service.enumerate(req.query, req.t, with_basis=req.with_basis)
    except CensusError as e:
        raise _unprocessable(e)

@census_router.post("/count", response_model=CountResponse)
def count_curves(req: DegreeRequest, service: CensusService = Depends(get_census_service)):
    try:
        return CountResponse(params=req.query, t=req.t, count=service.count(req.query, req.t))
    except CensusError as e:
        raise _unprocessable(e)

@census_router.post("/sweep", response_model=List[SweepRow])
def sweep(req: SweepRequest, service: CensusService = Depends(get_census_service)):
    try:
        return service.sweep(req.query, req.t_min, req.t_max)
    except CensusError as e:
        raise _unprocessable(e)

@analysis_router.post("/bounds", response_model=BoundReport)
def bounds(req: DegreeRequest, service: CensusService = Depends(get_census_service)):
    try:
        return service.bound(req.query, req.t)
    except CensusError as e:
        raise _unprocessable(e)

@analysis_router.post("/verify", response_model=OracleReport)
def verify(req: VerifyRequest, service: CensusService = Depends(get_census_service)):
    try:
        report = service.verify(req.query, req.t, box=req.box)
    except CensusError as e:
        raise _unprocessable(e)
    if not report.passed:
        logger.warning(f"oracle violations for {req.query.model_dump()} at t = {req.t}")
    return report
