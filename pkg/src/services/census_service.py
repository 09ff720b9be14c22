# src/services/census_service.py

from functools import lru_cache
from typing import List, Optional, Tuple, Union

import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.config import get_settings
from src.core.bounds import BoundReport, census2_bound, census3_bound
from src.core.census2 import attach_basis2, enumerate2
from src.core.census3 import attach_basis3, enumerate3
from src.core.cm import CmParams, NoCm, Polarization
from src.core.errors import PreconditionViolated
from src.core.models import CurveKind, CurveRecord
from src.core.oracle import OracleReport, oracle_compare
from src.utils.logger import get_logger

logger = get_logger(__name__)

SWEEP_COLUMNS = ["t", "count", "ordinary", "extraordinary", "bound"]


class CensusQuery(BaseModel):
    """Which census to run: dimension, CM triple (None for End(E) = Z) and polarization."""

    model_config = ConfigDict(frozen=True)

    g: int = Field(ge=2, le=3)
    cm: Optional[CmParams] = None
    multipliers: Tuple[int, ...]

    @model_validator(mode="after")
    def validate_dimension(self):
        if len(self.multipliers) != self.g:
            raise ValueError(f"g = {self.g} needs {self.g} multipliers, got {len(self.multipliers)}")
        if any(m < 1 for m in self.multipliers):
            raise ValueError(f"every multiplier must be >= 1, got {self.multipliers}")
        return self

    @property
    def polarization(self) -> Polarization:
        return Polarization(multipliers=self.multipliers)

    @property
    def endomorphisms(self) -> Union[CmParams, NoCm]:
        return self.cm if self.cm is not None else NoCm()


class CensusResult(BaseModel):
    params: CensusQuery
    t: int
    count: int
    curves: List[CurveRecord]


class SweepRow(BaseModel):
    t: int
    count: int
    ordinary: int
    extraordinary: int
    bound: float


class CensusService:
    """Runs censuses, bounds and oracle checks for every front end."""

    def __init__(self):
        self.settings = get_settings()

    def _threads(self, threads: Optional[int]) -> int:
        return threads if threads is not None else self.settings.census.threads

    def _check_degree(self, t: int) -> None:
        if t < 0:
            raise PreconditionViolated(f"t must be >= 0, got {t}")
        limit = self.settings.census.max_degree_limit
        if t > limit:
            raise PreconditionViolated(f"t = {t} exceeds the configured limit {limit}")

    def records(self, query: CensusQuery, t: int, threads: Optional[int] = None) -> List[CurveRecord]:
        self._check_degree(t)
        census = enumerate2 if query.g == 2 else enumerate3
        return census(query.endomorphisms, query.polarization, t, self._threads(threads))

    def enumerate(
        self,
        query: CensusQuery,
        t: int,
        with_basis: bool = False,
        threads: Optional[int] = None,
    ) -> CensusResult:
        curves = self.records(query, t, threads)
        if with_basis:
            if query.cm is None:
                raise PreconditionViolated("lattice bases need a CM triple")
            attach = attach_basis2 if query.g == 2 else attach_basis3
            curves = [attach(query.cm, r) for r in curves]
        return CensusResult(params=query, t=t, count=len(curves), curves=curves)

    def count(self, query: CensusQuery, t: int, threads: Optional[int] = None) -> int:
        return len(self.records(query, t, threads))

    def bound(self, query: CensusQuery, t: int) -> BoundReport:
        self._check_degree(t)
        bound = census2_bound if query.g == 2 else census3_bound
        return bound(query.endomorphisms, query.polarization, t)

    def sweep(self, query: CensusQuery, t_min: int, t_max: int, threads: Optional[int] = None) -> List[SweepRow]:
        """One row per t in [t_min, t_max], counted from a single enumeration at t_max."""
        if t_min < 0 or t_max < t_min:
            raise PreconditionViolated(f"need 0 <= t_min <= t_max, got {t_min}..{t_max}")
        records = self.records(query, t_max, threads)

        rows = []
        for t in range(t_min, t_max + 1):
            upto = [r for r in records if r.degree <= t]
            ordinary = sum(1 for r in upto if r.kind == CurveKind.ORDINARY)
            rows.append(
                SweepRow(
                    t=t,
                    count=len(upto),
                    ordinary=ordinary,
                    extraordinary=len(upto) - ordinary,
                    bound=self.bound(query, t).value,
                )
            )
        logger.info(f"sweep g = {query.g}, t = {t_min}..{t_max}: {len(rows)} rows")
        return rows

    def verify(
        self,
        query: CensusQuery,
        t: int,
        box: Optional[int] = None,
        threads: Optional[int] = None,
    ) -> OracleReport:
        """
        Oracle comparison for a CM census.

        Raises:
            PreconditionViolated: if the query has no CM triple.
        """
        self._check_degree(t)
        if query.cm is None:
            raise PreconditionViolated("the lattice oracle needs a CM triple")
        box = box if box is not None else self.settings.census.oracle_box
        return oracle_compare(query.cm, query.g, query.polarization, t, box, self._threads(threads))


def sweep_frame(rows: List[SweepRow]) -> pd.DataFrame:
    return pd.DataFrame([row.model_dump() for row in rows], columns=SWEEP_COLUMNS)


def sweep_csv(rows: List[SweepRow]) -> str:
    """CSV with header t,count,ordinary,extraordinary,bound and LF line endings."""
    return sweep_frame(rows).to_csv(index=False, float_format="%.6f", lineterminator="\n")


@lru_cache(maxsize=1)
def get_census_service() -> CensusService:
    return CensusService()
