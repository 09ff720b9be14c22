# src/core/models.py

from __future__ import annotations

from enum import Enum
from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field


class CurveKind(str, Enum):
    ORDINARY = "ordinary"
    EXTRA_ORDINARY = "extra-ordinary"


class BasisPair(BaseModel):
    """A positively oriented basis (lambda, mu) of a curve's rank-2 sublattice."""

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    lam: Tuple[int, ...] = Field(alias="lambda")
    mu: Tuple[int, ...]


class CurveRecord(BaseModel):
    """One elliptic curve: its class, degree, kind and optionally a lattice basis."""

    model_config = ConfigDict(frozen=True)

    coords: Tuple[int, ...]
    degree: int
    kind: CurveKind
    basis: Optional[BasisPair] = None

    @property
    def sort_key(self) -> Tuple[int, Tuple[int, ...]]:
        return self.degree, self.coords


def sort_records(records: List[CurveRecord]) -> List[CurveRecord]:
    """Order by degree, then lexicographically by coordinates."""
    return sorted(records, key=lambda r: r.sort_key)
