# src/core/oracle.py

"""
Brute-force ground truth for the censuses.

Every primitive lambda in the box [-B, B]^{2g} is mapped to its normalized
class (1/r)(lambda ^ bar(lambda)). The box gives soundness only; completeness
of the census is checked through reconstruction round trips.
"""

from __future__ import annotations

from functools import partial, reduce
from itertools import product
from math import gcd
from multiprocessing import Pool
from typing import Callable, List, Set, Tuple

from pydantic import BaseModel, computed_field

from src.core.census2 import check_class2, enumerate2, essential_coords2, reconstruct2
from src.core.census3 import check_class3, enumerate3, essential_coords3, reconstruct3
from src.core.cm import CmParams, Polarization
from src.core.errors import CensusError, DimensionMismatch, PreconditionViolated
from src.utils.logger import get_logger

logger = get_logger(__name__)

ClassTuple = Tuple[int, ...]


class OracleReport(BaseModel):
    cm: CmParams
    g: int
    multipliers: Tuple[int, ...]
    box: int
    t: int
    oracle_classes: List[ClassTuple]
    census_classes: List[ClassTuple]
    missing_from_census: List[ClassTuple]
    invalid_oracle_classes: List[ClassTuple]
    round_trip_failures: List[ClassTuple]
    extra_in_census_unwitnessed: List[ClassTuple]

    @computed_field  # type: ignore[prop-decorator]
    @property
    def passed(self) -> bool:
        return not (self.missing_from_census or self.invalid_oracle_classes or self.round_trip_failures)


def _essential(cm: CmParams, g: int) -> Callable[[Tuple[int, ...]], Tuple[int, ...]]:
    if g == 2:
        return lambda c: essential_coords2(cm.u, cm.v, cm.w, *c)
    return lambda c: essential_coords3(cm.u, cm.v, cm.w, c[:3], c[3:])


def _scan_slice(cm: CmParams, g: int, pol: Polarization, t: int, box: int, first: int) -> Set[ClassTuple]:
    essential = _essential(cm, g)
    side = range(-box, box + 1)
    found = set()
    for rest in product(side, repeat=2 * g - 1):
        coords = (first,) + rest
        if reduce(gcd, coords, 0) != 1:
            continue
        raw = essential(coords)
        r = reduce(gcd, raw, 0)
        cls = tuple(x // r for x in raw)
        if sum(m * x for m, x in zip(pol.multipliers, cls[:g])) <= t:
            found.add(cls)
    return found


def oracle_enumerate(
    cm: CmParams,
    g: int,
    pol: Polarization,
    t: int,
    box: int,
    threads: int = 1,
) -> Set[ClassTuple]:
    """Classes of degree <= t witnessed by a primitive lambda in [-box, box]^{2g}."""
    if box < 1:
        raise PreconditionViolated(f"box radius must be >= 1, got {box}")
    if pol.g != g:
        raise DimensionMismatch(f"g = {g} but the polarization has {pol.g} multipliers")

    firsts = range(-box, box + 1)
    if threads > 1:
        with Pool(processes=min(threads, len(firsts))) as pool:
            slices = pool.map(partial(_scan_slice, cm, g, pol, t, box), firsts)
    else:
        slices = [_scan_slice(cm, g, pol, t, box, a) for a in firsts]
    found = set().union(*slices)
    logger.debug(f"oracle box {box}, g = {g}, t = {t}: {len(found)} classes")
    return found


def oracle_compare(
    cm: CmParams,
    g: int,
    pol: Polarization,
    t: int,
    box: int,
    threads: int = 1,
) -> OracleReport:
    """
    Compare the brute-force classes with the census in both directions.

    Soundness: every oracle class is valid and enumerated. Completeness:
    every census class is either seen in the box or reconstructs to a
    lambda whose class is the census class again.
    """
    if g == 2:
        census, check, reconstruct = enumerate2(cm, pol, t, threads), check_class2, reconstruct2
    elif g == 3:
        census, check, reconstruct = enumerate3(cm, pol, t, threads), check_class3, reconstruct3
    else:
        raise DimensionMismatch(f"g must be 2 or 3, got {g}")

    essential = _essential(cm, g)
    oracle = oracle_enumerate(cm, g, pol, t, box, threads)
    census_set = {r.coords for r in census}

    invalid = sorted(c for c in oracle if not check(cm, c))
    missing = sorted(oracle - census_set)

    failures, unwitnessed = [], []
    for cls in sorted(census_set):
        try:
            lam, _ = reconstruct(cm, cls)
        except CensusError as e:
            logger.warning(f"reconstruction of {cls} failed: {e}")
            failures.append(cls)
            continue
        raw = essential(lam.coords)
        r = reduce(gcd, raw, 0)
        if tuple(x // r for x in raw) != cls:
            failures.append(cls)
        if cls not in oracle:
            unwitnessed.append(cls)

    report = OracleReport(
        cm=cm,
        g=g,
        multipliers=pol.multipliers,
        box=box,
        t=t,
        oracle_classes=sorted(oracle),
        census_classes=sorted(census_set),
        missing_from_census=missing,
        invalid_oracle_classes=invalid,
        round_trip_failures=failures,
        extra_in_census_unwitnessed=unwitnessed,
    )
    if report.passed:
        logger.info(f"oracle agrees with census: {len(oracle)} witnessed of {len(census_set)} classes")
    else:
        logger.warning(
            f"oracle violations: missing {missing}, invalid {invalid}, round trip failures {failures}"
        )
    return report

