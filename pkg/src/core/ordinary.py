# src/core/ordinary.py

"""
Ordinary curves E_v, the images of x -> (v_1 x, ..., v_g x) for primitive v,
and curves cut out by a vector of endomorphisms of E.
"""

from __future__ import annotations

from itertools import product
from math import isqrt
from typing import List, Optional, Sequence, Tuple, Union

from pydantic import BaseModel, ConfigDict, model_validator

from src.core.census2 import SurfaceClass, class_from_lambda2, classify2, degree2
from src.core.census3 import ThreefoldClass, class_from_lambda3, classify3, degree3
from src.core.cm import SUPPORTED_DIMENSIONS, CmParams, LatticeVector, Polarization
from src.core.errors import DimensionMismatch, PreconditionViolated, ZeroMap
from src.core.exterior import content, is_primitive, normalize_sign
from src.core.models import CurveKind, CurveRecord, sort_records
from src.utils.logger import get_logger

logger = get_logger(__name__)


class OrdinaryCurve(BaseModel):
    """A primitive integer vector v with first nonzero entry positive."""

    model_config = ConfigDict(frozen=True)

    v: Tuple[int, ...]

    @model_validator(mode="after")
    def validate_vector(self):
        if len(self.v) not in SUPPORTED_DIMENSIONS:
            raise ValueError(f"expected 2 or 3 entries, got {len(self.v)}")
        if not is_primitive(self.v):
            raise ValueError(f"v = {self.v} is not primitive")
        if normalize_sign(self.v) != self.v:
            raise ValueError(f"v = {self.v} must have a positive first nonzero entry")
        return self

    @property
    def g(self) -> int:
        return len(self.v)


class EndomorphismReport(BaseModel):
    """The saturated class of phi(E) next to the degree predicted by the endomorphism degrees."""

    coords: Tuple[int, ...]
    kind: CurveKind
    class_degree: int
    formula_degree: int
    lattice_content: int

    @property
    def degrees_match(self) -> bool:
        return self.class_degree == self.formula_degree


def ordinary_degree(pol: Polarization, v: Sequence[int]) -> int:
    """m_1 v_1^2 + ... + m_g v_g^2."""
    if pol.g != len(v):
        raise DimensionMismatch(f"polarization has g = {pol.g}, vector has {len(v)} entries")
    return sum(m * x * x for m, x in zip(pol.multipliers, v))


def enumerate_ordinary(g: int, pol: Polarization, t: int) -> List[OrdinaryCurve]:
    """All sign-normalized primitive v with ordinary_degree <= t, sorted by (degree, v)."""
    if t < 0:
        raise PreconditionViolated(f"t must be >= 0, got {t}")
    if pol.g != g:
        raise DimensionMismatch(f"g = {g} but the polarization has {pol.g} multipliers")

    ranges = [range(-isqrt(t // m), isqrt(t // m) + 1) for m in pol.multipliers]
    curves = []
    for v in product(*ranges):
        if not is_primitive(v) or normalize_sign(v) != v:
            continue
        if ordinary_degree(pol, v) <= t:
            curves.append(OrdinaryCurve(v=v))
    curves.sort(key=lambda c: (ordinary_degree(pol, c.v), c.v))
    return curves


def ordinary_coords(v: Sequence[int]) -> Tuple[int, ...]:
    """
    The class of E_v. It does not depend on the CM triple: lambda = (v | 0)
    has diagonal block w * v v^T with content w and no minors.
    """
    if len(v) == 2:
        a, b = v
        return a * a, b * b, a * b, 0
    if len(v) == 3:
        a, b, c = v
        return a * a, b * b, c * c, a * b, a * c, b * c, 0, 0, 0
    raise DimensionMismatch(f"expected 2 or 3 entries, got {len(v)}")


def ordinary_records(pol: Polarization, t: int) -> List[CurveRecord]:
    """The census when End(E) = Z: ordinary curves only."""
    records = [
        CurveRecord(coords=ordinary_coords(c.v), degree=ordinary_degree(pol, c.v), kind=CurveKind.ORDINARY)
        for c in enumerate_ordinary(pol.g, pol, t)
    ]
    logger.info(f"ordinary census, pol = {pol.multipliers}, t = {t}: {len(records)} curves")
    return sort_records(records)


def ordinary_class(cm: CmParams, v: OrdinaryCurve) -> Union[SurfaceClass, ThreefoldClass]:
    lam = LatticeVector.from_coords(tuple(v.v) + (0,) * v.g)
    return class_from_lambda2(cm, lam) if v.g == 2 else class_from_lambda3(cm, lam)


def class_from_endomorphism_vector(
    cm: CmParams,
    phi: Sequence[Tuple[int, int]],
    pol: Optional[Polarization] = None,
) -> EndomorphismReport:
    """
    The curve phi(E) for phi = (phi_1, ..., phi_g), phi_i = x_i + y_i * (w tau).

    Args:
        cm: The CM triple.
        phi: One pair (x_i, y_i) per factor.
        pol: Product polarization, principal by default.

    Returns:
        The class of the saturation of Z lambda + Z bar(lambda) for
        lambda = (x | w y), with its degree and the value
        sum m_i (x_i^2 - u x_i y_i + vw y_i^2) that phi predicts. The two
        agree when phi embeds E onto its image.
    """
    g = len(phi)
    if g not in SUPPORTED_DIMENSIONS:
        raise DimensionMismatch(f"expected 2 or 3 endomorphisms, got {g}")
    pol = pol or Polarization(multipliers=(1,) * g)
    if pol.g != g:
        raise DimensionMismatch(f"polarization has g = {pol.g}, phi has {g} entries")

    xs = [int(x) for x, _ in phi]
    ys = [int(y) for _, y in phi]
    if not any(xs) and not any(ys):
        raise ZeroMap("phi is identically zero")

    raw = xs + [cm.w * y for y in ys]
    c = content(raw)
    lam = LatticeVector.from_coords([x // c for x in raw])

    if g == 2:
        cls = class_from_lambda2(cm, lam)
        class_degree, kind = degree2(pol, cls), classify2(cls)
    else:
        cls = class_from_lambda3(cm, lam)
        class_degree, kind = degree3(pol, cls), classify3(cls)

    formula_degree = sum(
        m * (x * x - cm.u * x * y + cm.vw * y * y) for m, x, y in zip(pol.multipliers, xs, ys)
    )
    report = EndomorphismReport(
        coords=cls.coords,
        kind=kind,
        class_degree=class_degree,
        formula_degree=formula_degree,
        lattice_content=c,
    )
    if not report.degrees_match:
        logger.warning(f"phi = {list(phi)} is not an embedding: class degree {class_degree}, formula {formula_degree}")
    return report
