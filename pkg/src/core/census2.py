# src/core/census2.py

"""
Elliptic curves in E^2 as primitive solutions (alpha, beta, gamma, eta) of

    alpha*beta - gamma*(gamma + u*eta) = v*w*eta^2,   alpha, beta >= 0,

with degree m*alpha + n*beta under the product polarization (m, n).
"""

from __future__ import annotations

from functools import partial, reduce
from math import gcd
from multiprocessing import Pool
from typing import List, Sequence, Tuple, Union

from pydantic import BaseModel, ConfigDict
from sympy import Matrix

from src.core.cm import (
    CmParams,
    LatticeVector,
    NoCm,
    Polarization,
    qform_representations,
    rational_line_membership,
)
from src.core.errors import DimensionMismatch, InvalidClass, NotPrimitive, PreconditionViolated
from src.core.exterior import Bivector, complete_by_bar, is_primitive, primitive_kernel_vector
from src.core.models import BasisPair, CurveKind, CurveRecord, sort_records
from src.utils.logger import get_logger

logger = get_logger(__name__)


class SurfaceClass(BaseModel):
    """Essential coordinates of (1/r)(lambda ^ bar(lambda)) in E^2."""

    model_config = ConfigDict(frozen=True)

    alpha: int
    beta: int
    gamma: int
    eta: int

    @property
    def coords(self) -> Tuple[int, int, int, int]:
        return self.alpha, self.beta, self.gamma, self.eta

    @classmethod
    def from_coords(cls, s: Sequence[int]) -> "SurfaceClass":
        if len(s) != 4:
            raise DimensionMismatch(f"a surface class has 4 coordinates, got {len(s)}")
        alpha, beta, gamma, eta = (int(x) for x in s)
        return cls(alpha=alpha, beta=beta, gamma=gamma, eta=eta)


ClassLike = Union[SurfaceClass, Sequence[int]]


def _as_tuple(s: ClassLike) -> Tuple[int, ...]:
    t = s.coords if isinstance(s, SurfaceClass) else tuple(int(x) for x in s)
    if len(t) != 4:
        raise DimensionMismatch(f"a surface class has 4 coordinates, got {len(t)}")
    return t


def essential_coords2(u: int, v: int, w: int, a: int, b: int, c: int, d: int) -> Tuple[int, int, int, int]:
    """Unnormalized essential coordinates of lambda ^ bar(lambda) for lambda = (a, b | c, d)."""
    return (
        w * a * a - u * a * c + v * c * c,
        w * b * b - u * b * d + v * d * d,
        w * a * b - u * a * d + v * c * d,
        a * d - b * c,
    )


def check_class2(cm: CmParams, s: ClassLike) -> bool:
    alpha, beta, gamma, eta = _as_tuple(s)
    if alpha < 0 or beta < 0:
        return False
    if not is_primitive((alpha, beta, gamma, eta)):
        return False
    return alpha * beta - gamma * (gamma + cm.u * eta) == cm.vw * eta * eta


def class_from_lambda2(cm: CmParams, lam: LatticeVector) -> SurfaceClass:
    """The class (1/r)(lambda ^ bar(lambda)) of the curve through a primitive lambda."""
    if lam.g != 2:
        raise DimensionMismatch(f"class_from_lambda2 needs g = 2, got {lam.g}")
    if not is_primitive(lam.coords):
        raise NotPrimitive(f"lambda = {lam.coords} is not primitive")
    (a, b), (c, d) = lam.real_part, lam.tau_part
    raw = essential_coords2(cm.u, cm.v, cm.w, a, b, c, d)
    r = reduce(gcd, raw, 0)
    return SurfaceClass.from_coords([x // r for x in raw])


def degree2(pol: Polarization, s: ClassLike) -> int:
    if pol.g != 2:
        raise DimensionMismatch(f"degree2 needs a polarization with 2 multipliers, got {pol.g}")
    alpha, beta, _, _ = _as_tuple(s)
    m, n = pol.multipliers
    return m * alpha + n * beta


def classify2(s: ClassLike) -> CurveKind:
    eta = _as_tuple(s)[3]
    return CurveKind.ORDINARY if eta == 0 else CurveKind.EXTRA_ORDINARY


def bivector_from_class2(cm: CmParams, s: ClassLike) -> Bivector:
    """The six wedge coordinates rebuilt from (alpha, beta, gamma, eta)."""
    alpha, beta, gamma, eta = _as_tuple(s)
    return Bivector(
        g=2,
        coords=(-cm.v * eta, alpha, gamma, gamma + cm.u * eta, beta, -cm.w * eta),
    )


def linear_system2(cm: CmParams, s: ClassLike) -> List[List[int]]:
    """Coefficient matrix of the linear system whose kernel spans the curve's lattice over Q."""
    alpha, beta, gamma, eta = _as_tuple(s)
    u, v, w = cm.u, cm.v, cm.w
    return [
        [w * eta, 0, gamma, -alpha],
        [-gamma - u * eta, alpha, v * eta, 0],
        [0, w * eta, beta, -gamma - u * eta],
        [-beta, gamma, 0, v * eta],
    ]


def det_identity2(cm: CmParams, s: Sequence[int]) -> Tuple[int, int]:
    """(det of the linear system, -(alpha*beta - gamma*(gamma + u*eta) - vw*eta^2)^2)."""
    alpha, beta, gamma, eta = _as_tuple(s)
    det = int(Matrix(linear_system2(cm, s)).det())
    defect = alpha * beta - gamma * (gamma + cm.u * eta) - cm.vw * eta * eta
    return det, -defect * defect


def reconstruct2(cm: CmParams, s: ClassLike) -> Tuple[LatticeVector, LatticeVector]:
    """
    A positively oriented basis (lambda, mu) of the saturated sublattice of the curve.

    Raises:
        InvalidClass: if s does not satisfy the class equations.
    """
    target = _as_tuple(s)
    if not check_class2(cm, target):
        raise InvalidClass(f"{target} is not a valid class for (u, v, w) = ({cm.u}, {cm.v}, {cm.w})")

    lam = LatticeVector.from_coords(primitive_kernel_vector(linear_system2(cm, target)))
    (a, b), (c, d) = lam.real_part, lam.tau_part
    raw = essential_coords2(cm.u, cm.v, cm.w, a, b, c, d)
    r = reduce(gcd, raw, 0)
    if tuple(x // r for x in raw) != target:
        raise InvalidClass(f"kernel vector {lam.coords} does not reproduce the class {target}")

    mu = complete_by_bar(cm, lam, r)
    membership = rational_line_membership(cm, lam, mu)
    if membership is None or membership[1] <= 0:
        raise InvalidClass(f"reconstructed basis for {target} is not positively oriented")
    return lam, mu


def _stratum2(cm: CmParams, pol: Polarization, t: int, alpha: int) -> List[CurveRecord]:
    m, n = pol.multipliers
    records = []
    for beta in range((t - m * alpha) // n + 1):
        for gamma, eta in qform_representations(cm, alpha * beta):
            s = (alpha, beta, gamma, eta)
            if not is_primitive(s):
                continue
            records.append(CurveRecord(coords=s, degree=m * alpha + n * beta, kind=classify2(s)))
    logger.debug(f"alpha = {alpha}: {len(records)} classes")
    return records


def attach_basis2(cm: CmParams, record: CurveRecord) -> CurveRecord:
    lam, mu = reconstruct2(cm, record.coords)
    return record.model_copy(update={"basis": BasisPair(lam=lam.coords, mu=mu.coords)})


def enumerate2(
    cm: Union[CmParams, NoCm],
    pol: Polarization,
    t: int,
    threads: int = 1,
) -> List[CurveRecord]:
    """
    Every elliptic curve of degree <= t in E^2, sorted by (degree, coords).

    With NoCm only the ordinary curves exist; they are delegated to the
    ordinary census. Strata alpha = 0..t//m are independent and may run in
    several worker processes; the result does not depend on their number.
    """
    if t < 0:
        raise PreconditionViolated(f"t must be >= 0, got {t}")
    if pol.g != 2:
        raise DimensionMismatch(f"enumerate2 needs 2 multipliers, got {pol.g}")

    if isinstance(cm, NoCm):
        from src.core.ordinary import ordinary_records

        return ordinary_records(pol, t)

    alphas = range(t // pol.multipliers[0] + 1)
    if threads > 1 and len(alphas) > 1:
        with Pool(processes=min(threads, len(alphas))) as pool:
            strata = pool.map(partial(_stratum2, cm, pol, t), alphas)
    else:
        strata = [_stratum2(cm, pol, t, a) for a in alphas]

    records = sort_records([r for stratum in strata for r in stratum])
    logger.info(f"E^2 census (u, v, w) = ({cm.u}, {cm.v}, {cm.w}), pol = {pol.multipliers}, t = {t}: {len(records)} curves")
    return records
