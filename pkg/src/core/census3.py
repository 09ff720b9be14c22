# src/core/census3.py

"""
Elliptic curves in E^3.

A class is the primitive 9-tuple (alpha, beta, gamma, delta, epsilon, zeta,
eta, theta, iota) of essential coordinates. Writing lambda = (x | y), the
entries M_ij = w x_i x_j - u x_i y_j + v y_i y_j (i <= j) give
alpha, beta, gamma on the diagonal and delta = M_01, epsilon = M_02,
zeta = M_12; eta, theta, iota are the minors x_i y_j - x_j y_i for
(i, j) = (0, 1), (0, 2), (1, 2).
"""

from __future__ import annotations

from functools import partial, reduce
from itertools import product
from math import gcd
from multiprocessing import Pool
from typing import List, Sequence, Tuple, Union

from pydantic import BaseModel, ConfigDict
from sympy import Matrix

from src.core.census2 import linear_system2
from src.core.cm import (
    CmParams,
    LatticeVector,
    NoCm,
    Polarization,
    qform_representations,
    rational_line_membership,
)
from src.core.errors import DimensionMismatch, InvalidClass, NotPrimitive, PreconditionViolated
from src.core.exterior import Bivector, complete_by_bar, is_primitive, pair_index, primitive_kernel_vector
from src.core.models import BasisPair, CurveKind, CurveRecord, sort_records
from src.utils.logger import get_logger

logger = get_logger(__name__)

FIELDS = ("alpha", "beta", "gamma", "delta", "epsilon", "zeta", "eta", "theta", "iota")
PAIRS = ((0, 1), (0, 2), (1, 2))


class ThreefoldClass(BaseModel):
    model_config = ConfigDict(frozen=True)

    alpha: int
    beta: int
    gamma: int
    delta: int
    epsilon: int
    zeta: int
    eta: int
    theta: int
    iota: int

    @property
    def coords(self) -> Tuple[int, ...]:
        return tuple(getattr(self, name) for name in FIELDS)

    @classmethod
    def from_coords(cls, s: Sequence[int]) -> "ThreefoldClass":
        if len(s) != 9:
            raise DimensionMismatch(f"a threefold class has 9 coordinates, got {len(s)}")
        return cls(**{name: int(x) for name, x in zip(FIELDS, s)})


ClassLike = Union[ThreefoldClass, Sequence[int]]


def _as_tuple(s: ClassLike) -> Tuple[int, ...]:
    t = s.coords if isinstance(s, ThreefoldClass) else tuple(int(x) for x in s)
    if len(t) != 9:
        raise DimensionMismatch(f"a threefold class has 9 coordinates, got {len(t)}")
    return t


def essential_coords3(u: int, v: int, w: int, real: Sequence[int], tau: Sequence[int]) -> Tuple[int, ...]:
    """Unnormalized essential coordinates of lambda ^ bar(lambda) for lambda = (real | tau)."""

    def m(i: int, j: int) -> int:
        return w * real[i] * real[j] - u * real[i] * tau[j] + v * tau[i] * tau[j]

    def minor(i: int, j: int) -> int:
        return real[i] * tau[j] - real[j] * tau[i]

    return (
        m(0, 0), m(1, 1), m(2, 2),
        m(0, 1), m(0, 2), m(1, 2),
        minor(0, 1), minor(0, 2), minor(1, 2),
    )


def quadratic_conditions_hold(cm: CmParams, s: Sequence[int]) -> bool:
    """The three principal-minor relations, one for each pair of factors."""
    alpha, beta, gamma, delta, epsilon, zeta, eta, theta, iota = s
    u, vw = cm.u, cm.vw
    return (
        alpha * beta - delta * (delta + u * eta) == vw * eta * eta
        and beta * gamma - zeta * (zeta + u * iota) == vw * iota * iota
        and alpha * gamma - epsilon * (epsilon + u * theta) == vw * theta * theta
    )


def cubic_defect(cm: CmParams, s: Sequence[int]) -> int:
    """2*alpha*beta*gamma minus the right-hand side of the cubic condition; zero on valid classes."""
    alpha, beta, gamma, delta, epsilon, zeta, eta, theta, iota = s
    u, vw = cm.u, cm.vw
    rhs = (
        delta * (epsilon + u * theta) * zeta
        + (delta + u * eta) * epsilon * (zeta + u * iota)
        + vw * (
            (2 * delta + u * eta) * theta * iota
            - (2 * epsilon + u * theta) * eta * iota
            + (2 * zeta + u * iota) * eta * theta
        )
    )
    return 2 * alpha * beta * gamma - rhs


def check_class3(cm: CmParams, s: ClassLike) -> bool:
    t = _as_tuple(s)
    if min(t[:3]) < 0 or not is_primitive(t):
        return False
    return quadratic_conditions_hold(cm, t) and cubic_defect(cm, t) == 0


def class_from_lambda3(cm: CmParams, lam: LatticeVector) -> ThreefoldClass:
    if lam.g != 3:
        raise DimensionMismatch(f"class_from_lambda3 needs g = 3, got {lam.g}")
    if not is_primitive(lam.coords):
        raise NotPrimitive(f"lambda = {lam.coords} is not primitive")
    raw = essential_coords3(cm.u, cm.v, cm.w, lam.real_part, lam.tau_part)
    r = reduce(gcd, raw, 0)
    return ThreefoldClass.from_coords([x // r for x in raw])


def degree3(pol: Polarization, s: ClassLike) -> int:
    if pol.g != 3:
        raise DimensionMismatch(f"degree3 needs a polarization with 3 multipliers, got {pol.g}")
    t = _as_tuple(s)
    return sum(m * x for m, x in zip(pol.multipliers, t[:3]))


def classify3(s: ClassLike) -> CurveKind:
    t = _as_tuple(s)
    return CurveKind.ORDINARY if not any(t[6:]) else CurveKind.EXTRA_ORDINARY


def _diagonal_block(s: Sequence[int]) -> List[List[int]]:
    alpha, beta, gamma, delta, epsilon, zeta = s[:6]
    return [[alpha, delta, epsilon], [delta, beta, zeta], [epsilon, zeta, gamma]]


def _minors(s: Sequence[int]) -> dict:
    return dict(zip(PAIRS, s[6:]))


def bivector_from_class3(cm: CmParams, s: ClassLike) -> Bivector:
    """The fifteen wedge coordinates rebuilt from the nine essential ones."""
    t = _as_tuple(s)
    block = _diagonal_block(t)
    minors = _minors(t)

    def entry(i: int, j: int) -> int:
        if j < 3:
            return -cm.v * minors[(i, j)]
        if i >= 3:
            return -cm.w * minors[(i - 3, j - 3)]
        k = j - 3
        if i <= k:
            return block[i][k]
        return block[k][i] + cm.u * minors[(k, i)]

    return Bivector(g=3, coords=tuple(entry(i, j) for i, j in pair_index(3)))


def linear_system3(cm: CmParams, s: ClassLike) -> List[List[int]]:
    """The 6x6 system on (a, b, c, d, e, f) whose determinant carries the cubic condition."""
    alpha, beta, gamma, delta, epsilon, zeta, eta, theta, iota = _as_tuple(s)
    u, v, w = cm.u, cm.v, cm.w
    return [
        [w * eta, 0, 0, delta, -alpha, 0],
        [-delta - u * eta, alpha, 0, v * eta, 0, 0],
        [0, w * iota, 0, 0, zeta, -beta],
        [0, -zeta - u * iota, beta, 0, v * iota, 0],
        [-gamma, 0, epsilon, 0, 0, v * theta],
        [0, 0, w * theta, gamma, 0, -epsilon - u * theta],
    ]


def pairwise_system3(cm: CmParams, s: ClassLike) -> List[List[int]]:
    """
    The surface systems of the three coordinate pairs, stacked as a 12x6 matrix.

    The pair (i, j) contributes the 4x4 system of (x_i, x_j, y_i, y_j) built
    from (M_ii, M_jj, M_ij, minor_ij).
    """
    t = _as_tuple(s)
    block = _diagonal_block(t)
    minors = _minors(t)
    rows = []
    for i, j in PAIRS:
        columns = (i, j, 3 + i, 3 + j)
        sub = (block[i][i], block[j][j], block[i][j], minors[(i, j)])
        for small in linear_system2(cm, sub):
            row = [0] * 6
            for col, coeff in zip(columns, small):
                row[col] = coeff
            rows.append(row)
    return rows


def det_identity3(cm: CmParams, s: Sequence[int]) -> Tuple[int, int]:
    """
    (det of the 6x6 system, alpha*beta*gamma times the cubic defect).

    Raises:
        PreconditionViolated: if the three quadratic relations do not hold.
    """
    t = _as_tuple(s)
    if not quadratic_conditions_hold(cm, t):
        raise PreconditionViolated(f"{t} does not satisfy the quadratic relations for ({cm.u}, {cm.v}, {cm.w})")
    det = int(Matrix(linear_system3(cm, t)).det())
    return det, t[0] * t[1] * t[2] * cubic_defect(cm, t)


def reconstruct3(cm: CmParams, s: ClassLike) -> Tuple[LatticeVector, LatticeVector]:
    target = _as_tuple(s)
    if not check_class3(cm, target):
        raise InvalidClass(f"{target} is not a valid class for (u, v, w) = ({cm.u}, {cm.v}, {cm.w})")

    rows = pairwise_system3(cm, target)
    if target[0] * target[1] * target[2] != 0:
        rows = linear_system3(cm, target) + rows

    lam = LatticeVector.from_coords(primitive_kernel_vector(rows))
    raw = essential_coords3(cm.u, cm.v, cm.w, lam.real_part, lam.tau_part)
    r = reduce(gcd, raw, 0)
    if tuple(x // r for x in raw) != target:
        raise InvalidClass(f"kernel vector {lam.coords} does not reproduce the class {target}")

    mu = complete_by_bar(cm, lam, r)
    membership = rational_line_membership(cm, lam, mu)
    if membership is None or membership[1] <= 0:
        raise InvalidClass(f"reconstructed basis for {target} is not positively oriented")
    return lam, mu


def attach_basis3(cm: CmParams, record: CurveRecord) -> CurveRecord:
    lam, mu = reconstruct3(cm, record.coords)
    return record.model_copy(update={"basis": BasisPair(lam=lam.coords, mu=mu.coords)})


def _stratum3(cm: CmParams, pol: Polarization, t: int, alpha: int) -> List[CurveRecord]:
    m, n, p = pol.multipliers
    records = []
    for beta in range((t - m * alpha) // n + 1):
        for gamma in range((t - m * alpha - n * beta) // p + 1):
            candidates = product(
                qform_representations(cm, alpha * beta),
                qform_representations(cm, alpha * gamma),
                qform_representations(cm, beta * gamma),
            )
            for (delta, eta), (epsilon, theta), (zeta, iota) in candidates:
                s = (alpha, beta, gamma, delta, epsilon, zeta, eta, theta, iota)
                if not is_primitive(s) or cubic_defect(cm, s) != 0:
                    continue
                records.append(
                    CurveRecord(coords=s, degree=m * alpha + n * beta + p * gamma, kind=classify3(s))
                )
    logger.debug(f"alpha = {alpha}: {len(records)} classes")
    return records


def enumerate3(
    cm: Union[CmParams, NoCm],
    pol: Polarization,
    t: int,
    threads: int = 1,
) -> List[CurveRecord]:
    """Every elliptic curve of degree <= t in E^3, sorted by (degree, coords)."""
    if t < 0:
        raise PreconditionViolated(f"t must be >= 0, got {t}")
    if pol.g != 3:
        raise DimensionMismatch(f"enumerate3 needs 3 multipliers, got {pol.g}")

    if isinstance(cm, NoCm):
        from src.core.ordinary import ordinary_records

        return ordinary_records(pol, t)

    alphas = range(t // pol.multipliers[0] + 1)
    if threads > 1 and len(alphas) > 1:
        with Pool(processes=min(threads, len(alphas))) as pool:
            strata = pool.map(partial(_stratum3, cm, pol, t), alphas)
    else:
        strata = [_stratum3(cm, pol, t, a) for a in alphas]

    records = sort_records([r for stratum in strata for r in stratum])
    logger.info(f"E^3 census (u, v, w) = ({cm.u}, {cm.v}, {cm.w}), pol = {pol.multipliers}, t = {t}: {len(records)} curves")
    return records
