# src/core/bounds.py

"""
Upper bounds for the number of curves of degree <= t.

Lattice-point bounds for convex regions are applied to the ellipse of the
binary form x^2 + u x y + vw y^2 and to the ellipsoid of a polarization.
Constants obtained by quadrature are inflated by a one-sided safety factor
so that every reported value stays an upper bound.
"""

from __future__ import annotations

import math
from enum import Enum
from typing import Dict, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel
from scipy import integrate

from src.config import get_settings
from src.core.cm import CmParams, NoCm, Polarization
from src.core.errors import DimensionMismatch, PreconditionViolated
from src.utils.logger import get_logger

logger = get_logger(__name__)


class BoundKind(str, Enum):
    NOSARZEWSKA = "nosarzewska"
    OVERHAGEN = "overhagen"
    CENSUS2 = "census2_bound"
    CENSUS3 = "census3_bound"


class BoundReport(BaseModel):
    kind: BoundKind
    constants: Dict[str, float]
    multipliers: Tuple[int, ...]
    t: int
    value: float


def _tolerances(epsrel: Optional[float], safety: Optional[float]) -> Tuple[float, float]:
    settings = get_settings().bounds
    return (
        settings.quad_epsrel if epsrel is None else epsrel,
        settings.safety_factor if safety is None else safety,
    )


def ellipse_constants(
    a: float,
    b: float,
    c: float,
    epsrel: Optional[float] = None,
    safety: Optional[float] = None,
) -> Tuple[float, float]:
    """
    Area and (inflated) perimeter of {a x^2 + b x y + c y^2 <= 1}.

    Args:
        a, b, c: Coefficients of a positive definite binary form.
        epsrel: Quadrature tolerance, from settings by default.
        safety: Relative inflation of the perimeter, from settings by default.

    Returns:
        (A, L)
    """
    det = a * c - b * b / 4
    if a <= 0 or det <= 0:
        raise PreconditionViolated(f"form ({a}, {b}, {c}) is not positive definite")
    epsrel, safety = _tolerances(epsrel, safety)

    area = math.pi / math.sqrt(det)
    eigenvalues = np.linalg.eigvalsh(np.array([[a, b / 2], [b / 2, c]], dtype=float))
    p, q = (1.0 / np.sqrt(eigenvalues)).tolist()

    # quarter arc, times 4
    quarter, _ = integrate.quad(
        lambda s: math.sqrt(p * p * math.sin(s) ** 2 + q * q * math.cos(s) ** 2),
        0.0,
        math.pi / 2,
        epsabs=0.0,
        epsrel=epsrel,
    )
    perimeter = 4.0 * quarter * (1.0 + safety)
    return area, perimeter


def ellipse_geometry(cm: CmParams) -> Tuple[float, float]:
    """(A, L) of {x^2 + u x y + vw y^2 <= 1}; A = pi / sqrt(vw - u^2/4)."""
    return ellipse_constants(1, cm.u, cm.vw)


def ellipsoid_geometry(
    pol: Polarization,
    epsrel: Optional[float] = None,
    safety: Optional[float] = None,
) -> Tuple[float, float, float]:
    """
    Volume, surface area and total mean curvature of {m x^2 + n y^2 + p z^2 <= 1}.

    S and M are integrated over the first octant of the standard
    (theta, phi) parameterization and multiplied by 8.
    """
    if pol.g != 3:
        raise DimensionMismatch(f"ellipsoid_geometry needs 3 multipliers, got {pol.g}")
    epsrel, safety = _tolerances(epsrel, safety)
    a, b, c = (1.0 / math.sqrt(m) for m in pol.multipliers)

    volume = 4.0 * math.pi / 3.0 / math.sqrt(math.prod(pol.multipliers))

    def area_element(phi: float, theta: float) -> float:
        st, ct = math.sin(theta), math.cos(theta)
        sp, cp = math.sin(phi), math.cos(phi)
        return st * math.sqrt(
            (b * c * st * cp) ** 2 + (a * c * st * sp) ** 2 + (a * b * ct) ** 2
        )

    def mean_curvature(phi: float, theta: float) -> float:
        x = a * math.sin(theta) * math.cos(phi)
        y = b * math.sin(theta) * math.sin(phi)
        z = c * math.cos(theta)
        h = 1.0 / math.sqrt(x * x / a**4 + y * y / b**4 + z * z / c**4)
        return h**3 * (a * a + b * b + c * c - x * x - y * y - z * z) / (2.0 * a * a * b * b * c * c)

    half_pi = math.pi / 2
    s_octant, _ = integrate.dblquad(
        area_element, 0.0, half_pi, 0.0, half_pi, epsabs=0.0, epsrel=epsrel
    )
    m_octant, _ = integrate.dblquad(
        lambda phi, theta: mean_curvature(phi, theta) * area_element(phi, theta),
        0.0, half_pi, 0.0, half_pi, epsabs=0.0, epsrel=epsrel,
    )
    inflate = 1.0 + safety
    return volume, 8.0 * s_octant * inflate, 8.0 * m_octant * inflate


def nosarzewska_bound(area: float, perimeter: float, t: float) -> float:
    """Lattice points in the sqrt(t)-dilate of a convex region: A t + (L/2) sqrt(t) + 1."""
    return area * t + perimeter / 2.0 * math.sqrt(t) + 1.0


def overhagen_bound(volume: float, surface: float, mean_curvature: float, t: float) -> float:
    """V t^(3/2) + (S/2) t + (M/pi) t^(1/2) + 1."""
    root = math.sqrt(t)
    return volume * t * root + surface / 2.0 * t + mean_curvature / math.pi * root + 1.0


def trapz_sqrt_bound(t: int) -> float:
    """Upper bound (pi/8) t^2 - (t - 2)/(6t) for sum_{n=0}^{t} sqrt(n (t - n))."""
    if t < 1:
        raise PreconditionViolated(f"t must be >= 1, got {t}")
    return math.pi / 8.0 * t * t - (t - 2) / (6.0 * t)


def _sqrt_sum_term(t_prime: int) -> float:
    # empty sum at t' = 0
    return trapz_sqrt_bound(t_prime) if t_prime > 0 else 0.0


def _first_factor(area: float, perimeter: float, t_prime: int, linear: int) -> float:
    cubic = (t_prime**3 - t_prime) / 6.0
    return area * cubic + perimeter / 2.0 * _sqrt_sum_term(t_prime) + linear * t_prime


def census2_bound(cm: Union[CmParams, NoCm], pol: Polarization, t: int) -> BoundReport:
    """Upper bound for the number of curves of degree <= t in E^2."""
    if t < 0:
        raise PreconditionViolated(f"t must be >= 0, got {t}")
    if pol.g != 2:
        raise DimensionMismatch(f"census2_bound needs 2 multipliers, got {pol.g}")
    m, n = sorted(pol.multipliers)

    if isinstance(cm, NoCm):
        area, perimeter = ellipse_constants(m, 0, n)
        return BoundReport(
            kind=BoundKind.NOSARZEWSKA,
            constants={"A": area, "L": perimeter},
            multipliers=pol.multipliers,
            t=t,
            value=nosarzewska_bound(area, perimeter, t),
        )

    area, perimeter = ellipse_geometry(cm)
    t_prime = t // m
    value = _first_factor(area, perimeter, t_prime, 1)
    logger.debug(f"census2_bound t = {t}, t' = {t_prime}: {value}")
    return BoundReport(
        kind=BoundKind.CENSUS2,
        constants={"A": area, "L": perimeter, "C": area / (6.0 * m**3)},
        multipliers=pol.multipliers,
        t=t,
        value=value,
    )


def census3_bound(cm: Union[CmParams, NoCm], pol: Polarization, t: int) -> BoundReport:
    """Upper bound for the number of curves of degree <= t in E^3."""
    if t < 0:
        raise PreconditionViolated(f"t must be >= 0, got {t}")
    if pol.g != 3:
        raise DimensionMismatch(f"census3_bound needs 3 multipliers, got {pol.g}")

    if isinstance(cm, NoCm):
        volume, surface, mean_curvature = ellipsoid_geometry(pol)
        return BoundReport(
            kind=BoundKind.OVERHAGEN,
            constants={"V": volume, "S": surface, "M": mean_curvature},
            multipliers=pol.multipliers,
            t=t,
            value=overhagen_bound(volume, surface, mean_curvature, t),
        )

    m, n, p = sorted(pol.multipliers)
    area, perimeter = ellipse_geometry(cm)
    t_prime = t // m
    r = (t // n) * (t // p)
    first = _first_factor(area, perimeter, t_prime, 2)
    second = area * r + perimeter / 2.0 * math.sqrt(r) + 1.0
    return BoundReport(
        kind=BoundKind.CENSUS3,
        constants={"A": area, "L": perimeter, "C": area * area / (3.0 * m**3 * n * p)},
        multipliers=pol.multipliers,
        t=t,
        value=2.0 * first * second,
    )


def lattice_count_ellipse(a: int, b: int, c: int, t: int) -> int:
    """Exact number of integer (x, y) with a x^2 + b x y + c y^2 <= t."""
    det4 = 4 * a * c - b * b
    if a <= 0 or det4 <= 0:
        raise PreconditionViolated(f"form ({a}, {b}, {c}) is not positive definite")
    x_max = math.isqrt(4 * c * t // det4) + 1
    y_max = math.isqrt(4 * a * t // det4) + 1
    x, y = np.meshgrid(
        np.arange(-x_max, x_max + 1, dtype=np.int64),
        np.arange(-y_max, y_max + 1, dtype=np.int64),
        indexing="ij",
    )
    return int(np.count_nonzero(a * x * x + b * x * y + c * y * y <= t))


def lattice_count_ellipsoid(m: int, n: int, p: int, t: int) -> int:
    """Exact number of integer (x, y, z) with m x^2 + n y^2 + p z^2 <= t."""
    axes = [np.arange(-math.isqrt(t // k), math.isqrt(t // k) + 1, dtype=np.int64) for k in (m, n, p)]
    x, y, z = np.meshgrid(*axes, indexing="ij")
    return int(np.count_nonzero(m * x * x + n * y * y + p * z * z <= t))
