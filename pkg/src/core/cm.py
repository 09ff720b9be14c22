# src/core/cm.py

"""
CM parameters, period-lattice vectors and the arithmetic of tau.

tau is never materialized: it is the root of w*tau^2 + u*tau + v = 0 and
every quantity below is written through the integer triple (u, v, w).
A lattice vector lambda = lambda_1 + tau*lambda_2 is stored as the two
integer blocks (lambda_1 | lambda_2).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt
from typing import List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, computed_field, model_validator

from src.core.errors import (
    DimensionMismatch,
    NonNegativeDiscriminant,
    NonPositiveW,
    NotCoprime,
    ZeroVector,
)
from src.utils.logger import get_logger

logger = get_logger(__name__)

SUPPORTED_DIMENSIONS = (2, 3)


def _check_cm_invariants(u: int, v: int, w: int) -> None:
    if w <= 0:
        raise NonPositiveW(f"w > 0 violated: w = {w}")
    if gcd(gcd(u, v), w) != 1:
        raise NotCoprime(f"gcd(u, v, w) = 1 violated: gcd({u}, {v}, {w}) = {gcd(gcd(u, v), w)}")
    disc = u * u - 4 * v * w
    if disc >= 0:
        raise NonNegativeDiscriminant(f"u^2 - 4vw < 0 violated: discriminant = {disc}")


class CmParams(BaseModel):
    """The triple (u, v, w) with w*tau^2 + u*tau + v = 0."""

    model_config = ConfigDict(frozen=True)

    u: int
    v: int
    w: int

    @model_validator(mode="after")
    def validate_invariants(self):
        _check_cm_invariants(self.u, self.v, self.w)
        return self

    @computed_field  # type: ignore[prop-decorator]
    @property
    def disc(self) -> int:
        return self.u * self.u - 4 * self.v * self.w

    @property
    def vw(self) -> int:
        return self.v * self.w


class NoCm(BaseModel):
    """Selects the mode End(E) = Z, where only ordinary curves exist."""

    model_config = ConfigDict(frozen=True)


class LatticeVector(BaseModel):
    """An element of Z^g + tau Z^g as its real and tau integer blocks."""

    model_config = ConfigDict(frozen=True)

    g: int
    real_part: Tuple[int, ...]
    tau_part: Tuple[int, ...]

    @model_validator(mode="after")
    def validate_blocks(self):
        if self.g not in SUPPORTED_DIMENSIONS:
            raise ValueError(f"dimension g must be 2 or 3, got {self.g}")
        if len(self.real_part) != self.g or len(self.tau_part) != self.g:
            raise ValueError(
                f"both blocks must have length g = {self.g}: "
                f"got {len(self.real_part)} and {len(self.tau_part)}"
            )
        return self

    @classmethod
    def from_coords(cls, coords: Sequence[int]) -> "LatticeVector":
        """Build from the flat 2g coordinates (lambda_1 | lambda_2)."""
        coords = tuple(int(c) for c in coords)
        if len(coords) % 2:
            raise ValueError(f"expected an even number of coordinates, got {len(coords)}")
        g = len(coords) // 2
        return cls(g=g, real_part=coords[:g], tau_part=coords[g:])

    @property
    def coords(self) -> Tuple[int, ...]:
        return self.real_part + self.tau_part

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __add__(self, other: "LatticeVector") -> "LatticeVector":
        _require_same_dimension(self, other)
        return LatticeVector.from_coords([a + b for a, b in zip(self.coords, other.coords)])

    def __neg__(self) -> "LatticeVector":
        return LatticeVector.from_coords([-a for a in self.coords])

    def scale(self, k: int) -> "LatticeVector":
        return LatticeVector.from_coords([k * a for a in self.coords])


class Polarization(BaseModel):
    """Product polarization p_1^*(m_1 Theta) + ... + p_g^*(m_g Theta)."""

    model_config = ConfigDict(frozen=True)

    multipliers: Tuple[int, ...]

    @model_validator(mode="after")
    def validate_multipliers(self):
        if len(self.multipliers) not in SUPPORTED_DIMENSIONS:
            raise ValueError(f"expected 2 or 3 multipliers, got {len(self.multipliers)}")
        if any(m < 1 for m in self.multipliers):
            raise ValueError(f"every multiplier must be >= 1, got {self.multipliers}")
        return self

    @property
    def g(self) -> int:
        return len(self.multipliers)


def _require_same_dimension(*objs) -> None:
    dims = {o.g for o in objs}
    if len(dims) != 1:
        raise DimensionMismatch(f"dimension mismatch: {sorted(dims)}")


def validate_cm(u: int, v: int, w: int) -> CmParams:
    """
    Validate a CM triple and return it as CmParams.

    Raises:
        NonPositiveW, NotCoprime, NonNegativeDiscriminant: naming the violated invariant.
    """
    _check_cm_invariants(u, v, w)
    return CmParams(u=u, v=v, w=w)


def bar_coords(u: int, v: int, w: int, real: Sequence[int], tau: Sequence[int]) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    new_real = tuple(-v * y for y in tau)
    new_tau = tuple(w * x - u * y for x, y in zip(real, tau))
    return new_real, new_tau


def bar(cm: CmParams, lam: LatticeVector) -> LatticeVector:
    """Multiplication by w*tau on the lattice: lambda -> bar(lambda)."""
    real, tau = bar_coords(cm.u, cm.v, cm.w, lam.real_part, lam.tau_part)
    return LatticeVector(g=lam.g, real_part=real, tau_part=tau)


def q2(cm: CmParams, x: int, y: int) -> int:
    """w x^2 - u x y + v y^2, the diagonal entries of the lambda ^ bar(lambda) matrix."""
    return cm.w * x * x - cm.u * x * y + cm.v * y * y


def qform(cm: CmParams, x: int, y: int) -> int:
    """x^2 + u x y + v w y^2."""
    return x * x + cm.u * x * y + cm.vw * y * y


def qform_representations(cm: CmParams, n: int) -> List[Tuple[int, int]]:
    """
    All integer (x, y) with qform(x, y) = n, sorted.

    Uses 4*qform = (2x + uy)^2 + (4vw - u^2) y^2, so |y| <= sqrt(4n / (4vw - u^2)).
    """
    if n < 0:
        return []
    if n == 0:
        return [(0, 0)]
    u = cm.u
    d = -cm.disc
    y_max = isqrt(4 * n // d)
    solutions = []
    for y in range(-y_max, y_max + 1):
        rest = 4 * n - d * y * y
        if rest < 0:
            continue
        s = isqrt(rest)
        if s * s != rest:
            continue
        for root in {s, -s}:
            twice_x = root - u * y
            if twice_x % 2 == 0:
                solutions.append((twice_x // 2, y))
    return sorted(solutions)


def degree_numerator(cm: CmParams, pol: Polarization, lam: LatticeVector) -> int:
    """-(lambda, bar(lambda)) = sum_i m_i q2(lambda_1i, lambda_2i)."""
    if pol.g != lam.g:
        raise DimensionMismatch(f"polarization has g = {pol.g}, vector has g = {lam.g}")
    return sum(m * q2(cm, x, y) for m, x, y in zip(pol.multipliers, lam.real_part, lam.tau_part))


def rational_line_membership(
    cm: CmParams, lam: LatticeVector, mu: LatticeVector
) -> Optional[Tuple[Fraction, Fraction]]:
    """
    Decide whether mu lies on the Q(tau)-line through lambda.

    Returns (x, y) with mu = x*lambda + (y/w)*bar(lambda), or None when mu is
    off the line. lambda and bar(lambda) are Q-independent because tau is not
    real, so a nonsingular 2x2 minor always exists.
    """
    _require_same_dimension(lam, mu)
    if lam.is_zero():
        raise ZeroVector("rational_line_membership requires lambda != 0")

    col_a = lam.coords
    col_b = bar(cm, lam).coords
    target = mu.coords
    n = len(target)

    for i in range(n):
        for j in range(i + 1, n):
            det = col_a[i] * col_b[j] - col_a[j] * col_b[i]
            if det == 0:
                continue
            x = Fraction(target[i] * col_b[j] - target[j] * col_b[i], det)
            z = Fraction(col_a[i] * target[j] - col_a[j] * target[i], det)
            if all(x * a + z * b == t for a, b, t in zip(col_a, col_b, target)):
                return x, z * cm.w
            return None

    raise AssertionError("lambda and bar(lambda) are dependent; CM invariants were bypassed")
