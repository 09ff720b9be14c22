# src/core/exterior.py

"""
Integer exterior algebra on the period lattice.

Bivector coordinates are indexed by pairs (i, j), i < j, in lexicographic
order over the 2g lattice coordinates (lambda_1 | lambda_2). This order is
part of the serialized output.
"""

from __future__ import annotations

from functools import reduce
from itertools import combinations
from math import gcd
from typing import List, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, model_validator
from sympy import Matrix, ilcm, mod_inverse
from sympy.core.intfunc import igcdex
from sympy.ntheory.modular import solve_congruence

from src.core.cm import CmParams, LatticeVector, bar, rational_line_membership
from src.core.errors import DependentVectors, DimensionMismatch, NotPrimitive, ZeroVector

BIVECTOR_LENGTH = {2: 6, 3: 15}


def pair_index(g: int) -> List[Tuple[int, int]]:
    """The fixed coordinate order of a bivector in dimension g."""
    return list(combinations(range(2 * g), 2))


class Bivector(BaseModel):
    """An element of Lambda ^ Lambda in the lexicographic pair basis."""

    model_config = ConfigDict(frozen=True)

    g: int
    coords: Tuple[int, ...]

    @model_validator(mode="after")
    def validate_length(self):
        expected = BIVECTOR_LENGTH.get(self.g)
        if expected is None or len(self.coords) != expected:
            raise ValueError(f"a bivector for g = {self.g} needs {expected} coordinates, got {len(self.coords)}")
        return self

    def is_zero(self) -> bool:
        return not any(self.coords)

    def entry(self, i: int, j: int) -> int:
        """Coefficient of e_i ^ e_j (0-based), antisymmetric in (i, j)."""
        if i == j:
            return 0
        if i > j:
            return -self.entry(j, i)
        return self.coords[pair_index(self.g).index((i, j))]


def wedge_coords(a: Sequence[int], b: Sequence[int]) -> Tuple[int, ...]:
    n = len(a)
    return tuple(a[i] * b[j] - a[j] * b[i] for i in range(n) for j in range(i + 1, n))


def wedge(lam: LatticeVector, mu: LatticeVector) -> Bivector:
    """lambda ^ mu with omega_ij = lambda_i mu_j - lambda_j mu_i."""
    if lam.g != mu.g:
        raise DimensionMismatch(f"cannot wedge vectors of dimension {lam.g} and {mu.g}")
    return Bivector(g=lam.g, coords=wedge_coords(lam.coords, mu.coords))


def content(v: Sequence[int]) -> int:
    """The gcd of the entries of a nonzero integer vector."""
    c = reduce(gcd, v, 0)
    if c == 0:
        raise ZeroVector("content is defined for nonzero vectors only")
    return c


def is_primitive(v: Sequence[int]) -> bool:
    return reduce(gcd, v, 0) == 1


def normalize_sign(v: Sequence[int]) -> Tuple[int, ...]:
    """Make the first nonzero entry positive."""
    for x in v:
        if x:
            return tuple(v) if x > 0 else tuple(-y for y in v)
    return tuple(v)


def quotient_content(lam: LatticeVector, mu: LatticeVector) -> int:
    """
    Content of the class of mu in Lambda / Z lambda.

    Unimodular column operations carry the primitive row lambda to the first
    unit vector; the same operations applied to mu give its coordinates in a
    basis adapted to Z lambda, and the gcd of all but the first is the answer.
    """
    if lam.g != mu.g:
        raise DimensionMismatch(f"dimension mismatch: {lam.g} vs {mu.g}")
    a = list(lam.coords)
    if not is_primitive(a):
        raise NotPrimitive(f"lambda must be primitive, content is {reduce(gcd, a, 0)}")
    b = list(mu.coords)

    for k in range(1, len(a)):
        if a[k] == 0:
            continue
        s, t, d = igcdex(a[0], a[k])
        p, q = a[k] // d, a[0] // d
        # columns (0, k) -> (s*c0 + t*ck, -p*c0 + q*ck), determinant s*q + t*p = 1
        a[0], a[k] = s * a[0] + t * a[k], -p * a[0] + q * a[k]
        b[0], b[k] = s * b[0] + t * b[k], -p * b[0] + q * b[k]

    rest = b[1:]
    c = reduce(gcd, rest, 0)
    if c == 0:
        raise DependentVectors("mu is an integer multiple of lambda")
    return c


def is_elliptic_basis(cm: CmParams, lam: LatticeVector, mu: LatticeVector) -> bool:
    """lambda, mu span a complex line and lambda ^ mu is primitive."""
    if rational_line_membership(cm, lam, mu) is None:
        return False
    return is_primitive(wedge(lam, mu).coords)


def primitive_kernel_vector(rows: Sequence[Sequence[int]]) -> Tuple[int, ...]:
    """
    First vector of the rational kernel of an integer matrix, scaled to a
    primitive integer vector with positive leading entry.
    """
    basis = Matrix(rows).nullspace()
    if not basis:
        raise ValueError("matrix has trivial kernel")
    vec = list(basis[0])
    denom = reduce(ilcm, [x.q for x in vec], 1)
    ints = [int(x * denom) for x in vec]
    c = content(ints)
    return normalize_sign([x // c for x in ints])


def complete_by_bar(cm: CmParams, lam: LatticeVector, r: int) -> LatticeVector:
    """
    The integer mu with lambda ^ mu = (1/r) lambda ^ bar(lambda).

    r divides [bar(lambda)] in Lambda / Z lambda, so bar(lambda) - k*lambda is
    divisible by r for some k; k solves the congruences k*lambda_i = bar_i mod r.
    Among the solutions mu + j*lambda the one whose entry at the leading
    coordinate of lambda lies in [0, lambda_p) is returned.
    """
    a = lam.coords
    lam_bar = bar(cm, lam).coords
    pairs = []
    for x, y in zip(a, lam_bar):
        d = gcd(x, r)
        if y % d:
            raise NotPrimitive(f"{r} does not divide the class of bar(lambda) modulo lambda")
        modulus = r // d
        if modulus > 1:
            pairs.append(((y // d) * mod_inverse(x // d, modulus) % modulus, modulus))
    k = 0
    if pairs:
        solved = solve_congruence(*pairs)
        if solved is None:
            raise NotPrimitive(f"{r} does not divide the class of bar(lambda) modulo lambda")
        k = int(solved[0])
    mu = [(y - k * x) // r for x, y in zip(a, lam_bar)]

    pivot = next(i for i, x in enumerate(a) if x)
    j = -(mu[pivot] // a[pivot]) if a[pivot] > 0 else mu[pivot] // -a[pivot]
    mu = [m + j * x for m, x in zip(mu, a)]
    return LatticeVector.from_coords(mu)
