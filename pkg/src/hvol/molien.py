"""Quotient surface singularities C^2/G via group-averaged trace sums.

Dimensions of the invariant ring are computed exactly: for each group
element the trace of the degree-m symmetric power is a sum of roots of
unity, tracked as an integer vector over the powers of a primitive lcm-order
root and reduced modulo the cyclotomic polynomial.  Averaging over the group
must then produce a rational integer, which is asserted.

For actions free in codimension one the series satisfies
``d_m + d_{m+1} = ((m+1)^2 + |G| - 1) / |G|`` at every m divisible by |G|,
the dimension count grows like m^2 / (2|G|), and the minimal normalized
volume of the quotient is 4/|G|, attained by the pushforward of the order
valuation at the origin (log discrepancy 2, volume 1/|G|).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import NonIntegerDimension, PreconditionViolated
from .exactgeom import rat


@dataclass(frozen=True)
class GroupElement:
    """Eigenvalues of a 2x2 unitary as rotation numbers p/q (e^{2 pi i p/q})."""

    eig1: Fraction
    eig2: Fraction

    def __post_init__(self):
        object.__setattr__(self, "eig1", rat(self.eig1) % 1)
        object.__setattr__(self, "eig2", rat(self.eig2) % 1)

    @property
    def is_identity(self) -> bool:
        return self.eig1 == 0 and self.eig2 == 0

    @property
    def has_unit_eigenvalue(self) -> bool:
        return self.eig1 == 0 or self.eig2 == 0


@dataclass(frozen=True)
class FiniteGroupAction:
    elements: tuple[GroupElement, ...]
    label: str = ""

    def __post_init__(self):
        if not any(e.is_identity for e in self.elements):
            raise PreconditionViolated("element list must contain the identity")

    @property
    def order(self) -> int:
        return len(self.elements)


@dataclass(frozen=True)
class DimensionSeries:
    """dims[m] = dimension of the degree-below-m part of the invariant ring."""

    dims: tuple[int, ...]

    def __post_init__(self):
        if len(self.dims) < 2 or self.dims[0] != 0 or self.dims[1] != 1:
            raise NonIntegerDimension("series must start 0, 1")
        if any(b < a for a, b in zip(self.dims, self.dims[1:])):
            raise NonIntegerDimension("series must be nondecreasing")

    def __getitem__(self, m: int) -> int:
        return self.dims[m]

    def __len__(self) -> int:
        return len(self.dims)


def cyclic_group(r: int, a: int) -> FiniteGroupAction:
    """The 1/r(1, a) action: element j has eigenvalue pair (j/r, aj/r)."""
    if r < 1:
        raise PreconditionViolated("group order must be positive")
    elements = tuple(
        GroupElement(Fraction(j, r), Fraction(a * j, r)) for j in range(r)
    )
    return FiniteGroupAction(elements=elements, label=f"Z{r}({1},{a})")


def binary_dihedral_group(m: int) -> FiniteGroupAction:
    """Order-4m binary dihedral subgroup of SU(2): rotations plus trace-zero flips."""
    if m < 1:
        raise PreconditionViolated("m must be positive")
    elements = [
        GroupElement(Fraction(j, 2 * m), Fraction(-j, 2 * m)) for j in range(2 * m)
    ]
    elements += [GroupElement(Fraction(1, 4), Fraction(3, 4))] * (2 * m)
    return FiniteGroupAction(elements=tuple(elements), label=f"BD{m}")


def check_free_in_codim1(g: FiniteGroupAction) -> bool:
    """True iff no non-identity element fixes a line (no eigenvalue 1)."""
    return all(e.is_identity or not e.has_unit_eigenvalue for e in g.elements)


# -- exact cyclotomic bookkeeping ---------------------------------------------


def _poly_divmod(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    """Division of integer polynomials with monic divisor, low-to-high coeffs."""
    num = list(num)
    dlen = len(den)
    quot = [0] * max(1, len(num) - dlen + 1)
    for i in range(len(num) - dlen, -1, -1):
        coeff = num[i + dlen - 1]
        if coeff == 0:
            continue
        quot[i] = coeff
        for j, dval in enumerate(den):
            num[i + j] -= coeff * dval
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return quot, num


def cyclotomic_polynomial(order: int) -> list[int]:
    """Integer coefficients (low to high) of the order-th cyclotomic polynomial."""
    poly = [-1] + [0] * (order - 1) + [1]  # x^order - 1
    for d in range(1, order):
        if order % d == 0:
            quot, rem = _poly_divmod(poly, cyclotomic_polynomial(d))
            assert rem == [0]
            poly = quot
    return poly


def _reduce_to_integer(coeffs: list[int], cyclo: list[int]) -> int:
    trimmed = list(coeffs)
    while len(trimmed) > 1 and trimmed[-1] == 0:
        trimmed.pop()
    if len(trimmed) >= len(cyclo):
        _, trimmed = _poly_divmod(trimmed, cyclo)
    if any(c != 0 for c in trimmed[1:]):
        raise NonIntegerDimension(
            "trace average is not rational: element list is not closed"
        )
    return trimmed[0]


def invariant_dimension_series(g: FiniteGroupAction, M: int) -> DimensionSeries:
    """Exact d_m = dim of invariants of degree < m, for m = 0 .. M."""
    if M < 1:
        raise PreconditionViolated("M must be at least 1")
    order = math.lcm(*(math.lcm(e.eig1.denominator, e.eig2.denominator) for e in g.elements))
    cyclo = cyclotomic_polynomial(order)
    shifts = [
        (int(e.eig1 * order) % order, int(e.eig2 * order) % order) for e in g.elements
    ]
    # trace of Sym^m for one element: t_m = eig1 * t_{m-1} + eig2^m
    traces = [[0] * order for _ in g.elements]
    for vec in traces:
        vec[0] = 1
    dims = [0]
    running = 0
    for m in range(M):
        total = [0] * order
        for vec in traces:
            for i, c in enumerate(vec):
                total[i] += c
        value = _reduce_to_integer(total, cyclo)
        if value % g.order != 0:
            raise NonIntegerDimension(f"average at degree {m} is {value}/{g.order}")
        running += value // g.order
        dims.append(running)
        for idx, (e1, e2) in enumerate(shifts):
            vec = traces[idx]
            shifted = [0] * order
            for i, c in enumerate(vec):
                if c:
                    shifted[(i + e1) % order] += c
            shifted[((m + 1) * e2) % order] += 1
            traces[idx] = shifted
    return DimensionSeries(dims=tuple(dims))


# -- invariant-ring volume and the minimal normalized volume -------------------


def pair_identity_check(g: FiniteGroupAction, m: int, series: DimensionSeries | None = None) -> bool:
    """d_m + d_{m+1} == ((m+1)^2 + |G| - 1)/|G| as an exact integer identity."""
    if m % g.order != 0:
        raise PreconditionViolated("m must be divisible by the group order")
    if not check_free_in_codim1(g):
        raise PreconditionViolated("action must be free in codimension 1")
    if series is None or len(series) <= m + 1:
        series = invariant_dimension_series(g, m + 1)
    rhs = Fraction((m + 1) ** 2 + g.order - 1, g.order)
    return Fraction(series[m] + series[m + 1]) == rhs


@dataclass(frozen=True)
class QuotientVolume:
    exact: Fraction
    estimate: float
    depth: int


def quotient_volume(g: FiniteGroupAction, M: int = 400) -> QuotientVolume:
    """vol of the pushed-forward order valuation: exactly 1/|G|, plus the
    finite-depth estimate d_M / (M^2/2) for convergence display."""
    if not check_free_in_codim1(g):
        raise PreconditionViolated("action must be free in codimension 1")
    series = invariant_dimension_series(g, M)
    return QuotientVolume(
        exact=Fraction(1, g.order),
        estimate=series[M] / (M**2 / 2),
        depth=M,
    )


@dataclass(frozen=True)
class QuotientMinimum:
    min_nvol: Fraction
    logdisc_witness: Fraction
    volume_witness: Fraction


def quotient_min_nvol(g: FiniteGroupAction) -> QuotientMinimum:
    """Minimal normalized volume 4/|G| with witness A = 2, vol = 1/|G|."""
    if not check_free_in_codim1(g):
        raise PreconditionViolated("action must be free in codimension 1")
    return QuotientMinimum(
        min_nvol=Fraction(4, g.order),
        logdisc_witness=Fraction(2),
        volume_witness=Fraction(1, g.order),
    )
