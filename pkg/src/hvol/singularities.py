"""Singularity models: toric cones, weighted-homogeneous hypersurfaces,
polarized-cone numerology and the toric log-Fano pipeline.

A toric cone singularity is Spec of the semigroup ring of the dual cone; its
Gorenstein vector m0 (pairing to 1 with every primitive ray) encodes the
log discrepancy of toric valuations.  The polarized-cone data (n, r, degH)
is everything the normalized-volume lower bound depends on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import AngleOutOfRange, InvalidIndex, ModelError, NotQGorenstein
from .exactgeom import (
    Halfspace,
    PolyCone,
    Polytope,
    RVector,
    centroid,
    dual_cone,
    matrix_rank,
    rat,
    solve_square,
    vertex_enumerate,
)
from .valuation import MonomialValuation


@dataclass
class ToricConeSingularity:
    """X = Spec of the semigroup ring of sigma-dual; rays of sigma primitive."""

    n: int
    sigma: PolyCone
    m0: RVector
    dual: PolyCone = field(repr=False)
    canonical_xi: RVector | None = None
    label: str = ""

    @classmethod
    def from_rays(
        cls,
        rays: Sequence[Sequence],
        canonical_xi: Sequence | None = None,
        label: str = "",
    ) -> "ToricConeSingularity":
        sigma = PolyCone.from_rays(rays)
        n = sigma.dim
        m0 = _gorenstein_vector(sigma)
        dual = dual_cone(sigma)
        xi = RVector(canonical_xi) if canonical_xi is not None else None
        return cls(n=n, sigma=sigma, m0=m0, dual=dual, canonical_xi=xi, label=label)

    @property
    def reeb_generators(self) -> tuple[RVector, ...]:
        """Rays of the dual cone; xi is Reeb iff it pairs positively with all."""
        return self.dual.rays


def _gorenstein_vector(sigma: PolyCone) -> RVector:
    """Solve <m0, u> = 1 on a spanning subset of rays, verify on all of them."""
    rays = list(sigma.rays)
    picked: list[RVector] = []
    for ray in rays:
        if matrix_rank([list(r) for r in picked + [ray]]) > len(picked):
            picked.append(ray)
        if len(picked) == sigma.dim:
            break
    m0 = solve_square([list(r) for r in picked], [Fraction(1)] * sigma.dim)
    if m0 is None or any(m0.dot(ray) != 1 for ray in rays):
        raise NotQGorenstein("no covector pairs to 1 with every primitive ray")
    return m0


@dataclass
class WeightedHomogeneousHypersurface:
    """Hypersurface {sum of monomials = 0} in C^(n+1), coefficients generic."""

    nvars: int
    monomials: tuple[RVector, ...]
    label: str = ""

    def __post_init__(self):
        if len(self.monomials) < 2:
            raise ModelError("a hypersurface model needs at least two monomials")
        mons = []
        for m in self.monomials:
            vec = RVector(m)
            if len(vec) != self.nvars:
                raise ModelError("monomial exponent length does not match nvars")
            if any(e < 0 or e.denominator != 1 for e in vec):
                raise ModelError("exponents must be nonnegative integers")
            mons.append(vec)
        self.monomials = tuple(mons)

    @property
    def n(self) -> int:
        """Dimension of the hypersurface germ."""
        return self.nvars - 1

    def symmetry_classes(self) -> list[list[int]]:
        """Variable classes interchangeable by symmetries of the monomial set."""
        mset = frozenset(self.monomials)
        parent = list(range(self.nvars))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for i in range(self.nvars):
            for j in range(i + 1, self.nvars):
                swapped = frozenset(
                    RVector(_swap(m, i, j)) for m in self.monomials
                )
                if swapped == mset:
                    parent[find(i)] = find(j)
        classes: dict[int, list[int]] = {}
        for i in range(self.nvars):
            classes.setdefault(find(i), []).append(i)
        return sorted(classes.values())


def _swap(vec: Sequence, i: int, j: int) -> list:
    out = list(vec)
    out[i], out[j] = out[j], out[i]
    return out


def akm_singularity(n: int, k: int) -> WeightedHomogeneousHypersurface:
    """z_1^2 + ... + z_n^2 + z_{n+1}^k = 0 in C^(n+1)."""
    if n < 2 or k < 1:
        raise ModelError("need n >= 2 and k >= 1")
    monomials = []
    for i in range(n):
        exps = [0] * (n + 1)
        exps[i] = 2
        monomials.append(exps)
    last = [0] * (n + 1)
    last[n] = k
    monomials.append(last)
    return WeightedHomogeneousHypersurface(
        nvars=n + 1, monomials=tuple(RVector(m) for m in monomials), label=f"A{k - 1}^{n}"
    )


def canonical_weights(n: int, k: int) -> MonomialValuation:
    """Weights (k, ..., k, 2) of the canonical torus action on the A_{k-1} cone."""
    if n < 2 or k < 1:
        raise ModelError("need n >= 2 and k >= 1")
    return MonomialValuation([k] * n + [2])


# -- toric model library ------------------------------------------------------


def affine_space(n: int) -> ToricConeSingularity:
    """C^n: the first orthant cone, canonical Reeb vector (1, ..., 1)."""
    rays = [[1 if j == i else 0 for j in range(n)] for i in range(n)]
    return ToricConeSingularity.from_rays(rays, canonical_xi=[1] * n, label=f"C^{n}")


def cyclic_quotient_cone(r: int, a: int) -> ToricConeSingularity:
    """C^2 / (1/r)(1, a) with gcd(a, r) = 1; canonical Reeb vector (r, 1 - a).

    The weight monoid sits in the cone spanned by (1, 0) and (a, r); the
    pushforward of the order-of-vanishing valuation at the origin pairs to the
    monomial degree p + q, which is the stored canonical Reeb vector.
    """
    if r < 1:
        raise ModelError("r must be a positive integer")
    if r == 1:
        return affine_space(2)
    if math.gcd(a, r) != 1:
        raise ModelError("cyclic quotient data must have gcd(a, r) = 1")
    sigma_rays = [[0, 1], [r, -a]]
    return ToricConeSingularity.from_rays(
        sigma_rays, canonical_xi=[r, 1 - a], label=f"C^2/(1/{r})({1},{a})"
    )


def conifold() -> ToricConeSingularity:
    """xy = zw, the cone over a square; canonical Reeb vector (0, 0, 2).

    The canonical vector is scaled to match the hypersurface weights
    (2, 2, 2, 2) of the same singularity, giving A = 4.
    """
    rays = [[1, 0, 0], [0, 1, 0], [-1, 0, 1], [0, -1, 1]]
    return ToricConeSingularity.from_rays(rays, canonical_xi=[0, 0, 2], label="conifold")


# -- polarized cone numerology -------------------------------------------------


def fano_index_check(r, n: int) -> bool:
    """Index factor of an (n-1)-dimensional log-Fano base must lie in (0, n]."""
    r = rat(r)
    return 0 < r <= n


@dataclass(frozen=True)
class PolarizedConeData:
    """Cone over a polarized log-Fano base, reduced to (n, r, degH)."""

    n: int
    r: Fraction
    degH: Fraction

    def __post_init__(self):
        object.__setattr__(self, "r", rat(self.r))
        object.__setattr__(self, "degH", rat(self.degH))
        if self.degH <= 0:
            raise ModelError("degH must be positive")
        if not fano_index_check(self.r, self.n):
            raise InvalidIndex(f"r = {self.r} outside (0, {self.n}]")


@dataclass(frozen=True)
class ConeInvariants:
    beta: Fraction
    antilog_power: Fraction  # (-K - D)^n of the compactified cone
    nvol_lower_bound: Fraction  # (n/(n+1))^n * antilog_power
    nvol_canonical: Fraction  # r^n * degH = nvol of the canonical valuation


def cone_invariants(c: PolarizedConeData) -> ConeInvariants:
    """Cone angle, anti-log-canonical power, and the sharp lower bound.

    The bound (n/(n+1))^n (-K-D)^n collapses to r^n degH exactly, i.e. it is
    attained by the canonical valuation; the equality is asserted here.
    """
    n = c.n
    beta = c.r / n
    antilog_power = c.r**n * Fraction(n + 1, n) ** n * c.degH
    lower = Fraction(n, n + 1) ** n * antilog_power
    canonical = c.r**n * c.degH
    assert lower == canonical, "sharpness identity must hold exactly"
    return ConeInvariants(
        beta=beta,
        antilog_power=antilog_power,
        nvol_lower_bound=lower,
        nvol_canonical=canonical,
    )


# -- toric log-Fano example pipeline -------------------------------------------


@dataclass(frozen=True)
class ToricLogFanoReport:
    p_star: RVector
    gammas: tuple[Fraction, ...]
    lifted: Polytope
    frak_p_star: RVector
    s: Fraction
    beta_i: tuple[Fraction, ...]
    beta_n: Fraction


def toric_log_fano(facets: Sequence[Halfspace], r) -> ToricLogFanoReport:
    """Lift a lattice polytope to the cone polytope and verify the centroid law.

    Input facets describe P in R^(n-1) via <eta_i, x> + a_i >= 0.  The report
    carries the barycenter p*, the angles gamma_i = r l_i(p*), the lifted
    polytope with facets <eta_i, y'> + a_i y_n >= 0 and y_n <= 1, and the
    angles of the lifted pair at s = r (n+1)/n.  The lifted barycenter must
    equal n/(n+1) (p*, 1) exactly, which forces beta_n = r/n.
    """
    r = rat(r)
    if not facets:
        raise ModelError("no facets given")
    base_dim = facets[0].normal.dim
    n = base_dim + 1
    base = Polytope.from_hrep(list(facets), base_dim)
    if not base.is_full_dimensional:
        raise ModelError("base polytope is not full-dimensional")
    p_star = centroid(base)
    gammas = tuple(r * h.value(p_star) for h in facets)
    if any(g > 1 for g in gammas):
        raise AngleOutOfRange(f"some r*l_i(p*) exceeds 1: {tuple(map(str, gammas))}")
    if any(g <= 0 for g in gammas):
        raise AngleOutOfRange("barycenter must be interior: some l_i(p*) <= 0")
    lifted_hrep = [
        Halfspace(RVector(list(h.normal) + [h.offset]), Fraction(0)) for h in facets
    ]
    lifted_hrep.append(
        Halfspace(RVector([0] * base_dim + [-1]), Fraction(1))
    )
    lifted = Polytope.from_hrep(lifted_hrep, n)
    frak_p_star = centroid(lifted)
    expected = RVector(list(p_star) + [Fraction(1)]).scale(Fraction(n, n + 1))
    if frak_p_star != expected:
        raise ModelError("lifted barycenter violates the n/(n+1) law")
    s = r * Fraction(n + 1, n)
    beta_i = tuple(s * h.value(frak_p_star) for h in lifted_hrep[:-1])
    beta_n = s * lifted_hrep[-1].value(frak_p_star)
    assert beta_i == gammas
    assert beta_n == r / n
    return ToricLogFanoReport(
        p_star=p_star,
        gammas=gammas,
        lifted=lifted,
        frak_p_star=frak_p_star,
        s=s,
        beta_i=beta_i,
        beta_n=beta_n,
    )
