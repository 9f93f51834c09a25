"""Valuations on cone singularities: log discrepancy, volume, normalized volume.

Monomial weight vectors and toric Reeb vectors are evaluated exactly:

* toric cones: A = <m0, xi> against the Gorenstein vector, volume as
  n! times the exact volume of the truncated dual cone;
* weighted-homogeneous hypersurfaces: A = sum(weights) - d(a) where d(a) is
  the minimal weight of the defining monomials, volume d(a) / prod(weights).

The closed hypersurface formulas are the multiplicity of the initial
degeneration; they are guarded by a syntactic precondition (at least two
monomials must achieve the minimal weight unless the caller overrides) and
can always be cross-checked against `lattice_count_oracle`, which counts
monomials below a weight threshold by brute force and is the source of truth
on disagreement.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iter_product
from typing import TYPE_CHECKING, Sequence

import numpy as np

from .errors import BudgetExceeded, ModelError, NotInReebCone, OracleDisagreement
from .exactgeom import RVector, cut_cone, polytope_volume, rat

if TYPE_CHECKING:  # models are duck-typed at runtime to keep imports acyclic
    from .singularities import ToricConeSingularity, WeightedHomogeneousHypersurface

_ENUM_BUDGET = 60_000_000  # bounding-box cells; the true count stays below 1e7
_CHUNK = 1_500_000


class MonomialValuation(RVector):
    """Strictly positive weight vector a_i on the ambient coordinates z_i."""

    def __new__(cls, weights: Sequence) -> "MonomialValuation":
        vec = super().__new__(cls, weights)
        if any(w <= 0 for w in vec):
            raise ValueError(f"monomial weights must be positive, got {tuple(vec)}")
        return vec

    def rescale(self, factor) -> "MonomialValuation":
        return MonomialValuation(self.scale(factor))


@dataclass(frozen=True)
class ValuationReport:
    """Exact A, vol and normalized volume of one valuation, floats alongside."""

    n: int
    logdisc: Fraction | float  # +inf allowed
    volume: Fraction
    nvol: Fraction | float
    logdisc_pair: Fraction | None = None
    nonpositive_discrepancy: bool = False

    @property
    def logdisc_approx(self) -> float:
        return float(self.logdisc)

    @property
    def volume_approx(self) -> float:
        return float(self.volume)

    @property
    def nvol_approx(self) -> float:
        return float(self.nvol)


def normalized_volume(logdisc, volume, n: int):
    """A^n * vol, or +inf on the infinite-discrepancy branch."""
    if n < 1:
        raise ValueError("dimension must be at least 1")
    if logdisc == math.inf:
        return math.inf
    if isinstance(logdisc, Fraction) and isinstance(volume, Fraction):
        return logdisc**n * volume
    return float(logdisc) ** n * float(volume)


def log_adjusted_discrepancy(logdisc, v_of_E) -> Fraction:
    """Discrepancy against a pair: A - v(E), with v(E) supplied by the caller."""
    return rat(logdisc) - rat(v_of_E)


# -- toric evaluation --------------------------------------------------------


def _require_reeb(x: "ToricConeSingularity", xi: RVector) -> None:
    for gen in x.dual.rays:
        if gen.dot(xi) <= 0:
            raise NotInReebCone(
                f"{tuple(xi)} pairs nonpositively with weight generator {tuple(gen)}"
            )


def log_discrepancy_toric(x: "ToricConeSingularity", xi: Sequence) -> Fraction:
    xi = RVector(xi)
    _require_reeb(x, xi)
    return x.m0.dot(xi)


def valuation_volume_toric(x: "ToricConeSingularity", xi: Sequence) -> Fraction:
    xi = RVector(xi)
    _require_reeb(x, xi)
    region = cut_cone(x.dual, xi)
    return math.factorial(x.n) * polytope_volume(region)


# -- hypersurface evaluation -------------------------------------------------


def hypersurface_weight_order(w: "WeightedHomogeneousHypersurface", a: Sequence) -> Fraction:
    """d(a): minimal a-weight over the defining monomials."""
    a = RVector(a)
    return min(RVector(m).dot(a) for m in w.monomials)


def hypersurface_initial_count(w: "WeightedHomogeneousHypersurface", a: Sequence) -> int:
    """Number of defining monomials achieving the minimal a-weight."""
    a = RVector(a)
    weights = [RVector(m).dot(a) for m in w.monomials]
    d = min(weights)
    return sum(1 for v in weights if v == d)


def log_discrepancy_hypersurface(
    w: "WeightedHomogeneousHypersurface", a: Sequence
) -> Fraction:
    """sum(a) - d(a); may be nonpositive for non-klt input (flagged, not an error)."""
    a = MonomialValuation(a)
    if len(a) != w.nvars:
        raise ModelError(f"expected {w.nvars} weights, got {len(a)}")
    return sum(a, Fraction(0)) - hypersurface_weight_order(w, a)


def valuation_volume_hypersurface(
    w: "WeightedHomogeneousHypersurface",
    a: Sequence,
    *,
    allow_single_initial_monomial: bool = False,
    oracle_check: bool = False,
    oracle_depth: int = 200,
    oracle_rel_tol: float = 0.05,
) -> Fraction:
    """d(a) / prod(a), the multiplicity of the a-initial degeneration."""
    a = MonomialValuation(a)
    if len(a) != w.nvars:
        raise ModelError(f"expected {w.nvars} weights, got {len(a)}")
    if not allow_single_initial_monomial and hypersurface_initial_count(w, a) < 2:
        raise ModelError(
            "a-initial form of the defining polynomial is a single monomial; "
            "pass allow_single_initial_monomial=True if the degeneration is valid"
        )
    denom = Fraction(1)
    for weight in a:
        denom *= weight
    volume = hypersurface_weight_order(w, a) / denom
    if oracle_check:
        count = lattice_count_oracle(w, a, Fraction(oracle_depth))
        estimate = math.factorial(w.n) * count / float(oracle_depth) ** w.n
        if abs(estimate - float(volume)) > oracle_rel_tol * float(volume):
            raise OracleDisagreement(
                f"closed formula {float(volume)} vs oracle estimate {estimate}"
            )
    return volume


# -- dispatch ----------------------------------------------------------------


def _is_toric(model) -> bool:
    return hasattr(model, "m0")


def nvol_report(model, weights: Sequence, v_of_divisor=None) -> ValuationReport:
    """Evaluate A, vol and A^n*vol for a toric or hypersurface model.

    `v_of_divisor` is the value of the valuation on a boundary divisor; when
    given, the report also carries the pair discrepancy A - v(E).
    """
    if _is_toric(model):
        xi = RVector(weights)
        logdisc = log_discrepancy_toric(model, xi)
        volume = valuation_volume_toric(model, xi)
        n = model.n
    else:
        a = MonomialValuation(weights)
        logdisc = log_discrepancy_hypersurface(model, a)
        volume = valuation_volume_hypersurface(model, a)
        n = model.n
    pair = None
    if v_of_divisor is not None:
        pair = log_adjusted_discrepancy(logdisc, v_of_divisor)
    return ValuationReport(
        n=n,
        logdisc=logdisc,
        volume=volume,
        nvol=normalized_volume(logdisc, volume, n),
        logdisc_pair=pair,
        nonpositive_discrepancy=logdisc <= 0,
    )


# -- brute-force lattice counting oracle -------------------------------------


def _strict_upper(bound: Fraction) -> int:
    """Largest integer strictly below bound."""
    return math.ceil(bound) - 1


def _count_box(
    bounds: list[tuple[int, int]],
    nonstrict: list[tuple[list[int], int]],
    strict_coefs: list[int],
    strict_max: int,
) -> int:
    """Count integer points in a box with <c,x>+b >= 0 constraints and <s,x> <= strict_max."""
    sizes = [hi - lo + 1 for lo, hi in bounds]
    if any(s <= 0 for s in sizes):
        return 0
    total = math.prod(sizes)
    if total > _ENUM_BUDGET:
        raise BudgetExceeded(f"enumeration box of {total} cells exceeds budget")
    split = 0
    suffix = total
    while split < len(bounds) and suffix > _CHUNK:
        suffix //= sizes[split]
        split += 1
    axes = [np.arange(lo, hi + 1, dtype=np.int64) for lo, hi in bounds[split:]]
    if axes:
        grids = np.meshgrid(*axes, indexing="ij")
        flat = np.stack([g.ravel() for g in grids], axis=0)
    else:
        flat = np.zeros((0, 1), dtype=np.int64)
    ns_tails = [np.asarray(c[split:], dtype=np.int64) @ flat for c, _ in nonstrict]
    s_tail = np.asarray(strict_coefs[split:], dtype=np.int64) @ flat
    count = 0
    for prefix in iter_product(*[range(lo, hi + 1) for lo, hi in bounds[:split]]):
        ok = np.ones(flat.shape[1], dtype=bool)
        for (coefs, const), tail in zip(nonstrict, ns_tails):
            head = const + sum(coefs[i] * prefix[i] for i in range(split))
            ok &= tail >= -head
        head = sum(strict_coefs[i] * prefix[i] for i in range(split))
        ok &= s_tail <= strict_max - head
        count += int(ok.sum())
    return count


def _scaled_int_vector(vec: Sequence[Fraction]) -> tuple[list[int], int]:
    scale = math.lcm(*(rat(v).denominator for v in vec))
    return [int(rat(v) * scale) for v in vec], scale


def lattice_count_oracle(model, a: Sequence, p) -> int:
    """dim of R / {v_a >= p} by monomial enumeration; the volume oracle.

    Toric models count lattice points of the dual cone with <alpha, a> < p;
    hypersurfaces count standard monomials (reduction-variable exponent below
    its exponent in the chosen leading monomial) of a-weight < p.
    """
    a = RVector(a)
    p = rat(p)
    if p <= 0:
        raise ValueError("threshold p must be positive")
    if _is_toric(model):
        return _lattice_count_toric(model, a, p)
    return _lattice_count_hypersurface(model, a, p)


def _lattice_count_toric(x: "ToricConeSingularity", a: RVector, p: Fraction) -> int:
    _require_reeb(x, a)
    region = cut_cone(x.dual, a).scale(p)
    bounds = []
    for i in range(x.n):
        coords = [v[i] for v in region.vrep]
        bounds.append((math.ceil(min(coords)), math.floor(max(coords))))
    nonstrict = []
    for ray in x.sigma.rays:  # sigma rays are the facet normals of the dual cone
        coefs, _ = _scaled_int_vector(ray)
        nonstrict.append((coefs, 0))
    strict_coefs, scale = _scaled_int_vector(a)
    return _count_box(bounds, nonstrict, strict_coefs, _strict_upper(scale * p))


def reduction_variable(
    w: "WeightedHomogeneousHypersurface", a: RVector
) -> tuple[int, int]:
    """(index, exponent) of a reduction variable compatible with the weights a.

    Standard monomials bound the exponent of one variable by its exponent in
    a weight-minimal defining monomial; that monomial must be a pure power of
    a variable appearing in no other monomial, otherwise the count does not
    represent the initial degeneration and we refuse.
    """
    d = hypersurface_weight_order(w, a)
    for j in range(w.nvars):
        owners = [m for m in w.monomials if m[j] > 0]
        if len(owners) != 1:
            continue
        mono = owners[0]
        if any(mono[i] != 0 for i in range(w.nvars) if i != j):
            continue
        if RVector(mono).dot(a) == d:
            return j, int(mono[j])
    raise ModelError(
        "lattice counting needs a weight-minimal monomial that is a pure power "
        "of a variable occurring in no other monomial"
    )


def _lattice_count_hypersurface(
    w: "WeightedHomogeneousHypersurface", a: RVector, p: Fraction
) -> int:
    if len(a) != w.nvars or any(weight <= 0 for weight in a):
        raise ModelError("weights must be positive and match the variable count")
    red_var, red_exp = reduction_variable(w, a)
    strict_coefs, scale = _scaled_int_vector(a)
    strict_max = _strict_upper(scale * p)
    bounds = []
    for i in range(w.nvars):
        hi = strict_max // strict_coefs[i]
        if i == red_var:
            hi = min(hi, red_exp - 1)
        bounds.append((0, hi))
    return _count_box(bounds, [], strict_coefs, strict_max)
