"""Minimization of the normalized volume over the Reeb cone.

The objective A(xi)^n vol(xi) is scale invariant, so descent runs on the
normalization slice {A(xi) = n}: every accepted iterate is a rational vector
renormalized exactly, objective values are computed in exact arithmetic and
only compared as floats.  Gradients come from central finite differences
(the objective has no closed derivative in general), a backtracking line
search rejects steps that leave the cone or the valid weight region, and the
final point is snapped to nearby low-denominator rationals and re-verified
exactly whenever the snap does not increase the objective.

The minimum can sit at a kink of the piecewise objective (the set of
weight-minimal defining monomials changes there), where no finite-difference
gradient vanishes; a run that stalls with no descent step available is
reported as converged at line-search resolution, and the multi-start driver
is the practical certificate that the stall point is the global minimum.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .errors import DomainError, NonFiniteObjective, NotInReebCone
from .exactgeom import RVector, rat
from .singularities import ToricConeSingularity, WeightedHomogeneousHypersurface
from .valuation import (
    MonomialValuation,
    hypersurface_initial_count,
    log_discrepancy_hypersurface,
    log_discrepancy_toric,
    valuation_volume_hypersurface,
    valuation_volume_toric,
)

_SNAP_DENOMINATOR = 10**6
_ITERATE_DENOMINATOR = 10**12


@dataclass(frozen=True)
class ReebCone:
    """Strict-positivity region of the weight monoid generators."""

    gamma_generators: tuple[RVector, ...]

    def contains(self, xi: Sequence) -> bool:
        xi = RVector(xi)
        return all(gen.dot(xi) > 0 for gen in self.gamma_generators)


def reeb_membership(rc: ReebCone, xi: Sequence) -> bool:
    return rc.contains(xi)


def _log_discrepancy(model, xi: RVector) -> Fraction:
    if isinstance(model, ToricConeSingularity):
        return log_discrepancy_toric(model, xi)
    return log_discrepancy_hypersurface(model, xi)


def normalize_reeb(model, xi: Sequence) -> RVector:
    """(n / A(xi)) * xi, exactly; idempotent, and A of the output equals n."""
    xi = RVector(xi)
    logdisc = _log_discrepancy(model, xi)
    if logdisc <= 0:
        raise NotInReebCone(f"log discrepancy {logdisc} is not positive")
    return xi.scale(Fraction(model.n) / logdisc)


def rescaling_law_check(model, xi: Sequence, lam) -> bool:
    """vol(lam * xi) * lam^n == vol(xi) exactly."""
    xi = RVector(xi)
    lam = rat(lam)
    if lam <= 0:
        raise DomainError("scaling factor must be positive")
    if isinstance(model, ToricConeSingularity):
        vol = valuation_volume_toric(model, xi)
        vol_scaled = valuation_volume_toric(model, xi.scale(lam))
    else:
        vol = valuation_volume_hypersurface(model, xi)
        vol_scaled = valuation_volume_hypersurface(model, xi.scale(lam))
    return vol_scaled * lam**model.n == vol


# -- the objective over reduced coordinates -----------------------------------


class _Objective:
    """Exact scale-invariant objective in symmetry-reduced coordinates."""

    def __init__(self, model):
        self.model = model
        self.n = model.n
        self._cache: dict[tuple, Fraction] = {}
        if isinstance(model, ToricConeSingularity):
            self.dim = model.n
            self._expand: Callable[[RVector], RVector] = lambda x: x
            self.default_init = RVector(
                [sum(c, Fraction(0)) for c in zip(*model.sigma.rays)]
            )
            self._directions = model.sigma.rays
        elif isinstance(model, WeightedHomogeneousHypersurface):
            classes = model.symmetry_classes()
            self.dim = len(classes)
            index_of = [0] * model.nvars
            for ci, cls in enumerate(classes):
                for i in cls:
                    index_of[i] = ci
            self._expand = lambda x: RVector([x[index_of[i]] for i in range(model.nvars)])
            self._directions = tuple(
                RVector([1 if j == i else 0 for j in range(self.dim)])
                for i in range(self.dim)
            )
            self.default_init = self._equal_weight_point(model, index_of)
        else:
            raise DomainError(f"cannot minimize over {type(model).__name__}")

    def _equal_weight_point(self, model, index_of) -> RVector:
        """A reduced point where every defining monomial has the same weight.

        All monomials tying puts the start in the interior of the valid
        region; falls back to all-ones when no positive tie point exists.
        """
        from .exactgeom import nullspace

        rows = []
        first = model.monomials[0]
        for mono in model.monomials[1:]:
            row = [Fraction(0)] * self.dim
            for i in range(model.nvars):
                row[index_of[i]] += mono[i] - first[i]
            rows.append(row)
        for basis in (nullspace(rows, self.dim) if rows else []):
            candidate = basis
            if all(c > 0 for c in candidate):
                return RVector(candidate)
        fallback = RVector([Fraction(1)] * self.dim)
        return fallback

    def expand(self, x: RVector) -> RVector:
        return self._expand(RVector(x))

    def reduce(self, weights: Sequence) -> RVector:
        weights = RVector(weights)
        if isinstance(self.model, ToricConeSingularity):
            return weights
        classes = self.model.symmetry_classes()
        if len(weights) != self.model.nvars:
            raise DomainError("weight vector has the wrong length")
        reduced = []
        for cls in classes:
            vals = {weights[i] for i in cls}
            if len(vals) != 1:
                raise DomainError("initial point must respect the variable symmetry")
            reduced.append(weights[cls[0]])
        return RVector(reduced)

    def feasible(self, x: RVector) -> bool:
        try:
            self.value(x)
            return True
        except NonFiniteObjective:
            return False

    def value(self, x: RVector) -> Fraction:
        key = tuple(x)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        full = self.expand(x)
        try:
            if isinstance(self.model, ToricConeSingularity):
                logdisc = log_discrepancy_toric(self.model, full)
                vol = valuation_volume_toric(self.model, full)
            else:
                if any(w <= 0 for w in full):
                    raise NonFiniteObjective("weights left the positive orthant")
                if hypersurface_initial_count(self.model, full) < 2:
                    raise NonFiniteObjective("initial form degenerated to one monomial")
                logdisc = log_discrepancy_hypersurface(self.model, full)
                vol = valuation_volume_hypersurface(self.model, full)
        except NotInReebCone as exc:
            raise NonFiniteObjective(str(exc)) from exc
        if logdisc <= 0 or vol <= 0:
            raise NonFiniteObjective("objective left its finite range")
        result = logdisc**self.n * vol
        self._cache[key] = result
        return result

    def normalize(self, x: RVector) -> RVector:
        full = self.expand(x)
        logdisc = _log_discrepancy(self.model, full)
        if logdisc <= 0:
            raise NonFiniteObjective("cannot normalize: nonpositive log discrepancy")
        return RVector(x).scale(Fraction(self.n) / logdisc)


@dataclass
class MinimizeResult:
    argmin: RVector  # full weight vector on the A = n slice
    min_nvol: float
    min_nvol_exact: Fraction | None
    iterations: int
    trajectory: list[tuple[tuple[float, ...], float]]
    grad_norm: float
    converged: bool
    stalled_at_kink: bool = False


def _rationalize(value: float) -> Fraction:
    return Fraction(value).limit_denominator(_ITERATE_DENOMINATOR)


def _perturb(x: RVector, i: int, delta: float) -> RVector:
    coords = list(x)
    coords[i] = _rationalize(float(coords[i]) + delta)
    return RVector(coords)


def _gradient(obj: _Objective, x: RVector, f_x: float) -> list[float]:
    grad = []
    for i in range(obj.dim):
        h = 1e-6 * max(1.0, abs(float(x[i])))
        hi = _perturb(x, i, h)
        lo = _perturb(x, i, -h)
        try:
            f_hi = float(obj.value(hi))
        except NonFiniteObjective:
            f_hi = None
        try:
            f_lo = float(obj.value(lo))
        except NonFiniteObjective:
            f_lo = None
        if f_hi is not None and f_lo is not None:
            grad.append((f_hi - f_lo) / (float(hi[i]) - float(lo[i])))
        elif f_hi is not None:
            grad.append((f_hi - f_x) / (float(hi[i]) - float(x[i])))
        elif f_lo is not None:
            grad.append((f_x - f_lo) / (float(x[i]) - float(lo[i])))
        else:
            grad.append(0.0)
    return grad


def minimize_nvol(
    model,
    init: Sequence | None = None,
    tol: float = 1e-8,
    max_iter: int = 500,
) -> MinimizeResult:
    """Projected-gradient descent of A^n vol over the Reeb cone.

    `init` is a full weight vector strictly inside the cone (for symmetric
    hypersurfaces it must respect the symmetry); defaults to the barycentric
    ray.  Descent stops when the finite-difference gradient norm on the slice
    drops below `tol`, or when no descending step remains at line-search
    resolution (a kink minimum).
    """
    obj = _Objective(model)
    if init is None:
        x = obj.default_init
    else:
        x = obj.reduce(RVector(init))
    if not obj.feasible(x):
        raise NotInReebCone(f"initial point {tuple(map(float, x))} is not admissible")
    x = obj.normalize(x)
    f_x = float(obj.value(x))
    trajectory = [(obj.expand(x).as_floats(), f_x)]
    converged = False
    stalled = False
    grad_norm = math.inf
    iterations = 0
    warm_t = None
    flat_streak = 0
    for iterations in range(1, max_iter + 1):
        grad = _gradient(obj, x, f_x)
        grad_norm = math.sqrt(sum(g * g for g in grad))
        if grad_norm < tol:
            converged = True
            break
        scale = max(abs(float(c)) for c in x)
        t = min(1.0, 0.5 * scale / grad_norm)
        if warm_t is not None:
            t = min(t, 4.0 * warm_t)
        accepted = None
        while t > 1e-16 * scale:
            candidate = RVector(
                _rationalize(float(c) - t * g) for c, g in zip(x, grad)
            )
            try:
                candidate = obj.normalize(candidate)
                f_cand = float(obj.value(candidate))
            except NonFiniteObjective:
                t *= 0.5
                continue
            if f_cand <= f_x - 1e-4 * t * grad_norm**2:
                accepted = (candidate, f_cand, t)
                break
            t *= 0.5
        if accepted is None:
            converged = True  # no descent step available: kink minimum
            stalled = True
            break
        step = max(abs(float(a) - float(b)) for a, b in zip(accepted[0], x))
        drop = f_x - accepted[1]
        x, f_x, warm_t = accepted
        trajectory.append((obj.expand(x).as_floats(), f_x))
        if step < 1e-13 * (1.0 + scale):
            converged = True
            stalled = True
            break
        flat_streak = flat_streak + 1 if drop <= 1e-14 * (1.0 + abs(f_x)) else 0
        if flat_streak >= 3:
            converged = True  # objective numerically stationary
            stalled = True
            break
    x, f_x, exact = _snap(obj, x, f_x)
    grad = _gradient(obj, x, f_x)
    grad_norm = math.sqrt(sum(g * g for g in grad))
    if grad_norm < tol:
        converged = True
        stalled = False
    return MinimizeResult(
        argmin=obj.expand(x),
        min_nvol=f_x,
        min_nvol_exact=exact,
        iterations=iterations,
        trajectory=trajectory,
        grad_norm=grad_norm,
        converged=converged,
        stalled_at_kink=stalled,
    )


def _snap(obj: _Objective, x: RVector, f_x: float):
    """Snap to low-denominator rationals when that preserves or lowers f."""
    snapped = RVector(
        Fraction(float(c)).limit_denominator(_SNAP_DENOMINATOR) for c in x
    )
    try:
        snapped = obj.normalize(snapped)
        exact = obj.value(snapped)
    except NonFiniteObjective:
        return x, f_x, None
    if float(exact) <= f_x + 1e-12 * (1.0 + abs(f_x)):
        return snapped, float(exact), exact
    return x, f_x, None


def minimize_nvol_multistart(
    model,
    seeds: int = 5,
    base_seed: int = 0,
    tol: float = 1e-8,
    max_iter: int = 500,
) -> tuple[MinimizeResult, float, list[MinimizeResult]]:
    """Run from `seeds` random interior starts; returns (best, spread, all).

    The spread is the max pairwise infinity-distance between the normalized
    minimizers, the practical certificate that the runs agree.
    """
    obj = _Objective(model)
    rng = random.Random(base_seed)
    results = []
    for _ in range(max(1, seeds)):
        if isinstance(model, ToricConeSingularity):
            start = RVector([Fraction(0)] * obj.dim)
            for ray in obj._directions:
                start = start + ray.scale(Fraction(rng.randint(50, 300), 100))
        else:
            # random coordinate stretch of the all-ties point, pulled back
            # toward it while the weight region is invalid; the tie point
            # itself is always valid, so fall back to it
            factors = [Fraction(rng.randint(50, 300), 100) for _ in range(obj.dim)]
            start = obj.default_init
            for _ in range(20):
                candidate = RVector(
                    [f * c for f, c in zip(factors, obj.default_init)]
                )
                if obj.feasible(candidate):
                    start = candidate
                    break
                factors = [(f + 1) / 2 for f in factors]
        results.append(
            minimize_nvol(model, init=obj.expand(start), tol=tol, max_iter=max_iter)
        )
    best = min(results, key=lambda r: r.min_nvol)
    spread = 0.0
    for r in results:
        for a, b in zip(r.argmin, best.argmin):
            spread = max(spread, abs(float(a) - float(b)))
    return best, spread, results


# -- arithmetic transfers ------------------------------------------------------


def link_volume_from_nvol(nvol_ord: float, n: int) -> float:
    """Contact volume of the link from the normalized volume: (2 pi / n)^n * nvol."""
    if nvol_ord < 0:
        raise DomainError("normalized volume must be nonnegative")
    return (2 * math.pi) ** n / n**n * nvol_ord


def ricci_bound_transfer(R: float, m: int) -> float:
    """(m - 1) R / (m - R): lower Ricci bound after moving the divisor weight."""
    if not (0 < R <= 1) or m < 2 or m <= R:
        raise DomainError(f"need 0 < R <= 1 and integer m >= 2 > R, got R={R}, m={m}")
    return (m - 1) * R / (m - R)


def hvol_lower(R: float, nvol_ord: float, n: int) -> float:
    """Lower bound R^n * nvol(ord) for the minimal normalized volume."""
    if not (0 < R <= 1):
        raise DomainError("R must lie in (0, 1]")
    if nvol_ord < 0:
        raise DomainError("normalized volume must be nonnegative")
    return R**n * nvol_ord
