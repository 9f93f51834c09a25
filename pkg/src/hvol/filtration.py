"""Volume profiles of valuation filtrations and the interpolation calculus.

For a cone singularity graded by a reference valuation v0 and filtered by a
second monomial valuation v1, the profile t -> vol(R^(t)) measures the
asymptotic density of the filtration level t inside the graded pieces.  On
toric and weighted-homogeneous models the profile is an exact piecewise
polynomial: it is built here by cutting the dual cone with the rotating
hyperplane <v1 - t v0, y> >= 0, sampling exact volumes on each combinatorial
interval and interpolating, with breakpoints at the v1/v0 ratios of the
extreme rays.

Everything downstream is derived from the profile:

* the tail transform Theta(x) = n * integral_x^inf vol(R^(t)) x^n / t^(n+1) dt,
  which equals the volume of the filtered section ring at level x;
* the volume identity vol(v1) = degH / c1^n - n * integral_{c1}^inf
  vol(R^(t)) / t^(n+1) dt;
* the two-parameter interpolation Phi(lambda, s) between the graded volume
  (s = 0) and the rescaled filtration volume (s = 1), convex in s;
* four independent expressions for the derivative of Phi at s = 0, whose
  mutual agreement certifies the calculus;
* the stability gap A(v1) - delta / degH * integral_0^inf Theta, nonnegative
  on semistable models and zero at the canonical valuation.

Piecewise-polynomial profiles are integrated in closed form with exact
rational arithmetic; sampled profiles (linear interpolation) fall back to
adaptive Simpson quadrature with absolute tolerance 1e-10.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import (
    BoundViolated,
    IntegralDivergence,
    ModelError,
    NotInReebCone,
    PreconditionViolated,
)
from .exactgeom import Halfspace, PolyCone, Polytope, RVector, polytope_volume, rat
from .singularities import (
    PolarizedConeData,
    ToricConeSingularity,
    WeightedHomogeneousHypersurface,
)
from .valuation import (
    ValuationReport,
    lattice_count_oracle,
    reduction_variable,
    valuation_volume_hypersurface,
    valuation_volume_toric,
    _count_box,
    _scaled_int_vector,
    _strict_upper,
)

_SIMPSON_TOL = 1e-10


# -- piecewise polynomial helpers ---------------------------------------------


def _poly_eval(coeffs: Sequence, t):
    result = 0 * t if not isinstance(t, float) else 0.0
    for c in reversed(coeffs):
        result = result * t + (c if not isinstance(t, float) else float(c))
    return result


def _poly_integral(coeffs: Sequence[Fraction], lo: Fraction, hi: Fraction) -> Fraction:
    total = Fraction(0)
    for j, c in enumerate(coeffs):
        total += c * (hi ** (j + 1) - lo ** (j + 1)) / (j + 1)
    return total


def _poly_tail_kernel(
    coeffs: Sequence[Fraction], lo: Fraction, hi: Fraction, n: int
) -> Fraction:
    """integral_lo^hi poly(t) t^(-n-1) dt; requires deg(poly) < n (no log terms)."""
    total = Fraction(0)
    for j, c in enumerate(coeffs):
        if c == 0:
            continue
        if j == n:
            raise IntegralDivergence("degree-n term would produce a logarithm")
        power = j - n
        total += c * (hi**power - lo**power) / power
    return total


def _lagrange_coeffs(points: list[tuple[Fraction, Fraction]]) -> list[Fraction]:
    """Exact interpolating polynomial through the given rational points."""
    coeffs = [Fraction(0)] * len(points)
    for i, (ti, vi) in enumerate(points):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (tj, _) in enumerate(points):
            if j == i:
                continue
            denom *= ti - tj
            new = [Fraction(0)] * (len(basis) + 1)
            for k, b in enumerate(basis):  # multiply basis by (t - tj)
                new[k + 1] += b
                new[k] -= tj * b
            basis = new
        scale = vi / denom
        for k, b in enumerate(basis):
            coeffs[k] += scale * b
    return coeffs


@dataclass(frozen=True)
class PiecewisePoly:
    """Polynomial pieces on consecutive intervals of a rational breakpoint grid."""

    breakpoints: tuple[Fraction, ...]
    pieces: tuple[tuple[Fraction, ...], ...]  # coeffs low -> high per interval

    def __post_init__(self):
        if len(self.pieces) != max(0, len(self.breakpoints) - 1):
            raise ValueError("need one piece per breakpoint interval")
        if any(b >= c for b, c in zip(self.breakpoints, self.breakpoints[1:])):
            raise ValueError("breakpoints must be strictly increasing")


# -- the profile ---------------------------------------------------------------


@dataclass
class VolumeProfile:
    """t -> vol(R^(t)) with its support bounds and the filtration volume."""

    n: int
    degH: Fraction
    c1: Fraction
    c2: Fraction
    vol_v1: Fraction
    pieces: PiecewisePoly | None = None
    samples: tuple[tuple[float, float], ...] | None = None
    v0_weights: RVector | None = None
    v1_weights: RVector | None = None
    label: str = ""
    _regions: list[tuple[Fraction, Fraction, tuple[Fraction, ...]]] = field(
        default=None, repr=False
    )

    def __post_init__(self):
        if self.pieces is None and self.samples is None:
            raise ModelError("profile needs polynomial pieces or a sample table")
        if self.c1 <= 0 or self.c2 < self.c1:
            raise ModelError("support bounds must satisfy 0 < c1 <= c2")
        if self.pieces is not None:
            self._validate_shape()

    def _validate_shape(self):
        """Probe that the pieces are nonincreasing and within [0, degH]."""
        bps = self.pieces.breakpoints
        probes: list[Fraction] = []
        for lo, hi in zip(bps, bps[1:]):
            probes += [lo, lo + (hi - lo) / 2, hi]
        last = self.degH
        for t in probes:
            value = self.vol_r_exact(t)
            if value < 0 or value > self.degH:
                raise ModelError(f"profile value {value} at t={t} outside [0, degH]")
            if value > last:
                raise ModelError(f"profile increases at t={t}")
            last = value

    # Region decomposition of [0, c2]: constant degH up to the first
    # breakpoint, then the polynomial pieces.  Only for piecewise profiles.
    def regions(self) -> list[tuple[Fraction, Fraction, tuple[Fraction, ...]]]:
        if self.pieces is None:
            raise ModelError("sampled profiles have no exact region decomposition")
        if self._regions is None:
            regs: list[tuple[Fraction, Fraction, tuple[Fraction, ...]]] = []
            first = self.pieces.breakpoints[0]
            if first > 0:
                regs.append((Fraction(0), first, (self.degH,)))
            for (lo, hi), coeffs in zip(
                zip(self.pieces.breakpoints, self.pieces.breakpoints[1:]),
                self.pieces.pieces,
            ):
                regs.append((lo, hi, tuple(coeffs)))
            self._regions = regs
        return self._regions

    def vol_r(self, t) -> float:
        """Profile value at t (float path; exact values via vol_r_exact)."""
        return float(self.vol_r_exact(rat_or_float(t)))

    def vol_r_exact(self, t):
        if self.pieces is not None:
            bps = self.pieces.breakpoints
            if t <= bps[0]:
                return self.degH if not isinstance(t, float) else float(self.degH)
            if t >= bps[-1]:
                return Fraction(0) if not isinstance(t, float) else 0.0
            for (lo, hi), coeffs in zip(zip(bps, bps[1:]), self.pieces.pieces):
                if t <= hi:
                    return _poly_eval(coeffs, t)
            return Fraction(0)
        return self._interp_sample(float(t))

    def _interp_sample(self, t: float) -> float:
        pts = self.samples
        if t <= pts[0][0]:
            return float(self.degH)
        if t >= pts[-1][0]:
            return 0.0
        for (t0, v0), (t1, v1) in zip(pts, pts[1:]):
            if t <= t1:
                frac = (t - t0) / (t1 - t0)
                return v0 + frac * (v1 - v0)
        return 0.0


def rat_or_float(x):
    return x if isinstance(x, (Fraction, int)) else float(x)


# -- building profiles from models ---------------------------------------------


def _cone_slice_volume(
    facet_normals: list[RVector],
    dim: int,
    w: RVector,
    a: RVector,
    t: Fraction,
) -> Fraction:
    """vol of {y in cone : <w, y> <= 1, <a - t w, y> >= 0}, exactly."""
    hrep = [Halfspace(nrm, Fraction(0)) for nrm in facet_normals]
    hrep.append(Halfspace(-w, Fraction(1)))
    rotating = a - w.scale(t)
    if not rotating.is_zero():
        hrep.append(Halfspace(rotating, Fraction(0)))
    region = Polytope.from_hrep(hrep, dim)
    return polytope_volume(region)


def _piecewise_from_cone(
    facet_normals: list[RVector],
    ray_ratios: list[Fraction],
    dim: int,
    w: RVector,
    a: RVector,
    multiplier: Fraction,
) -> PiecewisePoly:
    """Exact profile pieces between consecutive extreme-ray ratios."""
    bps = sorted(set(ray_ratios))
    fact = Fraction(math.factorial(dim)) * multiplier

    def value(t: Fraction) -> Fraction:
        return fact * _cone_slice_volume(facet_normals, dim, w, a, t)

    pieces = []
    for lo, hi in zip(bps, bps[1:]):
        if dim == 1:
            samples = [lo + (hi - lo) / 2]
        else:
            samples = [lo + (hi - lo) * Fraction(j, dim - 1) for j in range(dim)]
        pts = [(t, value(t)) for t in samples]
        coeffs = _lagrange_coeffs(pts) if len(pts) > 1 else [pts[0][1]]
        probe = lo + (hi - lo) / (dim + 2)
        if _poly_eval(tuple(coeffs), probe) != value(probe):
            raise ModelError("hidden breakpoint: profile is not polynomial here")
        pieces.append(tuple(coeffs))
    return PiecewisePoly(breakpoints=tuple(bps), pieces=tuple(pieces))


def profile_from_model(
    model,
    v0_weights: Sequence,
    v1_weights: Sequence,
    samples: int = 0,
) -> VolumeProfile:
    """Exact piecewise-polynomial profile of the v1-filtration on the v0-graded ring.

    `samples` > 0 additionally attaches a dense table of the profile for
    export; the exact pieces remain the computational path.
    """
    v0 = RVector(v0_weights)
    v1 = RVector(v1_weights)
    if isinstance(model, ToricConeSingularity):
        n = model.n
        facet_normals = list(model.sigma.rays)
        rays = model.dual.rays
        for xi in (v0, v1):
            if any(r.dot(xi) <= 0 for r in rays):
                raise NotInReebCone(f"{tuple(xi)} is not in the Reeb cone")
        ratios = [r.dot(v1) / r.dot(v0) for r in rays]
        c1 = min(ratios)
        pieces = _piecewise_from_cone(facet_normals, ratios, n, v0, v1, Fraction(1))
        degH = Fraction(math.factorial(n)) * _cone_slice_volume(
            facet_normals, n, v0, v1, Fraction(0)
        )
        vol1 = valuation_volume_toric(model, v1)
    elif isinstance(model, WeightedHomogeneousHypersurface):
        n = model.n
        if any(x <= 0 for x in v0) or any(x <= 0 for x in v1):
            raise NotInReebCone("hypersurface weights must be strictly positive")
        red, exp = reduction_variable(model, v1)
        keep = [i for i in range(model.nvars) if i != red]
        w = RVector([v0[i] for i in keep])
        a = RVector([v1[i] for i in keep])
        facet_normals = [
            RVector([1 if j == i else 0 for j in range(n)]) for i in range(n)
        ]
        ratios = [a[i] / w[i] for i in range(n)]
        c1 = min(v1[i] / v0[i] for i in range(model.nvars))
        pieces = _piecewise_from_cone(
            facet_normals, ratios, n, w, a, Fraction(exp)
        )
        degH = Fraction(exp * math.factorial(n)) * _cone_slice_volume(
            facet_normals, n, w, a, Fraction(0)
        )
        vol1 = valuation_volume_hypersurface(
            model, v1, allow_single_initial_monomial=True
        )
    else:
        raise ModelError(f"cannot build a profile for {type(model).__name__}")
    c2 = pieces.breakpoints[-1]
    table = None
    if samples > 0:
        grid = [float(c2) * 1.05 * j / (samples - 1) for j in range(samples)]
        profile_tmp = VolumeProfile(
            n=n, degH=degH, c1=c1, c2=c2, vol_v1=vol1, pieces=pieces
        )
        table = tuple((t, profile_tmp.vol_r(t)) for t in grid)
    return VolumeProfile(
        n=n,
        degH=degH,
        c1=c1,
        c2=c2,
        vol_v1=vol1,
        pieces=pieces,
        samples=table,
        v0_weights=v0,
        v1_weights=v1,
        label=getattr(model, "label", ""),
    )


def profile_to_dict(p: VolumeProfile) -> dict:
    """JSON-ready description: breakpoints and polynomial pieces as strings."""
    if p.pieces is None:
        raise ModelError("only piecewise-polynomial profiles serialize to JSON")
    return {
        "n": p.n,
        "degH": str(p.degH),
        "c1": str(p.c1),
        "c2": str(p.c2),
        "vol_v1": str(p.vol_v1),
        "breakpoints": [str(b) for b in p.pieces.breakpoints],
        "pieces": [[str(c) for c in piece] for piece in p.pieces.pieces],
    }


def profile_from_dict(data: dict) -> VolumeProfile:
    """Rebuild a profile from its JSON description."""
    try:
        pieces = PiecewisePoly(
            breakpoints=tuple(Fraction(b) for b in data["breakpoints"]),
            pieces=tuple(
                tuple(Fraction(c) for c in piece) for piece in data["pieces"]
            ),
        )
        return VolumeProfile(
            n=int(data["n"]),
            degH=Fraction(data["degH"]),
            c1=Fraction(data["c1"]),
            c2=Fraction(data["c2"]),
            vol_v1=Fraction(data["vol_v1"]),
            pieces=pieces,
        )
    except (KeyError, ValueError, ZeroDivisionError) as exc:
        raise ModelError(f"bad profile description: {exc}") from exc


def profile_identity(v0_weights: Sequence, n: int, degH) -> VolumeProfile:
    """The step profile of v1 = v0: constant degH up to 1, then 0."""
    degH = rat(degH)
    one = Fraction(1)
    return VolumeProfile(
        n=n,
        degH=degH,
        c1=one,
        c2=one,
        vol_v1=degH,
        pieces=PiecewisePoly(breakpoints=(one,), pieces=()),
        v0_weights=RVector(v0_weights),
        v1_weights=RVector(v0_weights),
    )


# -- tail transform and integrals ----------------------------------------------


def _tail_kernel_integral(p: VolumeProfile, x: Fraction) -> Fraction:
    """integral_x^inf vol_r(t) t^(-n-1) dt, exact; x > 0."""
    total = Fraction(0)
    for lo, hi, coeffs in p.regions():
        a = max(lo, x)
        if a >= hi:
            continue
        total += _poly_tail_kernel(coeffs, a, hi, p.n)
    return total


def tail_volume(p: VolumeProfile, x) -> float:
    """Theta(x) = n x^n * integral_x^inf vol_r(t) / t^(n+1) dt.

    Exact closed form on piecewise-polynomial profiles, adaptive Simpson on
    sampled ones.
    """
    if x <= 0:
        raise ValueError("tail transform needs x > 0")
    return float(tail_volume_exact(p, x)) if p.pieces is not None else _tail_simpson(p, x)


def tail_volume_exact(p: VolumeProfile, x) -> Fraction:
    x = rat(x) if not isinstance(x, float) else Fraction(x).limit_denominator(10**15)
    if x >= p.c2:
        return Fraction(0)
    return p.n * x**p.n * _tail_kernel_integral(p, x)


def _tail_simpson(p: VolumeProfile, x: float) -> float:
    x = float(x)
    hi = float(p.c2)
    if x >= hi:
        return 0.0
    if p.samples is not None and p.samples[-1][1] > 1e-12:
        raise IntegralDivergence("sample table does not decay to zero")
    integral = _adaptive_simpson(
        lambda t: p.vol_r(t) / t ** (p.n + 1), x, hi, _SIMPSON_TOL
    )
    return p.n * x**p.n * integral


def theta_integral(p: VolumeProfile, lo) -> Fraction:
    """integral_lo^inf Theta(t) dt in closed form (piecewise profiles)."""
    lo = rat(lo)
    total = Fraction(0)
    for u, v, _ in p.regions():
        a = max(u, lo)
        if a >= v:
            continue
        total += _theta_integral_region(p, a, v)
    return total


def _theta_integral_region(p: VolumeProfile, a: Fraction, b: Fraction) -> Fraction:
    """integral_a^b Theta dt where [a, b] lies inside one profile region."""
    n = p.n
    # Theta(t) = n t^n G(t) with G(t) = G(b) + integral_t^b vol_r s^(-n-1) ds
    g_b = _tail_kernel_integral(p, b)
    coeffs = None
    for u, v, cs in p.regions():
        if u <= a and b <= v:
            coeffs = cs
            break
    if coeffs is None:
        raise ValueError("interval straddles a region boundary")
    # Theta(t) = n t^n [g_b + sum_j c_j (b^(j-n) - t^(j-n)) / (j-n)]
    theta_poly = [Fraction(0)] * (n + 1)
    const = g_b
    for j, c in enumerate(coeffs):
        if c == 0:
            continue
        power = j - n
        const += c * b**power / power
        theta_poly[j] -= n * c / power
    theta_poly[n] += n * const
    return _poly_integral(theta_poly, a, b)


def profile_integral(p: VolumeProfile, lo) -> Fraction:
    """integral_lo^inf vol_r(t) dt in closed form."""
    lo = rat(lo)
    total = Fraction(0)
    for u, v, coeffs in p.regions():
        a = max(u, lo)
        if a >= v:
            continue
        total += _poly_integral(coeffs, a, v)
    return total


def section_integral(p: VolumeProfile) -> Fraction:
    """integral_0^inf vol(F S^(t)) dt = integral_0^inf Theta dt, exact."""
    return theta_integral(p, Fraction(0))


def volume_from_profile(p: VolumeProfile) -> float:
    """vol(v1) = degH / c1^n - n integral_{c1}^inf vol_r(t) / t^(n+1) dt."""
    if p.pieces is not None:
        value = p.degH / p.c1**p.n - p.n * _tail_kernel_integral(p, p.c1)
        return float(value)
    c1 = float(p.c1)
    integral = _adaptive_simpson(
        lambda t: p.vol_r(t) / t ** (p.n + 1), c1, float(p.c2), _SIMPSON_TOL
    )
    return float(p.degH) / c1**p.n - p.n * integral


def section_volume(p: VolumeProfile, x) -> float:
    """vol(F S^(x)): Theta(x) for x > 0 and the full degree degH for x <= 0."""
    if x <= 0:
        return float(p.degH)
    return tail_volume(p, x)


def liu_bound_check(p: VolumeProfile, xs: Sequence[float], tol: float = 1e-8) -> bool:
    """Pointwise bound vol(F S^(x)) + vol(v1) x^n >= degH, equality on (0, c1]."""
    vol1 = float(p.vol_v1)
    degh = float(p.degH)
    for x in xs:
        if not 0 < x <= float(p.c2):
            raise PreconditionViolated("sample points must lie in (0, c2]")
        lhs = section_volume(p, x) + vol1 * float(x) ** p.n
        if lhs < degh - tol:
            return False
        if float(x) <= float(p.c1) and abs(lhs - degh) > tol:
            return False
    return True


# -- the interpolation function Phi ---------------------------------------------


def interpolation_volume(p: VolumeProfile, lam: float, s: float) -> float:
    """Phi(lambda, s): volume along the interpolation from v0 to lambda*v1.

    Phi(lambda, 0) = degH exactly; Phi(lambda, 1) = lambda^-n vol(v1);
    continuous and convex in s on [0, 1].
    """
    lam = float(lam)
    if lam <= 0:
        raise ValueError("lambda must be positive")
    if not 0 <= s <= 1:
        raise ValueError("s must lie in [0, 1]")
    if s == 0:
        return float(p.degH)
    n = p.n
    shift = 1.0 - s
    head = float(p.degH) / (lam * float(p.c1) * s + shift) ** n

    def integrand(t: float) -> float:
        return p.vol_r(t) * lam * s / (shift + lam * s * t) ** (n + 1)

    if p.pieces is not None:
        tail = 0.0
        for lo, hi, _ in p.regions():
            a = max(float(lo), float(p.c1))
            if a >= float(hi):
                continue
            tail += _adaptive_simpson(integrand, a, float(hi), _SIMPSON_TOL)
    else:
        tail = _adaptive_simpson(integrand, float(p.c1), float(p.c2), _SIMPSON_TOL)
    return head - n * tail


@dataclass(frozen=True)
class DerivativeForms:
    """The four independent expressions for d/ds Phi(lambda, s) at s = 0."""

    via_profile_integral: float
    via_tail_integral: float
    via_tail_and_volume: float
    via_section_integral: float

    def spread(self) -> float:
        vals = (
            self.via_profile_integral,
            self.via_tail_integral,
            self.via_tail_and_volume,
            self.via_section_integral,
        )
        scale = max(1.0, max(abs(v) for v in vals))
        return (max(vals) - min(vals)) / scale


def interpolation_derivative_forms(p: VolumeProfile, lam: float) -> DerivativeForms:
    """Evaluate the four derivative formulas from independent exact integrals."""
    if p.pieces is None:
        raise ModelError("derivative forms need the exact piecewise profile")
    lam = float(lam)
    n = p.n
    degh = float(p.degH)
    c1 = float(p.c1)
    i_profile = float(profile_integral(p, p.c1))
    i_theta = float(theta_integral(p, p.c1))
    i_section = float(section_integral(p))
    theta_c1 = float(tail_volume_exact(p, p.c1))
    vol1 = float(p.vol_v1)
    front = n * lam * degh
    form_a = front * (1 / lam - c1 - i_profile / degh)
    form_b1 = front * (
        1 / lam - c1 - (n + 1) / (n * degh) * i_theta - theta_c1 / (n * degh)
    )
    form_b = front * (
        1 / lam
        - c1 * (n + 1) / n
        - (n + 1) / (n * degh) * i_theta
        + c1 ** (n + 1) * vol1 / (n * degh)
    )
    form_c = front * (1 / lam - (n + 1) / (n * degh) * i_section)
    return DerivativeForms(
        via_profile_integral=form_a,
        via_tail_integral=form_b1,
        via_tail_and_volume=form_b,
        via_section_integral=form_c,
    )


@dataclass(frozen=True)
class PhiSurface:
    lambdas: tuple[float, ...]
    s_grid: tuple[float, ...]
    values: tuple[tuple[float, ...], ...]
    derivatives_at_zero: tuple[DerivativeForms, ...]


def phi_surface(
    p: VolumeProfile, lambdas: Sequence[float], s_count: int = 21
) -> PhiSurface:
    s_grid = tuple(j / (s_count - 1) for j in range(s_count))
    values = tuple(
        tuple(interpolation_volume(p, lam, s) for s in s_grid) for lam in lambdas
    )
    derivs = tuple(interpolation_derivative_forms(p, lam) for lam in lambdas)
    return PhiSurface(
        lambdas=tuple(float(x) for x in lambdas),
        s_grid=s_grid,
        values=values,
        derivatives_at_zero=derivs,
    )


# -- stability gap ----------------------------------------------------------------


def stability_gap(p: VolumeProfile, logdisc_v: float, delta, degL) -> float:
    """A(v) - delta / (L^n) * integral_0^inf vol(F S^(t)) dt.

    Nonnegative whenever the compactified cone is semistable; zero at the
    canonical valuation.
    """
    if not math.isfinite(float(logdisc_v)):
        raise ValueError("gap needs a finite log discrepancy")
    if float(delta) <= 0 or float(degL) <= 0:
        raise ValueError("delta and L^n must be positive")
    if p.pieces is not None:
        integral = float(section_integral(p))
    else:
        integral = _adaptive_simpson(
            lambda t: section_volume(p, t), 1e-12, float(p.c2), _SIMPSON_TOL
        )
    return float(logdisc_v) - float(delta) / float(degL) * integral


def nvol_lower_bound_check(
    report: ValuationReport, cone: PolarizedConeData, tol: float = 1e-9
) -> bool:
    """nvol(v) >= r^n degH, the sharp semistable lower bound."""
    bound = cone.r**cone.n * cone.degH
    if isinstance(report.nvol, Fraction):
        ok = report.nvol >= bound or float(bound - report.nvol) <= tol
    else:
        ok = float(report.nvol) >= float(bound) - tol
    if not ok:
        raise BoundViolated(f"nvol {report.nvol} below bound {bound}")
    return True


# -- discrete cross-check -----------------------------------------------------------


def profile_dimension_check(
    model, v0_weights: Sequence, v1_weights: Sequence, thresholds: Sequence[int]
) -> bool:
    """Graded-piece dimension sums equal the total colength at each threshold.

    Left side: sum over degrees k of dim(R_k) - dim(F^m R_k), enumerated per
    graded slice; right side: the lattice-counting oracle for v1 at m.  Both
    are exact integers and must agree.
    """
    v0 = RVector(v0_weights)
    v1 = RVector(v1_weights)
    for m in thresholds:
        lhs = _graded_colength(model, v0, v1, Fraction(m))
        rhs = lattice_count_oracle(model, v1, Fraction(m))
        if lhs != rhs:
            return False
    return True


def _graded_colength(model, v0: RVector, v1: RVector, m: Fraction) -> int:
    import math as _math

    from .exactgeom import cut_cone

    if isinstance(model, ToricConeSingularity):
        ratios_min = min(r.dot(v1) / r.dot(v0) for r in model.dual.rays)
        rows = [(_scaled_int_vector(ray)[0], 0) for ray in model.sigma.rays]
        dims = model.n
        # the slice lives inside {alpha in dual cone : <v1, alpha> <= m}
        region = cut_cone(model.dual, v1).scale(m)
        base_bounds = []
        for i in range(dims):
            coords = [v[i] for v in region.vrep]
            base_bounds.append((_math.ceil(min(coords)), _math.floor(max(coords))))
        red_bound = None
    else:
        ratios_min = min(v1[i] / v0[i] for i in range(model.nvars))
        red, exp = reduction_variable(model, v1)
        dims = model.nvars
        rows = []
        weight_ints, weight_scale_tmp = _scaled_int_vector(v1)
        top = _strict_upper(weight_scale_tmp * m)
        base_bounds = [(0, top // weight_ints[i]) for i in range(dims)]
        red_bound = (red, exp)
    grade_vec, grade_scale = _scaled_int_vector(v0)
    weight_vec, weight_scale = _scaled_int_vector(v1)
    total = 0
    max_grade = int(m / ratios_min) + 1
    for k in range(max_grade + 1):
        # slice <v0, alpha> = k, weight < m
        bounds = []
        for i in range(dims):
            lo, hi = base_bounds[i]
            if red_bound is not None and i == red_bound[0]:
                hi = min(hi, red_bound[1] - 1)
            bounds.append((lo, hi))
        nonstrict = list(rows)
        nonstrict.append((grade_vec, -k * grade_scale))
        nonstrict.append(([-g for g in grade_vec], k * grade_scale))
        total += _count_box(
            bounds, nonstrict, weight_vec, _strict_upper(weight_scale * m)
        )
    return total


# -- quadrature ---------------------------------------------------------------------


def _adaptive_simpson(f, a: float, b: float, tol: float, depth: int = 48) -> float:
    if b <= a:
        return 0.0
    fa, fb = f(a), f(b)
    mid = 0.5 * (a + b)
    fm = f(mid)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    return _simpson_step(f, a, b, fa, fb, fm, whole, tol, depth)


def _simpson_step(f, a, b, fa, fb, fm, whole, tol, depth):
    mid = 0.5 * (a + b)
    lm = 0.5 * (a + mid)
    rm = 0.5 * (mid + b)
    flm, frm = f(lm), f(rm)
    left = (mid - a) / 6.0 * (fa + 4.0 * flm + fm)
    right = (b - mid) / 6.0 * (fm + 4.0 * frm + fb)
    if depth <= 0 or abs(left + right - whole) <= 15.0 * tol:
        return left + right + (left + right - whole) / 15.0
    half = 0.5 * tol
    return _simpson_step(
        f, a, mid, fa, fm, flm, left, half, depth - 1
    ) + _simpson_step(f, mid, b, fm, fb, frm, right, half, depth - 1)
