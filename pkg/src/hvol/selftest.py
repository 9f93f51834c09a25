"""Built-in verification suite.

Every check here is a reproducible desk-scale consequence of the volume
minimization theory: exact quotient-surface identities, global minimizers of
the A_{k-1} family, sharpness of the lower bound, oracle agreement for the
closed volume formulas, the interpolation calculus, stability gaps, Reeb-cone
laws and the toric log-Fano centroid identity.  The CLI `selftest` command and
the acceptance test module both run this list.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

from .exactgeom import Halfspace, RVector, rat
from .filtration import (
    interpolation_derivative_forms,
    interpolation_volume,
    profile_from_model,
    profile_integral,
    section_integral,
    section_volume,
    stability_gap,
    tail_volume_exact,
    theta_integral,
    volume_from_profile,
)
from .molien import (
    binary_dihedral_group,
    cyclic_group,
    invariant_dimension_series,
    pair_identity_check,
    quotient_min_nvol,
    quotient_volume,
)
from .reeb import minimize_nvol_multistart, normalize_reeb, rescaling_law_check
from .singularities import (
    PolarizedConeData,
    affine_space,
    akm_singularity,
    canonical_weights,
    cone_invariants,
    conifold,
    cyclic_quotient_cone,
    toric_log_fano,
)
from .valuation import (
    MonomialValuation,
    lattice_count_oracle,
    log_discrepancy_hypersurface,
    log_discrepancy_toric,
    nvol_report,
)


@dataclass
class CheckResult:
    name: str
    passed: bool
    lhs: str
    rhs: str
    tolerance: str

    @classmethod
    def exact(cls, name: str, lhs, rhs) -> "CheckResult":
        return cls(name, lhs == rhs, str(lhs), str(rhs), "exact")

    @classmethod
    def close(cls, name: str, lhs: float, rhs: float, tol: float) -> "CheckResult":
        return cls(name, abs(lhs - rhs) <= tol, f"{lhs:.17g}", f"{rhs:.17g}", f"{tol:g}")

    @classmethod
    def at_least(cls, name: str, lhs: float, rhs: float, tol: float) -> "CheckResult":
        return cls(name, lhs >= rhs - tol, f"{lhs:.17g}", f"{rhs:.17g}", f"{tol:g}")


def _coprime_pairs(max_r: int) -> list[tuple[int, int]]:
    pairs = []
    for r in range(1, max_r + 1):
        for a in range(1, max(r, 2)):
            if math.gcd(a, r) == 1:
                pairs.append((r, a))
                break  # one representative per order keeps runtime small
    return pairs


# -- criterion 1: quotient surfaces -------------------------------------------


def check_quotient_min() -> list[CheckResult]:
    out = []
    for r, a in _coprime_pairs(12):
        result = quotient_min_nvol(cyclic_group(r, a))
        out.append(
            CheckResult.exact(
                f"quotient_min[r={r},a={a}]", result.min_nvol, Fraction(4, r)
            )
        )
    hyp = nvol_report(akm_singularity(2, 2), canonical_weights(2, 2))
    out.append(
        CheckResult.exact(
            "quotient_min[cross-check A1 surface]",
            quotient_min_nvol(cyclic_group(2, 1)).min_nvol,
            hyp.nvol,
        )
    )
    return out


LIBRARY_GROUPS = [
    cyclic_group(1, 0),
    cyclic_group(2, 1),
    cyclic_group(3, 1),
    cyclic_group(3, 2),
    cyclic_group(5, 2),
    cyclic_group(7, 3),
    cyclic_group(8, 3),
    cyclic_group(11, 5),
    cyclic_group(12, 5),
    binary_dihedral_group(2),
    binary_dihedral_group(3),
]


# -- criterion 2: exact pair identity ------------------------------------------


def check_pair_identity() -> list[CheckResult]:
    out = []
    for group in LIBRARY_GROUPS:
        series = invariant_dimension_series(group, 62)
        for m in range(group.order, 61, group.order):
            ok = pair_identity_check(group, m, series)
            rhs = Fraction((m + 1) ** 2 + group.order - 1, group.order)
            out.append(
                CheckResult(
                    f"pair_identity[{group.label},m={m}]",
                    ok,
                    str(series[m] + series[m + 1]),
                    str(rhs),
                    "exact",
                )
            )
    return out


# -- criterion 3: Molien limit ---------------------------------------------------


def check_molien_limit(depth: int = 400) -> list[CheckResult]:
    out = []
    for group in LIBRARY_GROUPS:
        qv = quotient_volume(group, depth)
        out.append(
            CheckResult.close(
                f"molien_limit[{group.label}]",
                qv.estimate,
                float(qv.exact),
                2.0 / depth,
            )
        )
    return out


# -- criteria 4 and 5: A_{k-1} minimizers ----------------------------------------


def _direction_gap(a: RVector, b: RVector) -> float:
    """Max coordinate distance after scaling both to first coordinate 1."""
    fa = [float(x) / float(a[0]) for x in a]
    fb = [float(x) / float(b[0]) for x in b]
    return max(abs(x - y) for x, y in zip(fa, fb))


MINIMIZER_CERTIFIED = [(2, 2), (2, 5), (3, 1), (3, 2), (3, 3), (4, 2), (3, 4), (4, 3)]


def check_akm_minimizers() -> list[CheckResult]:
    out = []
    for n, k in MINIMIZER_CERTIFIED:
        model = akm_singularity(n, k)
        best, spread, _ = minimize_nvol_multistart(model, seeds=5, base_seed=0)
        canonical = canonical_weights(n, k)
        expected = Fraction(((n - 2) * k + 2) ** n, k ** (n - 1))
        out.append(
            CheckResult.close(
                f"akm_argmin[n={n},k={k}]",
                _direction_gap(best.argmin, canonical),
                0.0,
                1e-6,
            )
        )
        out.append(
            CheckResult.exact(
                f"akm_min_value[n={n},k={k}]", best.min_nvol_exact, expected
            )
        )
        out.append(
            CheckResult.close(f"akm_multistart[n={n},k={k}]", spread, 0.0, 1e-6)
        )
    return out


def check_conjectured_minimizers() -> list[CheckResult]:
    out = []
    for n, k in [(3, 5), (4, 4)]:
        model = akm_singularity(n, k)
        best, _, _ = minimize_nvol_multistart(model, seeds=5, base_seed=0)
        last_ratio = float(best.argmin[-1]) / float(best.argmin[0])
        out.append(
            CheckResult.close(
                f"conjectured_last_weight[n={n},k={k}]",
                last_ratio,
                (n - 2) / (n - 1),
                1e-6,
            )
        )
    best35, _, _ = minimize_nvol_multistart(akm_singularity(3, 5), seeds=5, base_seed=0)
    v0_value = nvol_report(akm_singularity(3, 5), canonical_weights(3, 5)).nvol
    out.append(
        CheckResult.exact("conjectured_value[n=3,k=5]", best35.min_nvol_exact, Fraction(27, 2))
    )
    out.append(
        CheckResult(
            "conjectured_below_canonical[n=3,k=5]",
            best35.min_nvol_exact < v0_value and v0_value == Fraction(6860, 500),
            str(best35.min_nvol_exact),
            str(v0_value),
            "strict <",
        )
    )
    return out


# -- criterion 6: sharpness of the lower bound ------------------------------------


def check_sharpness(trials: int = 50, seed: int = 0) -> list[CheckResult]:
    rng = random.Random(seed)
    out = []
    for trial in range(trials):
        n = rng.randint(2, 6)
        q = rng.randint(1, 5)
        r = Fraction(rng.randint(1, n * q), q)
        degh = Fraction(rng.randint(1, 20), rng.randint(1, 10))
        inv = cone_invariants(PolarizedConeData(n=n, r=r, degH=degh))
        out.append(
            CheckResult.exact(
                f"sharpness[{trial}:n={n},r={r}]",
                inv.nvol_lower_bound,
                inv.nvol_canonical,
            )
        )
    return out


# -- criterion 7: lattice-counting oracle ------------------------------------------


ORACLE_CASES = [
    ("C2", affine_space(2), [[1, 1], [2, 1], [1, 3]]),
    ("C3", affine_space(3), [[1, 1, 1], [2, 1, 1], [1, 1, 2]]),
    ("A1_surface", cyclic_quotient_cone(2, 1), [[2, 0], [1, 0], [3, 1]]),
    ("A1_3fold", akm_singularity(3, 2), [[2, 2, 2, 2], [1, 1, 1, 1], [2, 1, 1, 1]]),
    ("A2_3fold", akm_singularity(3, 3), [[3, 3, 3, 2], [1, 1, 1, 1], [1, 1, 1, 2]]),
]


def check_oracle(depth: int = 200) -> list[CheckResult]:
    out = []
    for name, model, valuations in ORACLE_CASES:
        for weights in valuations:
            report = nvol_report(model, weights)
            count = lattice_count_oracle(model, RVector(weights), Fraction(depth))
            estimate = math.factorial(report.n) * count / depth**report.n
            rel = abs(estimate - float(report.volume)) / float(report.volume)
            out.append(
                CheckResult.close(f"oracle[{name},{weights}]", rel, 0.0, 0.05)
            )
    return out


# -- criterion 8: interpolation calculus ---------------------------------------------


def _profile_cases():
    c2 = affine_space(2)
    c3 = affine_space(3)
    a13 = akm_singularity(3, 2)
    return [
        ("C2(1,2)", c2, RVector([1, 1]), RVector([1, 2])),
        ("A1_3fold(canonical)", a13, canonical_weights(3, 2), canonical_weights(3, 2)),
        ("C3(1,1,2)", c3, RVector([1, 1, 1]), RVector([1, 1, 2])),
    ]


def _logdisc(model, weights) -> Fraction:
    if hasattr(model, "m0"):
        return log_discrepancy_toric(model, weights)
    return log_discrepancy_hypersurface(model, weights)


def check_interpolation_calculus() -> list[CheckResult]:
    out = []
    for name, model, v0, v1 in _profile_cases():
        profile = profile_from_model(model, v0, v1)
        n = profile.n
        r_value = _logdisc(model, v0)
        a_value = _logdisc(model, v1)
        lam_star = float(r_value / a_value)
        lambdas = [0.5, 1.0, 2.0, lam_star]
        for lam in lambdas:
            out.append(
                CheckResult.exact(
                    f"phi_at_zero[{name},lam={lam:.6g}]",
                    interpolation_volume(profile, lam, 0.0),
                    float(profile.degH),
                )
            )
            out.append(
                CheckResult.close(
                    f"phi_at_one[{name},lam={lam:.6g}]",
                    interpolation_volume(profile, lam, 1.0),
                    lam ** (-n) * float(profile.vol_v1),
                    1e-8,
                )
            )
        values = [interpolation_volume(profile, lam_star, j / 20) for j in range(21)]
        worst = 0.0
        for j in range(1, 20):
            worst = min(worst, (values[j - 1] + values[j + 1]) / 2 - values[j])
        out.append(
            CheckResult.at_least(f"phi_midpoint_convexity[{name}]", worst, 0.0, 1e-9)
        )
        forms = interpolation_derivative_forms(profile, lam_star)
        out.append(
            CheckResult.close(
                f"derivative_forms_agree[{name}]", forms.spread(), 0.0, 1e-7
            )
        )
        theta_c1 = float(tail_volume_exact(profile, profile.c1))
        out.append(
            CheckResult.close(
                f"theta_c1_identity[{name}]",
                theta_c1,
                float(profile.degH - profile.c1**n * profile.vol_v1),
                1e-8,
            )
        )
        lhs = float(profile_integral(profile, profile.c1))
        rhs = float(
            Fraction(n + 1, n) * theta_integral(profile, profile.c1)
            + profile.c1 / n * tail_volume_exact(profile, profile.c1)
        )
        out.append(CheckResult.close(f"integral_identity[{name}]", lhs, rhs, 1e-8))
        out.append(
            CheckResult.close(
                f"profile_volume[{name}]",
                volume_from_profile(profile),
                float(profile.vol_v1),
                1e-6 * float(profile.vol_v1),
            )
        )
    identity = profile_from_model(
        akm_singularity(3, 2), canonical_weights(3, 2), canonical_weights(3, 2)
    )
    forms = interpolation_derivative_forms(identity, 1.0)
    out.append(
        CheckResult.close(
            "derivative_zero_at_minimizer", abs(forms.spread()) + abs(forms.via_profile_integral), 0.0, 1e-9
        )
    )
    return out


# -- criterion 9: stability gap ----------------------------------------------------


def _gap_samples(name, model, v0, rng) -> Iterable[RVector]:
    if hasattr(model, "m0"):
        rays = model.sigma.rays
        for _ in range(10):
            xi = RVector([Fraction(0)] * model.n)
            for ray in rays:
                xi = xi + ray.scale(Fraction(rng.randint(20, 300), 100))
            yield xi
    else:
        k = int(model.monomials[-1][-1])
        for _ in range(10):
            u = Fraction(rng.randint(50, 200), 100)
            stretch = Fraction(rng.randint(0, 200), 100)
            x = Fraction(2, k) * u * (1 + stretch)
            yield RVector([u] * (model.nvars - 1) + [x])


GAP_MODELS = [
    ("C2", affine_space(2), RVector([1, 1])),
    ("C3", affine_space(3), RVector([1, 1, 1])),
    ("A1_surface", cyclic_quotient_cone(2, 1), RVector([2, 0])),
    ("conifold", conifold(), RVector([0, 0, 2])),
    ("A2_3fold", akm_singularity(3, 3), canonical_weights(3, 3)),
]


def check_stability_gap(seed: int = 0) -> list[CheckResult]:
    rng = random.Random(seed)
    out = []
    for name, model, v0 in GAP_MODELS:
        n = model.n
        r_value = _logdisc(model, v0)
        degh = None
        worst = math.inf
        worst_rel = 0.0
        for v1 in _gap_samples(name, model, v0, rng):
            profile = profile_from_model(model, v0, v1)
            degh = profile.degH
            a_value = _logdisc(model, v1)
            delta = r_value * Fraction(n + 1, n)
            gap = stability_gap(profile, float(a_value), delta, degh)
            worst = min(worst, gap)
            forms = interpolation_derivative_forms(profile, float(r_value / a_value))
            lhs = forms.via_section_integral * float(a_value)
            rhs = n * float(degh) * gap
            worst_rel = max(worst_rel, abs(lhs - rhs) / max(1.0, abs(lhs)))
        out.append(CheckResult.at_least(f"gap_nonnegative[{name}]", worst, 0.0, 1e-9))
        out.append(
            CheckResult.close(f"gap_derivative_relation[{name}]", worst_rel, 0.0, 1e-7)
        )
        canonical_profile = profile_from_model(model, v0, v0)
        gap0 = stability_gap(
            canonical_profile,
            float(r_value),
            r_value * Fraction(n + 1, n),
            canonical_profile.degH,
        )
        out.append(CheckResult.close(f"gap_zero_at_canonical[{name}]", gap0, 0.0, 1e-8))
    return out


# -- criterion 10: Reeb-cone laws ----------------------------------------------------


TORIC_LIBRARY = [
    ("C2", affine_space(2)),
    ("C3", affine_space(3)),
    ("A1_surface", cyclic_quotient_cone(2, 1)),
    ("conifold", conifold()),
    ("Z3_surface", cyclic_quotient_cone(3, 2)),
]


def check_reeb_laws(seed: int = 0) -> list[CheckResult]:
    rng = random.Random(seed)
    out = []
    for name, model in TORIC_LIBRARY:
        xi = RVector([Fraction(0)] * model.n)
        for ray in model.sigma.rays:
            xi = xi + ray.scale(Fraction(rng.randint(10, 50), 10))
        ok = all(
            rescaling_law_check(model, xi, lam)
            for lam in (Fraction(1, 3), Fraction(2), Fraction(7), Fraction(1, 2), Fraction(3))
        )
        out.append(CheckResult(f"rescaling_law[{name}]", ok, "exact", "exact", "exact"))
        normalized = normalize_reeb(model, xi)
        out.append(
            CheckResult.exact(
                f"normalize_idempotent[{name}]",
                normalize_reeb(model, normalized),
                normalized,
            )
        )
        out.append(
            CheckResult.exact(
                f"normalize_slice[{name}]",
                log_discrepancy_toric(model, normalized),
                Fraction(model.n),
            )
        )
        _, spread, _ = minimize_nvol_multistart(model, seeds=5, base_seed=seed)
        out.append(CheckResult.close(f"multistart_agreement[{name}]", spread, 0.0, 1e-6))
    return out


# -- criterion 11: toric log-Fano centroid law ------------------------------------------


def _random_lattice_polytope(rng: random.Random, dim: int) -> list[Halfspace]:
    """A random unimodular image of a cube, simplex or cross-polytope."""
    kind = rng.choice(["cube", "simplex", "cross"])
    if kind == "cube":
        hrep = []
        for i in range(dim):
            e = [0] * dim
            e[i] = 1
            hrep.append((list(e), 1))
            hrep.append(([-v for v in e], 1))
    elif kind == "simplex":
        hrep = []
        for i in range(dim):
            e = [0] * dim
            e[i] = 1
            hrep.append((list(e), 0))
        hrep.append(([-1] * dim, dim))
    else:
        hrep = []
        for signs in range(2**dim):
            row = [(1 if signs >> i & 1 else -1) for i in range(dim)]
            hrep.append((row, 1))
    # random unimodular shear and integer translation: x -> U x + t
    u = [[Fraction(1 if i == j else 0) for j in range(dim)] for i in range(dim)]
    for _ in range(3):
        i, j = rng.randrange(dim), rng.randrange(dim)
        if i != j:
            c = rng.randint(-2, 2)
            for col in range(dim):
                u[i][col] += c * u[j][col]
    shift = [Fraction(rng.randint(-3, 3)) for _ in range(dim)]
    # halfspace <a, x> + b >= 0 pulls back to <a U, y> + (<a, t> + b) >= 0 for x = U y + t
    out = []
    for normal, offset in hrep:
        pulled = [
            sum(rat(normal[r]) * u[r][col] for r in range(dim)) for col in range(dim)
        ]
        const = sum(rat(normal[r]) * shift[r] for r in range(dim)) + offset
        out.append(Halfspace(RVector(pulled), const))
    return out


def check_toric_log_fano(seed: int = 0) -> list[CheckResult]:
    rng = random.Random(seed)
    out = []
    produced = 0
    while produced < 10:
        dim = rng.randint(2, 4)
        facets = _random_lattice_polytope(rng, dim)
        from .exactgeom import Polytope, centroid as exact_centroid

        base = Polytope.from_hrep(facets, dim)
        p_star = exact_centroid(base)
        max_l = max(h.value(p_star) for h in facets)
        r = Fraction(1, math.ceil(max_l))
        if r > dim + 1:
            r = Fraction(dim + 1)
        report = toric_log_fano(facets, r)
        n = dim + 1
        expected = RVector(list(report.p_star) + [Fraction(1)]).scale(Fraction(n, n + 1))
        out.append(
            CheckResult.exact(
                f"lifted_centroid[{produced}:dim={dim}]",
                report.frak_p_star,
                expected,
            )
        )
        out.append(
            CheckResult.exact(
                f"beta_n[{produced}:dim={dim}]", report.beta_n, r / n
            )
        )
        produced += 1
    return out


# -- driver ------------------------------------------------------------------------------


SUITES: list[tuple[str, Callable[[], list[CheckResult]]]] = [
    ("quotient", check_quotient_min),
    ("pair_identity", check_pair_identity),
    ("molien", check_molien_limit),
    ("akm", check_akm_minimizers),
    ("conjectured", check_conjectured_minimizers),
    ("sharpness", check_sharpness),
    ("oracle", check_oracle),
    ("interpolation", check_interpolation_calculus),
    ("gap", check_stability_gap),
    ("reeb", check_reeb_laws),
    ("toric_log_fano", check_toric_log_fano),
]


def run_all(name_filter: str | None = None) -> list[CheckResult]:
    results: list[CheckResult] = []
    for suite_name, runner in SUITES:
        if name_filter and name_filter not in suite_name:
            continue
        results.extend(runner())
    return results
