import math
import random
from fractions import Fraction

import pytest

from hvol.errors import BudgetExceeded, ModelError, NotInReebCone, OracleDisagreement
from hvol.exactgeom import RVector
from hvol.singularities import (
    affine_space,
    akm_singularity,
    canonical_weights,
    conifold,
    cyclic_quotient_cone,
)
from hvol.valuation import (
    MonomialValuation,
    lattice_count_oracle,
    log_adjusted_discrepancy,
    log_discrepancy_hypersurface,
    log_discrepancy_toric,
    normalized_volume,
    nvol_report,
    valuation_volume_hypersurface,
    valuation_volume_toric,
)


def test_monomial_valuation_positivity():
    with pytest.raises(ValueError):
        MonomialValuation([1, 0])


def test_log_discrepancy_toric_affine():
    assert log_discrepancy_toric(affine_space(3), [1, 1, 1]) == 3
    assert log_discrepancy_toric(affine_space(2), [2, 3]) == 5


def test_log_discrepancy_toric_matches_hypersurface_a1():
    # quadric 3-fold: toric and hypersurface descriptions agree
    toric = conifold()
    hyp = akm_singularity(3, 2)
    assert log_discrepancy_toric(toric, toric.canonical_xi) == 4
    assert log_discrepancy_hypersurface(hyp, canonical_weights(3, 2)) == 4


def test_log_discrepancy_toric_rejects_outside():
    with pytest.raises(NotInReebCone):
        log_discrepancy_toric(affine_space(2), [1, -1])


def test_log_discrepancy_hypersurface_values():
    assert log_discrepancy_hypersurface(
        akm_singularity(3, 2), canonical_weights(3, 2)
    ) == 4
    # k = 1 smooth model: sum = n + 2, order = 2
    assert log_discrepancy_hypersurface(akm_singularity(3, 1), [1, 1, 1, 2]) == 3
    assert log_discrepancy_hypersurface(
        akm_singularity(3, 5), [1, 1, 1, Fraction(1, 2)]
    ) == Fraction(3, 2)


def test_volume_toric():
    assert valuation_volume_toric(affine_space(3), [1, 1, 1]) == 1
    assert valuation_volume_toric(affine_space(2), [2, 1]) == Fraction(1, 2)
    a1 = cyclic_quotient_cone(2, 1)
    assert valuation_volume_toric(a1, a1.canonical_xi) == Fraction(1, 2)


def test_volume_hypersurface():
    for n, k in [(2, 2), (3, 2), (3, 5), (4, 3)]:
        model = akm_singularity(n, k)
        vol = valuation_volume_hypersurface(model, canonical_weights(n, k))
        assert vol == Fraction(1, k ** (n - 1))
    assert valuation_volume_hypersurface(
        akm_singularity(3, 5), [1, 1, 1, Fraction(1, 2)]
    ) == 4
    assert valuation_volume_hypersurface(
        akm_singularity(3, 2), [2, 2, 2, 2]
    ) == Fraction(1, 4)


def test_volume_hypersurface_single_monomial_guard():
    model = akm_singularity(3, 3)
    with pytest.raises(ModelError):
        valuation_volume_hypersurface(model, [1, 1, 1, Fraction(1, 2)])
    vol = valuation_volume_hypersurface(
        model, [1, 1, 1, Fraction(1, 2)], allow_single_initial_monomial=True
    )
    assert vol == 3  # d / prod = (3/2) / (1/2)


def test_normalized_volume():
    assert normalized_volume(Fraction(2), Fraction(1, 2), 2) == 2
    assert normalized_volume(Fraction(4), Fraction(1, 4), 3) == 16
    assert normalized_volume(math.inf, 5, 3) == math.inf


def test_normalized_volume_monotone():
    base = normalized_volume(Fraction(3), Fraction(1, 2), 3)
    assert normalized_volume(Fraction(4), Fraction(1, 2), 3) > base
    assert normalized_volume(Fraction(3), Fraction(2, 3), 3) > base


def test_log_adjusted_discrepancy():
    assert log_adjusted_discrepancy(5, 0) == 5
    assert log_adjusted_discrepancy(3, 1) == 2
    beta = Fraction(2, 3)
    assert log_adjusted_discrepancy(4, 1 - beta) == 3 + beta


def test_rescaling_invariance_exact():
    cases = [
        (affine_space(3), RVector([1, 2, 5])),
        (conifold(), RVector([1, 1, 3])),
        (akm_singularity(3, 3), canonical_weights(3, 3)),
    ]
    for model, weights in cases:
        base = nvol_report(model, weights).nvol
        for lam in (Fraction(1, 3), Fraction(2), Fraction(7)):
            assert nvol_report(model, weights.scale(lam)).nvol == base


def test_toric_hypersurface_consistency_a1():
    # the quadric surface and 3-fold have both descriptions; A, vol, nvol agree
    pairs = [
        (cyclic_quotient_cone(2, 1), akm_singularity(2, 2), 2),
        (conifold(), akm_singularity(3, 2), 3),
    ]
    for toric, hyp, n in pairs:
        rt = nvol_report(toric, toric.canonical_xi)
        rh = nvol_report(hyp, canonical_weights(n, 2))
        assert (rt.logdisc, rt.volume, rt.nvol) == (rh.logdisc, rh.volume, rh.nvol)


def test_lattice_count_small():
    assert lattice_count_oracle(affine_space(2), [1, 1], 3) == 6
    assert lattice_count_oracle(akm_singularity(2, 2), [1, 1, 1], 2) == 4


def test_lattice_count_matches_series():
    # C^2 colengths are triangular numbers
    for p in range(1, 8):
        assert lattice_count_oracle(affine_space(2), [1, 1], p) == p * (p + 1) // 2


def test_oracle_convergence_decreasing():
    model = affine_space(2)
    errors = []
    for p in (25, 100, 400):
        count = lattice_count_oracle(model, [1, 1], p)
        errors.append(abs(2 * count / p**2 - 1))
    assert errors[0] > errors[1] > errors[2]


def test_oracle_budget():
    with pytest.raises(BudgetExceeded):
        lattice_count_oracle(affine_space(3), [1, 1, 1], 10**5)


def test_oracle_check_flag():
    vol = valuation_volume_hypersurface(
        akm_singularity(3, 2), [2, 2, 2, 2], oracle_check=True, oracle_depth=120
    )
    assert vol == Fraction(1, 4)
    with pytest.raises(OracleDisagreement):
        valuation_volume_hypersurface(
            akm_singularity(3, 2),
            [2, 2, 2, 2],
            oracle_check=True,
            oracle_depth=120,
            oracle_rel_tol=1e-9,
        )


def test_nvol_report_flags_nonpositive():
    report = nvol_report(affine_space(2), [1, 1])
    assert not report.nonpositive_discrepancy
    assert report.nvol_approx == pytest.approx(4.0)
