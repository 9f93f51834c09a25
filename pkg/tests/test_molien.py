from fractions import Fraction

import pytest

from hvol.errors import NonIntegerDimension, PreconditionViolated
from hvol.molien import (
    DimensionSeries,
    FiniteGroupAction,
    GroupElement,
    binary_dihedral_group,
    check_free_in_codim1,
    cyclic_group,
    cyclotomic_polynomial,
    invariant_dimension_series,
    pair_identity_check,
    quotient_min_nvol,
    quotient_volume,
)


def test_cyclic_group_eigenvalues():
    z2 = cyclic_group(2, 1)
    assert z2.order == 2
    assert {(e.eig1, e.eig2) for e in z2.elements} == {
        (0, 0),
        (Fraction(1, 2), Fraction(1, 2)),
    }


def test_free_in_codim1():
    assert check_free_in_codim1(cyclic_group(2, 1))
    assert check_free_in_codim1(cyclic_group(3, 2))
    assert not check_free_in_codim1(cyclic_group(4, 2))  # pseudo-reflection at j=2
    assert check_free_in_codim1(cyclic_group(1, 0))


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == [-1, 1]
    assert cyclotomic_polynomial(2) == [1, 1]
    assert cyclotomic_polynomial(4) == [1, 0, 1]
    assert cyclotomic_polynomial(6) == [1, -1, 1]


def test_series_z3():
    series = invariant_dimension_series(cyclic_group(3, 2), 5)
    # degree <3 invariants: 1 and xy; degree 3 adds x^3 and y^3
    assert series[3] == 2
    assert series[4] == 4


def test_series_trivial_group():
    series = invariant_dimension_series(cyclic_group(1, 0), 8)
    assert all(series[m] == m * (m + 1) // 2 for m in range(9))


def test_series_brute_force_cross_check():
    # count invariant monomials directly for the abelian 1/5(1,2) action
    r, a = 5, 2
    series = invariant_dimension_series(cyclic_group(r, a), 20)
    for m in range(21):
        count = sum(
            1
            for i in range(m)
            for j in range(m)
            if i + j < m and (i + a * j) % r == 0
        )
        assert series[m] == count


def test_series_rejects_unclosed_element_list():
    broken = FiniteGroupAction(
        elements=(
            GroupElement(Fraction(0), Fraction(0)),
            GroupElement(Fraction(1, 3), Fraction(1, 3)),
        )
    )
    with pytest.raises(NonIntegerDimension):
        invariant_dimension_series(broken, 6)


def test_dimension_series_invariants():
    with pytest.raises(NonIntegerDimension):
        DimensionSeries(dims=(0, 2))
    with pytest.raises(NonIntegerDimension):
        DimensionSeries(dims=(0, 1, 0))


def test_pair_identity_examples():
    z3 = cyclic_group(3, 2)
    series = invariant_dimension_series(z3, 4)
    assert series[3] + series[4] == 6  # (16 + 2) / 3
    assert pair_identity_check(z3, 3)
    assert pair_identity_check(cyclic_group(2, 1), 2)
    assert pair_identity_check(cyclic_group(1, 0), 1)


def test_pair_identity_preconditions():
    with pytest.raises(PreconditionViolated):
        pair_identity_check(cyclic_group(3, 2), 4)  # 3 does not divide 4
    with pytest.raises(PreconditionViolated):
        pair_identity_check(cyclic_group(4, 2), 4)  # not free in codim 1


def test_binary_dihedral():
    bd = binary_dihedral_group(2)
    assert bd.order == 8
    assert check_free_in_codim1(bd)
    assert pair_identity_check(bd, 8)
    assert quotient_min_nvol(bd).min_nvol == Fraction(1, 2)


def test_quotient_volume():
    qv = quotient_volume(cyclic_group(5, 2), 200)
    assert qv.exact == Fraction(1, 5)
    assert abs(qv.estimate - 0.2) <= 2 / 200
    assert quotient_volume(cyclic_group(1, 0), 100).exact == 1


def test_quotient_volume_requires_freeness():
    with pytest.raises(PreconditionViolated):
        quotient_volume(cyclic_group(4, 2), 50)


def test_quotient_min_nvol():
    assert quotient_min_nvol(cyclic_group(2, 1)).min_nvol == 2
    result = quotient_min_nvol(cyclic_group(7, 3))
    assert result.min_nvol == Fraction(4, 7)
    assert result.logdisc_witness == 2
    assert result.volume_witness == Fraction(1, 7)
    assert quotient_min_nvol(cyclic_group(1, 0)).min_nvol == 4


def test_conjugation_invariance():
    # swapping the eigenvalue pair of every element leaves the series unchanged
    z5 = cyclic_group(5, 2)
    swapped = FiniteGroupAction(
        elements=tuple(GroupElement(e.eig2, e.eig1) for e in z5.elements)
    )
    a = invariant_dimension_series(z5, 30)
    b = invariant_dimension_series(swapped, 30)
    assert a.dims == b.dims
