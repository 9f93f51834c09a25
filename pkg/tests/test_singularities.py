from fractions import Fraction

import pytest

from hvol.errors import AngleOutOfRange, InvalidIndex, ModelError, NotQGorenstein
from hvol.exactgeom import Halfspace, RVector
from hvol.singularities import (
    PolarizedConeData,
    ToricConeSingularity,
    affine_space,
    akm_singularity,
    canonical_weights,
    cone_invariants,
    conifold,
    cyclic_quotient_cone,
    fano_index_check,
    toric_log_fano,
)
from hvol.valuation import nvol_report


def hs(normal, offset=0):
    return Halfspace(RVector(normal), Fraction(offset))


def test_akm_constructor():
    model = akm_singularity(2, 2)
    assert model.nvars == 3
    assert len(model.monomials) == 3
    assert model.label == "A1^2"
    quartic = akm_singularity(3, 4)
    assert tuple(quartic.monomials[-1]) == (0, 0, 0, 4)
    smooth = akm_singularity(2, 1)
    assert tuple(smooth.monomials[-1]) == (0, 0, 1)


def test_akm_requires_two_monomials():
    with pytest.raises(ModelError):
        akm_singularity(1, 2)


def test_canonical_weights():
    assert tuple(canonical_weights(2, 2)) == (2, 2, 2)
    assert tuple(canonical_weights(3, 5)) == (5, 5, 5, 2)
    report = nvol_report(akm_singularity(3, 3), canonical_weights(3, 3))
    assert report.nvol == Fraction(125, 9)


def test_symmetry_classes():
    assert akm_singularity(3, 3).symmetry_classes() == [[0, 1, 2], [3]]
    # k = 2 makes all four variables interchangeable
    assert akm_singularity(3, 2).symmetry_classes() == [[0, 1, 2, 3]]


def test_gorenstein_vector():
    assert affine_space(3).m0 == RVector([1, 1, 1])
    assert conifold().m0 == RVector([1, 1, 2])
    assert cyclic_quotient_cone(3, 2).m0 == RVector([1, 1])


def test_not_q_gorenstein():
    with pytest.raises(NotQGorenstein):
        ToricConeSingularity.from_rays([[0, 0, 1], [1, 0, 1], [0, 1, 1], [1, 1, 2]])


def test_cyclic_quotient_requires_coprime():
    with pytest.raises(ModelError):
        cyclic_quotient_cone(4, 2)


def test_fano_index_check():
    assert not fano_index_check(4, 3)
    assert fano_index_check(3, 3)
    assert fano_index_check(Fraction(1, 2), 3)


def test_cone_invariants_a1_surface():
    inv = cone_invariants(PolarizedConeData(n=2, r=Fraction(2), degH=Fraction(1, 2)))
    assert inv.beta == 1
    assert inv.nvol_lower_bound == 2
    assert inv.nvol_canonical == 2


def test_cone_invariants_affine_3space():
    inv = cone_invariants(PolarizedConeData(n=3, r=Fraction(3), degH=Fraction(1)))
    assert inv.nvol_canonical == 27


def test_invalid_index_rejected():
    with pytest.raises(InvalidIndex):
        PolarizedConeData(n=3, r=Fraction(4), degH=Fraction(1))


def test_toric_log_fano_interval():
    facets = [hs([1], 1), hs([-1], 1)]
    rep = toric_log_fano(facets, 1)
    assert rep.p_star == RVector([0])
    assert rep.gammas == (1, 1)
    assert rep.beta_n == Fraction(1, 2)
    assert rep.frak_p_star == RVector([0, Fraction(2, 3)])


def test_toric_log_fano_simplex():
    facets = [hs([1, 0]), hs([0, 1]), hs([-1, -1], 1)]
    rep = toric_log_fano(facets, 1)
    assert rep.p_star == RVector([Fraction(1, 3), Fraction(1, 3)])
    assert rep.gammas == (Fraction(1, 3),) * 3
    assert rep.beta_n == Fraction(1, 3)
    # r = 3 puts every angle at the boundary value 1, still valid
    assert toric_log_fano(facets, 3).gammas == (1, 1, 1)
    with pytest.raises(AngleOutOfRange):
        toric_log_fano(facets, 4)


def test_toric_log_fano_centroid_law():
    facets = [hs([1, 0], 2), hs([-1, 0], 1), hs([0, 1], 1), hs([0, -1], 3)]
    rep = toric_log_fano(facets, Fraction(1, 4))
    n = 3
    expected = RVector(list(rep.p_star) + [1]).scale(Fraction(n, n + 1))
    assert rep.frak_p_star == expected
    assert rep.beta_n == Fraction(1, 4) / n
