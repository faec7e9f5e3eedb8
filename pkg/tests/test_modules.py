import random

import pytest

from conormal_lab.arith import ring_create
from conormal_lab.groebner import Matrix
from conormal_lab.groebner.syzygy import same_image
from conormal_lab.ideals import Ideal, fitting_ideal
from conormal_lab.modules import (
    INFINITE_DEPTH,
    FPModule,
    bidual_and_compare,
    depth_via_ab,
    determinant_ideal,
    ext_against_ring,
    hom_module,
    koszul_homology,
    m_full_test,
    present_conormal,
    projective_dimension,
)
from helpers import twisted_cubic, four_minors

R4 = ring_create(("u", "v", "t", "w"))
M4 = Ideal(R4, R4.gens)


def test_conormal_presentation_twisted_cubic():
    R, p = twisted_cubic()
    E = present_conormal(p)
    assert E.ngens == 3 and E.nu() == 3
    phi = Matrix.from_rows(R, [["-t", "w"], ["v", "-t"], ["-u", "v"]])
    assert same_image(E.presentation, phi, p.gens)


def test_conormal_of_complete_intersection_is_free():
    E = present_conormal(Ideal(R4, ["u", "v"]))
    assert E.nu() == 2
    assert E.minimal_presentation().presentation.ncols == 0
    assert bidual_and_compare(E).is_reflexive


def test_conormal_of_maximal_ideal_is_vector_space():
    R = ring_create(("u", "v"))
    E = present_conormal(Ideal(R, R.gens))
    assert E.nu() == 2 and E.length() == 2


def test_hom_of_free_modules():
    F2 = FPModule.free(R4, [0, 0])
    F3 = FPModule.free(R4, [0, 0, 0])
    assert hom_module(F2, F3).nu() == 6
    Z = FPModule.cokernel(Matrix.identity(R4, 1))
    assert hom_module(F2, Z).is_zero()


def test_double_hom_of_twisted_cubic_conormal():
    R, p = twisted_cubic()
    E = present_conormal(p)
    S = FPModule.free(R, [0], ideal=p)
    assert hom_module(hom_module(E, S), S).nu() == 4


def test_bidual_twisted_cubic_not_reflexive():
    _, p = twisted_cubic()
    res = bidual_and_compare(present_conormal(p))
    assert res.injective and not res.surjective
    assert not res.is_reflexive
    assert res.bidual.nu() == 4
    assert not res.defect.is_zero()
    assert res.canonical_map.is_well_defined()


def test_free_module_is_reflexive():
    res = bidual_and_compare(FPModule.free(R4, [0, 1]))
    assert res.is_reflexive and res.defect.is_zero()


def test_koszul_homology_twisted_cubic():
    _, p = twisted_cubic()
    H0 = koszul_homology(p, 0)
    assert H0.nu() == 1 and depth_via_ab(H0) == 2
    H1 = koszul_homology(p, 1)
    assert not H1.is_zero() and depth_via_ab(H1) == 2
    assert koszul_homology(p, 2).is_zero() and koszul_homology(p, 3).is_zero()
    # the homology is annihilated by the ideal
    for f in p.gens:
        for i in range(H1.ngens):
            assert H1.contains_zero({(i, e): c for e, c in f.terms.items()})


def test_koszul_top_homology_of_regular_sequence_vanishes():
    I = Ideal(R4, ["u", "v"])
    assert koszul_homology(I, 2).is_zero()
    with pytest.raises(Exception):
        koszul_homology(I, 3)


def test_depth_examples():
    _, p = twisted_cubic()
    assert depth_via_ab(FPModule.cyclic(p)) == 2
    assert depth_via_ab(FPModule.cyclic(M4)) == 0
    assert depth_via_ab(FPModule.free(R4, [0])) == 4
    zero = FPModule.cokernel(Matrix.identity(R4, 1))
    assert depth_via_ab(zero) == INFINITE_DEPTH


def test_ext_against_ring():
    E4 = ext_against_ring(FPModule.cyclic(M4), 4)
    assert E4.length() == 1
    assert ext_against_ring(FPModule.free(R4, [0]), 1).is_zero()
    assert ext_against_ring(FPModule.cyclic(M4), 2).is_zero()


def test_determinant_ideal_examples():
    R, p = twisted_cubic()
    A = Matrix.from_rows(R, [["0", "t", "w"], ["u", "v", "0"]])
    D = determinant_ideal(A) + p
    assert D == Ideal(R, ["v*t", "v*w", "v^2"]) + p
    assert determinant_ideal(Matrix.identity(R, 2)).is_unit()
    assert determinant_ideal(Matrix.from_rows(R, [["0", "0"], ["0", "0"]]), rank=2).is_zero()
    # invariant under column permutation
    B = Matrix.from_rows(R, [["w", "t", "0"], ["0", "v", "u"]])
    assert determinant_ideal(B) + p == D


def test_nu_agrees_with_fitting_characterization():
    # nu(M) is the least t such that I_{r-t}(presentation) is not inside m
    _, p = twisted_cubic()
    E = present_conormal(p)
    A = E.minimal_presentation().presentation
    r = A.nrows
    t = next(t for t in range(r + 1) if not M4.contains_ideal(fitting_ideal(A, r - t) + p))
    assert t == E.nu()


def test_m_full_free_and_zero():
    F = FPModule(R4, Matrix.zero(R4, 2, 0), embedding=Matrix.identity(R4, 2))
    assert m_full_test(F) is not None


def test_projective_dimension_twisted_cubic():
    _, p = twisted_cubic()
    assert projective_dimension(FPModule.cyclic(p)) == 2


@pytest.mark.slow
def test_four_minors_conormal_is_reflexive_and_m_full():
    R, A, p = four_minors()
    E = present_conormal(p)
    res = bidual_and_compare(E)
    assert res.is_reflexive
    D = E.dual()
    Ee = FPModule(E.ring, E.presentation, E.ideal, D.embedding.transpose())
    assert m_full_test(Ee) is not None
