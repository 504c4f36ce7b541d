import random

import pytest

from conftest import FIELDS, random_cochain
from formality import fixtures as fx
from formality.complexes import (ModuleAxiomError, NotACocycle, WindowError, assemble_bimodule_complexes,
                                 connecting_cochain, connecting_delta, hochschild_complex,
                                 les_exactness_audit, snake_delta)
from formality.graded import DegreeWindow
from oracles import classical_hochschild_dims, ideal_shape, square_zero_extension


def _tables(A, prod):
    return dict(A.basis), prod


def test_dual_numbers_small_dims():
    A, prod = fx.dual_numbers()
    hc = hochschild_complex(A, prod, DegreeWindow(0, 3, -3, 1))
    assert hc.dim(2, 0) == 3
    assert hc.cohomology_dim(0, 0) == 1
    assert hc.cohomology_dim(1, 0) == 1
    assert hc.d(hc.operad.identity()) == hc.m2
    prim = hc.is_coboundary(hc.m2)
    assert prim is not None and hc.d(prim) == hc.m2


def test_zero_algebra_and_ground():
    A, prod = fx.zero_algebra()
    hc = hochschild_complex(A, prod, DegreeWindow(0, 3, -2, 2))
    assert all(hc.dim(p, q) == 0 for p, q in hc.window.bidegrees())
    A, prod = fx.ground()
    hc = hochschild_complex(A, prod, DegreeWindow(0, 4, -1, 1))
    assert [hc.cohomology_dim(p, 0) for p in range(0, 4)] == [1, 0, 0, 0]


def test_window_errors():
    A, prod = fx.dual_numbers()
    hc = hochschild_complex(A, prod, DegreeWindow(0, 3, -3, 1))
    with pytest.raises(WindowError):
        hc.cohomology_dim(3, 0)
    with pytest.raises(WindowError):
        hc.dim(5, 0)
    with pytest.raises(NotACocycle):
        hc.cls(hc.operad.from_map(1, 0, [("e0", "e0", 1)]))


@pytest.mark.parametrize("field", FIELDS, ids=str)
def test_d_squared_zero(field):
    w = DegreeWindow(0, 4, -4, 2)
    for A, prod in (fx.dual_numbers(field), fx.sparse_dual(field), fx.ground(field), fx.path_a2(field)):
        M, left, right = fx.diagonal(A, prod)
        bc = assemble_bimodule_complexes(A, prod, M, left, right, w)
        for cx in bc:
            assert cx.d_squared_defect() is None


def test_sparse_zeros():
    A, prod = fx.sparse_dual()
    hc = hochschild_complex(A, prod, DegreeWindow(0, 4, -7, 3))
    for p, q in hc.window.bidegrees():
        if q % 2:
            assert hc.dim(p, q) == 0


def test_oracle_hochschild():
    A, prod = fx.dual_numbers()
    degs, st = _tables(A, prod)
    hc = hochschild_complex(A, prod, DegreeWindow(0, 4, -4, 1))
    for p in range(0, 4):
        for q in range(-4, 2):
            assert hc.cohomology_dim(p, q) == classical_hochschild_dims(degs, st, p, q), (p, q)


def test_oracle_bimodule_asymmetric():
    A, prod, M, left, right = fx.twisted_dual_numbers()
    bc = assemble_bimodule_complexes(A, prod, M, left, right, DegreeWindow(0, 3, -3, 1))
    degs = dict(A.basis)
    sd, st = square_zero_extension(degs, prod, dict(M.basis), left, right)
    for p in range(0, 3):
        for q in range(-3, 2):
            assert bc.BC.cohomology_dim(p, q) == classical_hochschild_dims(sd, st, p + 1, q, ideal_shape)


def test_module_axioms_checked():
    A, prod = fx.dual_numbers()
    left = {("e1", "e0"): {"e1": 1}}
    with pytest.raises(ModuleAxiomError):
        assemble_bimodule_complexes(A, prod, A, left, dict(prod))


def test_square_zero_dims():
    A, prod, M, left, right = fx.twisted_dual_numbers()
    bc = assemble_bimodule_complexes(A, prod, M, left, right, DegreeWindow(0, 3, -3, 1))
    for p, q in bc.HC.window.bidegrees():
        if p >= 1:
            assert bc.HCE.dim(p, q) == bc.HC.dim(p, q) + bc.BC.dim(p - 1, q)


def test_les_exact_on_twisted():
    A, prod, M, left, right = fx.twisted_dual_numbers()
    bc = assemble_bimodule_complexes(A, prod, M, left, right, DegreeWindow(0, 4, -3, 1))
    report = les_exactness_audit(bc)
    assert report.nodes and report.exact


def test_delta_matches_snake_and_is_independent_of_representative():
    A, prod = fx.loops2(0, 1)
    A, left, right = fx.one_sided(A, prod, left_zero=("y",))
    bc = assemble_bimodule_complexes(A, prod, A, left, right)
    rng = random.Random(5)
    nonzero = 0
    for c in bc.HC.cohomology_basis(3, -1):
        d1 = connecting_delta(bc, c)
        assert d1 == snake_delta(bc, c)
        nonzero += not d1.is_zero()
        shift = bc.HC.d(random_cochain(rng, bc.HC.operad, 2, -1, 0.8))
        assert connecting_delta(bc, bc.HC.cls(c.representative + shift)) == d1
    assert nonzero


def test_delta_vanishes_on_diagonal_of_commutative():
    A, prod = fx.dual_numbers()
    M, left, right = fx.diagonal(A, prod)
    bc = assemble_bimodule_complexes(A, prod, M, left, right)
    for p, q in ((1, 0), (2, -1), (2, 0), (3, -2), (3, -1)):
        for c in bc.HC.cohomology_basis(p, q):
            assert connecting_delta(bc, c).is_zero()


def test_connecting_cochain_is_d_of_lift():
    A, prod, M, left, right = fx.twisted_dual_numbers()
    bc = assemble_bimodule_complexes(A, prod, M, left, right)
    L = bc.operad
    for c in bc.HC.cohomology_basis(2, 0):
        x = connecting_cochain(bc, c.representative)
        assert L.embed(bc.HC.m2) is not None
        assert bc.HCE.d(L.embed(c.representative)) == x
