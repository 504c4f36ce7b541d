import itertools
import random

import pytest

from conftest import FIELDS, random_cochain
from formality import fixtures as fx
from formality.braces import (MultiplicationError, brace, bracket, circle, cup, differential,
                              gerstenhaber_square, require_multiplication)
from formality.complexes import hochschild_complex
from formality.core import Field
from formality.graded import GradedSpace
from formality.operad import (EndomorphismOperad, LinearEndomorphismOperad, OperadError,
                              OperadIdeal)
from oracles import brace_relation_rhs


def _random_triple(rng, E):
    out = []
    for _ in range(3):
        p = rng.randint(0, 3)
        q = rng.randint(-2, 2)
        out.append(random_cochain(rng, E, p, q, density=0.6))
    return out


@pytest.mark.parametrize("field", FIELDS, ids=str)
def test_brace_relation_random(field):
    rng = random.Random(7 + field.p)
    A, _ = fx.dual_numbers(field)
    E = EndomorphismOperad(A)
    for _ in range(70):
        x, y, z = _random_triple(rng, E)
        assert brace(brace(x, [y]), [z]) == brace_relation_rhs(x, [y], [z])
        assert brace(brace(x, [y, z]), [y]) == brace_relation_rhs(x, [y, z], [y])
        assert brace(brace(x, [y]), [z, y]) == brace_relation_rhs(x, [y], [z, y])


@pytest.mark.parametrize("field", FIELDS, ids=str)
def test_bracket_antisymmetry_and_jacobi(field):
    rng = random.Random(11 + field.p)
    A, _ = fx.path_a2(field)
    E = EndomorphismOperad(A)
    for _ in range(200):
        x, y, z = _random_triple(rng, E)
        sxy = (x.shifted_degree * y.shifted_degree) % 2
        yx = bracket(y, x)
        assert bracket(x, y) == (yx if sxy else -yx)
        rhs = bracket(bracket(x, y), z)
        t = bracket(y, bracket(x, z))
        rhs = rhs - t if sxy else rhs + t
        assert bracket(x, bracket(y, z)) == rhs


def test_brace_edge_cases():
    A, prod = fx.dual_numbers()
    E = EndomorphismOperad(A)
    m2 = E.multiplication(prod)
    assert brace(m2, []) == m2
    c0 = E.from_map(0, 1, [("e1", 1)])
    assert brace(c0, [m2]).is_zero()
    assert brace(m2, [m2]).is_zero()


def test_bracket_examples():
    A, prod = fx.dual_numbers()
    E = EndomorphismOperad(A)
    m2 = E.multiplication(prod)
    assert bracket(m2, m2).is_zero()
    assert bracket(m2, E.identity()) == m2
    assert differential(m2, E.identity()) == m2
    assert differential(m2, m2).is_zero()
    rng = random.Random(3)
    for _ in range(20):
        # p + q odd: [x, x] vanishes
        x = random_cochain(rng, E, 2, 1)
        assert bracket(x, x).is_zero()


def test_require_multiplication_rejects():
    A = GradedSpace((("a", 0), ("b", 0)))
    E = EndomorphismOperad(A)
    # (aa)a = ba = 0 but a(aa) = ab = a
    bad = E.from_map(2, 0, [("a", "a", "b", 1), ("a", "b", "a", 1)])
    with pytest.raises(MultiplicationError):
        require_multiplication(bad)
    with pytest.raises(MultiplicationError):
        require_multiplication(E.identity())


def test_cup_examples():
    A, prod = fx.dual_numbers()
    E = EndomorphismOperad(A)
    m2 = E.multiplication(prod)
    ident = E.identity()
    assert cup(m2, E.zero(1, 0), ident).is_zero()
    c = cup(m2, ident, ident)
    assert c.bidegree == (2, 0)
    assert c == m2 or c == -m2


def test_cup_associative_and_commutative_in_cohomology():
    A, prod = fx.dual_numbers()
    HC = hochschild_complex(A, prod)
    m2 = HC.m2
    classes = []
    for p, q in [(1, 0), (1, -1), (2, -1), (2, -2)]:
        classes += [(c.representative, p + q) for c in HC.cohomology_basis(p, q)]
    assert classes
    for (x, dx), (y, dy) in itertools.product(classes, repeat=2):
        xy, yx = cup(m2, x, y), cup(m2, y, x)
        diff = xy - yx if (dx * dy) % 2 == 0 else xy + yx
        assert HC.is_coboundary(diff) is not None
        for z, _ in classes:
            assoc = cup(m2, cup(m2, x, y), z) - cup(m2, x, cup(m2, y, z))
            assert HC.is_coboundary(assoc) is not None


def test_gerstenhaber_relation_on_cocycles():
    A, prod = fx.dual_numbers()
    HC = hochschild_complex(A, prod)
    m2 = HC.m2
    cl = [c.representative for p, q in [(1, 0), (1, -1), (2, -1)] for c in HC.cohomology_basis(p, q)]
    for x, y, z in itertools.product(cl, repeat=3):
        s = ((x.total_degree - 1) * y.total_degree) % 2
        lhs = bracket(x, cup(m2, y, z)) - cup(m2, bracket(x, y), z)
        t = cup(m2, y, bracket(x, z))
        lhs = lhs + t if s else lhs - t
        assert HC.is_coboundary(lhs) is not None


def test_square():
    A, prod = fx.dual_numbers()
    E = EndomorphismOperad(A)
    assert gerstenhaber_square(E.zero(3, -1)).is_zero()
    rng = random.Random(5)
    for _ in range(20):
        x = random_cochain(rng, E, 3, -1)
        assert gerstenhaber_square(x) == brace(x, [x])
        assert bracket(x, x) == brace(x, [x]).scale(2)
    with pytest.raises(OperadError):
        gerstenhaber_square(random_cochain(rng, E, 2, -1, density=1))


def test_square_char2_relation():
    F2 = Field(2)
    rng = random.Random(9)
    A, _ = fx.loops2(0, 1, F2)
    E = EndomorphismOperad(A)
    for _ in range(50):
        p, q = rng.choice([(2, -1), (3, -1), (2, 0), (1, 1)])
        x, y = random_cochain(rng, E, p, q), random_cochain(rng, E, p, q)
        assert gerstenhaber_square(x + y) == gerstenhaber_square(x) + gerstenhaber_square(y) + bracket(x, y)


def _ideal_cochain(rng, L, p, q):
    return random_cochain(rng, L, p, q, density=0.7, part="ideal")


def test_circle_product_in_ideal():
    A, prod = fx.dual_numbers()
    L = LinearEndomorphismOperad(A, A)
    ideal = OperadIdeal(L, L.is_ideal)
    rng = random.Random(13)
    for _ in range(40):
        x, y, z = (_ideal_cochain(rng, L, rng.randint(1, 3), rng.randint(-2, 1)) for _ in range(3))
        assert circle(circle(x, y, ideal), z, ideal) == circle(x, circle(y, z, ideal), ideal)
        s = (x.shifted_degree * y.shifted_degree) % 2
        yx = circle(y, x, ideal)
        assert bracket(x, y) == (circle(x, y, ideal) + yx if s else circle(x, y, ideal) - yx)
        assert circle(L.id_M(), x, ideal) == x
    with pytest.raises(OperadError):
        circle(L.id_A(), L.id_M(), ideal)


def test_ideal_cup_is_square_zero():
    A, prod = fx.dual_numbers()
    M, left, right = fx.diagonal(A, prod)
    L = LinearEndomorphismOperad(A, M)
    m = L.multiplication(prod, left, right)
    rng = random.Random(17)
    for _ in range(30):
        x = _ideal_cochain(rng, L, 2, rng.randint(-1, 1))
        y = _ideal_cochain(rng, L, 2, rng.randint(-1, 1))
        assert cup(m, x, y).is_zero()
