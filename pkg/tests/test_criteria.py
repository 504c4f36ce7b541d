import random

import pytest

from formality import fixtures as fx
from formality.complexes import assemble_bimodule_complexes, hochschild_complex
from formality.criteria import (INCONCLUSIVE, SATISFIED, VIOLATED, _last_hit, check_existence,
                                check_kadeishvili_algebra, check_kadeishvili_bimodule,
                                check_kadeishvili_simultaneous, check_massey_bimodule, check_theoremB,
                                check_theoremB_pair, tail_certificate)
from formality.graded import GradedSpace, hom_component_dim


def _space(degs):
    return GradedSpace(tuple((f"b{i}", d) for i, d in enumerate(degs)))


def _component(shape, A, M, n, a):
    if shape == "HC":
        return hom_component_dim([A] * (n + a), A, -n)
    if shape == "BC":
        c = n + a
        return sum(hom_component_dim([A] * i + [M] + [A] * (c - i), M, -n) for i in range(c + 1))
    c = n + a
    total = hom_component_dim([A] * c, A, -n)
    total += sum(hom_component_dim([A] * i + [M] + [A] * (c - 1 - i), M, -n) for i in range(c))
    return total


def test_tail_certificate_against_brute_force():
    rng = random.Random(12)
    for _ in range(300):
        A = _space([rng.randint(-3, 3) for _ in range(rng.randint(1, 3))])
        M = _space([rng.randint(-3, 3) for _ in range(rng.randint(1, 2))])
        shape = rng.choice(["HC", "BC", "HCE"])
        a = rng.choice([1, 2, 3])
        tail = tail_certificate(shape, (A, M), a)
        horizon = 14
        dims = [_component(shape, A, M, n, a) for n in range(1, horizon + 1)]
        if tail is None:
            assert any(dims[6:]), (A.basis, M.basis, shape, a)
        else:
            assert tail < horizon
            assert not any(dims[tail:])
            if tail:
                assert dims[tail - 1]


def test_last_hit_cases():
    assert _last_hit([], [0], 2) == 0
    assert _last_hit([0], [0], 1) is None
    assert _last_hit([1], [3], 0) == 3
    assert _last_hit([2, -2], [1], 0) == 0
    assert _last_hit([1, -1], [5], 0) is None


def test_verdicts():
    A, prod = fx.ground()
    hc = hochschild_complex(A, prod)
    v = check_kadeishvili_algebra(hc, 4)
    assert v.verdict == SATISFIED and v.tail is not None
    assert check_kadeishvili_algebra(hc, 0).verdict == INCONCLUSIVE
    A, prod = fx.dual_numbers()
    v = check_kadeishvili_algebra(hochschild_complex(A, prod), 3)
    assert v.tail is None and v.tail_text == "Unbounded"
    assert v.verdict in (INCONCLUSIVE, VIOLATED)
    A, prod = fx.loops2(0, 1)
    v = check_kadeishvili_algebra(hochschild_complex(A, prod), 3)
    assert v.verdict == VIOLATED and v.first_failure[0] == 1


def test_bimodule_violation_reports_first_n():
    A, prod = fx.dual_numbers()
    M, left, right = fx.diagonal(A, prod)
    bc = assemble_bimodule_complexes(A, prod, M, left, right)
    v = check_kadeishvili_bimodule(bc, 3)
    assert v.verdict == VIOLATED and v.first_failure == (1, 1)


def test_monotone_in_range():
    A, prod = fx.negative_dual()
    M, left, right = fx.diagonal(A, prod)
    bc = assemble_bimodule_complexes(A, prod, M, left, right)
    for check in (check_kadeishvili_algebra, check_kadeishvili_bimodule, check_kadeishvili_simultaneous):
        target = bc.HC if check is check_kadeishvili_algebra else bc
        seen_satisfied = False
        for N in range(0, 6):
            v = check(target, N).verdict
            if seen_satisfied:
                assert v == SATISFIED
            seen_satisfied |= v == SATISFIED
        assert seen_satisfied


@pytest.mark.parametrize("make", [fx.negative_dual, fx.ground, fx.dual_numbers, fx.twisted_dual_numbers])
def test_les_sandwich(make):
    parts = make()
    if len(parts) == 2:
        A, prod = parts
        M, left, right = fx.diagonal(A, prod)
    else:
        A, prod, M, left, right = parts
    bc = assemble_bimodule_complexes(A, prod, M, left, right)
    alg = check_kadeishvili_algebra(bc.HC, 4)
    bim = check_kadeishvili_bimodule(bc, 4)
    sim = check_kadeishvili_simultaneous(bc, 4)
    if alg.verdict == SATISFIED and bim.verdict == SATISFIED:
        assert sim.verdict == SATISFIED
    # exactness at the HHE node bounds each dim by its neighbours
    for n in sim.dims:
        assert sim.dims[n] <= bc.HC.cohomology_dim(n + 2, -n) + bc.BC.cohomology_dim(n + 1, -n)


def test_zero_class_reduces_to_plain_checks():
    A, prod = fx.negative_dual()
    M, left, right = fx.diagonal(A, prod)
    bc = assemble_bimodule_complexes(A, prod, M, left, right)
    hc = bc.HC
    v = check_theoremB(hc, hc.operad.zero(3, -1), 4)
    assert v.start == 2 and v.verdict == SATISFIED
    plain = check_kadeishvili_algebra(hc, 4)
    for n, dim in v.dims.items():
        assert dim == plain.dims.get(n, 0)
    assert check_theoremB_pair(bc, bc.operad.zero(3, -1), 4).verdict == SATISFIED
    assert check_massey_bimodule(bc, bc.operad.zero(3, -1), 4).verdict == SATISFIED
    assert check_existence(hc, hc.operad.zero(3, -1), 4).verdict == SATISFIED
    assert check_existence(bc, bc.operad.zero(3, -1), 4, kind="pair").verdict == SATISFIED
    with pytest.raises(ValueError):
        check_existence(bc, bc.operad.zero(3, -1), 4, kind="bimodule")


def test_theoremB_violated_fixture():
    A, prod = fx.loops2(0, 1)
    hc = hochschild_complex(A, prod)
    c = hc.cohomology_basis(3, -1)[1]
    v = check_theoremB(hc, c, 3)
    assert v.verdict in (VIOLATED, INCONCLUSIVE)
    if v.verdict == VIOLATED:
        assert v.first_failure[0] >= 2
