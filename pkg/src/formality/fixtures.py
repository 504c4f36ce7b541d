"""Small graded algebras and bimodules used in tests and examples.

Products are given as ``{(a, b): {c: coeff}}`` on basis labels.
"""

from __future__ import annotations

from .core import Field, Q
from .graded import GradedSpace


def dual_numbers(field: Field = Q):
    """k[e]/e^2 with |e| = 1."""
    A = GradedSpace((("e0", 0), ("e1", 1)), field)
    prod = {("e0", "e0"): {"e0": 1}, ("e0", "e1"): {"e1": 1}, ("e1", "e0"): {"e1": 1}}
    return A, prod


def sparse_dual(field: Field = Q):
    """k[x]/x^2 with |x| = 2, a 2-sparse algebra."""
    A = GradedSpace((("u", 0), ("x", 2)), field)
    prod = {("u", "u"): {"u": 1}, ("u", "x"): {"x": 1}, ("x", "u"): {"x": 1}}
    return A, prod


def negative_dual(field: Field = Q):
    """k[x]/x^2 with |x| = -1."""
    A = GradedSpace((("1", 0), ("x", -1)), field)
    prod = {("1", "1"): {"1": 1}, ("1", "x"): {"x": 1}, ("x", "1"): {"x": 1}}
    return A, prod


def ground(field: Field = Q):
    A = GradedSpace((("1", 0),), field)
    return A, {("1", "1"): {"1": 1}}


def zero_algebra(field: Field = Q):
    return GradedSpace((), field), {}


def path_a2(field: Field = Q, arrow_degree: int = 1):
    """Path algebra of 1 -> 2: idempotents e1, e2 and an arrow a = e1 a e2."""
    A = GradedSpace((("e1", 0), ("e2", 0), ("a", arrow_degree)), field)
    prod = {("e1", "e1"): {"e1": 1}, ("e2", "e2"): {"e2": 1},
            ("e1", "a"): {"a": 1}, ("a", "e2"): {"a": 1}}
    return A, prod


def diagonal(A: GradedSpace, prod):
    """A as a bimodule over itself."""
    left = {(a, b): dict(c) for (a, b), c in prod.items()}
    right = {(a, b): dict(c) for (a, b), c in prod.items()}
    return A, left, right


def twisted_dual_numbers(field: Field = Q):
    """Λ over itself, with e1 acting by zero from the left."""
    A, prod = dual_numbers(field)
    left = {("e0", "e0"): {"e0": 1}, ("e0", "e1"): {"e1": 1}}
    right = {k: dict(v) for k, v in prod.items()}
    return A, prod, A, left, right


def loops2(d1: int = 0, d2: int = 1, field: Field = Q):
    """k<x, y>/(x, y)^2 with |x| = d1, |y| = d2.

    For (0, 1) the universal Massey products of several HH^{3,-1} classes
    have nonzero square; (0, 2) is a 2-sparse version.
    """
    A = GradedSpace((("1", 0), ("x", d1), ("y", d2)), field)
    prod = {("1", "1"): {"1": 1}, ("1", "x"): {"x": 1}, ("x", "1"): {"x": 1},
            ("1", "y"): {"y": 1}, ("y", "1"): {"y": 1}}
    return A, prod


def one_sided(A: GradedSpace, prod, left_zero=(), right_zero=()):
    """A over itself, with the listed basis elements acting by zero on one side.

    Only a bimodule when the listed elements span suitable ideals;
    ``assemble_bimodule_complexes`` checks the axioms.
    """
    left = {(a, b): dict(c) for (a, b), c in prod.items() if a not in left_zero}
    right = {(a, b): dict(c) for (a, b), c in prod.items() if b not in right_zero}
    return A, left, right
