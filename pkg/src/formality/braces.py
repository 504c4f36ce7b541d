"""Brace operations and the Gerstenhaber structure on operad cochains."""

from __future__ import annotations

from itertools import combinations
from typing import Optional, Sequence

from .operad import Cochain, OperadError, OperadIdeal


class MultiplicationError(OperadError):
    pass


def brace(x0: Cochain, args: Sequence[Cochain]) -> Cochain:
    """x0{x1, ..., xn}: insert the xi into increasing slots of x0."""
    args = list(args)
    if not args:
        return x0
    op = x0.operad
    for y in args:
        if y.operad is not op:
            raise OperadError("mismatched operad handles")
    n = len(args)
    arity = x0.arity + sum(y.arity for y in args) - n
    degree = x0.degree + sum(y.degree for y in args)
    total = op.zero(arity, degree)
    if n > x0.arity or x0.is_zero() or any(y.is_zero() for y in args):
        return total
    for slots in combinations(range(1, x0.arity + 1), n):
        r = x0
        shift = 0
        for i, y in zip(slots, args):
            r = op.compose(r, y, i + shift)
            shift += y.arity - 1
            if r.is_zero():
                break
        total = total + r
    return Cochain(op, arity, degree, total.table, check=False)


def bracket(x: Cochain, y: Cochain) -> Cochain:
    xy = brace(x, [y])
    yx = brace(y, [x])
    if (x.shifted_degree * y.shifted_degree) % 2:
        return xy + yx
    return xy - yx


gerstenhaber_bracket = bracket


_known_multiplications = {}


def require_multiplication(m2: Cochain):
    if _known_multiplications.get(id(m2)) is m2:
        return
    if m2.bidegree != (2, 0):
        raise MultiplicationError(f"multiplication must have bidegree (2, 0), got {m2.bidegree}")
    if not brace(m2, [m2]).is_zero():
        raise MultiplicationError("m2{m2} != 0")
    if len(_known_multiplications) > 256:
        _known_multiplications.clear()
    _known_multiplications[id(m2)] = m2


def cup(m2: Cochain, x: Cochain, y: Cochain) -> Cochain:
    """x·y = (-1)^{p+q-1} m2{x, y} for x of bidegree (p, q)."""
    require_multiplication(m2)
    r = brace(m2, [x, y])
    return -r if x.shifted_degree % 2 else r


def differential(m2: Cochain, x: Cochain) -> Cochain:
    require_multiplication(m2)
    return bracket(m2, x)


def gerstenhaber_square(x: Cochain, char: Optional[int] = None) -> Cochain:
    if char is None:
        char = x.field.characteristic()
    if char != 2 and x.total_degree % 2:
        raise OperadError("the square needs even total degree outside characteristic 2")
    # x{x} is ½[x, x] when the degree is even
    return brace(x, [x])


def circle(x: Cochain, y: Cochain, ideal: Optional[OperadIdeal] = None) -> Cochain:
    if ideal is not None and not (ideal.contains(x) and ideal.contains(y)):
        raise OperadError("circle product needs both arguments in the ideal")
    return brace(x, [y])
