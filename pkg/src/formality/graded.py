"""Finite-support graded vector spaces and degree bookkeeping."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import gcd
from typing import Iterable, List, Optional, Sequence, Tuple

from .core import Field, Q


@dataclass(frozen=True)
class GradedSpace:
    basis: Tuple[Tuple[str, int], ...]
    field: Field = Q

    def __post_init__(self):
        basis = tuple((str(lab), int(deg)) for lab, deg in self.basis)
        labels = [lab for lab, _ in basis]
        if len(set(labels)) != len(labels):
            dup = [lab for lab, c in Counter(labels).items() if c > 1]
            raise ValueError(f"duplicate basis labels: {dup}")
        object.__setattr__(self, "basis", basis)

    @classmethod
    def of(cls, pairs: Iterable, field: Field = Q) -> "GradedSpace":
        return cls(tuple(pairs), field)

    def __len__(self):
        return len(self.basis)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def labels(self) -> List[str]:
        return [lab for lab, _ in self.basis]

    @property
    def degrees(self) -> List[int]:
        return [deg for _, deg in self.basis]

    def index(self, label: str) -> int:
        for i, (lab, _) in enumerate(self.basis):
            if lab == label:
                return i
        raise KeyError(label)

    def degree_of(self, label: str) -> int:
        return self.basis[self.index(label)][1]

    def support(self) -> List[int]:
        return sorted(set(self.degrees))

    def dim_in(self, d: int) -> int:
        return sum(1 for deg in self.degrees if deg == d)

    def dims(self) -> dict:
        return dict(sorted(Counter(self.degrees).items()))

    def is_zero(self) -> bool:
        return not self.basis


def shift(v: GradedSpace, n: int) -> GradedSpace:
    """Shift so that shift(v, 1) moves a degree-1 element to degree 0."""
    return GradedSpace(tuple((lab, deg - n) for lab, deg in v.basis), v.field)


def direct_sum(v: GradedSpace, w: GradedSpace) -> GradedSpace:
    return GradedSpace(v.basis + w.basis, v.field)


def koszul_sign(degrees_a: Sequence[int], degrees_b: Sequence[int], swaps: Optional[Sequence[Tuple[int, int]]] = None,
                field: Field = Q):
    """Koszul sign of reordering graded blocks.

    Without ``swaps`` this is the sign of moving the block ``degrees_a`` past
    the block ``degrees_b``.  Otherwise the blocks are the entries of
    ``degrees_a + degrees_b`` and each swap ``(i, i+1)`` exchanges the
    blocks currently at those positions.
    """
    if swaps is None:
        return field.sign(sum(degrees_a) * sum(degrees_b))
    blocks = list(degrees_a) + list(degrees_b)
    k = 0
    for i, j in swaps:
        if j != i + 1:
            raise ValueError("swaps must be adjacent")
        k += blocks[i] * blocks[j]
        blocks[i], blocks[j] = blocks[j], blocks[i]
    return field.sign(k)


def block_swap_sign(deg_x: int, deg_y: int, field: Field = Q):
    return field.sign(deg_x * deg_y)


def hom_component_dim(sources: Sequence[GradedSpace], target: GradedSpace, q: int) -> int:
    """dim of Hom(S_1 ⊗ ... ⊗ S_p, T) in degree q."""
    # convolve the degree distributions of the sources
    dist = Counter({0: 1})
    for s in sources:
        nxt = Counter()
        for d0, c0 in dist.items():
            for d1, c1 in s.dims().items():
                nxt[d0 + d1] += c0 * c1
        dist = nxt
    return sum(c * target.dim_in(d + q) for d, c in dist.items())


@dataclass(frozen=True)
class DegreeWindow:
    p_min: int
    p_max: int
    q_min: int
    q_max: int

    def __post_init__(self):
        if self.p_min < 0:
            raise ValueError("p_min must be non-negative")
        if self.p_min > self.p_max or self.q_min > self.q_max:
            raise ValueError("empty window")

    @classmethod
    def parse(cls, text: str) -> "DegreeWindow":
        try:
            ps, qs = text.split(",")
            p0, p1 = ps.split(":")
            q0, q1 = qs.split(":")
            return cls(int(p0), int(p1), int(q0), int(q1))
        except ValueError:
            raise ValueError(f"bad window {text!r}; expected p_min:p_max,q_min:q_max") from None

    def contains(self, p: int, q: int) -> bool:
        return self.p_min <= p <= self.p_max and self.q_min <= q <= self.q_max

    def bidegrees(self):
        for p in range(self.p_min, self.p_max + 1):
            for q in range(self.q_min, self.q_max + 1):
                yield p, q

    def __str__(self):
        return f"{self.p_min}:{self.p_max},{self.q_min}:{self.q_max}"


def support_gcd(degrees: Iterable[int]) -> int:
    g = 0
    for d in degrees:
        g = gcd(g, d)
    return g
