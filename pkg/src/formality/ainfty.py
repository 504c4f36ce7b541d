"""Truncated minimal A∞-structures on graded algebras and bimodules."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Optional

from .braces import brace
from .complexes import BimoduleComplexes, CohomologyClass, ComplexWindow, assemble_bimodule_complexes
from .graded import GradedSpace, support_gcd
from .operad import Cochain, EndomorphismOperad, LinearEndomorphismOperad


class StructureError(ValueError):
    pass


def sparsity_of(obj) -> int:
    """Largest d with all degrees in dℤ; 0 when everything sits in degree 0."""
    if isinstance(obj, GradedSpace):
        return support_gcd(obj.degrees)
    if isinstance(obj, AkBimodule):
        return support_gcd(obj.algebra.A.degrees + obj.M.degrees)
    if isinstance(obj, AkAlgebra):
        return support_gcd(obj.A.degrees)
    raise TypeError(f"cannot take the sparsity of {type(obj).__name__}")


def effective_d(sparse_d: Optional[int], obj) -> int:
    """The sparsity to work with: explicit, else detected, with 1 as fallback."""
    if sparse_d:
        if sparse_d < 0:
            raise ValueError("sparsity must be positive")
        found = sparsity_of(obj)
        if found and found % sparse_d:
            raise StructureError(f"degrees are not all divisible by {sparse_d}")
        return sparse_d
    return sparsity_of(obj) or 1


def _check_op(op, n: int, x: Cochain, part: Optional[str] = None):
    if x.operad is not op:
        raise StructureError(f"m_{n} lives over a different operad")
    if x.bidegree != (n, 2 - n) and not x.is_zero():
        raise StructureError(f"m_{n} has bidegree {x.bidegree}, expected ({n}, {2 - n})")
    if part == "ideal" and not all(op.is_ideal(k) for k in x.table):
        raise StructureError(f"m_{n} has terms outside the bimodule part")


@dataclass
class ResidualReport:
    residuals: Dict[int, Cochain]
    forced_zero: Dict[int, bool] = field(default_factory=dict)

    @property
    def valid(self) -> bool:
        return all(r.is_zero() for r in self.residuals.values()) and all(self.forced_zero.values())

    @property
    def first_failure(self) -> Optional[int]:
        for n in sorted(self.residuals):
            if not self.residuals[n].is_zero():
                return n
        return None

    def summary(self) -> dict:
        return {"valid": self.valid,
                "first_failure": self.first_failure,
                "equations": {str(n): r.is_zero() for n, r in sorted(self.residuals.items())},
                "forced_zero": {str(n): ok for n, ok in sorted(self.forced_zero.items())}}


class AkAlgebra:
    """A minimal A_k-algebra (A, m2, ..., mk); absent m_n are zero."""

    def __init__(self, A: GradedSpace, products, k: int, ops: Optional[Dict[int, Cochain]] = None,
                 operad: Optional[EndomorphismOperad] = None):
        if k < 2:
            raise StructureError("k must be at least 2")
        self.A = A
        self.products = products
        self.k = k
        self.operad = operad or EndomorphismOperad(A)
        self.m2 = self.operad.multiplication(products)
        self.ops: Dict[int, Cochain] = {}
        for n, x in (ops or {}).items():
            if not 3 <= n <= k:
                raise StructureError(f"m_{n} outside 3..{k}")
            _check_op(self.operad, n, x)
            if not x.is_zero():
                self.ops[n] = x
        self._hc = None

    @property
    def field(self):
        return self.A.field

    def op(self, n: int) -> Cochain:
        if n == 2:
            return self.m2
        if n > self.k:
            raise StructureError(f"m_{n} beyond the truncation {self.k}")
        return self.ops.get(n, self.operad.zero(n, 2 - n))

    def with_ops(self, k: int, ops: Dict[int, Cochain]) -> "AkAlgebra":
        return AkAlgebra(self.A, self.products, k, ops, self.operad)

    def truncate(self, k: int) -> "AkAlgebra":
        return self.with_ops(k, {n: x for n, x in self.ops.items() if n <= k})

    def hochschild(self) -> ComplexWindow:
        if self._hc is None:
            self._hc = ComplexWindow("HochschildCx", self.operad, self.m2)
        return self._hc


def _equation(op_of, n: int, zero: Cochain) -> Cochain:
    total = zero
    for p in range(2, n + 1):
        q = n + 2 - p
        if q < 2:
            continue
        total = total + brace(op_of(p), [op_of(q)])
    return total


def verify_ak_algebra(s: AkAlgebra, sparse_d: Optional[int] = None) -> ResidualReport:
    E = s.operad
    residuals = {}
    for n in range(2, s.k):
        residuals[n] = _equation(s.op, n, E.zero(n + 1, 2 - n) if n > 2 else E.zero(3, 0))
    forced = {}
    d = effective_d(sparse_d, s)
    if d > 1:
        for n in range(3, s.k + 1):
            if (n - 2) % d:
                forced[n] = s.op(n).is_zero()
    return ResidualReport(residuals, forced)


class AkBimodule:
    """A minimal A_k-bimodule over an algebra structure.

    ``ops[n]`` are cochains of E(A, M) supported on the bimodule part;
    m^M_2 comes from the action tables.
    """

    def __init__(self, algebra: AkAlgebra, M: GradedSpace, left, right, k: int,
                 ops: Optional[Dict[int, Cochain]] = None, operad: Optional[LinearEndomorphismOperad] = None,
                 complexes: Optional[BimoduleComplexes] = None):
        if k < 2:
            raise StructureError("k must be at least 2")
        self.algebra = algebra
        self.M = M
        self.left = left
        self.right = right
        self.k = k
        if complexes is None:
            complexes = assemble_bimodule_complexes(algebra.A, algebra.products, M, left, right)
        self.complexes = complexes
        self.operad = operad or complexes.operad
        L = self.operad
        self.m2_full = complexes.HCE.m2
        self.m2 = L.ideal_part(self.m2_full)
        self.ops: Dict[int, Cochain] = {}
        for n, x in (ops or {}).items():
            if not 3 <= n <= k:
                raise StructureError(f"m^M_{n} outside 3..{k}")
            _check_op(L, n, x, "ideal")
            if not x.is_zero():
                self.ops[n] = x

    @property
    def field(self):
        return self.M.field

    def op(self, n: int) -> Cochain:
        if n == 2:
            return self.m2
        if n > self.k:
            raise StructureError(f"m^M_{n} beyond the truncation {self.k}")
        return self.ops.get(n, self.operad.zero(n, 2 - n))

    def algebra_op(self, n: int) -> Cochain:
        """m^A_n transported into E(A, M); zero beyond the algebra's truncation."""
        if n > self.algebra.k:
            return self.operad.zero(n, 2 - n)
        return self.operad.embed(self.algebra.op(n))

    def combined(self, n: int) -> Cochain:
        if n == 2:
            return self.m2_full
        return self.algebra_op(n) + self.op(n)

    def with_ops(self, k: int, ops: Dict[int, Cochain], algebra: Optional[AkAlgebra] = None) -> "AkBimodule":
        return AkBimodule(algebra or self.algebra, self.M, self.left, self.right, k, ops,
                          self.operad, self.complexes)

    def truncate(self, k: int) -> "AkBimodule":
        return self.with_ops(k, {n: x for n, x in self.ops.items() if n <= k})


def verify_ak_bimodule(s: AkBimodule, sparse_d: Optional[int] = None) -> ResidualReport:
    L = s.operad
    residuals = {}
    for n in range(2, s.k):
        total = L.zero(n + 1, 2 - n) if n > 2 else L.zero(3, 0)
        for p in range(2, n + 1):
            q = n + 2 - p
            if q < 2:
                continue
            total = total + brace(s.op(p), [s.combined(q)])
        residuals[n] = L.ideal_part(total)
    forced = {}
    d = effective_d(sparse_d, s)
    if d > 1:
        for n in range(3, s.k + 1):
            if (n - 2) % d:
                forced[n] = s.op(n).is_zero()
    return ResidualReport(residuals, forced)


@dataclass
class PairResiduals:
    combined: ResidualReport
    algebra: ResidualReport
    bimodule: ResidualReport
    operad: LinearEndomorphismOperad

    @property
    def decomposes(self) -> bool:
        """Pure part = algebra residual and bimodule part = bimodule residual."""
        L = self.operad
        for n, r in self.combined.residuals.items():
            if L.pure_part(r) != L.embed(self.algebra.residuals[n]):
                return False
            if L.ideal_part(r) != self.bimodule.residuals[n]:
                return False
        return True

    @property
    def valid(self) -> bool:
        return self.combined.valid


def combined_pair_residuals(a: AkAlgebra, m: AkBimodule) -> PairResiduals:
    if m.algebra is not a:
        raise StructureError("bimodule is not over this algebra structure")
    L = m.operad
    k = min(a.k, m.k)
    residuals = {}
    for n in range(2, k):
        total = L.zero(n + 1, 2 - n) if n > 2 else L.zero(3, 0)
        for p in range(2, n + 1):
            q = n + 2 - p
            if q >= 2:
                total = total + brace(m.combined(p), [m.combined(q)])
        residuals[n] = total
    alg = verify_ak_algebra(a.truncate(k))
    bim = verify_ak_bimodule(m.truncate(k))
    return PairResiduals(ResidualReport(residuals), alg, bim, L)


# ---------------------------------------------------------------------------
# universal Massey products


def universal_massey(s: AkAlgebra, sparse_d: Optional[int] = None) -> CohomologyClass:
    d = effective_d(sparse_d, s)
    if s.k < d + 3:
        raise StructureError(f"need k >= {d + 3} for the universal Massey product")
    rep = verify_ak_algebra(s)
    if any(not rep.residuals[n].is_zero() for n in rep.residuals if n <= d + 2):
        raise StructureError("structure equations fail below the Massey product")
    return s.hochschild().cls(s.op(d + 2))


def bimodule_universal_massey(a: AkAlgebra, m: AkBimodule, sparse_d: Optional[int] = None) -> CohomologyClass:
    d = effective_d(sparse_d, m)
    if min(a.k, m.k) < d + 3:
        raise StructureError(f"need k >= {d + 3} for the bimodule universal Massey product")
    rep = combined_pair_residuals(a, m)
    if any(not rep.combined.residuals[n].is_zero() for n in rep.combined.residuals if n <= d + 2):
        raise StructureError("structure equations fail below the Massey product")
    return m.complexes.HCE.cls(m.combined(d + 2))
