"""Second-page obstruction classes and the greedy extension loop.

A structure truncated at K (sparsity d, K - 2 divisible by d) is extended
to K + d.  The obstruction cocycle lives in arity K + 1 and degree 2 - K.
Two representatives are carried: the reduced one, summing m_p{m_q} over
p, q > d + 1, and the full one, which adds [m2, m_K].  They differ by a
coboundary, so either decides vanishing; the correction solves
``d(c) = -full`` so that ``m_K + c`` satisfies the next equation outright.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional

from .ainfty import (AkAlgebra, AkBimodule, StructureError, combined_pair_residuals, effective_d,
                     verify_ak_algebra, verify_ak_bimodule)
from .braces import brace, bracket
from .complexes import ComplexWindow, NotACocycle, WindowError, connecting_cochain
from .graded import DegreeWindow
from .operad import Cochain


class ExtensionError(RuntimeError):
    pass


@dataclass
class ObstructionReport:
    context: str
    truncation: int
    cocycle: Cochain
    full: Cochain
    class_vanishes: bool
    primitive: Optional[Cochain]
    sparse_d: int
    complex: ComplexWindow = field(repr=False)

    @property
    def k(self) -> int:
        return self.truncation - 2

    @property
    def bidegree(self):
        return self.complex.bidegree_of(self.full)

    def summary(self) -> dict:
        p, q = self.bidegree
        return {"context": self.context, "truncation": self.truncation, "bidegree": [p, q],
                "cocycle_terms": len(self.cocycle.table), "class_vanishes": self.class_vanishes,
                "primitive_terms": None if self.primitive is None else len(self.primitive.table),
                "sparse_d": self.sparse_d}


def _check_meaningful(K: int, d: int):
    if (K - 2) % d:
        raise StructureError(f"truncation {K} is not of the form {d}i+2")


def _check_window(window: Optional[DegreeWindow], cx: ComplexWindow, K: int):
    if window is None:
        return
    q = 2 - K
    p = K + 1 - cx.offset
    for pp in (p - 1, p, p + 1):
        if not window.contains(pp, q):
            raise WindowError(f"window {window} does not hold bidegree ({pp}, {q})")


def _decide(context, K, d, cx, reduced, full, window):
    _check_window(window, cx, K)
    if not cx.is_cocycle(reduced):
        raise NotACocycle("reduced obstruction representative is not closed")
    if not cx.is_cocycle(full):
        raise NotACocycle("full obstruction representative is not closed")
    prim = cx.is_coboundary(-full)
    return ObstructionReport(context, K, reduced, full, prim is not None, prim, d, cx)


def algebra_obstruction(s: AkAlgebra, sparse_d: Optional[int] = None,
                        window: Optional[DegreeWindow] = None) -> ObstructionReport:
    d = effective_d(sparse_d, s)
    K = s.k
    _check_meaningful(K, d)
    rep = verify_ak_algebra(s, d)
    if not rep.valid:
        raise StructureError(f"structure fails equation {rep.first_failure}")
    E = s.operad
    reduced = E.zero(K + 1, 2 - K)
    for p in range(d + 2, K + 1):
        q = K + 2 - p
        if q > d + 1:
            reduced = reduced + brace(s.op(p), [s.op(q)])
    full = reduced + bracket(s.m2, s.op(K))
    return _decide("AlgebraExt", K, d, s.hochschild(), reduced, full, window)


def pair_obstruction(a: AkAlgebra, m: AkBimodule, sparse_d: Optional[int] = None,
                     window: Optional[DegreeWindow] = None) -> ObstructionReport:
    d = effective_d(sparse_d, m)
    if a.k != m.k:
        raise StructureError("algebra and bimodule must share the truncation")
    K = m.k
    _check_meaningful(K, d)
    rep = combined_pair_residuals(a, m)
    if not rep.valid:
        raise StructureError(f"pair fails equation {rep.combined.first_failure}")
    L = m.operad
    reduced = L.zero(K + 1, 2 - K)
    for p in range(d + 2, K + 1):
        q = K + 2 - p
        if q > d + 1:
            reduced = reduced + brace(m.combined(p), [m.combined(q)])
    full = reduced + bracket(m.m2_full, m.combined(K))
    return _decide("PairExt", K, d, m.complexes.HCE, reduced, full, window)


def bimodule_obstruction(a: AkAlgebra, m: AkBimodule, sparse_d: Optional[int] = None,
                         window: Optional[DegreeWindow] = None) -> ObstructionReport:
    """Obstruction for extending m over the fixed algebra structure a."""
    d = effective_d(sparse_d, m)
    K = m.k
    _check_meaningful(K, d)
    if m.algebra is not a:
        raise StructureError("bimodule is not over this algebra structure")
    if a.k < K + 1:
        raise StructureError(f"algebra data must reach arity {K + 1}")
    arep = verify_ak_algebra(a, d)
    if not arep.valid:
        raise StructureError(f"algebra fails equation {arep.first_failure}")
    rep = verify_ak_bimodule(m, d)
    if not rep.valid:
        raise StructureError(f"bimodule fails equation {rep.first_failure}")
    L = m.operad
    bc = m.complexes
    # id_M·m^A_K − m^A_K·id_M
    reduced = connecting_cochain(bc, a.op(K))
    for p in range(d + 2, K + 1):
        q = K + 2 - p
        if q > d + 1:
            reduced = reduced + bracket(m.op(p), m.algebra_op(q)) + brace(m.op(p), [m.op(q)])
    reduced = Cochain(L, K + 1, 2 - K, reduced.table, check=False)
    full = reduced + bracket(m.m2_full, m.op(K))
    return _decide("BimoduleOverFixedAlgebraExt", K, d, bc.BC, reduced, full, window)


def obstruction_for(mode: str, structure, sparse_d=None, window=None) -> ObstructionReport:
    if mode == "algebra":
        return algebra_obstruction(structure, sparse_d, window)
    a, m = structure
    if mode == "pair":
        return pair_obstruction(a, m, sparse_d, window)
    if mode in ("bimodule", "bimodule-fixed-algebra"):
        return bimodule_obstruction(a, m, sparse_d, window)
    raise ValueError(f"unknown mode {mode!r}")


def extend_step(report: ObstructionReport, structure):
    """Correct m_K by the primitive and open the next arity with a zero operation."""
    if not report.class_vanishes or report.primitive is None:
        raise ExtensionError("the obstruction class does not vanish")
    K, d = report.truncation, report.sparse_d
    c = report.primitive
    if report.context == "AlgebraExt":
        s: AkAlgebra = structure
        ops = dict(s.ops)
        ops[K] = s.op(K) + c
        new = s.with_ops(K + d, ops)
        check = verify_ak_algebra(new, d)
    elif report.context == "PairExt":
        a, m = structure
        L = m.operad
        aops = dict(a.ops)
        aops[K] = a.op(K) + L.project(L.pure_part(c), a.operad)
        a2 = a.with_ops(K + d, aops)
        mops = dict(m.ops)
        mops[K] = m.op(K) + L.ideal_part(c)
        m2 = m.with_ops(K + d, mops, algebra=a2)
        new = (a2, m2)
        check = combined_pair_residuals(a2, m2).combined
    else:
        a, m = structure
        mops = dict(m.ops)
        mops[K] = m.op(K) + c
        m2 = m.with_ops(K + d, mops)
        new = (a, m2)
        check = verify_ak_bimodule(m2, d)
    if not check.valid:
        raise ExtensionError(f"extended structure fails equation {check.first_failure}; this is a defect")
    return new


@dataclass
class ExtensionTrace:
    success: bool
    steps: List[ObstructionReport]
    structure: object
    blocking: Optional[ObstructionReport] = None

    def summary(self) -> dict:
        return {"success": self.success,
                "steps": [r.summary() for r in self.steps],
                "blocking": None if self.blocking is None else self.blocking.summary()}


def _truncation(structure):
    return structure.k if isinstance(structure, AkAlgebra) else structure[1].k


def extend_loop(structure, target_arity: int, mode: str = "algebra",
                sparse_d: Optional[int] = None) -> ExtensionTrace:
    """Extend greedily until the truncation reaches ``target_arity``.

    A non-vanishing report only says the second-page obstruction is
    nonzero for the current choices; it does not rule out extensions
    reached by changing lower operations.
    """
    probe = structure if mode == "algebra" else structure[1]
    d = effective_d(sparse_d, probe)
    steps = []
    cur = structure
    K = _truncation(cur)
    if (K - 2) % d:
        # pad up to the next meaningful truncation with zero operations
        K2 = K + (d - (K - 2) % d)
        cur = _pad(cur, K2, mode)
    while _truncation(cur) < target_arity:
        rep = obstruction_for(mode, cur, d)
        steps.append(rep)
        if not rep.class_vanishes:
            return ExtensionTrace(False, steps, cur, rep)
        cur = extend_step(rep, cur)
        if mode == "bimodule-fixed-algebra" or mode == "bimodule":
            a, m = cur
            if a.k < m.k + 1 and _truncation(cur) < target_arity:
                raise StructureError(f"algebra data must reach arity {m.k + 1}")
    return ExtensionTrace(True, steps, cur)


def _pad(structure, K: int, mode: str):
    if mode == "algebra":
        return structure.with_ops(K, structure.ops)
    a, m = structure
    if mode == "pair":
        a2 = a.with_ops(K, a.ops)
        return a2, m.with_ops(K, m.ops, algebra=a2)
    return a, m.with_ops(K, m.ops)
