"""Bigraded cochain complexes of operads with multiplication.

Every complex here is the operad complex of some operad (or its ideal)
with differential ``x -> [m2, x]``, truncated to a window.  Components and
differential matrices are built on first use and cached.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .braces import bracket, cup, require_multiplication
from .core import SparseMatrix, kernel_basis, pivot_columns, rank, solve_particular
from .graded import DegreeWindow, GradedSpace
from .operad import (Cochain, EndomorphismOperad, LinearEndomorphismOperad, Operad,
                     OperadError, OperadIdeal)


class WindowError(ValueError):
    """A bidegree whose cohomology the window cannot certify."""


class NotACocycle(ValueError):
    pass


KINDS = ("OperadCx", "IdealCx", "HochschildCx", "BimoduleCx", "BimoduleHochschildCx")


class ComplexWindow:
    """The complex (C^{p,q}, d) of an operad with multiplication.

    ``part`` picks which keys of the operad make up the components
    ("all", "pure", "ideal"), or an ``OperadIdeal``.  ``arity_offset`` is 1
    for ideal complexes, where C^{p,q} sits in arity p + 1.  With
    ``window=None`` every bidegree is available.
    """

    def __init__(self, kind: str, operad: Operad, m2: Cochain, window: Optional[DegreeWindow] = None,
                 part="all", arity_offset: int = 0, floor: int = 0, meta: Optional[dict] = None):
        require_multiplication(m2)
        if m2.operad is not operad:
            raise OperadError("multiplication over a different operad")
        self.kind = kind
        self.operad = operad
        self.m2 = m2
        self.window = window
        self.part = part
        self.offset = arity_offset
        self.floor = floor
        self.meta = meta or {}
        self.field = operad.field
        self._keys: Dict[Tuple[int, int], list] = {}
        self._index: Dict[Tuple[int, int], dict] = {}
        self._diff: Dict[Tuple[int, int], SparseMatrix] = {}
        self._coh: Dict[Tuple[int, int], "_Cohomology"] = {}

    # components ---------------------------------------------------------

    def _check_in_window(self, p, q):
        if self.window is not None and not self.window.contains(p, q):
            raise WindowError(f"bidegree ({p}, {q}) outside window {self.window}")

    def keys(self, p: int, q: int) -> list:
        if (p, q) not in self._keys:
            self._check_in_window(p, q)
            if p < self.floor:
                ks = []
            elif isinstance(self.part, OperadIdeal):
                ks = self.part.component_keys(p + self.offset, q)
            else:
                ks = self.operad.component_keys(p + self.offset, q, self.part)
            self._keys[(p, q)] = ks
            self._index[(p, q)] = {k: i for i, k in enumerate(ks)}
        return self._keys[(p, q)]

    def dim(self, p: int, q: int) -> int:
        return len(self.keys(p, q))

    def bidegree_of(self, x: Cochain) -> Tuple[int, int]:
        return x.arity - self.offset, x.degree

    def to_vector(self, x: Cochain, p: Optional[int] = None, q: Optional[int] = None) -> list:
        if p is None:
            p, q = self.bidegree_of(x)
        keys = self.keys(p, q)
        idx = self._index[(p, q)]
        F = self.field
        v = [F.zero] * len(keys)
        for k, c in x.table.items():
            if k not in idx:
                raise OperadError(f"term {self.operad.describe_key(k)} is not in component ({p}, {q})")
            v[idx[k]] = c
        return v

    def from_vector(self, p: int, q: int, v) -> Cochain:
        keys = self.keys(p, q)
        return Cochain(self.operad, p + self.offset, q,
                       {k: c for k, c in zip(keys, v) if c}, check=False)

    def basis(self, p: int, q: int) -> List[Cochain]:
        one = self.field.one
        return [Cochain(self.operad, p + self.offset, q, {k: one}, check=False) for k in self.keys(p, q)]

    # differential -------------------------------------------------------

    def d(self, x: Cochain) -> Cochain:
        return bracket(self.m2, x)

    def diff(self, p: int, q: int) -> SparseMatrix:
        """Matrix of d: C^{p,q} -> C^{p+1,q}."""
        if (p, q) not in self._diff:
            self._check_in_window(p, q)
            self._check_in_window(p + 1, q)
            rows = self.dim(p + 1, q)
            ent = {}
            if p >= self.floor:
                idx = self._index[(p + 1, q)]
                for j, e in enumerate(self.basis(p, q)):
                    for k, c in self.d(e).table.items():
                        if k not in idx:
                            raise OperadError("differential leaves the complex; is m2 in the right operad?")
                        ent[(idx[k], j)] = c
            self._diff[(p, q)] = SparseMatrix(rows, self.dim(p, q), ent, self.field)
        return self._diff[(p, q)]

    def has_incoming(self, p: int, q: int) -> bool:
        if p <= self.floor:
            return True
        return self.window is None or p - 1 >= self.window.p_min

    def has_outgoing(self, p: int, q: int) -> bool:
        return self.window is None or p + 1 <= self.window.p_max

    def is_interior(self, p: int, q: int) -> bool:
        if self.window is not None and not self.window.contains(p, q):
            return False
        return self.has_incoming(p, q) and self.has_outgoing(p, q)

    def interior_bidegrees(self):
        if self.window is None:
            raise WindowError("unbounded complex")
        return [(p, q) for p, q in self.window.bidegrees() if self.is_interior(p, q)]

    # cohomology ---------------------------------------------------------

    def _cohomology(self, p: int, q: int) -> "_Cohomology":
        if (p, q) not in self._coh:
            if not self.is_interior(p, q):
                raise WindowError(f"bidegree ({p}, {q}) is partial in window {self.window}")
            n = self.dim(p, q)
            if p < self.floor:
                self._coh[(p, q)] = _Cohomology(self, p, q, [], [], [])
                return self._coh[(p, q)]
            Z = kernel_basis(self.diff(p, q))
            if p > self.floor:
                inc = self.diff(p - 1, q)
                B = [[0] * n for _ in range(inc.cols)]
                for (r, c), v in inc.entries.items():
                    B[c][r] = v
            else:
                B = []
            piv = pivot_columns(B + Z, self.field, n)
            reps = [Z[j - len(B)] for j in piv if j >= len(B)]
            self._coh[(p, q)] = _Cohomology(self, p, q, B, Z, reps)
        return self._coh[(p, q)]

    def cohomology_dim(self, p: int, q: int) -> int:
        return len(self._cohomology(p, q).reps)

    def cohomology_basis(self, p: int, q: int) -> List["CohomologyClass"]:
        h = self._cohomology(p, q)
        return [CohomologyClass(self, p, q, self.from_vector(p, q, r)) for r in h.reps]

    def is_cocycle(self, x: Cochain) -> bool:
        return self.d(x).is_zero()

    def is_coboundary(self, x: Cochain) -> Optional[Cochain]:
        """A primitive c with d(c) = x, or None."""
        p, q = self.bidegree_of(x)
        if not self.is_cocycle(x):
            raise NotACocycle(f"cochain of bidegree ({p}, {q}) is not closed")
        if x.is_zero():
            return self.operad.zero(p - 1 + self.offset, q)
        if p <= self.floor:
            return None
        sol = solve_particular(self.diff(p - 1, q), self.to_vector(x, p, q))
        if sol is None:
            return None
        return self.from_vector(p - 1, q, sol)

    def cls(self, x: Cochain) -> "CohomologyClass":
        p, q = self.bidegree_of(x)
        if not self.is_cocycle(x):
            raise NotACocycle(f"cochain of bidegree ({p}, {q}) is not closed")
        return CohomologyClass(self, p, q, x)

    def coordinates(self, x: Cochain) -> list:
        """Coordinates of the class of a cocycle in the echelon cohomology basis."""
        p, q = self.bidegree_of(x)
        h = self._cohomology(p, q)
        if not h.reps:
            return []
        n = self.dim(p, q)
        cols = h.B + h.reps
        ent = {}
        for j, v in enumerate(cols):
            for i, a in enumerate(v):
                if a:
                    ent[(i, j)] = a
        sol = solve_particular(SparseMatrix(n, len(cols), ent, self.field), self.to_vector(x, p, q))
        if sol is None:
            raise NotACocycle("cochain is not closed")
        return sol[len(h.B):]

    def d_squared_defect(self):
        """First interior bidegree where d∘d != 0, or None."""
        if self.window is None:
            raise WindowError("unbounded complex")
        for p, q in self.window.bidegrees():
            if p + 2 > self.window.p_max:
                continue
            if not self.diff(p + 1, q).compose(self.diff(p, q)).is_zero():
                return (p, q)
        return None


@dataclass
class _Cohomology:
    cx: ComplexWindow
    p: int
    q: int
    B: list
    Z: list
    reps: list


class CohomologyClass:
    def __init__(self, home: ComplexWindow, p: int, q: int, representative: Cochain):
        self.home = home
        self.p = p
        self.q = q
        self.representative = representative

    @property
    def bidegree(self):
        return self.p, self.q

    def coordinates(self) -> list:
        return self.home.coordinates(self.representative)

    def is_zero(self) -> bool:
        return self.home.is_coboundary(self.representative) is not None

    def __add__(self, other):
        self._same(other)
        return CohomologyClass(self.home, self.p, self.q, self.representative + other.representative)

    def __sub__(self, other):
        self._same(other)
        return CohomologyClass(self.home, self.p, self.q, self.representative - other.representative)

    def scale(self, c):
        return CohomologyClass(self.home, self.p, self.q, self.representative.scale(c))

    def _same(self, other):
        if other.home is not self.home or other.bidegree != self.bidegree:
            raise ValueError("classes live in different places")

    def __eq__(self, other):
        if not isinstance(other, CohomologyClass):
            return NotImplemented
        if other.home is not self.home:
            return False
        if other.bidegree != self.bidegree:
            return self.is_zero() and other.is_zero()
        return (self - other).is_zero()

    __hash__ = None

    def __repr__(self):
        return f"<class in {self.home.kind}^{{{self.p},{self.q}}}>"


# ---------------------------------------------------------------------------
# assembly


def assemble_operad_complex(operad: Operad, m2: Cochain, window: Optional[DegreeWindow] = None,
                            kind: str = "OperadCx") -> ComplexWindow:
    return ComplexWindow(kind, operad, m2, window)


def assemble_ideal_complex(ideal: OperadIdeal, m2: Cochain,
                           window: Optional[DegreeWindow] = None) -> ComplexWindow:
    return ComplexWindow("IdealCx", ideal.parent, m2, window, part=ideal, arity_offset=1)


def hochschild_complex(A: GradedSpace, products, window: Optional[DegreeWindow] = None) -> ComplexWindow:
    E = EndomorphismOperad(A)
    m2 = E.multiplication(products)
    return ComplexWindow("HochschildCx", E, m2, window, meta={"products": products})


@dataclass
class BimoduleComplexes:
    HC: ComplexWindow
    BC: ComplexWindow
    HCE: ComplexWindow
    operad: LinearEndomorphismOperad

    def __iter__(self):
        return iter((self.HC, self.BC, self.HCE))


class ModuleAxiomError(ValueError):
    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


def assemble_bimodule_complexes(A: GradedSpace, products, M: GradedSpace, left, right,
                                window: Optional[DegreeWindow] = None) -> BimoduleComplexes:
    from .braces import brace

    E = EndomorphismOperad(A)
    mA = E.multiplication(products)
    L = LinearEndomorphismOperad(A, M)
    m = L.multiplication(products, left, right)
    res = brace(m, [m])
    if not res.is_zero():
        key = sorted(res.table)[0]
        raise ModuleAxiomError(f"associativity or module axiom fails at {L.describe_key(key)}",
                               witness=L.describe_key(key))
    HC = ComplexWindow("HochschildCx", E, mA, window)
    BC = ComplexWindow("BimoduleCx", L, m, window, part="ideal", arity_offset=1)
    HCE = ComplexWindow("BimoduleHochschildCx", L, m, window, part="all")
    return BimoduleComplexes(HC, BC, HCE, L)


# ---------------------------------------------------------------------------
# connecting map and the long exact sequence


def act_right(m2: Cochain, x: Cochain, a: Cochain) -> Cochain:
    """Right action of a Hochschild cochain on a bimodule cochain."""
    return cup(m2, x, a)


def act_left(m2: Cochain, a: Cochain, x: Cochain) -> Cochain:
    """Left action; the extra sign accounts for the desuspension of BC inside HCE."""
    r = cup(m2, a, x)
    return r if a.shifted_degree % 2 else -r


def connecting_cochain(bc: BimoduleComplexes, alpha: Cochain) -> Cochain:
    """id_M·α − α·id_M for a Hochschild cochain α, as a bimodule cochain."""
    L = bc.operad
    a = L.embed(alpha)
    m = bc.HCE.m2
    idM = L.id_M()
    return act_right(m, idM, a) - act_left(m, a, idM)


def connecting_delta(bc: BimoduleComplexes, a: CohomologyClass) -> CohomologyClass:
    if a.home is not bc.HC:
        raise ValueError("class does not live in this Hochschild complex")
    x = connecting_cochain(bc, a.representative)
    return bc.BC.cls(x)


def snake_delta(bc: BimoduleComplexes, a: CohomologyClass) -> CohomologyClass:
    """δ by the snake lemma: lift to HCE, apply d, read off the bimodule part."""
    L = bc.operad
    lift = L.embed(a.representative)
    dx = bc.HCE.d(lift)
    if not L.pure_part(dx).is_zero():
        raise NotACocycle("representative is not a Hochschild cocycle")
    return bc.BC.cls(dx)


def _matrix_on_cohomology(src: ComplexWindow, p, q, dst: ComplexWindow, f) -> SparseMatrix:
    classes = src.cohomology_basis(p, q)
    cols = []
    rows = None
    for c in classes:
        y = f(c.representative)
        coords = dst.coordinates(y)
        rows = len(coords)
        cols.append({i: v for i, v in enumerate(coords) if v})
    if rows is None:
        tp, tq = dst.bidegree_of(f(src.operad.zero(p + src.offset, q)))
        rows = dst.cohomology_dim(tp, tq)
    return SparseMatrix.from_columns(rows, cols, src.field)


@dataclass
class LESNode:
    node: str
    p: int
    q: int
    dims: dict
    exact: bool


@dataclass
class LESReport:
    nodes: List[LESNode]

    @property
    def exact(self) -> bool:
        return all(n.exact for n in self.nodes)

    def failures(self):
        return [n for n in self.nodes if not n.exact]


def les_maps(bc: BimoduleComplexes):
    L = bc.operad
    HC, BC, HCE = bc

    def incl(x):
        return Cochain(L, x.arity, x.degree, dict(x.table), check=False)

    def proj(x):
        return L.project(x, HC.operad)

    def delta(x):
        return connecting_cochain(bc, x)

    return incl, proj, delta


def les_exactness_audit(bc: BimoduleComplexes) -> LESReport:
    HC, BC, HCE = bc
    if not (HC.window == BC.window == HCE.window) or HC.window is None:
        raise WindowError("the three complexes must share one bounded window")
    incl, proj, delta = les_maps(bc)
    w = HC.window
    nodes = []

    def ok(cx, p, q):
        return cx.is_interior(p, q) if w.contains(p, q) else False

    cache = {}

    def mat(name, p, q):
        if (name, p, q) not in cache:
            if name == "i":
                # Ext^{p-1,q} -> HHE^{p,q}
                cache[(name, p, q)] = _matrix_on_cohomology(BC, p - 1, q, HCE, incl)
            elif name == "p":
                cache[(name, p, q)] = _matrix_on_cohomology(HCE, p, q, HC, proj)
            else:
                cache[(name, p, q)] = _matrix_on_cohomology(HC, p, q, BC, delta)
        return cache[(name, p, q)]

    for p, q in w.bidegrees():
        # at HHE^{p,q}: Ext^{p-1,q} -> HHE^{p,q} -> HH^{p,q}
        if p >= 1 and ok(BC, p - 1, q) and ok(HCE, p, q) and ok(HC, p, q):
            i_m, p_m = mat("i", p, q), mat("p", p, q)
            dim = HCE.cohomology_dim(p, q)
            exact = p_m.compose(i_m).is_zero() and rank(i_m) == dim - rank(p_m)
            nodes.append(LESNode("HHE", p, q, {"Ext": BC.cohomology_dim(p - 1, q), "HHE": dim,
                                               "HH": HC.cohomology_dim(p, q)}, exact))
        # at HH^{p,q}: HHE^{p,q} -> HH^{p,q} -> Ext^{p,q}
        if ok(HCE, p, q) and ok(HC, p, q) and ok(BC, p, q):
            p_m, d_m = mat("p", p, q), mat("d", p, q)
            dim = HC.cohomology_dim(p, q)
            exact = d_m.compose(p_m).is_zero() and rank(p_m) == dim - rank(d_m)
            nodes.append(LESNode("HH", p, q, {"HHE": HCE.cohomology_dim(p, q), "HH": dim,
                                              "Ext": BC.cohomology_dim(p, q)}, exact))
        # at Ext^{p,q}: HH^{p,q} -> Ext^{p,q} -> HHE^{p+1,q}
        if ok(HC, p, q) and ok(BC, p, q) and ok(HCE, p + 1, q):
            d_m, i_m = mat("d", p, q), mat("i", p + 1, q)
            dim = BC.cohomology_dim(p, q)
            exact = i_m.compose(d_m).is_zero() and rank(d_m) == dim - rank(i_m)
            nodes.append(LESNode("Ext", p, q, {"HH": HC.cohomology_dim(p, q), "Ext": dim,
                                               "HHE": HCE.cohomology_dim(p + 1, q)}, exact))
    return LESReport(nodes)
