"""Massey complexes: cohomology with the differential ``x -> [m, x]``.

The underlying spaces are cohomology groups of an operad complex, cut off
below a floor.  ``m`` is a class of bidegree (d + 2, -d) with vanishing
square; the differential has bidegree (d + 1, -d).  Over F_2 the source
bidegree (d + 1, -d) uses ``x -> x·x + [m, x]`` instead.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple, Union

from .braces import bracket, cup, gerstenhaber_square
from .complexes import BimoduleComplexes, CohomologyClass, ComplexWindow, WindowError
from .core import SparseMatrix, rank
from .graded import DegreeWindow
from .operad import Cochain

MASSEY_KINDS = ("operad", "hochschild", "pair", "bimodule")
FLOORS = {"operad": 2, "hochschild": 2, "pair": 2, "bimodule": 1}


class MasseyError(ValueError):
    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


class CapabilityError(MasseyError):
    pass


def bracket_with_class(c: CohomologyClass, x: CohomologyClass) -> CohomologyClass:
    """The class of [c, x], computed on the stored representatives."""
    if c.home is not x.home:
        raise ValueError("classes live in different complexes")
    home = x.home
    y = bracket(c.representative, x.representative)
    p, q = home.bidegree_of(y)
    if not home.is_interior(p, q):
        raise WindowError(f"bracket lands on partial bidegree ({p}, {q})")
    return home.cls(y)


def _split_inputs(kind: str, inputs):
    """(base complex, complex holding the class) for a kind."""
    if kind not in MASSEY_KINDS:
        raise ValueError(f"unknown Massey complex kind {kind!r}")
    if isinstance(inputs, BimoduleComplexes):
        if kind == "hochschild":
            return inputs.HC, inputs.HC
        if kind == "pair":
            return inputs.HCE, inputs.HCE
        if kind == "bimodule":
            return inputs.BC, inputs.HCE
        return inputs.HCE, inputs.HCE
    if kind == "bimodule":
        raise ValueError("the Massey bimodule complex needs the bimodule complexes")
    return inputs, inputs


@dataclass
class MasseyComplex:
    kind: str
    base: ComplexWindow
    massey_class: CohomologyClass
    d: int
    floor: int
    window: Optional[DegreeWindow] = None
    special: Optional[Tuple[int, int]] = None
    _diff: Dict[Tuple[int, int], SparseMatrix] = field(default_factory=dict, repr=False)

    @property
    def field(self):
        return self.base.field

    @property
    def step(self) -> Tuple[int, int]:
        return self.d + 1, -self.d

    def base_dim(self, s: int, t: int) -> int:
        if s < self.floor:
            return 0
        return self.base.cohomology_dim(s, t)

    def _image(self, x: Cochain) -> Cochain:
        y = bracket(self.massey_class.representative, x)
        if self.special is not None and self.base.bidegree_of(x) == self.special:
            y = y + cup(self.base.m2, x, x)
        return y

    def diff(self, s: int, t: int) -> SparseMatrix:
        """Matrix of d: H^{s,t} -> H^{s+d+1,t-d} on the echelon bases."""
        if (s, t) not in self._diff:
            ds, dt = self.step
            rows = self.base_dim(s + ds, t + dt)
            cols = []
            if s >= self.floor:
                for c in self.base.cohomology_basis(s, t):
                    v = self.base.coordinates(self._image(c.representative))
                    cols.append({i: a for i, a in enumerate(v) if a})
            self._diff[(s, t)] = SparseMatrix.from_columns(rows, cols, self.field)
        return self._diff[(s, t)]

    def apply(self, x: CohomologyClass) -> CohomologyClass:
        y = self._image(x.representative)
        return self.base.cls(y)

    def _check(self, s: int, t: int):
        w = self.window
        if w is None:
            return
        ds, dt = self.step
        if not w.contains(s, t):
            raise WindowError(f"({s}, {t}) outside window {w}")
        if not w.contains(s + ds, t + dt):
            raise WindowError(f"({s}, {t}) is partial in window {w}: no outgoing target")
        if s - ds >= self.floor and not w.contains(s - ds, t - dt):
            raise WindowError(f"({s}, {t}) is partial in window {w}: no incoming source")

    def is_interior(self, s: int, t: int) -> bool:
        try:
            self._check(s, t)
        except WindowError:
            return False
        return True

    def cohomology_dim(self, s: int, t: int) -> int:
        self._check(s, t)
        if s < self.floor:
            return 0
        ds, dt = self.step
        out = rank(self.diff(s, t))
        inc = rank(self.diff(s - ds, t - dt)) if s - ds >= self.floor else 0
        return self.base_dim(s, t) - out - inc

    def certify(self, bidegrees=None):
        """Check d∘d = 0; returns the first failing source bidegree or None."""
        if bidegrees is None:
            if self.window is None:
                raise WindowError("unbounded Massey complex needs explicit bidegrees")
            bidegrees = self.window.bidegrees()
        ds, dt = self.step
        for s, t in bidegrees:
            if s < self.floor:
                continue
            if self.window is not None and not self.window.contains(s + 2 * ds, t + 2 * dt):
                continue
            if not self.diff(s + ds, t + dt).compose(self.diff(s, t)).is_zero():
                return (s, t)
        return None


def square_of_class(c: CohomologyClass) -> Optional[Cochain]:
    """Sq of the representative, or None when its class vanishes."""
    sq = gerstenhaber_square(c.representative)
    if c.home.is_coboundary(sq) is None:
        return sq
    return None


def build_massey_complex(kind: str, inputs: Union[ComplexWindow, BimoduleComplexes],
                         massey_class: Union[CohomologyClass, Cochain],
                         window: Optional[DegreeWindow] = None,
                         char2_policy: str = "special") -> MasseyComplex:
    """Assemble a Massey complex.

    ``kind`` is one of "operad", "hochschild", "pair" or "bimodule".  For
    "bimodule" the class lives in the bimodule Hochschild complex and the
    underlying spaces are Ext groups, starting in horizontal degree 1.
    ``char2_policy`` is "special" (the square at (d + 1, -d) over F_2) or
    "bracket" (plain bracket everywhere).
    """
    if char2_policy not in ("special", "bracket"):
        raise ValueError(f"unknown char2 policy {char2_policy!r}")
    base, home = _split_inputs(kind, inputs)
    if isinstance(massey_class, CohomologyClass):
        rep = massey_class.representative
    else:
        rep = massey_class
    if rep.operad is not home.operad:
        raise ValueError("class lives over a different operad")
    p, q = home.bidegree_of(rep)
    d = p - 2
    if d < 1 or q != -d:
        raise MasseyError(f"a universal Massey class has bidegree (d+2, -d), got ({p}, {q})")
    cls = home.cls(rep)
    sq = square_of_class(cls)
    if sq is not None:
        raise MasseyError(f"Sq of the class is nonzero in {home.kind}^{{{2 * p - 1},{2 * q}}}",
                          witness=sq)
    special = None
    F = base.field
    if char2_policy == "special" and F.characteristic() == 2 and kind != "bimodule":
        if F.p != 2:
            # only prime fields exist here, but keep the guard explicit
            raise CapabilityError("the square is only F_2-linear over F_2")
        special = (d + 1, -d)
    # brackets are taken against the class in the base complex's operad
    if kind != "bimodule" and home is not base:
        cls = base.cls(rep)
    mc = MasseyComplex(kind, base, cls, d, FLOORS[kind], window, special)
    if window is not None:
        bad = mc.certify()
        if bad is not None:
            raise MasseyError(f"d∘d != 0 from bidegree {bad}; this is a defect", witness=bad)
    return mc


def massey_cohomology_dim(mc: MasseyComplex, s: int, t: int) -> int:
    return mc.cohomology_dim(s, t)
