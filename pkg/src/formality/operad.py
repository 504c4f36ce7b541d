"""Graded operads: endomorphism operads, linear endomorphism operads, and
finite operads given by structure constants.

Cochains of bidegree (p, q) live in arity p.  For the endomorphism operads
a cochain is a multilinear map table ``{(inputs, output): coeff}`` with
basis indices as entries and ``deg(output) = sum(deg(inputs)) + q``; the
composition is that of the operadic suspension, realised by conjugating
with the shift so that every map becomes a map on the suspended space and
composing there with the plain Koszul rule.  For a finite operad a cochain
of bidegree (p, q) is a vector in the degree ``p + q - 1`` part of O(p),
and the user's structure constants are used as they are.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from itertools import product
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .core import Field, Q
from .graded import GradedSpace


class OperadError(ValueError):
    pass


class Cochain:
    """Bihomogeneous element of the operad complex.

    ``table`` maps keys to nonzero field values; keys are ``(inputs, out)``
    for endomorphism operads and basis indices of O(p) for finite operads.
    """

    __slots__ = ("operad", "arity", "degree", "table")

    def __init__(self, operad, arity: int, degree: int, table=None, check: bool = True):
        self.operad = operad
        self.arity = arity
        self.degree = degree
        if check:
            F = operad.field
            clean = {}
            for k, v in (table or {}).items():
                v = F(v)
                if v:
                    clean[k] = v
            self.table = clean
            operad.check_key_shapes(self)
        else:
            self.table = {k: v for k, v in (table or {}).items() if v}

    @property
    def bidegree(self) -> Tuple[int, int]:
        return self.arity, self.degree

    @property
    def total_degree(self) -> int:
        return self.arity + self.degree

    @property
    def shifted_degree(self) -> int:
        """Degree in the operad, p + q - 1; this is what the brace signs see."""
        return self.arity + self.degree - 1

    @property
    def field(self) -> Field:
        return self.operad.field

    def is_zero(self) -> bool:
        return not self.table

    def _same_home(self, other: "Cochain"):
        if other.operad is not self.operad:
            raise OperadError("cochains over different operad handles")
        if other.bidegree != self.bidegree and self.table and other.table:
            raise OperadError(f"bidegree mismatch {self.bidegree} vs {other.bidegree}")

    def _combine(self, other, sign):
        self._same_home(other)
        F = self.field
        out = dict(self.table)
        for k, v in other.table.items():
            out[k] = F.add(out.get(k, F.zero), v if sign > 0 else F.neg(v))
        p, q = self.bidegree if self.table or not other.table else other.bidegree
        return Cochain(self.operad, p, q, out, check=False)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        F = self.field
        return Cochain(self.operad, self.arity, self.degree,
                       {k: F.neg(v) for k, v in self.table.items()}, check=False)

    def scale(self, c) -> "Cochain":
        F = self.field
        c = F(c)
        return Cochain(self.operad, self.arity, self.degree,
                       {k: F.mul(c, v) for k, v in self.table.items()}, check=False)

    def __eq__(self, other):
        if not isinstance(other, Cochain):
            return NotImplemented
        if self.operad is not other.operad:
            return False
        if not self.table and not other.table:
            return True
        return self.bidegree == other.bidegree and self.table == other.table

    def __hash__(self):
        return hash((self.arity, self.degree, frozenset(self.table.items())))

    def __repr__(self):
        return f"Cochain({self.arity},{self.degree}; {len(self.table)} terms)"

    def restrict(self, keep: Callable) -> "Cochain":
        return Cochain(self.operad, self.arity, self.degree,
                       {k: v for k, v in self.table.items() if keep(k)}, check=False)


def _eps(degs: Sequence[int], idx: Sequence[int]) -> int:
    """Parity of the sign relating a map to its suspension."""
    m = len(idx)
    k = 0
    for j, a in enumerate(idx):
        k += (m - 1 - j) * (degs[a] - 1)
    return k & 1


def _tuples_with_sum(degs, choices, target):
    """Index tuples drawn from ``choices`` whose degrees add up to ``target``."""
    lo = [min((degs[a] for a in c), default=None) for c in choices]
    hi = [max((degs[a] for a in c), default=None) for c in choices]
    if any(v is None for v in lo):
        return
    # bounds on what the remaining positions can still contribute
    rest_lo = [0] * (len(choices) + 1)
    rest_hi = [0] * (len(choices) + 1)
    for j in range(len(choices) - 1, -1, -1):
        rest_lo[j] = rest_lo[j + 1] + lo[j]
        rest_hi[j] = rest_hi[j + 1] + hi[j]

    def rec(j, acc, prefix):
        if j == len(choices):
            if acc == target:
                yield tuple(prefix)
            return
        if not rest_lo[j] <= target - acc <= rest_hi[j]:
            return
        for a in choices[j]:
            prefix.append(a)
            yield from rec(j + 1, acc + degs[a], prefix)
            prefix.pop()

    yield from rec(0, 0, [])


class Operad:
    field: Field

    def compose(self, x: Cochain, y: Cochain, i: int) -> Cochain:
        if x.operad is not self or y.operad is not self:
            raise OperadError("mismatched operad handles")
        if not 1 <= i <= x.arity:
            raise OperadError(f"slot {i} out of range for arity {x.arity}")
        return self._compose(x, y, i)

    def zero(self, p: int, q: int) -> Cochain:
        return Cochain(self, p, q, {}, check=False)

    def basis_cochain(self, p: int, q: int, key) -> Cochain:
        return Cochain(self, p, q, {key: self.field.one})


class EndomorphismOperad(Operad):
    """The suspended endomorphism operad of a finite graded space."""

    kind = "Endo"

    def __init__(self, space: GradedSpace):
        self.space = space
        self.field = space.field
        self.degs = space.degrees
        self.labels = space.labels

    # keys --------------------------------------------------------------

    def key_degree(self, key) -> int:
        ins, out = key
        return self.degs[out] - sum(self.degs[a] for a in ins)

    def check_key_shapes(self, c: Cochain):
        n = len(self.degs)
        for key in c.table:
            ins, out = key
            if len(ins) != c.arity:
                raise OperadError(f"key {key} has arity {len(ins)}, expected {c.arity}")
            if not all(0 <= a < n for a in ins) or not 0 <= out < n:
                raise OperadError(f"key {key} outside the basis")
            if self.key_degree(key) != c.degree:
                raise OperadError(f"key {self.describe_key(key)} has degree "
                                  f"{self.key_degree(key)}, expected {c.degree}")
            if not self.allowed(key):
                raise OperadError(f"key {self.describe_key(key)} not in the operad")

    def allowed(self, key) -> bool:
        return True

    def describe_key(self, key) -> str:
        ins, out = key
        return "(" + ",".join(self.labels[a] for a in ins) + ")->" + self.labels[out]

    def component_keys(self, p: int, q: int, part: str = "all") -> List[tuple]:
        """Sorted basis keys of arity p and degree q in the given part."""
        keys = []
        for ins, outs in self._shapes(part, p):
            for o in outs:
                for tup in _tuples_with_sum(self.degs, ins, self.degs[o] - q):
                    keys.append((tup, o))
        keys.sort()
        return keys

    def _shapes(self, part: str, p: int):
        n = range(len(self.degs))
        if part not in ("all", "pure"):
            raise OperadError(f"no part {part!r} in an endomorphism operad")
        yield [n] * p, n

    # composition -----------------------------------------------------

    def _compose(self, f: Cochain, g: Cochain, i: int) -> Cochain:
        degs = self.degs
        F = self.field
        G = g.arity + g.degree - 1
        slot = i - 1
        by_input = defaultdict(list)
        for key, v in f.table.items():
            by_input[key[0][slot]].append((key, v))
        out = {}
        for (gins, gout), gv in g.table.items():
            eg = _eps(degs, gins)
            for (fins, fout), fv in by_input.get(gout, ()):
                new = fins[:slot] + gins + fins[slot + 1:]
                k = G * sum(degs[a] - 1 for a in fins[:slot]) + eg + _eps(degs, fins) + _eps(degs, new)
                val = F.mul(fv, gv)
                if k & 1:
                    val = F.neg(val)
                key = (new, fout)
                out[key] = F.add(out.get(key, F.zero), val)
        return Cochain(self, f.arity + g.arity - 1, f.degree + g.degree, out, check=False)

    # distinguished elements -------------------------------------------

    def identity(self) -> Cochain:
        if not self.degs:
            raise OperadError("the endomorphism operad of the zero space has no unit")
        return Cochain(self, 1, 0, {((a,), a): 1 for a in range(len(self.degs))})

    unit = identity

    def from_map(self, arity: int, degree: int, rows: Iterable) -> Cochain:
        """Cochain from rows ``(input labels..., output label, coeff)``."""
        idx = {lab: i for i, lab in enumerate(self.labels)}
        table = {}
        F = self.field
        for row in rows:
            *ins, out, c = row
            key = (tuple(idx[a] for a in ins), idx[out])
            table[key] = F.add(table.get(key, F.zero), F(c))
        return Cochain(self, arity, degree, table)

    def multiplication(self, products) -> Cochain:
        """The bidegree (2, 0) cochain of a product table ``{(a, b): {c: coeff}}``."""
        rows = [(a, b, c, v) for (a, b), res in products.items() for c, v in res.items()]
        return self.from_map(2, 0, rows)

    def evaluate(self, x: Cochain, inputs: Sequence[int]) -> Dict[int, object]:
        """Value of the multilinear map on a tuple of basis indices."""
        ins = tuple(inputs)
        return {out: v for (k, out), v in x.table.items() if k == ins}


class LinearEndomorphismOperad(EndomorphismOperad):
    """E(A, M): maps on A, plus maps with exactly one M input landing in M.

    Internally this is a sub-operad of the endomorphism operad of A ⊕ M,
    with A occupying indices ``0..nA-1`` and M the rest.
    """

    kind = "LinEndo"

    def __init__(self, A: GradedSpace, M: GradedSpace):
        if A.field != M.field:
            raise OperadError("algebra and bimodule over different fields")
        self.A = A
        self.M = M
        self.nA = A.dim
        combined = GradedSpace(tuple((f"A:{l}", d) for l, d in A.basis) +
                               tuple((f"M:{l}", d) for l, d in M.basis), A.field)
        super().__init__(combined)
        self.a_idx = list(range(self.nA))
        self.m_idx = list(range(self.nA, self.nA + M.dim))

    def is_module_index(self, a: int) -> bool:
        return a >= self.nA

    def is_pure(self, key) -> bool:
        ins, out = key
        return out < self.nA and all(a < self.nA for a in ins)

    def is_ideal(self, key) -> bool:
        ins, out = key
        return out >= self.nA and sum(1 for a in ins if a >= self.nA) == 1

    def allowed(self, key) -> bool:
        return self.is_pure(key) or self.is_ideal(key)

    def signature(self, key) -> str:
        return "".join("M" if a >= self.nA else "A" for a in key[0])

    def _shapes(self, part: str, p: int):
        A, M = self.a_idx, self.m_idx
        if part in ("all", "pure"):
            yield [A] * p, A
        if part in ("all", "ideal"):
            for j in range(p):
                yield [A] * j + [M] + [A] * (p - j - 1), M
        if part not in ("all", "pure", "ideal"):
            raise OperadError(f"unknown part {part!r}")

    def multiplication(self, products, left=None, right=None) -> Cochain:
        """m2 of the square-zero extension: the algebra product plus both actions."""
        rows = [("AA", a, b, c, v) for (a, b), res in products.items() for c, v in res.items()]
        rows += [("AM", a, m, n, v) for (a, m), res in (left or {}).items() for n, v in res.items()]
        rows += [("MA", m, a, n, v) for (m, a), res in (right or {}).items() for n, v in res.items()]
        return self.from_signature_rows(2, 0, rows)

    def pure_part(self, x: Cochain) -> Cochain:
        return x.restrict(self.is_pure)

    def ideal_part(self, x: Cochain) -> Cochain:
        return x.restrict(self.is_ideal)

    def id_A(self) -> Cochain:
        return Cochain(self, 1, 0, {((a,), a): 1 for a in self.a_idx})

    def id_M(self) -> Cochain:
        return Cochain(self, 1, 0, {((m,), m): 1 for m in self.m_idx})

    def identity(self) -> Cochain:
        return Cochain(self, 1, 0, {((a,), a): 1 for a in range(len(self.degs))})

    unit = identity

    def embed(self, x: Cochain) -> Cochain:
        """Transport a cochain on E(A) into the pure part of E(A, M)."""
        if not isinstance(x.operad, EndomorphismOperad) or x.operad.degs != self.degs[:self.nA]:
            raise OperadError("cochain is not over E(A) for this A")
        return Cochain(self, x.arity, x.degree, dict(x.table), check=False)

    def project(self, x: Cochain, target: EndomorphismOperad) -> Cochain:
        """The operad map E(A, M) -> E(A) on a cochain."""
        return Cochain(target, x.arity, x.degree,
                       {k: v for k, v in x.table.items() if self.is_pure(k)}, check=False)

    def from_signature_rows(self, arity: int, degree: int, rows: Iterable) -> Cochain:
        """Rows ``(signature, input labels..., output label, coeff)``.

        The signature is a string over {A, M}, one letter per input; an
        all-A signature describes a map on A.
        """
        ia = {l: i for i, l in enumerate(self.A.labels)}
        im = {l: self.nA + i for i, l in enumerate(self.M.labels)}
        F = self.field
        table = {}
        for row in rows:
            sig, *ins, out, c = row
            if len(sig) != len(ins):
                raise OperadError(f"signature {sig!r} does not match {len(ins)} inputs")
            key_in = tuple(im[l] if s == "M" else ia[l] for s, l in zip(sig, ins))
            key_out = im[out] if "M" in sig else ia[out]
            key = (key_in, key_out)
            table[key] = F.add(table.get(key, F.zero), F(c))
        return Cochain(self, arity, degree, table)


# ---------------------------------------------------------------------------
# finite operads from structure constants


class FiniteOperad(Operad):
    """An operad given by structure constants, carried for arities 0..N_max.

    ``arity_spaces[n]`` is the graded space O(n) (degrees are operad
    degrees); ``comp[(x, i, y)] = {z: coeff}`` gives x ∘_i y on basis
    labels, missing entries being zero.  Labels must be unique across all
    arities.  The axioms are checked on construction.
    """

    kind = "Generic"

    def __init__(self, arity_spaces: Dict[int, GradedSpace], unit: str,
                 comp: Dict[Tuple[str, int, str], Dict[str, object]], field: Field = Q,
                 validate: bool = True):
        self.field = field
        self.n_max = max(arity_spaces) if arity_spaces else 0
        self.spaces = {n: arity_spaces.get(n, GradedSpace((), field)) for n in range(self.n_max + 1)}
        self.where = {}
        for n, sp in self.spaces.items():
            for j, (lab, deg) in enumerate(sp.basis):
                if lab in self.where:
                    raise OperadError(f"label {lab!r} used in two arities")
                self.where[lab] = (n, j)
        if unit not in self.where or self.where[unit][0] != 1:
            raise OperadError("unit must be a basis element of arity 1")
        n1, j1 = self.where[unit]
        if self.spaces[1].basis[j1][1] != 0:
            raise OperadError("unit must have degree 0")
        self.unit_label = unit
        self.comp = {}
        for (x, i, y), res in comp.items():
            if x not in self.where or y not in self.where:
                raise OperadError(f"unknown label in composition ({x}, {i}, {y})")
            p, jx = self.where[x]
            q, jy = self.where[y]
            if not 1 <= i <= p:
                raise OperadError(f"slot {i} out of range for {x}")
            row = {}
            for z, c in res.items():
                if z not in self.where:
                    raise OperadError(f"unknown label {z!r}")
                n, jz = self.where[z]
                if n != p + q - 1:
                    raise OperadError(f"{x} ∘_{i} {y} lands in arity {n}, expected {p + q - 1}")
                if self.label_degree(z) != self.label_degree(x) + self.label_degree(y):
                    raise OperadError(f"{x} ∘_{i} {y} -> {z} is not degree preserving")
                c = field(c)
                if c:
                    row[jz] = c
            self.comp[(p, jx, i, q, jy)] = row
        if validate:
            failure = check_operad_axioms(self, self.all_basis_elements())
            if failure:
                raise OperadError(f"operad axiom fails: {failure}")

    def label_degree(self, lab: str) -> int:
        n, j = self.where[lab]
        return self.spaces[n].basis[j][1]

    def check_key_shapes(self, c: Cochain):
        if c.arity > self.n_max:
            raise OperadError(f"arity {c.arity} beyond the carried range 0..{self.n_max}")
        sp = self.spaces[c.arity]
        for j in c.table:
            if not 0 <= j < sp.dim:
                raise OperadError(f"index {j} outside O({c.arity})")
            if sp.basis[j][1] != c.arity + c.degree - 1:
                raise OperadError(f"{sp.basis[j][0]} has degree {sp.basis[j][1]}, "
                                  f"not {c.arity + c.degree - 1}")

    def describe_key(self, key) -> str:
        return str(key)

    def element(self, label: str, coeff=1) -> Cochain:
        n, j = self.where[label]
        deg = self.spaces[n].basis[j][1]
        return Cochain(self, n, deg - n + 1, {j: coeff})

    def unit(self) -> Cochain:
        return self.element(self.unit_label)

    identity = unit

    def component_keys(self, p: int, q: int, part: str = "all") -> List[int]:
        if p > self.n_max or p < 0:
            return []
        return [j for j, (_, d) in enumerate(self.spaces[p].basis) if d == p + q - 1]

    def all_basis_elements(self) -> List[Cochain]:
        out = []
        for n, sp in self.spaces.items():
            for j, (lab, d) in enumerate(sp.basis):
                out.append(Cochain(self, n, d - n + 1, {j: self.field.one}, check=False))
        return out

    def _compose(self, x: Cochain, y: Cochain, i: int) -> Cochain:
        n = x.arity + y.arity - 1
        if n > self.n_max:
            if x.table and y.table:
                raise OperadError(f"composition lands in arity {n}, beyond the carried range")
            return Cochain(self, n, x.degree + y.degree, {}, check=False)
        F = self.field
        out = {}
        for jx, vx in x.table.items():
            for jy, vy in y.table.items():
                row = self.comp.get((x.arity, jx, i, y.arity, jy))
                if not row:
                    continue
                c = F.mul(vx, vy)
                for jz, v in row.items():
                    out[jz] = F.add(out.get(jz, F.zero), F.mul(c, v))
        return Cochain(self, n, x.degree + y.degree, out, check=False)


def check_operad_axioms(op: Operad, elements: Sequence[Cochain], unit: Optional[Cochain] = None,
                        max_arity: Optional[int] = None):
    """Check unit and associativity axioms on the given homogeneous elements.

    Returns None when all hold, otherwise a short description of the first
    failure.  Compositions landing beyond ``max_arity`` are skipped.
    """
    F = op.field
    if unit is None:
        unit = op.unit()
    if max_arity is None:
        max_arity = getattr(op, "n_max", None)

    def fits(n):
        return max_arity is None or n <= max_arity

    for x in elements:
        if op.compose(unit, x, 1) != x:
            return f"unit ∘_1 {x!r} != x"
        for i in range(1, x.arity + 1):
            if op.compose(x, unit, i) != x:
                return f"x ∘_{i} unit != x for {x!r}"
    for x in elements:
        for y in elements:
            if not fits(x.arity + y.arity - 1):
                continue
            for i in range(1, x.arity + 1):
                xy = op.compose(x, y, i)
                for z in elements:
                    if not fits(x.arity + y.arity + z.arity - 2):
                        continue
                    # sequential
                    for j in range(i, i + y.arity):
                        lhs = op.compose(xy, z, j)
                        rhs = op.compose(x, op.compose(y, z, j - i + 1), i)
                        if lhs != rhs:
                            return f"sequential axiom at i={i}, j={j}"
                    # parallel
                    for j in range(1, i):
                        lhs = op.compose(xy, z, j)
                        rhs = op.compose(op.compose(x, z, j), y, i + z.arity - 1)
                        if F.sign(y.shifted_degree * z.shifted_degree) != F.one:
                            rhs = -rhs
                        if lhs != rhs:
                            return f"parallel axiom at i={i}, j={j}"
    return None


# ---------------------------------------------------------------------------
# ideals


@dataclass
class OperadIdeal:
    """A sub-basis ideal of an operad.

    ``selector`` is either a predicate on keys (endomorphism operads) or a
    dict ``arity -> set of labels`` (finite operads).
    """

    parent: Operad
    selector: object

    def __post_init__(self):
        if isinstance(self.parent, FiniteOperad):
            sel = {}
            for n, labs in dict(self.selector).items():
                idx = set()
                for lab in labs:
                    if lab not in self.parent.where or self.parent.where[lab][0] != n:
                        raise OperadError(f"{lab!r} is not a basis element of arity {n}")
                    idx.add(self.parent.where[lab][1])
                sel[n] = idx
            self._sel = sel
            bad = self._closure_failure()
            if bad:
                raise OperadError(f"not an ideal: {bad}")
        elif callable(self.selector):
            self._sel = self.selector
        else:
            raise OperadError("selector must be a predicate or an arity -> labels map")

    def key_in(self, arity: int, key) -> bool:
        if isinstance(self._sel, dict):
            return key in self._sel.get(arity, ())
        return bool(self._sel(key))

    def contains(self, x: Cochain) -> bool:
        return all(self.key_in(x.arity, k) for k in x.table)

    def component_keys(self, p: int, q: int) -> list:
        return [k for k in self.parent.component_keys(p, q) if self.key_in(p, k)]

    def basis_elements(self, elements: Sequence[Cochain]) -> List[Cochain]:
        return [x for x in elements if self.contains(x)]

    def _closure_failure(self):
        op = self.parent
        els = op.all_basis_elements()
        for x in els:
            for y in els:
                if x.arity + y.arity - 1 > op.n_max:
                    continue
                for i in range(1, x.arity + 1):
                    if (self.contains(x) or self.contains(y)) and not self.contains(op.compose(x, y, i)):
                        return (x, i, y)
        return None


def _brace_raw(op: Operad, x0: Cochain, args: Sequence[Cochain]) -> Cochain:
    from .braces import brace
    return brace(x0, list(args))


def is_associative_ideal(ideal: OperadIdeal, elements: Optional[Sequence[Cochain]] = None,
                         max_args: int = 3):
    """Exhaustive search for x0{x1..xn} != 0 with two ideal arguments.

    ``elements`` defaults to all basis elements of a finite operad; for
    endomorphism operads pass a finite list of basis cochains.  Returns
    ``(True, None)`` or ``(False, (x0, args))``.
    """
    op = ideal.parent
    if elements is None:
        if not isinstance(op, FiniteOperad):
            raise OperadError("pass a finite list of basis cochains for this operad")
        elements = op.all_basis_elements()
    n_max = getattr(op, "n_max", None)
    for x0 in elements:
        for n in range(2, min(x0.arity, max_args) + 1):
            for args in product(elements, repeat=n):
                if sum(1 for a in args if ideal.contains(a) and not a.is_zero()) < 2:
                    continue
                if n_max is not None and x0.arity + sum(a.arity for a in args) - n > n_max:
                    continue
                r = _brace_raw(op, x0, args)
                if not r.is_zero():
                    return False, (x0, tuple(args))
    return True, None
