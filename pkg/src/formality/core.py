"""Exact field arithmetic and sparse linear algebra over Q and F_p.

Field elements are plain Python values: ``Fraction`` for the rationals and
``int`` residues in ``range(p)`` for prime fields.  ``Field`` owns all
arithmetic on them; ``Scalar`` is a thin immutable wrapper used at API
boundaries where the field must travel with the value.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple


class FieldError(ValueError):
    pass


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


# machine-word primes only
_MAX_PRIME = 2**31


@dataclass(frozen=True)
class Field:
    """The ground field: ``Field()`` is Q, ``Field(p)`` is F_p."""

    p: int = 0

    def __post_init__(self):
        if self.p != 0:
            if not _is_prime(self.p):
                raise FieldError(f"{self.p} is not prime")
            if self.p >= _MAX_PRIME:
                raise FieldError(f"prime {self.p} exceeds the supported word size")

    @classmethod
    def parse(cls, text: str) -> "Field":
        t = text.strip()
        if t in ("Q", "QQ"):
            return cls(0)
        if t.startswith("Fp:") or t.startswith("F:"):
            try:
                p = int(t.split(":", 1)[1])
            except ValueError:
                raise FieldError(f"bad field {text!r}") from None
            return cls(p)
        raise FieldError(f"bad field {text!r}; expected 'Q' or 'Fp:<p>'")

    @property
    def kind(self) -> str:
        return "Rational" if self.p == 0 else "PrimeField"

    def characteristic(self) -> int:
        return self.p

    def __str__(self):
        return "Q" if self.p == 0 else f"Fp:{self.p}"

    # element arithmetic -------------------------------------------------

    @property
    def zero(self):
        return Fraction(0) if self.p == 0 else 0

    @property
    def one(self):
        return Fraction(1) if self.p == 0 else 1

    def __call__(self, x):
        """Coerce an int, Fraction or string into the field."""
        if self.p == 0:
            if isinstance(x, str):
                return Fraction(x.strip())
            return Fraction(x)
        if isinstance(x, str):
            x = Fraction(x.strip())
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise FieldError(f"{x} has no image in F_{self.p}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def add(self, a, b):
        return a + b if self.p == 0 else (a + b) % self.p

    def sub(self, a, b):
        return a - b if self.p == 0 else (a - b) % self.p

    def mul(self, a, b):
        return a * b if self.p == 0 else (a * b) % self.p

    def neg(self, a):
        return -a if self.p == 0 else (-a) % self.p

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a if self.p == 0 else pow(a, -1, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def sign(self, k: int):
        """(-1)**k as a field element."""
        if k % 2 == 0 or self.p == 2:
            return self.one
        return self.neg(self.one)

    def half(self):
        if self.p == 2:
            raise FieldError("1/2 does not exist in characteristic 2")
        return self.inv(self(2))

    def format(self, a) -> str:
        if self.p == 0:
            a = Fraction(a)
            return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
        return str(int(a))


Q = Field(0)


@dataclass(frozen=True)
class Scalar:
    field: Field
    value: object

    @classmethod
    def of(cls, field: Field, x) -> "Scalar":
        return cls(field, field(x))

    def _check(self, other: "Scalar"):
        if other.field != self.field:
            raise FieldError("mixed fields")

    def __add__(self, other):
        self._check(other)
        return Scalar(self.field, self.field.add(self.value, other.value))

    def __sub__(self, other):
        self._check(other)
        return Scalar(self.field, self.field.sub(self.value, other.value))

    def __mul__(self, other):
        self._check(other)
        return Scalar(self.field, self.field.mul(self.value, other.value))

    def __neg__(self):
        return Scalar(self.field, self.field.neg(self.value))

    def __truediv__(self, other):
        self._check(other)
        return Scalar(self.field, self.field.div(self.value, other.value))

    def __bool__(self):
        return bool(self.value)

    def __str__(self):
        return self.field.format(self.value)


# ---------------------------------------------------------------------------
# sparse matrices


@dataclass(frozen=True)
class SparseMatrix:
    rows: int
    cols: int
    entries: Mapping[Tuple[int, int], object]
    field: Field = dc_field(default=Q)

    def __post_init__(self):
        clean = {}
        for (r, c), v in self.entries.items():
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise IndexError(f"entry ({r}, {c}) outside {self.rows}x{self.cols}")
            v = self.field(v)
            if v:
                clean[(r, c)] = v
        object.__setattr__(self, "entries", clean)

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence], field: Field = Q, ncols: Optional[int] = None):
        nrows = len(rows)
        if ncols is None:
            ncols = len(rows[0]) if nrows else 0
        ent = {(i, j): v for i, row in enumerate(rows) for j, v in enumerate(row) if v}
        return cls(nrows, ncols, ent, field)

    @classmethod
    def from_columns(cls, nrows: int, columns: Sequence[Mapping[int, object]], field: Field = Q):
        ent = {}
        for j, col in enumerate(columns):
            for i, v in col.items():
                ent[(i, j)] = v
        return cls(nrows, len(columns), ent, field)

    @classmethod
    def identity(cls, n: int, field: Field = Q):
        return cls(n, n, {(i, i): 1 for i in range(n)}, field)

    def to_dense(self):
        out = [[self.field.zero] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def row_dicts(self) -> List[Dict[int, object]]:
        rows: List[Dict[int, object]] = [dict() for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            rows[r][c] = v
        return rows

    def apply(self, x: Sequence) -> list:
        if len(x) != self.cols:
            raise ValueError(f"vector of length {len(x)} against {self.cols} columns")
        F = self.field
        out = [F.zero] * self.rows
        for (r, c), v in self.entries.items():
            if x[c]:
                out[r] = F.add(out[r], F.mul(v, x[c]))
        return out

    def compose(self, other: "SparseMatrix") -> "SparseMatrix":
        """self @ other."""
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        F = self.field
        by_row: Dict[int, Dict[int, object]] = {}
        for (k, c), v in other.entries.items():
            by_row.setdefault(k, {})[c] = v
        acc: Dict[Tuple[int, int], object] = {}
        for (r, k), a in self.entries.items():
            for c, b in by_row.get(k, {}).items():
                key = (r, c)
                acc[key] = F.add(acc.get(key, F.zero), F.mul(a, b))
        return SparseMatrix(self.rows, other.cols, acc, F)

    def is_zero(self) -> bool:
        return not self.entries


@dataclass
class Echelon:
    """Reduced row echelon form of a matrix.

    ``rows[k]`` is the k-th nonzero row, with pivot ``pivots[k]`` normalised
    to one and zero in every other pivot column.
    """

    field: Field
    cols: int
    pivots: List[int]
    rows: List[Dict[int, object]]

    @property
    def rank(self) -> int:
        return len(self.pivots)


def echelon(m: SparseMatrix) -> Echelon:
    F = m.field
    rows = [r for r in m.row_dicts() if r]
    pivot_rows: Dict[int, Dict[int, object]] = {}
    for row in rows:
        row = dict(row)
        # pivot rows vanish on each other's pivots, so one pass suffices
        for pc in [c for c in row if c in pivot_rows]:
            f = row.get(pc)
            if not f:
                continue
            for c, v in pivot_rows[pc].items():
                nv = F.sub(row.get(c, F.zero), F.mul(f, v))
                if nv:
                    row[c] = nv
                else:
                    row.pop(c, None)
        if not row:
            continue
        piv = min(row)
        inv = F.inv(row[piv])
        row = {c: F.mul(v, inv) for c, v in row.items()}
        # clear new pivot column from the others
        for pc, prow in pivot_rows.items():
            f = prow.get(piv)
            if f:
                for c, v in row.items():
                    nv = F.sub(prow.get(c, F.zero), F.mul(f, v))
                    if nv:
                        prow[c] = nv
                    else:
                        prow.pop(c, None)
        pivot_rows[piv] = row
    order = sorted(pivot_rows)
    return Echelon(F, m.cols, order, [pivot_rows[c] for c in order])


def rank(m: SparseMatrix) -> int:
    return echelon(m).rank


def kernel_basis(m: SparseMatrix) -> List[list]:
    """Null space basis, one vector per free column in increasing order.

    Each vector has a one in its free column, zeros in the other free
    columns, and the negated echelon entries in the pivot columns.
    """
    e = echelon(m)
    F = m.field
    pivset = set(e.pivots)
    basis = []
    for free in range(m.cols):
        if free in pivset:
            continue
        v = [F.zero] * m.cols
        v[free] = F.one
        for piv, row in zip(e.pivots, e.rows):
            a = row.get(free)
            if a:
                v[piv] = F.neg(a)
        basis.append(v)
    return basis


def solve_particular(m: SparseMatrix, b: Sequence) -> Optional[list]:
    """Some x with m x = b, free variables set to zero; None when inconsistent."""
    if len(b) != m.rows:
        raise ValueError(f"right-hand side has length {len(b)}, matrix has {m.rows} rows")
    F = m.field
    # augmented echelon: column m.cols carries b
    aug = dict(m.entries)
    for r, v in enumerate(b):
        v = F(v)
        if v:
            aug[(r, m.cols)] = v
    e = echelon(SparseMatrix(m.rows, m.cols + 1, aug, F))
    if m.cols in e.pivots:
        return None
    x = [F.zero] * m.cols
    for piv, row in zip(e.pivots, e.rows):
        x[piv] = row.get(m.cols, F.zero)
    return x


def in_column_space(m: SparseMatrix, b: Sequence) -> bool:
    return solve_particular(m, b) is not None


def pivot_columns(columns: Sequence[Sequence], field: Field, n: int) -> List[int]:
    """Indices of the columns not in the span of the columns before them."""
    ent = {}
    for j, v in enumerate(columns):
        for i, a in enumerate(v):
            if a:
                ent[(i, j)] = a
    return list(echelon(SparseMatrix(n, len(columns), ent, field)).pivots)
