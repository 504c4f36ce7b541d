"""Finite decision procedures for vanishing-range hypotheses.

Each hypothesis asks a cohomology group to vanish along an anti-diagonal
(n + a, -n) for all n past some start.  The head of the range is computed;
the tail is handled by a degree certificate: past N* the cochain component
itself is zero, so nothing can survive there.  Without a finite N* the
answer is at best Inconclusive.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Callable, Dict, Iterable, Optional, Tuple

from .complexes import BimoduleComplexes, ComplexWindow
from .graded import GradedSpace
from .massey import build_massey_complex

SATISFIED = "Satisfied"
VIOLATED = "Violated"
INCONCLUSIVE = "Inconclusive"


@dataclass
class RangeVerdict:
    theorem_tag: str
    checked_range: int
    tail: Optional[int]
    verdict: str
    first_failure: Optional[Tuple[int, int]] = None
    dims: Dict[int, int] = field(default_factory=dict)
    start: int = 1

    @property
    def tail_text(self) -> str:
        if self.tail is None:
            return "Unbounded"
        return f"VanishesForDegreeReasonsBeyond({self.tail})"

    def summary(self) -> dict:
        return {"theorem": self.theorem_tag, "checked_range": self.checked_range,
                "start": self.start, "tail": self.tail_text, "verdict": self.verdict,
                "first_failure": None if self.first_failure is None else list(self.first_failure),
                "dims": {str(n): v for n, v in sorted(self.dims.items())}}


# ---------------------------------------------------------------------------
# tail certificates
#
# With shifted degrees e = deg - 1, a map with c inputs and degree -n
# exists exactly when some sum of c shifted input degrees lands in a fixed
# target set.  c grows with n, so the question is when the c-fold sumsets
# of a finite set stop meeting a finite target.


def _last_hit(E: Iterable[int], T: Iterable[int], c0: int) -> Optional[int]:
    """Largest n >= 1 with (n + c0)-fold sums of E meeting T; 0 if none, None if infinitely many."""
    E = sorted(set(E))
    T = set(T)
    if not T or not E:
        return 0
    lo, hi = E[0], E[-1]
    if lo < 0 < hi:
        # eventually every residue c·e0 + gℤ in a growing interval is reached
        g = 0
        for e in E:
            g = gcd(g, e - lo)
        # every c-fold sum is c·lo mod g, and c·lo ≡ t has infinitely many solutions c once it has one
        h = gcd(lo, g)
        if any(t % h == 0 for t in T):
            return None
        return 0
    # one-signed: normalise to non-negative
    if hi <= 0:
        E = sorted(-e for e in E)
        T = {-t for t in T}
        lo, hi = E[0], E[-1]
    tmax = max(T)
    if lo > 0:
        cmax = tmax // lo
    else:
        pos = [e for e in E if e > 0]
        if not pos:
            # all zero: every sum is 0
            return None if 0 in T else 0
        cmax = tmax // pos[0] + 1
    S = {0}
    last = 0
    for c in range(1, max(cmax, 0) + c0 + 2):
        S = {s + e for s in S for e in E if s + e <= tmax}
        n = c - c0
        if n >= 1 and S & T:
            if lo == 0:
                # sumsets only grow once 0 is available
                return None
            last = n
    return last


def tail_certificate(shape: str, spaces, a: int = 2) -> Optional[int]:
    """Least N* with the component (n + a, -n) zero for every n > N*, or None if unbounded.

    ``shape`` is "HC" (maps on A), "BC" (bimodule cochains, one extra M
    input) or "HCE" (both).  ``spaces`` is ``(A,)`` or ``(A, M)``.
    """
    if shape not in ("HC", "BC", "HCE"):
        raise ValueError(f"unknown shape {shape!r}")
    A: GradedSpace = spaces[0]
    EA = [d - 1 for d in A.degrees]
    results = []
    if shape in ("HC", "HCE"):
        results.append(_last_hit(EA, [o - a for o in A.degrees], a))
    if shape in ("BC", "HCE"):
        M: GradedSpace = spaces[1]
        off = 1 if shape == "BC" else 0
        base = a + off - 1
        T = [o - m - base for o in M.degrees for m in M.degrees]
        results.append(_last_hit(EA, T, base) if T else 0)
    if any(r is None for r in results):
        return None
    return max(results)


def _spaces(cx: ComplexWindow):
    op = cx.operad
    if hasattr(op, "M"):
        return op.A, op.M
    return (op.space,)


def _run(tag: str, N: int, start: int, tail: Optional[int], dim_at: Callable[[int], int]) -> RangeVerdict:
    if N < start:
        return RangeVerdict(tag, N, tail, INCONCLUSIVE, start=start)
    upper = N if tail is None else min(N, tail)
    dims = {}
    for n in range(start, upper + 1):
        dims[n] = dim_at(n)
        if dims[n]:
            return RangeVerdict(tag, N, tail, VIOLATED, (n, dims[n]), dims, start)
    verdict = SATISFIED if tail is not None and tail <= N else INCONCLUSIVE
    return RangeVerdict(tag, N, tail, verdict, None, dims, start)


# ---------------------------------------------------------------------------
# Kadeishvili-type hypotheses


def check_kadeishvili_algebra(hc: ComplexWindow, N: int) -> RangeVerdict:
    """HH^{n+2,-n} = 0 for n >= 1."""
    tail = tail_certificate("HC", _spaces(hc), 2)
    return _run("kadeishvili-algebra", N, 1, tail, lambda n: hc.cohomology_dim(n + 2, -n))


def check_kadeishvili_bimodule(bc: BimoduleComplexes, N: int) -> RangeVerdict:
    """Ext^{n+1,-n}(M, M) = 0 for n >= 1."""
    tail = tail_certificate("BC", _spaces(bc.HCE), 1)
    return _run("kadeishvili-bimodule", N, 1, tail, lambda n: bc.BC.cohomology_dim(n + 1, -n))


def check_kadeishvili_simultaneous(bc: BimoduleComplexes, N: int) -> RangeVerdict:
    """HHE^{n+2,-n}(A, M) = 0 for n >= 1."""
    tail = tail_certificate("HCE", _spaces(bc.HCE), 2)
    return _run("kadeishvili-simultaneous", N, 1, tail, lambda n: bc.HCE.cohomology_dim(n + 2, -n))


# ---------------------------------------------------------------------------
# Massey-type hypotheses


def _massey_check(tag, kind, inputs, massey_class, N, shape, a, char2_policy):
    mc = build_massey_complex(kind, inputs, massey_class, None, char2_policy)
    tail = tail_certificate(shape, _spaces(mc.base if kind != "bimodule" else inputs.HCE), a)
    start = mc.d + 1
    return _run(tag, N, start, tail, lambda n: mc.cohomology_dim(n + a, -n))


def check_theoremB(hc: ComplexWindow, massey_class, N: int, char2_policy: str = "special") -> RangeVerdict:
    """Hochschild-Massey cohomology HMH^{n+2,-n} = 0 for n > d."""
    return _massey_check("theoremB", "hochschild", hc, massey_class, N, "HC", 2, char2_policy)


def check_theoremB_pair(bc: BimoduleComplexes, massey_class, N: int,
                        char2_policy: str = "special") -> RangeVerdict:
    """Bimodule Hochschild-Massey cohomology vanishes at (n + 2, -n) for n > d."""
    return _massey_check("theoremB-pair", "pair", bc, massey_class, N, "HCE", 2, char2_policy)


def check_massey_bimodule(bc: BimoduleComplexes, massey_class, N: int) -> RangeVerdict:
    """Massey bimodule cohomology vanishes at (n + 1, -n) for n > d."""
    return _massey_check("massey-bimodule", "bimodule", bc, massey_class, N, "BC", 1, "bracket")


def check_existence(inputs, massey_class, N: int, kind: str = "hochschild",
                    char2_policy: str = "special") -> RangeVerdict:
    """Massey cohomology vanishes at (n + 3, -n) for n > d."""
    if kind not in ("hochschild", "pair"):
        raise ValueError("existence checks are for the hochschild or pair kind")
    shape = "HC" if kind == "hochschild" else "HCE"
    return _massey_check(f"existence-{kind}", kind, inputs, massey_class, N, shape, 3, char2_policy)


THEOREMS = ("kadeishvili-algebra", "kadeishvili-bimodule", "kadeishvili-simultaneous",
            "theoremB", "theoremB-pair", "massey-bimodule", "existence-hochschild", "existence-pair")
