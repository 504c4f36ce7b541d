"""Independent dense oracles built on the classical bar-complex formulas.

The dimension oracles do not use the brace machinery; ranks come from sympy.
``brace_relation_rhs`` expands the right side of the brace relation term by term.
"""

from itertools import product

import sympy

from formality.braces import brace


def _mult(prod, a, b):
    return prod.get((a, b), {})


def classical_hochschild_dims(degs, prod, p, q, shape=None):
    """dim H^{p,q} of Hom(A^{⊗p}, A)^q under the classical graded differential.

    ``degs`` maps labels to degrees, ``prod`` is ``{(a, b): {c: coeff}}``.
    ``shape`` optionally restricts keys (a predicate on (inputs, out)).
    """
    def basis(n):
        out = []
        for ins in product(sorted(degs), repeat=n):
            s = sum(degs[a] for a in ins)
            for o in sorted(degs):
                if degs[o] - s == q and (shape is None or shape(ins, o)):
                    out.append((ins, o))
        return out

    def dmat(n):
        src, dst = basis(n), basis(n + 1)
        idx = {k: i for i, k in enumerate(dst)}
        M = sympy.zeros(len(dst), len(src))
        for j, (fin, fout) in enumerate(src):
            # evaluate δf on every tuple of n+1 basis elements
            for ins in product(sorted(degs), repeat=n + 1):
                val = {}

                def add(o, c):
                    val[o] = val.get(o, 0) + c

                a1 = ins[0]
                if tuple(ins[1:]) == fin:
                    for o, c in _mult(prod, a1, fout).items():
                        add(o, (-1) ** (degs[a1] * q) * c)
                for i in range(1, n + 1):
                    for ab, c in _mult(prod, ins[i - 1], ins[i]).items():
                        if ins[:i - 1] + (ab,) + ins[i + 1:] == fin:
                            add(fout, (-1) ** i * c)
                if tuple(ins[:-1]) == fin:
                    for o, c in _mult(prod, fout, ins[-1]).items():
                        add(o, (-1) ** (n + 1) * c)
                for o, c in val.items():
                    if c and (ins, o) in idx:
                        M[idx[(ins, o)], j] += c
                    elif c:
                        raise AssertionError("classical differential left the component")
        return M, len(src), len(dst)

    dout, n, _ = dmat(p)
    r_out = dout.rank() if dout.shape[0] and dout.shape[1] else 0
    if p == 0:
        r_in = 0
    else:
        din, _, _ = dmat(p - 1)
        r_in = din.rank() if din.shape[0] and din.shape[1] else 0
    return n - r_out - r_in


def square_zero_extension(A_degs, prod, M_degs, left, right):
    """Labels tagged by summand, and the product table of A ⋉ M."""
    degs = {("A", a): d for a, d in A_degs.items()}
    degs.update({("M", m): d for m, d in M_degs.items()})
    table = {}
    for (a, b), res in prod.items():
        table[(("A", a), ("A", b))] = {("A", c): v for c, v in res.items()}
    for (a, m), res in left.items():
        table[(("A", a), ("M", m))] = {("M", c): v for c, v in res.items()}
    for (m, a), res in right.items():
        table[(("M", m), ("A", a))] = {("M", c): v for c, v in res.items()}
    return degs, table


def ideal_shape(ins, out):
    return out[0] == "M" and sum(1 for a in ins if a[0] == "M") == 1


def _placements(p, q):
    """All 0 <= i1 <= j1 <= ... <= ip <= jp <= q."""
    def rec(s, lo):
        if s == p:
            yield ()
            return
        for i in range(lo, q + 1):
            for j in range(i, q + 1):
                for rest in rec(s + 1, j):
                    yield ((i, j),) + rest
    return rec(0, 0)


def brace_relation_rhs(x, ys, zs):
    total = None
    for pl in _placements(len(ys), len(zs)):
        args = []
        prev = 0
        sign = 0
        for y, (i, j) in zip(ys, pl):
            args += zs[prev:i]
            args.append(brace(y, zs[i:j]))
            sign += sum(y.shifted_degree * z.shifted_degree for z in zs[:i])
            prev = j
        args += zs[prev:]
        term = brace(x, args)
        if sign % 2:
            term = -term
        total = term if total is None else total + term
    return total
