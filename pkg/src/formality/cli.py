"""Command-line front end.

    formality <command> INPUT [options]

INPUT is a JSON document (``-`` reads stdin).  Reports go to stdout,
diagnostics to stderr.  Exit codes: 0 computed, 1 mathematical failure,
2 input error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import jsonschema

from . import __version__
from .ainfty import (AkAlgebra, AkBimodule, StructureError, bimodule_universal_massey,
                     combined_pair_residuals, effective_d, universal_massey, verify_ak_algebra,
                     verify_ak_bimodule)
from .braces import MultiplicationError, bracket, brace
from .complexes import (ModuleAxiomError, NotACocycle, WindowError, assemble_bimodule_complexes,
                        hochschild_complex)
from .core import Field, FieldError
from .criteria import (THEOREMS, check_existence, check_kadeishvili_algebra,
                       check_kadeishvili_bimodule, check_kadeishvili_simultaneous,
                       check_massey_bimodule, check_theoremB, check_theoremB_pair)
from .graded import DegreeWindow, GradedSpace
from .massey import MasseyError, build_massey_complex
from .obstruction import ExtensionError, extend_loop, obstruction_for
from .operad import Cochain, EndomorphismOperad, OperadError
from .schema import INPUT_SCHEMA

EXIT_OK, EXIT_MATH, EXIT_INPUT = 0, 1, 2


class InputError(ValueError):
    def __init__(self, where: str, msg: str):
        super().__init__(f"{where}: {msg}")
        self.where = where


def json_path(parts) -> str:
    out = "$"
    for p in parts:
        out += f"[{p}]" if isinstance(p, int) else f".{p}"
    return out


# ---------------------------------------------------------------------------
# input documents


@dataclass
class Problem:
    field: Field
    A: GradedSpace
    products: dict
    M: Optional[GradedSpace] = None
    left: Optional[dict] = None
    right: Optional[dict] = None
    algebra_ops: Dict[int, list] = field(default_factory=dict)
    bimodule_ops: Dict[int, list] = field(default_factory=dict)
    task: dict = field(default_factory=dict)
    digest: str = ""

    @property
    def max_arity(self) -> int:
        return max([2, *self.algebra_ops, *self.bimodule_ops])


def _field_of(doc, override: Optional[str]) -> Field:
    try:
        if override:
            return Field.parse(override)
        f = doc["field"]
        if isinstance(f, dict):
            return Field(f["Fp"])
        return Field.parse(f)
    except FieldError as e:
        raise InputError("--field" if override else "$.field", str(e)) from None


def _scalar(F: Field, value, where: str):
    try:
        return F(value)
    except (FieldError, ValueError, ZeroDivisionError) as e:
        raise InputError(where, f"bad scalar {value!r}: {e}") from None


def _space(doc, name, F: Field, where: str) -> GradedSpace:
    if name not in doc["spaces"]:
        raise InputError(where, f"unknown space {name!r}")
    rows = doc["spaces"][name]
    seen = set()
    for i, (lab, _) in enumerate(rows):
        if lab in seen:
            raise InputError(json_path(["spaces", name, i, 0]), f"duplicate label {lab!r}")
        seen.add(lab)
    return GradedSpace(tuple((lab, deg) for lab, deg in rows), F)


def _resolve(space: GradedSpace, lab, where: str):
    if lab not in space.labels:
        raise InputError(where, f"unknown label {lab!r}")
    return space.degree_of(lab)


def _bilinear(rows, S1: GradedSpace, S2: GradedSpace, T: GradedSpace, F: Field, base: list) -> dict:
    table: dict = {}
    for i, (a, b, c, v) in enumerate(rows):
        da = _resolve(S1, a, json_path(base + [i, 0]))
        db = _resolve(S2, b, json_path(base + [i, 1]))
        dc = _resolve(T, c, json_path(base + [i, 2]))
        if da + db != dc:
            raise InputError(json_path(base + [i]), f"degrees {da} + {db} != {dc}")
        x = _scalar(F, v, json_path(base + [i, 3]))
        slot = table.setdefault((a, b), {})
        slot[c] = F.add(slot.get(c, F.zero), x)
    return table


def load_document(raw: bytes, field_override: Optional[str] = None) -> Problem:
    try:
        doc = json.loads(raw.decode("utf-8"))
    except UnicodeDecodeError as e:
        raise InputError("$", f"input is not UTF-8: {e}") from None
    except json.JSONDecodeError as e:
        raise InputError(f"line {e.lineno} column {e.colno}", e.msg) from None
    errors = sorted(jsonschema.Draft202012Validator(INPUT_SCHEMA).iter_errors(doc),
                    key=lambda e: (list(map(str, e.absolute_path)), e.message))
    if errors:
        e = errors[0]
        raise InputError(json_path(e.absolute_path), e.message)
    F = _field_of(doc, field_override)
    alg = doc["algebra"]
    A = _space(doc, alg["space"], F, "$.algebra.space")
    products = _bilinear(alg["products"], A, A, A, F, ["algebra", "products"])
    prob = Problem(F, A, products, task=dict(doc.get("task", {})),
                   digest=hashlib.sha256(raw).hexdigest())
    if "bimodule" in doc:
        b = doc["bimodule"]
        M = _space(doc, b["space"], F, "$.bimodule.space")
        prob.M = M
        prob.left = _bilinear(b["left"], A, M, M, F, ["bimodule", "left"])
        prob.right = _bilinear(b["right"], M, A, M, F, ["bimodule", "right"])
    ops = doc.get("higher_ops", {})
    for n_text, rows in sorted(ops.get("algebra", {}).items()):
        n = int(n_text)
        prob.algebra_ops[n] = _op_rows(rows, n, A, A, F, None, ["higher_ops", "algebra", n_text])
    if ops.get("bimodule"):
        if prob.M is None:
            raise InputError("$.higher_ops.bimodule", "bimodule operations need a bimodule")
        for n_text, rows in sorted(ops["bimodule"].items()):
            n = int(n_text)
            prob.bimodule_ops[n] = _op_rows(rows, n, A, prob.M, F, True, ["higher_ops", "bimodule", n_text])
    return prob


def _op_rows(rows, n, A, M, F, signed, base) -> list:
    out = []
    for i, row in enumerate(rows):
        where = json_path(base + [i])
        if signed:
            sig, *labels = row
            if len(sig) != n or sig.count("M") != 1:
                raise InputError(json_path(base + [i, 0]), f"signature {sig!r} needs {n} letters with one M")
        else:
            sig, labels = "A" * n, list(row)
        if len(labels) != n + 2:
            raise InputError(where, f"expected {n} inputs, an output and a coefficient")
        *ins, outl, c = labels
        total = 0
        for j, (s, lab) in enumerate(zip(sig, ins)):
            total += _resolve(M if s == "M" else A, lab, json_path(base + [i, j + (1 if signed else 0)]))
        dout = _resolve(M if signed else A, outl, json_path(base + [i, n + (1 if signed else 0)]))
        if dout - total != 2 - n:
            raise InputError(where, f"operation has degree {dout - total}, expected {2 - n}")
        coeff = _scalar(F, c, json_path(base + [i, len(row) - 1]))
        out.append((sig, *ins, outl, coeff))
    return out


# ---------------------------------------------------------------------------
# structures


def _algebra(prob: Problem, k: int) -> AkAlgebra:
    E = EndomorphismOperad(prob.A)
    ops = {}
    for n, rows in prob.algebra_ops.items():
        if n > k:
            raise InputError(f"$.higher_ops.algebra.{n}", f"operation beyond the truncation k = {k}")
        ops[n] = E.from_map(n, 2 - n, [r[1:] for r in rows])
    return AkAlgebra(prob.A, prob.products, k, ops, E)


def _pair(prob: Problem, k_alg: int, k_mod: int, complexes=None):
    if prob.M is None:
        raise InputError("$.bimodule", "this command needs a bimodule")
    a = _algebra(prob, k_alg)
    if complexes is None:
        complexes = assemble_bimodule_complexes(prob.A, prob.products, prob.M, prob.left, prob.right)
    L = complexes.operad
    ops = {}
    for n, rows in prob.bimodule_ops.items():
        if n > k_mod:
            raise InputError(f"$.higher_ops.bimodule.{n}", f"operation beyond the truncation k = {k_mod}")
        ops[n] = L.from_signature_rows(n, 2 - n, rows)
    m = AkBimodule(a, prob.M, prob.left, prob.right, k_mod, ops, L, complexes)
    return a, m


def _cochain_rows(x: Cochain) -> list:
    op = x.operad
    F = x.field
    rows = []
    for (ins, out), c in sorted(x.table.items()):
        labels = [op.labels[i] for i in ins] + [op.labels[out], F.format(c)]
        if hasattr(op, "signature"):
            labels = [op.signature((ins, out))] + [l.split(":", 1)[1] for l in labels[:-1]] + labels[-1:]
        rows.append(labels)
    return rows


def _sign_audit(m2: Cochain) -> dict:
    op = m2.operad
    sq = brace(m2, [m2]).is_zero()
    br = bracket(m2, m2).is_zero()
    if op.space.dim == 0:
        # no unit on the zero space; the check is vacuous
        unit = "n/a"
    else:
        unit = bracket(m2, op.identity()) == m2
    return {"m2_brace_m2_zero": sq, "bracket_m2_m2_zero": br, "d_identity_is_m2": unit,
            "status": "pass" if sq and br and unit else "fail"}


# ---------------------------------------------------------------------------
# commands


@dataclass
class Options:
    window: Optional[DegreeWindow]
    k: Optional[int]
    target_arity: Optional[int]
    sparse_d: int
    theorem: Optional[str]
    mode: str
    complex: str
    kind: str
    range: Optional[int]


def _options(args, prob: Problem) -> Options:
    t = prob.task
    wtext = args.window or t.get("window")
    try:
        window = DegreeWindow.parse(wtext) if wtext else None
    except ValueError as e:
        raise InputError("--window" if args.window else "$.task.window", str(e)) from None
    pick = lambda flag, key, default=None: flag if flag is not None else t.get(key, default)
    return Options(window, pick(args.k, "k"), pick(args.target_arity, "target_arity"),
                   pick(args.sparse_d, "sparse_d", 0), pick(args.theorem, "theorem"),
                   pick(args.mode, "mode", "algebra"), pick(args.complex, "complex", "HC"),
                   pick(args.kind, "kind", "hochschild"), pick(args.range, "range"))


def _meaningful(K: int, d: int) -> int:
    while (K - 2) % d:
        K += 1
    return K


def cmd_verify(prob: Problem, o: Options):
    k = o.k or prob.max_arity + 1
    k = max(k, 3)
    a = _algebra(prob, k)
    rep = verify_ak_algebra(a, o.sparse_d or None)
    result = {"k": k, "algebra": rep.summary()}
    ok = rep.valid
    m2 = a.m2
    if prob.M is not None:
        a, m = _pair(prob, k, k)
        brep = verify_ak_bimodule(m, o.sparse_d or None)
        pair = combined_pair_residuals(a, m)
        result["bimodule"] = brep.summary()
        result["pair_decomposes"] = pair.decomposes
        ok = ok and brep.valid
        m2 = m.m2_full
    result["valid"] = ok
    return result, m2, ok


def cmd_cohomology(prob: Problem, o: Options):
    if o.window is None:
        raise InputError("--window", "cohomology needs a window")
    if o.complex == "HC":
        cx = hochschild_complex(prob.A, prob.products, o.window)
    else:
        if prob.M is None:
            raise InputError("$.bimodule", f"complex {o.complex} needs a bimodule")
        bc = assemble_bimodule_complexes(prob.A, prob.products, prob.M, prob.left, prob.right, o.window)
        cx = bc.BC if o.complex == "BC" else bc.HCE
    dims, partial, cochains = {}, [], {}
    for p, q in o.window.bidegrees():
        cochains[f"{p},{q}"] = cx.dim(p, q)
        if cx.is_interior(p, q):
            dims[f"{p},{q}"] = cx.cohomology_dim(p, q)
        else:
            partial.append(f"{p},{q}")
    defect = cx.d_squared_defect()
    result = {"complex": o.complex, "dims": dims, "partial": partial, "cochain_dims": cochains,
              "d_squared_zero": defect is None}
    return result, cx.m2, defect is None


def _detect_d(prob: Problem, o: Options, with_module: bool) -> int:
    degs = list(prob.A.degrees)
    if with_module:
        if prob.M is None:
            raise InputError("$.bimodule", f"mode {o.mode} needs a bimodule")
        degs += prob.M.degrees
    probe = GradedSpace(tuple((str(i), d) for i, d in enumerate(degs)), prob.field)
    try:
        return effective_d(o.sparse_d or None, probe)
    except StructureError as e:
        raise InputError("--sparse-d", str(e)) from None


def _structure(prob: Problem, o: Options):
    """The structure for obstruct/extend, at a meaningful truncation."""
    d = _detect_d(prob, o, o.mode != "algebra")
    K = o.k or _meaningful(max(prob.max_arity, 3), d)
    if o.mode == "algebra":
        return _algebra(prob, K), d
    if o.mode == "pair":
        return _pair(prob, K, K), d
    return _pair(prob, max(K + 1, max([2, *prob.algebra_ops])), K), d


def cmd_obstruct(prob: Problem, o: Options):
    s, d = _structure(prob, o)
    rep = obstruction_for(o.mode, s, d, o.window)
    result = rep.summary()
    result["reduced_representative"] = _cochain_rows(rep.cocycle)
    result["full_representative"] = _cochain_rows(rep.full)
    m2 = s.m2 if o.mode == "algebra" else s[1].m2_full
    return result, m2, True


def cmd_extend(prob: Problem, o: Options):
    if o.target_arity is None:
        raise InputError("--target-arity", "extend needs a target arity")
    s, d = _structure(prob, o)
    trace = extend_loop(s, o.target_arity, o.mode, d)
    result = trace.summary()
    if o.mode == "algebra":
        ops = trace.structure.ops
        result["operations"] = {"algebra": {str(n): _cochain_rows(x) for n, x in sorted(ops.items())}}
        result["k"] = trace.structure.k
        m2 = trace.structure.m2
    else:
        a, m = trace.structure
        result["operations"] = {"algebra": {str(n): _cochain_rows(x) for n, x in sorted(a.ops.items())},
                                "bimodule": {str(n): _cochain_rows(x) for n, x in sorted(m.ops.items())}}
        result["k"] = m.k
        m2 = m.m2_full
    return result, m2, True


def _massey_inputs(prob: Problem, o: Options, kind: str):
    """(inputs, class cochain, multiplication) for a Massey computation."""
    if kind == "hochschild":
        d = _detect_d(prob, o, False)
        a = _algebra(prob, max(o.k or 0, d + 3, max([2, *prob.algebra_ops])))
        c = universal_massey(a, d)
        return a.hochschild(), c, a.m2
    d = _detect_d(prob, o, True)
    k = max(o.k or 0, d + 3, prob.max_arity)
    a, m = _pair(prob, k, k)
    c = bimodule_universal_massey(a, m, d)
    return m.complexes, c, m.m2_full


def cmd_massey(prob: Problem, o: Options):
    if o.window is None:
        raise InputError("--window", "massey needs a window")
    inputs, c, m2 = _massey_inputs(prob, o, o.kind)
    mc = build_massey_complex(o.kind, inputs, c, o.window)
    dims, partial, base = {}, [], {}
    for s, t in o.window.bidegrees():
        key = f"{s},{t}"
        if mc.is_interior(s, t):
            dims[key] = mc.cohomology_dim(s, t)
            base[key] = mc.base_dim(s, t)
        else:
            partial.append(key)
    result = {"kind": o.kind, "sparse_d": mc.d, "floor": mc.floor,
              "class_bidegree": list(c.bidegree), "class_is_zero": c.is_zero(),
              "special_bidegree": None if mc.special is None else list(mc.special),
              "dims": dims, "base_dims": base, "partial": partial}
    return result, m2, True


def cmd_check(prob: Problem, o: Options):
    if o.theorem not in THEOREMS:
        raise InputError("--theorem", f"unknown theorem tag {o.theorem!r}; one of {', '.join(THEOREMS)}")
    if o.range is None:
        raise InputError("--range", "check needs a range N")
    N = o.range
    tag = o.theorem
    if tag == "kadeishvili-algebra":
        hc = hochschild_complex(prob.A, prob.products)
        return check_kadeishvili_algebra(hc, N).summary(), hc.m2, True
    if tag in ("kadeishvili-bimodule", "kadeishvili-simultaneous"):
        if prob.M is None:
            raise InputError("$.bimodule", f"{tag} needs a bimodule")
        bc = assemble_bimodule_complexes(prob.A, prob.products, prob.M, prob.left, prob.right)
        f = check_kadeishvili_bimodule if tag == "kadeishvili-bimodule" else check_kadeishvili_simultaneous
        return f(bc, N).summary(), bc.HCE.m2, True
    if tag in ("theoremB", "existence-hochschild"):
        inputs, c, m2 = _massey_inputs(prob, o, "hochschild")
        v = check_theoremB(inputs, c, N) if tag == "theoremB" else check_existence(inputs, c, N)
        return v.summary(), m2, True
    inputs, c, m2 = _massey_inputs(prob, o, "pair")
    if tag == "theoremB-pair":
        v = check_theoremB_pair(inputs, c, N)
    elif tag == "massey-bimodule":
        v = check_massey_bimodule(inputs, c, N)
    else:
        v = check_existence(inputs, c, N, kind="pair")
    return v.summary(), m2, True


COMMANDS = {"verify": cmd_verify, "cohomology": cmd_cohomology, "obstruct": cmd_obstruct,
            "extend": cmd_extend, "massey": cmd_massey, "check": cmd_check}


# ---------------------------------------------------------------------------
# output


def _flatten(obj, prefix=""):
    if isinstance(obj, dict):
        for k in sorted(obj):
            yield from _flatten(obj[k], f"{prefix}.{k}" if prefix else str(k))
    elif isinstance(obj, list) and obj and all(isinstance(x, (list, dict)) for x in obj):
        for i, x in enumerate(obj):
            yield from _flatten(x, f"{prefix}[{i}]")
    else:
        yield prefix, json.dumps(obj, sort_keys=True)


def render(report: dict, emit: str) -> str:
    if emit == "json":
        return json.dumps(report, sort_keys=True, indent=2) + "\n"
    res = report.get("result", {})
    lines = []
    if isinstance(res, dict) and "dims" in res and report["command"] in ("cohomology", "massey"):
        lines.append(f"{'p':>4} {'q':>4} {'dim':>6}")
        for key in sorted(res["dims"], key=lambda s: tuple(map(int, s.split(",")))):
            p, q = key.split(",")
            lines.append(f"{p:>4} {q:>4} {res['dims'][key]:>6}")
        rest = {k: v for k, v in report.items() if k != "result"}
    else:
        rest = report
    pairs = list(_flatten(rest))
    width = max((len(k) for k, _ in pairs), default=0)
    lines += [f"{k:<{width}}  {v}" for k, v in pairs]
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="formality", description="Hochschild-type cohomology, "
                                 "A-infinity obstructions and vanishing-range checks for finite graded algebras.")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("input", help="JSON input document, or - for stdin")
        p.add_argument("--window", help="p_min:p_max,q_min:q_max")
        p.add_argument("--field", help="Q or Fp:<p>; overrides the document")
        p.add_argument("--k", type=int)
        p.add_argument("--target-arity", type=int)
        p.add_argument("--sparse-d", type=int, help="sparsity; 0 detects it")
        p.add_argument("--theorem", help=", ".join(THEOREMS))
        p.add_argument("--mode", choices=["algebra", "pair", "bimodule"])
        p.add_argument("--complex", choices=["HC", "BC", "HCE"])
        p.add_argument("--kind", choices=["hochschild", "pair", "bimodule"])
        p.add_argument("--range", type=int, help="largest n to compute for check")
        p.add_argument("--emit", choices=["json", "table"], default="json")
    return ap


def _read(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    with open(path, "rb") as fh:
        return fh.read()


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        raw = _read(args.input)
    except OSError as e:
        print(f"error: cannot read {args.input}: {e.strerror}", file=sys.stderr)
        return EXIT_INPUT
    report = {"command": args.command, "input_sha256": hashlib.sha256(raw).hexdigest()}
    try:
        prob = load_document(raw, args.field)
        o = _options(args, prob)
        report["field"] = str(prob.field)
        report["window"] = None if o.window is None else str(o.window)
        result, m2, ok = COMMANDS[args.command](prob, o)
    except InputError as e:
        print(f"input error at {e}", file=sys.stderr)
        return EXIT_INPUT
    except WindowError as e:
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except (StructureError, ModuleAxiomError, MultiplicationError, MasseyError, NotACocycle,
            ExtensionError, OperadError) as e:
        report["status"] = "failure"
        report["error"] = {"type": type(e).__name__, "message": str(e)}
        w = getattr(e, "witness", None)
        if isinstance(w, Cochain):
            report["error"]["witness"] = _cochain_rows(w)
        elif w is not None:
            report["error"]["witness"] = w if isinstance(w, (str, int)) else list(w)
        report["sign_audit"] = _sign_audit(EndomorphismOperad(prob.A).multiplication(prob.products))
        print(f"error: {e}", file=sys.stderr)
        sys.stdout.write(render(report, args.emit))
        return EXIT_MATH
    report["sign_audit"] = _sign_audit(m2)
    report["result"] = result
    report["status"] = "ok" if ok else "failure"
    sys.stdout.write(render(report, args.emit))
    return EXIT_OK if ok else EXIT_MATH


if __name__ == "__main__":
    sys.exit(main())
