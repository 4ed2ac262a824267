"""``subwalk`` command-line front end.

Every report is one canonical JSON document on stdout.  Input problems exit
with status 2 and print a single ``error:<code>:<message>`` line on stderr.
``decide`` and ``dstcon`` exit with the decision bit (0 or 1).  Input bit
strings list ``x1`` first.
"""

from __future__ import annotations

import argparse
import math
import sys
from collections.abc import Sequence
from pathlib import Path

from . import __version__
from .compose import CompositionError, CompositionPlan, formula_compose, switch_compose
from .dnc import (
    DigraphInstance,
    DimensionOverflowError,
    RecursionSpecError,
    bfs_reachability,
    build_dstcon_graph,
    classical_savitch,
    classical_savitch_time,
    cost_only_spec,
    cost_recursion,
    dstcon_cost_table,
    dstcon_spec,
    round_up_power_of_two,
)
from .formula import FormulaBalanceError, FormulaSyntaxError, parse_formula
from .gadgets import build_and, build_or
from .graphcore import (
    MissingInputError,
    SubspaceGraph,
    WitnessError,
    check_witness,
    complexity,
    decide_exact,
    min_negative_witness,
    min_positive_witness,
    realize,
)
from .jsonio import (
    DNC_SPEC_SCHEMA,
    REPORT_SCHEMA,
    SchemaError,
    decode_float,
    digraph_from_json,
    dumps,
    encode_float,
    graph_from_json,
    graph_to_json,
    loads,
)
from .numcore import base_tolerance, tolerance
from .phasesim import MAX_C_PLUS, PEConfig, calibrated_bits, pe_acceptance_prob

EXIT_INPUT_ERROR = 2


class InputError(Exception):
    """Bad user input; ``code`` is a short machine-readable category."""

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise InputError("usage", message)


# --------------------------------------------------------------------------
# Input helpers


def parse_bits(text: str) -> dict[int, int]:
    if any(ch not in "01" for ch in text):
        raise InputError(
            "input", f"input must be a string of 0/1 characters, got {text!r}"
        )
    return {i: int(ch) for i, ch in enumerate(text)}


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError("io", f"cannot read {path}: {exc.strerror}") from None


def _formula_graph(text: str, weighting: str) -> SubspaceGraph:
    try:
        ast = parse_formula(text)
        return formula_compose(ast, weighting=weighting).graph
    except FormulaSyntaxError as exc:
        raise InputError("syntax", f"offset={exc.offset}: {exc}") from None
    except FormulaBalanceError as exc:
        raise InputError("balance", str(exc)) from None


def _load_graph(args) -> SubspaceGraph:
    if getattr(args, "formula", None) is not None:
        return _formula_graph(args.formula, args.weighting)
    return graph_from_json(_read(args.graph))


def _realize_checked(g: SubspaceGraph, bits: dict[int, int]):
    missing = [v for v in g.variables if v not in bits]
    if missing:
        raise InputError(
            "input",
            f"input has {len(bits)} bits but the graph reads x{max(missing) + 1}",
        )
    return realize(g, bits)


def _report(command: str, dim: int | None = None, **fields) -> dict:
    doc = {
        "schema": REPORT_SCHEMA,
        "command": command,
        "baseTolerance": base_tolerance(),
    }
    if dim is not None:
        doc["dim"] = dim
        doc["tolerance"] = tolerance(dim)
    doc.update(fields)
    return doc


def _emit(doc, out: str | None = None) -> None:
    text = doc if isinstance(doc, str) else dumps(doc)
    if out:
        try:
            Path(out).write_text(text)
        except OSError as exc:
            raise InputError("io", f"cannot write {out}: {exc.strerror}") from None
    else:
        sys.stdout.write(text)


def _add_source(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--formula", help="formula text, e.g. '(x1&x2)|!x3'")
    src.add_argument("--graph", help="graph JSON file")
    p.add_argument(
        "--weighting",
        choices=("unit", "ledger"),
        default="unit",
        help="gadget weights for formulas: unit (default) or cost-balanced",
    )


# --------------------------------------------------------------------------
# Commands


def cmd_build(args) -> int:
    if args.formula is not None:
        g = _formula_graph(args.formula, args.weighting)
    else:
        kind, _, d = args.gadget.partition(":")
        if kind not in ("or", "and") or not d.isdigit() or int(d) < 1:
            raise InputError(
                "usage", f"--gadget takes or:D or and:D, got {args.gadget!r}"
            )
        g = (build_or if kind == "or" else build_and)(int(d))
    _emit(graph_to_json(g), args.out)
    return 0


def cmd_decide(args) -> int:
    g = _load_graph(args)
    bit = decide_exact(_realize_checked(g, parse_bits(args.input)))
    sys.stdout.write(f"{bit}\n")
    return bit


def cmd_witness(args) -> int:
    g = _load_graph(args)
    r = _realize_checked(g, parse_bits(args.input))
    try:
        w = min_positive_witness(r) if args.kind == "pos" else min_negative_witness(r)
    except WitnessError as exc:
        raise InputError("wrong-kind", str(exc)) from None
    vector = [
        {"label": str(lab), "re": float(a.real), "im": float(a.imag)}
        for lab, a in w.vector.support().items()
    ]
    _emit(
        _report(
            "witness",
            g.dim,
            kind=w.kind,
            normSq=w.norm_sq,
            provenance=w.provenance,
            checked=check_witness(r, w),
            vector=vector,
        )
    )
    return 0


def cmd_complexity(args) -> int:
    g = _load_graph(args)
    try:
        c = complexity(g)
    except ValueError as exc:
        raise InputError("too-large", str(exc)) from None
    led = g.ledger
    _emit(
        _report(
            "complexity",
            g.dim,
            wPlusHat=c.w_plus_hat,
            wMinusHat=c.w_minus_hat,
            cHat=c.c_hat,
            scaling=g.scaling,
            ledger={
                "cPlus": encode_float(led.c_plus),
                "cMinus": encode_float(led.c_minus),
                "c": encode_float(led.c),
                "basisTime": led.basis_time,
                "logDim": led.log_dim,
            },
        )
    )
    return 0


def _parse_inner(spec: str) -> tuple[tuple[str, ...], str]:
    key, sep, path = spec.partition("=")
    if not sep or not key or not path:
        raise InputError("usage", f"--inner takes EDGE=FILE, got {spec!r}")
    return tuple(key.split("/")), path


def cmd_compose(args) -> int:
    outer = graph_from_json(_read(args.outer))
    inner = {}
    for item in args.inner:
        key, path = _parse_inner(item)
        if key in inner:
            raise InputError("usage", f"edge {'/'.join(key)} given twice")
        inner[key] = graph_from_json(_read(path))
    try:
        plan = (
            CompositionPlan.with_identity(outer, inner)
            if args.fill_identity
            else CompositionPlan(outer, inner)
        )
        composed = switch_compose(plan)
    except CompositionError as exc:
        raise InputError("composition", str(exc)) from None
    _emit(graph_to_json(composed), args.out)
    return 0


def cmd_pe(args) -> int:
    g = _load_graph(args)
    r = _realize_checked(g, parse_bits(args.input))
    c_minus = (
        max(1.0, g.scaling * g.ledger.c_minus)
        if math.isfinite(g.ledger.c_minus)
        else 1.0
    )
    bits = args.bits if args.bits is not None else calibrated_bits(c_minus)
    try:
        cfg = PEConfig(bits, args.c_plus, c_minus)
    except ValueError as exc:
        raise InputError("usage", str(exc)) from None
    p0 = pe_acceptance_prob(r, cfg)
    _emit(
        _report(
            "pe",
            g.dim,
            bits=bits,
            threshold=cfg.threshold,
            p0=p0,
            decision=int(p0 >= cfg.threshold),
            exact=decide_exact(r),
        )
    )
    return 0


def _cost_rows(table) -> list[dict]:
    return [
        {
            "ell": row.ell,
            "n": row.n,
            "t": row.t,
            "cMinus": row.c_minus,
            "cPlus": row.c_plus,
        }
        for _, row in sorted(table.items())
    ]


def cmd_dstcon(args) -> int:
    inst: DigraphInstance = digraph_from_json(_read(args.graph))
    ell = round_up_power_of_two(inst.n if args.ell is None else args.ell)
    try:
        g = build_dstcon_graph(inst, ell, max_dim=args.max_dim)
    except DimensionOverflowError as exc:
        raise InputError("too-large", str(exc)) from None
    quantum = decide_exact(realize(g, inst.assignment()))
    _emit(
        _report(
            "dstcon",
            g.dim,
            n=inst.n,
            s=inst.s,
            t=inst.t,
            ell=ell,
            quantum=quantum,
            savitch=classical_savitch(inst, ell),
            bfs=bfs_reachability(inst, ell),
            savitchQueries=classical_savitch_time(inst.n, ell),
            costTable=_cost_rows(dstcon_cost_table(inst.n, ell)),
        )
    )
    return quantum


_SIZE_MAPS = {
    "div": lambda by: lambda v: v // by,
    "sub": lambda by: lambda v: v - by,
    "id": lambda by: lambda v: v,
}


def _size_map(doc, name: str):
    if doc is None:
        return _SIZE_MAPS["id"](0)
    if not isinstance(doc, dict):
        raise SchemaError(f"{name} must be an object")
    op, by = doc.get("op"), doc.get("by", 1)
    if op not in _SIZE_MAPS or not isinstance(by, int) or (op != "id" and by < 1):
        raise SchemaError(
            f"{name} must be {{'op': 'div'|'sub'|'id', 'by': positive int}}"
        )
    if op == "div" and by < 2:
        raise SchemaError(f"{name}: division must be by at least 2")
    return _SIZE_MAPS[op](by)


def spec_from_doc(doc, n: int):
    """Cost spec from JSON: ``{"problem": "dstcon"}`` or an explicit recursion."""
    if not isinstance(doc, dict) or doc.get("schema") != DNC_SPEC_SCHEMA:
        raise SchemaError(f"schema must be {DNC_SPEC_SCHEMA!r}")
    if doc.get("problem") == "dstcon":
        return dstcon_spec(n)
    if "phiPrime" not in doc:
        raise SchemaError("spec needs 'problem': 'dstcon' or a 'phiPrime' formula")
    try:
        phi = parse_formula(doc["phiPrime"])
    except FormulaSyntaxError as exc:
        raise InputError("syntax", f"phiPrime offset={exc.offset}: {exc}") from None
    ell0 = doc.get("ell0", 1)
    if not isinstance(ell0, int) or ell0 < 0:
        raise SchemaError("ell0 must be a nonnegative integer")
    above = doc.get("auxZeroAbove")
    if above is not None and not isinstance(above, int):
        raise SchemaError("auxZeroAbove must be an integer or null")
    try:
        return cost_only_spec(
            phi,
            _size_map(doc.get("lambda1", {"op": "div", "by": 2}), "lambda1"),
            _size_map(doc.get("lambda2"), "lambda2"),
            ell0,
            decode_float(doc.get("tAux", 1.0), "tAux"),
            above,
        )
    except ValueError as exc:
        raise SchemaError(str(exc)) from None


def cmd_costs(args) -> int:
    spec = spec_from_doc(loads(_read(args.spec)), args.n)
    try:
        table = cost_recursion(spec, args.ell, args.n, elide_aux=args.elide_aux)
    except RecursionSpecError as exc:
        raise InputError("spec", str(exc)) from None
    top = table[(args.ell, args.n)]
    _emit(
        _report(
            "costs",
            ell=args.ell,
            n=args.n,
            elideAux=args.elide_aux,
            t=top.t,
            cMinus=top.c_minus,
            rows=_cost_rows(table),
        )
    )
    return 0


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(
        prog="subwalk",
        description="Subspace-graph constructions, decisions and witnesses.",
    )
    p.add_argument("--version", action="version", version=f"subwalk {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    b = sub.add_parser("build", help="write a graph JSON for a formula or a gadget")
    src = b.add_mutually_exclusive_group(required=True)
    src.add_argument("--formula")
    src.add_argument("--gadget", help="or:D or and:D with unit weights")
    b.add_argument("--weighting", choices=("unit", "ledger"), default="unit")
    b.add_argument("--out")
    b.set_defaults(func=cmd_build)

    d = sub.add_parser(
        "decide", help="exact decision bit; the exit status equals the bit"
    )
    _add_source(d)
    d.add_argument("--input", required=True, help="bits, x1 first")
    d.set_defaults(func=cmd_decide)

    w = sub.add_parser("witness", help="minimal witness vector as JSON")
    _add_source(w)
    w.add_argument("--input", required=True)
    w.add_argument("--kind", choices=("pos", "neg"), required=True)
    w.set_defaults(func=cmd_witness)

    c = sub.add_parser(
        "complexity", help="measured W+hat, W-hat, C-hat and the cost ledger"
    )
    _add_source(c)
    c.set_defaults(func=cmd_complexity)

    m = sub.add_parser("compose", help="substitute inner graphs for outer switches")
    m.add_argument("--outer", required=True)
    m.add_argument("--inner", action="append", default=[], metavar="EDGE=FILE")
    m.add_argument(
        "--fill-identity",
        action="store_true",
        help="keep unlisted switches as single edges",
    )
    m.add_argument("--out")
    m.set_defaults(func=cmd_compose)

    q = sub.add_parser(
        "pe", help="phase-estimation acceptance probability and decision"
    )
    _add_source(q)
    q.add_argument("--input", required=True)
    q.add_argument(
        "--bits", type=int, help="precision bits (default: calibrated from the ledger)"
    )
    q.add_argument("--c-plus", type=float, default=MAX_C_PLUS)
    q.set_defaults(func=cmd_pe)

    s = sub.add_parser(
        "dstcon",
        help="directed st-connectivity; the exit status is the quantum decision",
    )
    s.add_argument("--graph", required=True, help="digraph JSON {n, edges, s, t}")
    s.add_argument(
        "--ell",
        type=int,
        help="path-length bound (default n, rounded up to a power of 2)",
    )
    s.add_argument("--max-dim", type=int, default=20000)
    s.set_defaults(func=cmd_dstcon)

    k = sub.add_parser(
        "costs", help="T and C- tables of a divide-and-conquer recursion"
    )
    k.add_argument("--spec", required=True)
    k.add_argument("--ell", type=int, required=True)
    k.add_argument("--n", type=int, required=True)
    k.add_argument(
        "--elide-aux",
        action="store_true",
        help="zero the auxiliary cost where it is identically 0",
    )
    k.set_defaults(func=cmd_costs)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except InputError as exc:
        code, message = exc.code, str(exc)
    except SchemaError as exc:
        code, message = "schema", str(exc)
    except MissingInputError as exc:
        code, message = "input", exc.args[0]
    except (ValueError, RecursionSpecError) as exc:
        code, message = "input", str(exc)
    sys.stderr.write(f"error:{code}:{' '.join(message.split())}\n")
    return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
