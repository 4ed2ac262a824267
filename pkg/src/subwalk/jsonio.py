"""Canonical JSON for graphs, digraphs and reports.

Every document carries a ``schema`` field.  Output uses sorted keys, compact
separators and Python's shortest round-trip float repr, so a parsed document
serializes back to the same bytes.  Matrices are stored sparsely as
``[row, col, re, im]`` entries with exact zeros omitted.  Non-finite floats
(an infinite ledger entry, say) are written as the strings ``"inf"``,
``"-inf"`` and ``"nan"`` to stay within standard JSON.
"""

from __future__ import annotations

import json
import math
from collections.abc import Mapping
from typing import Any

import numpy as np

from .graphcore import CostLedger, Edge, Key, Literal, SubspaceGraph
from .numcore import LabeledIndex, Space

GRAPH_SCHEMA = "subwalk.graph/1"
DIGRAPH_SCHEMA = "subwalk.digraph/1"
REPORT_SCHEMA = "subwalk.report/1"
DNC_SPEC_SCHEMA = "subwalk.dnc-spec/1"

_NONFINITE = {"inf": math.inf, "-inf": -math.inf, "nan": math.nan}


class SchemaError(ValueError):
    """A JSON document does not match the expected layout."""


def encode_float(x: float) -> float | str:
    x = float(x)
    if math.isfinite(x):
        return x
    return "nan" if math.isnan(x) else ("inf" if x > 0 else "-inf")


def decode_float(x: Any, what: str = "number") -> float:
    if isinstance(x, str):
        if x not in _NONFINITE:
            raise SchemaError(f"{what}: expected a number, got {x!r}")
        return _NONFINITE[x]
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise SchemaError(f"{what}: expected a number, got {x!r}")
    return float(x)


def dumps(doc: Any) -> str:
    return (
        json.dumps(
            doc,
            sort_keys=True,
            ensure_ascii=False,
            separators=(",", ":"),
            allow_nan=False,
        )
        + "\n"
    )


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(
            f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from None


def _require(doc: Mapping, key: str, where: str) -> Any:
    if not isinstance(doc, Mapping):
        raise SchemaError(f"{where}: expected an object")
    if key not in doc:
        raise SchemaError(f"{where}: missing field {key!r}")
    return doc[key]


def _check_schema(doc: Any, expected: str, optional: bool = False) -> None:
    if not isinstance(doc, Mapping):
        raise SchemaError("top level must be a JSON object")
    found = doc.get("schema")
    if found is None and optional:
        return
    if found != expected:
        raise SchemaError(f"schema must be {expected!r}, got {found!r}")


# --------------------------------------------------------------------------
# Matrices, labels, literals


def encode_matrix(m: np.ndarray) -> dict:
    m = np.asarray(m, dtype=complex)
    if m.ndim == 1:
        m = m.reshape(-1, 1)
    rows, cols = np.nonzero(m)
    order = np.lexsort((rows, cols))
    entries = [
        [
            int(rows[k]),
            int(cols[k]),
            float(m[rows[k], cols[k]].real),
            float(m[rows[k], cols[k]].imag),
        ]
        for k in order
    ]
    return {"shape": [int(m.shape[0]), int(m.shape[1])], "entries": entries}


def decode_matrix(doc: Any, where: str) -> np.ndarray:
    shape = _require(doc, "shape", where)
    entries = _require(doc, "entries", where)
    if not (
        isinstance(shape, list)
        and len(shape) == 2
        and all(isinstance(k, int) and k >= 0 for k in shape)
    ):
        raise SchemaError(f"{where}: shape must be two nonnegative integers")
    m = np.zeros(tuple(shape), dtype=complex)
    for entry in entries:
        if not (isinstance(entry, list) and len(entry) == 4):
            raise SchemaError(f"{where}: entries must be [row, col, re, im]")
        i, j = entry[0], entry[1]
        if not (
            isinstance(i, int)
            and isinstance(j, int)
            and 0 <= i < shape[0]
            and 0 <= j < shape[1]
        ):
            raise SchemaError(f"{where}: entry index ({i}, {j}) out of range")
        m[i, j] = complex(decode_float(entry[2], where), decode_float(entry[3], where))
    return m


def _encode_label(lab: LabeledIndex) -> list:
    return [lab.owner, lab.tag, list(lab.path)]


def _decode_label(doc: Any) -> LabeledIndex:
    if not (isinstance(doc, list) and len(doc) == 3 and isinstance(doc[2], list)):
        raise SchemaError(f"label must be [owner, tag, [path...]], got {doc!r}")
    return LabeledIndex(str(doc[0]), str(doc[1]), tuple(str(p) for p in doc[2]))


def _decode_key(doc: Any, where: str) -> Key:
    if not (isinstance(doc, list) and doc and all(isinstance(p, str) for p in doc)):
        raise SchemaError(f"{where}: a key is a nonempty list of strings")
    return tuple(doc)


def _encode_literal(lit: Literal | None) -> dict | None:
    if lit is None:
        return None
    if lit.const is not None:
        return {"const": lit.const}
    if lit.is_placeholder:
        return {"placeholder": True}
    return {"var": lit.var, "negated": lit.negated}


def _decode_literal(doc: Any) -> Literal | None:
    if doc is None:
        return None
    if not isinstance(doc, Mapping):
        raise SchemaError(f"literal must be an object or null, got {doc!r}")
    if "const" in doc:
        if doc["const"] not in (0, 1):
            raise SchemaError("literal const must be 0 or 1")
        return Literal.constant(doc["const"])
    if doc.get("placeholder"):
        return Literal.placeholder()
    var = _require(doc, "var", "literal")
    if not isinstance(var, int) or var < 0:
        raise SchemaError("literal var must be a nonnegative integer")
    return Literal(var, bool(doc.get("negated", False)))


# --------------------------------------------------------------------------
# Graphs


def graph_to_doc(g: SubspaceGraph) -> dict:
    led = g.ledger
    doc = {
        "schema": GRAPH_SCHEMA,
        "name": g.name,
        "kind": g.kind,
        "labels": [_encode_label(lab) for lab in g.space.labels],
        "vertices": [list(u) for u in g.vertices],
        "edges": [
            {
                "key": list(e.key),
                "tail": list(e.tail),
                "head": list(e.head),
                "weight": encode_float(e.weight),
                "literal": _encode_literal(e.literal),
            }
            for e in g.edges
        ],
        "s": list(g.s),
        "t": list(g.t),
        "aFixed": encode_matrix(g.a_fixed),
        "bMinus": encode_matrix(g.b_minus),
        "b1Bar": encode_matrix(g.b1_bar),
        "scaling": encode_float(g.scaling),
        "ledger": {
            "cPlus": encode_float(led.c_plus),
            "cMinus": encode_float(led.c_minus),
            "basisTime": led.basis_time,
            "logDim": encode_float(led.log_dim),
        },
        "vertexSpaces": None,
    }
    if g.vertex_spaces is not None:
        doc["vertexSpaces"] = [
            {"vertex": list(u), "basis": encode_matrix(g.vertex_spaces[u])}
            for u in g.vertices
            if u in g.vertex_spaces
        ]
    return doc


def graph_from_doc(doc: Any) -> SubspaceGraph:
    _check_schema(doc, GRAPH_SCHEMA)
    space = Space(_decode_label(lab) for lab in _require(doc, "labels", "graph"))
    vertices = tuple(
        _decode_key(u, "vertices") for u in _require(doc, "vertices", "graph")
    )
    edges = []
    for e in _require(doc, "edges", "graph"):
        edges.append(
            Edge(
                _decode_key(_require(e, "key", "edge"), "edge key"),
                _decode_key(_require(e, "tail", "edge"), "edge tail"),
                _decode_key(_require(e, "head", "edge"), "edge head"),
                decode_float(_require(e, "weight", "edge"), "edge weight"),
                _decode_literal(e.get("literal")),
            )
        )
    led = _require(doc, "ledger", "graph")
    ledger = CostLedger(
        decode_float(_require(led, "cPlus", "ledger")),
        decode_float(_require(led, "cMinus", "ledger")),
        int(_require(led, "basisTime", "ledger")),
        decode_float(_require(led, "logDim", "ledger")),
    )
    vertex_spaces = None
    if doc.get("vertexSpaces") is not None:
        vertex_spaces = {
            _decode_key(
                _require(vs, "vertex", "vertexSpaces"), "vertexSpaces"
            ): decode_matrix(_require(vs, "basis", "vertexSpaces"), "vertexSpaces")
            for vs in doc["vertexSpaces"]
        }
    a_fixed = decode_matrix(_require(doc, "aFixed", "graph"), "aFixed")
    b_minus = decode_matrix(_require(doc, "bMinus", "graph"), "bMinus")
    b1_bar = decode_matrix(_require(doc, "b1Bar", "graph"), "b1Bar")[:, 0]
    for name, m in (("aFixed", a_fixed), ("bMinus", b_minus)):
        if m.shape[0] != space.dim:
            raise SchemaError(
                f"{name} has {m.shape[0]} rows but the space has dimension {space.dim}"
            )
    if b1_bar.shape[0] != space.dim:
        raise SchemaError("b1Bar length does not match the space dimension")
    vset = set(vertices)
    for e in edges:
        if e.tail not in vset or e.head not in vset:
            raise SchemaError(f"edge {'/'.join(e.key)} has an unknown endpoint")
        if e.literal is not None and (e.fwd not in space or e.bwd not in space):
            raise SchemaError(f"switch {'/'.join(e.key)} has no labels in the space")
    s, t = (
        _decode_key(_require(doc, "s", "graph"), "s"),
        _decode_key(_require(doc, "t", "graph"), "t"),
    )
    if s not in vset or t not in vset:
        raise SchemaError("s and t must be vertices")
    return SubspaceGraph(
        space=space,
        vertices=vertices,
        edges=tuple(edges),
        s=s,
        t=t,
        a_fixed=a_fixed,
        b_minus=b_minus,
        b1_bar=b1_bar,
        scaling=decode_float(_require(doc, "scaling", "graph"), "scaling"),
        ledger=ledger,
        vertex_spaces=vertex_spaces,
        kind=str(doc.get("kind", "generic")),
        name=str(doc.get("name", "")),
    )


def graph_to_json(g: SubspaceGraph) -> str:
    return dumps(graph_to_doc(g))


def graph_from_json(text: str) -> SubspaceGraph:
    return graph_from_doc(loads(text))


# --------------------------------------------------------------------------
# Digraphs


def digraph_to_json(inst) -> str:
    return dumps(
        {
            "schema": DIGRAPH_SCHEMA,
            "n": inst.n,
            "edges": sorted([u, v] for u, v in inst.edges),
            "s": inst.s,
            "t": inst.t,
        }
    )


def digraph_from_json(text: str):
    from .dnc import DigraphInstance

    doc = loads(text)
    _check_schema(doc, DIGRAPH_SCHEMA, optional=True)
    n = _require(doc, "n", "digraph")
    s = _require(doc, "s", "digraph")
    t = _require(doc, "t", "digraph")
    edges = _require(doc, "edges", "digraph")
    for name, val in (("n", n), ("s", s), ("t", t)):
        if isinstance(val, bool) or not isinstance(val, int):
            raise SchemaError(f"digraph field {name!r} must be an integer")
    if not isinstance(edges, list) or not all(
        isinstance(e, list)
        and len(e) == 2
        and all(isinstance(k, int) and not isinstance(k, bool) for k in e)
        for e in edges
    ):
        raise SchemaError("digraph edges must be a list of [u, v] integer pairs")
    try:
        return DigraphInstance(n, [tuple(e) for e in edges], s, t)
    except ValueError as exc:
        raise SchemaError(str(exc)) from None
