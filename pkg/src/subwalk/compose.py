"""Switch composition, witness transport and Boolean-formula composition.

Composing ``G°`` out of an outer graph ``G`` and inner graphs ``G^e`` (one per
switch ``e``) glues ``s^e``/``t^e`` onto the tail/head of ``e``.  Inner labels
are prefixed with the switch key, so nested compositions never collide.

Two maps connect the spaces.  ``Λ`` is an isometry on the antisymmetric part
of ``H_G`` that sends ``(|→,e⟩−|←,e⟩)/√2`` to ``b̄1^e``; it builds the working
basis of ``G°``.  ``Λ̃`` sends ``|→,e⟩`` and ``|←,e⟩`` to the star states of
``s^e`` and ``t^e``; it builds the local vertex spaces.  The two constructions
must span the same space, which :func:`verify_basis_locality` checks.
"""

from __future__ import annotations

import math
from collections.abc import Mapping
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .formula import (
    AND,
    OR,
    FormulaAst,
    FormulaBalanceError,
    Label,
    Leaf,
    balance_violation,
    label_text,
)
from .gadgets import _log_units, build_and, build_or, single_switch
from .graphcore import (
    BOUNDARY_KEYS,
    SQRT2,
    CostLedger,
    Edge,
    Key,
    Literal,
    SubspaceGraph,
    Witness,
    WitnessError,
    _same_span,
    complexity,
    decide_exact,
    make_witness,
    realize,
)
from .numcore import LinearMap, Space, tolerance

BASIS_TIME_GLUE = 1
DEFAULT_BALANCE = 2.0
CORRUPTIONS = ("drop_sqrt2", "flip_sign", "zero_switch")


class CompositionError(ValueError):
    """The plan cannot be composed (missing inner graph, non-composable inner, ...)."""


def _as_key(k) -> Key:
    return (k,) if isinstance(k, str) else tuple(k)


@dataclass(frozen=True)
class CompositionPlan:
    """An outer graph plus one st-composable inner graph per switch."""

    outer: SubspaceGraph
    inner: Mapping[Key, SubspaceGraph]

    def __post_init__(self) -> None:
        inner = {_as_key(k): g for k, g in self.inner.items()}
        object.__setattr__(self, "inner", inner)
        switch_keys = [e.key for e in self.outer.switches]
        missing = [k for k in switch_keys if k not in inner]
        if missing:
            raise CompositionError(
                f"switches without an inner graph: {['/'.join(k) for k in missing]}"
            )
        extra = set(inner) - set(switch_keys)
        if extra:
            raise CompositionError(
                f"inner graphs for non-switch keys: {sorted('/'.join(k) for k in extra)}"
            )
        for k, g in inner.items():
            if g.b_minus.shape[1] < 2:
                raise CompositionError(f"inner graph at {'/'.join(k)} lacks b0/b1")
            if not g.scaling > 0:
                raise CompositionError(
                    f"inner graph at {'/'.join(k)} has scaling factor {g.scaling}; "
                    "s and t must be connected in its all-on graph"
                )
        fwd, bwd = self.outer.switch_rows
        bm = self.outer.b_minus
        if len(fwd) and np.max(np.abs(bm[fwd, :] + bm[bwd, :])) > tolerance(
            self.outer.dim
        ):
            raise CompositionError(
                "outer B⁻ basis is not antisymmetric on switch blocks"
            )

    @classmethod
    def with_identity(
        cls, outer: SubspaceGraph, inner: Mapping[Key, SubspaceGraph] | None = None
    ) -> CompositionPlan:
        """Fill every switch without an inner graph by a single-edge gadget with its literal."""
        given = {_as_key(k): g for k, g in (inner or {}).items()}
        for e in outer.switches:
            given.setdefault(e.key, single_switch(e.literal))
        return cls(outer, given)

    @cached_property
    def layout(self) -> _Layout:
        return _Layout.build(self)


@dataclass(frozen=True)
class _Layout:
    """Index bookkeeping: where outer and inner labels land in ``H_G°``."""

    space: Space
    outer_rows: np.ndarray  # outer indices that survive
    outer_to_new: np.ndarray  # new index for each surviving outer index
    inner_rows: dict[Key, tuple[np.ndarray, np.ndarray]]  # (inner indices, new indices)

    @classmethod
    def build(cls, plan: CompositionPlan) -> _Layout:
        outer = plan.outer
        switch_of = {}
        for e in outer.switches:
            switch_of[e.fwd] = e
            switch_of[e.bwd] = e
        labels = []
        outer_rows, outer_new = [], []
        inner_src: dict[Key, list[int]] = {}
        inner_new: dict[Key, list[int]] = {}
        for i, lab in enumerate(outer.space.labels):
            e = switch_of.get(lab)
            if e is None:
                outer_rows.append(i)
                outer_new.append(len(labels))
                labels.append(lab)
            elif lab == e.fwd:
                g = plan.inner[e.key]
                src, new = (
                    inner_src.setdefault(e.key, []),
                    inner_new.setdefault(e.key, []),
                )
                for j, inner_lab in enumerate(g.space.labels):
                    if inner_lab.key in BOUNDARY_KEYS:
                        continue
                    src.append(j)
                    new.append(len(labels))
                    labels.append(inner_lab.prefixed(e.key))
        try:
            space = Space(labels)
        except ValueError as exc:
            raise CompositionError(
                f"label collision in composed space: {exc}"
            ) from None
        return cls(
            space,
            np.array(outer_rows, dtype=int),
            np.array(outer_new, dtype=int),
            {
                k: (
                    np.array(inner_src[k], dtype=int),
                    np.array(inner_new[k], dtype=int),
                )
                for k in inner_src
            },
        )

    def embed(self, key: Key, m: np.ndarray) -> np.ndarray:
        """Move an inner vector (or matrix of columns) into ``H_G°``, dropping inner boundary rows."""
        m = np.asarray(m)
        src, new = self.inner_rows[key]
        out = np.zeros((self.space.dim,) + m.shape[1:], dtype=complex)
        out[new] = m[src]
        return out

    def keep_outer(self, m: np.ndarray) -> np.ndarray:
        m = np.asarray(m)
        out = np.zeros((self.space.dim,) + m.shape[1:], dtype=complex)
        out[self.outer_to_new] = m[self.outer_rows]
        return out


def _lambda_matrix(plan: CompositionPlan, corruption: str | None = None) -> np.ndarray:
    outer, lay = plan.outer, plan.layout
    lam = np.zeros((lay.space.dim, outer.dim), dtype=complex)
    lam[lay.outer_to_new, lay.outer_rows] = 1.0
    for n, e in enumerate(outer.switches):
        bar = lay.embed(e.key, plan.inner[e.key].b1_bar)
        factor = 1.0 if corruption == "drop_sqrt2" else 1 / SQRT2
        if corruption == "flip_sign" and n == 0:
            factor = -factor
        if corruption == "zero_switch" and n == 0:
            factor = 0.0
        lam[:, outer.space.index(e.fwd)] = factor * bar
        lam[:, outer.space.index(e.bwd)] = -factor * bar
    return lam


def lambda_map(plan: CompositionPlan) -> LinearMap:
    """The isometry ``Λ`` from the antisymmetric part of ``H_G`` into ``H_G°``."""
    return LinearMap(plan.outer.space, plan.layout.space, _lambda_matrix(plan))


def _tilde_lambda_matrix(plan: CompositionPlan) -> np.ndarray:
    outer, lay = plan.outer, plan.layout
    lam = np.zeros((lay.space.dim, outer.dim), dtype=complex)
    lam[lay.outer_to_new, lay.outer_rows] = 1.0
    for e in outer.switches:
        g = plan.inner[e.key]
        try:
            star_s, star_t = g.boundary_star("s"), g.boundary_star("t")
        except ValueError as exc:
            raise CompositionError(f"inner graph at {'/'.join(e.key)}: {exc}") from None
        # √(2/r) makes Λ̃ agree with Λ on (|→,e⟩−|←,e⟩)/√2 up to inner B-vectors.
        c = math.sqrt(2 / g.scaling)
        lam[:, outer.space.index(e.fwd)] = c * lay.embed(e.key, star_s)
        lam[:, outer.space.index(e.bwd)] = c * lay.embed(e.key, star_t)
    return lam


def tilde_lambda(plan: CompositionPlan) -> LinearMap:
    """Map sending ``|→,e⟩, |←,e⟩`` to the (rescaled) star states at ``s^e, t^e``."""
    return LinearMap(plan.outer.space, plan.layout.space, _tilde_lambda_matrix(plan))


def _compose(plan: CompositionPlan, corruption: str | None = None) -> SubspaceGraph:
    outer, lay = plan.outer, plan.layout
    lam = _lambda_matrix(plan, corruption)

    b_cols = [lam @ outer.b_minus]
    a_cols = [lay.keep_outer(outer.a_fixed)]
    vertices = list(outer.vertices)
    edges = [e for e in outer.edges if not e.is_switch]
    for e in outer.switches:
        g = plan.inner[e.key]
        b_cols.append(lay.embed(e.key, g.b_minus[:, 2:]))
        src, _ = lay.inner_rows[e.key]
        inside = np.zeros(g.dim, dtype=bool)
        inside[src] = True
        a = g.a_fixed
        interior = ~np.any(np.abs(a[~inside, :]) > 0, axis=0)
        a_cols.append(lay.embed(e.key, a[:, interior]))

        def place(v: Key, e=e, g=g) -> Key:
            if v == g.s:
                return e.tail
            if v == g.t:
                return e.head
            return e.key + v

        vertices += [e.key + v for v in g.vertices if v not in (g.s, g.t)]
        edges += [
            Edge(e.key + ie.key, place(ie.tail), place(ie.head), ie.weight, ie.literal)
            for ie in g.edges
        ]

    vertex_spaces = None
    if outer.vertex_spaces is not None and all(
        g.vertex_spaces is not None for g in plan.inner.values()
    ):
        vertex_spaces = _composed_vertex_spaces(plan)

    inner_time = max((g.ledger.basis_time for g in plan.inner.values()), default=0)
    dim = lay.space.dim
    ledger = CostLedger(
        c_plus=outer.ledger.c_plus
        * max([1.0] + [g.ledger.c_plus / 4 for g in plan.inner.values()]),
        c_minus=outer.ledger.c_minus
        * max([1.0] + [g.ledger.c_minus for g in plan.inner.values()]),
        basis_time=outer.ledger.basis_time + inner_time + BASIS_TIME_GLUE,
        log_dim=math.log2(dim),
    )
    return SubspaceGraph(
        space=lay.space,
        vertices=tuple(vertices),
        edges=tuple(edges),
        s=outer.s,
        t=outer.t,
        a_fixed=np.concatenate(a_cols, axis=1),
        b_minus=np.concatenate(b_cols, axis=1),
        b1_bar=lam @ outer.b1_bar,
        scaling=outer.scaling,
        ledger=ledger,
        vertex_spaces=vertex_spaces,
        kind="composed",
        name=f"{outer.name}∘({', '.join(g.name for g in plan.inner.values())})",
    )


def _composed_vertex_spaces(plan: CompositionPlan) -> dict[Key, np.ndarray]:
    lay = plan.layout
    tl = _tilde_lambda_matrix(plan)
    out = {u: tl @ m for u, m in plan.outer.vertex_spaces.items()}
    for e in plan.outer.switches:
        g = plan.inner[e.key]
        for v, m in g.vertex_spaces.items():
            if v not in (g.s, g.t):
                out[e.key + v] = lay.embed(e.key, m)
    return out


def switch_compose(plan: CompositionPlan) -> SubspaceGraph:
    """Substitute every switch of ``plan.outer`` by its inner graph."""
    return _compose(plan)


def corrupt_composition(plan: CompositionPlan, mode: str) -> SubspaceGraph:
    """Composition with a deliberately broken ``Λ``; a negative control for locality checks.

    ``mode`` is one of ``drop_sqrt2`` (omit the 1/√2 factor), ``flip_sign``
    (negate ``b̄1`` of the first switch) or ``zero_switch`` (drop the first
    switch's term).
    """
    if mode not in CORRUPTIONS:
        raise ValueError(f"unknown corruption {mode!r}; choose from {CORRUPTIONS}")
    return _compose(plan, mode)


def verify_basis_locality(plan: CompositionPlan, composed: SubspaceGraph) -> bool:
    """Does ``composed``'s B basis span ``⊕Λ̃(V_u) + inner V_v + Ξ^B``?"""
    if plan.outer.vertex_spaces is None or any(
        g.vertex_spaces is None for g in plan.inner.values()
    ):
        raise CompositionError(
            "locality check needs vertex spaces on the outer and every inner graph"
        )
    if composed.space != plan.layout.space:
        return False
    local = list(_composed_vertex_spaces(plan).values()) + [composed.b_switch]
    return _same_span(
        np.concatenate(local, axis=1), composed.basis_b, tolerance(composed.dim)
    )


# --------------------------------------------------------------------------
# Witness transport


def _switch_coefficient(outer: SubspaceGraph, w: Witness, e: Edge) -> complex:
    return complex(w.vector.amplitudes[outer.space.index(e.fwd)])


def _transport(
    plan: CompositionPlan, outer_w: Witness, inner_ws, kind: str, composed
) -> Witness:
    if outer_w.kind != kind:
        raise WitnessError(f"expected a {kind} outer witness, got {outer_w.kind}")
    outer, lay = plan.outer, plan.layout
    if outer_w.vector.space != outer.space:
        raise WitnessError("outer witness lives in a different space")
    inner_ws = {_as_key(k): w for k, w in inner_ws.items()}
    tol = tolerance(outer.dim)
    v = lay.keep_outer(outer_w.vector.amplitudes)
    for e in outer.switches:
        coef = _switch_coefficient(outer, outer_w, e)
        if abs(coef) <= tol:
            continue
        w = inner_ws.get(e.key)
        if w is None:
            raise WitnessError(
                f"missing inner {kind} witness for switch {'/'.join(e.key)}"
            )
        if w.kind != kind:
            raise WitnessError(
                f"inner witness at {'/'.join(e.key)} is {w.kind}, expected {kind}"
            )
        r = plan.inner[e.key].scaling
        factor = math.sqrt(r / 2) if kind == "positive" else math.sqrt(2 / r)
        v = v + factor * coef * lay.embed(e.key, w.vector.amplitudes)
    space = composed.space if composed is not None else lay.space
    return make_witness(
        kind, space, v, f"transported through {len(outer.switches)} switches"
    )


def transport_positive_witness(
    plan, outer_w: Witness, inner_ws: Mapping, composed=None
) -> Witness:
    """``Σ_e √(r^e/2)⟨→,e|ŵ⟩ŵ^e + Π_{E∖Ē}ŵ``."""
    return _transport(plan, outer_w, inner_ws, "positive", composed)


def transport_negative_witness(
    plan, outer_w: Witness, inner_ws: Mapping, composed=None
) -> Witness:
    """``Σ_e √(2/r^e)⟨→,e|ŵ_A⟩ŵ_A^e + Π_{E∖Ē}ŵ_A``."""
    return _transport(plan, outer_w, inner_ws, "negative", composed)


def transported_norm_sq(plan, outer_w: Witness, inner_ws: Mapping) -> float:
    """Closed-form squared norm of the transported witness."""
    outer = plan.outer
    inner_ws = {_as_key(k): w for k, w in inner_ws.items()}
    kept = np.zeros(outer.dim, dtype=bool)
    kept[plan.layout.outer_rows] = True
    amps = outer_w.vector.amplitudes
    total = float(np.sum(np.abs(amps[kept]) ** 2))
    for e in outer.switches:
        coef = _switch_coefficient(outer, outer_w, e)
        if coef == 0 or e.key not in inner_ws:
            continue
        r = plan.inner[e.key].scaling
        factor = r / 2 if outer_w.kind == "positive" else 2 / r
        total += factor * abs(coef) ** 2 * inner_ws[e.key].norm_sq
    return total


# --------------------------------------------------------------------------
# Rescaling


def scale_to_unit(g: SubspaceGraph, w_plus_hat: float | None = None) -> SubspaceGraph:
    """Wrap ``g`` in a one-edge OR so that the positive witness size drops to at most 1."""
    if w_plus_hat is None:
        w_plus_hat = complexity(g).w_plus_hat
    if w_plus_hat is None or not w_plus_hat > 0:
        raise CompositionError("scale_to_unit needs a known positive witness size Ŵ+")
    weight = g.scaling * w_plus_hat / 2
    outer = build_or(1, [weight], [Literal.placeholder()])
    return switch_compose(CompositionPlan(outer, {("e1",): g}))


# --------------------------------------------------------------------------
# Boolean formulas


@dataclass(frozen=True)
class NodeCost:
    c_plus: float
    c_minus: float

    @property
    def c(self) -> float:
        return math.sqrt(self.c_plus * self.c_minus)


def combine_costs(op: str, children: list[NodeCost]) -> NodeCost:
    """Reflection-cost recurrence for one gate."""
    c_sq = sum(ch.c_plus * ch.c_minus for ch in children)
    if op == OR:
        c_plus = sum(ch.c_plus for ch in children)
        return NodeCost(c_plus, c_sq / c_plus)
    c_minus = sum(ch.c_minus for ch in children)
    return NodeCost(c_sq / c_minus, c_minus)


def propagate_costs(
    ast: FormulaAst, leaf_ledgers: Mapping[int, CostLedger | NodeCost]
) -> dict[Label, NodeCost]:
    """Per-node ``(C⁺, C⁻)``; leaves are looked up by variable index."""
    out: dict[Label, NodeCost] = {}

    def visit(node, label: Label) -> NodeCost:
        if isinstance(node, Leaf):
            led = leaf_ledgers[node.var]
            cost = NodeCost(led.c_plus, led.c_minus)
        else:
            kids = [
                visit(ch, label + (i,)) for i, ch in enumerate(node.children, start=1)
            ]
            cost = combine_costs(node.op, kids)
        out[label] = cost
        return cost

    visit(ast.root, ())
    return out


def sym_c_minus_closed_form(ast: FormulaAst, l_minus: float) -> dict[Label, float]:
    """``C⁻`` at every node of a symmetric formula with uniform leaf ``C⁻ = l_minus``.

    Below a node, each AND level multiplies ``C⁻`` by its degree and each OR
    level leaves it unchanged.  For alternating trees with AND gates just
    above the leaves this is ``L⁻·∏_{j≤⌈D'/2⌉} d_{2j−1}``.
    """
    if not ast.symmetric:
        raise ValueError("closed form needs a symmetric formula")
    out: dict[Label, float] = {}

    def visit(node, label: Label) -> float:
        if isinstance(node, Leaf):
            value = l_minus
        else:
            below = [
                visit(ch, label + (i,)) for i, ch in enumerate(node.children, start=1)
            ]
            value = below[0] * (len(node.children) if node.op == AND else 1)
        out[label] = value
        return value

    visit(ast.root, ())
    return out


def _is_constant_zero(g: SubspaceGraph) -> bool:
    if g.variables or any(e.literal.is_placeholder for e in g.switches):
        return False
    return decide_exact(realize(g, {})) == 0


def default_leaf(leaf: Leaf) -> tuple[SubspaceGraph, CostLedger]:
    g = single_switch(Literal(leaf.var, leaf.negated))
    return g, g.ledger


@dataclass(frozen=True)
class FormulaComposition:
    graph: SubspaceGraph
    ledger: CostLedger
    node_costs: dict[Label, NodeCost]

    def __iter__(self):
        return iter((self.graph, self.ledger))


def formula_compose(
    ast: FormulaAst,
    leaves: Mapping[int, tuple[SubspaceGraph, CostLedger]] | None = None,
    balance: float = DEFAULT_BALANCE,
    weighting: str = "ledger",
) -> FormulaComposition:
    """Compose leaf graphs along ``ast`` with OR/AND gadgets weighted by the cost ledgers.

    ``leaves`` maps each variable index to a graph and its ledger; missing
    variables get a unit single-switch leaf.  A negated leaf must be a single
    switch, whose literal is flipped.  OR children that are constant 0 are
    dropped.

    ``weighting="ledger"`` sets gadget weights from the children's costs so the
    composed ledger is tight; ``weighting="unit"`` uses unit weights everywhere
    and reports the generic composition ledger instead.
    """
    if weighting not in ("ledger", "unit"):
        raise ValueError(f"unknown weighting {weighting!r}")
    bad = balance_violation(ast.root, balance)
    if bad is not None:
        raise FormulaBalanceError(
            f"node '{label_text(bad) or 'root'}' has a child with more than {balance}·N/d leaves"
        )
    leaves = dict(leaves or {})
    costs: dict[Label, NodeCost] = {}

    def leaf_graph(leaf: Leaf) -> tuple[SubspaceGraph, CostLedger]:
        if leaf.var not in leaves:
            return default_leaf(leaf)
        g, ledger = leaves[leaf.var]
        if leaf.negated:
            if (
                len(g.edges) != 1
                or not g.switches
                or g.switches[0].literal.is_placeholder
            ):
                raise CompositionError(
                    f"cannot push a negation into leaf x{leaf.var + 1}: not a single switch"
                )
            e = g.switches[0]
            g = g.with_changes(
                edges=(Edge(e.key, e.tail, e.head, e.weight, e.literal.negate()),)
            )
        return g, ledger

    def build(node, label: Label) -> tuple[SubspaceGraph, NodeCost, int]:
        if isinstance(node, Leaf):
            g, ledger = leaf_graph(node)
            cost = NodeCost(ledger.c_plus, ledger.c_minus)
            costs[label] = cost
            return g, cost, ledger.basis_time
        kids = [build(ch, label + (i,)) for i, ch in enumerate(node.children, start=1)]
        if node.op == OR:
            live = [k for k in kids if not _is_constant_zero(k[0])]
            kids = live or kids[:1]
        if len(kids) == 1:
            costs[label] = kids[0][1]
            return kids[0]
        d = len(kids)
        cost = combine_costs(node.op, [k[1] for k in kids])
        placeholders = [Literal.placeholder()] * d
        if weighting == "unit":
            weights = None
        elif node.op == OR:
            weights = [k[1].c_plus / 2 for k in kids]
        else:
            weights = [1 / (2 * k[1].c_minus) for k in kids]
        gadget = build_or if node.op == OR else build_and
        outer = gadget(d, weights, placeholders)
        plan = CompositionPlan(
            outer, {(f"e{i + 1}",): k[0] for i, k in enumerate(kids)}
        )
        g = switch_compose(plan)
        time = _log_units(d) + max(k[2] for k in kids) + BASIS_TIME_GLUE
        costs[label] = cost
        return g, cost, time

    g, cost, time = build(ast.root, ())
    if weighting == "unit":
        return FormulaComposition(g, g.ledger, costs)
    ledger = CostLedger(cost.c_plus, cost.c_minus, time, math.log2(g.dim))
    return FormulaComposition(g.with_changes(ledger=ledger), ledger, costs)


__all__ = [
    "CORRUPTIONS",
    "CompositionError",
    "CompositionPlan",
    "FormulaComposition",
    "NodeCost",
    "combine_costs",
    "corrupt_composition",
    "default_leaf",
    "formula_compose",
    "lambda_map",
    "propagate_costs",
    "scale_to_unit",
    "switch_compose",
    "sym_c_minus_closed_form",
    "tilde_lambda",
    "transport_negative_witness",
    "transport_positive_witness",
    "transported_norm_sq",
    "verify_basis_locality",
]
