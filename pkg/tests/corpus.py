"""Shared instance corpus for the test suite."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

import numpy as np
from scipy.stats import unitary_group

from subwalk.compose import CompositionPlan, switch_compose
from subwalk.formula import AND, OR, parse_formula, symmetric_tree
from subwalk.gadgets import (
    AlgorithmSpec,
    SwitchingNetworkSpec,
    build_and,
    build_or,
    build_switching_network,
    single_switch,
)
from subwalk.graphcore import Edge, Literal, SubspaceGraph


def lits(offset: int, d: int, negated: tuple[int, ...] = ()) -> list[Literal]:
    return [Literal(offset + i, i in negated) for i in range(d)]


def gadget_corpus() -> list[SubspaceGraph]:
    out = []
    for d in (1, 2, 3, 4):
        out.append(build_or(d))
        out.append(build_and(d))
    out.append(build_or(3, [1, 2, 5]))
    out.append(build_and(3, [1, 0.5, 3]))
    out.append(build_or(2, [0.25, 4], lits(0, 2, negated=(1,))))
    out.append(build_and(2, [2, 3], lits(0, 2, negated=(0,))))
    return out


# --------------------------------------------------------------------------
# Switching networks


def four_cycle() -> SwitchingNetworkSpec:
    return SwitchingNetworkSpec(
        ("s", "a", "t", "b"),
        (
            ("s", "a", 1, Literal(0)),
            ("a", "t", 1, Literal(1)),
            ("t", "b", 1, Literal(2)),
            ("b", "s", 1, Literal(3)),
        ),
        "s",
        "t",
    )


def bridge() -> SwitchingNetworkSpec:
    """Wheatstone bridge: two paths joined by a middle edge."""
    return SwitchingNetworkSpec(
        ("s", "a", "b", "t"),
        (
            ("s", "a", 1, Literal(0)),
            ("s", "b", 2, Literal(1)),
            ("a", "b", 0.5, Literal(2)),
            ("a", "t", 1.5, Literal(3)),
            ("b", "t", 1, Literal(4)),
        ),
        "s",
        "t",
    )


def random_network(rng: random.Random) -> SwitchingNetworkSpec:
    n = rng.randint(2, 6)
    verts = tuple(f"v{i}" for i in range(n))
    m = rng.randint(1, 7)
    edges = tuple(
        (
            rng.choice(verts),
            rng.choice(verts),
            rng.uniform(0.3, 3.0),
            Literal(i, rng.random() < 0.3),
        )
        for i in range(m)
    )
    return SwitchingNetworkSpec(verts, edges, "v0", verts[-1])


def network_corpus(n_random: int = 40, seed: int = 7) -> list[SwitchingNetworkSpec]:
    rng = random.Random(seed)
    fixed = [
        four_cycle(),
        bridge(),
        SwitchingNetworkSpec(
            ("s", "t"), (("s", "t", 1, Literal(0)), ("s", "t", 3, Literal(1))), "s", "t"
        ),
        SwitchingNetworkSpec(
            ("s", "m", "t"),
            (
                ("s", "m", 1, Literal(0)),
                ("m", "t", 1, Literal(1)),
                ("t", "s", 1, Literal(2, True)),
            ),
            "s",
            "t",
        ),
        # Self-loop and an isolated vertex.
        SwitchingNetworkSpec(
            ("s", "x", "t"),
            (("s", "s", 1, Literal(0)), ("s", "t", 1, Literal(1))),
            "s",
            "t",
        ),
    ]
    return fixed + [random_network(rng) for _ in range(n_random)]


# --------------------------------------------------------------------------
# Formulas


FORMULAS = [
    "x1",
    "!x1",
    "x1 | x2",
    "x1 & x2",
    "x1 | (x2 & x3)",
    "(x1 & x2) | (x3 & x4)",
    "(x1 | x2) & (x3 | x4)",
    "!x1 & (x2 | !x3)",
    "(x1 & x2 & x3) | (x4 & x5 & x6)",
    "((x1 | x2) & (x3 | x4)) | ((x5 | x6) & (x7 | x8))",
    "(x1 | !x2 | x3) & (!x4 | x5) & x6",
    "x1 | x2 | x3 | x4 | x5 | x6 | x7 | x8",
    "x1 & x2 & x3 & x4 & x5 & x6 & x7 & x8",
    "((x1 & !x2) | x3) & ((x4 | x5) & !x6)",
]


def random_formula_text(rng: random.Random, n_vars: int) -> str:
    """Random read-once formula over ``x1..x{n_vars}`` in a shuffled order."""
    order = list(range(1, n_vars + 1))
    rng.shuffle(order)

    def build(vs: list[int]) -> str:
        if len(vs) == 1:
            return ("!" if rng.random() < 0.3 else "") + f"x{vs[0]}"
        k = rng.randint(2, min(3, len(vs)))
        cuts = sorted(rng.sample(range(1, len(vs)), k - 1))
        parts = [vs[a:b] for a, b in zip([0, *cuts], [*cuts, len(vs)])]
        op = rng.choice(["|", "&"])
        return "(" + f" {op} ".join(build(p) for p in parts) + ")"

    return build(order)


def formula_corpus(n_random: int = 12, seed: int = 3) -> list[str]:
    rng = random.Random(seed)
    return FORMULAS + [
        random_formula_text(rng, rng.randint(2, 8)) for _ in range(n_random)
    ]


SYMMETRIC_SHAPES = [
    ([OR], [3]),
    ([AND], [4]),
    ([OR, AND], [3, 2]),
    ([AND, OR], [2, 3]),
    ([AND, OR, AND], [2, 2, 2]),
    ([OR, AND, OR], [2, 3, 2]),
    ([OR, AND, OR, AND], [2, 2, 2, 2]),
    ([AND, OR, AND, OR], [2, 2, 2, 2]),
    ([AND, OR, AND, OR], [3, 2, 2, 2]),
    ([OR, AND, OR, AND], [2, 3, 2, 3]),
]


def symmetric_corpus():
    return [symmetric_tree(ops, degs) for ops, degs in SYMMETRIC_SHAPES]


def parsed(text: str):
    return parse_formula(text)


# --------------------------------------------------------------------------
# Compositions


@dataclass(frozen=True)
class CompositionCase:
    name: str
    plan: CompositionPlan
    outer_live: SubspaceGraph  # the outer graph with switch i reading variable i
    n_vars: int

    @property
    def composed(self) -> SubspaceGraph:
        return switch_compose(self.plan)


def with_switch_variables(g: SubspaceGraph) -> SubspaceGraph:
    """Replace the switch literals of ``g`` by ``x_i`` for the ``i``-th switch."""
    order = {e.key: i for i, e in enumerate(g.switches)}
    edges = tuple(
        Edge(
            e.key,
            e.tail,
            e.head,
            e.weight,
            Literal(order[e.key]) if e.is_switch else None,
        )
        for e in g.edges
    )
    return g.with_changes(edges=edges)


def _placeholders(g_builder, d, weights=None):
    return g_builder(d, weights, [Literal.placeholder()] * d)


def _network_outer(spec: SwitchingNetworkSpec) -> SubspaceGraph:
    placeholder = SwitchingNetworkSpec(
        spec.vertices,
        tuple((u, v, w, Literal.placeholder()) for u, v, w, _ in spec.edges),
        spec.s,
        spec.t,
    )
    return build_switching_network(placeholder)


INNER_MAKERS = {
    "sw": lambda off: (single_switch(Literal(off)), 1),
    "nsw": lambda off: (single_switch(Literal(off, True), 2.0), 1),
    "or2": lambda off: (build_or(2, None, lits(off, 2)), 2),
    "and2": lambda off: (build_and(2, None, lits(off, 2)), 2),
    "or3w": lambda off: (build_or(3, [1, 2, 0.5], lits(off, 3, negated=(2,))), 3),
    "and2w": lambda off: (build_and(2, [1, 2], lits(off, 2)), 2),
    "and3": lambda off: (build_and(3, None, lits(off, 3)), 3),
}

OUTER_MAKERS = {
    "OR2": lambda: _placeholders(build_or, 2),
    "AND2": lambda: _placeholders(build_and, 2),
    "OR2w": lambda: _placeholders(build_or, 2, [1, 3]),
    "AND3": lambda: _placeholders(build_and, 3),
    "OR3w": lambda: _placeholders(build_or, 3, [0.5, 1, 2]),
    "C4": lambda: _network_outer(four_cycle()),
    "BRIDGE": lambda: _network_outer(bridge()),
}

COMPOSITION_RECIPES = [
    ("OR2", ["and2", "and2"]),
    ("OR2", ["sw", "or2"]),
    ("OR2", ["nsw", "and3"]),
    ("AND2", ["or2", "or2"]),
    ("AND2", ["sw", "and2"]),
    ("AND2", ["or3w", "nsw"]),
    ("OR2w", ["and2w", "or2"]),
    ("OR2w", ["and2", "or3w"]),
    ("AND3", ["or2", "sw", "and2"]),
    ("AND3", ["sw", "sw", "sw"]),
    ("OR3w", ["and2", "and2w", "sw"]),
    ("OR3w", ["or2", "nsw", "and2"]),
    ("C4", ["sw", "sw", "sw", "sw"]),
    ("C4", ["and2", "sw", "or2", "sw"]),
    ("C4", ["or2", "and2", "sw", "nsw"]),
    ("BRIDGE", ["sw", "sw", "sw", "sw", "sw"]),
    ("BRIDGE", ["and2", "sw", "or2", "sw", "nsw"]),
    ("BRIDGE", ["sw", "or2", "sw", "and2", "sw"]),
    ("AND2", ["or2", "and2"]),
    ("OR2", ["or2", "or3w"]),
]


def composition_case(outer_name: str, inner_names: list[str]) -> CompositionCase:
    outer = OUTER_MAKERS[outer_name]()
    inner = {}
    off = 0
    for e, name in zip(outer.switches, inner_names, strict=True):
        g, used = INNER_MAKERS[name](off)
        inner[e.key] = g
        off += used
    plan = CompositionPlan(outer, inner)
    return CompositionCase(
        f"{outer_name}({','.join(inner_names)})",
        plan,
        with_switch_variables(outer),
        off,
    )


def nested_case() -> CompositionCase:
    """Two-level composition: the inner graph is itself a composition."""
    lower = composition_case("AND2", ["or2", "sw"]).composed
    outer = OUTER_MAKERS["OR2"]()
    keys = [e.key for e in outer.switches]
    shifted = with_offset(lower, 2)
    plan = CompositionPlan(
        outer, {keys[0]: build_and(2, None, lits(0, 2)), keys[1]: shifted}
    )
    return CompositionCase(
        "OR2(and2,AND2(or2,sw))", plan, with_switch_variables(outer), 5
    )


def with_offset(g: SubspaceGraph, off: int) -> SubspaceGraph:
    edges = tuple(
        Edge(
            e.key,
            e.tail,
            e.head,
            e.weight,
            Literal(e.literal.var + off, e.literal.negated),
        )
        if e.is_switch and e.literal.var is not None
        else e
        for e in g.edges
    )
    return g.with_changes(edges=edges)


def composition_corpus() -> list[CompositionCase]:
    return [composition_case(o, i) for o, i in COMPOSITION_RECIPES] + [nested_case()]


# --------------------------------------------------------------------------
# Algorithms


def random_zero_error_algorithm(
    rng: np.random.Generator, dim_z: int, n_steps: int, weights="unit"
) -> AlgorithmSpec:
    """Random unitaries whose last step rotates the state onto one answer basis vector."""
    n = 2 * dim_z
    steps = [unitary_group.rvs(n, random_state=rng) for _ in range(n_steps - 1)]
    state = np.zeros(n, dtype=complex)
    state[0] = 1
    for u in steps:
        state = u @ state
    target = np.zeros(n, dtype=complex)
    target[int(rng.integers(n))] = np.exp(1j * rng.uniform(0, 2 * np.pi))
    last = _map_to(state, target)
    steps.append(last)
    return AlgorithmSpec(dim_z, tuple(steps), weights)


def _map_to(v: np.ndarray, w: np.ndarray) -> np.ndarray:
    """A unitary ``U`` with ``U v = w`` for unit vectors ``v``, ``w``."""
    n = v.size
    basis_v = np.linalg.qr(np.column_stack([v, np.eye(n)]))[0]
    basis_w = np.linalg.qr(np.column_stack([w, np.eye(n)]))[0]
    basis_v[:, 0] = v
    basis_w[:, 0] = w
    return basis_w @ basis_v.conj().T


def algorithm_corpus(seed: int = 11) -> list[AlgorithmSpec]:
    rng = np.random.default_rng(seed)
    x = np.array([[0, 1], [1, 0]], dtype=complex)
    fixed = [
        AlgorithmSpec(1, (x,)),
        AlgorithmSpec(1, (np.eye(2),)),
        AlgorithmSpec(1, (x, x)),
        AlgorithmSpec(1, (x, np.diag([1, 1j]))),
    ]
    shapes = [(1, 3), (2, 2), (2, 4), (3, 3), (4, 5), (4, 6), (2, 6), (3, 1)]
    return fixed + [random_zero_error_algorithm(rng, dz, k) for dz, k in shapes]


def inputs(n_vars: int):
    return [dict(enumerate(bits)) for bits in itertools.product((0, 1), repeat=n_vars)]
