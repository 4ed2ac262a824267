"""Constructors for concrete subspace graphs.

Switching networks (OR, AND and arbitrary weighted graphs) share one space
layout: the four boundary labels first, then ``(→,e), (←,e)`` for every edge
in order.  Algorithm graphs use register-valued tags instead.
"""

from __future__ import annotations

import functools
import math
from collections import deque
from collections.abc import Callable, Iterable, Mapping, Sequence
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .graphcore import (
    BWD,
    FWD,
    S_BACK,
    S_LABEL,
    SQRT2,
    T_FWD,
    T_LABEL,
    Assignment,
    CostLedger,
    Edge,
    Key,
    Literal,
    Realization,
    SubspaceGraph,
    Witness,
    b0_vector,
    b1_vector,
    boundary_a_vectors,
    make_witness,
)
from .numcore import (
    LabeledIndex,
    LabeledVector,
    OrthonormalBasis,
    Space,
    orth,
    tolerance,
)


class FlowError(ValueError):
    """A flow violates conservation or uses a switched-off edge."""


class CutError(ValueError):
    """An edge set is not an st-cut made of switched-off edges."""


class NoFlowError(ValueError):
    """s and t are disconnected, so no unit flow exists."""


def _log_units(d: int) -> int:
    return max(1, math.ceil(math.log2(max(d, 1)))) + 1


def _check_weights(weights: Sequence[float]) -> list[float]:
    ws = [float(w) for w in weights]
    bad = [w for w in ws if not (w > 0 and math.isfinite(w))]
    if bad:
        raise ValueError(f"weights must be positive and finite, got {bad}")
    return ws


def _default_literals(d: int, literals: Sequence[Literal] | None) -> list[Literal]:
    if literals is None:
        return [Literal(var=i) for i in range(d)]
    if len(literals) != d:
        raise ValueError(f"expected {d} literals, got {len(literals)}")
    return list(literals)


def _switch_space(edges: Sequence[Edge]) -> Space:
    labels = [S_LABEL, S_BACK, T_FWD, T_LABEL]
    for e in edges:
        labels += [e.fwd, e.bwd]
    return Space(labels)


def _simple_vertex_spaces(space: Space, vertices, edges, s, t) -> dict[Key, np.ndarray]:
    spaces = {u: np.zeros(space.dim, dtype=complex) for u in vertices}
    for e in edges:
        spaces[e.tail][space.index(e.fwd)] += math.sqrt(e.weight)
        spaces[e.head][space.index(e.bwd)] += math.sqrt(e.weight)
    spaces[s][space.index(S_BACK)] += 1.0
    spaces[t][space.index(T_FWD)] += 1.0
    return {u: v.reshape(-1, 1) for u, v in spaces.items()}


def _minus(space: Space, e: Edge) -> np.ndarray:
    return space.vector({e.fwd: 1.0, e.bwd: -1.0})


def _assemble(
    space, vertices, edges, s, t, b_rest, b1_bar, r, ledger, name
) -> SubspaceGraph:
    head = np.column_stack([b0_vector(space), b1_vector(space, r, b1_bar)])
    b_minus = np.concatenate([head, b_rest], axis=1)
    return SubspaceGraph(
        space=space,
        vertices=tuple(vertices),
        edges=tuple(edges),
        s=s,
        t=t,
        a_fixed=boundary_a_vectors(space),
        b_minus=b_minus,
        b1_bar=b1_bar,
        scaling=r,
        ledger=ledger,
        vertex_spaces=_simple_vertex_spaces(space, vertices, edges, s, t),
        kind="switching_network",
        name=name,
    )


def build_or(
    d: int,
    weights: Sequence[float] | None = None,
    literals: Sequence[Literal] | None = None,
) -> SubspaceGraph:
    """``d`` parallel switches from s to t; computes the OR of their literals."""
    if d < 1:
        raise ValueError("OR gadget needs d >= 1")
    ws = _check_weights([1.0] * d if weights is None else weights)
    if len(ws) != d:
        raise ValueError(f"expected {d} weights, got {len(ws)}")
    lits = _default_literals(d, literals)
    s, t = ("s",), ("t",)
    edges = [Edge((f"e{i + 1}",), s, t, ws[i], lits[i]) for i in range(d)]
    space = _switch_space(edges)
    r = 2 * sum(ws)
    bar = sum(math.sqrt(w) * _minus(space, e) for w, e in zip(ws, edges)) / math.sqrt(r)
    ledger = CostLedger(
        c_plus=r * 2 / min(ws),
        c_minus=1.0,
        basis_time=_log_units(d),
        log_dim=math.log2(space.dim),
    )
    return _assemble(
        space, [s, t], edges, s, t, np.zeros((space.dim, 0)), bar, r, ledger, f"OR{d}"
    )


def build_and(
    d: int,
    weights: Sequence[float] | None = None,
    literals: Sequence[Literal] | None = None,
) -> SubspaceGraph:
    """Path ``u0 -> ... -> ud`` of switches; computes the AND of their literals."""
    if d < 1:
        raise ValueError("AND gadget needs d >= 1")
    ws = _check_weights([1.0] * d if weights is None else weights)
    if len(ws) != d:
        raise ValueError(f"expected {d} weights, got {len(ws)}")
    lits = _default_literals(d, literals)
    verts = [(f"u{i}",) for i in range(d + 1)]
    edges = [
        Edge((f"e{i + 1}",), verts[i], verts[i + 1], ws[i], lits[i]) for i in range(d)
    ]
    space = _switch_space(edges)
    inv = sum(1 / w for w in ws)
    r = 2 / inv
    minus = np.column_stack([_minus(space, e) / SQRT2 for e in edges])
    coeff = np.array([1 / math.sqrt(w) for w in ws])
    bar = minus @ coeff / math.sqrt(inv)
    # Orthonormal completion of span{(|→,i⟩−|←,i⟩)} inside b̄1^⊥.
    rest = (
        minus @ scipy.linalg.null_space(coeff.reshape(1, -1))
        if d > 1
        else np.zeros((space.dim, 0))
    )
    ledger = CostLedger(
        c_plus=4.0,
        c_minus=max(ws) * inv,
        basis_time=_log_units(d),
        log_dim=math.log2(space.dim),
    )
    return _assemble(
        space, verts, edges, verts[0], verts[-1], rest, bar, r, ledger, f"AND{d}"
    )


def single_switch(literal: Literal, weight: float = 1.0) -> SubspaceGraph:
    return build_or(1, [weight], [literal])


@dataclass(frozen=True)
class SwitchingNetworkSpec:
    """Oriented weighted graph whose every edge is a switch.

    ``edges`` holds ``(tail, head, weight, literal)`` tuples; edge ``i`` is
    named ``e{i+1}`` unless ``names`` is given.
    """

    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str, float, Literal], ...]
    s: str
    t: str
    names: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        if self.s == self.t:
            raise ValueError("s and t must differ")
        vs = set(self.vertices)
        if self.s not in vs or self.t not in vs:
            raise ValueError("s and t must be vertices")
        for u, v, w, _ in self.edges:
            if u not in vs or v not in vs:
                raise ValueError(f"edge ({u},{v}) has an unknown endpoint")
            if not w > 0:
                raise ValueError(f"edge ({u},{v}) has nonpositive weight {w}")
        if self.names is not None and len(self.names) != len(self.edges):
            raise ValueError("names must match edges")

    def edge_names(self) -> list[str]:
        return (
            list(self.names)
            if self.names
            else [f"e{i + 1}" for i in range(len(self.edges))]
        )

    def on_edges(self, x: Assignment) -> list[int]:
        return [i for i, (_, _, _, lit) in enumerate(self.edges) if lit.value(x)]


def build_switching_network(spec: SwitchingNetworkSpec) -> SubspaceGraph:
    names = spec.edge_names()
    vkey = {u: (u,) for u in spec.vertices}
    edges = [
        Edge((name,), vkey[u], vkey[v], float(w), lit)
        for name, (u, v, w, lit) in zip(names, spec.edges)
    ]
    space = _switch_space(edges)
    s, t = vkey[spec.s], vkey[spec.t]

    generators = []
    for u in spec.vertices:
        g = np.zeros(space.dim, dtype=complex)
        for e in edges:
            half = math.sqrt(e.weight) / 2 * _minus(space, e)
            if e.tail == vkey[u]:
                g += half
            if e.head == vkey[u]:
                g -= half
        if vkey[u] == s:
            g[space.index(S_BACK)] += 1
        if vkey[u] == t:
            g[space.index(T_FWD)] += 1
        generators.append(g)
    q = orth(np.column_stack(generators))
    rows = q[[space.index(S_BACK), space.index(T_FWD)], :]
    kernel = q @ scipy.linalg.null_space(rows)
    attached = orth(q @ rows.conj().T)
    b0 = b0_vector(space)
    candidates = attached - np.outer(b0, b0.conj() @ attached)
    best = int(np.argmax(np.linalg.norm(candidates, axis=0)))
    b1 = candidates[:, best] / np.linalg.norm(candidates[:, best])
    alpha = b1[space.index(S_BACK)]
    b1 = b1 * (abs(alpha) / alpha)
    alpha = float(abs(alpha))
    r = max(0.0, 1 / alpha**2 - 2)
    if r > tolerance(space.dim):
        bar = b1 - alpha * space.vector({S_BACK: 1.0, T_FWD: -1.0})
        bar = bar / np.linalg.norm(bar)
    else:
        r, bar = 0.0, np.zeros(space.dim, dtype=complex)
    inv_sum = sum(1 / e.weight for e in edges)
    w_sum = sum(e.weight for e in edges)
    ledger = CostLedger(
        c_plus=r * 2 * inv_sum,
        c_minus=2 * w_sum / r if r > 0 else math.inf,
        basis_time=_log_units(len(spec.vertices)),
        log_dim=math.log2(space.dim),
    )
    return _assemble(
        space,
        [vkey[u] for u in spec.vertices],
        edges,
        s,
        t,
        kernel,
        bar,
        r,
        ledger,
        "switching network",
    )


def _as_graph(g_or_spec) -> SubspaceGraph:
    if isinstance(g_or_spec, SwitchingNetworkSpec):
        return build_switching_network(g_or_spec)
    return g_or_spec


def flow_positive_witness(
    g_or_spec, x: Assignment, flow: Mapping[str, float]
) -> Witness:
    """Witness Σ θ(e)/√w_e (|→,e⟩−|←,e⟩) from a unit st-flow ``θ`` keyed by edge name."""
    g = _as_graph(g_or_spec)
    tol = tolerance(g.dim)
    by_name = {e.key[-1]: e for e in g.edges}
    unknown = set(flow) - set(by_name)
    if unknown:
        raise FlowError(f"flow on unknown edges {sorted(unknown)}")
    balance = {u: 0.0 for u in g.vertices}
    vec = np.zeros(g.dim, dtype=complex)
    for name, theta in flow.items():
        e = by_name[name]
        if abs(theta) > tol and not e.literal.value(x):
            raise FlowError(f"flow {theta} on switched-off edge {name}")
        balance[e.tail] += theta
        balance[e.head] -= theta
        vec += theta / math.sqrt(e.weight) * _minus(g.space, e)
    for u, b in balance.items():
        want = 1.0 if u == g.s else -1.0 if u == g.t else 0.0
        if abs(b - want) > tol:
            raise FlowError(
                f"flow conservation fails at {'/'.join(u)}: net {b}, expected {want}"
            )
    return make_witness("positive", g.space, vec, "unit st-flow")


def _undirected_component(vertices, edge_pairs, start) -> set:
    adj = {u: [] for u in vertices}
    for u, v in edge_pairs:
        adj[u].append(v)
        adj[v].append(u)
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return seen


def cut_negative_witness(g_or_spec, x: Assignment, cut: Iterable[str]) -> Witness:
    """Witness ±Σ_{e∈F} √w_e (|→,e⟩−|←,e⟩) from an st-cut of switched-off edges."""
    g = _as_graph(g_or_spec)
    by_name = {e.key[-1]: e for e in g.edges}
    cut = set(cut)
    unknown = cut - set(by_name)
    if unknown:
        raise CutError(f"unknown edges {sorted(unknown)}")
    on_in_cut = [n for n in cut if by_name[n].literal.value(x)]
    if on_in_cut:
        raise CutError(f"cut contains switched-on edges {sorted(on_in_cut)}")
    kept = [(e.tail, e.head) for e in g.edges if e.key[-1] not in cut]
    side = _undirected_component(g.vertices, kept, g.s)
    if g.t in side:
        raise CutError("removing the edge set leaves s and t connected")
    vec = np.zeros(g.dim, dtype=complex)
    for name in cut:
        e = by_name[name]
        tail_in, head_in = e.tail in side, e.head in side
        if tail_in == head_in:
            raise CutError(f"edge {name} does not cross the cut")
        sign = 1.0 if tail_in else -1.0
        vec += sign * math.sqrt(e.weight) * _minus(g.space, e)
    return make_witness("negative", g.space, vec, "st-cut of switched-off edges")


def effective_resistance(spec: SwitchingNetworkSpec, x: Assignment) -> float:
    """Effective s-t resistance of the switched-on subgraph, via a grounded Laplacian."""
    index = {u: i for i, u in enumerate(spec.vertices)}
    on = [spec.edges[i] for i in spec.on_edges(x)]
    comp = _undirected_component(spec.vertices, [(u, v) for u, v, _, _ in on], spec.s)
    if spec.t not in comp:
        raise NoFlowError("no-flow: s and t are disconnected in G(x)")
    n = len(spec.vertices)
    lap = np.zeros((n, n))
    for u, v, w, _ in on:
        i, j = index[u], index[v]
        if i == j:
            continue
        lap[i, i] += w
        lap[j, j] += w
        lap[i, j] -= w
        lap[j, i] -= w
    live = [index[u] for u in spec.vertices if u in comp and u != spec.t]
    rhs = np.zeros(len(live))
    rhs[live.index(index[spec.s])] = 1.0
    potential = scipy.linalg.solve(lap[np.ix_(live, live)], rhs, assume_a="sym")
    return float(potential[live.index(index[spec.s])])


# --------------------------------------------------------------------------
# Algorithm compilation

Weights = str | Sequence[float] | Callable[[int], float]


def _alpha_table(weights: Weights, big_t: int) -> np.ndarray:
    if isinstance(weights, str):
        if weights == "unit":
            alpha = np.ones(big_t + 1)
        elif weights == "linear":
            alpha = np.array([1.0, 1.0] + [r + 1.0 for r in range(2, big_t + 1)])
        else:
            raise ValueError(f"unknown weight preset {weights!r}")
    elif callable(weights):
        alpha = np.array([1.0, 1.0] + [float(weights(r)) for r in range(2, big_t + 1)])
    else:
        alpha = np.array([float(a) for a in weights])
        if alpha.size < big_t + 1:
            raise ValueError(f"need {big_t + 1} weights α_0..α_T, got {alpha.size}")
        alpha = alpha[: big_t + 1]
    if alpha[0] != 1 or alpha[1] != 1:
        raise ValueError("weights must satisfy α_0 = α_1 = 1")
    if np.any(alpha <= 0):
        raise ValueError("weights must be positive")
    return alpha


@dataclass(frozen=True)
class AlgorithmSpec:
    """A zero-error algorithm: unitaries on ``|a⟩|z⟩`` with ``a`` the answer bit.

    ``steps`` are the algorithm's own unitaries; compilation prepends ``-I``
    and pads with one identity step when needed so the total step count is even.
    """

    dim_z: int
    steps: tuple[np.ndarray, ...]
    weights: Weights = "unit"
    tol: float = 1e-9

    def __post_init__(self) -> None:
        if self.dim_z < 1:
            raise ValueError("dim_z must be positive")
        n = 2 * self.dim_z
        steps = []
        for i, u in enumerate(self.steps):
            u = np.array(u, dtype=complex)
            if u.shape != (n, n):
                raise ValueError(f"step {i + 1} has shape {u.shape}, expected {(n, n)}")
            if np.max(np.abs(u.conj().T @ u - np.eye(n))) > self.tol:
                raise ValueError(f"step {i + 1} is not unitary")
            u.setflags(write=False)
            steps.append(u)
        if not steps:
            raise ValueError("an algorithm needs at least one step")
        object.__setattr__(self, "steps", tuple(steps))

    @property
    def register_dim(self) -> int:
        return 2 * self.dim_z

    def unitaries(self) -> list[np.ndarray]:
        """``U_1 .. U_T`` with ``U_1 = -I`` and even ``T``; index 0 is unused."""
        n = self.register_dim
        us = [np.eye(n), -np.eye(n), *self.steps]
        if (len(us) - 1) % 2:
            us.append(np.eye(n, dtype=complex))
        return us

    @property
    def total_steps(self) -> int:
        return len(self.unitaries()) - 1

    def alphas(self) -> np.ndarray:
        return _alpha_table(self.weights, self.total_steps)

    def states(self) -> list[np.ndarray]:
        us = self.unitaries()
        w = np.zeros(self.register_dim, dtype=complex)
        w[0] = 1.0
        out = [w]
        for u in us[1:]:
            out.append(u @ out[-1])
        return out

    def output(self) -> int:
        final = self.states()[-1]
        zero = np.linalg.norm(final[: self.dim_z])
        one = np.linalg.norm(final[self.dim_z :])
        if min(zero, one) > self.tol:
            raise ValueError(
                "algorithm has nonzero error: final state straddles both answers"
            )
        return int(one > zero)


def _alg_label(direction: str, a: int, z: int, r: int, big_t: int) -> LabeledIndex:
    if r <= 1:
        if (a, z) != (0, 0):
            raise KeyError("registers 0 and 1 only hold |0,0⟩")
        if direction == FWD:
            return S_LABEL if r == 0 else S_BACK
        return T_LABEL if r == 0 else T_FWD
    if r == big_t:
        owner = f"e{big_t}↔"
    else:
        owner = f"e{r - r % 2}{direction}"
    return LabeledIndex(owner, f"{direction}|{a},{z}|{r}")


@dataclass(frozen=True)
class CompiledAlgorithm:
    """An algorithm graph plus the data needed to write down history states."""

    spec: AlgorithmSpec
    graph: SubspaceGraph
    alphas: np.ndarray = field(repr=False)

    def register_vector(self, direction: str, state: np.ndarray, r: int) -> np.ndarray:
        return _register_vector(
            self.graph.space,
            self.spec.dim_z,
            self.spec.total_steps,
            direction,
            state,
            r,
        )

    def history_states(self) -> tuple[np.ndarray, np.ndarray]:
        """Uncropped positive and negative history states."""
        f = self.spec.output()
        sign = (-1) ** f
        plus = np.zeros(self.graph.dim, dtype=complex)
        minus = np.zeros(self.graph.dim, dtype=complex)
        for t, w in enumerate(self.spec.states()):
            a = self.alphas[t]
            fwd = self.register_vector(FWD, w, t)
            bwd = self.register_vector(BWD, w, t)
            plus += (fwd + sign * bwd) / math.sqrt(a)
            minus += (fwd - sign * bwd) * math.sqrt(a) * (-1) ** t
        return plus, minus


def compile_algorithm_full(spec: AlgorithmSpec) -> CompiledAlgorithm:
    us = spec.unitaries()
    big_t = len(us) - 1
    alpha = spec.alphas()
    n, dz = spec.register_dim, spec.dim_z

    labels = [S_LABEL, S_BACK, T_FWD, T_LABEL]
    for ell in range(1, big_t // 2):
        for direction in (FWD, BWD):
            for r in (2 * ell, 2 * ell + 1):
                labels += [
                    _alg_label(direction, a, z, r, big_t)
                    for a in (0, 1)
                    for z in range(dz)
                ]
    for direction in (FWD, BWD):
        labels += [
            _alg_label(direction, a, z, big_t, big_t) for a in (0, 1) for z in range(dz)
        ]
    space = Space(labels)
    reg = functools.partial(_register_vector, space, dz, big_t)

    def transition(direction: str, idx: int, r: int) -> np.ndarray:
        basis = np.zeros(n, dtype=complex)
        basis[idx] = 1.0
        v = math.sqrt(alpha[r]) * reg(direction, basis, r) - math.sqrt(
            alpha[r + 1]
        ) * reg(direction, us[r + 1] @ basis, r + 1)
        return v / math.sqrt(alpha[r] + alpha[r + 1])

    a_cols = [boundary_a_vectors(space)]
    for ell in range(1, big_t // 2):
        for direction in (FWD, BWD):
            a_cols.append(
                np.column_stack([transition(direction, i, 2 * ell) for i in range(n)])
            )
    reversal = []
    for i in range(n):
        a_bit = i // dz
        basis = np.zeros(n, dtype=complex)
        basis[i] = 1.0
        reversal.append(
            (reg(FWD, basis, big_t) - (-1) ** a_bit * reg(BWD, basis, big_t)) / SQRT2
        )
    a_cols.append(np.column_stack(reversal))
    a_fixed = np.concatenate(a_cols, axis=1)

    start = np.zeros(n, dtype=complex)
    start[0] = 1.0
    u2 = us[2] @ start
    u_plus = (reg(FWD, u2, 2) + reg(BWD, u2, 2)) / SQRT2
    u_minus = (reg(FWD, u2, 2) - reg(BWD, u2, 2)) / SQRT2
    r_scale = 2 * alpha[2]
    bar = -u_minus
    b_cols = [b0_vector(space), b1_vector(space, r_scale, bar), u_plus]
    for r in range(3, big_t, 2):
        for direction in (FWD, BWD):
            b_cols += [transition(direction, i, r) for i in range(n)]
    b_minus = np.column_stack(b_cols)

    vertices = [
        (f"v{2 * ell - 1}{d}",) for ell in range(1, big_t // 2 + 1) for d in (FWD, BWD)
    ]
    edges = []
    for ell in range(1, big_t // 2):
        for d in (FWD, BWD):
            edges.append(
                Edge(
                    (f"e{2 * ell}{d}",),
                    (f"v{2 * ell - 1}{d}",),
                    (f"v{2 * ell + 1}{d}",),
                )
            )
    edges.append(
        Edge((f"e{big_t}↔",), (f"v{big_t - 1}{FWD}",), (f"v{big_t - 1}{BWD}",))
    )

    w_plus = 2 * float(np.sum(1 / alpha[2:]))
    w_minus = 2 * float(np.sum(alpha[2:]))
    ledger = CostLedger(
        c_plus=r_scale * w_plus,
        c_minus=w_minus / r_scale,
        basis_time=_log_units(big_t),
        log_dim=math.log2(space.dim),
    )
    graph = SubspaceGraph(
        space=space,
        vertices=tuple(vertices),
        edges=tuple(edges),
        s=(f"v1{FWD}",),
        t=(f"v1{BWD}",),
        a_fixed=a_fixed,
        b_minus=b_minus,
        b1_bar=bar,
        scaling=r_scale,
        ledger=ledger,
        vertex_spaces=None,
        kind="algorithm",
        name=f"algorithm T={big_t}",
    )
    return CompiledAlgorithm(spec, graph, alpha)


def _register_vector(
    space: Space, dz: int, big_t: int, direction: str, state: np.ndarray, r: int
) -> np.ndarray:
    v = np.zeros(space.dim, dtype=complex)
    for idx in np.flatnonzero(np.abs(state) > 0):
        a, z = divmod(int(idx), dz)
        v[space.index(_alg_label(direction, a, z, r, big_t))] += state[idx]
    return v


def compile_algorithm(spec: AlgorithmSpec) -> SubspaceGraph:
    return compile_algorithm_full(spec).graph


# --------------------------------------------------------------------------
# Walk graphs with a non-canonical boundary


@dataclass(frozen=True)
class WalkGraph:
    """A subspace graph with boundary ``{s} ∪ M`` and initial state ``|s⟩``."""

    space: Space
    basis_a: np.ndarray = field(repr=False)
    basis_b: np.ndarray = field(repr=False)
    psi0: np.ndarray = field(repr=False)

    def realize(self) -> Realization:
        return Realization(
            graph=None,
            input=None,
            basis_a=OrthonormalBasis(self.space, self.basis_a),
            basis_b=OrthonormalBasis(self.space, self.basis_b),
            psi0=LabeledVector(self.space, self.psi0),
        )


def build_quantum_walk(
    edges: Sequence[tuple[object, object, float]], s: object, marked: Iterable[object]
) -> WalkGraph:
    """Walk on a weighted graph; accepts iff a marked vertex shares s's component."""
    marked = list(dict.fromkeys(marked))
    names = [f"e{i + 1}" for i in range(len(edges))]
    labels = [S_LABEL, S_BACK]
    for name in names:
        labels += [LabeledIndex(name, FWD), LabeledIndex(name, BWD)]
    for m in marked:
        labels += [LabeledIndex(f"m:{m}", FWD), LabeledIndex(f"m:{m}", "m")]
    space = Space(labels)

    a_cols = [space.vector({S_LABEL: 1 / SQRT2, S_BACK: 1 / SQRT2})]
    stars: dict[object, np.ndarray] = {}
    for name, (u, v, w) in zip(names, edges):
        if not w > 0:
            raise ValueError(f"edge ({u},{v}) has nonpositive weight")
        fwd, bwd = LabeledIndex(name, FWD), LabeledIndex(name, BWD)
        a_cols.append(space.vector({fwd: 1 / SQRT2, bwd: 1 / SQRT2}))
        stars.setdefault(u, np.zeros(space.dim, dtype=complex))[space.index(fwd)] += (
            math.sqrt(w)
        )
        stars.setdefault(v, np.zeros(space.dim, dtype=complex))[space.index(bwd)] += (
            math.sqrt(w)
        )
    stars.setdefault(s, np.zeros(space.dim, dtype=complex))[space.index(S_BACK)] += 1.0
    for m in marked:
        stars.setdefault(m, np.zeros(space.dim, dtype=complex))[
            space.index(LabeledIndex(f"m:{m}", FWD))
        ] += 1.0
    b = orth(np.column_stack(list(stars.values())))
    return WalkGraph(space, np.column_stack(a_cols), b, space.basis_vector(S_LABEL))


def build_classical_walk(
    perms: Sequence[Sequence[int]], z1: int, accepting: Iterable[int]
) -> WalkGraph:
    """Layered walk of a reversible deterministic computation ``z -> π_T(...π_1(z))``."""
    size = None
    for i, p in enumerate(perms):
        if sorted(p) != list(range(len(p))) or (size is not None and len(p) != size):
            raise ValueError(f"step {i + 1} is not a bijection on a common state set")
        size = len(p)
    if size is None:
        raise ValueError("need at least one permutation")
    edges = [
        ((ell, z), (ell + 1, perms[ell][z]), 1.0)
        for ell in range(len(perms))
        for z in range(size)
    ]
    marked = [(len(perms), z) for z in accepting]
    return build_quantum_walk(edges, (0, z1), marked)
