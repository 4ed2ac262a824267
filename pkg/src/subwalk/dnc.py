"""Quantum divide & conquer: cost recursions, recursive graphs, and DSTCON.

A problem ``f_{ℓ,n}`` is split as ``φ'(f_{λ(ℓ,n)}(x^{(1)}), ..., f_{λ(ℓ,n)}(x^{(a)})) ∨ f_aux``
with a symmetric formula ``φ'``.  The graph for ``f_{ℓ,n}`` composes ``a``
copies of the graph one level down along ``φ'`` and ORs in the auxiliary
branch, which is dropped when it is identically 0.

Directed st-connectivity is the main instance: ``f_{ℓ,n}(u, v)`` asks for a
path of length at most ``ℓ``, ``φ' = ⋁_w (f(u,w) ∧ f(w,v))`` and the base
case ``ℓ = 1`` is one adjacency query.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from collections.abc import Callable, Hashable, Mapping
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .compose import CompositionPlan, formula_compose, switch_compose
from .formula import AND, OR, FormulaAst, Leaf, evaluate, symmetric_tree
from .gadgets import AlgorithmSpec, build_or, compile_algorithm, single_switch
from .graphcore import CostLedger, Literal, SubspaceGraph, decide_exact, realize

MAX_RECURSION = 64
DEFAULT_MAX_DIM = 20000


class DimensionOverflowError(MemoryError):
    """A recursion level produced a graph larger than the caller's bound."""


class RecursionSpecError(ValueError):
    """The size-reduction maps do not reach the base case."""


@dataclass(frozen=True)
class DncSpec:
    """Recursive decomposition of a family ``f_{ℓ,n}``.

    ``sub_instance(ell, n, inst, i)`` gives the instance fed to variable ``i``
    of ``phi_prime``.  ``base(ell, n, inst)`` builds the graph used for
    ``ell <= ell0``; ``aux(ell, n, inst)`` builds the auxiliary branch or
    returns ``None`` when it is identically 0.  ``base_value``/``aux_value``
    evaluate the same functions classically on an input ``x``.
    """

    phi_prime: FormulaAst
    lambda1: Callable[[int], int]
    lambda2: Callable[[int], int]
    ell0: int
    sub_instance: Callable[[int, int, Any, int], Hashable]
    base: Callable[[int, int, Any], SubspaceGraph]
    aux: Callable[[int, int, Any], SubspaceGraph | None]
    base_value: Callable[[int, int, Any, Any], int]
    aux_value: Callable[[int, int, Any, Any], int]
    t_aux: Callable[[int, int], float]
    s_aux: Callable[[int, int], float] = lambda ell, n: 0.0
    aux_is_zero: Callable[[int, int], bool] = lambda ell, n: False

    def __post_init__(self) -> None:
        if not self.phi_prime.symmetric:
            raise ValueError("phi_prime must be a symmetric formula")

    @property
    def arity(self) -> int:
        return len(self.phi_prime.variables)

    @property
    def d_bar(self) -> int:
        """Product of gate degrees at odd heights ``1, 3, ...`` above the leaves."""
        degrees = []
        node = self.phi_prime.root
        while not isinstance(node, Leaf):
            degrees.append(len(node.children))
            node = node.children[0]
        degrees.reverse()  # degrees[j-1] = d_j, counted from the leaves
        return math.prod(degrees[j - 1] for j in range(1, len(degrees) + 1, 2))

    def levels(self, ell: int, n: int) -> list[tuple[int, int]]:
        """``(ℓ, n)`` pairs from the top level down to the base case."""
        out = [(ell, n)]
        while out[-1][0] > self.ell0:
            cur = out[-1]
            nxt = (self.lambda1(cur[0]), self.lambda2(cur[1]))
            if nxt[0] >= cur[0] or len(out) > MAX_RECURSION:
                raise RecursionSpecError(
                    f"λ1 does not decrease toward ℓ0 at ℓ={cur[0]}"
                )
            out.append(nxt)
        return out


@dataclass(frozen=True)
class CostRow:
    ell: int
    n: int
    t: float
    c_minus: float

    @property
    def c_plus(self) -> float:
        return self.t**2 / self.c_minus


def cost_recursion(
    spec: DncSpec, ell: int, n: int, elide_aux: bool = False
) -> dict[tuple[int, int], CostRow]:
    """Evaluate ``T`` and ``C⁻`` at every level below ``(ℓ, n)``.

    With ``elide_aux`` the auxiliary cost is taken as 0 on levels where the
    auxiliary function is identically 0, which matches the graph actually built.
    """
    table: dict[tuple[int, int], CostRow] = {}
    for ell_i, n_i in reversed(spec.levels(ell, n)):
        t_aux = spec.t_aux(ell_i, n_i)
        if ell_i <= spec.ell0:
            table[(ell_i, n_i)] = CostRow(ell_i, n_i, 2 * t_aux, t_aux)
            continue
        if elide_aux and spec.aux_is_zero(ell_i, n_i):
            t_aux = 0.0
        child = table[(spec.lambda1(ell_i), spec.lambda2(n_i))]
        a = spec.arity
        t = math.sqrt(a * child.t**2 + 4 * t_aux**2)
        c_minus = t**2 / (a * child.t**2 / (spec.d_bar * child.c_minus) + 4 * t_aux)
        table[(ell_i, n_i)] = CostRow(ell_i, n_i, t, c_minus)
    return table


@dataclass
class DncBuilder:
    """Builds recursive graphs, sharing one graph per ``(ℓ, n, instance)``."""

    spec: DncSpec
    max_dim: int = DEFAULT_MAX_DIM
    _memo: dict = field(default_factory=dict, repr=False)

    def build(self, ell: int, n: int, inst: Hashable) -> SubspaceGraph:
        key = (ell, n, inst)
        if key not in self._memo:
            self._memo[key] = self._build(ell, n, inst)
        return self._memo[key]

    def _build(self, ell: int, n: int, inst: Hashable) -> SubspaceGraph:
        spec = self.spec
        costs = cost_recursion(spec, ell, n, elide_aux=True)
        if ell <= spec.ell0:
            g = spec.base(ell, n, inst)
            row = costs[(ell, n)]
            return g.with_changes(
                ledger=CostLedger(
                    row.c_plus, row.c_minus, g.ledger.basis_time, g.ledger.log_dim
                )
            )
        sub = (spec.lambda1(ell), spec.lambda2(n))
        child_row = costs[sub]
        leaves = {}
        for i in spec.phi_prime.variables:
            child = self.build(sub[0], sub[1], spec.sub_instance(ell, n, inst, i))
            leaves[i] = (
                child,
                CostLedger(
                    child_row.c_plus, child_row.c_minus, child.ledger.basis_time
                ),
            )
        composed = formula_compose(spec.phi_prime, leaves)
        g = composed.graph
        aux = spec.aux(ell, n, inst)
        if aux is not None:
            w0 = composed.ledger.c_plus / 2
            w1 = aux.ledger.c_plus / 2
            outer = build_or(2, [w0, w1], [Literal.placeholder()] * 2)
            g = switch_compose(CompositionPlan(outer, {("e1",): g, ("e2",): aux}))
        row = costs[(ell, n)]
        if g.dim > self.max_dim:
            raise DimensionOverflowError(
                f"level ℓ={ell}, n={n}: dimension {g.dim} exceeds {self.max_dim}"
            )
        ledger = CostLedger(
            row.c_plus, row.c_minus, g.ledger.basis_time, math.log2(g.dim)
        )
        return g.with_changes(ledger=ledger, name=f"dnc ℓ={ell} n={n} {inst}")


def _no_graph(*_args):
    raise RecursionSpecError("this spec only supports cost evaluation")


def cost_only_spec(
    phi_prime: FormulaAst,
    lambda1: Callable[[int], int],
    lambda2: Callable[[int], int],
    ell0: int,
    t_aux: float,
    aux_zero_above: int | None = None,
) -> DncSpec:
    """Spec carrying just what :func:`cost_recursion` reads.

    ``t_aux`` is the auxiliary cost at every level; with ``aux_zero_above``
    the auxiliary function is declared identically 0 for ``ℓ`` above it.
    """
    return DncSpec(
        phi_prime=phi_prime,
        lambda1=lambda1,
        lambda2=lambda2,
        ell0=ell0,
        sub_instance=_no_graph,
        base=_no_graph,
        aux=_no_graph,
        base_value=_no_graph,
        aux_value=_no_graph,
        t_aux=lambda ell, n: float(t_aux),
        aux_is_zero=lambda ell, n: aux_zero_above is not None and ell > aux_zero_above,
    )


def build_dnc_graph(
    spec: DncSpec, ell: int, n: int, inst: Hashable, max_dim: int = DEFAULT_MAX_DIM
) -> SubspaceGraph:
    return DncBuilder(spec, max_dim).build(ell, n, inst)


def evaluate_dnc(spec: DncSpec, ell: int, n: int, inst: Hashable, x: Any) -> int:
    """Direct classical evaluation of the recursive definition."""
    if ell <= spec.ell0:
        return spec.base_value(ell, n, inst, x)
    sub = (spec.lambda1(ell), spec.lambda2(n))
    bits = {
        i: evaluate_dnc(spec, sub[0], sub[1], spec.sub_instance(ell, n, inst, i), x)
        for i in spec.phi_prime.variables
    }
    return int(evaluate(spec.phi_prime.root, bits) or spec.aux_value(ell, n, inst, x))


# --------------------------------------------------------------------------
# Directed st-connectivity


@dataclass(frozen=True)
class DigraphInstance:
    """Directed graph on vertices ``0..n-1``; every vertex carries a self-loop."""

    n: int
    edges: frozenset[tuple[int, int]]
    s: int
    t: int

    def __init__(self, n: int, edges, s: int, t: int):
        if n < 1:
            raise ValueError("a digraph needs at least one vertex")
        edge_set = frozenset((int(u), int(v)) for u, v in edges)
        for u, v in edge_set:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) leaves the vertex range 0..{n - 1}")
        if not (0 <= s < n and 0 <= t < n):
            raise ValueError("s and t must be vertices")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", edge_set)
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "t", t)

    def adjacent(self, u: int, v: int) -> int:
        return int(u == v or (u, v) in self.edges)

    def variable(self, u: int, v: int) -> int:
        return u * self.n + v

    def assignment(self) -> dict[int, int]:
        """Adjacency bits keyed by ``u·n + v`` for ``u ≠ v``."""
        return {
            self.variable(u, v): self.adjacent(u, v)
            for u in range(self.n)
            for v in range(self.n)
            if u != v
        }


def round_up_power_of_two(ell: int) -> int:
    return 1 << max(0, math.ceil(math.log2(max(ell, 1))))


def dstcon_formula(n: int) -> FormulaAst:
    """``⋁_{w<n} (y_{2w} ∧ y_{2w+1})``."""
    return symmetric_tree([OR, AND], [n, 2])


def _switch_base(n: int) -> Callable[[int, int, Any], SubspaceGraph]:
    def base(ell: int, n_: int, inst: tuple[int, int]) -> SubspaceGraph:
        u, v = inst
        lit = Literal.constant(1) if u == v else Literal(var=u * n + v)
        return single_switch(lit)

    return base


def _query_algorithm(bit: int) -> AlgorithmSpec:
    """One-query zero-error algorithm that writes the adjacency bit to the answer register."""
    flip = (
        np.array([[0, 1], [1, 0]], dtype=complex) if bit else np.eye(2, dtype=complex)
    )
    return AlgorithmSpec(dim_z=1, steps=(flip,), weights="unit")


def dstcon_spec(
    n: int, base: str = "switch", x: Mapping[int, int] | None = None
) -> DncSpec:
    """Recursive decomposition of bounded-length st-connectivity on ``n`` vertices.

    ``base="switch"`` gives one input-independent graph per instance with
    switches on adjacency literals.  ``base="algorithm"`` compiles the
    one-query algorithm for a fixed input ``x`` instead.
    """
    if base not in ("switch", "algorithm"):
        raise ValueError("base must be 'switch' or 'algorithm'")
    if base == "algorithm" and x is None:
        raise ValueError("the algorithm base case needs the input x")

    def sub_instance(
        ell: int, n_: int, inst: tuple[int, int], i: int
    ) -> tuple[int, int]:
        u, v = inst
        w, second = divmod(i, 2)
        return (w, v) if second else (u, w)

    def base_value(ell: int, n_: int, inst: tuple[int, int], bits) -> int:
        u, v = inst
        return 1 if u == v else int(bits[u * n + v])

    if base == "switch":
        build_base = _switch_base(n)
    else:

        def build_base(ell: int, n_: int, inst: tuple[int, int]) -> SubspaceGraph:
            return compile_algorithm(_query_algorithm(base_value(ell, n_, inst, x)))

    def aux(ell: int, n_: int, inst) -> SubspaceGraph | None:
        return build_base(ell, n_, inst) if ell <= 1 else None

    def aux_value(ell: int, n_: int, inst, bits) -> int:
        return base_value(ell, n_, inst, bits) if ell <= 1 else 0

    return DncSpec(
        phi_prime=dstcon_formula(n),
        lambda1=lambda ell: ell // 2,
        lambda2=lambda m: m,
        ell0=1,
        sub_instance=sub_instance,
        base=build_base,
        aux=aux,
        base_value=base_value,
        aux_value=aux_value,
        t_aux=lambda ell, m: 1.0,
        s_aux=lambda ell, m: math.log2(max(m, 2)),
        aux_is_zero=lambda ell, m: ell > 1,
    )


def build_dstcon_graph(
    inst: DigraphInstance,
    ell: int | None = None,
    base: str = "switch",
    max_dim: int = DEFAULT_MAX_DIM,
) -> SubspaceGraph:
    """Graph deciding whether ``s`` reaches ``t`` within ``ℓ`` steps (``ℓ`` rounded up to a power of 2).

    With the switch base case the graph depends only on ``(n, s, t, ℓ)``;
    evaluate it on ``inst.assignment()``.
    """
    ell = round_up_power_of_two(inst.n if ell is None else ell)
    x = inst.assignment() if base == "algorithm" else None
    spec = dstcon_spec(inst.n, base, x)
    return build_dnc_graph(spec, ell, inst.n, (inst.s, inst.t), max_dim)


def dstcon_decide(
    inst: DigraphInstance, ell: int | None = None, graph: SubspaceGraph | None = None
) -> int:
    g = build_dstcon_graph(inst, ell) if graph is None else graph
    return decide_exact(realize(g, inst.assignment()))


def dstcon_cost_table(
    n: int, ell: int | None = None, elide_aux: bool = False
) -> dict[tuple[int, int], CostRow]:
    ell = round_up_power_of_two(n if ell is None else ell)
    return cost_recursion(dstcon_spec(n), ell, n, elide_aux)


def classical_savitch(inst: DigraphInstance, ell: int | None = None) -> int:
    """Savitch's recursion ``path_ℓ(u,v) = ⋁_w path_{⌈ℓ/2⌉}(u,w) ∧ path_{⌈ℓ/2⌉}(w,v)``."""
    cache: dict[tuple[int, int, int], int] = {}

    def path(length: int, u: int, v: int) -> int:
        key = (length, u, v)
        if key not in cache:
            if length <= 1:
                cache[key] = inst.adjacent(u, v)
            else:
                half = (length + 1) // 2
                cache[key] = int(
                    any(path(half, u, w) and path(half, w, v) for w in range(inst.n))
                )
        return cache[key]

    return path(inst.n if ell is None else ell, inst.s, inst.t)


def classical_savitch_time(n: int, ell: int | None = None) -> int:
    """Query count of Savitch's recursion: ``T(ℓ) = 2n·T(ℓ/2)``, ``T(1) = 1``."""
    ell = round_up_power_of_two(n if ell is None else ell)
    return (2 * n) ** int(math.log2(ell))


def bfs_reachability(inst: DigraphInstance, length_cap: int | None = None) -> int:
    if inst.s == inst.t:
        return 1
    dist = {inst.s: 0}
    queue = deque([inst.s])
    while queue:
        u = queue.popleft()
        if length_cap is not None and dist[u] >= length_cap:
            continue
        for v in range(inst.n):
            if v not in dist and (u, v) in inst.edges:
                if v == inst.t:
                    return 1
                dist[v] = dist[u] + 1
                queue.append(v)
    return 0


def all_digraphs(n: int):
    """Every edge set on ``n`` vertices (off-diagonal pairs only)."""
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    for bits in itertools.product((0, 1), repeat=len(pairs)):
        yield frozenset(p for p, b in zip(pairs, bits) if b)


def random_digraph(
    n: int, p: float, rng: np.random.Generator, s: int = 0, t: int | None = None
) -> DigraphInstance:
    edges = [(u, v) for u in range(n) for v in range(n) if u != v and rng.random() < p]
    return DigraphInstance(n, edges, s, n - 1 if t is None else t)
