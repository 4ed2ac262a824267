"""Subspace-graph data model, realization, exact decision oracle and witnesses.

A :class:`SubspaceGraph` stores its space decomposition together with the
working bases.  Switch edges keep only a literal descriptor; their A-vectors
are produced by :func:`realize` once an input assignment is known.  The
remaining basis vectors do not depend on the input, so one graph object
serves every assignment.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .numcore import (
    Decomposition,
    LabeledIndex,
    LabeledVector,
    OrthonormalBasis,
    Space,
    decompose,
    in_span,
    orth,
    residual_norms,
    tolerance,
)

Key = tuple[str, ...]
Assignment = Sequence[int] | Mapping[int, int] | str

FWD = "→"
BWD = "←"
SQRT2 = math.sqrt(2.0)

S_LABEL = LabeledIndex("s", "s")
S_BACK = LabeledIndex("s", BWD)
T_FWD = LabeledIndex("t", FWD)
T_LABEL = LabeledIndex("t", "t")
BOUNDARY_LABELS = (S_LABEL, S_BACK, T_FWD, T_LABEL)
BOUNDARY_KEYS = (("s",), ("t",))

MAX_ENUMERATED_VARIABLES = 16
DECISION_FACTOR = 1e3


class MissingInputError(KeyError):
    """An input bit required by a literal was not supplied."""


class WitnessError(ValueError):
    """Requested a witness of the wrong kind for the instance."""


@dataclass(frozen=True)
class Literal:
    """Input dependence of a switch: ``x[var]``, its negation, or a constant.

    A literal with neither ``var`` nor ``const`` is a placeholder for a graph
    that will be substituted by switch composition.
    """

    var: int | None = None
    negated: bool = False
    const: int | None = None

    @classmethod
    def constant(cls, bit: int) -> Literal:
        return cls(const=int(bit))

    @classmethod
    def placeholder(cls) -> Literal:
        return cls()

    @property
    def is_placeholder(self) -> bool:
        return self.var is None and self.const is None

    def negate(self) -> Literal:
        if self.const is not None:
            return Literal(const=1 - self.const)
        if self.is_placeholder:
            raise ValueError("cannot negate a nested-graph placeholder")
        return Literal(self.var, not self.negated)

    def value(self, x: Assignment) -> int:
        if self.const is not None:
            return self.const
        if self.var is None:
            raise ValueError("placeholder switch has no value; compose it first")
        bit = lookup_bit(x, self.var)
        return bit ^ int(self.negated)

    def __str__(self) -> str:
        if self.const is not None:
            return str(self.const)
        if self.var is None:
            return "?"
        return ("!" if self.negated else "") + f"x{self.var + 1}"


def lookup_bit(x: Assignment, var: int) -> int:
    try:
        bit = x[var]
    except (IndexError, KeyError):
        raise MissingInputError(f"input has no bit for x{var + 1}") from None
    bit = int(bit)
    if bit not in (0, 1):
        raise ValueError(f"input bit for x{var + 1} must be 0 or 1, got {bit}")
    return bit


@dataclass(frozen=True)
class Edge:
    """Oriented edge ``tail -> head``; a switch iff ``literal`` is set."""

    key: Key
    tail: Key
    head: Key
    weight: float = 1.0
    literal: Literal | None = None

    @property
    def is_switch(self) -> bool:
        return self.literal is not None

    @property
    def fwd(self) -> LabeledIndex:
        return LabeledIndex(self.key[-1], FWD, self.key[:-1])

    @property
    def bwd(self) -> LabeledIndex:
        return LabeledIndex(self.key[-1], BWD, self.key[:-1])


@dataclass(frozen=True)
class CostLedger:
    """Symbolic cost bounds carried through constructions.

    ``c_plus`` bounds ``r * W+hat`` and ``c_minus`` bounds ``W-hat / r``.
    """

    c_plus: float
    c_minus: float
    basis_time: int = 1
    log_dim: float = 0.0

    def __post_init__(self) -> None:
        for name in ("c_plus", "c_minus", "basis_time", "log_dim"):
            if getattr(self, name) < 0:
                raise ValueError(f"ledger entry {name} must be nonnegative")

    @property
    def c(self) -> float:
        return math.sqrt(self.c_plus * self.c_minus)


@dataclass(frozen=True)
class SubspaceGraph:
    space: Space
    vertices: tuple[Key, ...]
    edges: tuple[Edge, ...]
    s: Key
    t: Key
    a_fixed: np.ndarray = field(repr=False)
    b_minus: np.ndarray = field(repr=False)
    b1_bar: np.ndarray = field(repr=False)
    scaling: float
    ledger: CostLedger
    vertex_spaces: Mapping[Key, np.ndarray] | None = field(default=None, repr=False)
    kind: str = "generic"
    name: str = ""

    def __post_init__(self) -> None:
        for attr in ("a_fixed", "b_minus", "b1_bar"):
            arr = np.array(getattr(self, attr), dtype=complex)
            arr.setflags(write=False)
            object.__setattr__(self, attr, arr)
        if self.vertex_spaces is not None:
            frozen = {}
            for u, m in self.vertex_spaces.items():
                arr = np.array(m, dtype=complex).reshape(self.space.dim, -1)
                arr.setflags(write=False)
                frozen[u] = arr
            object.__setattr__(self, "vertex_spaces", frozen)

    @property
    def dim(self) -> int:
        return self.space.dim

    @cached_property
    def switches(self) -> tuple[Edge, ...]:
        return tuple(e for e in self.edges if e.is_switch)

    @cached_property
    def edge_by_key(self) -> dict[Key, Edge]:
        return {e.key: e for e in self.edges}

    @cached_property
    def variables(self) -> tuple[int, ...]:
        found = {e.literal.var for e in self.switches if e.literal.var is not None}
        return tuple(sorted(found))

    @cached_property
    def switch_rows(self) -> tuple[np.ndarray, np.ndarray]:
        fwd = np.array([self.space.index(e.fwd) for e in self.switches], dtype=int)
        bwd = np.array([self.space.index(e.bwd) for e in self.switches], dtype=int)
        return fwd, bwd

    @cached_property
    def b_switch(self) -> np.ndarray:
        fwd, bwd = self.switch_rows
        m = np.zeros((self.dim, len(fwd)), dtype=complex)
        cols = np.arange(len(fwd))
        m[fwd, cols] = 1 / SQRT2
        m[bwd, cols] = 1 / SQRT2
        return m

    @cached_property
    def basis_b(self) -> np.ndarray:
        return np.concatenate([self.b_minus, self.b_switch], axis=1)

    @cached_property
    def edge_rows(self) -> np.ndarray:
        """Indices of every label outside the two boundary blocks."""
        return np.array(
            [
                i
                for i, lab in enumerate(self.space.labels)
                if lab.key not in BOUNDARY_KEYS
            ],
            dtype=int,
        )

    @property
    def b0(self) -> np.ndarray:
        return self.b_minus[:, 0]

    @property
    def b1(self) -> np.ndarray:
        return self.b_minus[:, 1]

    def switch_a_vectors(self, x: Assignment) -> np.ndarray:
        fwd, bwd = self.switch_rows
        signs = np.array(
            [(-1) ** e.literal.value(x) for e in self.switches], dtype=float
        )
        m = np.zeros((self.dim, len(fwd)), dtype=complex)
        cols = np.arange(len(fwd))
        m[fwd, cols] = 1 / SQRT2
        m[bwd, cols] = -signs / SQRT2
        return m

    def star_state(self, u: Key) -> np.ndarray:
        """Weighted star state of ``u`` built from incident switch edges."""
        v = np.zeros(self.dim, dtype=complex)
        for e in self.edges:
            if e.tail == u:
                v[self.space.index(e.fwd)] += math.sqrt(e.weight)
            if e.head == u:
                v[self.space.index(e.bwd)] += math.sqrt(e.weight)
        return v

    def boundary_star(self, which: str) -> np.ndarray:
        """Star part of the 1-dim vertex space at ``s`` or ``t``.

        The vertex space vector is rescaled so its boundary amplitude is one,
        and the boundary amplitude is then removed.
        """
        if self.vertex_spaces is None:
            raise ValueError(f"graph {self.name!r} has no local vertex spaces")
        u, lab = (self.s, S_BACK) if which == "s" else (self.t, T_FWD)
        m = self.vertex_spaces.get(u)
        if m is None or m.shape[1] != 1:
            raise ValueError(f"vertex space at {which} must be one-dimensional")
        v = m[:, 0]
        amp = v[self.space.index(lab)]
        if abs(amp) < 1e-12:
            raise ValueError(f"vertex space at {which} misses its boundary label")
        star = v / amp
        star = star.copy()
        star[self.space.index(lab)] = 0.0
        return star

    def with_changes(self, **changes) -> SubspaceGraph:
        fields = {f: getattr(self, f) for f in self.__dataclass_fields__}
        fields.update(changes)
        return SubspaceGraph(**fields)


def boundary_a_vectors(space: Space) -> np.ndarray:
    m = np.zeros((space.dim, 2), dtype=complex)
    m[space.index(S_LABEL), 0] = m[space.index(S_BACK), 0] = 1 / SQRT2
    m[space.index(T_LABEL), 1] = m[space.index(T_FWD), 1] = 1 / SQRT2
    return m


def b0_vector(space: Space) -> np.ndarray:
    return space.vector({S_BACK: 1 / SQRT2, T_FWD: 1 / SQRT2})


def b1_vector(space: Space, r: float, b1_bar: np.ndarray) -> np.ndarray:
    v = space.vector({S_BACK: 1.0, T_FWD: -1.0}) + math.sqrt(r) * b1_bar
    return v / math.sqrt(2.0 + r)


def psi0_vector(space: Space) -> np.ndarray:
    return space.vector({S_LABEL: 1 / SQRT2, T_LABEL: -1 / SQRT2})


# --------------------------------------------------------------------------
# Validation


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


def _incident_rows(g: SubspaceGraph, u: Key) -> set[int]:
    rows: set[int] = set()
    for e in g.edges:
        if u in (e.tail, e.head):
            rows.update(i for i, lab in enumerate(g.space.labels) if lab.key == e.key)
    if u == g.s:
        rows.add(g.space.index(S_BACK))
    if u == g.t:
        rows.add(g.space.index(T_FWD))
    return rows


def validate(g: SubspaceGraph, tol: float | None = None) -> ValidationReport:
    sp = g.space
    tol = tolerance(sp.dim) if tol is None else tol
    out: list[str] = []

    if len(set(sp.labels)) != len(sp.labels):
        out.append("block-disjointness: duplicate labels in H_G")
    owners = {lab.key for lab in sp.labels}
    edge_keys = {e.key for e in g.edges}
    if len(edge_keys) != len(g.edges):
        out.append("block-disjointness: duplicate edge keys")
    stray = owners - edge_keys - set(BOUNDARY_KEYS)
    if stray:
        out.append(
            f"block-disjointness: labels owned by unknown blocks {sorted(stray)[:3]}"
        )
    for key in edge_keys & set(BOUNDARY_KEYS):
        out.append(f"block-disjointness: edge {key} collides with a boundary block")

    for lab in BOUNDARY_LABELS:
        if lab not in sp:
            out.append(f"canonical-boundary: missing label {lab}")
    if out:
        return ValidationReport(tuple(out))

    for key, expected in ((("s",), {S_LABEL, S_BACK}), (("t",), {T_FWD, T_LABEL})):
        got = {lab for lab in sp.labels if lab.key == key}
        if got != expected:
            out.append(
                f"canonical-boundary: block {key[0]} has labels {sorted(map(str, got))}"
            )
    vertex_set = set(g.vertices)
    if g.s == g.t or g.s not in vertex_set or g.t not in vertex_set:
        out.append("canonical-boundary: s and t must be distinct vertices of G")

    for e in g.edges:
        if e.tail not in vertex_set or e.head not in vertex_set:
            out.append(f"edge {e.key}: endpoint not a vertex")
        if not e.weight > 0:
            out.append(f"edge {e.key}: weight must be positive")
        if e.is_switch:
            got = {lab for lab in sp.labels if lab.key == e.key}
            if got != {e.fwd, e.bwd}:
                out.append(f"switch-edge: block {e.key} must hold exactly (→,e),(←,e)")

    boundary_rows = [sp.index(lab) for lab in BOUNDARY_LABELS]
    switch_rows = set(np.concatenate(g.switch_rows).tolist()) if g.switches else set()

    # A basis: blockwise, boundary vectors present, nothing on switch blocks.
    a = g.a_fixed
    block_of = [lab.key for lab in sp.labels]
    for j in range(a.shape[1]):
        rows = np.flatnonzero(np.abs(a[:, j]) > tol)
        blocks = {block_of[i] for i in rows}
        if len(blocks) > 1:
            out.append(f"composable-basis item 1: A vector {j} spans several blocks")
        if switch_rows.intersection(rows.tolist()):
            out.append(f"switch-edge: fixed A vector {j} touches a switch block")
    bnd = boundary_a_vectors(sp)
    for j, name in enumerate(("s", "t")):
        if a.shape[1] == 0 or not in_span(bnd[:, j], orth(a), tol):
            out.append(f"canonical-boundary: Ξ_{name}^A vector missing from Ψ_A")
    boundary_a = np.abs(a[boundary_rows, :]).sum(axis=0) > tol
    if int(boundary_a.sum()) != 2:
        out.append(
            "canonical-boundary: boundary blocks must carry exactly one A vector each"
        )

    a_all = np.concatenate([a, _placeholder_a(g)], axis=1)
    if a_all.shape[1]:
        gram = a_all.conj().T @ a_all
        if np.max(np.abs(gram - np.eye(gram.shape[0]))) > tol:
            out.append("orthonormality: Ψ_A is not orthonormal")

    # B basis: composable form of b0, b1 and orthogonality to the boundary.
    bm = g.b_minus
    if bm.shape[1] < 2:
        out.append("composable-basis: Ψ_B⁻ must contain b0 and b1")
        return ValidationReport(tuple(out))
    if np.max(np.abs(bm[:, 0] - b0_vector(sp))) > tol:
        out.append("composable-basis item 3: b0 != (|←,s⟩+|→,t⟩)/√2")
    if g.scaling < 0:
        out.append("composable-basis item 4: scaling factor must be nonnegative")
    else:
        if np.max(np.abs(bm[:, 1] - b1_vector(sp, g.scaling, g.b1_bar))) > tol:
            out.append("composable-basis item 4: b1 != (|←,s⟩−|→,t⟩+√r·b̄1)/√(2+r)")
        bar = g.b1_bar
        if g.scaling > 0 and abs(np.linalg.norm(bar) - 1) > tol:
            out.append("composable-basis item 4: b̄1 is not a unit vector")
        if max(abs(bar[sp.index(S_BACK)]), abs(bar[sp.index(T_FWD)])) > tol:
            out.append("composable-basis item 4: b̄1 not orthogonal to |←,s⟩,|→,t⟩")
    rest = bm[:, 2:]
    if (
        rest.shape[1]
        and np.max(np.abs(rest[[sp.index(S_BACK), sp.index(T_FWD)], :])) > tol
    ):
        out.append(
            "composable-basis item 5: Ψ_B⁻∖{b0,b1} not orthogonal to |←,s⟩,|→,t⟩"
        )
    if np.max(np.abs(g.basis_b[[sp.index(S_LABEL), sp.index(T_LABEL)], :])) > tol:
        out.append("canonical-boundary: Ψ_B touches |s⟩ or |t⟩")
    if g.switches:
        fwd, bwd = g.switch_rows
        if np.max(np.abs(bm[fwd, :] + bm[bwd, :]), initial=0.0) > tol:
            out.append("switch-edge: Ψ_B⁻ has a component along a switch B-vector")
    bb = g.basis_b
    gram = bb.conj().T @ bb
    if np.max(np.abs(gram - np.eye(gram.shape[0]))) > tol:
        out.append("orthonormality: Ψ_B is not orthonormal")

    if g.vertex_spaces is not None:
        out.extend(_check_vertex_spaces(g, tol))
    return ValidationReport(tuple(out))


def _placeholder_a(g: SubspaceGraph) -> np.ndarray:
    """Switch A-vectors with every switch treated as off (sign choice is irrelevant
    for orthonormality because each vector sits alone in its own block)."""
    fwd, bwd = g.switch_rows
    m = np.zeros((g.dim, len(fwd)), dtype=complex)
    cols = np.arange(len(fwd))
    m[fwd, cols] = 1 / SQRT2
    m[bwd, cols] = -1 / SQRT2
    return m


def _check_vertex_spaces(g: SubspaceGraph, tol: float) -> list[str]:
    out: list[str] = []
    sp = g.space
    vs = g.vertex_spaces or {}
    for u, m in vs.items():
        allowed = _incident_rows(g, u)
        outside = [
            i
            for i in np.flatnonzero(np.max(np.abs(m), axis=1) > tol)
            if i not in allowed
        ]
        if outside:
            out.append(f"vertex {'/'.join(u)}: vertex space leaves Ξ_E(u)")
        for e in g.switches:
            # V_u ∩ Ξ_e may only use the label pointing away from u.
            if (
                e.tail == u
                and e.head != u
                and np.max(np.abs(m[sp.index(e.bwd), :])) > tol
            ):
                out.append(
                    f"vertex {'/'.join(u)}: uses (←,{e.key[-1]}) on an outgoing switch"
                )
            if (
                e.head == u
                and e.tail != u
                and np.max(np.abs(m[sp.index(e.fwd), :])) > tol
            ):
                out.append(
                    f"vertex {'/'.join(u)}: uses (→,{e.key[-1]}) on an incoming switch"
                )
    if g.kind == "switching_network":
        for u in g.vertices:
            expected = g.star_state(u)
            if u == g.s:
                expected = expected + sp.basis_vector(S_BACK)
            if u == g.t:
                expected = expected + sp.basis_vector(T_FWD)
            m = vs.get(u)
            if m is None or m.shape[1] != 1:
                out.append(
                    f"simple-vertex: {'/'.join(u)} lacks a one-dimensional vertex space"
                )
                continue
            v = m[:, 0]
            if not np.any(expected):
                if np.max(np.abs(v)) > tol:
                    out.append(
                        f"simple-vertex: isolated {'/'.join(u)} has a nonzero vertex space"
                    )
                continue
            ratio = np.vdot(expected, v) / np.vdot(expected, expected)
            if np.max(np.abs(v - ratio * expected)) > tol:
                out.append(f"simple-vertex: V_{'/'.join(u)} != span ψ⋆({'/'.join(u)})")
    if out:
        return out
    local = local_b_basis(g)
    if local is not None and not _same_span(local, g.basis_b, tol):
        out.append(
            "locality: working basis of B_G differs from the local vertex-space sum"
        )
    return out


def local_b_basis(g: SubspaceGraph) -> np.ndarray | None:
    """Orthonormal basis of ⊕V_u + Σ Ξ_e^B assembled from local spaces."""
    if g.vertex_spaces is None:
        return None
    cols = [m for m in g.vertex_spaces.values()] + [g.b_switch]
    return orth(np.concatenate(cols, axis=1))


def _same_span(q1: np.ndarray, q2: np.ndarray, tol: float) -> bool:
    q1, q2 = orth(q1), orth(q2)
    if q1.shape[1] != q2.shape[1]:
        return False
    if q1.shape[1] == 0:
        return True
    return bool(
        np.all(residual_norms(q1, q2) <= tol) and np.all(residual_norms(q2, q1) <= tol)
    )


# --------------------------------------------------------------------------
# Realization and the exact oracle


@dataclass(frozen=True)
class Realization:
    graph: SubspaceGraph | None
    input: Assignment | None
    basis_a: OrthonormalBasis
    basis_b: OrthonormalBasis
    psi0: LabeledVector

    @property
    def space(self) -> Space:
        return self.psi0.space

    @cached_property
    def decomposition(self) -> Decomposition:
        return decompose(self.psi0.amplitudes, self.basis_a.matrix, self.basis_b.matrix)

    @cached_property
    def residual_sq(self) -> float:
        return float(np.linalg.norm(self.decomposition.residual) ** 2)


def realize(g: SubspaceGraph, x: Assignment = ()) -> Realization:
    a = np.concatenate([g.a_fixed, g.switch_a_vectors(x)], axis=1)
    sp = g.space
    return Realization(
        graph=g,
        input=x,
        basis_a=OrthonormalBasis(sp, a),
        basis_b=OrthonormalBasis(sp, g.basis_b),
        psi0=LabeledVector(sp, psi0_vector(sp)),
    )


def decision_threshold(dim: int) -> float:
    return DECISION_FACTOR * tolerance(dim)


def decide_exact(r: Realization) -> int:
    return int(r.residual_sq > decision_threshold(r.space.dim))


# --------------------------------------------------------------------------
# Witnesses


@dataclass(frozen=True)
class Witness:
    kind: str
    vector: LabeledVector
    norm_sq: float
    provenance: str = ""

    def __post_init__(self) -> None:
        if self.kind not in ("positive", "negative"):
            raise ValueError(
                f"witness kind must be positive or negative, got {self.kind!r}"
            )


def crop(space: Space, v: np.ndarray) -> np.ndarray:
    out = np.array(v, dtype=complex)
    for lab in BOUNDARY_LABELS:
        out[space.index(lab)] = 0.0
    return out


def make_witness(kind: str, space: Space, v: np.ndarray, provenance: str) -> Witness:
    cropped = crop(space, v)
    return Witness(
        kind,
        LabeledVector(space, cropped),
        float(np.vdot(cropped, cropped).real),
        provenance,
    )


def min_positive_witness(r: Realization) -> Witness:
    if not decide_exact(r):
        raise WitnessError("negative-instance: ψ0 lies in A+B, no positive witness")
    res = r.decomposition.residual
    w = SQRT2 * res / float(np.vdot(res, res).real)
    return make_witness("positive", r.space, w, "least-norm: √2·Π⊥ψ0/‖Π⊥ψ0‖²")


def min_negative_witness(r: Realization) -> Witness:
    if decide_exact(r):
        raise WitnessError("positive-instance: ψ0 has a component outside A+B")
    # |s⟩ − |t⟩ = √2·ψ0, and the least-norm split is linear in the target.
    w_a = SQRT2 * r.decomposition.a
    return make_witness(
        "negative", r.space, w_a, "least-norm split of |s⟩−|t⟩ over (A,B)"
    )


def completed_positive(space: Space, cropped: np.ndarray) -> np.ndarray:
    return crop(space, cropped) + space.vector(
        {S_LABEL: 1, S_BACK: -1, T_FWD: 1, T_LABEL: -1}
    )


def check_witness(r: Realization, w: Witness, tol: float | None = None) -> bool:
    sp = r.space
    if w.vector.space != sp:
        return False
    tol = tolerance(sp.dim) if tol is None else tol
    v = w.vector.amplitudes
    scale = max(1.0, float(np.linalg.norm(v)))
    if any(abs(v[sp.index(lab)]) > tol for lab in BOUNDARY_LABELS):
        return False
    qa, qb = r.basis_a.matrix, r.basis_b.matrix
    if w.kind == "positive":
        full = completed_positive(sp, v)
        scale = max(1.0, float(np.linalg.norm(full)))
        return bool(
            np.linalg.norm(qa.conj().T @ full) <= tol * scale
            and np.linalg.norm(qb.conj().T @ full) <= tol * scale
        )
    rows = r.graph.edge_rows if r.graph is not None else None
    if rows is not None:
        edge_a = qa[
            :, np.abs(qa[np.setdiff1d(np.arange(sp.dim), rows), :]).sum(axis=0) <= tol
        ]
    else:
        edge_a = qa
    if residual_norms(v.reshape(-1, 1), edge_a)[0] > tol * scale:
        return False
    shifted = v + sp.vector({S_BACK: 1, T_FWD: -1})
    return bool(
        residual_norms(shifted.reshape(-1, 1), qb)[0]
        <= tol * max(1.0, np.linalg.norm(shifted))
    )


# --------------------------------------------------------------------------
# Complexity


@dataclass(frozen=True)
class Complexity:
    w_plus_hat: float | None
    w_minus_hat: float | None

    @property
    def c_hat(self) -> float | None:
        if self.w_plus_hat is None or self.w_minus_hat is None:
            return None
        return math.sqrt(self.w_plus_hat * self.w_minus_hat)

    def __iter__(self):
        return iter((self.w_plus_hat, self.w_minus_hat, self.c_hat))


def all_assignments(variables: Sequence[int]) -> Iterable[dict[int, int]]:
    for bits in itertools.product((0, 1), repeat=len(variables)):
        yield dict(zip(variables, bits))


def complexity(
    g: SubspaceGraph, inputs: Iterable[Assignment] | None = None
) -> Complexity:
    if inputs is None:
        if len(g.variables) > MAX_ENUMERATED_VARIABLES:
            raise ValueError(
                f"{len(g.variables)} variables exceed the enumeration limit; pass inputs explicitly"
            )
        inputs = all_assignments(g.variables)
    w_plus = w_minus = None
    for x in inputs:
        r = realize(g, x)
        if decide_exact(r):
            ns = min_positive_witness(r).norm_sq
            w_plus = ns if w_plus is None else max(w_plus, ns)
        else:
            ns = min_negative_witness(r).norm_sq
            w_minus = ns if w_minus is None else max(w_minus, ns)
    return Complexity(w_plus, w_minus)


def truth_table(g: SubspaceGraph) -> dict[tuple[int, ...], int]:
    return {
        tuple(x[v] for v in g.variables): decide_exact(realize(g, x))
        for x in all_assignments(g.variables)
    }
