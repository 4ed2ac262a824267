"""Dense complex linear algebra over labeled index sets.

Every Hilbert space in the package is a :class:`Space`: an ordered tuple of
:class:`LabeledIndex` entries.  Vectors and bases carry their space so that
mismatched operands are caught early instead of silently broadcasting.
"""

from __future__ import annotations

import math
import os
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
import scipy.linalg

BASE_TOL = 1e-9
RANK_THRESHOLD = 1e-10


class NotInSpanError(ValueError):
    """Raised when a target vector is not in the span of the given bases."""


class SpaceMismatchError(ValueError):
    """Raised when operands live on different index spaces."""


def base_tolerance() -> float:
    """Per-unit tolerance, overridable through the ``SUBWALK_TOL`` env var."""
    raw = os.environ.get("SUBWALK_TOL")
    if raw is None:
        return BASE_TOL
    value = float(raw)
    if not value > 0:
        raise ValueError(f"SUBWALK_TOL must be positive, got {raw!r}")
    return value


def tolerance(dim: int) -> float:
    """Orthogonality and membership tolerance for a space of dimension ``dim``."""
    return base_tolerance() * math.sqrt(max(dim, 1))


class LabeledIndex(NamedTuple):
    """One basis label: the block owner, a sub-label, and the composition path."""

    owner: str
    tag: str
    path: tuple[str, ...] = ()

    @property
    def key(self) -> tuple[str, ...]:
        """Fully qualified owner, i.e. ``path + (owner,)``."""
        return self.path + (self.owner,)

    def prefixed(self, prefix: Sequence[str]) -> LabeledIndex:
        return LabeledIndex(self.owner, self.tag, tuple(prefix) + self.path)

    def __str__(self) -> str:
        return "/".join(self.key) + ":" + self.tag


class Space:
    """An ordered, duplicate-free list of labels."""

    __slots__ = ("_hash", "_index", "labels")

    def __init__(self, labels: Iterable[LabeledIndex]):
        self.labels = tuple(LabeledIndex(*lab) for lab in labels)
        self._index = {lab: i for i, lab in enumerate(self.labels)}
        if len(self._index) != len(self.labels):
            seen: set[LabeledIndex] = set()
            dups = [lab for lab in self.labels if lab in seen or seen.add(lab)]
            raise ValueError(f"duplicate labels in space: {[str(d) for d in dups[:5]]}")
        self._hash = hash(self.labels)

    @classmethod
    def unchecked(cls, labels: Sequence[LabeledIndex]) -> Space:
        """Build a space that may contain duplicate labels (validation fixtures only)."""
        obj = cls.__new__(cls)
        obj.labels = tuple(labels)
        obj._index = {lab: i for i, lab in enumerate(obj.labels)}
        obj._hash = hash(obj.labels)
        return obj

    @property
    def dim(self) -> int:
        return len(self.labels)

    def __len__(self) -> int:
        return len(self.labels)

    def index(self, label: LabeledIndex) -> int:
        return self._index[label]

    def __contains__(self, label: object) -> bool:
        return label in self._index

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        return isinstance(other, Space) and self.labels == other.labels

    def __hash__(self) -> int:
        return self._hash

    def basis_vector(self, label: LabeledIndex) -> np.ndarray:
        v = np.zeros(self.dim, dtype=complex)
        v[self._index[label]] = 1.0
        return v

    def vector(self, amplitudes: dict[LabeledIndex, complex]) -> np.ndarray:
        """Dense vector from a sparse ``label -> amplitude`` mapping."""
        v = np.zeros(self.dim, dtype=complex)
        for lab, amp in amplitudes.items():
            v[self._index[lab]] += amp
        return v


@dataclass(frozen=True)
class LabeledVector:
    space: Space
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.shape != (self.space.dim,):
            raise ValueError(
                f"expected {self.space.dim} amplitudes, got shape {amps.shape}"
            )
        if not np.all(np.isfinite(amps)):
            raise ValueError("amplitudes must be finite")
        amps = amps.copy()
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def __getitem__(self, label: LabeledIndex) -> complex:
        return complex(self.amplitudes[self.space.index(label)])

    def support(self, tol: float = 0.0) -> dict[LabeledIndex, complex]:
        return {
            lab: complex(a)
            for lab, a in zip(self.space.labels, self.amplitudes)
            if abs(a) > tol
        }


@dataclass(frozen=True)
class OrthonormalBasis:
    """Columns of ``matrix`` are the basis vectors."""

    space: Space
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        m = np.asarray(self.matrix, dtype=complex)
        if m.ndim == 1:
            m = m.reshape(-1, 1)
        if m.size == 0:
            m = np.zeros((self.space.dim, 0), dtype=complex)
        if m.shape[0] != self.space.dim:
            raise SpaceMismatchError(
                f"basis rows {m.shape[0]} != space dim {self.space.dim}"
            )
        m = m.copy()
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @classmethod
    def empty(cls, space: Space) -> OrthonormalBasis:
        return cls(space, np.zeros((space.dim, 0), dtype=complex))

    def __len__(self) -> int:
        return self.matrix.shape[1]

    @property
    def vectors(self) -> list[LabeledVector]:
        return [LabeledVector(self.space, self.matrix[:, j]) for j in range(len(self))]

    def orthonormality_error(self) -> float:
        k = len(self)
        if k == 0:
            return 0.0
        gram = self.matrix.conj().T @ self.matrix
        return float(np.max(np.abs(gram - np.eye(k))))

    def is_orthonormal(self, tol: float | None = None) -> bool:
        tol = tolerance(self.space.dim) if tol is None else tol
        return self.orthonormality_error() <= tol


@dataclass(frozen=True)
class LinearMap:
    domain: Space
    codomain: Space
    matrix: np.ndarray = field(repr=False)

    def __call__(self, v: LabeledVector) -> LabeledVector:
        if v.space != self.domain:
            raise SpaceMismatchError("vector is not on the map's domain")
        return LabeledVector(self.codomain, self.matrix @ v.amplitudes)


def _common_space(spaces: Iterable[Space]) -> Space | None:
    common: Space | None = None
    for sp in spaces:
        if common is None:
            common = sp
        elif sp != common:
            raise SpaceMismatchError("operands live on different index spaces")
    return common


def orthonormalize_columns(
    m: np.ndarray, rank_threshold: float = RANK_THRESHOLD
) -> np.ndarray:
    """Modified Gram-Schmidt with one reorthogonalization pass.

    A column is dropped when its residual norm falls below ``rank_threshold``
    times its original norm.
    """
    m = np.asarray(m, dtype=complex)
    dim, k = m.shape
    out = np.zeros((dim, k), dtype=complex)
    rank = 0
    for j in range(k):
        peak = np.max(np.abs(m[:, j]), initial=0.0)
        if peak == 0.0:
            continue
        # Exact power-of-two rescale so tiny or subnormal columns survive squaring.
        shift = -math.frexp(peak)[1]
        v = np.ldexp(m[:, j].real, shift) + 1j * np.ldexp(m[:, j].imag, shift)
        original = np.linalg.norm(v)
        for _ in range(2):
            if rank:
                q = out[:, :rank]
                v -= q @ (q.conj().T @ v)
        residual = np.linalg.norm(v)
        if residual < rank_threshold * original:
            continue
        out[:, rank] = v / residual
        rank += 1
    return out[:, :rank]


def orth(m: np.ndarray, rel_cutoff: float = RANK_THRESHOLD) -> np.ndarray:
    """Orthonormal basis of the column span via SVD (fast path for large spans)."""
    m = np.asarray(m, dtype=complex)
    if m.shape[1] == 0:
        return m
    u, s, _ = np.linalg.svd(m, full_matrices=False)
    if s.size == 0 or s[0] == 0.0:
        return u[:, :0]
    rank = int(np.sum(s > rel_cutoff * s[0]))
    return u[:, :rank]


def gram_schmidt(vectors: Sequence[LabeledVector]) -> OrthonormalBasis:
    space = _common_space(v.space for v in vectors)
    if space is None:
        raise ValueError("gram_schmidt needs at least one vector to fix the space")
    m = np.column_stack([v.amplitudes for v in vectors])
    return OrthonormalBasis(space, orthonormalize_columns(m))


def projector_onto(basis: OrthonormalBasis) -> LinearMap:
    q = basis.matrix
    return LinearMap(basis.space, basis.space, q @ q.conj().T)


def union_basis(bases: Sequence[OrthonormalBasis]) -> OrthonormalBasis:
    space = _common_space(b.space for b in bases)
    if space is None:
        raise ValueError("need at least one basis")
    stacked = np.concatenate([b.matrix for b in bases], axis=1)
    return OrthonormalBasis(space, orth(stacked))


def project_complement(
    v: LabeledVector, bases: Sequence[OrthonormalBasis]
) -> LabeledVector:
    _common_space([v.space, *(b.space for b in bases)])
    if not bases:
        return v
    q = union_basis(bases).matrix
    return LabeledVector(v.space, v.amplitudes - q @ (q.conj().T @ v.amplitudes))


def residual_norms(m: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Norm of each column of ``m`` after removing its component in span(q)."""
    r = m - q @ (q.conj().T @ m)
    return np.linalg.norm(r, axis=0)


def in_span(v: np.ndarray, q: np.ndarray, tol: float) -> bool:
    """Membership of one vector in span(q), tolerance scaled by ``max(1, |v|)``."""
    v = np.asarray(v, dtype=complex).reshape(-1, 1)
    scale = max(1.0, float(np.linalg.norm(v)))
    return bool(residual_norms(v, q)[0] <= tol * scale)


def span_equal(
    a: OrthonormalBasis, b: OrthonormalBasis, tol: float | None = None
) -> bool:
    _common_space([a.space, b.space])
    tol = tolerance(a.space.dim) if tol is None else tol
    if len(a) != len(b):
        return False
    if len(a) == 0:
        return True
    return bool(
        np.all(residual_norms(a.matrix, b.matrix) <= tol)
        and np.all(residual_norms(b.matrix, a.matrix) <= tol)
    )


def _svd(m: np.ndarray):
    try:
        return np.linalg.svd(m, full_matrices=False)
    except np.linalg.LinAlgError:
        # The divide-and-conquer driver occasionally fails to converge on
        # nearly rank-deficient input; the QR-iteration driver is slower but robust.
        return scipy.linalg.svd(m, full_matrices=False, lapack_driver="gesvd")


@dataclass(frozen=True)
class Decomposition:
    """Least-norm split ``target = a + b`` plus the part outside span(A ∪ B)."""

    a: np.ndarray
    b: np.ndarray
    residual: np.ndarray
    coefficients: np.ndarray


def decompose(target: np.ndarray, qa: np.ndarray, qb: np.ndarray) -> Decomposition:
    """Split ``target`` over span(qa) + span(qb) with minimal ``|a|``.

    ``qa`` and ``qb`` must have orthonormal columns.  Since ``|a| = |alpha|``
    for ``a = qa @ alpha``, the minimum-norm least-squares solution of
    ``P qa alpha = P target`` with ``P`` the projector onto span(qb)^perp gives
    the optimal ``a``; the leftover ``P target - P qa alpha`` is the component
    of ``target`` orthogonal to both spans.
    """
    target = np.asarray(target, dtype=complex)
    pt = target - qb @ (qb.conj().T @ target)
    if qa.shape[1] == 0:
        alpha = np.zeros(0, dtype=complex)
        a = np.zeros_like(target)
        residual = pt
    else:
        m = qa - qb @ (qb.conj().T @ qa)
        # Singular values of m are at most 1 because qa is orthonormal, so the
        # cutoff is absolute.  A direction of A closer to span(B) than the
        # membership tolerance counts as inside B; amplifying it would turn
        # roundoff into huge cancelling parts.
        u, s, vh = _svd(m)
        keep = s > max(RANK_THRESHOLD, tolerance(target.shape[0]))
        alpha = vh[keep].conj().T @ ((u[:, keep].conj().T @ pt) / s[keep])
        residual = pt - m @ alpha
        a = qa @ alpha
    b = target - a - residual
    return Decomposition(a=a, b=b, residual=residual, coefficients=alpha)


def least_norm_decomposition(
    target: LabeledVector,
    basis_a: OrthonormalBasis,
    basis_b: OrthonormalBasis,
    tol: float | None = None,
) -> tuple[LabeledVector, LabeledVector]:
    space = _common_space([target.space, basis_a.space, basis_b.space])
    assert space is not None
    tol = tolerance(space.dim) if tol is None else tol
    dec = decompose(target.amplitudes, basis_a.matrix, basis_b.matrix)
    scale = max(1.0, target.norm())
    if np.linalg.norm(dec.residual) > tol * scale:
        raise NotInSpanError(
            f"target has a component of norm {np.linalg.norm(dec.residual):.3e} outside span(A+B)"
        )
    return LabeledVector(space, dec.a), LabeledVector(space, dec.b)
