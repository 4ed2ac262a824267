"""Phase-estimation decision procedure, simulated exactly.

The walk unitary is ``U_AB = (2Π_A − I)(2Π_B − I)``.  Phase estimation with
``b`` bits started on ``|ψ0⟩`` reports phase 0 with probability

    p0(b) = Σ_j |⟨v_j|ψ0⟩|² F_b(θ_j),   F_b(θ) = |2^{-b} Σ_{k<2^b} e^{ikθ}|²,

which is also ``‖2^{-b} Σ_k U^k ψ0‖²``.  The spectral route is primary; a
literal circuit simulation on the joint register/system state is kept as an
independent oracle for small sizes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .graphcore import Realization, decide_exact
from .numcore import LinearMap

DEFAULT_C_PLUS = 50.0
MAX_C_PLUS = 50.0
# Precision constant for b = ⌈log2(κ·√C₋)⌉, frozen after calibration over the
# gadget and composed-formula corpus (see tests/test_phasesim.py).
KAPPA = 64.0
CIRCUIT_LIMIT = 2**20


@dataclass(frozen=True)
class PEConfig:
    bits: int
    c_plus: float = DEFAULT_C_PLUS
    c_minus: float = 1.0
    threshold: float | None = None

    def __post_init__(self) -> None:
        if self.bits < 1:
            raise ValueError(f"bits must be at least 1, got {self.bits}")
        if not 1 <= self.c_plus <= MAX_C_PLUS:
            raise ValueError(f"c_plus must lie in [1, {MAX_C_PLUS}], got {self.c_plus}")
        if self.c_minus < 1:
            raise ValueError(f"c_minus must be at least 1, got {self.c_minus}")
        if self.threshold is None:
            object.__setattr__(self, "threshold", 1 / (8 * self.c_plus))
        if not 0 < self.threshold < 1:
            raise ValueError(f"threshold must lie in (0, 1), got {self.threshold}")

    @classmethod
    def calibrated(
        cls, c_minus: float, c_plus: float = DEFAULT_C_PLUS, kappa: float = KAPPA
    ) -> PEConfig:
        return cls(calibrated_bits(c_minus, kappa), c_plus, max(1.0, c_minus))


def calibrated_bits(c_minus: float, kappa: float = KAPPA) -> int:
    return max(1, math.ceil(math.log2(kappa * math.sqrt(max(1.0, c_minus)))))


def _reflection(q: np.ndarray) -> np.ndarray:
    return 2 * (q @ q.conj().T) - np.eye(q.shape[0], dtype=complex)


def uab_matrix(r: Realization) -> np.ndarray:
    return _reflection(r.basis_a.matrix) @ _reflection(r.basis_b.matrix)


def build_uab(r: Realization) -> LinearMap:
    return LinearMap(r.space, r.space, uab_matrix(r))


@dataclass(frozen=True)
class Spectrum:
    """Eigenphases of ``U_AB`` and the weight of ``ψ0`` on each eigenvector."""

    phases: np.ndarray
    weights: np.ndarray


def spectrum(r: Realization) -> Spectrum:
    # U is normal, so its complex Schur form is diagonal and Z is unitary even
    # on degenerate eigenspaces.
    t, z = scipy.linalg.schur(uab_matrix(r), output="complex")
    phases = np.angle(np.diag(t))
    weights = np.abs(z.conj().T @ r.psi0.amplitudes) ** 2
    return Spectrum(phases, weights)


def fejer(theta: np.ndarray, bits: int) -> np.ndarray:
    """``F_b(θ)``: probability that a ``b``-bit phase register reads 0."""
    theta = np.asarray(theta, dtype=float)
    n = 2**bits
    half = np.sin(theta / 2)
    small = np.abs(half) < 1e-12
    safe = np.where(small, 1.0, half)
    value = (np.sin(n * theta / 2) / (n * safe)) ** 2
    return np.where(small, 1.0, value)


def acceptance_from_spectrum(spec: Spectrum, bits: int) -> float:
    return float(np.clip(np.sum(spec.weights * fejer(spec.phases, bits)), 0.0, 1.0))


def pe_acceptance_prob(r: Realization, cfg: PEConfig | int) -> float:
    bits = cfg if isinstance(cfg, int) else cfg.bits
    return acceptance_from_spectrum(spectrum(r), bits)


def circuit_acceptance_prob(r: Realization, bits: int) -> float:
    """Textbook circuit: Hadamards, controlled ``U^{2^j}``, inverse QFT, read 0."""
    u = uab_matrix(r)
    n, dim = 2**bits, r.space.dim
    if n * dim > CIRCUIT_LIMIT:
        raise ValueError(
            f"joint state of size {n * dim} exceeds the circuit oracle limit"
        )
    state = np.tile(r.psi0.amplitudes, (n, 1)) / math.sqrt(n)
    power = u
    for j in range(bits):
        controlled = (np.arange(n) >> j) & 1 == 1
        state[controlled] = state[controlled] @ power.T
        power = power @ power
    # Inverse QFT on the register: |k⟩ ↦ N^{-1/2} Σ_y e^{-2πi ky/N} |y⟩.
    state = np.fft.fft(state, axis=0) / math.sqrt(n)
    return float(np.vdot(state[0], state[0]).real)


def pe_decide(r: Realization, cfg: PEConfig) -> int:
    return int(pe_acceptance_prob(r, cfg) >= cfg.threshold)


def unitarity_error(r: Realization) -> float:
    u = uab_matrix(r)
    return float(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))))


def agrees_with_oracle(r: Realization, cfg: PEConfig) -> bool:
    return pe_decide(r, cfg) == decide_exact(r)
