import math

import numpy as np
import pytest
from corpus import composition_corpus, gadget_corpus
from hypothesis import given, settings
from hypothesis import strategies as st

from subwalk.gadgets import build_and, build_or
from subwalk.graphcore import all_assignments, complexity, decide_exact, realize
from subwalk.phasesim import (
    KAPPA,
    PEConfig,
    acceptance_from_spectrum,
    calibrated_bits,
    circuit_acceptance_prob,
    fejer,
    pe_acceptance_prob,
    pe_decide,
    spectrum,
    unitarity_error,
)


class TestFejer:
    @settings(max_examples=200, deadline=None)
    @given(st.floats(-math.pi, math.pi), st.integers(0, 8))
    def test_bounded_in_unit_interval(self, theta, bits):
        v = float(fejer(np.array([theta]), bits)[0])
        assert -1e-12 <= v <= 1 + 1e-12

    @pytest.mark.parametrize("bits", [0, 1, 3, 6])
    def test_matches_direct_sum(self, bits):
        theta = np.linspace(-math.pi, math.pi, 37)
        n = 2**bits
        direct = np.abs(np.exp(1j * np.outer(theta, np.arange(n))).sum(axis=1) / n) ** 2
        assert np.allclose(fejer(theta, bits), direct, atol=1e-12)

    def test_zero_phase_is_one_and_grid_phases_vanish(self):
        assert fejer(np.array([0.0]), 5)[0] == 1.0
        grid = 2 * math.pi * np.arange(1, 8) / 8
        assert np.allclose(fejer(grid, 3), 0, atol=1e-24)


class TestConfig:
    def test_default_threshold(self):
        assert PEConfig(4).threshold == pytest.approx(1 / 400)

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"bits": 0},
            {"bits": 3, "c_plus": 0.5},
            {"bits": 3, "c_plus": 51},
            {"bits": 3, "c_minus": 0.9},
            {"bits": 3, "threshold": 1.0},
        ],
    )
    def test_rejects_bad_values(self, kwargs):
        with pytest.raises(ValueError):
            PEConfig(**kwargs)

    def test_calibrated_bits_grow_with_c_minus(self):
        assert calibrated_bits(1.0) == math.ceil(math.log2(KAPPA))
        assert calibrated_bits(64.0) == math.ceil(math.log2(KAPPA * 8))
        assert calibrated_bits(0.01) == calibrated_bits(1.0)
        assert PEConfig.calibrated(0.2).c_minus == 1.0


@pytest.mark.parametrize("g", gadget_corpus(), ids=lambda g: g.name)
def test_walk_unitary_is_unitary(g):
    for x in all_assignments(g.variables):
        assert unitarity_error(realize(g, x)) < 1e-10


@pytest.mark.parametrize(
    "g",
    [build_or(2), build_and(2), build_or(3, [1.0, 2.0, 0.5])],
    ids=["or2", "and2", "or3w"],
)
@pytest.mark.parametrize("bits", [0, 2, 4])
def test_spectral_route_matches_circuit(g, bits):
    for x in all_assignments(g.variables):
        r = realize(g, x)
        assert pe_acceptance_prob(r, bits) == pytest.approx(
            circuit_acceptance_prob(r, bits), abs=1e-10
        )


def test_spectrum_weights_sum_to_one():
    r = realize(build_and(3), [1, 0, 1])
    spec = spectrum(r)
    assert spec.weights.sum() == pytest.approx(1.0)
    assert acceptance_from_spectrum(spec, 0) == pytest.approx(1.0)


def test_circuit_oracle_size_limit():
    r = realize(build_or(2), [1, 0])
    with pytest.raises(ValueError, match="limit"):
        circuit_acceptance_prob(r, 20)


def test_positive_instances_accept_with_high_probability():
    # ψ0 overlaps the positive witness, so phase 0 keeps weight ≥ 1/(1 + Ŵ+).
    g = build_or(3)
    c = complexity(g)
    for x in all_assignments(g.variables):
        r = realize(g, x)
        if decide_exact(r):
            assert pe_acceptance_prob(r, 10) >= 1 / (1 + c.w_plus_hat) - 1e-9


def _calibration_cases():
    cases = [pytest.param(g, id=g.name) for g in gadget_corpus()]
    return cases + [
        pytest.param(c.composed, id=c.name) for c in composition_corpus()[:8]
    ]


@pytest.mark.parametrize("g", _calibration_cases())
def test_frozen_kappa_decides_the_corpus(g):
    c = complexity(g)
    c_minus = max(1.0, c.w_minus_hat or 1.0)
    cfg = PEConfig.calibrated(c_minus, c_plus=min(50.0, max(1.0, c.w_plus_hat or 1.0)))
    for x in all_assignments(g.variables):
        r = realize(g, x)
        assert pe_decide(r, cfg) == decide_exact(r), x
