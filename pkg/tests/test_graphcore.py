import itertools

import numpy as np
import pytest
from corpus import gadget_corpus

from subwalk.gadgets import build_and, build_or, single_switch
from subwalk.graphcore import (
    S_BACK,
    T_FWD,
    Literal,
    MissingInputError,
    Witness,
    WitnessError,
    all_assignments,
    check_witness,
    complexity,
    decide_exact,
    local_b_basis,
    make_witness,
    min_negative_witness,
    min_positive_witness,
    realize,
    truth_table,
    validate,
)
from subwalk.numcore import LabeledIndex, LabeledVector, Space


class TestLiteral:
    def test_values(self):
        assert Literal(0).value([1]) == 1
        assert Literal(0, True).value([1]) == 0
        assert Literal.constant(1).value([]) == 1
        assert Literal(1).value({1: 0}) == 0

    def test_missing_and_bad_bits(self):
        with pytest.raises(MissingInputError):
            Literal(3).value([0, 1])
        with pytest.raises(ValueError):
            Literal(0).value([2])

    def test_placeholder(self):
        p = Literal.placeholder()
        assert p.is_placeholder and str(p) == "?"
        with pytest.raises(ValueError):
            p.value([1])
        with pytest.raises(ValueError):
            p.negate()

    def test_negate_and_str(self):
        assert str(Literal(0).negate()) == "!x1"
        assert Literal.constant(0).negate() == Literal.constant(1)


@pytest.mark.parametrize("g", gadget_corpus(), ids=lambda g: g.name)
def test_gadgets_validate(g):
    report = validate(g)
    assert report.ok, report.violations


@pytest.mark.parametrize("g", gadget_corpus(), ids=lambda g: g.name)
def test_minimal_witnesses_check(g):
    for x in all_assignments(g.variables):
        r = realize(g, x)
        w = min_positive_witness(r) if decide_exact(r) else min_negative_witness(r)
        assert check_witness(r, w)
        # Boundary entries are cropped.
        for lab in (S_BACK, T_FWD):
            assert w.vector[lab] == 0


def test_or_truth_table():
    g = build_or(3)
    assert truth_table(g) == {
        bits: int(any(bits)) for bits in itertools.product((0, 1), repeat=3)
    }


def test_and_truth_table_with_negation():
    g = build_and(2, None, [Literal(0), Literal(1, True)])
    assert truth_table(g) == {(0, 0): 0, (0, 1): 0, (1, 0): 1, (1, 1): 0}


def test_wrong_kind_witness_raises():
    r = realize(build_or(2), [1, 0])
    with pytest.raises(WitnessError, match="positive-instance"):
        min_negative_witness(r)
    with pytest.raises(WitnessError, match="negative-instance"):
        min_positive_witness(realize(build_or(2), [0, 0]))


def test_check_witness_rejects_wrong_vectors():
    g = build_or(2)
    r = realize(g, [1, 0])
    w = min_positive_witness(r)
    scaled = make_witness("positive", g.space, 2 * w.vector.amplitudes, "scaled")
    assert not check_witness(r, scaled)
    other = Space([LabeledIndex("z", "z")])
    assert not check_witness(r, Witness("positive", LabeledVector(other, [1.0]), 1.0))
    with pytest.raises(ValueError):
        Witness("neutral", w.vector, 1.0)


def test_weighted_or_witness_sizes():
    # Weighted OR: the cheapest positive input has weight w_i, so Ŵ+ = 2·max 1/w_i and Ŵ− = 2·Σ w_i.
    weights = [1.0, 2.0, 0.5]
    c = complexity(build_or(3, weights))
    assert c.w_plus_hat == pytest.approx(2 / min(weights))
    assert c.w_minus_hat == pytest.approx(2 * sum(weights))


def test_single_switch_is_one_edge_or():
    g = single_switch(Literal(0))
    assert len(g.edges) == 1 and g.dim == 6
    assert tuple(complexity(g))[:2] == pytest.approx((2, 2))


def test_local_b_basis_matches_working_basis():
    from subwalk.graphcore import _same_span, tolerance

    for g in gadget_corpus():
        local = local_b_basis(g)
        assert local is not None
        assert _same_span(local, g.basis_b, tolerance(g.dim))


def test_validate_reports_corrupted_basis():
    g = build_or(2)
    bad = g.with_changes(b_minus=np.roll(g.b_minus, 1, axis=0))
    assert not validate(bad).ok


def test_complexity_enumeration_limit():
    g = build_or(17)
    with pytest.raises(ValueError, match="enumeration limit"):
        complexity(g)
    c = complexity(g, [np.ones(17, dtype=int)])
    assert c.w_minus_hat is None and c.c_hat is None
