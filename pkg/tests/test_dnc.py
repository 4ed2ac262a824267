import itertools
import math

import numpy as np
import pytest

from subwalk.dnc import (
    DigraphInstance,
    DimensionOverflowError,
    RecursionSpecError,
    all_digraphs,
    bfs_reachability,
    build_dnc_graph,
    build_dstcon_graph,
    classical_savitch,
    classical_savitch_time,
    cost_only_spec,
    cost_recursion,
    dstcon_cost_table,
    dstcon_decide,
    dstcon_formula,
    dstcon_spec,
    evaluate_dnc,
    random_digraph,
    round_up_power_of_two,
)
from subwalk.formula import AND, OR, parse_formula, symmetric_tree
from subwalk.graphcore import complexity, decide_exact, realize, validate


class TestDigraph:
    def test_validation(self):
        with pytest.raises(ValueError):
            DigraphInstance(0, [], 0, 0)
        with pytest.raises(ValueError, match="vertex range"):
            DigraphInstance(2, [(0, 2)], 0, 1)
        with pytest.raises(ValueError, match="s and t"):
            DigraphInstance(2, [], 0, 5)

    def test_self_loops_and_assignment(self):
        inst = DigraphInstance(3, [(0, 1)], 0, 2)
        assert inst.adjacent(1, 1) == 1 and inst.adjacent(1, 0) == 0
        a = inst.assignment()
        assert len(a) == 6 and a[inst.variable(0, 1)] == 1

    def test_power_of_two(self):
        assert [round_up_power_of_two(k) for k in (0, 1, 2, 3, 5, 8)] == [
            1,
            1,
            2,
            4,
            8,
            8,
        ]


@pytest.mark.parametrize("n", [2, 3])
def test_classical_routes_agree_on_every_digraph(n):
    for edges in all_digraphs(n):
        for s, t in itertools.product(range(n), repeat=2):
            inst = DigraphInstance(n, edges, s, t)
            assert classical_savitch(inst) == bfs_reachability(inst)


def test_bfs_length_cap():
    path = DigraphInstance(4, [(0, 1), (1, 2), (2, 3)], 0, 3)
    assert bfs_reachability(path, 2) == 0
    assert bfs_reachability(path, 3) == 1
    assert classical_savitch(path, 2) == 0


@pytest.mark.parametrize("n", [2, 3, 4])
def test_recursive_definition_matches_bfs(n):
    rng = np.random.default_rng(n)
    spec = dstcon_spec(n)
    ell = round_up_power_of_two(n)
    for _ in range(30):
        inst = random_digraph(n, 0.35, rng)
        assert evaluate_dnc(
            spec, ell, n, (inst.s, inst.t), inst.assignment()
        ) == bfs_reachability(inst)


class TestDstconGraph:
    def test_n3_decides_every_digraph(self):
        g = build_dstcon_graph(DigraphInstance(3, [], 0, 2))
        assert validate(g).ok
        for edges in all_digraphs(3):
            inst = DigraphInstance(3, edges, 0, 2)
            assert dstcon_decide(inst, graph=g) == bfs_reachability(inst)

    def test_algorithm_base_agrees_with_switch_base(self):
        rng = np.random.default_rng(11)
        for _ in range(6):
            inst = random_digraph(3, 0.4, rng)
            g = build_dstcon_graph(inst, base="algorithm")
            assert decide_exact(realize(g, ())) == dstcon_decide(inst)

    def test_dimension_bound(self):
        with pytest.raises(DimensionOverflowError):
            build_dstcon_graph(DigraphInstance(4, [], 0, 3), max_dim=50)

    def test_spec_arguments(self):
        with pytest.raises(ValueError):
            dstcon_spec(3, base="oracle")
        with pytest.raises(ValueError, match="needs the input"):
            dstcon_spec(3, base="algorithm")

    @pytest.mark.parametrize("n", [2, 3])
    def test_measured_costs_match_elided_table(self, n):
        g = build_dstcon_graph(DigraphInstance(n, [], 0, n - 1))
        c = complexity(g)
        r = g.scaling
        row = dstcon_cost_table(n, elide_aux=True)[(round_up_power_of_two(n), n)]
        assert c.w_minus_hat / r == pytest.approx(row.c_minus, rel=1e-8)
        assert c.c_hat <= row.t * (1 + 1e-9)


class TestCostRecursion:
    # Frozen from an independent evaluation of the recursion by hand.
    @pytest.mark.parametrize(
        "n, t, c_minus",
        [(2, math.sqrt(20), 5 / 3), (3, 13.114877, 3.307692), (4, 17.088007, 3.476190)],
    )
    def test_dstcon_top_level(self, n, t, c_minus):
        row = dstcon_cost_table(n)[(round_up_power_of_two(n), n)]
        assert row.t == pytest.approx(t, rel=1e-6)
        assert row.c_minus == pytest.approx(c_minus, rel=1e-6)
        assert row.c_plus == pytest.approx(row.t**2 / row.c_minus)

    @pytest.mark.parametrize(
        "n, t, c_minus", [(2, 4.0, 2.0), (3, 12.0, 4.0), (4, 16.0, 4.0)]
    )
    def test_elided_top_level(self, n, t, c_minus):
        row = dstcon_cost_table(n, elide_aux=True)[(round_up_power_of_two(n), n)]
        assert (row.t, row.c_minus) == pytest.approx((t, c_minus))

    def test_base_row(self):
        row = dstcon_cost_table(4)[(1, 4)]
        assert (row.t, row.c_minus, row.c_plus) == (2.0, 1.0, 4.0)

    def test_d_bar(self):
        assert dstcon_spec(3).d_bar == 2
        spec = cost_only_spec(
            symmetric_tree([AND, OR, AND], [2, 3, 4]),
            lambda e: e // 2,
            lambda m: m,
            1,
            1.0,
        )
        assert spec.d_bar == 4 * 2

    def test_stuck_lambda_is_rejected(self):
        spec = cost_only_spec(dstcon_formula(2), lambda e: e, lambda m: m, 1, 1.0)
        with pytest.raises(RecursionSpecError):
            spec.levels(4, 2)

    def test_cost_only_spec_refuses_graphs(self):
        spec = cost_only_spec(
            dstcon_formula(2), lambda e: e // 2, lambda m: m, 1, 1.0, aux_zero_above=1
        )
        assert cost_recursion(spec, 4, 2, elide_aux=True) == cost_recursion(
            dstcon_spec(2), 4, 2, elide_aux=True
        )
        with pytest.raises(RecursionSpecError):
            build_dnc_graph(spec, 2, 2, (0, 1))

    def test_asymmetric_phi_rejected(self):
        with pytest.raises(ValueError, match="symmetric"):
            cost_only_spec(
                parse_formula("x1 | (x2 & x3)"), lambda e: e // 2, lambda m: m, 1, 1.0
            )

    @pytest.mark.parametrize("n", [3, 4, 6, 8])
    def test_quantum_cost_beats_savitch_query_count(self, n):
        # At n = 2 the constants dominate: √20 > 4.
        row = dstcon_cost_table(n)[(round_up_power_of_two(n), n)]
        assert row.t <= classical_savitch_time(n)

    def test_savitch_time(self):
        assert classical_savitch_time(4) == 64
        assert classical_savitch_time(3, 2) == 6
