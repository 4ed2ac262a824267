"""Subspace graphs: exact decision oracles, witnesses, composition and phase estimation."""

__version__ = "0.1.0"

from .compose import (
    CompositionPlan,
    corrupt_composition,
    formula_compose,
    propagate_costs,
    scale_to_unit,
    switch_compose,
    transport_negative_witness,
    transport_positive_witness,
    verify_basis_locality,
)
from .dnc import (
    DigraphInstance,
    bfs_reachability,
    build_dstcon_graph,
    classical_savitch,
    cost_recursion,
    dstcon_cost_table,
    dstcon_decide,
)
from .formula import FormulaAst, parse_formula
from .gadgets import (
    AlgorithmSpec,
    SwitchingNetworkSpec,
    build_and,
    build_or,
    build_switching_network,
    compile_algorithm,
    effective_resistance,
    single_switch,
)
from .graphcore import (
    CostLedger,
    Literal,
    SubspaceGraph,
    check_witness,
    complexity,
    decide_exact,
    min_negative_witness,
    min_positive_witness,
    realize,
    validate,
)
from .phasesim import PEConfig, pe_acceptance_prob, pe_decide

__all__ = [
    "AlgorithmSpec",
    "CompositionPlan",
    "CostLedger",
    "DigraphInstance",
    "FormulaAst",
    "Literal",
    "PEConfig",
    "SubspaceGraph",
    "SwitchingNetworkSpec",
    "bfs_reachability",
    "build_and",
    "build_dstcon_graph",
    "build_or",
    "build_switching_network",
    "check_witness",
    "classical_savitch",
    "compile_algorithm",
    "complexity",
    "corrupt_composition",
    "cost_recursion",
    "decide_exact",
    "dstcon_cost_table",
    "dstcon_decide",
    "effective_resistance",
    "formula_compose",
    "min_negative_witness",
    "min_positive_witness",
    "parse_formula",
    "pe_acceptance_prob",
    "pe_decide",
    "propagate_costs",
    "realize",
    "scale_to_unit",
    "single_switch",
    "switch_compose",
    "transport_negative_witness",
    "transport_positive_witness",
    "validate",
    "verify_basis_locality",
]
