"""Executable model of Leavitt path superalgebras over exact fields."""

from .algebra import (
    RATIONAL,
    Element,
    Field,
    FieldMismatch,
    compare_words,
    element_add,
    element_mul,
    element_scale,
    graded_parts,
    parity_of,
    prime_field,
    supercommutator,
)
from .analyze import (
    AnalysisReport,
    analyze,
    cycle_chain_analysis,
    growth_class,
    has_identity,
    in_jacobson_radical,
    is_supercommutative_graph,
    is_von_neumann_regular,
    monomial_class,
    quasi_inverse_witness,
)
from .basis import DimensionSeries, GrowthFit, basis_words, brute_force_dimension, dimension_series, fit_growth
from .canonical import (
    FermionBlock,
    PathPair,
    StructuredMonomial,
    conforms_to_monomial_form,
    from_structured,
    mul_structured,
    to_structured,
)
from .fixtures import fixture
from .graph import Edge, GraphError, SuperGraph, Vertex, build_graph, edge_kind, generator_order
from .report import load_report, report_json
from .rewrite import ReductionSystem, build_reduction_system, check_confluence, is_irreducible, reduce_element, reduce_word
from .textio import format_element, parse_element_expr, parse_graph_file

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
