"""Resolving and doubly resolving set toolkit for graphs and line graphs."""

from .core import (
    DisconnectedError,
    DistanceMatrix,
    DuplicateEdgeError,
    Edge,
    EdgeNotInGraphError,
    EmptyEdgeSetError,
    Graph,
    GraphError,
    LineGraphMap,
    LoopEdgeError,
    VertexOutOfRangeError,
    all_pairs_distances,
    build_graph,
    canonical_edge,
    edge_distance,
    graph_from_json_dict,
    graph_to_dot,
    graph_to_json_dict,
    line_graph,
    line_graph_to_dot,
)
from .families import (
    FamilyParameterError,
    GraphSpecError,
    LabeledGraph,
    cartesian_product,
    from_spec,
    load_graph_file,
    make_cycle,
    make_generalized_petersen,
    make_path,
    make_prism,
    make_sunlet,
)
from .resolving import (
    DEFAULT_BUDGET,
    DOUBLY_RESOLVING,
    RESOLVING,
    BudgetExceededError,
    ResolveReport,
    SearchResult,
    doubly_resolves,
    edge_metric_dimension,
    greedy_doubly_resolving,
    is_doubly_resolving,
    is_resolving,
    labeled_set_report,
    labels_doubly_resolve_pair,
    metric_dimension,
    min_cardinality_search,
    psi,
    psi_edge,
    representation,
    witness_labels,
)
from .closed_form import (
    PRISM,
    SUNLET,
    CoordinateRow,
    CoordinateTable,
    Deviation,
    InvalidLabelError,
    base_distance,
    base_table,
    closed_edge_distance,
    coordinate_rows_distinct,
    coordinate_table,
    expected_coordinate_rows,
    reference_landmarks,
    verify_family,
)

__version__ = "0.1.0"
