"""Minimum-order quadrangulations of closed orientable surfaces.

The package computes minimum quadrangulation orders by exact integer
arithmetic, constructs verified spinal quadrangulations by incremental
surgery, and confirms small-genus ground truths by exhaustive search.
"""

from .embedding import (
    Dart,
    EmbeddingReport,
    FaceWalk,
    GenusMismatchError,
    RotationSystem,
    embedding_from_document,
    embedding_to_document,
    euler_genus,
    load_embedding,
    save_embedding,
    trace_faces,
    validate_quadrangulation,
)
from .formulas import (
    MinOrderResult,
    bounds_agree,
    certified_minimal,
    complete_spine_order,
    half_order_cap,
    isqrt,
    min_order,
    min_spine_size,
    order_lower_bound,
    spectrum,
    spinal_min_order,
)
from .graph import (
    FormatError,
    Graph,
    betti,
    complete_graph,
    delete_edges_connected,
    graph_from_document,
    graph_to_document,
    interlace,
    is_connected,
    load_graph,
    make_graph,
    octahedral_graph,
    save_graph,
)
from .oracle import (
    BudgetExhausted,
    MinOrderWitness,
    SearchBudget,
    exists_quadrangulation,
    min_order_bruteforce,
    quad_edge_count,
    search_quadrangulation,
)
from .spinal import (
    BuildError,
    BuildReport,
    BuildState,
    WitnessConflict,
    build_for_genus,
    build_instance,
    build_spinal,
    build_spinal_report,
    chord_add,
    init_base,
    tree_add,
)

__version__ = "0.1.0"
