"""Local antimagic 3-colorings of joins of 1-regular and null graphs:
explicit label matrices, label-preserving surgery, verification, and an
exact small-instance oracle."""

from .errors import (
    AntimagicError,
    IdentityError,
    LoopError,
    ParallelEdgeError,
    SumDriftError,
    SumMismatchError,
    UseSpecialCase,
)
from .graph import (
    FamilyParams,
    Graph,
    VertexId,
    bipartition,
    chromatic_number_small,
    components,
    copies_of_p2_join_null,
    delete_add_edges,
    disjoint_union,
    edge,
    join,
    merge_vertices,
    merged,
    null_graph,
    p2,
    parse_token,
    split_vertex,
    u,
    v,
    x,
)
from .labeling import (
    EdgeLabeling,
    InducedColoring,
    assert_three_coloring,
    chi_la_lower_bound,
    induce,
    is_local_antimagic,
)
from .oracle import certify_no_2_coloring, exact_chi_la, find_labeling
from .schemes import (
    EVEN,
    LabelMatrix,
    ODD,
    build_even_matrix,
    build_matrix,
    build_odd_matrix,
    check_identities,
    special_2p2_o2,
)
from .transforms import (
    LabeledGraph,
    SwapSpec,
    block_merge,
    delete_add,
    from_matrix,
    group_components,
    merge_all_x,
    merge_v_blocks,
    partition_merge_generic,
    replay,
    split_x,
)

__version__ = "0.1.0"
