"""Subtree imbalance of edge-coloured and oriented trees.

Constructive colourings and orientations with per-run certificates, witness
extractors for the guaranteed floors, directional sweeps for unit-vector
colourings, and exhaustive oracles that verify everything exactly on small
trees.
"""

from .errors import (
    BadColour,
    BadEdgeIndex,
    BudgetExceeded,
    CertificateError,
    Cyclic,
    Disconnected,
    DisconnectedSubtree,
    DomainError,
    DuplicateEdge,
    IsPath,
    LengthMismatch,
    NonFiniteWeight,
    NonUnitDirection,
    ParamOutOfRange,
    ParseError,
    SelfLoop,
    TooSmall,
    TreeDiscError,
)
from .highdim import (
    DirectionalWitness,
    SphericalColouring,
    beta_bound,
    complex_local_search,
    imbalance_in_direction,
    marginal_density,
    mean_leaf_projection,
    projection_witness,
    roots_of_unity_embedding,
    sample_sphere,
    spherical_from_text,
    spherical_to_text,
    sweep_max_imbalance,
)
from .imbalance import (
    ColourProfile,
    Colouring,
    SubtreeWitness,
    all_profiles,
    colouring_from_text,
    colouring_to_text,
    max_imbalance,
    max_weight_subtree,
    profile,
    symmetric_max_imbalance,
    weight,
)
from .multicolour import (
    DominationVector,
    alpha,
    certificate_vector,
    colour_tree,
    colouring_report,
    d_vector,
    dominated,
    grid_lower_bound,
    join,
    lower_bound,
    lower_bound_witness,
    monotone,
    pigeonhole_weights,
    upper_bound,
)
from .oracle import (
    ExactResult,
    VerifyReport,
    enumerate_trees,
    exact_discrepancy,
    exact_oriented_discrepancy,
    trees_of_order,
    verify_theorems,
)
from .oriented import (
    Orientation,
    RootedWitness,
    evaluate_rooted,
    orient_tree,
    orientation_from_text,
    orientation_to_text,
    oriented_imbalance,
    oriented_lower_bound_witness,
    rooted_values,
    star_oriented_discrepancy,
)
from .trees import (
    Graph,
    PathToAnchor,
    Tree,
    branching_path,
    caterpillar,
    contract,
    emit_dot,
    emit_edge_list,
    from_edge_list,
    grid_plus,
    leafy_spanning_tree,
    leaves,
    parse_edge_list,
    path,
    path_between,
    random_tree,
    rooted_order,
    spider,
    star,
)

__version__ = "0.1.0"
