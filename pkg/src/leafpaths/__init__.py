"""Leaf-to-leaf path lengths in trees of given degree sequence."""

__version__ = "0.1.0"

from .greedy import LayeredWitness, identity_eq1_check, min_height, min_height_k, min_radius
from .pathlens import (
    LengthSet,
    LowerBoundCertificate,
    certified_lower_bound,
    lp,
    lp_lower_bound_theorem1,
    lp_lower_bound_theorem2,
    lp_set,
    sumset,
)
from .tree import (
    DegreeSequence,
    OutDegreeSequence,
    RootedTree,
    Tree,
    degree_sequence_of,
    lca,
    metrics,
    out_degree_sequence_of,
    parse_tree,
    root_at,
    serialize_tree,
    validate_degree_sequence,
)
