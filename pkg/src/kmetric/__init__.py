"""k-metric generators, bases and dimensions of connected graphs."""

from .audit import AuditReport, audit
from .branches import (
    BranchStructure,
    branch_structure,
    dim_k_path,
    dim_r_tree,
    major_contribution,
    tree_dimensional_k,
)
from .errors import (
    DisconnectedGraphError,
    GraphFormatError,
    InvalidParameterError,
    KMetricError,
    NoGeneratorError,
    SolverLimitError,
)
from .families import FamilySpec, generate
from .graph import (
    DistanceMatrix,
    Graph,
    StructuralStats,
    all_pairs_distances,
    encode_graph6,
    parse_edge_list,
    parse_graph6,
    serialize_edge_list,
    structural_stats,
)
from .kernel import (
    GeneratorVerdict,
    PairProfile,
    TwinPartition,
    dimensional_k,
    forced_vertices,
    is_k_metric_generator,
    pair_profile,
    twin_partition,
)
from .solver import DimProfile, SolveReport, dim_k_exact, dim_profile, lower_bound

__version__ = "0.1.0"
