"""Global entanglement of multipartite quantum states.

Pure states get the exact value (root-sum-square of bipartite
concurrences over all distinct bipartitions); mixed states get an
optimized lower bound on the convex roof.
"""
from .linalg import (
    DensityMatrix,
    Dims,
    InvariantError,
    PureState,
    SpectralDecomp,
    partial_trace,
    permute_subsystems,
    purity,
    singular_values,
    spectral_decomposition,
    von_neumann_entropy,
)
from .partitions import Bipartition, enumerate_bipartitions, num_bipartitions
from .generators import partition_operators, so_basis
from .pure import (
    bipartite_concurrence,
    concurrence_vector,
    global_entanglement,
    is_fully_separable,
)
from .mixed import (
    BoundOptions,
    BoundResult,
    build_a_matrices,
    global_lower_bound,
    maximize_lower_bound,
    objective,
    wootters_concurrence,
)
from .tangles import four_partite_audit, tangle_mixed_focus, three_tangle
from .channels import LocalOperation, apply_local_unitary, measure_local, monotone_margin

__version__ = "0.1.0"
