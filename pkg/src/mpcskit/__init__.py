"""mpcskit: minimal perfect critical sets and minimum leader selection
for undirected graphs under Laplacian leader-follower dynamics.
"""

from .backend import BACKEND, available_backends
from .criticality import (
    ControlVerdict,
    CriticalCertificate,
    MpcsFamily,
    enumerate_mpcs,
    enumerate_mpcs_exhaustive,
    is_controllable,
    is_critical,
    is_perfect_critical,
    kalman_controllable,
    minimalize_cs,
    uniform_boundary_cs,
)
from .errors import MpcsError
from .generators import (
    gen_cayley,
    gen_dsfn,
    gen_fig1,
    gen_fig5,
    gen_path,
    gen_random_tree,
    gen_star,
)
from .graph import (
    Graph,
    complement_set,
    components,
    from_edge_list,
    induced_subgraph,
    is_connected,
    is_tree,
    laplacian,
    neighbors_in,
    pendant_set,
)
from .leaders import (
    LeaderReport,
    certify_min_leaders,
    metrics,
    min_hitting_sets,
)
from .selfsimilar import cayley_report, dsfn_report
from .spectral import (
    DEFAULT_TOL,
    Spectrum,
    ToleranceConfig,
    constrained_kernel,
    numeric_rank,
    spectrum,
)
from .trees import (
    ClassificationTrace,
    QuotientGraph,
    SimplifiedGraph,
    pendant_leader_bound,
    perturbed_kernel_full_support,
    propagate_classification,
    simplify,
    tree_mpcs,
    twin_pair_mpcs,
    twin_pairs,
    unit_boundary_check,
    unit_boundary_witness,
)

__version__ = "1.0.0"

__all__ = [name for name in dir() if not name.startswith("_")]
