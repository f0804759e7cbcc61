"""Exact decision procedures for smallness of weighted moduli resolutions.

The package decides, for moduli data (N, s) and a weight vector alpha,
whether the resolution attached to a nearby generic weight vector can be made
small or semismall.  Everything runs in exact rational arithmetic: the
criterion scan over candidate partitions, the wall-and-chamber tests on the
weight space, the counterexample constructions, and the dimension reports.
"""

from .core import (
    DEFAULT_CAP,
    CapExceededError,
    ConstructionRangeError,
    DimensionMismatchError,
    ModuliContext,
    MultiplicityVector,
    NotGenericError,
    Rational,
    WeightVector,
    deg_alpha,
    delta,
    delta_seq,
    dual_mult,
    dual_weight,
    h1_dim,
    hom_degree,
    parse_rational,
    parse_weight_vector,
)
from .weightspace import (
    LinearSystem,
    Wall,
    enumerate_walls,
    feasible,
    find_generic_near,
    is_generic,
    is_near,
    perturbation_direction,
    subset_sums,
)
from .partitions import (
    OrderedPartition,
    Partition,
    alpha_partitions,
    feasible_partitions,
    is_alpha_stable_seq,
    iter_partition_shapes,
    stable_rotation,
)
from .smallness import (
    MODES,
    Verdict,
    Witness,
    check_criterion,
    classify,
    construct_counterexample,
    construction_transcript,
    ordering_representatives,
    rotation_deltas,
    scan_all_s,
    verify_conjecture,
    violates_margin,
)
from .moduli import (
    FiberReport,
    fiber_component_dim,
    fiber_report,
    moduli_dim,
    stratum_codim,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_CAP",
    "CapExceededError",
    "ConstructionRangeError",
    "DimensionMismatchError",
    "ModuliContext",
    "MultiplicityVector",
    "NotGenericError",
    "Rational",
    "WeightVector",
    "deg_alpha",
    "delta",
    "delta_seq",
    "dual_mult",
    "dual_weight",
    "h1_dim",
    "hom_degree",
    "parse_rational",
    "parse_weight_vector",
    "LinearSystem",
    "Wall",
    "enumerate_walls",
    "feasible",
    "find_generic_near",
    "is_generic",
    "is_near",
    "perturbation_direction",
    "subset_sums",
    "OrderedPartition",
    "Partition",
    "alpha_partitions",
    "feasible_partitions",
    "is_alpha_stable_seq",
    "iter_partition_shapes",
    "stable_rotation",
    "MODES",
    "Verdict",
    "Witness",
    "check_criterion",
    "classify",
    "construct_counterexample",
    "construction_transcript",
    "ordering_representatives",
    "rotation_deltas",
    "scan_all_s",
    "verify_conjecture",
    "violates_margin",
    "FiberReport",
    "fiber_component_dim",
    "fiber_report",
    "moduli_dim",
    "stratum_codim",
    "__version__",
]
