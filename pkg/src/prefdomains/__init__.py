"""Structured preference domains: recognition and exact deletion distances.

Nine domains over strict rankings (value-, best-, medium-, worst-, and
beta-restricted, single-peaked, single-caved, group-separable,
single-crossing) are recognized through their forbidden-configuration
characterizations; deletion distances to each domain are computed by a
polynomial inclusion-DAG algorithm (single-crossing voter deletion), by
parameterized branching, or by brute force.  Generators reproduce the
standard vertex-cover and Max2Sat hardness constructions as test instances
with known optima.
"""

from .configurations import (
    ConfigurationKind,
    ConfigurationWitness,
    find_configuration,
    triple_census,
    verify_witness,
)
from .errors import FormatError, GuardExceededError
from .profiles import (
    ConflictPairSet,
    DedupResult,
    PreferenceOrder,
    Profile,
    Restriction,
    conflict_pairs,
    dedup,
    parse_profile,
    restrict,
    reverse_profile,
    serialize_profile,
)
from .recognition import (
    DomainProperty,
    RecognitionResult,
    check,
    oracle_check,
    single_crossing_order,
    validate_sc_order,
)
from .reductions import (
    Graph,
    Max2SatInstance,
    max2sat_to_sc_ad,
    oracle_max2sat,
    oracle_vertex_cover,
    parse_graph,
    parse_max2sat,
    vc_to_beta_ad,
    vc_to_beta_md,
    vc_to_value_ad,
    vc_to_value_md,
)
from .solvers import (
    DeletionMode,
    InclusionDag,
    SolveOutcome,
    brute_force,
    build_inclusion_dag,
    decide,
    fpt_branch,
    max_single_crossing_voters,
    max_weight_path,
    min_distance,
)

__version__ = "0.1.0"
