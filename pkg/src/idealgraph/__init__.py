"""Metric and strong metric dimension of inclusion ideal graphs."""

from .errors import (
    BudgetExceededError,
    DisconnectedGraphError,
    IdealGraphError,
    SpecOutOfTheoremScopeError,
)
from .graph import (
    UNREACHABLE,
    IdealGraph,
    all_pairs_distances,
    build_graph,
    diameter,
    export,
    is_connected,
)
from .metric import (
    is_resolving,
    metric_dimension_exact,
    predicted_basis,
    predicted_metric_dimension,
    representation,
)
from .ring import (
    RingSpec,
    complement,
    enumerate_ideals,
    is_in_m,
    minimal_ideal,
    nzc,
    parse_ring_spec,
    properly_contains,
    vertex_count,
)
from .strong import (
    build_srg_definitional,
    build_srg_structural,
    independence_number,
    is_strong_resolving_set,
    mutually_maximally_distant,
    predicted_beta,
    predicted_max_independent_set,
    predicted_sdim,
    srg_structure,
    strong_metric_dimension,
    strong_metric_dimension_oracle,
)
from .theorems import SweepGrid, VerificationReport, sweep, verify_spec

__version__ = "0.1.0"
