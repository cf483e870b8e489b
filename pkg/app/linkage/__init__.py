"""
Tournament Linkage Package.

Builds vertex-disjoint paths between terminal pairs in highly connected
tournaments, with the supporting machinery: Menger flows, greedy
dominating sequences, linkage pairs and exhaustive small-case oracles.

Main Components:
    - Tournament: Immutable tournament with bitmask neighbourhoods
    - Linker: The staged linking pipeline
    - disjoint_paths / strong_connectivity: Menger machinery
    - find_linkage_pair / route: Short-path routing of any permutation
    - bf_*: Exhaustive oracles for small tournaments
    - DEFAULT_CONFIG: Default toolkit configuration

Example Usage:
    ```python
    from app.linkage import Linker, LinkRequest, sample_min_degree

    tournament, _ = sample_min_degree(1000, seed=7, floor=452)
    result = Linker().link(tournament, LinkRequest.from_pairs([(0, 1)]))

    # Stream stage events
    for event in Linker().link_stream(tournament, LinkRequest.from_pairs([(0, 1)])):
        print(event)
    ```
"""

from .tournament import (
    Tournament,
    from_matrix,
    transitive,
    rotational,
    paley,
    random_tournament,
    sample_min_degree,
    reverse,
    induced,
    serialize,
    parse,
)
from .flows import (
    DisjointPathSet,
    ConnectivityWitness,
    disjoint_paths,
    local_connectivity,
    reachable,
    is_strongly_connected,
    is_strongly_k_connected,
    strong_connectivity,
)
from .domination import (
    Flavor,
    DominatingSequence,
    greedy_in_dominating,
    greedy_out_dominating,
    greedy_dominating,
    full_dominating_sequence,
    check_degree_bound,
)
from .linkage_pairs import (
    PairMode,
    LinkagePair,
    find_linkage_pair,
    route,
    max_bipartite_matching,
    verify_routes,
)
from .linker import (
    Linker,
    LinkRequest,
    LinkerState,
    LinkResult,
    LinkageReport,
    link,
    required_connectivity,
    verify_linkage,
)
from .oracle import (
    OracleBudget,
    LinkedVerdict,
    bf_strong_connectivity,
    bf_disjoint_paths,
    bf_max_disjoint_paths,
    bf_is_k_linked,
)

# Import from resources
from .resources.config import (
    DEFAULT_CONFIG,
    ToolkitConfig,
    LinkerConfig,
    OracleConfig,
    BenchConfig,
    ServiceConfig,
    EventType,
    Stage,
)

__all__ = [
    # Tournaments
    "Tournament",
    "from_matrix",
    "transitive",
    "rotational",
    "paley",
    "random_tournament",
    "sample_min_degree",
    "reverse",
    "induced",
    "serialize",
    "parse",

    # Flows
    "DisjointPathSet",
    "ConnectivityWitness",
    "disjoint_paths",
    "local_connectivity",
    "reachable",
    "is_strongly_connected",
    "is_strongly_k_connected",
    "strong_connectivity",

    # Domination
    "Flavor",
    "DominatingSequence",
    "greedy_in_dominating",
    "greedy_out_dominating",
    "greedy_dominating",
    "full_dominating_sequence",
    "check_degree_bound",

    # Linkage pairs
    "PairMode",
    "LinkagePair",
    "find_linkage_pair",
    "route",
    "max_bipartite_matching",
    "verify_routes",

    # Linker
    "Linker",
    "LinkRequest",
    "LinkerState",
    "LinkResult",
    "LinkageReport",
    "link",
    "required_connectivity",
    "verify_linkage",

    # Oracle
    "OracleBudget",
    "LinkedVerdict",
    "bf_strong_connectivity",
    "bf_disjoint_paths",
    "bf_max_disjoint_paths",
    "bf_is_k_linked",

    # Configuration
    "DEFAULT_CONFIG",
    "ToolkitConfig",
    "LinkerConfig",
    "OracleConfig",
    "BenchConfig",
    "ServiceConfig",
    "EventType",
    "Stage",
]

__version__ = "1.0.0"
