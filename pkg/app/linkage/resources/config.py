"""
Configuration settings for the tournament linkage toolkit.

This module centralizes the constants of the linking construction,
oracle budgets, benchmark defaults and service settings.
"""
from dataclasses import dataclass, field

# primed_x, primed_y, double_x, double_y
SPECIAL_PER_PAIR = 4


@dataclass(frozen=True)
class LinkerConfig:
    """Constants of the linking construction."""
    # Degree floor per terminal pair
    connectivity_factor: int = 452

    # Dominating sequences built per flavor, per terminal pair
    dominating_factor: int = 55

    # Size of each linkage pair, per terminal pair
    linkage_factor: int = 5

    # Vertices in every greedy dominating sequence
    sequence_size: int = 2

    def __post_init__(self) -> None:
        for name in ("connectivity_factor", "dominating_factor", "linkage_factor"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)}")
        if self.sequence_size != 2:
            raise ValueError("sequence_size is fixed at 2 by the entry/exit path construction")
        if self.dominating_factor < 11 * self.linkage_factor:
            raise ValueError(
                f"dominating_factor ({self.dominating_factor}) must be at least "
                f"11 * linkage_factor ({11 * self.linkage_factor})"
            )

    def required_connectivity(self, k: int) -> int:
        """Degree floor (and connectivity) demanded for k terminal pairs."""
        if k < 1:
            raise ValueError(f"k must be at least 1, got {k}")
        return self.connectivity_factor * k

    def dominating_count(self, k: int) -> int:
        return self.dominating_factor * k

    def linkage_size(self, k: int) -> int:
        return self.linkage_factor * k

    def dominating_bound(self, k: int) -> int:
        """Upper bound on |X|: all dominating vertices plus the 2k terminals."""
        return (2 * self.sequence_size * self.dominating_factor + 2) * k

    def guarantee_floor(self, k: int) -> int:
        """Smallest degree floor for which every stage is provably feasible."""
        return 2 * (self.dominating_bound(k) + 2 * k) + 4 * k

    def guarantee_holds(self, k: int) -> bool:
        """Whether the constants imply every stage succeeds for k pairs.

        Besides the degree floor, the linkage pair must hold more bridges
        than there are special vertices, so k of them survive selection.
        """
        return (
            self.required_connectivity(k) >= self.guarantee_floor(k)
            and self.linkage_factor >= SPECIAL_PER_PAIR + 1
        )


@dataclass(frozen=True)
class OracleConfig:
    """Default budgets for the exhaustive checkers."""
    max_n: int = 12
    max_nodes_expanded: int = 10_000_000


@dataclass(frozen=True)
class BenchConfig:
    """Configuration for benchmark suites."""
    # Path to suites file (relative to this config file)
    suites_file: str = "suites.yml"

    # Seeds tried per trial before giving up on the degree floor
    resample_attempts: int = 200

    # Worker processes for independent trials
    workers: int = 1


@dataclass(frozen=True)
class ServiceConfig:
    """Configuration for the HTTP service."""
    title: str = "Tournament Linkage"
    description: str = "Disjoint-path linking in highly connected tournaments"
    version: str = "1.0.0"

    # Requests with larger tournaments are rejected
    max_vertices: int = 3000


@dataclass(frozen=True)
class ToolkitConfig:
    """Main configuration container."""
    linker: LinkerConfig = field(default_factory=LinkerConfig)
    oracle: OracleConfig = field(default_factory=OracleConfig)
    bench: BenchConfig = field(default_factory=BenchConfig)
    service: ServiceConfig = field(default_factory=ServiceConfig)


# Event types emitted during linking
class EventType:
    """Constants for linker event types."""
    STAGE = "stage"
    RESULT = "result"
    COMPLETE = "complete"
    ERROR = "error"


# Stage identifiers, in pipeline order
class Stage:
    """Constants for linker pipeline stages."""
    PRECONDITION = "precondition"
    TERMINALS = "terminals"
    IN_DOMINATION = "in_domination"
    OUT_DOMINATION = "out_domination"
    EXCEPTIONAL = "exceptional_sets"
    LINKAGE_PAIRS = "linkage_pairs"
    REORDER = "reorder"
    MENGER = "menger"
    PRIMED = "primed"
    DOUBLE_PRIMED = "double_primed"
    ENTRY_EXIT = "entry_exit"
    SELECT = "select"
    ROUTE = "route"
    STITCH = "stitch"

    ORDER = (
        PRECONDITION,
        TERMINALS,
        IN_DOMINATION,
        OUT_DOMINATION,
        EXCEPTIONAL,
        LINKAGE_PAIRS,
        REORDER,
        MENGER,
        PRIMED,
        DOUBLE_PRIMED,
        ENTRY_EXIT,
        SELECT,
        ROUTE,
        STITCH,
    )


# Default configuration instance
DEFAULT_CONFIG = ToolkitConfig()
