"""
Utilities package for the tournament linkage toolkit.

Contains the error hierarchy, shared data models, text formats and the
benchmark suite loader.
"""

from .errors import (
    LinkageToolkitError,
    InputError,
    TournamentFormatError,
    VertexRangeError,
    FlowError,
    LinkRequestError,
    DegreeFloorError,
    DominationExhaustedError,
    LinkagePairError,
    LinkagePairPreconditionError,
    LinkerStageError,
    OracleBudgetExceeded,
)
from .models import (
    VertexSet,
    Path,
    LinkerEvent,
    iter_bits,
    lowest_bit,
    mask_of,
)
from .formats import (
    BenchRecord,
    REPORT_HEADER,
    parse_pairs,
    format_pairs,
    parse_paths,
    format_paths,
    format_report,
    parse_report,
)
from .suite_loader import SuiteLoader, get_suite_loader

__all__ = [
    # Errors
    "LinkageToolkitError",
    "InputError",
    "TournamentFormatError",
    "VertexRangeError",
    "FlowError",
    "LinkRequestError",
    "DegreeFloorError",
    "DominationExhaustedError",
    "LinkagePairError",
    "LinkagePairPreconditionError",
    "LinkerStageError",
    "OracleBudgetExceeded",

    # Data models
    "VertexSet",
    "Path",
    "LinkerEvent",
    "iter_bits",
    "lowest_bit",
    "mask_of",

    # Text formats
    "BenchRecord",
    "REPORT_HEADER",
    "parse_pairs",
    "format_pairs",
    "parse_paths",
    "format_paths",
    "format_report",
    "parse_report",

    # Suites
    "SuiteLoader",
    "get_suite_loader",
]
