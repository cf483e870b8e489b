"""
Exception hierarchy for the tournament linkage toolkit.

Input problems subclass ``InputError`` (and ``ValueError``); everything
else signals an algorithmic or internal-invariant failure.
"""
from typing import Any, Dict, Optional, Tuple


class LinkageToolkitError(Exception):
    """Base class for all toolkit errors."""


class InputError(LinkageToolkitError, ValueError):
    """Invalid user-supplied data or arguments."""


class TournamentFormatError(InputError):
    """
    A matrix or file does not describe a tournament.

    Attributes:
        pair: Offending (i, j) vertex pair, when the violation is pairwise
        line: Offending 1-based line number, when parsing text
    """

    def __init__(
        self,
        message: str,
        pair: Optional[Tuple[int, int]] = None,
        line: Optional[int] = None,
    ):
        super().__init__(message)
        self.pair = pair
        self.line = line


class VertexRangeError(InputError):
    """A vertex id or vertex set falls outside 0..n-1."""


class FlowError(InputError):
    """Invalid source, sink or allowed sets for a disjoint-path query."""


class LinkRequestError(InputError):
    """Terminal pairs that violate the linking preconditions."""


class DegreeFloorError(InputError):
    """
    The tournament misses the minimum in/out-degree floor.

    Attributes:
        vertex: Smallest deficient vertex
        out_degree: Its out-degree
        in_degree: Its in-degree
        floor: The required floor
    """

    def __init__(self, vertex: int, out_degree: int, in_degree: int, floor: int):
        super().__init__(
            f"vertex {vertex} has out-degree {out_degree} and in-degree {in_degree}, "
            f"below the required floor {floor}"
        )
        self.vertex = vertex
        self.out_degree = out_degree
        self.in_degree = in_degree
        self.floor = floor


class DominationExhaustedError(LinkageToolkitError):
    """The residual set emptied before the requested sequence length."""

    def __init__(self, achieved: int, requested: int):
        super().__init__(
            f"residual became empty after {achieved} of {requested} vertices"
        )
        self.achieved = achieved
        self.requested = requested


class LinkagePairError(LinkageToolkitError):
    """Internal-invariant failure while building or routing a linkage pair."""


class LinkagePairPreconditionError(LinkagePairError, InputError):
    """Linkage pair requested outside 1 <= m <= n/11."""


class LinkerStageError(LinkageToolkitError):
    """
    A linker stage could not complete.

    Attributes:
        stage: Stage identifier (see resources.config.Stage)
        state: Snapshot of the linker state at the time of failure
    """

    def __init__(self, stage: str, message: str, state: Optional[Dict[str, Any]] = None):
        super().__init__(f"stage {stage} failed: {message}")
        self.stage = stage
        self.state = state or {}


class OracleBudgetExceeded(LinkageToolkitError):
    """
    An exhaustive search hit its budget.

    This is a verdict of its own and never means "no solution".
    """

    def __init__(self, kind: str, limit: int, actual: Optional[int] = None):
        detail = f" (got {actual})" if actual is not None else ""
        super().__init__(f"oracle budget exceeded: {kind} limit {limit}{detail}")
        self.kind = kind
        self.limit = limit
        self.actual = actual
