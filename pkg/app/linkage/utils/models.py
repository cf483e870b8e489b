"""
Data models shared across the tournament linkage toolkit.

Vertex sets are bitsets over the dense vertex range 0..n-1, stored in a
Python int (bit v set iff v is a member).
"""
from dataclasses import dataclass
from typing import Any, Dict, Iterable, Iterator, Optional, Tuple

from ..resources.config import EventType


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the members of a bitmask in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def lowest_bit(mask: int) -> int:
    """Smallest member of a nonempty bitmask."""
    return (mask & -mask).bit_length() - 1


def mask_of(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


@dataclass(frozen=True, slots=True)
class VertexSet:
    """
    Immutable set of vertex ids backed by a bitmask.

    Attributes:
        mask: Bit v is set iff vertex v is a member
    """
    mask: int = 0

    @classmethod
    def of(cls, vertices: Iterable[int]) -> "VertexSet":
        """Build a set from vertex ids (negative ids are rejected)."""
        vertices = list(vertices)
        if any(v < 0 for v in vertices):
            raise ValueError(f"negative vertex id in {sorted(vertices)}")
        return cls(mask_of(vertices))

    @classmethod
    def full(cls, n: int) -> "VertexSet":
        return cls((1 << n) - 1)

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.mask)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __bool__(self) -> bool:
        return self.mask != 0

    def __contains__(self, v: object) -> bool:
        return isinstance(v, int) and v >= 0 and bool(self.mask >> v & 1)

    def __or__(self, other: "VertexSet") -> "VertexSet":
        return VertexSet(self.mask | other.mask)

    def __and__(self, other: "VertexSet") -> "VertexSet":
        return VertexSet(self.mask & other.mask)

    def __sub__(self, other: "VertexSet") -> "VertexSet":
        return VertexSet(self.mask & ~other.mask)

    def isdisjoint(self, other: "VertexSet") -> bool:
        return not self.mask & other.mask

    def issubset(self, other: "VertexSet") -> bool:
        return not self.mask & ~other.mask

    def min(self) -> int:
        if not self.mask:
            raise ValueError("min() of an empty VertexSet")
        return lowest_bit(self.mask)

    def max(self) -> int:
        if not self.mask:
            raise ValueError("max() of an empty VertexSet")
        return self.mask.bit_length() - 1

    def to_list(self) -> list:
        return list(iter_bits(self.mask))

    def __repr__(self) -> str:
        return f"VertexSet({self.to_list()})"


@dataclass(frozen=True)
class Path:
    """
    A directed path given by its vertex sequence.

    Attributes:
        vertices: Ordered vertex ids, start first
    """
    vertices: Tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.vertices:
            raise ValueError("a path has at least one vertex")
        object.__setattr__(self, "vertices", tuple(self.vertices))

    @property
    def start(self) -> int:
        return self.vertices[0]

    @property
    def end(self) -> int:
        return self.vertices[-1]

    @property
    def internal(self) -> Tuple[int, ...]:
        return self.vertices[1:-1]

    @property
    def length(self) -> int:
        """Number of edges."""
        return len(self.vertices) - 1

    @property
    def mask(self) -> int:
        return mask_of(self.vertices)

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self) -> Iterator[int]:
        return iter(self.vertices)

    def violation(self, tournament: Any) -> Optional[str]:
        """
        Describe the first way this is not a path of the tournament.

        Args:
            tournament: Anything with ``n`` and ``edge(u, v)``.

        Returns:
            None if valid, otherwise a one-line description.
        """
        seen = set()
        for v in self.vertices:
            if not 0 <= v < tournament.n:
                return f"vertex {v} out of range"
            if v in seen:
                return f"vertex {v} repeated"
            seen.add(v)
        for u, v in zip(self.vertices, self.vertices[1:]):
            if not tournament.edge(u, v):
                return f"no edge {u}->{v}"
        return None

    def __str__(self) -> str:
        return " ".join(str(v) for v in self.vertices)


@dataclass
class LinkerEvent:
    """
    Event emitted while the linker runs.

    Attributes:
        type: The type of event (stage, result, complete, error)
        message: Human-readable message describing the event
        stage: Optional stage identifier for stage/result/error events
        data: Optional additional data payload
    """
    type: str
    message: str
    stage: Optional[str] = None
    data: Optional[Dict[str, Any]] = None

    def to_dict(self) -> Dict[str, Any]:
        """Convert event to dictionary for JSON serialization."""
        result = {
            "type": self.type,
            "message": self.message,
        }
        if self.stage is not None:
            result["stage"] = self.stage
        if self.data is not None:
            result["data"] = self.data
        return result

    @classmethod
    def stage_event(cls, stage: str, message: str) -> "LinkerEvent":
        """Create a stage start event."""
        return cls(type=EventType.STAGE, message=message, stage=stage)

    @classmethod
    def result_event(cls, stage: str, message: str, data: Dict[str, Any]) -> "LinkerEvent":
        """Create a stage result event with data payload."""
        return cls(type=EventType.RESULT, message=message, stage=stage, data=data)

    @classmethod
    def complete_event(cls, message: str, data: Dict[str, Any]) -> "LinkerEvent":
        """Create the final event carrying the linkage."""
        return cls(type=EventType.COMPLETE, message=message, data=data)

    @classmethod
    def error_event(
        cls, message: str, stage: Optional[str] = None, data: Optional[Dict[str, Any]] = None
    ) -> "LinkerEvent":
        """Create an error event."""
        return cls(type=EventType.ERROR, message=message, stage=stage, data=data)
