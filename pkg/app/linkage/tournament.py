"""
Tournament representation, constructors and the TOURN 1 text format.

A tournament on n vertices is held twice: as a read-only boolean numpy
adjacency matrix (construction, serialization, induced subtournaments)
and as per-vertex out/in bitmasks (every query on the hot paths).
"""
import logging
import re
from typing import Iterable, List, Sequence, Tuple

import numpy as np

from .utils.errors import InputError, TournamentFormatError, VertexRangeError
from .utils.models import VertexSet, iter_bits

logger = logging.getLogger(__name__)

FORMAT_TAG = "TOURN 1"
_HEADER_PATTERN = re.compile(r"^TOURN 1 (0|[1-9]\d*)$")
_ROW_PATTERN = re.compile(r"^[01]*$")

# Added per resampling attempt to derive a fresh 64-bit seed
_SEED_STRIDE = 0x9E3779B97F4A7C15
_SEED_MODULUS = 1 << 64


def _validate_adjacency(adjacency: np.ndarray) -> None:
    """
    Check that a boolean matrix is a tournament.

    Raises:
        TournamentFormatError: naming the first offending (i, j) in row-major order.
    """
    if adjacency.ndim != 2 or adjacency.shape[0] != adjacency.shape[1]:
        raise TournamentFormatError(f"adjacency must be square, got shape {adjacency.shape}")

    loops = np.flatnonzero(np.diagonal(adjacency))
    if loops.size:
        i = int(loops[0])
        raise TournamentFormatError(f"edge({i},{i}) is set on the diagonal", pair=(i, i))

    both = np.argwhere(np.triu(adjacency & adjacency.T, 1))
    if both.size:
        i, j = (int(x) for x in both[0])
        raise TournamentFormatError(f"pair ({i},{j}) is oriented both ways", pair=(i, j))

    missing = np.argwhere(np.triu(~(adjacency | adjacency.T), 1))
    if missing.size:
        i, j = (int(x) for x in missing[0])
        raise TournamentFormatError(f"pair ({i},{j}) has no edge", pair=(i, j))


def _row_masks(adjacency: np.ndarray) -> Tuple[int, ...]:
    packed = np.packbits(adjacency, axis=1, bitorder="little")
    return tuple(int.from_bytes(row.tobytes(), "little") for row in packed)


class Tournament:
    """
    Immutable tournament on the vertices 0..n-1.

    Build instances through the module-level constructors; the
    constructor itself expects an already validated matrix unless
    ``validate`` is set.

    Attributes:
        n: Number of vertices
    """

    __slots__ = ("n", "_adjacency", "_out", "_in", "_out_degree", "_in_degree")

    def __init__(self, adjacency: np.ndarray, validate: bool = True):
        adjacency = np.array(adjacency, dtype=bool)
        if adjacency.ndim != 2 or adjacency.shape[0] < 1:
            raise InputError("a tournament has at least one vertex")
        if validate:
            _validate_adjacency(adjacency)
        adjacency.setflags(write=False)

        self.n = adjacency.shape[0]
        self._adjacency = adjacency
        self._out = _row_masks(adjacency)
        self._in = _row_masks(np.ascontiguousarray(adjacency.T))
        self._out_degree = tuple(mask.bit_count() for mask in self._out)
        self._in_degree = tuple(mask.bit_count() for mask in self._in)

    # Bitmask accessors (unchecked; callers guarantee 0 <= v < n)

    def edge(self, u: int, v: int) -> bool:
        """True iff u -> v is an edge."""
        return bool(self._out[u] >> v & 1)

    def out_mask(self, v: int) -> int:
        return self._out[v]

    def in_mask(self, v: int) -> int:
        return self._in[v]

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    # Checked queries

    def check_vertex(self, v: int) -> None:
        if not isinstance(v, (int, np.integer)) or not 0 <= v < self.n:
            raise VertexRangeError(f"vertex {v} outside 0..{self.n - 1}")

    def check_set(self, vertices: VertexSet) -> None:
        if vertices.mask >> self.n:
            stray = [v for v in vertices if v >= self.n]
            raise VertexRangeError(f"vertices {stray} outside 0..{self.n - 1}")

    def out_degree(self, v: int) -> int:
        self.check_vertex(v)
        return self._out_degree[v]

    def in_degree(self, v: int) -> int:
        self.check_vertex(v)
        return self._in_degree[v]

    def out_neighbours(self, v: int) -> VertexSet:
        self.check_vertex(v)
        return VertexSet(self._out[v])

    def in_neighbours(self, v: int) -> VertexSet:
        self.check_vertex(v)
        return VertexSet(self._in[v])

    def out_degrees(self) -> Tuple[int, ...]:
        return self._out_degree

    def in_degrees(self) -> Tuple[int, ...]:
        return self._in_degree

    def vertices(self) -> VertexSet:
        return VertexSet.full(self.n)

    def min_degree(self) -> int:
        """Minimum over all vertices of min(out-degree, in-degree)."""
        return min(min(pair) for pair in zip(self._out_degree, self._in_degree))

    def deficient_vertex(self, floor: int) -> int:
        """Smallest vertex whose in- or out-degree is below ``floor``, or -1."""
        for v in range(self.n):
            if self._out_degree[v] < floor or self._in_degree[v] < floor:
                return v
        return -1

    def is_transitive(self) -> bool:
        return sorted(self._out_degree) == list(range(self.n))

    def matrix(self) -> np.ndarray:
        """Read-only boolean adjacency matrix."""
        return self._adjacency

    def rows(self) -> List[str]:
        """Matrix rows as strings over {0,1}."""
        digits = self._adjacency.astype(np.uint8) + ord("0")
        return [row.tobytes().decode("ascii") for row in digits]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Tournament):
            return NotImplemented
        return self.n == other.n and self._out == other._out

    def __hash__(self) -> int:
        return hash((self.n, self._out))

    def __repr__(self) -> str:
        edges = self.n * (self.n - 1) // 2
        return f"Tournament(n={self.n}, edges={edges})"


def from_matrix(n: int, rows: Sequence[str]) -> Tournament:
    """
    Build a tournament from n strings over {0,1}.

    Character j of row i is '1' iff i -> j.

    Raises:
        TournamentFormatError: on dimension mismatch, bad characters,
            a diagonal '1', or a pair violating antisymmetry/completeness.
    """
    if n < 1:
        raise TournamentFormatError(f"vertex count must be positive, got {n}")
    if len(rows) != n:
        raise TournamentFormatError(f"expected {n} rows, got {len(rows)}")
    for i, row in enumerate(rows):
        if len(row) != n:
            raise TournamentFormatError(f"row {i} has length {len(row)}, expected {n}", line=i + 2)
        if not _ROW_PATTERN.match(row):
            raise TournamentFormatError(f"row {i} contains characters other than 0/1", line=i + 2)

    digits = np.frombuffer("".join(rows).encode("ascii"), dtype=np.uint8)
    adjacency = (digits == ord("1")).reshape(n, n)
    return Tournament(adjacency)


def transitive(n: int) -> Tournament:
    """Transitive tournament: i -> j iff i < j (tail 0, head n-1)."""
    if n < 1:
        raise InputError(f"n must be at least 1, got {n}")
    return Tournament(np.triu(np.ones((n, n), dtype=bool), 1), validate=False)


def rotational(n: int) -> Tournament:
    """
    Rotational tournament on n = 2t+1 vertices.

    i -> j iff (j - i) mod n lies in 1..t, so every vertex has out-degree t.
    """
    if n < 3 or n % 2 == 0:
        raise InputError(f"rotational tournaments need an odd vertex count of at least 3, got {n}")
    t = n // 2
    diff = (np.arange(n)[None, :] - np.arange(n)[:, None]) % n
    return Tournament((diff >= 1) & (diff <= t), validate=False)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, int(p**0.5) + 1))


def paley(p: int) -> Tournament:
    """
    Quadratic-residue tournament on a prime p = 3 (mod 4).

    i -> j iff (j - i) mod p is a nonzero square mod p.
    """
    if not _is_prime(p) or p % 4 != 3:
        raise InputError(f"quadratic-residue tournaments need a prime p = 3 mod 4, got {p}")
    residues = np.zeros(p, dtype=bool)
    residues[[(x * x) % p for x in range(1, p)]] = True
    diff = (np.arange(p)[None, :] - np.arange(p)[:, None]) % p
    return Tournament(residues[diff], validate=False)


def random_tournament(n: int, seed: int) -> Tournament:
    """
    Uniformly random tournament, reproducible on every platform.

    Uses numpy's PCG64 seeded with ``seed`` (through SeedSequence). Pair
    (i, j) with i < j consumes one raw 64-bit draw in lexicographic pair
    order; its top bit set orients the pair i -> j.
    """
    if n < 1:
        raise InputError(f"n must be at least 1, got {n}")
    if not 0 <= seed < _SEED_MODULUS:
        raise InputError(f"seed must be a 64-bit unsigned integer, got {seed}")

    generator = np.random.Generator(np.random.PCG64(seed))
    rows, cols = np.triu_indices(n, 1)
    forward = (generator.bit_generator.random_raw(rows.size) >> np.uint64(63)).astype(bool)

    adjacency = np.zeros((n, n), dtype=bool)
    adjacency[rows[forward], cols[forward]] = True
    adjacency[cols[~forward], rows[~forward]] = True
    return Tournament(adjacency, validate=False)


def derive_seed(seed: int, attempt: int) -> int:
    """Seed used by resampling attempt ``attempt`` (attempt 0 is ``seed``)."""
    return (seed + attempt * _SEED_STRIDE) % _SEED_MODULUS


def sample_min_degree(
    n: int, seed: int, floor: int, attempts: int = 200
) -> Tuple[Tournament, int]:
    """
    Resample random tournaments until min in/out-degree reaches ``floor``.

    Returns:
        The tournament and the seed that produced it.

    Raises:
        InputError: if no attempt reaches the floor.
    """
    for attempt in range(attempts):
        candidate_seed = derive_seed(seed, attempt)
        tournament = random_tournament(n, candidate_seed)
        if tournament.min_degree() >= floor:
            if attempt:
                logger.info(f"Degree floor {floor} reached after {attempt + 1} samples")
            return tournament, candidate_seed
        logger.debug(f"Seed {candidate_seed}: min degree {tournament.min_degree()} < {floor}")
    raise InputError(f"no tournament on {n} vertices reached min degree {floor} in {attempts} samples")


def reverse(tournament: Tournament) -> Tournament:
    """Tournament with every edge reversed."""
    return Tournament(tournament.matrix().T, validate=False)


def induced(tournament: Tournament, vertices: VertexSet) -> Tuple[Tournament, Tuple[int, ...]]:
    """
    Subtournament on ``vertices`` relabelled to 0..|S|-1.

    Returns:
        The subtournament and the map from new ids to original ids
        (ascending original order).
    """
    if not vertices:
        raise InputError("cannot induce on an empty vertex set")
    tournament.check_set(vertices)
    mapping = tuple(vertices)
    index = np.fromiter(mapping, dtype=np.intp, count=len(mapping))
    sub = tournament.matrix()[np.ix_(index, index)]
    return Tournament(sub, validate=False), mapping


def lift(mapping: Sequence[int], vertices: Iterable[int]) -> List[int]:
    """Translate subtournament ids back to parent ids."""
    return [mapping[v] for v in vertices]


def relabel_mask(mapping: Sequence[int], mask: int) -> int:
    """Translate a subtournament bitmask back to parent ids."""
    lifted = 0
    for v in iter_bits(mask):
        lifted |= 1 << mapping[v]
    return lifted


def serialize(tournament: Tournament) -> str:
    """Canonical TOURN 1 text: header line, then n matrix rows, LF-terminated."""
    lines = [f"{FORMAT_TAG} {tournament.n}", *tournament.rows()]
    return "\n".join(lines) + "\n"


def parse(text: str) -> Tournament:
    """
    Parse TOURN 1 text.

    Raises:
        TournamentFormatError: on a malformed header, wrong row count or
            length, bad characters (including CR), or invariant violations.
    """
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise TournamentFormatError("empty input", line=1)

    header = _HEADER_PATTERN.match(lines[0])
    if not header:
        raise TournamentFormatError(f"malformed header {lines[0]!r}", line=1)
    n = int(header.group(1))
    if len(lines) - 1 != n:
        raise TournamentFormatError(f"header announces {n} rows, found {len(lines) - 1}")
    return from_matrix(n, lines[1:])
