"""
Menger machinery for tournaments.

Maximum sets of fully vertex-disjoint paths between vertex sets, with a
separating vertex set as certificate, and exact strong connectivity.

Vertex disjointness uses the usual splitting: vertex v becomes in(v) and
out(v) joined by a unit-capacity arc; edges, the super-source arcs and
the super-sink arcs have unbounded capacity, so every minimum cut is a
set of vertices. Augmentation runs in shortest-path phases (blocking
flows). Residual searches work on bitmasks, which keeps a phase at
O(n) big-integer operations on tournaments with thousands of vertices.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .tournament import Tournament
from .utils.errors import FlowError, LinkageToolkitError
from .utils.models import Path, VertexSet, iter_bits, lowest_bit

logger = logging.getLogger(__name__)

# Sentinel in the predecessor/successor maps for the super-source/super-sink
_TERMINAL = -1


@dataclass
class DisjointPathSet:
    """
    Maximum family of pairwise vertex-disjoint paths plus a separator.

    Attributes:
        paths: Paths from the source set to the sink set, sorted by start
        cut: Vertex set meeting every source-to-sink path; |cut| == |paths|
    """
    paths: List[Path]
    cut: VertexSet

    def __len__(self) -> int:
        return len(self.paths)


@dataclass
class ConnectivityWitness:
    """
    Answer to "is T strongly k-connected?".

    Attributes:
        connected: The verdict
        k: The k that was asked about
        separator: On a negative verdict, a set of at most k-1 vertices
            whose removal destroys strong connectivity
        pair: An ordered pair (u, v) with no u -> v path once the
            separator is removed
        reason: Human-readable explanation of a negative verdict
    """
    connected: bool
    k: int
    separator: Optional[VertexSet] = None
    pair: Optional[Tuple[int, int]] = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.connected


def reachable(tournament: Tournament, start: int, allowed: int, backward: bool = False) -> int:
    """
    Vertices reachable from the bitmask ``start`` inside ``allowed``.

    Args:
        tournament: The ambient tournament.
        start: Bitmask of start vertices (clipped to ``allowed``).
        allowed: Bitmask of usable vertices.
        backward: Follow edges against their direction.

    Returns:
        Bitmask of reached vertices, including the start vertices.
    """
    neighbours = tournament.in_mask if backward else tournament.out_mask
    seen = start & allowed
    frontier = seen
    while frontier:
        grown = 0
        for u in iter_bits(frontier):
            grown |= neighbours(u)
        frontier = grown & allowed & ~seen
        seen |= frontier
    return seen


def is_strongly_connected(tournament: Tournament, within: Optional[VertexSet] = None) -> bool:
    """True iff the subtournament on ``within`` (default: all) is strongly connected."""
    allowed = tournament.full_mask if within is None else within.mask
    if allowed.bit_count() <= 1:
        return True
    root = 1 << lowest_bit(allowed)
    return (
        reachable(tournament, root, allowed) == allowed
        and reachable(tournament, root, allowed, backward=True) == allowed
    )


class _SplitFlow:
    """Unit vertex-capacity flow from a source set to a sink set."""

    def __init__(self, tournament: Tournament, sources: int, sinks: int, allowed: int):
        self.tournament = tournament
        self.sources = sources
        self.sinks = sinks
        self.allowed = allowed
        n = tournament.n
        self.super_source = 2 * n
        self.super_sink = 2 * n + 1

        # Flow arcs between vertices; _TERMINAL marks the super-source/sink
        self.prv: Dict[int, int] = {}
        self.nxt: Dict[int, int] = {}

        self.in_level: List[int] = []
        self.out_level: List[int] = []
        self.sink_level = -1
        self.layers: List[int] = []

    def run(self) -> None:
        phases = 0
        while self._build_levels():
            phases += 1
            pushed = self._blocking_flow()
            logger.debug(f"Phase {phases}: pushed {pushed}, flow {self.value}")

    @property
    def value(self) -> int:
        return sum(1 for v, p in self.prv.items() if p == _TERMINAL)

    def _build_levels(self) -> bool:
        """BFS over the residual graph; True iff the super-sink is reachable."""
        n = self.tournament.n
        in_level = [-1] * n
        out_level = [-1] * n
        sink_level = -1

        first = self.sources
        for v in iter_bits(first):
            in_level[v] = 1
        layers = [0, first]
        seen_in = first
        frontier_in = list(iter_bits(first))
        frontier_out: List[int] = []
        depth = 1

        while (frontier_in or frontier_out) and sink_level < 0:
            depth += 1
            fresh_in = 0
            fresh_out: List[int] = []

            for v in frontier_in:
                w = self.prv.get(v)
                if w is None:
                    w = v
                elif w == _TERMINAL:
                    continue
                if out_level[w] < 0:
                    out_level[w] = depth
                    fresh_out.append(w)

            for u in frontier_out:
                if self.sinks >> u & 1 and sink_level < 0:
                    sink_level = depth
                if u in self.prv and in_level[u] < 0:
                    in_level[u] = depth
                    fresh_in |= 1 << u
                forward = self.tournament.out_mask(u) & self.allowed & ~seen_in & ~fresh_in
                for w in iter_bits(forward):
                    in_level[w] = depth
                fresh_in |= forward

            seen_in |= fresh_in
            layers.append(fresh_in)
            frontier_in = list(iter_bits(fresh_in))
            frontier_out = fresh_out

        self.in_level = in_level
        self.out_level = out_level
        self.sink_level = sink_level
        self.layers = layers
        return sink_level >= 0

    def _next_node(self, node: int, dead_in: int, dead_out: int) -> Optional[int]:
        """First residual successor of ``node`` one level further, or None."""
        if node == self.super_source:
            candidates = self.sources & self.layers[1] & ~dead_in
            return 2 * lowest_bit(candidates) if candidates else None

        v, is_out = divmod(node, 2)
        if not is_out:
            level = self.in_level[v] + 1
            w = self.prv.get(v)
            if w is None:
                w = v
            elif w == _TERMINAL:
                return None
            if self.out_level[w] == level and not dead_out >> w & 1:
                return 2 * w + 1
            return None

        level = self.out_level[v] + 1
        if self.sinks >> v & 1 and self.sink_level == level:
            return self.super_sink
        if v in self.prv and self.in_level[v] == level and not dead_in >> v & 1:
            return 2 * v
        if level < len(self.layers):
            candidates = self.tournament.out_mask(v) & self.allowed & self.layers[level] & ~dead_in
            if candidates:
                return 2 * lowest_bit(candidates)
        return None

    def _blocking_flow(self) -> int:
        dead_in = 0
        dead_out = 0
        pushed = 0
        while True:
            stack = [self.super_source]
            while stack and stack[-1] != self.super_sink:
                node = stack[-1]
                successor = self._next_node(node, dead_in, dead_out)
                if successor is not None:
                    stack.append(successor)
                    continue
                stack.pop()
                if node == self.super_source:
                    continue
                v, is_out = divmod(node, 2)
                if is_out:
                    dead_out |= 1 << v
                else:
                    dead_in |= 1 << v
            if not stack:
                return pushed
            self._augment(stack)
            pushed += 1

    def _augment(self, nodes: List[int]) -> None:
        removed: List[Tuple[int, int]] = []
        added: List[Tuple[int, int]] = []
        for a, b in zip(nodes, nodes[1:]):
            if a == self.super_source:
                added.append((_TERMINAL, b // 2))
            elif b == self.super_sink:
                added.append((a // 2, _TERMINAL))
            elif a % 2 == 0:
                # in(v) -> out(w), w != v, cancels the flow arc w -> v
                if b // 2 != a // 2:
                    removed.append((b // 2, a // 2))
            elif b // 2 != a // 2:
                added.append((a // 2, b // 2))

        for tail, head in removed:
            del self.nxt[tail]
            del self.prv[head]
        for tail, head in added:
            if tail != _TERMINAL:
                self.nxt[tail] = head
            if head != _TERMINAL:
                self.prv[head] = tail

    def paths(self) -> List[List[int]]:
        """Decompose the flow; vertices on flow cycles are dropped."""
        result = []
        for start in sorted(v for v, p in self.prv.items() if p == _TERMINAL):
            walk = [start]
            while self.nxt[walk[-1]] != _TERMINAL:
                walk.append(self.nxt[walk[-1]])
            result.append(walk)
        return result

    def cut(self) -> int:
        """Vertices whose in-copy is residual-reachable but out-copy is not."""
        cut = 0
        for v in range(self.tournament.n):
            if self.in_level[v] >= 0 and self.out_level[v] < 0:
                cut |= 1 << v
        return cut


def _shortcut(walk: List[int], sources: int, sinks: int) -> List[int]:
    """Trim a walk so it meets ``sources`` only first and ``sinks`` only last."""
    start = max(i for i, v in enumerate(walk) if sources >> v & 1)
    walk = walk[start:]
    end = next(i for i, v in enumerate(walk) if sinks >> v & 1)
    return walk[: end + 1]


def max_disjoint_paths(
    tournament: Tournament, sources: int, sinks: int, allowed: int
) -> Tuple[List[List[int]], int]:
    """
    Bitmask form of ``disjoint_paths`` without argument checks.

    Returns:
        Paths as vertex lists (sorted by start) and the cut bitmask.
    """
    flow = _SplitFlow(tournament, sources & allowed, sinks & allowed, allowed)
    flow.run()
    walks = [_shortcut(walk, sources, sinks) for walk in flow.paths()]
    walks.sort(key=lambda walk: walk[0])
    cut = flow.cut()

    if len(walks) != cut.bit_count():
        raise LinkageToolkitError(
            f"flow of value {len(walks)} certified by a cut of size {cut.bit_count()}"
        )
    return walks, cut


def disjoint_paths(
    tournament: Tournament, sources: VertexSet, sinks: VertexSet, allowed: VertexSet
) -> DisjointPathSet:
    """
    Maximum set of fully vertex-disjoint source-to-sink paths.

    A vertex in both ``sources`` and ``sinks`` may come back as a
    single-vertex path. Which source is joined to which sink is not
    controlled.

    Args:
        tournament: The ambient tournament.
        sources: Start vertices.
        sinks: End vertices.
        allowed: The only vertices paths may use; contains sources and sinks.

    Returns:
        The paths and a separating vertex set of equal size within ``allowed``.

    Raises:
        FlowError: if ``allowed`` is empty or misses a source or sink.
    """
    for name, vertex_set in (("sources", sources), ("sinks", sinks), ("allowed", allowed)):
        tournament.check_set(vertex_set)
    if not allowed:
        raise FlowError("allowed vertex set is empty")
    if not sources.issubset(allowed):
        raise FlowError(f"sources {(sources - allowed).to_list()} lie outside allowed")
    if not sinks.issubset(allowed):
        raise FlowError(f"sinks {(sinks - allowed).to_list()} lie outside allowed")

    walks, cut = max_disjoint_paths(tournament, sources.mask, sinks.mask, allowed.mask)
    logger.debug(f"{len(walks)} disjoint paths from {len(sources)} sources to {len(sinks)} sinks")
    return DisjointPathSet(paths=[Path(tuple(walk)) for walk in walks], cut=VertexSet(cut))


def local_connectivity(tournament: Tournament, u: int, v: int) -> DisjointPathSet:
    """
    Internally disjoint u -> v paths for a pair without the edge u -> v.

    Returns:
        Paths from N+(u) to N-(v) avoiding u and v (prepend u and append v
        to obtain u -> v paths) and the separating set.

    Raises:
        FlowError: if u == v or u -> v is an edge.
    """
    tournament.check_vertex(u)
    tournament.check_vertex(v)
    if u == v or tournament.edge(u, v):
        raise FlowError(f"local connectivity needs a non-adjacent ordered pair, got ({u},{v})")
    allowed = tournament.full_mask & ~(1 << u | 1 << v)
    walks, cut = max_disjoint_paths(
        tournament, tournament.out_mask(u) & allowed, tournament.in_mask(v) & allowed, allowed
    )
    return DisjointPathSet(paths=[Path(tuple(walk)) for walk in walks], cut=VertexSet(cut))


def _unreachable_pair(tournament: Tournament) -> Tuple[int, int]:
    """An ordered pair (u, v) with no u -> v path; T must not be strongly connected."""
    full = tournament.full_mask
    forward = reachable(tournament, 1, full)
    if forward != full:
        return 0, lowest_bit(full & ~forward)
    backward = reachable(tournament, 1, full, backward=True)
    return lowest_bit(full & ~backward), 0


@dataclass
class _Separation:
    size: int
    separator: int = 0
    pair: Optional[Tuple[int, int]] = field(default=None)


def _minimum_separation(tournament: Tournament, stop_below: Optional[int] = None) -> _Separation:
    """
    Smallest vertex set destroying strong connectivity (n >= 2).

    Covering family: a minimum separator S misses one of the vertices
    0..|S|, and every ordered pair it separates lacks the direct edge,
    so local connectivities of vertices 0..best against all others in
    both directions suffice.
    """
    n = tournament.n
    if not is_strongly_connected(tournament):
        return _Separation(size=0, pair=_unreachable_pair(tournament))

    best = _Separation(size=n - 1)
    v = 0
    while v < n and v <= best.size:
        for w in range(n):
            if w == v:
                continue
            for a, b in ((v, w), (w, v)):
                if tournament.edge(a, b):
                    continue
                local = local_connectivity(tournament, a, b)
                if len(local) < best.size:
                    best = _Separation(size=len(local), separator=local.cut.mask, pair=(a, b))
                    if stop_below is not None and best.size < stop_below:
                        return best
        v += 1
    return best


def strong_connectivity(tournament: Tournament) -> int:
    """
    Exact strong connectivity.

    The largest k with n >= k+2 such that removing any k-1 vertices leaves
    a strongly connected tournament; 0 when T is not strongly connected
    and for n <= 2.
    """
    if tournament.n <= 2:
        return 0
    kappa = _minimum_separation(tournament).size
    logger.info(f"Strong connectivity of {tournament!r}: {kappa}")
    return kappa


def is_strongly_k_connected(tournament: Tournament, k: int) -> ConnectivityWitness:
    """
    Decide strong k-connectivity with a witness on failure.

    Requires n >= k+2 for k >= 1 (so removing k-1 vertices leaves a pair
    to connect); a 1-vertex tournament is strongly connected but not
    strongly 1-connected.
    """
    if k <= 0:
        return ConnectivityWitness(connected=True, k=k)
    if tournament.n < k + 2:
        return ConnectivityWitness(
            connected=False,
            k=k,
            reason=f"needs at least {k + 2} vertices, has {tournament.n}",
        )

    separation = _minimum_separation(tournament, stop_below=k)
    if separation.size >= k:
        return ConnectivityWitness(connected=True, k=k)
    return ConnectivityWitness(
        connected=False,
        k=k,
        separator=VertexSet(separation.separator),
        pair=separation.pair,
        reason=f"removing {separation.size} vertices separates {separation.pair}",
    )
