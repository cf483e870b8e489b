"""
Linkage pairs: disjoint vertex sets X, Y of size m such that every
bijection X -> Y is realised by vertex-disjoint paths of length <= 3.

Construction takes the m largest out-degree vertices as X* and the m
largest in-degree vertices outside X* as Y*, then looks at every pair
(x_i, y_j):

    X_ij = (N+(x_i) + x_i) - (N-(y_j) + y_j)
    Y_ij = (N-(y_j) + y_j) - (N+(x_i) + x_i)
    I_ij = N+(x_i) & N-(y_j)

with a maximum matching M_ij of arcs from X_ij to Y_ij. If some pair
leaves m unmatched vertices on both sides, every edge between those
leftovers points from the Y side to the X side and they form the pair
directly. Otherwise each (x_i, y_j) has at least 4m+1 internally
disjoint short paths (through I_ij or along M_ij), enough to route any
permutation greedily.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .tournament import Tournament, lift, relabel_mask
from .utils.errors import InputError, LinkagePairError, LinkagePairPreconditionError
from .utils.models import Path, VertexSet, iter_bits, lowest_bit, mask_of

logger = logging.getLogger(__name__)

Arc = Tuple[int, int]


class PairMode:
    """Constants for the two ways a linkage pair routes."""
    DIRECT = "DirectEdges"
    SHORT = "ShortPaths"


@dataclass(frozen=True)
class LinkagePair:
    """
    A linkage pair plus the routing tables it was certified with.

    Attributes:
        xs: The X side, x_0..x_{m-1}
        ys: The Y side, y_0..y_{m-1}
        mode: PairMode.DIRECT or PairMode.SHORT
        common: common[i][j] is the bitmask I_ij (ShortPaths only)
        matchings: matchings[i][j] is M_ij sorted by tail (ShortPaths only)
    """
    xs: Tuple[int, ...]
    ys: Tuple[int, ...]
    mode: str
    common: Tuple[Tuple[int, ...], ...] = field(default=(), repr=False)
    matchings: Tuple[Tuple[Tuple[Arc, ...], ...], ...] = field(default=(), repr=False)

    @property
    def m(self) -> int:
        return len(self.xs)

    @property
    def mask(self) -> int:
        return mask_of(self.xs) | mask_of(self.ys)

    def candidate_count(self, i: int, j: int) -> int:
        """|I_ij| + |M_ij|; a DirectEdges pair always has its one edge."""
        if self.mode == PairMode.DIRECT:
            return 1
        return self.common[i][j].bit_count() + len(self.matchings[i][j])

    def relabel(self, mapping: Sequence[int]) -> "LinkagePair":
        """Translate a pair found on an induced subtournament to parent ids."""
        return LinkagePair(
            xs=tuple(lift(mapping, self.xs)),
            ys=tuple(lift(mapping, self.ys)),
            mode=self.mode,
            common=tuple(tuple(relabel_mask(mapping, c) for c in row) for row in self.common),
            matchings=tuple(
                tuple(tuple((mapping[a], mapping[b]) for a, b in arcs) for arcs in row)
                for row in self.matchings
            ),
        )


def _matching(left: int, adjacency: Mapping[int, int]) -> Dict[int, int]:
    """
    Maximum matching by augmenting paths, left vertices in ascending order.

    Args:
        left: Bitmask of left vertices.
        adjacency: Left vertex -> bitmask of right vertices it has arcs to.

    Returns:
        Map from matched left vertices to their partners.
    """
    match_left: Dict[int, int] = {}
    match_right: Dict[int, int] = {}

    for root in iter_bits(left):
        visited = 0
        parent: Dict[int, int] = {}
        stack = [(root, adjacency.get(root, 0))]
        free = -1
        while stack:
            u, candidates = stack[-1]
            candidates &= ~visited
            if not candidates:
                stack.pop()
                continue
            b = lowest_bit(candidates)
            stack[-1] = (u, candidates & ~(1 << b))
            visited |= 1 << b
            parent[b] = u
            if b not in match_right:
                free = b
                break
            partner = match_right[b]
            stack.append((partner, adjacency.get(partner, 0)))

        if free < 0:
            continue
        b = free
        while True:
            u = parent[b]
            previous = match_left.get(u)
            match_left[u] = b
            match_right[b] = u
            if u == root:
                break
            b = previous

    return match_left


def max_bipartite_matching(
    left: VertexSet, right: VertexSet, arcs: Iterable[Arc]
) -> List[Arc]:
    """
    Maximum matching among arcs from ``left`` to ``right``.

    Arcs with an endpoint outside the two sides are ignored.

    Returns:
        Matched arcs sorted by tail.

    Raises:
        InputError: if the sides overlap.
    """
    if not left.isdisjoint(right):
        raise InputError(f"matching sides overlap in {(left & right).to_list()}")
    adjacency: Dict[int, int] = {}
    for a, b in arcs:
        if a in left and b in right:
            adjacency[a] = adjacency.get(a, 0) | 1 << b
    return sorted(_matching(left.mask, adjacency).items())


def _top_by_degree(degrees: Sequence[int], candidates: int, m: int) -> Tuple[int, ...]:
    ranked = sorted(iter_bits(candidates), key=lambda v: (-degrees[v], v))
    return tuple(ranked[:m])


def _check_degree_floor(tournament: Tournament, xs: Tuple[int, ...], ys: Tuple[int, ...]) -> None:
    n, m = tournament.n, len(xs)
    out_degrees, in_degrees = tournament.out_degrees(), tournament.in_degrees()

    for x in xs:
        if 2 * out_degrees[x] < n - m:
            raise LinkagePairError(f"x={x} has out-degree {out_degrees[x]} < (n-m)/2")

    # The exact in-degree bound needs Y* to be the global top in-degree set
    displaced = bool(mask_of(_top_by_degree(in_degrees, tournament.full_mask, m)) & mask_of(xs))
    slack = 2 * m if displaced else 0
    for y in ys:
        if 2 * in_degrees[y] < n - m - slack:
            raise LinkagePairError(f"y={y} has in-degree {in_degrees[y]} below the Y* floor")


def find_linkage_pair(tournament: Tournament, m: int) -> LinkagePair:
    """
    Find a linkage pair of size ``m``.

    Args:
        tournament: Tournament with at least 11m vertices.
        m: Pair size, m >= 1.

    Returns:
        A DirectEdges pair (every x -> y is an edge) if some (x_i, y_j)
        admits one, else a ShortPaths pair with its routing tables.

    Raises:
        LinkagePairPreconditionError: unless 1 <= m and 11m <= n.
        LinkagePairError: if neither construction case holds.
    """
    n = tournament.n
    if m < 1 or 11 * m > n:
        raise LinkagePairPreconditionError(f"linkage pair needs 1 <= m <= n/11, got m={m}, n={n}")

    xs = _top_by_degree(tournament.out_degrees(), tournament.full_mask, m)
    ys = _top_by_degree(tournament.in_degrees(), tournament.full_mask & ~mask_of(xs), m)
    _check_degree_floor(tournament, xs, ys)

    common: List[List[int]] = []
    matchings: List[List[Tuple[Arc, ...]]] = []
    for i, x in enumerate(xs):
        common.append([])
        matchings.append([])
        reach_x = tournament.out_mask(x) | 1 << x
        for j, y in enumerate(ys):
            reach_y = tournament.in_mask(y) | 1 << y
            x_side = reach_x & ~reach_y
            y_side = reach_y & ~reach_x
            adjacency = {a: tournament.out_mask(a) & y_side for a in iter_bits(x_side)}
            matched = _matching(x_side, adjacency)
            covered = mask_of(matched) | mask_of(matched.values())

            free_x = x_side & ~covered
            free_y = y_side & ~covered
            if free_x.bit_count() >= m and free_y.bit_count() >= m:
                pair = LinkagePair(
                    xs=tuple(iter_bits(free_y))[:m],
                    ys=tuple(iter_bits(free_x))[:m],
                    mode=PairMode.DIRECT,
                )
                for a in pair.xs:
                    for b in pair.ys:
                        if not tournament.edge(a, b):
                            raise LinkagePairError(f"direct pair misses the edge {a}->{b}")
                logger.debug(f"Direct linkage pair of size {m} from (x={x}, y={y})")
                return pair

            common[i].append(tournament.out_mask(x) & tournament.in_mask(y))
            matchings[i].append(tuple(sorted(matched.items())))

    pair = LinkagePair(
        xs=xs,
        ys=ys,
        mode=PairMode.SHORT,
        common=tuple(tuple(row) for row in common),
        matchings=tuple(tuple(row) for row in matchings),
    )
    for i in range(m):
        for j in range(m):
            if pair.candidate_count(i, j) < 4 * m + 1:
                raise LinkagePairError(
                    f"neither proof case holds: (x={xs[i]}, y={ys[j]}) has "
                    f"{pair.candidate_count(i, j)} short paths, needs {4 * m + 1}"
                )
    logger.debug(f"Short-path linkage pair of size {m}")
    return pair


def _check_permutation(sigma: Sequence[int], m: int) -> None:
    if sorted(sigma) != list(range(m)):
        raise InputError(f"sigma must be a permutation of 0..{m - 1}, got {list(sigma)}")


def _candidates(pair: LinkagePair, i: int, j: int) -> Iterable[List[int]]:
    """Short x_i -> y_j walks: through I_ij by vertex, then along M_ij by tail."""
    x, y = pair.xs[i], pair.ys[j]
    for v in iter_bits(pair.common[i][j]):
        yield [x, v, y]
    for a, b in pair.matchings[i][j]:
        walk = [x]
        if a != x:
            walk.append(a)
        if b != y:
            walk.append(b)
        walk.append(y)
        yield walk


def route(tournament: Tournament, pair: LinkagePair, sigma: Sequence[int]) -> List[Path]:
    """
    Disjoint paths P_i from xs[i] to ys[sigma[i]], each of length <= 3.

    Pairs are served in index order; each takes its first candidate whose
    internal vertices avoid earlier paths and every endpoint of the pair
    other than its own.

    Raises:
        InputError: if ``sigma`` is not a permutation of 0..m-1.
        LinkagePairError: if some pair has no candidate left, or the
            routed paths fail verification.
    """
    _check_permutation(sigma, pair.m)

    if pair.mode == PairMode.DIRECT:
        paths = [Path((x, pair.ys[j])) for x, j in zip(pair.xs, sigma)]
    else:
        endpoints = pair.mask
        used = 0
        paths = []
        for i, j in enumerate(sigma):
            x, y = pair.xs[i], pair.ys[j]
            blocked = used | (endpoints & ~(1 << x | 1 << y))
            chosen: Optional[List[int]] = None
            for walk in _candidates(pair, i, j):
                if not mask_of(walk[1:-1]) & blocked:
                    chosen = walk
                    break
            if chosen is None:
                raise LinkagePairError(f"no candidate available for (x={x}, y={y})")
            used |= mask_of(chosen)
            paths.append(Path(tuple(chosen)))

    violation = verify_routes(tournament, pair, sigma, paths)
    if violation is not None:
        raise LinkagePairError(f"routed paths failed verification: {violation}")
    return paths


def verify_routes(
    tournament: Tournament, pair: LinkagePair, sigma: Sequence[int], paths: Sequence[Path]
) -> Optional[str]:
    """
    First way ``paths`` fail to route ``sigma`` through ``pair``, or None.

    Checks validity in the tournament, endpoints, length <= 3 and
    pairwise disjointness.
    """
    if len(paths) != pair.m:
        return f"expected {pair.m} paths, got {len(paths)}"
    seen: Dict[int, int] = {}
    for i, path in enumerate(paths):
        problem = path.violation(tournament)
        if problem is not None:
            return f"path {i}: {problem}"
        if path.start != pair.xs[i] or path.end != pair.ys[sigma[i]]:
            return f"path {i} runs {path.start}->{path.end}, expected {pair.xs[i]}->{pair.ys[sigma[i]]}"
        if path.length > 3:
            return f"path {i} has length {path.length} > 3"
        for v in path:
            if v in seen:
                return f"vertex {v} shared by paths {seen[v]} and {i}"
            seen[v] = i
    return None
