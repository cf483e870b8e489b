"""
Exhaustive ground-truth checkers for small tournaments.

Everything here is deliberately naive: removal sets are enumerated,
paths are found by backtracking. Each top-level call counts the search
nodes it expands against an ``OracleBudget`` and raises
``OracleBudgetExceeded`` rather than return an unproven answer.
"""
import logging
from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Iterator, List, Optional, Sequence, Tuple

from .resources.config import DEFAULT_CONFIG
from .tournament import Tournament
from .utils.errors import InputError, OracleBudgetExceeded
from .utils.models import Path, VertexSet, mask_of

logger = logging.getLogger(__name__)


@dataclass
class OracleBudget:
    """
    Search limits for one top-level oracle call.

    Attributes:
        max_n: Largest tournament accepted
        max_nodes_expanded: Search nodes allowed per call
        nodes_expanded: Nodes expanded by the current call
    """
    max_n: int = DEFAULT_CONFIG.oracle.max_n
    max_nodes_expanded: int = DEFAULT_CONFIG.oracle.max_nodes_expanded
    nodes_expanded: int = field(default=0, init=False)

    def __post_init__(self) -> None:
        if self.max_n < 1 or self.max_nodes_expanded < 1:
            raise InputError("oracle budget limits must be positive")

    def start(self, tournament: Tournament) -> None:
        if tournament.n > self.max_n:
            raise OracleBudgetExceeded("max_n", self.max_n, tournament.n)
        self.nodes_expanded = 0

    def expand(self) -> None:
        self.nodes_expanded += 1
        if self.nodes_expanded > self.max_nodes_expanded:
            raise OracleBudgetExceeded("max_nodes_expanded", self.max_nodes_expanded)


@dataclass
class LinkedVerdict:
    """
    Outcome of ``bf_is_k_linked``.

    Attributes:
        linked: True iff every terminal choice can be linked
        counterexample: Terminal pairs that cannot be linked, when not linked
        checked: Terminal choices examined
    """
    linked: bool
    counterexample: Optional[List[Tuple[int, int]]] = None
    checked: int = 0

    def __bool__(self) -> bool:
        return self.linked


def _strongly_connected(tournament: Tournament, vertices: List[int]) -> bool:
    if len(vertices) <= 1:
        return True
    inside = set(vertices)
    for forward in (True, False):
        seen = {vertices[0]}
        stack = [vertices[0]]
        while stack:
            u = stack.pop()
            for w in inside - seen:
                if tournament.edge(u, w) if forward else tournament.edge(w, u):
                    seen.add(w)
                    stack.append(w)
        if seen != inside:
            return False
    return True


def bf_strong_connectivity(tournament: Tournament, budget: Optional[OracleBudget] = None) -> int:
    """
    Strong connectivity by trying every removal set, smallest first.

    Same convention as the flow-based version: the largest k with
    n >= k+2 such that every removal of k-1 vertices leaves T strongly
    connected, and 0 for n <= 2.
    """
    budget = budget or OracleBudget()
    budget.start(tournament)
    n = tournament.n
    if n <= 2:
        return 0
    for k in range(1, n - 1):
        for removed in combinations(range(n), k - 1):
            budget.expand()
            rest = [v for v in range(n) if v not in removed]
            if not _strongly_connected(tournament, rest):
                logger.debug(f"Removing {list(removed)} breaks strong connectivity")
                return k - 1
    return n - 2


def _walks_of_length(
    tournament: Tournament, walk: List[int], target: int, remaining: int, blocked: int,
    budget: OracleBudget,
) -> Iterator[List[int]]:
    budget.expand()
    u = walk[-1]
    if remaining == 1:
        if tournament.edge(u, target):
            yield walk + [target]
        return
    for w in range(tournament.n):
        if blocked >> w & 1 or w == target or not tournament.edge(u, w):
            continue
        walk.append(w)
        yield from _walks_of_length(tournament, walk, target, remaining - 1, blocked | 1 << w, budget)
        walk.pop()


def _simple_paths(
    tournament: Tournament, source: int, target: int, blocked: int, budget: OracleBudget
) -> Iterator[List[int]]:
    """Paths source -> target avoiding ``blocked``, shortest first, then lexicographic."""
    for length in range(1, tournament.n):
        yield from _walks_of_length(
            tournament, [source], target, length, blocked | 1 << source, budget
        )


def _link_pairs(
    tournament: Tournament, pairs: Sequence[Tuple[int, int]], used: int, terminals: int,
    budget: OracleBudget,
) -> Optional[List[List[int]]]:
    if not pairs:
        return []
    source, target = pairs[0]
    blocked = used | (terminals & ~(1 << source | 1 << target))
    for walk in _simple_paths(tournament, source, target, blocked, budget):
        rest = _link_pairs(tournament, pairs[1:], used | mask_of(walk), terminals, budget)
        if rest is not None:
            return [walk] + rest
    return None


def _check_pairs(tournament: Tournament, pairs: Sequence[Tuple[int, int]]) -> None:
    terminals = [v for pair in pairs for v in pair]
    for v in terminals:
        tournament.check_vertex(v)
    if len(set(terminals)) != len(terminals):
        raise InputError(f"terminal pairs must use distinct vertices, got {list(pairs)}")


def bf_disjoint_paths(
    tournament: Tournament,
    pairs: Sequence[Tuple[int, int]],
    budget: Optional[OracleBudget] = None,
) -> Optional[List[Path]]:
    """
    Vertex-disjoint paths joining each (source, sink) pair, or None.

    Pairs are served in the given order, each trying its paths shortest
    first with ascending-id tie-breaks, so the answer is reproducible.

    Raises:
        InputError: if endpoints repeat or fall outside the tournament.
        OracleBudgetExceeded: if the search did not finish within budget.
    """
    budget = budget or OracleBudget()
    budget.start(tournament)
    pairs = [tuple(pair) for pair in pairs]
    _check_pairs(tournament, pairs)
    walks = _link_pairs(tournament, pairs, 0, mask_of(v for pair in pairs for v in pair), budget)
    if walks is None:
        return None
    return [Path(tuple(walk)) for walk in walks]


def bf_max_disjoint_paths(
    tournament: Tournament,
    sources: VertexSet,
    sinks: VertexSet,
    allowed: VertexSet,
    budget: Optional[OracleBudget] = None,
) -> int:
    """
    Largest number of fully vertex-disjoint source -> sink paths inside ``allowed``.

    Only paths touching the source set at their first vertex and the sink
    set at their last are enumerated; any path system shortcuts to one of
    those with the same count.
    """
    budget = budget or OracleBudget()
    budget.start(tournament)
    source_mask = sources.mask & allowed.mask
    sink_mask = sinks.mask & allowed.mask
    inner = allowed.mask & ~source_mask & ~sink_mask
    starts = list(VertexSet(source_mask))
    cap = min(len(starts), sink_mask.bit_count())
    best = 0

    def paths_from(walk: List[int], used: int) -> Iterator[List[int]]:
        budget.expand()
        u = walk[-1]
        for w in range(tournament.n):
            if used >> w & 1 or not tournament.edge(u, w):
                continue
            if sink_mask >> w & 1:
                yield walk + [w]
            elif inner >> w & 1:
                yield from paths_from(walk + [w], used | 1 << w)

    def search(index: int, used: int, count: int) -> None:
        nonlocal best
        if count + len(starts) - index <= best:
            return
        if index == len(starts):
            best = count
            return
        s = starts[index]
        if not used >> s & 1:
            options = [[s]] if sink_mask >> s & 1 else paths_from([s], used | 1 << s)
            for walk in options:
                search(index + 1, used | mask_of(walk), count + 1)
                if best == cap:
                    return
        search(index + 1, used, count)

    search(0, 0, 0)
    return best


def bf_is_k_linked(
    tournament: Tournament, k: int, budget: Optional[OracleBudget] = None
) -> LinkedVerdict:
    """
    Decide k-linkedness by trying every choice of 2k distinct terminals.

    Source sets are tried in reverse lexicographic order (each set with
    increasing members, since the order of the pairs does not matter),
    and sinks as ascending permutations of the remaining vertices. The
    first choice that cannot be linked is returned as the counterexample,
    so late sources paired with early sinks are tried first.

    Raises:
        InputError: if k < 1 or 2k > n.
        OracleBudgetExceeded: if the search did not finish within budget.
    """
    budget = budget or OracleBudget()
    budget.start(tournament)
    if k < 1 or 2 * k > tournament.n:
        raise InputError(f"k-linkedness needs 1 <= k <= n/2, got k={k}, n={tournament.n}")

    checked = 0
    vertices = range(tournament.n)
    for sources in sorted(combinations(vertices, k), reverse=True):
        rest = [v for v in vertices if v not in sources]
        for sinks in permutations(rest, k):
            checked += 1
            pairs = list(zip(sources, sinks))
            terminals = mask_of(sources) | mask_of(sinks)
            if _link_pairs(tournament, pairs, 0, terminals, budget) is None:
                logger.info(f"Terminal pairs {pairs} cannot be linked")
                return LinkedVerdict(linked=False, counterexample=pairs, checked=checked)
    return LinkedVerdict(linked=True, checked=checked)
