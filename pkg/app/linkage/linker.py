"""
Disjoint-path linker for highly connected tournaments.

Given k terminal pairs (x_i, y_i) in a tournament whose in- and
out-degrees are all at least 452k, build vertex-disjoint paths P_i from
x_i to y_i. The pipeline:

    x_i -> x'_i -> x''_i -> [D-_i] -> P-_i in T- -> Q'_i -> P+_i in T+ -> [D+_i] -> y''_i -> y'_i -> y_i

D-/D+ are greedy dominating sequences of two vertices each, T-/T+ the
tournaments on their heads/tails, P-/P+ linkage-pair routes inside them
and Q' a set of disjoint bridges from T- to T+. Every stage verifies its
own output before the next one starts.
"""
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Generator, Iterable, List, Optional, Sequence, Tuple

from .domination import DominatingSequence, check_degree_bound, greedy_dominating, Flavor
from .flows import disjoint_paths
from .linkage_pairs import LinkagePair, find_linkage_pair, route
from .resources.config import DEFAULT_CONFIG, SPECIAL_PER_PAIR, LinkerConfig, Stage
from .tournament import Tournament, induced
from .utils.errors import (
    DegreeFloorError,
    DominationExhaustedError,
    InputError,
    LinkageToolkitError,
    LinkerStageError,
    LinkRequestError,
)
from .utils.models import LinkerEvent, Path, VertexSet, lowest_bit, mask_of

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LinkRequest:
    """
    Terminal pairs to link.

    Attributes:
        sources: x_1..x_k
        sinks: y_1..y_k
    """
    sources: Tuple[int, ...]
    sinks: Tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "sources", tuple(self.sources))
        object.__setattr__(self, "sinks", tuple(self.sinks))
        if len(self.sources) != len(self.sinks):
            raise LinkRequestError(
                f"{len(self.sources)} sources but {len(self.sinks)} sinks"
            )
        if not self.sources:
            raise LinkRequestError("at least one terminal pair is required")
        terminals = self.sources + self.sinks
        if any(v < 0 for v in terminals):
            raise LinkRequestError(f"negative terminal in {list(terminals)}")
        if len(set(terminals)) != len(terminals):
            repeated = sorted({v for v in terminals if terminals.count(v) > 1})
            raise LinkRequestError(f"terminals must be distinct, repeated: {repeated}")

    @classmethod
    def from_pairs(cls, pairs: Iterable[Sequence[int]]) -> "LinkRequest":
        pairs = [tuple(pair) for pair in pairs]
        if any(len(pair) != 2 for pair in pairs):
            raise LinkRequestError("every terminal pair has exactly two vertices")
        return cls(sources=tuple(x for x, _ in pairs), sinks=tuple(y for _, y in pairs))

    @property
    def k(self) -> int:
        return len(self.sources)

    @property
    def pairs(self) -> List[Tuple[int, int]]:
        return list(zip(self.sources, self.sinks))

    @property
    def mask(self) -> int:
        return mask_of(self.sources) | mask_of(self.sinks)

    def check_range(self, tournament: Tournament) -> None:
        stray = [v for v in self.sources + self.sinks if v >= tournament.n]
        if stray:
            raise LinkRequestError(f"terminals {stray} outside 0..{tournament.n - 1}")


@dataclass
class LinkerState:
    """
    Everything the pipeline has built so far.

    Sequence lists are kept in their reordered form once the reorder
    stage has run; index i < k always belongs to terminal pair i.
    """
    minus: List[DominatingSequence] = field(default_factory=list)
    plus: List[DominatingSequence] = field(default_factory=list)
    ground: int = 0
    x_mask: int = 0
    t_minus: int = 0
    t_plus: int = 0
    pair_minus: Optional[LinkagePair] = None
    pair_plus: Optional[LinkagePair] = None
    bridges: List[Path] = field(default_factory=list)
    primed_x: List[int] = field(default_factory=list)
    primed_y: List[int] = field(default_factory=list)
    x_prime_mask: int = 0
    double_x: List[int] = field(default_factory=list)
    double_y: List[int] = field(default_factory=list)
    entries: List[Path] = field(default_factory=list)
    exits: List[Path] = field(default_factory=list)
    selected: List[Path] = field(default_factory=list)
    selected_indices: List[int] = field(default_factory=list)
    sigma_minus: List[int] = field(default_factory=list)
    sigma_plus: List[int] = field(default_factory=list)
    routed_minus: List[Path] = field(default_factory=list)
    routed_plus: List[Path] = field(default_factory=list)
    paths: List[Path] = field(default_factory=list)
    diagnostics: Dict[str, Dict[str, Any]] = field(default_factory=dict)

    def exceptional_minus(self, i: int) -> int:
        """E-_i: vertices outside X that D-_i fails to in-dominate."""
        return self.minus[i].residual.mask & ~self.x_mask

    def exceptional_plus(self, i: int) -> int:
        return self.plus[i].residual.mask & ~self.x_mask

    def snapshot(self) -> Dict[str, Any]:
        return {
            "x_size": self.x_mask.bit_count(),
            "minus": len(self.minus),
            "plus": len(self.plus),
            "pair_minus": self.pair_minus.mode if self.pair_minus else None,
            "pair_plus": self.pair_plus.mode if self.pair_plus else None,
            "bridges": len(self.bridges),
            "primed": self.primed_x + self.primed_y,
            "double_primed": self.double_x + self.double_y,
            "selected": list(self.selected_indices),
            "stages": list(self.diagnostics),
        }


@dataclass
class LinkResult:
    """
    Verified linkage.

    Attributes:
        paths: P_i from x_i to y_i, pairwise vertex-disjoint
        diagnostics: Per-stage summaries, in stage order
    """
    paths: List[Path]
    diagnostics: Dict[str, Dict[str, Any]]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "paths": [list(path.vertices) for path in self.paths],
            "diagnostics": self.diagnostics,
        }


@dataclass
class LinkageReport:
    """
    Outcome of ``verify_linkage``.

    Attributes:
        ok: True iff the paths link the request
        violation: First violation found, if any
        shared_vertex: The vertex two paths share, for overlap violations
    """
    ok: bool
    violation: Optional[str] = None
    shared_vertex: Optional[int] = None

    def __bool__(self) -> bool:
        return self.ok


def verify_linkage(
    tournament: Tournament, request: LinkRequest, paths: Sequence[Path]
) -> LinkageReport:
    """Check that ``paths`` are disjoint paths of T joining each x_i to y_i."""
    if len(paths) != request.k:
        return LinkageReport(ok=False, violation=f"expected {request.k} paths, got {len(paths)}")

    owner: Dict[int, int] = {}
    for i, (path, (x, y)) in enumerate(zip(paths, request.pairs)):
        problem = path.violation(tournament)
        if problem is not None:
            return LinkageReport(ok=False, violation=f"path {i}: {problem}")
        if path.start != x or path.end != y:
            return LinkageReport(
                ok=False,
                violation=f"path {i} runs {path.start}->{path.end}, expected {x}->{y}",
            )
        for v in path:
            if v in owner:
                return LinkageReport(
                    ok=False,
                    violation=f"paths {owner[v]} and {i} share vertex {v}",
                    shared_vertex=v,
                )
            owner[v] = i
    return LinkageReport(ok=True)


def required_connectivity(k: int, config: Optional[LinkerConfig] = None) -> int:
    """Strong connectivity (and degree floor) the linker asks for with k pairs."""
    return (config or DEFAULT_CONFIG.linker).required_connectivity(k)


def _complete_permutation(partial: Dict[int, int], m: int) -> List[int]:
    """Extend a partial injection on 0..m-1 to a permutation, filling in ascending order."""
    free_values = iter(sorted(set(range(m)) - set(partial.values())))
    return [partial[i] if i in partial else next(free_values) for i in range(m)]


def _pick(candidates: int, avoid: int) -> int:
    """Smallest candidate outside ``avoid`` if there is one, else smallest candidate."""
    preferred = candidates & ~avoid
    return lowest_bit(preferred if preferred else candidates)


def _join(pieces: Sequence[Sequence[int]]) -> List[int]:
    """Concatenate walks that share their junction vertices."""
    joined = list(pieces[0])
    for piece in pieces[1:]:
        if piece[0] != joined[-1]:
            raise ValueError(f"piece starting at {piece[0]} does not continue from {joined[-1]}")
        joined.extend(piece[1:])
    return joined


class Linker:
    """
    Staged linking pipeline.

    Attributes:
        config: Construction constants (degree floor factor, number of
            dominating sequences, linkage pair size)
    """

    def __init__(self, config: Optional[LinkerConfig] = None):
        self.config = config or DEFAULT_CONFIG.linker

    def link(self, tournament: Tournament, request: LinkRequest, force: bool = False) -> LinkResult:
        """
        Link every terminal pair.

        Args:
            tournament: A tournament meeting the degree floor.
            request: The terminal pairs.
            force: Run even when the degree floor is not met.

        Returns:
            The verified paths with per-stage diagnostics.

        Raises:
            InputError: for invalid requests or an unmet degree floor.
            LinkerStageError: naming the stage that could not complete.
        """
        state = LinkerState()
        for _ in self._run(tournament, request, force, state):
            pass
        return LinkResult(paths=state.paths, diagnostics=state.diagnostics)

    def link_stream(
        self, tournament: Tournament, request: LinkRequest, force: bool = False
    ) -> Generator[Dict[str, Any], None, None]:
        """
        Link with streaming updates.

        Yields:
            Event dictionaries (stage and result per stage, then complete or error).
        """
        state = LinkerState()
        try:
            yield from self._run(tournament, request, force, state)
            result = LinkResult(paths=state.paths, diagnostics=state.diagnostics)
            yield LinkerEvent.complete_event(
                f"Linked {request.k} terminal pairs", result.to_dict()
            ).to_dict()
        except LinkerStageError as e:
            logger.warning(str(e))
            yield LinkerEvent.error_event(str(e), stage=e.stage, data=e.state).to_dict()
        except InputError as e:
            yield LinkerEvent.error_event(str(e), stage=Stage.PRECONDITION).to_dict()
        except Exception as e:
            logger.exception("Error during linking")
            yield LinkerEvent.error_event(f"An error occurred: {str(e)}").to_dict()

    def _run(
        self, tournament: Tournament, request: LinkRequest, force: bool, state: LinkerState
    ) -> Generator[Dict[str, Any], None, None]:
        stages = (
            (Stage.PRECONDITION, self._stage_precondition),
            (Stage.TERMINALS, self._stage_terminals),
            (Stage.IN_DOMINATION, self._stage_in_domination),
            (Stage.OUT_DOMINATION, self._stage_out_domination),
            (Stage.EXCEPTIONAL, self._stage_exceptional),
            (Stage.LINKAGE_PAIRS, self._stage_linkage_pairs),
            (Stage.REORDER, self._stage_reorder),
            (Stage.MENGER, self._stage_menger),
            (Stage.PRIMED, self._stage_primed),
            (Stage.DOUBLE_PRIMED, self._stage_double_primed),
            (Stage.ENTRY_EXIT, self._stage_entry_exit),
            (Stage.SELECT, self._stage_select),
            (Stage.ROUTE, self._stage_route),
            (Stage.STITCH, self._stage_stitch),
        )
        for stage, run_stage in stages:
            yield LinkerEvent.stage_event(stage, f"Running {stage}").to_dict()
            try:
                summary = run_stage(tournament, request, force, state)
            except (InputError, LinkerStageError):
                raise
            except LinkageToolkitError as e:
                raise LinkerStageError(stage, str(e), state.snapshot()) from e
            state.diagnostics[stage] = summary
            logger.info(f"Stage {stage}: {summary}")
            yield LinkerEvent.result_event(stage, f"Stage {stage} done", summary).to_dict()

    def _fail(self, stage: str, message: str, state: LinkerState) -> LinkerStageError:
        return LinkerStageError(stage, message, state.snapshot())

    # Stages. Each returns its diagnostics summary.

    def _stage_precondition(
        self, tournament: Tournament, request: LinkRequest, force: bool, state: LinkerState
    ) -> Dict[str, Any]:
        request.check_range(tournament)
        k = request.k
        floor = self.config.required_connectivity(k)
        if not self.config.guarantee_holds(k):
            logger.warning(
                f"Constants do not imply success for k={k} (degree floor {floor}, "
                f"needed {self.config.guarantee_floor(k)}; linkage_factor "
                f"{self.config.linkage_factor}, needed {SPECIAL_PER_PAIR + 1}); guarantee not implied"
            )

        deficient = tournament.deficient_vertex(floor)
        if deficient >= 0:
            error = DegreeFloorError(
                deficient,
                tournament.out_degrees()[deficient],
                tournament.in_degrees()[deficient],
                floor,
            )
            if not force:
                raise error
            logger.warning(f"Forced run: {error}")
        return {"n": tournament.n, "k": k, "floor": floor, "min_degree": tournament.min_degree()}

    def _stage_terminals(
        self, tournament: Tournament, request: LinkRequest, force: bool, state: LinkerState
    ) -> Dict[str, Any]:
        state.ground = tournament.full_mask & ~request.mask
        return {"remaining": state.ground.bit_count()}

    def _dominate(
        self, tournament: Tournament, state: LinkerState, flavor: str, count: int
    ) -> List[DominatingSequence]:
        sequences = []
        for _ in range(count):
            if not state.ground:
                raise DominationExhaustedError(achieved=0, requested=self.config.sequence_size)
            sequence = greedy_dominating(
                tournament, VertexSet(state.ground), self.config.sequence_size, flavor
            )
            state.ground &= ~sequence.mask
            sequences.append(sequence)
        return sequences

    def _stage_in_domination(
        self, tournament: Tournament, request: LinkRequest, force: bool, state: LinkerState
    ) -> Dict[str, Any]:
        state.minus = self._dominate(tournament, state, Flavor.IN, self.config.dominating_count(request.k))
        return {"sequences": len(state.minus)}

    def _stage_out_domination(
        self, tournament: Tournament, request: LinkRequest, force: bool, state: LinkerState
    ) -> Dict[str, Any]:
        state.plus = self._dominate(tournament, state, Flavor.OUT, self.config.dominating_count(request.k))
        return {"sequences": len(state.plus)}

    def _stage_exceptional(
        self, tournament: Tournament, request: LinkRequest, force: bool, state: LinkerState
    ) -> Dict[str, Any]:
        state.x_mask = request.mask
        for sequence in state.minus + state.plus:
            state.x_mask |= sequence.mask

        bound = self.config.dominating_bound(request.k)
        if state.x_mask.bit_count() > bound:
            raise self._fail(Stage.EXCEPTIONAL, f"|X| = {state.x_mask.bit_count()} > {bound}", state)

        for sequence in state.minus + state.plus:
            if not sequence.is_transitive(tournament):
                raise self._fail(Stage.EXCEPTIONAL, f"sequence {sequence.verts} is not transitive", state)
            if not check_degree_bound(tournament, sequence):
                raise self._fail(
                    Stage.EXCEPTIONAL, f"sequence {sequence.verts} breaks the residual degree bound", state
                )

        sizes_minus = [state.exceptional_minus(i).bit_count() for i in range(len(state.minus))]
        sizes_plus = [state.exceptional_plus(i).bit_count() for i in range(len(state.plus))]
        return {
            "x_size": state.x_mask.bit_count(),
            "x_bound": bound,
            "max_exceptional_minus": max(sizes_minus),
            "max_exceptional_plus": max(sizes_plus),
        }

    def _linkage_pair(self, tournament: Tournament, mask: int, m: int) -> LinkagePair:
        sub, mapping = induced(tournament, VertexSet(mask))
        return find_linkage_pair(sub, m).relabel(mapping)

    def _stage_linkage_pairs(
        self, tournament: Tournament, request: LinkRequest, force: bool, state: LinkerState
    ) -> Dict[str, Any]:
        m = self.config.linkage_size(request.k)
        state.t_minus = mask_of(sequence.head for sequence in state.minus)
        state.t_plus = mask_of(sequence.tail for sequence in state.plus)
        state.pair_minus = self._linkage_pair(tournament, state.t_minus, m)
        state.pair_plus = self._linkage_pair(tournament, state.t_plus, m)
        return {"m": m, "mode_minus": state.pair_minus.mode, "mode_plus": state.pair_plus.mode}

    def _stage_reorder(
        self, tournament: Tournament, request: LinkRequest, force: bool, state: LinkerState
    ) -> Dict[str, Any]:
        front_minus = {v: i for i, v in enumerate(state.pair_minus.xs)}
        order_minus = sorted(
            range(len(state.minus)),
            key=lambda i: (front_minus.get(state.minus[i].head, len(front_minus)), i),
        )
        front_plus = {v: i for i, v in enumerate(state.pair_plus.ys)}
        order_plus = sorted(
            range(len(state.plus)),
            key=lambda i: (front_plus.get(state.plus[i].tail, len(front_plus)), i),
        )
        state.minus = [state.minus[i] for i in order_minus]
        state.plus = [state.plus[i] for i in order_plus]

        m = state.pair_minus.m
        if [s.head for s in state.minus[:m]] != list(state.pair_minus.xs):
            raise self._fail(Stage.REORDER, "heads of the first sequences differ from X-", state)
        if [s.tail for s in state.plus[:m]] != list(state.pair_plus.ys):
            raise self._fail(Stage.REORDER, "tails of the first sequences differ from Y+", state)
        return {"order_minus": order_minus[:m], "order_plus": order_plus[:m]}

    def _stage_menger(
        self, tournament: Tournament, request: LinkRequest, force: bool, state: LinkerState
    ) -> Dict[str, Any]:
        sources = VertexSet.of(state.pair_minus.ys)
        sinks = VertexSet.of(state.pair_plus.xs)
        allowed = VertexSet(tournament.full_mask & ~state.x_mask) | sources | sinks
        found = disjoint_paths(tournament, sources, sinks, allowed)

        needed = state.pair_minus.m
        if len(found) < needed:
            snapshot = state.snapshot()
            snapshot["cut"] = found.cut.to_list()
            raise LinkerStageError(
                Stage.MENGER,
                f"only {len(found)} of {needed} disjoint bridges; separator {found.cut.to_list()}",
                snapshot,
            )
        state.bridges = found.paths
        return {"bridges": len(found), "longest": max(path.length for path in found.paths)}

    def _stage_primed(
        self, tournament: Tournament, request: LinkRequest, force: bool, state: LinkerState
    ) -> Dict[str, Any]:
        on_bridges = mask_of(v for path in state.bridges for v in path.internal)
        chosen = 0
        for side, terminals, neighbours in (
            (state.primed_x, request.sources, tournament.out_mask),
            (state.primed_y, request.sinks, tournament.in_mask),
        ):
            side.clear()
            for t in terminals:
                candidates = neighbours(t) & ~state.x_mask & ~chosen
                if not candidates:
                    raise self._fail(Stage.PRIMED, f"no neighbour of terminal {t} outside X", state)
                v = _pick(candidates, on_bridges)
                chosen |= 1 << v
                side.append(v)

        state.x_prime_mask = state.x_mask | chosen
        return {"primed_x": list(state.primed_x), "primed_y": list(state.primed_y)}

    def _check_feasible(
        self, v: int, degree: int, exceptional: int, k: int, force: bool, state: LinkerState
    ) -> None:
        needed = exceptional.bit_count() + state.x_prime_mask.bit_count() + 2 * k
        if degree >= needed:
            return
        message = f"vertex {v} has degree {degree} < {needed} needed to leave its exceptional set"
        if not force:
            raise self._fail(Stage.DOUBLE_PRIMED, message, state)
        logger.warning(f"Forced run: {message}")

    def _stage_double_primed(
        self, tournament: Tournament, request: LinkRequest, force: bool, state: LinkerState
    ) -> Dict[str, Any]:
        on_bridges = mask_of(v for path in state.bridges for v in path.internal)
        chosen = 0
        moved = 0
        for side, primed, exceptional, neighbours, degrees in (
            (state.double_x, state.primed_x, state.exceptional_minus, tournament.out_mask,
             tournament.out_degrees()),
            (state.double_y, state.primed_y, state.exceptional_plus, tournament.in_mask,
             tournament.in_degrees()),
        ):
            side.clear()
            for i, v in enumerate(primed):
                excluded = exceptional(i)
                if not excluded >> v & 1:
                    side.append(v)
                    continue
                self._check_feasible(v, degrees[v], excluded, request.k, force, state)
                candidates = neighbours(v) & ~excluded & ~state.x_prime_mask & ~chosen
                if not candidates:
                    raise self._fail(
                        Stage.DOUBLE_PRIMED, f"no neighbour of {v} outside its exceptional set and X'", state
                    )
                w = _pick(candidates, on_bridges)
                chosen |= 1 << w
                side.append(w)
                moved += 1
        return {"double_x": list(state.double_x), "double_y": list(state.double_y), "moved": moved}

    def _stage_entry_exit(
        self, tournament: Tournament, request: LinkRequest, force: bool, state: LinkerState
    ) -> Dict[str, Any]:
        state.entries, state.exits = [], []
        for i in range(request.k):
            start, sequence = state.double_x[i], state.minus[i]
            if tournament.edge(start, sequence.head):
                entry = (start, sequence.head)
            elif tournament.edge(start, sequence.tail):
                entry = (start, sequence.tail, sequence.head)
            else:
                raise self._fail(Stage.ENTRY_EXIT, f"{start} is not in-dominated by {sequence.verts}", state)

            end, sequence = state.double_y[i], state.plus[i]
            if tournament.edge(sequence.tail, end):
                exit_ = (sequence.tail, end)
            elif tournament.edge(sequence.head, end):
                exit_ = (sequence.tail, sequence.head, end)
            else:
                raise self._fail(Stage.ENTRY_EXIT, f"{end} is not out-dominated by {sequence.verts}", state)

            state.entries.append(Path(entry))
            state.exits.append(Path(exit_))
        return {
            "entry_lengths": [path.length for path in state.entries],
            "exit_lengths": [path.length for path in state.exits],
        }

    def _stage_select(
        self, tournament: Tournament, request: LinkRequest, force: bool, state: LinkerState
    ) -> Dict[str, Any]:
        special = mask_of(state.primed_x + state.primed_y + state.double_x + state.double_y)
        state.selected_indices = [
            i for i, path in enumerate(state.bridges) if not path.mask & special
        ][: request.k]
        if len(state.selected_indices) < request.k:
            raise self._fail(
                Stage.SELECT,
                f"only {len(state.selected_indices)} bridges avoid the primed vertices, need {request.k}",
                state,
            )
        state.selected = [state.bridges[i] for i in state.selected_indices]
        return {"selected": list(state.selected_indices)}

    def _stage_route(
        self, tournament: Tournament, request: LinkRequest, force: bool, state: LinkerState
    ) -> Dict[str, Any]:
        pair_minus, pair_plus = state.pair_minus, state.pair_plus
        m = pair_minus.m
        y_position = {v: j for j, v in enumerate(pair_minus.ys)}
        x_position = {v: j for j, v in enumerate(pair_plus.xs)}

        # Heads of D-_i sit at X- position i; tails of D+_i at Y+ position i
        state.sigma_minus = _complete_permutation(
            {i: y_position[bridge.start] for i, bridge in enumerate(state.selected)}, m
        )
        state.sigma_plus = _complete_permutation(
            {x_position[bridge.end]: i for i, bridge in enumerate(state.selected)}, m
        )

        routed_minus = route(tournament, pair_minus, state.sigma_minus)
        routed_plus = route(tournament, pair_plus, state.sigma_plus)
        state.routed_minus = routed_minus[: request.k]
        state.routed_plus = [routed_plus[x_position[bridge.end]] for bridge in state.selected]
        return {
            "sigma_minus": list(state.sigma_minus),
            "sigma_plus": list(state.sigma_plus),
        }

    def _check_ledger(self, request: LinkRequest, state: LinkerState) -> None:
        """Segment-disjointness bookkeeping before the pieces are joined."""
        special = state.primed_x + state.primed_y + state.double_x + state.double_y
        if mask_of(special) & state.x_mask:
            raise self._fail(Stage.STITCH, "a primed vertex lies in X", state)
        for i in range(request.k):
            if mask_of(state.selected[i].internal) & state.x_mask:
                raise self._fail(Stage.STITCH, f"bridge {i} passes through X", state)
            if state.routed_minus[i].mask & ~state.t_minus:
                raise self._fail(Stage.STITCH, f"route {i} leaves T-", state)
            if state.routed_plus[i].mask & ~state.t_plus:
                raise self._fail(Stage.STITCH, f"route {i} leaves T+", state)
            if state.entries[i].mask & ~(state.minus[i].mask | 1 << state.double_x[i]):
                raise self._fail(Stage.STITCH, f"entry {i} leaves its dominating sequence", state)
            if state.exits[i].mask & ~(state.plus[i].mask | 1 << state.double_y[i]):
                raise self._fail(Stage.STITCH, f"exit {i} leaves its dominating sequence", state)

    def _stage_stitch(
        self, tournament: Tournament, request: LinkRequest, force: bool, state: LinkerState
    ) -> Dict[str, Any]:
        self._check_ledger(request, state)
        paths = []
        for i, (x, y) in enumerate(request.pairs):
            x1, x2 = state.primed_x[i], state.double_x[i]
            y1, y2 = state.primed_y[i], state.double_y[i]
            front = [x, x1] if x2 == x1 else [x, x1, x2]
            back = [y1, y] if y2 == y1 else [y2, y1, y]
            try:
                walk = _join([
                    front,
                    state.entries[i].vertices,
                    state.routed_minus[i].vertices,
                    state.selected[i].vertices,
                    state.routed_plus[i].vertices,
                    state.exits[i].vertices,
                    back,
                ])
            except ValueError as e:
                raise self._fail(Stage.STITCH, f"pair {i}: {e}", state) from e
            paths.append(Path(tuple(walk)))

        report = verify_linkage(tournament, request, paths)
        if not report:
            raise self._fail(Stage.STITCH, f"verification failed: {report.violation}", state)
        state.paths = paths
        return {"lengths": [path.length for path in paths]}


def link(
    tournament: Tournament,
    request: LinkRequest,
    force: bool = False,
    config: Optional[LinkerConfig] = None,
) -> LinkResult:
    """Link ``request`` in ``tournament`` with a one-off ``Linker``."""
    return Linker(config).link(tournament, request, force=force)
