"""
Partial greedy dominating sequences.

An in-flavored sequence v_1, ..., v_k picks, at every step, a maximum
in-degree vertex of the subtournament on the current residual, then
shrinks the residual to that vertex's out-neighbourhood. The residual is
what the sequence fails to in-dominate. Out-flavored sequences are the
mirror image under edge reversal.
"""
import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

from .tournament import Tournament
from .utils.errors import DominationExhaustedError, InputError
from .utils.models import VertexSet, mask_of

logger = logging.getLogger(__name__)


class Flavor:
    """Constants for the two sequence flavors."""
    IN = "in"
    OUT = "out"

    ALL = (IN, OUT)


@dataclass(frozen=True)
class DominatingSequence:
    """
    A greedy dominating sequence and what it leaves undominated.

    Attributes:
        flavor: Flavor.IN or Flavor.OUT
        verts: Selected vertices in selection order
        residual: Vertices of the ground set not dominated by the sequence
        ground: The ground set the sequence was built over
        history: Residual size after each selection
    """
    flavor: str
    verts: Tuple[int, ...]
    residual: VertexSet
    ground: VertexSet
    history: Tuple[int, ...] = ()

    @property
    def head(self) -> int:
        """The vertex every other sequence vertex points to."""
        return self.verts[-1] if self.flavor == Flavor.IN else self.verts[0]

    @property
    def tail(self) -> int:
        """The vertex pointing to every other sequence vertex."""
        return self.verts[0] if self.flavor == Flavor.IN else self.verts[-1]

    @property
    def mask(self) -> int:
        return mask_of(self.verts)

    def __len__(self) -> int:
        return len(self.verts)

    def dominates(self, tournament: Tournament, v: int) -> bool:
        """
        True iff v is a sequence vertex or has an edge into (in-flavor) /
        out of (out-flavor) some sequence vertex.
        """
        if v in self.verts:
            return True
        toward = tournament.out_mask(v) if self.flavor == Flavor.IN else tournament.in_mask(v)
        return bool(toward & self.mask)

    def is_transitive(self, tournament: Tournament) -> bool:
        """Edge-by-edge check that the sequence is ordered tail to head."""
        for i, u in enumerate(self.verts):
            for w in self.verts[i + 1 :]:
                forward = tournament.edge(u, w)
                if forward != (self.flavor == Flavor.IN):
                    return False
        return True


def _greedy(
    tournament: Tournament, ground: VertexSet, size: Optional[int], flavor: str
) -> DominatingSequence:
    if flavor not in Flavor.ALL:
        raise InputError(f"flavor must be one of {Flavor.ALL}, got {flavor!r}")
    tournament.check_set(ground)
    if not ground:
        raise InputError("ground set is empty")
    if size is not None and size < 1:
        raise InputError(f"sequence size must be at least 1, got {size}")

    # In-flavor ranks by in-degree inside the residual and keeps out-neighbours
    if flavor == Flavor.IN:
        ranking, keep = tournament.in_mask, tournament.out_mask
    else:
        ranking, keep = tournament.out_mask, tournament.in_mask

    residual = ground.mask
    verts: List[int] = []
    history: List[int] = []
    while size is None or len(verts) < size:
        if not residual:
            if size is None:
                break
            raise DominationExhaustedError(achieved=len(verts), requested=size)

        best, best_degree = -1, -1
        for v in VertexSet(residual):
            degree = (ranking(v) & residual).bit_count()
            if degree > best_degree:
                best, best_degree = v, degree

        verts.append(best)
        residual &= keep(best)
        history.append(residual.bit_count())

    logger.debug(f"Greedy {flavor}-dominating sequence {verts}, residual sizes {history}")
    return DominatingSequence(
        flavor=flavor,
        verts=tuple(verts),
        residual=VertexSet(residual),
        ground=ground,
        history=tuple(history),
    )


def greedy_in_dominating(tournament: Tournament, ground: VertexSet, size: int) -> DominatingSequence:
    """
    Partial greedy in-dominating sequence of ``size`` vertices over ``ground``.

    Ties go to the smallest vertex id.

    Raises:
        InputError: if ``ground`` is empty or ``size`` < 1.
        DominationExhaustedError: if the residual empties before ``size`` picks.
    """
    return _greedy(tournament, ground, size, Flavor.IN)


def greedy_out_dominating(tournament: Tournament, ground: VertexSet, size: int) -> DominatingSequence:
    """Mirror of ``greedy_in_dominating``: ranks by out-degree, keeps in-neighbours."""
    return _greedy(tournament, ground, size, Flavor.OUT)


def greedy_dominating(
    tournament: Tournament, ground: VertexSet, size: int, flavor: str
) -> DominatingSequence:
    return _greedy(tournament, ground, size, flavor)


def full_dominating_sequence(
    tournament: Tournament, ground: VertexSet, flavor: str = Flavor.IN
) -> DominatingSequence:
    """Run the greedy until nothing in ``ground`` is left undominated."""
    return _greedy(tournament, ground, None, flavor)


def check_degree_bound(tournament: Tournament, sequence: DominatingSequence) -> bool:
    """
    True iff every residual vertex u has, within the ground set,
    out-degree (in-flavor) or in-degree (out-flavor) at least
    2^(k-1) * |residual|, with k = len(sequence).
    """
    if not sequence.residual:
        return True
    neighbours = tournament.out_mask if sequence.flavor == Flavor.IN else tournament.in_mask
    bound = (1 << (len(sequence) - 1)) * len(sequence.residual)
    for u in sequence.residual:
        degree = (neighbours(u) & sequence.ground.mask).bit_count()
        if degree < bound:
            logger.debug(f"Residual vertex {u} has ground degree {degree} < {bound}")
            return False
    return True
