import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from app.linkage.tournament import (
    Tournament,
    derive_seed,
    from_matrix,
    induced,
    lift,
    paley,
    parse,
    random_tournament,
    relabel_mask,
    reverse,
    rotational,
    sample_min_degree,
    serialize,
    transitive,
)
from app.linkage.utils.errors import InputError, TournamentFormatError, VertexRangeError
from app.linkage.utils.models import VertexSet

from .strategies import seeds, tournaments, vertex_subsets


class TestFromMatrix:
    def test_transitive_triangle(self, transitive_triangle: Tournament) -> None:
        assert transitive_triangle.edge(0, 1)
        assert transitive_triangle.edge(0, 2)
        assert transitive_triangle.edge(1, 2)
        assert not transitive_triangle.edge(2, 0)

    def test_cyclic_triangle(self, cyclic_triangle: Tournament) -> None:
        assert cyclic_triangle.edge(0, 1)
        assert cyclic_triangle.edge(1, 2)
        assert cyclic_triangle.edge(2, 0)

    def test_missing_edge_names_pair(self) -> None:
        with pytest.raises(TournamentFormatError) as exc:
            from_matrix(2, ["00", "00"])
        assert exc.value.pair == (0, 1)

    def test_double_edge_names_pair(self) -> None:
        with pytest.raises(TournamentFormatError) as exc:
            from_matrix(3, ["011", "101", "000"])
        assert exc.value.pair == (0, 1)

    def test_diagonal(self) -> None:
        with pytest.raises(TournamentFormatError) as exc:
            from_matrix(2, ["10", "00"])
        assert exc.value.pair == (0, 0)

    def test_dimension_mismatch(self) -> None:
        with pytest.raises(TournamentFormatError):
            from_matrix(3, ["011", "001"])
        with pytest.raises(TournamentFormatError) as exc:
            from_matrix(2, ["01", "000"])
        assert exc.value.line == 3

    def test_bad_character(self) -> None:
        with pytest.raises(TournamentFormatError):
            from_matrix(2, ["0x", "00"])


class TestGenerators:
    def test_transitive_degrees(self) -> None:
        assert transitive(4).out_degrees() == (3, 2, 1, 0)
        assert transitive(5).in_degree(4) == 4
        assert transitive(4).is_transitive()

    def test_single_vertex(self) -> None:
        t = transitive(1)
        assert t.n == 1
        assert t.out_degree(0) == 0

    def test_rotational_is_regular(self) -> None:
        assert set(rotational(5).out_degrees()) == {2}
        assert rotational(3) == from_matrix(3, ["010", "001", "100"])

    def test_rotational_rejects_even(self) -> None:
        with pytest.raises(InputError):
            rotational(6)

    @pytest.mark.parametrize("n", [-1, 0, 1])
    def test_rotational_rejects_tiny(self, n: int) -> None:
        with pytest.raises(InputError):
            rotational(n)

    def test_paley(self) -> None:
        t = paley(11)
        assert set(t.out_degrees()) == {5}
        assert t.edge(0, 1)
        assert not t.edge(0, 2)

    def test_paley_rejects_bad_prime(self) -> None:
        with pytest.raises(InputError):
            paley(5)
        with pytest.raises(InputError):
            paley(15)

    def test_random_is_reproducible(self) -> None:
        assert random_tournament(60, 7) == random_tournament(60, 7)
        assert random_tournament(60, 7) != random_tournament(60, 8)

    def test_random_rejects_bad_seed(self) -> None:
        with pytest.raises(InputError):
            random_tournament(5, -1)
        with pytest.raises(InputError):
            random_tournament(5, 2**64)

    @given(tournaments(max_n=20))
    def test_random_is_a_tournament(self, t: Tournament) -> None:
        matrix = t.matrix()
        assert not matrix.diagonal().any()
        off_diagonal = ~np.eye(t.n, dtype=bool)
        assert ((matrix ^ matrix.T) == off_diagonal).all()
        for v in range(t.n):
            assert t.out_degree(v) + t.in_degree(v) == t.n - 1


class TestSampling:
    def test_derive_seed(self) -> None:
        assert derive_seed(5, 0) == 5
        assert derive_seed(5, 1) != 5
        assert 0 <= derive_seed(2**64 - 1, 3) < 2**64

    def test_floor_reached(self) -> None:
        t, seed = sample_min_degree(101, seed=3, floor=30)
        assert t.min_degree() >= 30
        assert t == random_tournament(101, seed)

    def test_unreachable_floor(self) -> None:
        with pytest.raises(InputError):
            sample_min_degree(11, seed=0, floor=6, attempts=5)


class TestQueries:
    def test_vertex_range(self, transitive4: Tournament) -> None:
        with pytest.raises(VertexRangeError):
            transitive4.out_degree(4)
        with pytest.raises(VertexRangeError):
            transitive4.check_set(VertexSet.of([1, 9]))

    def test_neighbourhoods(self, transitive4: Tournament) -> None:
        assert transitive4.out_neighbours(1).to_list() == [2, 3]
        assert transitive4.in_neighbours(1).to_list() == [0]

    def test_min_degree(self, rotational7: Tournament, transitive4: Tournament) -> None:
        assert rotational7.min_degree() == 3
        assert rotational7.deficient_vertex(3) == -1
        assert rotational7.deficient_vertex(4) == 0
        assert transitive4.min_degree() == 0

    @given(tournaments(min_n=1, max_n=25))
    def test_some_vertex_beats_half(self, t: Tournament) -> None:
        assert 2 * max(t.out_degrees()) >= t.n - 1
        assert 2 * max(t.in_degrees()) >= t.n - 1


class TestTransforms:
    def test_reverse(self, transitive4: Tournament) -> None:
        flipped = reverse(transitive4)
        assert flipped.out_degrees() == (0, 1, 2, 3)
        assert reverse(flipped) == transitive4

    def test_induced(self, rotational7: Tournament) -> None:
        sub, mapping = induced(rotational7, VertexSet.of([1, 3, 6]))
        assert mapping == (1, 3, 6)
        for a in range(3):
            for b in range(3):
                if a != b:
                    assert sub.edge(a, b) == rotational7.edge(mapping[a], mapping[b])
        assert lift(mapping, [2, 0]) == [6, 1]
        assert relabel_mask(mapping, 0b101) == 1 << 1 | 1 << 6

    @given(tournaments(min_n=1, max_n=12))
    def test_induced_on_everything_is_identity(self, t: Tournament) -> None:
        sub, mapping = induced(t, t.vertices())
        assert sub == t
        assert mapping == tuple(range(t.n))

    @settings(max_examples=100, deadline=None)
    @given(st.data())
    def test_induced_composes(self, data: st.DataObject) -> None:
        t = data.draw(tournaments(min_n=2, max_n=12))
        outer = data.draw(vertex_subsets(t.n, min_size=1, max_size=t.n))
        outer_sub, outer_map = induced(t, outer)
        inner = data.draw(vertex_subsets(outer_sub.n, min_size=1, max_size=outer_sub.n))
        inner_sub, inner_map = induced(outer_sub, inner)

        lifted = VertexSet.of(lift(outer_map, inner))
        direct_sub, direct_map = induced(t, lifted)
        assert lift(outer_map, inner_map) == list(direct_map)
        assert inner_sub == direct_sub
        assert relabel_mask(outer_map, inner.mask) == lifted.mask

    def test_induced_rejects_empty(self, rotational7: Tournament) -> None:
        with pytest.raises(InputError):
            induced(rotational7, VertexSet())


class TestFormat:
    def test_serialize(self, transitive_triangle: Tournament) -> None:
        assert serialize(transitive_triangle) == "TOURN 1 3\n011\n001\n000\n"

    @given(tournaments(max_n=12))
    def test_parse_inverts_serialize(self, t: Tournament) -> None:
        assert parse(serialize(t)) == t

    @given(seeds)
    def test_serialize_is_deterministic(self, seed: int) -> None:
        assert serialize(random_tournament(8, seed)) == serialize(random_tournament(8, seed))

    def test_missing_trailing_newline(self) -> None:
        assert parse("TOURN 1 2\n01\n00") == transitive(2)

    def test_carriage_returns_rejected(self) -> None:
        with pytest.raises(TournamentFormatError) as exc:
            parse("TOURN 1 2\r\n01\r\n00\r\n")
        assert exc.value.line == 1
        with pytest.raises(TournamentFormatError) as exc:
            parse("TOURN 1 2\n01\r\n00\n")
        assert exc.value.line == 2

    def test_bad_header(self) -> None:
        with pytest.raises(TournamentFormatError):
            parse("TOURN 2 2\n01\n00\n")
        with pytest.raises(TournamentFormatError):
            parse("")

    @pytest.mark.parametrize("header", ["TOURN 1 03", "TOURN 1 00", "TOURN 1 +3", "TOURN 1  3"])
    def test_non_canonical_count_rejected(self, header: str) -> None:
        with pytest.raises(TournamentFormatError) as exc:
            parse(f"{header}\n010\n001\n100\n")
        assert exc.value.line == 1

    def test_row_count(self) -> None:
        with pytest.raises(TournamentFormatError):
            parse("TOURN 1 3\n011\n001\n")
