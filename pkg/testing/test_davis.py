import pytest

from conftest import load_fixture
from src.core import word_problem
from src.core.davis import (
    SphericalCoset,
    act,
    build_complex,
    canonical_coset,
    expected_cell_counts,
    half_turn_fixed_cells,
)
from src.core.enumeration import enumerate_group
from src.core.errors import NotSpherical
from src.core.spherical import davis_dimension
from src.models.coxeter_data import ParabolicSubset, generator_element, identity_element


def coset(matrix, word, *subset):
    return SphericalCoset(rep=word_problem.reduce(matrix, word), subset=ParabolicSubset.of(*subset))


class TestCanonicalCoset:
    def test_trivial(self, i2):
        matrix = i2(2)
        cell = canonical_coset(identity_element(matrix), ParabolicSubset())
        assert cell == coset(matrix, ())

    def test_descends_inside_subset(self, i2):
        matrix = i2(2)
        st = word_problem.reduce(matrix, (0, 1))
        assert canonical_coset(st, ParabolicSubset.of(1)) == coset(matrix, (0,), 1)

    def test_generator_absorbed(self, i2):
        matrix = i2(2)
        assert canonical_coset(generator_element(matrix, 0), ParabolicSubset.of(0)) == coset(matrix, (), 0)

    def test_idempotent(self, i2):
        matrix = i2(6)
        table = enumerate_group(matrix)
        for element in table.elements:
            for subset in (ParabolicSubset.of(0), ParabolicSubset.of(1), ParabolicSubset.of(0, 1)):
                cell = canonical_coset(element, subset)
                assert canonical_coset(cell.rep, subset) == cell
                assert canonical_coset(element, subset, table) == cell

    def test_not_spherical(self, twist3):
        with pytest.raises(NotSpherical):
            canonical_coset(identity_element(twist3), ParabolicSubset.of(0, 2))


class TestBuildComplex:
    def test_klein_four(self, i2):
        cx = build_complex(i2(2), radius=2)
        assert cx.complete
        assert len(cx) == 9
        assert cx.counts_by_dimension() == {0: 4, 1: 4, 2: 1}

    def test_dihedral_twelve(self, i2):
        cx = build_complex(i2(6), radius=6)
        assert len(cx) == 25
        assert cx.counts_by_dimension() == {0: 12, 1: 12, 2: 1}

    def test_infinite_dihedral(self, i2):
        cx = build_complex(i2(0), radius=5)
        assert not cx.complete
        assert cx.counts_by_dimension() == {0: 11, 1: 10}

    def test_negative_radius(self, i2):
        with pytest.raises(ValueError):
            build_complex(i2(2), radius=-1)

    @pytest.mark.parametrize("name", ["i2_2.cox", "i2_3.cox", "i2_6.cox", "triangle322.cox", "a4_path.cox"])
    def test_counts_match_coset_formula(self, name):
        matrix = load_fixture(name)
        cx = build_complex(matrix, radius=12)
        assert cx.complete
        assert cx.counts_by_dimension() == expected_cell_counts(matrix)
        assert cx.dimension == davis_dimension(matrix)

    @pytest.mark.parametrize("name, radius", [
        ("i2_2.cox", 2), ("i2_6.cox", 6), ("triangle322.cox", 4), ("twist3.cox", 5), ("dihedral4_tail.cox", 5),
    ])
    def test_one_skeleton_is_cayley_graph(self, name, radius):
        cx = build_complex(load_fixture(name), radius=radius)
        assert cx.matches_cayley_graph()
        assert len(cx.cells_of_dimension(0)) == len(cx.table)

    @pytest.mark.parametrize("name, radius", [("i2_4.cox", 4), ("twist3.cox", 4)])
    def test_partial_order(self, name, radius):
        cx = build_complex(load_fixture(name), radius=radius)
        assert cx.is_partial_order()
        for cell in cx.cells:
            if cell.dimension == 2:
                s, t = cell.subset
                assert len(cx.faces(cell)) == 2 * cx.matrix.m(s, t)
            else:
                assert len(cx.faces(cell)) == 2 * cell.dimension
            for face in cx.faces(cell):
                assert cx.leq(face, cell)
                assert not cx.leq(cell, face)

    def test_square_faces(self, i2):
        cx = build_complex(i2(2), radius=2)
        (square,) = cx.cells_of_dimension(2)
        assert len(cx.faces(square)) == 4
        vertices = [c for c in cx.cells_of_dimension(0) if cx.leq(c, square)]
        assert len(vertices) == 4
        for edge in cx.faces(square):
            assert cx.cofaces(edge) == [square]
        for vertex in vertices:
            assert len(cx.cofaces(vertex)) == 2

    def test_infinite_dimension_bound(self, twist3):
        cx = build_complex(twist3, radius=4)
        assert cx.dimension <= davis_dimension(twist3)


class TestAction:
    def test_identity(self, i2):
        matrix = i2(2)
        cell = coset(matrix, (0,), 1)
        assert act(identity_element(matrix), cell) == cell

    def test_translation(self, i2):
        matrix = i2(2)
        assert act(generator_element(matrix, 0), coset(matrix, (), 1)) == coset(matrix, (0,), 1)

    def test_stabilizer(self, i2):
        matrix = i2(2)
        assert act(generator_element(matrix, 0), coset(matrix, (), 0)) == coset(matrix, (), 0)

    def test_table_and_engine_agree(self, i2):
        cx = build_complex(i2(4), radius=4)
        for g in cx.table.elements:
            for cell in cx.cells:
                assert act(g, cell, cx.table) == act(g, cell) == cx.act(g, cell)

    def test_action_preserves_covers(self, i2):
        cx = build_complex(i2(6), radius=6)
        for g in cx.table.elements:
            for a, b in cx.covers:
                face, coface = cx.act(g, cx.cells[a]), cx.act(g, cx.cells[b])
                assert (cx.index[face], cx.index[coface]) in cx.covers


@pytest.mark.parametrize("name", ["i2_4.cox", "i2_6.cox"])
def test_half_turn_fixes_only_its_two_cell(name):
    cx = build_complex(load_fixture(name), radius=12)
    results = half_turn_fixed_cells(cx)
    assert len(results) == 1
    cell, v, fixed = results[0]
    assert fixed == [cell]
    assert v.length == cx.matrix.m(0, 1)

