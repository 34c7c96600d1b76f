from src.core.invariants import (
    DiagramInvariants,
    compare_invariants,
    compare_presentations,
    diagram_invariants,
)
from src.models.coxeter_data import matrix_from_pairs


def test_dihedral_triple(dihedral12):
    invariants = diagram_invariants(dihedral12)
    assert invariants == DiagramInvariants(vertex_count=2, edge_count=1, edge_label_multiset=(6,))
    assert str(invariants) == "(2,1,{6})"


def test_triangle_triple(triangle322):
    assert diagram_invariants(triangle322) == DiagramInvariants(3, 3, (2, 2, 3))


def test_no_edges(free3):
    assert diagram_invariants(free3) == DiagramInvariants(3, 0, ())


def test_field_comparison(dihedral12, triangle322):
    comparison = compare_invariants(diagram_invariants(dihedral12), diagram_invariants(triangle322))
    assert not comparison.same
    assert comparison.fields == {
        'vertex_count': False, 'edge_count': False, 'edge_label_multiset': False,
    }
    frame = comparison.to_frame()
    assert list(frame.columns) == ['invariant', 'left', 'right', 'equal']
    assert frame['left'].tolist() == ['2', '1', '(6,)']
    assert not frame['equal'].any()


def test_isomorphic_groups_with_different_diagrams(dihedral12, triangle322):
    result = compare_presentations(dihedral12, triangle322)
    assert not result.same
    assert result.orders == (12, 12)
    assert result.dimensions == (2, 3)
    assert len(result.warnings) == 1
    assert "two-dimensional" in result.warnings[0]


def test_equal_diagrams_with_different_orders(a4_path, d4_star):
    result = compare_presentations(a4_path, d4_star)
    assert result.same
    assert result.orders == (120, 192)
    assert len(result.warnings) == 1
    assert "120 vs 192" in result.warnings[0]


def test_path_and_star_with_infinite_remaining_labels():
    names = ["a", "b", "c", "d"]
    path = matrix_from_pairs(names, {("a", "b"): 3, ("b", "c"): 3, ("c", "d"): 3})
    star = matrix_from_pairs(names, {("a", "b"): 3, ("a", "c"): 3, ("a", "d"): 3})
    result = compare_presentations(path, star, size_cap=500)
    assert result.same
    assert str(result.invariants.left) == "(4,3,{3,3,3})"
    assert result.orders == (None, None)
    assert result.warnings == []
    assert result.to_dict()['orders'] == ["exceeds cap", "exceeds cap"]


def test_to_dict_is_plain_data(twist3):
    data = compare_presentations(twist3, twist3, size_cap=200).to_dict()
    assert data['same']
    assert data['left'] == {'vertex_count': 3, 'edge_count': 1, 'edge_label_multiset': [2]}
    assert data['davis_dimensions'] == [2, 2]
