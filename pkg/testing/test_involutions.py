import pytest

from conftest import load_fixture
from src.core import word_problem
from src.core.enumeration import enumerate_group
from src.core.errors import NotInvolution
from src.core.involutions import (
    OtherInvolution,
    Reflection,
    Rotation,
    classify_involution,
    conjugate_generators,
    involution_normal_form,
    is_involution,
    is_reflection,
)
from src.models.coxeter_data import ParabolicSubset, generator_element, identity_element, matrix_from_pairs


class TestNormalForm:
    def test_generator(self, twist3):
        nf = involution_normal_form(generator_element(twist3, 0))
        assert nf.conjugator.is_identity
        assert nf.core.canonical == (0,)
        assert nf.core_support == ParabolicSubset.of(0)

    def test_commuting_product(self, twist3):
        nf = involution_normal_form(word_problem.reduce(twist3, (0, 1)))
        assert nf.conjugator.is_identity
        assert nf.core.canonical == (0, 1)
        assert nf.core_support == ParabolicSubset.of(0, 1)

    def test_conjugated_generator(self, twist3):
        # usu with m(s,u) = inf
        nf = involution_normal_form(word_problem.reduce(twist3, (2, 0, 2)))
        assert nf.conjugator.canonical == (2,)
        assert nf.core.canonical == (0,)
        assert nf.core_support == ParabolicSubset.of(0)

    def test_reassembles_input(self, twist3):
        a = word_problem.reduce(twist3, (2, 1, 0, 1, 2))
        nf = involution_normal_form(a)
        assert word_problem.conjugate(nf.core, nf.conjugator) == a
        assert word_problem.is_longest_in(nf.core, nf.core_support)

    def test_not_involution(self, i2):
        matrix = i2(3)
        with pytest.raises(NotInvolution):
            involution_normal_form(word_problem.reduce(matrix, (0, 1)))
        with pytest.raises(NotInvolution):
            involution_normal_form(identity_element(matrix))

    def test_central_longest_element(self, i2):
        matrix = i2(6)
        w0 = word_problem.reduce(matrix, (0, 1, 0, 1, 0, 1))
        nf = involution_normal_form(w0)
        assert nf.conjugator.is_identity
        assert nf.core == w0


@pytest.mark.parametrize("name", [
    "i2_2.cox",
    "i2_3.cox",
    "i2_4.cox",
    "i2_6.cox",
    "triangle322.cox",
    "a4_path.cox",
    "d4_star.cox",
    "twist3.cox",
    "dihedral4_tail.cox",
])
def test_core_is_a_shortest_conjugate(name):
    matrix = load_fixture(name)
    ball = enumerate_group(matrix, radius_cap=6, size_cap=1000)
    # an involution of length <= 6 is w c w^-1 with l(w) <= 3, so these walks stay within radius 12
    oracle = enumerate_group(matrix, radius_cap=12, size_cap=40000)
    conjugators = [g for g in ball.elements if g.length <= 3]
    kinds = set()
    for a in ball.elements:
        if a.is_identity or not oracle.product(a, a).is_identity:
            continue
        nf = involution_normal_form(a)
        assert word_problem.is_longest_in(nf.core, nf.core_support)
        assert word_problem.conjugate(nf.core, nf.conjugator) == a
        assert nf.core.length == min(oracle.conjugate(a, g).length for g in conjugators)
        kinds.add(classify_involution(a).kind)
    if name == "dihedral4_tail.cox":
        assert "rotation" in kinds


class TestIsReflection:
    def test_generators(self, twist3):
        assert all(is_reflection(generator_element(twist3, g)) for g in twist3.generators)

    def test_commuting_product(self, twist3):
        assert not is_reflection(word_problem.reduce(twist3, (0, 1)))

    def test_conjugated_generator(self, twist3):
        assert is_reflection(word_problem.reduce(twist3, (2, 0, 2)))

    def test_not_involution(self, twist3):
        assert not is_reflection(word_problem.reduce(twist3, (0, 2)))
        assert not is_reflection(identity_element(twist3))

    @pytest.mark.parametrize("name", ["i2_3.cox", "i2_4.cox", "i2_6.cox"])
    def test_odd_length_is_reflection_in_dihedral(self, name):
        matrix = load_fixture(name)
        for a in enumerate_group(matrix).elements:
            if is_involution(a):
                assert is_reflection(a) == (a.length % 2 == 1)


class TestClassify:
    def test_reflection(self, twist3):
        kind = classify_involution(word_problem.reduce(twist3, (2, 0, 2)))
        assert isinstance(kind, Reflection)
        assert kind.generator == 0
        assert kind.conjugator.canonical == (2,)

    def test_rotation(self, dihedral4_tail):
        kind = classify_involution(word_problem.reduce(dihedral4_tail, (0, 1, 0, 1)))
        assert isinstance(kind, Rotation)
        assert kind.conjugator.is_identity
        assert kind.pair == (0, 1)
        assert kind.half_order == 2

    def test_longest_of_triangle_is_a_rotation(self, triangle322):
        # w0 = (aba)c is conjugate to ac
        w0 = word_problem.longest_element(triangle322, ParabolicSubset.of(0, 1, 2))
        kind = classify_involution(w0)
        assert isinstance(kind, Rotation)
        assert kind.pair == (0, 2)
        assert word_problem.conjugate(word_problem.reduce(triangle322, (0, 2)), kind.conjugator) == w0

    def test_other(self):
        cube = matrix_from_pairs(["a", "b", "c"], {("a", "b"): 2, ("b", "c"): 2, ("a", "c"): 2})
        kind = classify_involution(word_problem.reduce(cube, (0, 1, 2)))
        assert isinstance(kind, OtherInvolution)
        assert kind.normal_form.core_support == ParabolicSubset.of(0, 1, 2)
        assert kind.to_dict()['kind'] == "other"


class TestConjugateGenerators:
    def test_same_generator(self, twist3):
        assert conjugate_generators(twist3, 0, 0)

    def test_odd_label(self, i2):
        assert conjugate_generators(i2(3), 0, 1)

    def test_even_label(self, i2):
        assert not conjugate_generators(i2(2), 0, 1)

    def test_odd_path(self, a4_path):
        assert conjugate_generators(a4_path, 0, 3)
