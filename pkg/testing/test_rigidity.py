import time

import pytest

from conftest import load_fixture
from src.core import word_problem
from src.core.errors import (
    HypothesisViolated,
    IsReflection,
    MatrixMismatch,
    NotHomomorphism,
    NotSpherical,
    NotTwoDimensional,
)
from src.core.rigidity import (
    align_generating_sets,
    check_homomorphism,
    half_turn_counterexamples,
    match_spherical_subgroup,
    resolve_pseudo_transposition,
    twist_generating_set,
    validate_map,
    verify_bijectivity,
)
from src.models.coxeter_data import ParabolicSubset, generator_element, matrix_from_pairs
from src.models.generator_map import Bijectivity, GeneratorMap, compose
from src.utils.file_utils import read_generator_map


@pytest.fixture
def twist3_map(fixtures_dir):
    return read_generator_map(fixtures_dir / "twist3_map.json")


@pytest.fixture
def twist4_map(fixtures_dir):
    return read_generator_map(fixtures_dir / "twist4_map.json")


def inner_automorphism(matrix, g_word):
    """s -> g s g^-1 as a generator map"""
    g = word_problem.reduce(matrix, g_word)
    images = tuple(
        word_problem.conjugate(generator_element(matrix, s), g).canonical for s in matrix.generators
    )
    return GeneratorMap(source=matrix, target=matrix, images=images)


class TestGeneratorMap:
    def test_identity_is_homomorphism(self, twist3):
        phi = GeneratorMap.identity(twist3)
        check_homomorphism(phi)
        assert phi.is_identity()

    def test_relator_failure(self, i2):
        phi = GeneratorMap(source=i2(2), target=i2(3), images=((0,), (1,)))
        with pytest.raises(NotHomomorphism):
            check_homomorphism(phi)

    def test_fixture_map(self, twist3_map):
        assert twist3_map.image_names() == {'s': ['st', 't'], 't': ['t'], 'u': ['u']}
        assert twist3_map.image(0).canonical == (0, 1)
        st = word_problem.reduce(twist3_map.source, (0, 1))
        assert twist3_map.apply_element(st).canonical == (0,)
        with pytest.raises(MatrixMismatch):
            twist3_map.apply_element(generator_element(twist3_map.target, 0))

    def test_compose_with_inverse(self, twist3_map):
        report = validate_map(twist3_map)
        assert report.status is Bijectivity.VERIFIED
        assert compose(report.inverse, twist3_map).is_identity()


class TestBijectivity:
    def test_identity_verified(self, dihedral4_tail):
        report = verify_bijectivity(GeneratorMap.identity(dihedral4_tail))
        assert report.status is Bijectivity.VERIFIED

    def test_equal_images_refuted(self, i2):
        phi = GeneratorMap(source=i2(2), target=i2(2), images=((0,), (0,)))
        assert verify_bijectivity(phi).status is Bijectivity.REFUTED

    def test_trivial_image_refuted(self, i2):
        phi = GeneratorMap(source=i2(2), target=i2(2), images=((0,), ()))
        assert verify_bijectivity(phi).status is Bijectivity.REFUTED

    def test_order_mismatch_refuted(self, i2):
        # I2(2) onto the commuting pair {s, w0} inside I2(4): orders agree but t is never reached
        phi = GeneratorMap(source=i2(2), target=i2(4), images=((0,), (0, 1, 0, 1)))
        report = verify_bijectivity(phi)
        assert report.status is not Bijectivity.VERIFIED

    def test_unverified_at_small_radius(self, twist3):
        # s -> usu, t -> utu, u -> u; reaching s back takes three images
        phi = inner_automorphism(twist3, (2,))
        assert verify_bijectivity(phi, search_radius=1).status is Bijectivity.UNVERIFIED
        assert verify_bijectivity(phi, search_radius=3).status is Bijectivity.VERIFIED

    def test_large_label_identity_verified(self, i2):
        report = verify_bijectivity(GeneratorMap.identity(i2(25)))
        assert report.status is Bijectivity.VERIFIED, report.detail


class TestMatchSphericalSubgroup:
    def test_identity(self, twist3):
        match = match_spherical_subgroup(GeneratorMap.identity(twist3), ParabolicSubset.of(0, 1))
        assert match.subset == ParabolicSubset.of(0, 1)
        assert match.conjugator.is_identity
        assert match.order == 4

    def test_inner_automorphism(self, twist3):
        phi = inner_automorphism(twist3, (2,))
        match = match_spherical_subgroup(phi, ParabolicSubset.of(0, 1))
        assert match.subset == ParabolicSubset.of(0, 1)
        assert match.conjugator.canonical == (2,)

    def test_twisted_target(self, twist3_map):
        match = match_spherical_subgroup(twist3_map, ParabolicSubset.of(0, 1))
        assert match.subset == ParabolicSubset.of(0, 1)
        assert match.conjugator.is_identity

    def test_single_generator(self, twist3_map):
        match = match_spherical_subgroup(twist3_map, ParabolicSubset.of(2))
        assert match.subset == ParabolicSubset.of(2)
        assert match.order == 2

    def test_not_spherical(self, twist3):
        with pytest.raises(NotSpherical):
            match_spherical_subgroup(GeneratorMap.identity(twist3), ParabolicSubset.of(0, 2))


class TestResolvePseudoTransposition:
    def test_twist_fixture(self, twist3_map):
        resolution = resolve_pseudo_transposition(twist3_map, 0)
        assert resolution.partner_t == 1
        assert resolution.target_pair == (0, 1)
        assert resolution.conjugator_w.is_identity
        assert resolution.clauses == {str(k): True for k in range(1, 8)}

    def test_reflection_image(self, twist3):
        with pytest.raises(IsReflection):
            resolve_pseudo_transposition(GeneratorMap.identity(twist3), 0)

    def test_not_two_dimensional(self, triangle322):
        with pytest.raises(NotTwoDimensional):
            resolve_pseudo_transposition(GeneratorMap.identity(triangle322), 0)

    def test_conjugated_twist(self, twist3_map):
        # compose the fixture map with conjugation by u in the target
        inner = inner_automorphism(twist3_map.target, (2,))
        resolution = resolve_pseudo_transposition(compose(inner, twist3_map), 0)
        assert resolution.conjugator_w.canonical == (2,)
        assert all(resolution.clauses.values())


class TestTwist:
    def test_rank_three(self, twist3):
        twisted, psi = twist_generating_set(twist3, 0, 1)
        assert twisted.labels == ("st", "t", "u")
        assert twisted == load_fixture("twist3_target.cox")
        assert psi.image_names() == {'st': ['s', 't'], 't': ['t'], 'u': ['u']}

    def test_klein_four(self, i2):
        twisted, psi = twist_generating_set(i2(2), 0, 1)
        assert twisted.labels == ("st", "t")
        assert twisted.orders == i2(2).orders
        assert verify_bijectivity(psi).status is Bijectivity.VERIFIED

    def test_label_collision(self):
        matrix = matrix_from_pairs(["s", "t", "st"], {("s", "t"): 2})
        twisted, _ = twist_generating_set(matrix, 0, 1)
        assert twisted.labels == ("st'", "t", "st")

    def test_finite_off_pair_label(self):
        matrix = matrix_from_pairs(["s", "t", "u"], {("s", "t"): 2, ("s", "u"): 3})
        with pytest.raises(HypothesisViolated):
            twist_generating_set(matrix, 0, 1)

    def test_pair_must_commute(self, dihedral4_tail):
        with pytest.raises(HypothesisViolated):
            twist_generating_set(dihedral4_tail, 0, 1)

    def test_large_label_off_the_twisted_generator(self):
        matrix = matrix_from_pairs(["s", "t", "u"], {("s", "t"): 2, ("t", "u"): 25})
        twisted, psi = twist_generating_set(matrix, 0, 1)
        assert twisted.m(1, 2) == 25
        assert verify_bijectivity(psi).status is Bijectivity.VERIFIED


class TestAlign:
    def test_identity(self, twist3):
        result = align_generating_sets(GeneratorMap.identity(twist3))
        assert result.pseudo_transpositions == []
        assert result.matrix == twist3
        assert result.induced_map.is_identity()
        assert result.bijectivity == "verified"

    def test_rank_three(self, twist3_map):
        result = align_generating_sets(twist3_map)
        assert result.pseudo_transpositions == [0]
        assert [r.partner_t for r in result.resolutions] == [1]
        assert all(all(r.clauses.values()) for r in result.resolutions)
        assert result.matrix.labels == ("st", "t", "u")
        assert [e.canonical for e in result.elements] == [(0, 1), (1,), (2,)]
        assert result.checks == {"a": True, "b": True, "c": True}
        assert result.invariants.same
        assert result.induced_map.image_names() == {'st': ['st'], 't': ['t'], 'u': ['u']}

    def test_rank_four(self, twist4_map):
        result = align_generating_sets(twist4_map)
        assert result.pseudo_transpositions == [0, 2]
        assert [r.partner_t for r in result.resolutions] == [1, 3]
        assert all(all(r.clauses.values()) for r in result.resolutions)
        assert result.matrix.labels == ("s1t1", "t1", "s2t2", "t2")
        assert all(result.checks.values())
        assert result.invariants.same
        assert result.to_dict()['bijectivity'] == "verified"

    def test_not_two_dimensional(self, triangle322):
        with pytest.raises(NotTwoDimensional):
            align_generating_sets(GeneratorMap.identity(triangle322))

    def test_refuted_map(self, twist3):
        phi = GeneratorMap(source=twist3, target=twist3, images=((0,), (1,), (0,)))
        with pytest.raises((HypothesisViolated, NotHomomorphism)):
            align_generating_sets(phi)


@pytest.mark.parametrize("name", ["twist3.cox", "dihedral4_tail.cox"])
def test_half_turns_determine_their_edge(name):
    assert half_turn_counterexamples(load_fixture(name), radius=4) == []


@pytest.mark.parametrize("map_fixture, pair", [("twist3_map", (0, 1)), ("twist4_map", (2, 3))])
def test_twist_and_align_finish_in_seconds(request, map_fixture, pair):
    phi = request.getfixturevalue(map_fixture)
    word_problem.clear_solvers()
    started = time.perf_counter()
    twist_generating_set(phi.source, *pair)
    result = align_generating_sets(phi)
    assert all(result.checks.values())
    assert time.perf_counter() - started < 10.0
