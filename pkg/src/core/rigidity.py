"""
Rigidity

Machinery for generator maps between two-dimensional Coxeter systems:
homomorphism and bijectivity validation, matching images of spherical
parabolics with conjugated target parabolics, resolution of
pseudo-transpositions, the s -> st diagram twist, and the alignment of
generating sets so that every generator maps to a reflection.
"""

import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Tuple

from config.constants import DEFAULT_ENUM_SIZE_CAP, DEFAULT_ORDER_PROBE, DEFAULT_SEARCH_RADIUS
from src.core import word_problem
from src.core.enumeration import enumerate_group
from src.core.errors import (
    AmbiguousMatch,
    HypothesisViolated,
    IsReflection,
    NotFoundInRadius,
    NotHomomorphism,
    NotSpherical,
    NotTwoDimensional,
    TheoremViolation,
)
from src.core.invariants import InvariantComparison, compare_invariants, diagram_invariants
from src.core.involutions import Rotation, classify_involution, is_reflection
from src.core.spherical import is_spherical, is_two_dimensional, maximal_spherical_subsets, parabolic_order, spherical_subsets
from src.models.coxeter_data import (
    INFINITY,
    CoxeterMatrix,
    GroupElement,
    ParabolicSubset,
    Word,
    generator_element,
    identity_element,
    is_finite,
)
from src.models.generator_map import Bijectivity, GeneratorMap, preserves_labels

logger = logging.getLogger(__name__)


def check_homomorphism(phi: GeneratorMap):
    """Raise NotHomomorphism unless every source relator maps to the identity"""
    failures = phi.relator_failures()
    if failures:
        raise NotHomomorphism(f"{phi} does not respect the source relations: {'; '.join(failures)}")


@dataclass
class BijectivityReport:
    status: Bijectivity
    detail: str
    inverse: Optional[GeneratorMap] = None

    def to_dict(self) -> dict:
        return {
            'status': self.status.value,
            'detail': self.detail,
            'inverse': None if self.inverse is None else self.inverse.image_names(),
        }


def _refutation(phi: GeneratorMap, probe: Optional[int]) -> Optional[str]:
    images = phi.image_elements()
    labels = phi.source.labels
    for s, image in enumerate(images):
        if image.is_identity:
            return f"phi({labels[s]}) is trivial"
    for s, t in itertools.combinations(phi.source.generators, 2):
        if images[s] == images[t]:
            return f"phi({labels[s]}) = phi({labels[t]})"
    for s, t, order in phi.source.finite_pairs():
        found = word_problem.element_order(word_problem.multiply(images[s], images[t]), probe)
        if found != order:
            return f"phi({labels[s]}) phi({labels[t]}) has order {found}, not {order}"
    return None


def _preimage_words(phi: GeneratorMap, search_radius: int) -> Dict[int, Word]:
    """BFS over products of images; source words for the target generators reached"""
    images = phi.image_elements()
    wanted = {generator_element(phi.target, g): g for g in phi.target.generators}
    start = identity_element(phi.target)
    seen: Dict[GroupElement, Word] = {start: ()}
    found: Dict[int, Word] = {}
    frontier = [start]
    for _ in range(search_radius):
        next_frontier = []
        for current in frontier:
            for s, image in enumerate(images):
                product = word_problem.multiply(current, image)
                if product in seen:
                    continue
                seen[product] = seen[current] + (s,)
                next_frontier.append(product)
                if product in wanted:
                    found.setdefault(wanted[product], seen[product])
        if len(found) == phi.target.rank or not next_frontier:
            break
        frontier = next_frontier
    return found


def verify_bijectivity(
    phi: GeneratorMap,
    search_radius: int = DEFAULT_SEARCH_RADIUS,
    probe: Optional[int] = DEFAULT_ORDER_PROBE,
) -> BijectivityReport:
    """
    Tri-state bijectivity of a homomorphism.

    verified: every target generator is a product of images within
    search_radius, and the resulting inverse candidate psi is a homomorphism
    with psi(phi(s)) = s. refuted: a cheap necessary condition fails, or
    psi exists and fails its checks. Otherwise unverified at this radius.
    """
    reason = _refutation(phi, probe)
    if reason is not None:
        return BijectivityReport(status=Bijectivity.REFUTED, detail=reason)

    found = _preimage_words(phi, search_radius)
    if len(found) < phi.target.rank:
        missing = [phi.target.labels[g] for g in phi.target.generators if g not in found]
        detail = f"target generator(s) {', '.join(missing)} not reached within radius {search_radius}"
        logger.warning("bijectivity of %s unverified: %s", phi, detail)
        return BijectivityReport(status=Bijectivity.UNVERIFIED, detail=detail)

    psi = GeneratorMap(
        source=phi.target,
        target=phi.source,
        images=tuple(word_problem.reduce(phi.source, found[g], word_cap=None).canonical for g in phi.target.generators),
    )
    failures = psi.relator_failures()
    if failures:
        return BijectivityReport(
            status=Bijectivity.REFUTED,
            detail=f"inverse candidate {psi} breaks target relations: {'; '.join(failures)}",
        )
    for s in phi.source.generators:
        if psi.apply(phi.images[s]) != generator_element(phi.source, s):
            return BijectivityReport(
                status=Bijectivity.REFUTED,
                detail=f"inverse candidate does not send phi({phi.source.labels[s]}) back",
            )
    return BijectivityReport(status=Bijectivity.VERIFIED, detail="inverse found and checked", inverse=psi)


def validate_map(phi: GeneratorMap, search_radius: int = DEFAULT_SEARCH_RADIUS) -> BijectivityReport:
    """Exact relator check, then best-effort bijectivity"""
    check_homomorphism(phi)
    return verify_bijectivity(phi, search_radius)


@dataclass(frozen=True)
class SubgroupMatch:
    """phi(W_T) = w' W'_{T'} w'^-1"""

    subset: ParabolicSubset
    conjugator: GroupElement
    order: int

    def to_dict(self) -> dict:
        return {
            'T_prime': self.subset.names(self.conjugator.matrix),
            'conjugator': self.conjugator.names(),
            'order': self.order,
        }


def _conjugates_into(subset: ParabolicSubset, w: GroupElement, image: FrozenSet[GroupElement]) -> bool:
    matrix = w.matrix
    return all(
        word_problem.conjugate(generator_element(matrix, t), w) in image for t in subset
    )


def match_spherical_subgroup(
    phi: GeneratorMap,
    subset: ParabolicSubset,
    search_radius: int = DEFAULT_SEARCH_RADIUS,
    size_cap: int = DEFAULT_ENUM_SIZE_CAP,
) -> SubgroupMatch:
    """
    Find T' and w' with phi(W_T) = w' W'_{T'} w'^-1, scanning w' over the
    target ball in shortlex order.

    Candidates T' are the target spherical subsets whose parabolic has the
    order of phi(W_T); conjugating T' into the image set with equal orders
    gives set equality.
    """
    source, target = phi.source, phi.target
    verdict = is_spherical(source, subset)
    if not verdict.finite:
        raise NotSpherical(f"T={subset.names(source)} is not spherical: {verdict.witness}")

    image = word_problem.generated_set(target, [phi.image(s) for s in subset], limit=size_cap)
    candidates = [t for t in spherical_subsets(target) if parabolic_order(target, t) == len(image)]
    ball = enumerate_group(target, radius_cap=search_radius, size_cap=size_cap)
    # ambiguity is checked for maximal spherical T only
    is_maximal = subset in maximal_spherical_subsets(source)

    first: Optional[SubgroupMatch] = None
    matched: List[ParabolicSubset] = []
    for w in ball.elements:
        for candidate in candidates:
            if candidate in matched:
                continue
            if _conjugates_into(candidate, w, image):
                matched.append(candidate)
                if first is None:
                    first = SubgroupMatch(subset=candidate, conjugator=w, order=len(image))
        if len(matched) == len(candidates) or (first is not None and not is_maximal):
            break

    if first is None:
        raise NotFoundInRadius(
            f"no conjugate of a target parabolic equals phi(W_{{{','.join(subset.names(source))}}}) "
            f"with conjugator in the radius-{search_radius} ball; enlarge the search radius"
        )
    if len(matched) > 1 and is_maximal:
        names = ["{" + ",".join(t.names(target)) + "}" for t in matched]
        raise AmbiguousMatch(f"image of a maximal spherical parabolic matches several target parabolics: {names}")

    if len(subset) == 2 and len(first.subset) == 2:
        s, t = subset
        a, b = first.subset
        if source.m(s, t) != target.m(a, b):
            raise TheoremViolation(
                "label",
                f"m({source.labels[s]},{source.labels[t]})={source.m(s, t)} but "
                f"m'({target.labels[a]},{target.labels[b]})={target.m(a, b)}",
            )
    logger.debug("matched W_%s with %s conjugated by %s", subset, first.subset, first.conjugator)
    return first


@dataclass
class PseudoTranspositionResolution:
    """Partner t, target pair (s', t') and w' with phi(s) = w's't'w'^-1 and phi(t) = w't'w'^-1"""

    s: int
    partner_t: int
    target_pair: Tuple[int, int]
    conjugator_w: GroupElement
    clauses: Dict[str, bool] = field(default_factory=dict)

    def to_dict(self, source: CoxeterMatrix) -> dict:
        target = self.conjugator_w.matrix
        return {
            's': source.labels[self.s],
            't': source.labels[self.partner_t],
            'target_pair': [target.labels[i] for i in self.target_pair],
            'conjugator': self.conjugator_w.names(),
            'clauses': dict(self.clauses),
        }


def _require_two_dimensional(*matrices: CoxeterMatrix):
    for matrix in matrices:
        if not is_two_dimensional(matrix):
            raise NotTwoDimensional(f"{matrix} does not have a two-dimensional Davis complex")


def resolve_pseudo_transposition(
    phi: GeneratorMap,
    s: int,
    search_radius: int = DEFAULT_SEARCH_RADIUS,
    size_cap: int = DEFAULT_ENUM_SIZE_CAP,
) -> PseudoTranspositionResolution:
    """
    For a generator s whose image is not a reflection, find its commuting
    partner t and the target edge {s', t'} that the pair maps onto, then
    check the seven conclusions:

      1. m(s,t) = 2
      2. m(s,u) = inf for every u outside {s,t}
      3. phi(W_{s,t}) = w' W'_{s',t'} w'^-1
      4. m'(s',t') = 2
      5. m'(s',u') = inf for every u' outside {s',t'}
      6. phi(s) = w' s't' w'^-1
      7. phi(t) = w' t' w'^-1
    """
    source, target = phi.source, phi.target
    _require_two_dimensional(source, target)
    phi_s = phi.image(s)
    if is_reflection(phi_s):
        raise IsReflection(f"phi({source.labels[s]}) = {phi_s} is a reflection")

    rotation = classify_involution(phi_s)
    if not isinstance(rotation, Rotation):
        raise TheoremViolation("rotation", f"phi({source.labels[s]}) = {phi_s} classifies as {rotation.kind}")
    pair = ParabolicSubset.of(*rotation.pair)

    partners = []
    for t in source.generators:
        if t == s or not is_finite(source.m(s, t)):
            continue
        match = match_spherical_subgroup(phi, ParabolicSubset.of(s, t), search_radius, size_cap)
        if match.subset == pair:
            partners.append((t, match))
    if not partners:
        raise TheoremViolation(
            "3", f"no edge at {source.labels[s]} maps onto a conjugate of W'_{{{','.join(pair.names(target))}}}"
        )
    if len(partners) > 1:
        names = [source.labels[t] for t, _ in partners]
        raise AmbiguousMatch(f"several partners for {source.labels[s]}: {names}")
    t, match = partners[0]
    w = match.conjugator

    s_prime, t_prime = rotation.pair
    phi_t = phi.image(t)
    if phi_t == word_problem.conjugate(generator_element(target, s_prime), w):
        s_prime, t_prime = t_prime, s_prime

    def conj(word: Word) -> GroupElement:
        return word_problem.conjugate(word_problem.reduce(target, word, word_cap=None), w)

    image_set = word_problem.generated_set(target, [phi_s, phi_t], limit=size_cap)
    edge_set = frozenset(
        word_problem.conjugate(x, w)
        for x in word_problem.generated_set(
            target, [generator_element(target, s_prime), generator_element(target, t_prime)], limit=size_cap
        )
    )
    clauses = {
        "1": source.m(s, t) == 2,
        "2": all(source.m(s, u) == INFINITY for u in source.generators if u not in (s, t)),
        "3": image_set == edge_set,
        "4": target.m(s_prime, t_prime) == 2,
        "5": all(target.m(s_prime, u) == INFINITY for u in target.generators if u not in (s_prime, t_prime)),
        "6": phi_s == conj((s_prime, t_prime)),
        "7": phi_t == conj((t_prime,)),
    }
    failed = [clause for clause, holds in clauses.items() if not holds]
    if failed:
        raise TheoremViolation(
            failed[0],
            f"resolving {source.labels[s]} with partner {source.labels[t]} onto "
            f"({target.labels[s_prime]},{target.labels[t_prime]}); failed clauses {failed}",
        )
    logger.info(
        "pseudo-transposition %s: partner %s, target pair (%s,%s), conjugator %s",
        source.labels[s], source.labels[t], target.labels[s_prime], target.labels[t_prime], w,
    )
    return PseudoTranspositionResolution(
        s=s,
        partner_t=t,
        target_pair=(s_prime, t_prime),
        conjugator_w=w,
        clauses=clauses,
    )


def twist_label(matrix: CoxeterMatrix, s: int, t: int) -> str:
    label = matrix.labels[s] + matrix.labels[t]
    while label in matrix.labels:
        label += "'"
    return label


def twist_generating_set(
    matrix: CoxeterMatrix,
    s: int,
    t: int,
    probe: Optional[int] = DEFAULT_ORDER_PROBE,
) -> Tuple[CoxeterMatrix, GeneratorMap]:
    """
    Replace s by st, where m(s,t) = 2 and m(s,u) = inf for every other u.

    Returns the presentation on (S minus s) plus st, which has the same
    diagram, and the map psi from it to the original system.
    """
    if s == t or matrix.m(s, t) != 2:
        raise HypothesisViolated(
            f"twisting needs m({matrix.labels[s]},{matrix.labels[t]}) = 2, got {matrix.m(s, t)}"
        )
    finite = [matrix.labels[u] for u in matrix.generators if u not in (s, t) and is_finite(matrix.m(s, u))]
    if finite:
        raise HypothesisViolated(
            f"twisting needs m({matrix.labels[s]},u) = inf for u outside the pair; finite for {', '.join(finite)}"
        )

    labels = list(matrix.labels)
    labels[s] = twist_label(matrix, s, t)
    twisted = matrix.relabel(labels)
    images = tuple((s, t) if u == s else (u,) for u in matrix.generators)
    psi = GeneratorMap(source=twisted, target=matrix, images=images)
    check_homomorphism(psi)

    mismatches = preserves_labels(twisted, psi.image_elements(), probe)
    if mismatches:
        raise TheoremViolation("twist", "; ".join(mismatches))
    logger.info("twisted %s into generators %s", matrix, " ".join(labels))
    return twisted, psi


@dataclass
class AlignmentResult:
    """S'' = (S minus S0) plus {s_i t_i}, with the induced map into the target"""

    source: CoxeterMatrix
    pseudo_transpositions: List[int]
    resolutions: List[PseudoTranspositionResolution]
    elements: List[GroupElement]
    matrix: CoxeterMatrix
    induced_map: GeneratorMap
    checks: Dict[str, bool]
    invariants: InvariantComparison
    bijectivity: str
    warnings: List[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            'pseudo_transpositions': [self.source.labels[s] for s in self.pseudo_transpositions],
            'resolutions': [r.to_dict(self.source) for r in self.resolutions],
            'generators': {
                label: element.names() for label, element in zip(self.matrix.labels, self.elements)
            },
            'induced_map': self.induced_map.image_names(),
            'checks': dict(self.checks),
            'invariants': self.invariants.to_dict(),
            'bijectivity': self.bijectivity,
        }


def align_generating_sets(
    phi: GeneratorMap,
    search_radius: int = DEFAULT_SEARCH_RADIUS,
    size_cap: int = DEFAULT_ENUM_SIZE_CAP,
    probe: Optional[int] = DEFAULT_ORDER_PROBE,
) -> AlignmentResult:
    """
    Twist every pseudo-transposition s_i into s_i t_i so that all generators
    map to reflections, and check: (a) the new generating set has the source
    diagram, (b) every image is a reflection, (c) it has as many generators
    as the target.
    """
    source, target = phi.source, phi.target
    _require_two_dimensional(source, target)
    check_homomorphism(phi)
    warnings: List[str] = []
    report = verify_bijectivity(phi, search_radius, probe)
    if report.status is Bijectivity.REFUTED:
        raise HypothesisViolated(f"{phi} is not an isomorphism: {report.detail}")
    if report.status is Bijectivity.UNVERIFIED:
        warnings.append(f"bijectivity unverified: {report.detail}")

    pseudo = [s for s in source.generators if not is_reflection(phi.image(s))]
    resolutions = [resolve_pseudo_transposition(phi, s, search_radius, size_cap) for s in pseudo]
    partner = {r.s: r.partner_t for r in resolutions}

    labels = list(source.labels)
    words: List[Word] = []
    for u in source.generators:
        if u in partner:
            labels[u] = twist_label(source, u, partner[u])
            words.append((u, partner[u]))
        else:
            words.append((u,))
    elements = [word_problem.reduce(source, word, word_cap=None) for word in words]
    aligned = source.relabel(labels)
    induced = GeneratorMap(
        source=aligned,
        target=target,
        images=tuple(phi.apply(element.canonical).canonical for element in elements),
    )
    check_homomorphism(induced)

    mismatches = preserves_labels(aligned, elements, probe)
    checks = {
        "a": not mismatches,
        "b": all(is_reflection(image) for image in induced.image_elements()),
        "c": len(elements) == target.rank,
    }
    failed = [clause for clause, holds in checks.items() if not holds]
    if failed:
        detail = "; ".join(mismatches) if "a" in failed else f"failed checks {failed}"
        raise TheoremViolation(failed[0], detail)

    invariants = compare_invariants(diagram_invariants(source), diagram_invariants(target))
    if not invariants.same:
        raise TheoremViolation(
            "invariants", f"aligned systems have different diagrams: {invariants.left} vs {invariants.right}"
        )
    logger.info("aligned %d pseudo-transposition(s) of %s", len(resolutions), source)
    return AlignmentResult(
        source=source,
        pseudo_transpositions=pseudo,
        resolutions=resolutions,
        elements=elements,
        matrix=aligned,
        induced_map=induced,
        checks=checks,
        invariants=invariants,
        bijectivity=report.status.value,
        warnings=warnings,
    )


def half_turn_counterexamples(matrix: CoxeterMatrix, radius: int, size_cap: int = DEFAULT_ENUM_SIZE_CAP) -> List[tuple]:
    """
    Exhaustive half-turn uniqueness check over a ball.

    For w, x in the ball, an even edge {s,t} and a finite edge {a,b}: when
    v = w (st)^(m/2) w^-1 lies in x W_{a,b} x^-1, the edges must coincide and
    so must the conjugated subgroups. Returns the violating tuples.
    """
    ball = enumerate_group(matrix, radius_cap=radius, size_cap=size_cap)
    edges = [(i, j) for i, j, _ in matrix.finite_pairs()]
    even_edges = [(i, j, label) for i, j, label in matrix.finite_pairs() if label % 2 == 0]
    inverses = {w: word_problem.invert(w) for w in ball.elements}
    counterexamples = []
    for s, t, label in even_edges:
        half_turn = word_problem.reduce(matrix, (s, t) * (label // 2), word_cap=None)
        edge = ParabolicSubset.of(s, t)
        for w in ball.elements:
            v = word_problem.conjugate(half_turn, w)
            conjugated_s = word_problem.conjugate(generator_element(matrix, s), w)
            conjugated_t = word_problem.conjugate(generator_element(matrix, t), w)
            for x in ball.elements:
                x_inv = inverses[x]
                pulled = word_problem.multiply(word_problem.multiply(x_inv, v), x)
                for a, b in edges:
                    other = ParabolicSubset.of(a, b)
                    if not word_problem.in_parabolic(pulled, other):
                        continue
                    same_subgroup = all(
                        word_problem.in_parabolic(word_problem.multiply(word_problem.multiply(x_inv, y), x), other)
                        for y in (conjugated_s, conjugated_t)
                    )
                    if other != edge or not same_subgroup:
                        counterexamples.append((w, (s, t), x, (a, b)))
    if counterexamples:
        logger.warning("%d half-turn uniqueness counterexamples in %s", len(counterexamples), matrix)
    return counterexamples
