"""
Spherical Subsets

Finiteness of parabolic subgroups via the finite-type catalog, the Davis
complex dimension and the two-dimensionality test.

Two graph views of a presentation are kept apart:
  * the Coxeter diagram joins every pair with a finite label (2 included);
  * the classification graph joins pairs with label >= 3 (infinity included),
    so commuting pairs split components.
"""

import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import networkx as nx

from src.models.coxeter_data import INFINITY, CoxeterMatrix, ParabolicSubset, format_order, is_finite

logger = logging.getLogger(__name__)

# Exceptional types: (family, rank) -> group order
EXCEPTIONAL_ORDERS = {
    ('E', 6): 51840,
    ('E', 7): 2903040,
    ('E', 8): 696729600,
    ('F', 4): 1152,
    ('H', 3): 120,
    ('H', 4): 14400,
}

# Largest element order in each exceptional type
EXCEPTIONAL_ELEMENT_ORDERS = {
    ('E', 6): 12,
    ('E', 7): 30,
    ('E', 8): 30,
    ('F', 4): 12,
    ('H', 3): 10,
    ('H', 4): 30,
}

# Arm lengths around the branch vertex of a simply-laced tree
BRANCHED_TYPES = {
    (1, 2, 2): ('E', 6),
    (1, 2, 3): ('E', 7),
    (1, 2, 4): ('E', 8),
}


@dataclass(frozen=True)
class ComponentType:
    """A connected finite-type component of the classification graph"""

    family: str
    rank: int
    indices: Tuple[int, ...]
    parameter: Optional[int] = None

    @property
    def label(self) -> str:
        if self.family == 'I2':
            return f"I2({self.parameter})"
        return f"{self.family}{self.rank}"

    @property
    def order(self) -> int:
        n = self.rank
        if self.family == 'A':
            return math.factorial(n + 1)
        if self.family == 'B':
            return 2 ** n * math.factorial(n)
        if self.family == 'D':
            return 2 ** (n - 1) * math.factorial(n)
        if self.family == 'I2':
            return 2 * self.parameter
        return EXCEPTIONAL_ORDERS[(self.family, n)]

    @property
    def max_element_order(self) -> int:
        n = self.rank
        if self.family == 'A':
            return landau(n + 1)
        if self.family in ('B', 'D'):
            # signed permutations: a negative cycle doubles its order
            return 2 * landau(n)
        if self.family == 'I2':
            return self.parameter
        return EXCEPTIONAL_ELEMENT_ORDERS[(self.family, n)]


@dataclass(frozen=True)
class SphericalVerdict:
    """Finiteness verdict for W_T with a checkable witness"""

    finite: bool
    witness: str
    components: Tuple[ComponentType, ...] = ()
    order: Optional[int] = None
    reason: Optional[str] = None

    def to_dict(self) -> dict:
        return {
            'finite': self.finite,
            'witness': self.witness,
            'components': [
                {'type': c.label, 'generators': list(c.indices), 'order': c.order}
                for c in self.components
            ],
            'order': self.order,
            'reason': self.reason,
        }


def coxeter_diagram(matrix: CoxeterMatrix) -> nx.Graph:
    """Edges for every finite label, including 2"""
    graph = nx.Graph()
    graph.add_nodes_from(matrix.generators)
    for i, j, label in matrix.finite_pairs():
        graph.add_edge(i, j, weight=label)
    return graph


def classification_graph(matrix: CoxeterMatrix) -> nx.Graph:
    """Edges for labels >= 3 (infinity included); label-2 pairs commute and are left out"""
    graph = nx.Graph()
    graph.add_nodes_from(matrix.generators)
    for i, j in itertools.combinations(matrix.generators, 2):
        order = matrix.m(i, j)
        if order != 2:
            graph.add_edge(i, j, weight=order)
    return graph


def triangle_criterion(p: int, q: int, r: int) -> bool:
    """A rank-3 group with finite labels p, q, r is finite iff 1/p + 1/q + 1/r > 1"""
    return Fraction(1, p) + Fraction(1, q) + Fraction(1, r) > 1


def _classify_path(graph: nx.Graph, nodes: List[int]) -> Optional[Tuple[str, int]]:
    ends = [v for v in nodes if graph.degree(v) == 1]
    path = nx.shortest_path(graph, ends[0], ends[1])
    labels = [graph.edges[a, b]['weight'] for a, b in zip(path, path[1:])]
    n = len(nodes)

    if all(label == 3 for label in labels):
        return ('A', n)
    fours = labels.count(4)
    fives = labels.count(5)
    if fours == 1 and fives == 0:
        if labels[0] == 4 or labels[-1] == 4:
            return ('B', n)
        if n == 4 and labels[1] == 4:
            return ('F', 4)
    if fives == 1 and fours == 0 and n in (3, 4) and (labels[0] == 5 or labels[-1] == 5):
        return ('H', n)
    return None


def _classify_branched(graph: nx.Graph, nodes: List[int]) -> Optional[Tuple[str, int]]:
    branch = [v for v in nodes if graph.degree(v) == 3]
    if len(branch) != 1 or any(d > 3 for _, d in graph.degree()):
        return None
    if any(data['weight'] != 3 for _, _, data in graph.edges(data=True)):
        return None
    center = branch[0]
    arms = graph.copy()
    arms.remove_node(center)
    lengths = tuple(sorted(len(arm) for arm in nx.connected_components(arms)))
    n = len(nodes)
    if lengths[0] == 1 and lengths[1] == 1:
        return ('D', n)
    return BRANCHED_TYPES.get(lengths)


def classify_component(graph: nx.Graph, nodes: List[int]) -> Optional[ComponentType]:
    """Match one connected component against the finite-type catalog"""
    nodes = sorted(nodes)
    sub = graph.subgraph(nodes)
    n = len(nodes)

    if n == 1:
        return ComponentType('A', 1, tuple(nodes))
    if any(not is_finite(data['weight']) for _, _, data in sub.edges(data=True)):
        return None
    if n == 2:
        label = sub.edges[nodes[0], nodes[1]]['weight']
        if label == 3:
            return ComponentType('A', 2, tuple(nodes))
        if label == 4:
            return ComponentType('B', 2, tuple(nodes))
        return ComponentType('I2', 2, tuple(nodes), parameter=label)
    if not nx.is_tree(sub) or any(data['weight'] > 5 for _, _, data in sub.edges(data=True)):
        return None

    if max(d for _, d in sub.degree()) <= 2:
        found = _classify_path(sub, nodes)
    else:
        found = _classify_branched(sub, nodes)
    if found is None:
        return None
    family, rank = found
    return ComponentType(family, rank, tuple(nodes))


def is_spherical(matrix: CoxeterMatrix, subset: ParabolicSubset) -> SphericalVerdict:
    """Decide whether W_T is finite"""
    indices = list(subset)
    names = matrix.labels

    for i, j in itertools.combinations(indices, 2):
        if matrix.m(i, j) == INFINITY:
            return SphericalVerdict(
                finite=False,
                witness=f"m({names[i]},{names[j]})=inf",
                reason='infinite-label',
            )

    graph = classification_graph(matrix).subgraph(indices)
    components: List[ComponentType] = []
    for nodes in sorted(nx.connected_components(graph), key=min):
        component = classify_component(graph, list(nodes))
        if component is None:
            verdict = SphericalVerdict(
                finite=False,
                witness=f"component {{{','.join(names[v] for v in sorted(nodes))}}} is not of finite type",
                reason='non-catalog-component',
            )
            break
        components.append(component)
    else:
        order = math.prod(c.order for c in components)
        witness = " x ".join(c.label for c in components) if components else "trivial"
        verdict = SphericalVerdict(
            finite=True,
            witness=witness,
            components=tuple(components),
            order=order,
        )

    if len(indices) == 3:
        a, b, c = indices
        by_criterion = triangle_criterion(matrix.m(a, b), matrix.m(b, c), matrix.m(a, c))
        if by_criterion != verdict.finite:
            raise AssertionError(
                f"catalog and triangle criterion disagree on labels "
                f"({matrix.m(a, b)},{matrix.m(b, c)},{matrix.m(a, c)})"
            )
        if not verdict.finite:
            verdict = SphericalVerdict(
                finite=False,
                witness=(
                    f"1/{matrix.m(a, b)} + 1/{matrix.m(b, c)} + 1/{matrix.m(a, c)} <= 1"
                ),
                reason='triangle-criterion',
            )
    return verdict


def parabolic_order(matrix: CoxeterMatrix, subset: ParabolicSubset) -> Optional[int]:
    """Catalog order of W_T, or None when infinite"""
    return is_spherical(matrix, subset).order


def spherical_subsets(matrix: CoxeterMatrix) -> List[ParabolicSubset]:
    """
    All spherical subsets, smallest first.

    Supersets of non-spherical sets are non-spherical, so each level only
    extends sets from the level below whose every facet is spherical.
    """
    level = [ParabolicSubset()]
    found = list(level)
    while level:
        known = {subset.indices for subset in level}
        next_level: Dict[frozenset, ParabolicSubset] = {}
        for subset in level:
            top = max(subset.indices, default=-1)
            for extra in range(top + 1, matrix.rank):
                candidate = subset.indices | {extra}
                facets = (candidate - {v} for v in candidate)
                if all(facet in known for facet in facets) and is_spherical(matrix, ParabolicSubset(candidate)).finite:
                    next_level[candidate] = ParabolicSubset(candidate)
        level = sorted(next_level.values(), key=ParabolicSubset.sort_key)
        found.extend(level)
    return found


def maximal_spherical_subsets(matrix: CoxeterMatrix) -> List[ParabolicSubset]:
    subsets = spherical_subsets(matrix)
    return [
        subset for subset in subsets
        if not any(subset.indices < other.indices for other in subsets)
    ]


def davis_dimension(matrix: CoxeterMatrix) -> int:
    """dim Sigma(W,S): the largest size of a spherical subset"""
    return max(len(subset) for subset in spherical_subsets(matrix))


def is_two_dimensional(matrix: CoxeterMatrix) -> bool:
    """Every 3-subset non-spherical and some pair spherical"""
    if matrix.rank < 2:
        logger.debug("rank-1 systems are one-dimensional")
        return False
    return davis_dimension(matrix) == 2


def dimension_hints(matrix: CoxeterMatrix) -> Dict[str, bool]:
    """Sufficient conditions for dim <= 2 readable straight off the diagram"""
    labels = [label for _, _, label in matrix.finite_pairs()]
    diagram = coxeter_diagram(matrix)
    return {
        'skew_angled': all(label >= 3 for label in labels),
        'all_labels_odd': all(label % 2 == 1 for label in labels),
        'diagram_is_forest': nx.is_forest(diagram),
    }


def describe_subset(matrix: CoxeterMatrix, subset: ParabolicSubset) -> str:
    pairs = [
        f"m({matrix.labels[i]},{matrix.labels[j]})={format_order(matrix.m(i, j))}"
        for i, j in itertools.combinations(list(subset), 2)
    ]
    return "{" + ",".join(subset.names(matrix)) + "}" + (f" [{', '.join(pairs)}]" if pairs else "")


def landau(n: int) -> int:
    """Largest order of a permutation of n points: the best product of prime powers summing to at most n"""
    best = [1] * (n + 1)
    for p in range(2, n + 1):
        if any(p % q == 0 for q in range(2, math.isqrt(p) + 1)):
            continue
        for total in range(n, p - 1, -1):
            power = p
            while power <= total:
                best[total] = max(best[total], best[total - power] * power)
                power *= p
    return best[n]


def order_bound(matrix: CoxeterMatrix) -> int:
    """
    Upper bound on the order of a finite-order element of W.

    Every finite subgroup lies in a conjugate of a spherical parabolic, so
    the bound is taken over the maximal spherical subsets, multiplying the
    largest element orders of their components.
    """
    bound = 1
    for subset in maximal_spherical_subsets(matrix):
        components = is_spherical(matrix, subset).components
        bound = max(bound, math.prod(c.max_element_order for c in components))
    logger.debug("element orders of %s are at most %d when finite", matrix, bound)
    return bound
